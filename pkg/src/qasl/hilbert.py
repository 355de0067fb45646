"""Hilbert series, GK dimension and the Gorenstein functional equation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from qasl.laurent import RationalFunc, _poly_divmod_q, poly_mul
from qasl.poset import multichain_genfunc, rank
from qasl.straighten import AlgebraConfig, config_poset

PROVISO = (
    "the functional equation decides AS-Gorensteinness only for AS-Cohen-Macaulay "
    "domains with enough normal elements; it is reported here, not proved"
)


class GKDimensionMismatch(AssertionError):
    pass


def _multiplicity_at_one(p) -> int:
    k = 0
    p = list(p)
    while p and sum(p) == 0:
        p, _ = _poly_divmod_q(p, [-1, 1])
        k += 1
    return k


@dataclass(frozen=True)
class HilbertSeries:
    series: RationalFunc
    pole_order_at_1: int

    @classmethod
    def from_rational(cls, rf: RationalFunc) -> "HilbertSeries":
        return cls(rf, _multiplicity_at_one(rf.den) - _multiplicity_at_one(rf.num))

    def coefficients(self, order: int) -> List[int]:
        out = []
        for c in self.series.series(order):
            if c.denominator != 1 or c < 0:
                raise ValueError(f"Hilbert series coefficient {c} is not a nonnegative integer")
            out.append(int(c))
        return out

    def to_json(self) -> dict:
        return self.series.to_json()


def hilbert_series(config: AlgebraConfig) -> HilbertSeries:
    """Degree-weighted multichain count of the configured poset, as a reduced rational function."""
    return HilbertSeries.from_rational(multichain_genfunc(config_poset(config)))


def gk_dimension(h: HilbertSeries, config: AlgebraConfig) -> int:
    r = rank(config_poset(config))
    if h.pole_order_at_1 != r:
        raise GKDimensionMismatch(
            f"pole order {h.pole_order_at_1} differs from poset rank {r} for {config.describe()}"
        )
    return h.pole_order_at_1


@dataclass(frozen=True)
class GorensteinVerdict:
    gorenstein: bool
    shift: Optional[int]
    sign: Optional[int]


def _reverse(p) -> list:
    return list(reversed(p))


def gorenstein_test(h: HilbertSeries) -> GorensteinVerdict:
    """Search for H(1/t) = sign * t^shift * H(t)."""
    num, den = list(h.series.num), list(h.series.den)
    if not num:
        return GorensteinVerdict(False, None, None)
    a = (len(den) - 1) - (len(num) - 1)
    # H(1/t) = t^a * rev(num) / rev(den); compare cross-multiplied numerators
    left = poly_mul(_reverse(num), den)
    right = poly_mul(num, _reverse(den))
    bound = len(num) + len(den)
    for shift in range(-bound, bound + 1):
        k = shift - a
        for sign in (1, -1):
            if k >= 0:
                lhs, rhs = left, [0] * k + [sign * x for x in right]
            else:
                lhs, rhs = [0] * (-k) + left, [sign * x for x in right]
            if lhs == rhs:
                return GorensteinVerdict(True, shift, sign)
    return GorensteinVerdict(False, None, None)


def hilbert_report(config: AlgebraConfig, order: int = 6) -> dict:
    h = hilbert_series(config)
    g = gorenstein_test(h)
    return {
        "config": config.to_json(),
        "series": h.to_json(),
        "coefficients": h.coefficients(order),
        "gk_dim": gk_dimension(h, config),
        "poset_rank": rank(config_poset(config)),
        "gorenstein": g.gorenstein,
        "shift": g.shift,
        "sign": g.sign,
        "proviso": PROVISO,
    }
