"""Exact coefficient arithmetic.

``LaurentPoly`` is an element of Z[q, q^-1] stored as a sparse
``{exponent: coefficient}`` map.  ``RationalFunc`` is a reduced quotient of
integer polynomials in one variable, used for Hilbert series.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        if terms:
            self._c = {int(e): int(c) for e, c in terms.items() if c}
        else:
            self._c = {}
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, int]) -> "LaurentPoly":
        # trusted constructor: c has no zero coefficients and is not shared
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # ---- ring operations -------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        a, b = self._c, other._c
        if not a or not b:
            return LaurentPoly._raw({})
        if len(a) > len(b):
            a, b = b, a
        out: Dict[int, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: v for e, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            inv = self.unit_inverse()
            if inv is None:
                raise ZeroDivisionError("only units may be raised to negative powers")
            return inv ** (-k)
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    # ---- structure -------------------------------------------------------

    def degree(self) -> Optional[int]:
        return max(self._c) if self._c else None

    def valuation(self) -> Optional[int]:
        return min(self._c) if self._c else None

    def unit_exponent(self) -> Optional[int]:
        """Return k if self == q^k exactly."""
        if len(self._c) == 1:
            (e, c), = self._c.items()
            if c == 1:
                return e
        return None

    def is_unit(self) -> bool:
        if len(self._c) != 1:
            return False
        (c,) = self._c.values()
        return c in (1, -1)

    def unit_inverse(self) -> Optional["LaurentPoly"]:
        if not self.is_unit():
            return None
        (e, c), = self._c.items()
        return LaurentPoly._raw({-e: c})

    def divexact(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Quotient in Z[q^{+-1}] if ``other`` divides ``self`` there, else None."""
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly._raw({})
        inv = other.unit_inverse()
        if inv is not None:
            return self * inv
        va, vb = self.valuation(), other.valuation()
        num = _to_dense(self._c, va)
        den = _to_dense(other._c, vb)
        quot = _poly_divexact_int(num, den)
        if quot is None:
            return None
        return LaurentPoly({i + va - vb: c for i, c in enumerate(quot)})

    def specialize(self, value: Number) -> Fraction:
        """Evaluate at q = value (value must be nonzero)."""
        v = Fraction(value)
        if v == 0:
            raise ValueError("cannot specialize a Laurent polynomial at q = 0")
        return sum((c * v ** e for e, c in self._c.items()), Fraction(0))

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    # ---- serialization ---------------------------------------------------

    def to_json(self) -> Dict[str, str]:
        return {str(e): str(self._c[e]) for e in sorted(self._c)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


def q_power(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(k)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def laurent_is_unit(a: LaurentPoly) -> Optional[int]:
    return a.unit_exponent()


def specialize(a: LaurentPoly, value: Number) -> Fraction:
    return a.specialize(value)


# ---------------------------------------------------------------------------
# dense integer polynomials (ascending coefficient tuples)

def _to_dense(c: Mapping[int, int], shift: int) -> list:
    top = max(c) - shift
    out = [0] * (top + 1)
    for e, v in c.items():
        out[e - shift] = v
    return out


def _trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divexact_int(num: Sequence[int], den: Sequence[int]) -> Optional[list]:
    num, den = _trim(num), _trim(den)
    if len(num) < len(den):
        return None if any(num) else []
    rem = list(num)
    lead = den[-1]
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        if c % lead:
            return None
        f = c // lead
        quot[i - dd] = f
        for j, d in enumerate(den):
            rem[i - dd + j] -= f * d
    if any(rem):
        return None
    return quot


def poly_mul(a: Sequence[Number], b: Sequence[Number]) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a: Sequence[Number], b: Sequence[Number]) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a: Sequence[Number], c: Number) -> list:
    return _trim([c * x for x in a])


def _poly_divmod_q(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[list, list]:
    a = [Fraction(x) for x in _trim(a)]
    b = [Fraction(x) for x in _trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b) and rem:
        f = rem[-1] / b[-1]
        k = len(rem) - len(b)
        quot[k] = f
        for j, y in enumerate(b):
            rem[k + j] -= f * y
        rem = _trim(rem)
    return _trim(quot), rem


def _primitive(p: Sequence[Fraction]) -> list:
    """Scale a rational polynomial to a primitive integer polynomial (sign kept)."""
    p = [Fraction(x) for x in _trim(p)]
    if not p:
        return []
    den = 1
    for x in p:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in p]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def poly_gcd(a: Sequence[int], b: Sequence[int]) -> list:
    """Primitive gcd over Q with positive leading coefficient."""
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    g = _primitive(a)
    if g and g[-1] < 0:
        g = [-x for x in g]
    return g


class RationalFunc:
    """Reduced quotient num/den of integer polynomials in one variable.

    Coefficient lists are ascending in degree.  The denominator has positive
    leading coefficient and the pair is coprime; integer contents are reduced
    so that equal functions have equal fields.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[Number], den: Iterable[Number] = (1,)):
        num = [Fraction(x) for x in num]
        den = [Fraction(x) for x in den]
        if not _trim(den):
            raise ZeroDivisionError("zero denominator")
        num, den = _trim(num), _trim(den)
        if not num:
            self.num, self.den = (), (1,)
            return
        g = poly_gcd(_primitive(num), _primitive(den))
        if len(g) > 1:
            num, _ = _poly_divmod_q(num, g)
            den, _ = _poly_divmod_q(den, g)
        # clear denominators jointly, then divide out the common content
        scale = 1
        for x in list(num) + list(den):
            scale = scale * x.denominator // gcd(scale, x.denominator)
        n = [int(x * scale) for x in num]
        d = [int(x * scale) for x in den]
        c = 0
        for x in n + d:
            c = gcd(c, x)
        if d[-1] < 0:
            c = -c
        self.num = tuple(x // c for x in n)
        self.den = tuple(x // c for x in d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(
            poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
            poly_mul(self.den, other.den),
        )

    def __mul__(self, other: "RationalFunc") -> "RationalFunc":
        return RationalFunc(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def __truediv__(self, other: "RationalFunc") -> "RationalFunc":
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def series(self, order: int) -> list:
        """Taylor coefficients at 0 up to (and including) t^order."""
        if self.den[0] == 0:
            raise ValueError("denominator vanishes at 0; no power series expansion")
        d0 = Fraction(self.den[0])
        out = []
        for k in range(order + 1):
            s = Fraction(self.num[k]) if k < len(self.num) else Fraction(0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                s -= self.den[j] * out[k - j]
            out.append(s / d0)
        return out

    def evaluate(self, x: Number) -> Fraction:
        x = Fraction(x)
        num = sum((Fraction(c) * x ** i for i, c in enumerate(self.num)), Fraction(0))
        den = sum((Fraction(c) * x ** i for i, c in enumerate(self.den)), Fraction(0))
        return num / den

    def to_json(self) -> Dict[str, list]:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @classmethod
    def from_json(cls, data: Mapping[str, Sequence[str]]) -> "RationalFunc":
        return cls([int(c) for c in data["num"]], [int(c) for c in data["den"]])

    def __repr__(self) -> str:
        return f"RationalFunc(num={list(self.num)}, den={list(self.den)})"

    def __str__(self) -> str:
        # pull powers of (1 - t) out of the denominator for readability
        num, den, k = [Fraction(x) for x in self.num], [Fraction(x) for x in self.den], 0
        while len(den) > 1 and sum(den) == 0:
            den, _ = _poly_divmod_q(den, [1, -1])
            k += 1
        if len(den) == 1:
            num, den = [x / den[0] for x in num], [Fraction(1)]
        elif den[0] < 0:
            num, den = [-x for x in num], [-x for x in den]
        top = _poly_str(num)
        parts = []
        if den != [1]:
            parts.append(f"({_poly_str(den)})")
        if k:
            parts.append("(1 - t)" + (f"^{k}" if k > 1 else ""))
        if not parts:
            return top
        if sum(1 for x in num if x) > 1:
            top = f"({top})"
        bottom = "*".join(parts)
        return f"{top}/" + (f"({bottom})" if len(parts) > 1 else bottom)


def _poly_str(p: Sequence[Number]) -> str:
    out = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out) or "0"
