"""Exact linear algebra over the fraction field of Z[q^{+-1}].

``SpanBasis`` is the working solver: sparse fraction-free Gauss-Jordan
elimination on vectors with Laurent polynomial entries, preferring unit
pivots so that no denominators appear in the common case.  ``bareiss_rank``
and ``bareiss_det`` are dense fraction-free routines kept as an independent
check.
"""
from __future__ import annotations

from typing import Dict, Hashable, List, Mapping, Sequence, Tuple

from qasl.laurent import ONE, LaurentPoly

Vector = Dict[Hashable, LaurentPoly]


class NotInSpan(ArithmeticError):
    """The vector is not a combination of the basis vectors."""


class IntegralityError(ArithmeticError):
    """Coordinates exist over Q(q) but are not Laurent polynomials."""


def _axpy(x: Vector, f: LaurentPoly, y: Mapping[Hashable, LaurentPoly]) -> None:
    """x <- x + f*y in place."""
    for k, v in y.items():
        s = x.get(k)
        s = f * v if s is None else s + f * v
        if s:
            x[k] = s
        else:
            x.pop(k, None)


def _scale(x: Vector, f: LaurentPoly) -> Vector:
    return {k: f * v for k, v in x.items()}


def _pivot_weight(c: LaurentPoly) -> Tuple[int, int, int]:
    span = c.degree() - c.valuation()
    return (len(c), span, max(abs(v) for _, v in c.items()))


class _Row:
    __slots__ = ("vec", "combo", "piv")

    def __init__(self, vec: Vector, combo: Vector, piv: LaurentPoly):
        self.vec = vec
        self.combo = combo
        self.piv = piv


class SpanBasis:
    """Incrementally built, fully reduced basis of a span of labelled vectors.

    Every stored row satisfies ``row.vec == sum(row.combo[l] * v_l)`` where
    ``v_l`` are the inserted vectors, and the pivot key of one row is absent
    from every other row.
    """

    def __init__(self):
        self.rows: Dict[Hashable, _Row] = {}
        self.labels: List[Hashable] = []
        self.dependent: List[Tuple[Hashable, Vector]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[Hashable, LaurentPoly]) -> Tuple[LaurentPoly, Vector, Vector]:
        """Return (d, x, acc) with d*vec = x + sum(acc[l] * v_l) and x free of pivot keys."""
        x: Vector = {k: v for k, v in vec.items() if v}
        acc: Vector = {}
        d = ONE
        for p in [k for k in x if k in self.rows]:
            a = x.get(p)
            if not a:
                continue
            row = self.rows[p]
            inv = row.piv.unit_inverse()
            if inv is not None:
                f = -(a * inv)
                _axpy(x, f, row.vec)
                _axpy(acc, -f, row.combo)
            else:
                x = _scale(x, row.piv)
                acc = _scale(acc, row.piv)
                _axpy(x, -a, row.vec)
                _axpy(acc, a, row.combo)
                d = d * row.piv
        return d, x, acc

    def insert(self, vec: Mapping[Hashable, LaurentPoly], label: Hashable) -> bool:
        """Add a labelled vector; returns False (and records the relation) if dependent."""
        d, x, acc = self.reduce(vec)
        combo = {l: -c for l, c in acc.items()}
        combo[label] = combo.get(label, LaurentPoly()) + d
        combo = {l: c for l, c in combo.items() if c}
        self.labels.append(label)
        if not x:
            self.dependent.append((label, combo))
            return False
        units = [k for k, c in x.items() if c.is_unit()]
        if units:
            p = max(units)
        else:
            p = min(x, key=lambda k: (_pivot_weight(x[k]), k))
        piv = x[p]
        inv = piv.unit_inverse()
        for row in self.rows.values():
            a = row.vec.get(p)
            if not a:
                continue
            if inv is not None:
                f = -(a * inv)
                _axpy(row.vec, f, x)
                _axpy(row.combo, f, combo)
            else:
                row.vec = _scale(row.vec, piv)
                row.combo = _scale(row.combo, piv)
                row.piv = row.piv * piv
                _axpy(row.vec, -a, x)
                _axpy(row.combo, -a, combo)
        self.rows[p] = _Row(x, combo, piv)
        return True

    def contains(self, vec: Mapping[Hashable, LaurentPoly]) -> bool:
        _, x, _ = self.reduce(vec)
        return not x

    def solve(self, vec: Mapping[Hashable, LaurentPoly]) -> Vector:
        """Coordinates of ``vec`` in terms of the inserted labels, in Z[q^{+-1}]."""
        d, x, acc = self.reduce(vec)
        if x:
            raise NotInSpan(f"vector has a nonzero residual on {len(x)} keys")
        out: Vector = {}
        for l, c in acc.items():
            qt = c.divexact(d)
            if qt is None:
                raise IntegralityError(f"coordinate of {l!r} is ({c})/({d}), not a Laurent polynomial")
            if qt:
                out[l] = qt
        return out


# ---------------------------------------------------------------------------
# dense fraction-free elimination

def _exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    r = a.divexact(b)
    if r is None:
        raise ArithmeticError("Bareiss division was not exact")
    return r


def bareiss_echelon(matrix: Sequence[Sequence[LaurentPoly]]) -> Tuple[List[List[LaurentPoly]], int]:
    """Fraction-free row echelon form and rank."""
    M = [list(r) for r in matrix]
    if not M:
        return M, 0
    nrows, ncols = len(M), len(M[0])
    prev = ONE
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                if piv is None or _pivot_weight(M[i][c]) < _pivot_weight(M[piv][c]):
                    piv = i
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, nrows):
            a = M[i][c]
            for j in range(c + 1, ncols):
                val = p * M[i][j]
                if a:
                    val = val - a * M[r][j]
                M[i][j] = _exact(val, prev)
            M[i][c] = LaurentPoly()
        prev = p
        r += 1
    return M, r


def bareiss_rank(matrix: Sequence[Sequence[LaurentPoly]]) -> int:
    return bareiss_echelon(matrix)[1]


def bareiss_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    M = [list(r) for r in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _exact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def to_matrix(vectors: Sequence[Mapping[Hashable, LaurentPoly]]) -> Tuple[List[List[LaurentPoly]], List[Hashable]]:
    """Dense matrix (one row per vector) over the sorted union of keys."""
    keys = sorted({k for v in vectors for k in v})
    zero = LaurentPoly()
    return [[v.get(k, zero) for k in keys] for v in vectors], keys
