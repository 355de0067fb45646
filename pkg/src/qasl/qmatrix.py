"""The quantum matrix algebra O_q(M_{m,n}) as a rewriting system.

Elements are kept in PBW normal form: linear combinations of words in the
generators X_ij that are non-decreasing in row-major order, with Laurent
polynomial coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from qasl import kernel
from qasl.laurent import LaurentPoly, Number

Shape = Tuple[int, int]
Word = Tuple[Tuple[int, int], ...]


class ShapeError(ValueError):
    """A generator, index pair or element does not fit the requested shape."""


def encode(i: int, j: int) -> int:
    return (i << 8) | j


def decode(code: int) -> Tuple[int, int]:
    return code >> 8, code & 255


def _check_shape(shape: Shape) -> Shape:
    m, n = shape
    if m < 1 or n < 1 or m > 255 or n > 255:
        raise ShapeError(f"invalid shape {shape}")
    return (int(m), int(n))


@dataclass(frozen=True, order=True)
class Generator:
    row: int
    col: int

    def code(self) -> int:
        return encode(self.row, self.col)


@dataclass(frozen=True, order=True)
class IndexPair:
    """Rows and columns of a square quantum minor."""

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols) or not rows:
            raise ShapeError(f"index pair needs |rows| = |cols| >= 1, got {rows}, {cols}")
        for seq in (rows, cols):
            if any(a >= b for a, b in zip(seq, seq[1:])) or seq[0] < 1:
                raise ShapeError(f"indices must be strictly increasing positive integers: {seq}")

    @property
    def size(self) -> int:
        return len(self.rows)

    def fits(self, shape: Shape) -> bool:
        return self.rows[-1] <= shape[0] and self.cols[-1] <= shape[1]

    def label(self) -> str:
        return "[" + ",".join(map(str, self.rows)) + "|" + ",".join(map(str, self.cols)) + "]"


class AlgebraElement:
    """Immutable element of O_q(M_{m,n}) in PBW normal form.

    Internally a flat map ``{(word, q_exponent): int}`` with words encoded as
    tuples of generator codes; ``terms`` gives the Laurent-coefficient view.
    """

    __slots__ = ("shape", "_flat", "_hash")

    def __init__(self, shape: Shape, flat: Optional[Mapping] = None):
        self.shape = _check_shape(shape)
        self._flat = {k: v for k, v in (flat or {}).items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, shape: Shape, flat: dict) -> "AlgebraElement":
        obj = object.__new__(cls)
        obj.shape = shape
        obj._flat = flat
        obj._hash = None
        return obj

    @classmethod
    def one(cls, shape: Shape) -> "AlgebraElement":
        return cls(shape, {((), 0): 1})

    @classmethod
    def zero(cls, shape: Shape) -> "AlgebraElement":
        return cls(shape)

    @classmethod
    def generator(cls, shape: Shape, i: int, j: int) -> "AlgebraElement":
        return normal_form([(i, j)], shape)

    @classmethod
    def from_terms(cls, shape: Shape, terms: Mapping[Word, LaurentPoly]) -> "AlgebraElement":
        """Build from already-normal words with Laurent coefficients."""
        flat: Dict = {}
        for word, coeff in terms.items():
            codes = tuple(encode(i, j) for i, j in word)
            if any(a > b for a, b in zip(codes, codes[1:])):
                raise ValueError(f"word {word} is not in PBW order; use normal_form")
            for e, c in LaurentPoly(coeff.terms if isinstance(coeff, LaurentPoly) else {0: coeff}).items():
                flat[(codes, e)] = flat.get((codes, e), 0) + c
        return cls(shape, flat)

    @property
    def flat(self) -> dict:
        return self._flat

    @property
    def terms(self) -> Dict[Word, LaurentPoly]:
        grouped: Dict[tuple, Dict[int, int]] = {}
        for (w, e), c in self._flat.items():
            grouped.setdefault(w, {})[e] = c
        return {tuple(decode(x) for x in w): LaurentPoly(d) for w, d in grouped.items()}

    def coded_terms(self) -> Dict[tuple, LaurentPoly]:
        """Coefficient view keyed by encoded words (used by the linear solver)."""
        grouped: Dict[tuple, Dict[int, int]] = {}
        for (w, e), c in self._flat.items():
            grouped.setdefault(w, {})[e] = c
        return {w: LaurentPoly._raw(d) for w, d in grouped.items()}

    def degrees(self) -> set:
        return {len(w) for (w, _e) in self._flat}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __bool__(self) -> bool:
        return bool(self._flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.shape == other.shape and self._flat == other._flat

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, frozenset(self._flat.items())))
        return self._hash

    def _same_shape(self, other: "AlgebraElement"):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._same_shape(other)
        out = dict(self._flat)
        for k, v in other._flat.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AlgebraElement._raw(self.shape, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._raw(self.shape, {k: -v for k, v in self._flat.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, coeff) -> "AlgebraElement":
        if isinstance(coeff, int):
            coeff = LaurentPoly.const(coeff)
        out: Dict = {}
        for (w, e), c in self._flat.items():
            for de, dc in coeff.items():
                k = (w, e + de)
                s = out.get(k, 0) + c * dc
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return AlgebraElement._raw(self.shape, out)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def specialize(self, value: Number) -> Dict[Word, Fraction]:
        v = Fraction(value)
        if v == 0:
            raise ValueError("cannot specialize at q = 0")
        out: Dict[Word, Fraction] = {}
        for (w, e), c in self._flat.items():
            key = tuple(decode(x) for x in w)
            out[key] = out.get(key, Fraction(0)) + c * v ** e
        return {k: x for k, x in out.items() if x}

    def to_json(self) -> List[dict]:
        terms = self.terms
        return [
            {"word": [[i, j] for i, j in w], "coeff": terms[w].to_json()}
            for w in sorted(terms)
        ]

    def __repr__(self) -> str:
        if not self._flat:
            return "0"
        parts = []
        terms = self.terms
        for w in sorted(terms):
            mono = "*".join(f"X{i}{j}" if i < 10 and j < 10 else f"X[{i},{j}]" for i, j in w) or "1"
            parts.append(f"({terms[w]})*{mono}")
        return " + ".join(parts)


def normal_form(word: Iterable, shape: Shape) -> AlgebraElement:
    """Rewrite a word in the generators to its PBW normal form."""
    shape = _check_shape(shape)
    m, n = shape
    codes = []
    for g in word:
        i, j = (g.row, g.col) if isinstance(g, Generator) else g
        if not (1 <= i <= m and 1 <= j <= n):
            raise ShapeError(f"generator X_{i},{j} outside shape {shape}")
        codes.append(encode(i, j))
    return AlgebraElement._raw(shape, kernel.normal_form(tuple(codes)))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return AlgebraElement._raw(a.shape, kernel.multiply(a.flat, b.flat))


def product(factors: Sequence[AlgebraElement], shape: Shape) -> AlgebraElement:
    out = AlgebraElement.one(shape)
    for f in factors:
        out = multiply(out, f)
    return out


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


_minor_cache: Dict[Tuple[Shape, IndexPair], AlgebraElement] = {}


def quantum_minor(pair: IndexPair, shape: Shape) -> AlgebraElement:
    """[I|J] = sum over permutations of (-q)^{inv} X_{i1,j_s(1)} ... X_{it,j_s(t)}."""
    shape = _check_shape(shape)
    if not pair.fits(shape):
        raise ShapeError(f"index pair {pair.label()} does not fit shape {shape}")
    key = (shape, pair)
    cached = _minor_cache.get(key)
    if cached is not None:
        return cached
    flat: Dict = {}
    t = pair.size
    for perm in permutations(range(t)):
        ell = inversions(perm)
        word = [(pair.rows[s], pair.cols[perm[s]]) for s in range(t)]
        part = normal_form(word, shape).flat
        sign = -1 if ell % 2 else 1
        for (w, e), c in part.items():
            k = (w, e + ell)
            flat[k] = flat.get(k, 0) + sign * c
    out = AlgebraElement(shape, flat)
    _minor_cache[key] = out
    return out


def maximal_minor(cols: Sequence[int], shape: Shape) -> AlgebraElement:
    m = shape[0]
    return quantum_minor(IndexPair(tuple(range(1, m + 1)), tuple(cols)), shape)


def laplace_expand(pair: IndexPair, shape: Shape) -> AlgebraElement:
    """Last-row expansion [I|J] = sum_k (-q)^{t-k} [I minus i_t | J minus j_k] X_{i_t, j_k}."""
    shape = _check_shape(shape)
    t = pair.size
    if t < 2:
        raise ValueError("Laplace expansion needs a pair of size at least 2")
    if not pair.fits(shape):
        raise ShapeError(f"index pair {pair.label()} does not fit shape {shape}")
    last = pair.rows[-1]
    sub_rows = pair.rows[:-1]
    out = AlgebraElement.zero(shape)
    for k in range(1, t + 1):
        sub_cols = pair.cols[: k - 1] + pair.cols[k:]
        minor = quantum_minor(IndexPair(sub_rows, sub_cols), shape)
        term = multiply(minor, AlgebraElement.generator(shape, last, pair.cols[k - 1]))
        ell = t - k
        coeff = LaurentPoly.monomial(ell, -1 if ell % 2 else 1)
        out = out + term.scale(coeff)
    return out


def transpose(a: AlgebraElement) -> AlgebraElement:
    """Apply the algebra isomorphism X_ij -> X_ji into the transposed shape."""
    m, n = a.shape
    shape_t = (n, m)
    flat: Dict = {}
    for (w, e), c in a.flat.items():
        codes = tuple(encode(j, i) for i, j in map(decode, w))
        for (w2, e2), c2 in kernel.normal_form(codes).items():
            k = (w2, e + e2)
            flat[k] = flat.get(k, 0) + c * c2
    return AlgebraElement(shape_t, flat)
