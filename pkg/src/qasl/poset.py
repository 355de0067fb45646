"""Finite posets: index sets, index pairs, Pi-ideals and multichain counts."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from qasl.laurent import RationalFunc
from qasl.qmatrix import IndexPair

IndexSet = Tuple[int, ...]


class PosetError(ValueError):
    pass


def label(e) -> str:
    if isinstance(e, IndexPair):
        return e.label()
    return "[" + ",".join(map(str, e)) + "]"


def pi_le(a: IndexSet, b: IndexSet) -> bool:
    """Standard order on index sets: entrywise comparison."""
    return all(x <= y for x, y in zip(a, b))


def delta_le(a: IndexPair, b: IndexPair) -> bool:
    """Standard order on index pairs: bigger minors first, then entrywise on rows and columns."""
    if a.size < b.size:
        return False
    v = b.size
    return all(a.rows[s] <= b.rows[s] for s in range(v)) and all(
        a.cols[s] <= b.cols[s] for s in range(v)
    )


class Poset:
    """Explicit finite poset with a degree function.

    ``elements`` keeps construction order; ``leq[i][j]`` is True iff
    elements[i] <= elements[j].  The order axioms are checked on construction.
    """

    def __init__(self, elements: Sequence[Hashable], leq: Sequence[Sequence[bool]],
                 degree: Optional[Dict[Hashable, int]] = None, check: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PosetError("duplicate poset elements")
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        deg = degree or {}
        self.degree = {e: int(deg.get(e, 1)) for e in self.elements}
        if check:
            self._check()
        n = len(self.elements)
        self._below = tuple(
            tuple(i for i in range(n) if i != j and self.leq[i][j]) for j in range(n)
        )

    @classmethod
    def from_relation(cls, elements: Sequence[Hashable], le: Callable, degree=None) -> "Poset":
        els = list(elements)
        return cls(els, [[le(a, b) for b in els] for a in els], degree)

    def _check(self):
        n = len(self.elements)
        L = self.leq
        if len(L) != n or any(len(r) != n for r in L):
            raise PosetError("order matrix has wrong size")
        for i in range(n):
            if not L[i][i]:
                raise PosetError(f"not reflexive at {self.elements[i]!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if L[i][j] and L[j][i]:
                    raise PosetError("not antisymmetric")
        for i in range(n):
            for j in range(n):
                if L[i][j]:
                    for k in range(n):
                        if L[j][k] and not L[i][k]:
                            raise PosetError("not transitive")
        for e, d in self.degree.items():
            if d < 1:
                raise PosetError(f"degree of {e!r} must be positive")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    def le(self, a, b) -> bool:
        return self.leq[self.index[a]][self.index[b]]

    def lt(self, a, b) -> bool:
        return a != b and self.le(a, b)

    def comparable(self, a, b) -> bool:
        return self.le(a, b) or self.le(b, a)

    def below(self, e) -> List:
        """Elements strictly below e."""
        return [self.elements[i] for i in self._below[self.index[e]]]

    def subposet(self, members: Iterable) -> "Poset":
        keep = set(members)
        idx = [i for i, e in enumerate(self.elements) if e in keep]
        return Poset(
            [self.elements[i] for i in idx],
            [[self.leq[i][j] for j in idx] for i in idx],
            {self.elements[i]: self.degree[self.elements[i]] for i in idx},
            check=False,
        )

    def linear_extension(self) -> List:
        """Deterministic topological order (ties broken by construction order)."""
        n = len(self.elements)
        indeg = [len(self._below[j]) for j in range(n)]
        above = [[j for j in range(n) if j != i and self.leq[i][j]] for i in range(n)]
        done: List[int] = []
        ready = [i for i in range(n) if indeg[i] == 0]
        while ready:
            ready.sort()
            i = ready.pop(0)
            done.append(i)
            for j in above[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        return [self.elements[i] for i in done]

    def minimal(self) -> List:
        return [e for e in self.elements if not self.below(e)]

    def maximal(self) -> List:
        return [e for e in self.elements if not any(self.lt(e, f) for f in self.elements)]

    def cover_relations(self) -> List[Tuple]:
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in self.elements):
                    out.append((a, b))
        return out

    def to_json(self) -> dict:
        return {
            "elements": [label(e) for e in self.elements],
            "cover_relations": [[label(a), label(b)] for a, b in self.cover_relations()],
            "degrees": {label(e): self.degree[e] for e in self.elements},
        }

    def to_dot(self, name: str = "poset") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for e in self.elements:
            lines.append(f'  "{label(e)}";')
        for a, b in self.cover_relations():
            lines.append(f'  "{label(a)}" -> "{label(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def index_sets(m: int, n: int) -> List[IndexSet]:
    return [tuple(c) for c in combinations(range(1, n + 1), m)]


def build_pi_poset(m: int, n: int) -> Poset:
    """Index sets of size m in [1, n] under the standard order, every element of degree 1."""
    if not (1 <= m <= n):
        raise PosetError(f"need 1 <= m <= n, got m={m}, n={n}")
    els = index_sets(m, n)
    return Poset.from_relation(els, pi_le, {e: 1 for e in els})


def index_pairs(m: int, n: int, min_size: int = 1, max_size: Optional[int] = None) -> List[IndexPair]:
    max_size = m if max_size is None else max_size
    out = []
    for t in range(max_size, min_size - 1, -1):
        for rows in combinations(range(1, m + 1), t):
            for cols in combinations(range(1, n + 1), t):
                out.append(IndexPair(rows, cols))
    return out


def build_delta_poset(m: int, n: int, min_size: int = 1, max_size: Optional[int] = None) -> Poset:
    """Index pairs with min_size <= size <= max_size, degree = size.

    The quantum determinantal ring modulo the t x t minors lives on
    ``build_delta_poset(m, n, 1, t - 1)``.
    """
    max_size = m if max_size is None else max_size
    if not (1 <= m <= n):
        raise PosetError(f"need 1 <= m <= n, got m={m}, n={n}")
    if not (1 <= min_size <= max_size <= m):
        raise PosetError(f"need 1 <= min_size <= max_size <= m, got {min_size}, {max_size}")
    els = index_pairs(m, n, min_size, max_size)
    return Poset.from_relation(els, delta_le, {e: e.size for e in els})


def rank(poset: Poset, subset: Optional[Iterable] = None) -> int:
    """Length of the longest chain ending in ``subset`` (whole poset if None)."""
    rk: Dict = {}
    for e in poset.linear_extension():
        rk[e] = 1 + max((rk[f] for f in poset.below(e)), default=0)
    pool = poset.elements if subset is None else list(subset)
    return max((rk[e] for e in pool), default=0)


@dataclass(frozen=True)
class PiIdeal:
    poset: Poset
    members: FrozenSet

    def __post_init__(self):
        for e in self.members:
            if e not in self.poset:
                raise PosetError(f"{e!r} is not in the poset")
            for f in self.poset.below(e):
                if f not in self.members:
                    raise PosetError(f"not downward closed: {label(f)} <= {label(e)}")

    def __contains__(self, e) -> bool:
        return e in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> List:
        return [e for e in self.poset.elements if e in self.members]


def pi_ideal(poset: Poset, generators: Iterable, mode: str = "generated") -> PiIdeal:
    gens = list(generators)
    for g in gens:
        if g not in poset:
            raise PosetError(f"{g!r} is not in the poset")
    if mode == "generated":
        members = {x for x in poset.elements if any(poset.le(x, s) for s in gens)}
    elif mode == "cogenerated":
        members = {x for x in poset.elements if all(not poset.le(s, x) for s in gens)}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return PiIdeal(poset, frozenset(members))


def is_pi_ideal(poset: Poset, members: Iterable) -> bool:
    s = set(members)
    return all(f in s for e in s for f in poset.below(e))


def _least(poset: Poset, candidates: List):
    for c in candidates:
        if all(poset.le(c, d) for d in candidates):
            return c
    return None


def is_distributive_lattice(poset: Poset) -> Tuple[bool, Optional[tuple]]:
    """Exhaustive check; returns (verdict, witness) where witness explains a failure."""
    els = poset.elements
    join: Dict = {}
    meet: Dict = {}
    for a in els:
        for b in els:
            ub = [c for c in els if poset.le(a, c) and poset.le(b, c)]
            j = _least(poset, ub)
            if j is None:
                return False, ("no-join", a, b)
            lb = [c for c in els if poset.le(c, a) and poset.le(c, b)]
            # greatest lower bound: least in the dual order
            m = None
            for c in lb:
                if all(poset.le(d, c) for d in lb):
                    m = c
                    break
            if m is None:
                return False, ("no-meet", a, b)
            join[a, b] = j
            meet[a, b] = m
    for a in els:
        for b in els:
            for c in els:
                if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                    return False, ("non-distributive", a, b, c)
    return True, None


def k_index_set(pair: IndexPair, m: int, n: int) -> IndexSet:
    """The index set of the widened shape attached to an index pair."""
    drop = {n + m + 1 - i for i in pair.rows}
    return tuple(sorted(set(pair.cols) | ({n + 1 + s for s in range(m)} - drop)))


def delta_embedding(m: int, n: int) -> Dict[IndexPair, IndexSet]:
    if not (1 <= m <= n):
        raise PosetError(f"need 1 <= m <= n, got m={m}, n={n}")
    return {p: k_index_set(p, m, n) for p in index_pairs(m, n)}


def _one_minus_t_pow(d: int) -> list:
    return [1] + [0] * (d - 1) + [-1]


def multichain_genfunc(poset: Poset) -> RationalFunc:
    """Degree-weighted generating function of multichains (including the empty one)."""
    g: Dict = {}
    total = RationalFunc([1])
    for p in poset.linear_extension():
        d = poset.degree[p]
        acc = RationalFunc([1])
        for f in poset.below(p):
            acc = acc + g[f]
        g[p] = acc * RationalFunc([0] * d + [1], _one_minus_t_pow(d))
        total = total + g[p]
    return total


def multichains(poset: Poset, degree: int) -> List[Tuple]:
    """All non-decreasing chains whose degrees sum to ``degree``, in a fixed order."""
    if degree < 0:
        return []
    order = poset.elements
    out: List[Tuple] = []

    def extend(chain: list, remaining: int):
        if remaining == 0:
            out.append(tuple(chain))
            return
        last = chain[-1] if chain else None
        for e in order:
            d = poset.degree[e]
            if d <= remaining and (last is None or poset.le(last, e)):
                chain.append(e)
                extend(chain, remaining - d)
                chain.pop()

    extend([], degree)
    return out
