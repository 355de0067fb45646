"""Standard monomials, straightening and commutation relations.

Coordinates in the standard-monomial basis are found by exact elimination in
the PBW basis of the ambient quantum matrix algebra.  Quotient algebras
(quantum Schubert varieties, quantum determinantal rings) are handled by
computing in the ambient algebra and discarding standard monomials that
involve the killed Pi-ideal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from qasl.laurent import LaurentPoly, q_power
from qasl.linalg import IntegralityError, NotInSpan, SpanBasis
from qasl.poset import (
    IndexSet,
    PiIdeal,
    Poset,
    PosetError,
    build_delta_poset,
    build_pi_poset,
    is_pi_ideal,
    k_index_set,
    label,
    multichains,
)
from qasl.qmatrix import AlgebraElement, IndexPair, maximal_minor, multiply, quantum_minor

KINDS = ("grassmannian", "matrix", "schubert", "detring")

Chain = Tuple[Hashable, ...]


class ConfigError(ValueError):
    pass


class CertificateError(AssertionError):
    """A relation failed its shape certificate."""


@dataclass(frozen=True)
class AlgebraConfig:
    kind: str
    m: int
    n: int
    gamma: Optional[IndexSet] = None
    t: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if not (isinstance(self.m, int) and isinstance(self.n, int) and 1 <= self.m <= self.n):
            raise ConfigError(f"need integers 1 <= m <= n, got m={self.m}, n={self.n}")
        if self.m > 255 or self.n > 200:
            raise ConfigError("shape too large")
        if self.kind == "schubert":
            if self.gamma is None:
                raise ConfigError("schubert configs need gamma")
            g = tuple(self.gamma)
            object.__setattr__(self, "gamma", g)
            if len(g) != self.m or any(a >= b for a, b in zip(g, g[1:])) or g[0] < 1 or g[-1] > self.n:
                raise ConfigError(f"gamma {g} is not an index set in Pi_{{{self.m},{self.n}}}")
        elif self.gamma is not None:
            raise ConfigError("gamma only applies to schubert configs")
        if self.kind == "detring":
            if self.t is None or not (1 <= self.t <= self.m):
                raise ConfigError(f"detring needs 1 <= t <= m, got t={self.t}")
        elif self.t is not None:
            raise ConfigError("t only applies to detring configs")

    @property
    def ambient_kind(self) -> str:
        return "grassmannian" if self.kind in ("grassmannian", "schubert") else "matrix"

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.m, self.n)

    @property
    def is_quotient(self) -> bool:
        return self.kind in ("schubert", "detring")

    def pbw_degree(self, degree: int) -> int:
        return self.m * degree if self.ambient_kind == "grassmannian" else degree

    def to_json(self) -> dict:
        out = {"kind": self.kind, "m": self.m, "n": self.n}
        if self.gamma is not None:
            out["gamma"] = list(self.gamma)
        if self.t is not None:
            out["t"] = self.t
        return out

    def describe(self) -> str:
        extra = ""
        if self.gamma is not None:
            extra = f", gamma={label(self.gamma)}"
        if self.t is not None:
            extra = f", t={self.t}"
        return f"{self.kind}({self.m},{self.n}{extra})"


def ambient_config(config: AlgebraConfig) -> AlgebraConfig:
    return AlgebraConfig(config.ambient_kind, config.m, config.n)


@dataclass
class StandardCombination:
    """Linear combination of standard monomials (chains)."""

    terms: Dict[Chain, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {c: v for c, v in self.terms.items() if v}

    def chains(self) -> List[Chain]:
        return list(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            other = StandardCombination(dict(other))
        if not isinstance(other, StandardCombination):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def to_json(self, order: Sequence[Chain]) -> List[dict]:
        pos = {c: i for i, c in enumerate(order)}
        ordered = sorted(self.terms, key=lambda c: pos.get(c, len(pos)))
        return [{"chain": [label(e) for e in c], "coeff": self.terms[c].to_json()} for c in ordered]


@dataclass
class Certificate:
    ok: bool
    violations: List[str] = field(default_factory=list)


@dataclass
class CommutationRelation:
    pair: Tuple[Hashable, Hashable]
    exponent: int
    lower_terms: StandardCombination
    certificate: Certificate


class _Engine:
    """Per-configuration caches: posets, realized monomials and PBW bases."""

    def __init__(self, config: AlgebraConfig):
        self.config = config
        m, n = config.m, config.n
        if config.ambient_kind == "grassmannian":
            self.ambient_poset = build_pi_poset(m, n)
        else:
            self.ambient_poset = build_delta_poset(m, n)
        if config.kind == "schubert":
            g = config.gamma
            omega = [p for p in self.ambient_poset if not self.ambient_poset.le(g, p)]
        elif config.kind == "detring":
            omega = [p for p in self.ambient_poset if p.size >= config.t]
        else:
            omega = []
        self.omega = PiIdeal(self.ambient_poset, frozenset(omega))
        self.poset = self.ambient_poset.subposet(
            [p for p in self.ambient_poset if p not in self.omega]
        )
        self._gens: Dict[Hashable, AlgebraElement] = {}
        self._products: Dict[tuple, AlgebraElement] = {(): AlgebraElement.one(config.shape)}

    def generator(self, e) -> AlgebraElement:
        g = self._gens.get(e)
        if g is None:
            if self.config.ambient_kind == "grassmannian":
                g = maximal_minor(e, self.config.shape)
            else:
                g = quantum_minor(e, self.config.shape)
            self._gens[e] = g
        return g

    def word_product(self, word: Sequence[Hashable]) -> AlgebraElement:
        word = tuple(word)
        p = self._products.get(word)
        if p is None:
            p = multiply(self.word_product(word[:-1]), self.generator(word[-1]))
            self._products[word] = p
        return p


_engines: Dict[AlgebraConfig, _Engine] = {}
_bases: Dict[Tuple[str, int, int, int], Tuple[SpanBasis, List[Chain]]] = {}


def engine(config: AlgebraConfig) -> _Engine:
    e = _engines.get(config)
    if e is None:
        e = _Engine(config)
        _engines[config] = e
    return e


def config_poset(config: AlgebraConfig) -> Poset:
    return engine(config).poset


def config_omega(config: AlgebraConfig) -> PiIdeal:
    """The Pi-ideal of the ambient poset that the configuration divides out."""
    return engine(config).omega


def element_degree(e: Hashable, config: AlgebraConfig) -> int:
    return engine(config).ambient_poset.degree[e]


def standard_monomials(config: AlgebraConfig, degree: int) -> List[Chain]:
    """Chains of the configured poset with total degree ``degree``."""
    return multichains(engine(config).poset, degree)


def realize(monomial: Sequence[Hashable], config: AlgebraConfig) -> AlgebraElement:
    eng = engine(config)
    for e in monomial:
        if e not in eng.ambient_poset:
            raise ConfigError(f"{label(e)} is not a generator of {config.describe()}")
    return eng.word_product(tuple(monomial))


def _ambient_basis(config: AlgebraConfig, degree: int) -> Tuple[SpanBasis, List[Chain]]:
    amb = ambient_config(config)
    key = (amb.kind, amb.m, amb.n, degree)
    hit = _bases.get(key)
    if hit is not None:
        return hit
    basis = SpanBasis()
    chains = standard_monomials(amb, degree)
    for c in chains:
        if not basis.insert(realize(c, amb).coded_terms(), c):
            raise CertificateError(
                f"standard monomials of degree {degree} in {amb.describe()} are linearly dependent"
            )
    _bases[key] = (basis, chains)
    return basis, chains


def _infer_degree(elem: AlgebraElement, config: AlgebraConfig) -> int:
    degs = elem.degrees()
    if len(degs) > 1:
        raise ValueError("element is not homogeneous")
    if not degs:
        return 0
    (d,) = degs
    if config.ambient_kind == "grassmannian":
        if d % config.m:
            raise NotInSpan(f"PBW degree {d} is not a multiple of m={config.m}")
        return d // config.m
    return d


def ambient_coordinates(elem: AlgebraElement, config: AlgebraConfig,
                        degree: Optional[int] = None) -> Dict[Chain, LaurentPoly]:
    if elem.shape != config.shape:
        raise ValueError(f"element shape {elem.shape} does not match {config.shape}")
    if degree is None:
        degree = _infer_degree(elem, config)
    if not elem:
        return {}
    if elem.degrees() != {config.pbw_degree(degree)}:
        raise NotInSpan(f"element is not homogeneous of degree {degree}")
    basis, _ = _ambient_basis(config, degree)
    return basis.solve(elem.coded_terms())


def coordinates(elem: AlgebraElement, config: AlgebraConfig,
                degree: Optional[int] = None) -> StandardCombination:
    """Coordinates of ``elem`` (an element of the ambient algebra) in the configured algebra.

    For quotient configurations the image in the quotient is returned.
    Raises NotInSpan if the element is outside the subalgebra and
    IntegralityError if a coordinate is not in Z[q^{+-1}].
    """
    coords = ambient_coordinates(elem, config, degree)
    omega = engine(config).omega
    return StandardCombination({c: v for c, v in coords.items() if not (c and c[0] in omega)})


def _check_shape(comb: StandardCombination, a, b, config: AlgebraConfig) -> Certificate:
    poset = engine(config).poset
    bad = []
    for chain in comb.terms:
        if not 1 <= len(chain) <= 2:
            bad.append(f"chain {[label(e) for e in chain]} has length {len(chain)}")
            continue
        lam = chain[0]
        if lam not in poset:
            bad.append(f"{label(lam)} is not in the poset")
            continue
        if not (poset.lt(lam, a) and poset.lt(lam, b)):
            bad.append(f"first entry {label(lam)} is not strictly below {label(a)} and {label(b)}")
        if len(chain) == 2 and not poset.le(chain[0], chain[1]):
            bad.append(f"chain {[label(e) for e in chain]} is not ordered")
    return Certificate(not bad, bad)


def _pair_degree(a, b, config) -> int:
    return element_degree(a, config) + element_degree(b, config)


def straightening_relation(a, b, config: AlgebraConfig) -> Tuple[StandardCombination, Certificate]:
    """Standard-monomial expansion of a*b for incomparable a, b, with its shape certificate."""
    poset = engine(config).poset
    for e in (a, b):
        if e not in poset:
            raise ConfigError(f"{label(e)} is not in the poset of {config.describe()}")
    if poset.comparable(a, b):
        raise ValueError(f"{label(a)} and {label(b)} are comparable; nothing to straighten")
    comb, cert = _straighten(a, b, config)
    if not cert.ok:
        raise CertificateError("; ".join(cert.violations))
    return comb, cert


def _straighten(a, b, config: AlgebraConfig) -> Tuple[StandardCombination, Certificate]:
    prod = multiply(realize((a,), config), realize((b,), config))
    comb = coordinates(prod, config, _pair_degree(a, b, config))
    return comb, _check_shape(comb, a, b, config)


def commutation_relation(a, b, config: AlgebraConfig) -> CommutationRelation:
    """Find f with a*b - q^f b*a a combination of chains starting strictly below a and b."""
    rel = _commute(a, b, config)
    if not rel.certificate.ok:
        raise CertificateError("; ".join(rel.certificate.violations))
    return rel


def _commute(a, b, config: AlgebraConfig) -> CommutationRelation:
    poset = engine(config).poset
    for e in (a, b):
        if e not in poset:
            raise ConfigError(f"{label(e)} is not in the poset of {config.describe()}")
    if a == b:
        return CommutationRelation((a, b), 0, StandardCombination(), Certificate(True))
    deg = _pair_degree(a, b, config)
    ga, gb = realize((a,), config), realize((b,), config)
    ab = coordinates(multiply(ga, gb), config, deg).terms
    ba = coordinates(multiply(gb, ga), config, deg).terms
    f = 0
    if poset.lt(a, b):
        c = ba.get((a, b))
        if c is not None:
            k = c.unit_exponent()
            if k is None:
                raise CertificateError(
                    f"coefficient of [{label(a)}][{label(b)}] in [{label(b)}][{label(a)}] is {c}, not a power of q"
                )
            f = -k
    elif poset.lt(b, a):
        c = ab.get((b, a))
        if c is not None:
            k = c.unit_exponent()
            if k is None:
                raise CertificateError(
                    f"coefficient of [{label(b)}][{label(a)}] in [{label(a)}][{label(b)}] is {c}, not a power of q"
                )
            f = k
    qf = q_power(f)
    lower = dict(ab)
    for chain, v in ba.items():
        s = lower.get(chain, LaurentPoly()) - qf * v
        if s:
            lower[chain] = s
        else:
            lower.pop(chain, None)
    comb = StandardCombination(lower)
    return CommutationRelation((a, b), f, comb, _check_shape(comb, a, b, config))


# ---------------------------------------------------------------------------
# words and spans

def words(poset: Poset, degree: int, alphabet: Optional[Sequence] = None) -> List[tuple]:
    """All words (arbitrary order) over the alphabet with total degree ``degree``."""
    alphabet = list(poset.elements if alphabet is None else alphabet)
    out: List[tuple] = []

    def rec(prefix: list, remaining: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in alphabet:
            d = poset.degree[e]
            if d <= remaining:
                prefix.append(e)
                rec(prefix, remaining - d)
                prefix.pop()

    rec([], degree)
    return out


def ideal_span(config: AlgebraConfig, omega: Iterable, degree: int) -> SpanBasis:
    """Degree-``degree`` part of the two-sided ideal generated by ``omega``, by brute force."""
    eng = engine(config)
    omega = set(omega)
    span = SpanBasis()
    for w in words(eng.ambient_poset, degree):
        if any(x in omega for x in w):
            span.insert(eng.word_product(w).coded_terms(), w)
    return span


def full_span_rank(config: AlgebraConfig, degree: int) -> int:
    """Exact rank of the span of all products of ambient generators of a given degree."""
    eng = engine(ambient_config(config))
    span = SpanBasis()
    for w in words(eng.ambient_poset, degree):
        span.insert(eng.word_product(w).coded_terms(), w)
    return span.rank


@dataclass
class ConditionResult:
    verdict: str
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, **self.detail}


@dataclass
class AslReport:
    config: AlgebraConfig
    max_check_degree: int
    conditions: Dict[str, ConditionResult]

    @property
    def passed(self) -> bool:
        return all(c.verdict == "pass" for c in self.conditions.values())

    @property
    def verdict(self) -> str:
        if any(c.verdict == "trivial quotient" for c in self.conditions.values()):
            return "trivial quotient"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "max_check_degree": self.max_check_degree,
            "conditions": {k: v.to_json() for k, v in self.conditions.items()},
            "verdict": self.verdict,
        }


def _check_independence(config: AlgebraConfig, degree: int, full_span: bool) -> dict:
    eng = engine(config)
    std = standard_monomials(config, degree)
    info = {"degree": degree, "standard_monomials": len(std)}
    if not config.is_quotient:
        span = SpanBasis()
        independent = all(span.insert(realize(c, config).coded_terms(), c) for c in std)
        info["rank"] = span.rank
        ok = independent and span.rank == len(std)
        if full_span:
            info["full_span_rank"] = full_span_rank(config, degree)
            ok = ok and info["full_span_rank"] == len(std)
    else:
        ideal = ideal_span(config, eng.omega.members, degree)
        info["ideal_rank"] = ideal.rank
        base = ideal.rank
        independent = all(ideal.insert(realize(c, config).coded_terms(), ("std",) + c) for c in std)
        info["rank_modulo_ideal"] = ideal.rank - base
        ok = independent and ideal.rank - base == len(std)
        if full_span:
            # quotient standard monomials plus the ideal must exhaust the ambient degree piece
            info["ambient_dimension"] = len(standard_monomials(ambient_config(config), degree))
            ok = ok and ideal.rank == info["ambient_dimension"]
    info["ok"] = ok
    return info


def verify_asl(config: AlgebraConfig, max_check_degree: int = 3, full_span: bool = True) -> AslReport:
    """Check the five conditions of a quantum graded algebra with a straightening law."""
    if max_check_degree < 2:
        raise ValueError("max_check_degree must be at least 2")
    eng = engine(config)
    poset = eng.poset
    conds: Dict[str, ConditionResult] = {}
    if config.kind == "detring" and config.t == 1:
        for k in "12345":
            conds[k] = ConditionResult("trivial quotient", {"reason": "t = 1 kills every generator"})
        return AslReport(config, max_check_degree, conds)

    bad = []
    for e in poset:
        g = realize((e,), config)
        if poset.degree[e] < 1 or g.degrees() != {config.pbw_degree(poset.degree[e])}:
            bad.append(label(e))
    conds["1"] = ConditionResult("pass" if not bad else "fail",
                                 {"generators": len(poset), "inhomogeneous": bad})
    conds["2"] = ConditionResult("pass", {"reason": "the algebra is generated by the poset elements by construction"})

    per_degree = [_check_independence(config, d, full_span) for d in range(1, max_check_degree + 1)]
    conds["3"] = ConditionResult("pass" if all(x["ok"] for x in per_degree) else "fail",
                                 {"degrees": per_degree})

    els = poset.elements
    checked, failures = 0, []
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if poset.comparable(a, b):
                continue
            checked += 1
            try:
                straightening_relation(a, b, config)
            except (CertificateError, NotInSpan, IntegralityError) as exc:
                failures.append({"pair": [label(a), label(b)], "error": str(exc)})
    conds["4"] = ConditionResult("pass" if not failures else "fail",
                                 {"incomparable_pairs": checked, "failures": failures})

    checked, failures = 0, []
    for a in els:
        for b in els:
            checked += 1
            try:
                commutation_relation(a, b, config)
            except (CertificateError, NotInSpan, IntegralityError) as exc:
                failures.append({"pair": [label(a), label(b)], "error": str(exc)})
    conds["5"] = ConditionResult("pass" if not failures else "fail",
                                 {"ordered_pairs": checked, "failures": failures})
    return AslReport(config, max_check_degree, conds)


# ---------------------------------------------------------------------------
# Pi-ideals

def _as_ideal(omega, config: AlgebraConfig) -> PiIdeal:
    poset = engine(config).poset
    if isinstance(omega, PiIdeal):
        members = omega.members
    else:
        members = frozenset(omega)
    for e in members:
        if e not in poset:
            raise PosetError(f"{label(e)} is not in the poset of {config.describe()}")
    if not is_pi_ideal(poset, members):
        raise PosetError("omega is not downward closed")
    return PiIdeal(poset, frozenset(members))


def ideal_membership(elem: AlgebraElement, omega, config: AlgebraConfig,
                     degree: Optional[int] = None) -> Tuple[bool, Dict[str, StandardCombination]]:
    """Decide whether elem lies in the ideal generated by a Pi-ideal.

    Returns the verdict and the split of the coordinates into chains that
    start inside omega and chains that do not.
    """
    ideal = _as_ideal(omega, config)
    comb = coordinates(elem, config, degree)
    inside = {c: v for c, v in comb.terms.items() if c and c[0] in ideal}
    outside = {c: v for c, v in comb.terms.items() if not (c and c[0] in ideal)}
    return not outside, {"inside": StandardCombination(inside), "outside": StandardCombination(outside)}


@dataclass
class NormalizingReport:
    ok: bool
    order: List
    checks: int
    failures: List[dict]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "order": [label(e) for e in self.order],
            "checks": self.checks,
            "failures": self.failures,
        }


def normalizing_sequence_check(omega, total_order: Sequence, config: AlgebraConfig,
                               max_degree: int = 1) -> NormalizingReport:
    """Check that omega, listed in total_order, is a normalising sequence of generators.

    For each omega_i and each standard monomial s of degree <= max_degree,
    omega_i*s - q^e s*omega_i must lie in the ideal of the earlier omegas,
    where e adds up the commutation exponents of the letters of s.
    """
    poset = engine(config).poset
    ideal = _as_ideal(omega, config)
    order = list(total_order)
    if sorted(map(poset.index.get, order)) != sorted(map(poset.index.get, ideal.members)) or len(set(order)) != len(order):
        raise PosetError("total order must list each element of omega exactly once")
    pos = {e: i for i, e in enumerate(order)}
    for a in order:
        for b in order:
            if poset.lt(a, b) and pos[a] > pos[b]:
                raise PosetError(f"total order does not respect {label(a)} < {label(b)}")
    failures: List[dict] = []
    checks = 0
    monos = [c for d in range(1, max_degree + 1) for c in standard_monomials(config, d)]
    for i, w in enumerate(order):
        earlier = order[:i]
        if not is_pi_ideal(poset, earlier):
            failures.append({"omega": label(w), "error": "initial segment is not a Pi-ideal"})
            continue
        exps = {g: commutation_relation(w, g, config).exponent for g in poset}
        gw = realize((w,), config)
        for s in monos:
            checks += 1
            e = sum(exps[g] for g in s)
            rs = realize(s, config)
            diff = multiply(gw, rs) - multiply(rs, gw).scale(q_power(e))
            deg = poset.degree[w] + sum(poset.degree[g] for g in s)
            try:
                ok, _ = ideal_membership(diff, earlier, config, deg)
            except (NotInSpan, IntegralityError) as exc:
                ok = False
                failures.append({"omega": label(w), "monomial": [label(x) for x in s], "error": str(exc)})
                continue
            if not ok:
                failures.append({"omega": label(w), "monomial": [label(x) for x in s],
                                 "error": "commutator not in the ideal of earlier elements"})
    return NormalizingReport(not failures, order, checks, failures)


# ---------------------------------------------------------------------------
# dehomogenisation identity

def dehom_plucker_sides(rows: Sequence[int], cols: Sequence[int], m: int, n: int
                        ) -> Tuple[AlgebraElement, AlgebraElement]:
    """Both sides of the quantum Pluecker relation behind the dehomogenisation of [I|J].

    q * sum_k (-q)^{s-k} [K(I', J_k)][K(i_s, j_k)]  and  [K(I,J)][n+1..n+m],
    where s = |I|, I' drops the last row and J_k drops the k-th column; all
    brackets are maximal minors of the m x (m+n) generic matrix.
    """
    pair = IndexPair(tuple(rows), tuple(cols))
    if not pair.fits((m, n)) or m > n:
        raise ConfigError(f"index pair {pair.label()} does not fit shape ({m}, {n}) with m <= n")
    s = pair.size
    if s < 2:
        raise ValueError("the identity needs a pair of size at least 2")
    shape = (m, m + n)
    last = pair.rows[-1]
    lhs = AlgebraElement.zero(shape)
    for k in range(1, s + 1):
        jk = pair.cols[k - 1]
        sub = IndexPair(pair.rows[:-1], pair.cols[: k - 1] + pair.cols[k:])
        one = IndexPair((last,), (jk,))
        term = multiply(maximal_minor(k_index_set(sub, m, n), shape),
                        maximal_minor(k_index_set(one, m, n), shape))
        ell = s - k
        lhs = lhs + term.scale(LaurentPoly.monomial(ell + 1, -1 if ell % 2 else 1))
    rhs = multiply(maximal_minor(k_index_set(pair, m, n), shape),
                   maximal_minor(tuple(range(n + 1, n + m + 1)), shape))
    return lhs, rhs


def verify_dehom_plucker(rows: Sequence[int], cols: Sequence[int], m: int, n: int) -> bool:
    lhs, rhs = dehom_plucker_sides(rows, cols, m, n)
    return lhs == rhs
