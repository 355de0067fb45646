import random

import pytest
import sympy

from oracles import at_q_one, classical_chain, classical_minor
from qasl.laurent import ONE, LaurentPoly, Q, q_power
from qasl.linalg import NotInSpan
from qasl.poset import PosetError, pi_ideal
from qasl.qmatrix import AlgebraElement, IndexPair, multiply, normal_form
from qasl.straighten import (
    AlgebraConfig,
    CertificateError,
    ConfigError,
    _check_independence,
    commutation_relation,
    config_omega,
    config_poset,
    coordinates,
    dehom_plucker_sides,
    ideal_membership,
    normalizing_sequence_check,
    realize,
    standard_monomials,
    straightening_relation,
    verify_asl,
    verify_dehom_plucker,
)

G24 = AlgebraConfig("grassmannian", 2, 4)
M22 = AlgebraConfig("matrix", 2, 2)


def P(rows, cols):
    return IndexPair(rows, cols)


def test_config_validation():
    for bad in [
        dict(kind="torus", m=2, n=4),
        dict(kind="grassmannian", m=3, n=2),
        dict(kind="grassmannian", m=0, n=2),
        dict(kind="schubert", m=2, n=4),
        dict(kind="schubert", m=2, n=4, gamma=(1, 5)),
        dict(kind="schubert", m=2, n=4, gamma=(3, 2)),
        dict(kind="detring", m=2, n=3, t=3),
        dict(kind="detring", m=2, n=3),
        dict(kind="grassmannian", m=2, n=4, t=1),
        dict(kind="matrix", m=2, n=4, gamma=(1, 2)),
    ]:
        with pytest.raises(ConfigError):
            AlgebraConfig(**bad)
    assert AlgebraConfig("schubert", 2, 4, gamma=[1, 4]).gamma == (1, 4)
    assert AlgebraConfig("detring", 2, 3, t=2).to_json() == {"kind": "detring", "m": 2, "n": 3, "t": 2}


def test_standard_monomial_examples():
    assert len(standard_monomials(G24, 1)) == 6
    assert len(standard_monomials(G24, 2)) == 20
    assert ((1, 4), (2, 3)) not in standard_monomials(G24, 2)
    assert standard_monomials(G24, 0) == [()]


def test_schubert_monomials_are_filtered_grassmannian_monomials():
    for gamma in config_poset(G24).elements:
        sch = AlgebraConfig("schubert", 2, 4, gamma=gamma)
        full = config_poset(G24)
        for d in range(4):
            expected = [c for c in standard_monomials(G24, d) if not c or full.le(gamma, c[0])]
            assert standard_monomials(sch, d) == expected


def test_realize_examples():
    assert realize((), G24) == AlgebraElement.one((2, 4))
    x = realize(((1, 3), (2, 4)), G24)
    assert x.degrees() == {4}
    with pytest.raises(ConfigError):
        realize(((1, 5),), G24)


ROUND_TRIP = [
    G24, AlgebraConfig("grassmannian", 2, 5), M22, AlgebraConfig("matrix", 2, 3),
    AlgebraConfig("detring", 2, 3, t=2), AlgebraConfig("schubert", 2, 4, gamma=(1, 4)),
]


@pytest.mark.parametrize("config", ROUND_TRIP, ids=lambda c: c.describe())
def test_coordinates_round_trip(config):
    for d in range(4):
        for s in standard_monomials(config, d):
            assert coordinates(realize(s, config), config, d) == {s: ONE}


def test_coordinates_of_x12_x21():
    elem = normal_form([(1, 2), (2, 1)], (2, 2))
    comb = coordinates(elem, M22)
    assert comb == {
        (P((1,), (1,)), P((2,), (2,))): q_power(-1),
        (P((1, 2), (1, 2)),): -q_power(-1),
    }


def test_coordinates_outside_span():
    with pytest.raises(NotInSpan):
        coordinates(normal_form([(1, 1)], (2, 4)), G24)
    with pytest.raises(NotInSpan):
        coordinates(normal_form([(1, 1), (1, 2)], (2, 4)), G24, 1)


def test_straightening_examples():
    comb, cert = straightening_relation((1, 4), (2, 3), G24)
    assert cert.ok
    assert comb == {((1, 3), (2, 4)): q_power(-1), ((1, 2), (3, 4)): -q_power(-2)}
    assert {c: v.specialize(1) for c, v in comb.terms.items()} == {((1, 3), (2, 4)): 1, ((1, 2), (3, 4)): -1}

    comb, _ = straightening_relation(P((1,), (2,)), P((2,), (1,)), M22)
    assert comb == {(P((1,), (1,)), P((2,), (2,))): q_power(-1), (P((1, 2), (1, 2)),): -q_power(-1)}

    with pytest.raises(ValueError):
        straightening_relation((1, 2), (3, 4), G24)


def test_straightening_in_a_quotient_drops_killed_terms():
    det = AlgebraConfig("detring", 2, 2, t=2)
    comb, _ = straightening_relation(P((1,), (2,)), P((2,), (1,)), det)
    assert comb == {(P((1,), (1,)), P((2,), (2,))): q_power(-1)}
    with pytest.raises(ConfigError):
        straightening_relation(P((1, 2), (1, 2)), P((1,), (1,)), det)


CLASSICAL = [G24, AlgebraConfig("grassmannian", 2, 5), AlgebraConfig("grassmannian", 3, 5),
             M22, AlgebraConfig("matrix", 2, 3)]


@pytest.mark.parametrize("config", CLASSICAL, ids=lambda c: c.describe())
def test_straightening_at_q_one_matches_commutative_minors(config):
    poset = config_poset(config)
    els = poset.elements
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if poset.comparable(a, b):
                continue
            comb, _ = straightening_relation(a, b, config)
            rhs = sum((sympy.Rational(str(c.specialize(1))) * classical_chain(ch, config.m)
                       for ch, c in comb.terms.items()), sympy.Integer(0))
            assert sympy.expand(classical_chain((a, b), config.m) - rhs) == 0


def test_commutation_examples():
    rel = commutation_relation((1, 3), (1, 3), G24)
    assert rel.exponent == 0 and not rel.lower_terms
    rel = commutation_relation(P((1,), (1,)), P((1,), (2,)), M22)
    assert rel.exponent == 1 and not rel.lower_terms
    rel = commutation_relation((1, 2), (3, 4), G24)
    assert not rel.lower_terms
    a, b = realize(((1, 2),), G24), realize(((3, 4),), G24)
    assert multiply(a, b) == multiply(b, a).scale(q_power(rel.exponent))
    # reversing the pair negates the exponent
    assert commutation_relation((3, 4), (1, 2), G24).exponent == -rel.exponent
    # incomparable pairs use exponent 0
    assert commutation_relation((1, 4), (2, 3), G24).exponent == 0


def test_commutation_with_lower_terms():
    rel = commutation_relation((1, 3), (2, 4), G24)
    assert rel.exponent == 2
    assert rel.lower_terms == {((1, 2), (3, 4)): q_power(-1) - Q}


def test_verify_asl_examples():
    assert verify_asl(M22, 4).passed
    det1 = verify_asl(AlgebraConfig("detring", 2, 3, t=1))
    assert det1.verdict == "trivial quotient" and not det1.passed
    with pytest.raises(ValueError):
        verify_asl(G24, 1)
    single = verify_asl(AlgebraConfig("grassmannian", 2, 2), 3)
    assert single.passed
    rep = verify_asl(G24, 2).to_json()
    assert set(rep["conditions"]) == set("12345") and rep["verdict"] == "pass"


def test_detring_t1_kills_everything():
    assert len(config_poset(AlgebraConfig("detring", 2, 3, t=1))) == 0
    assert len(config_omega(AlgebraConfig("detring", 2, 3, t=1))) == 9


def test_ideal_membership_examples():
    poset = config_poset(G24)
    omega = pi_ideal(poset, [(1, 4)], "cogenerated")
    for w in omega.members:
        assert ideal_membership(realize((w,), G24), omega, G24)[0]
    member, parts = ideal_membership(realize(((3, 4),), G24), omega, G24)
    assert not member and parts["outside"] == {((3, 4),): ONE}
    small = pi_ideal(poset, [(1, 3)], "generated")
    member, parts = ideal_membership(realize(((1, 3), (1, 4)), G24), small, G24)
    assert member and not parts["outside"]
    with pytest.raises(PosetError):
        ideal_membership(realize(((1, 3),), G24), [(1, 3)], G24)


@pytest.mark.parametrize("gamma", [(1, 3), (1, 4), (2, 3), (2, 4)])
def test_schubert_monomials_independent_modulo_ideal(gamma):
    sch = AlgebraConfig("schubert", 2, 4, gamma=gamma)
    omega = config_omega(sch)
    rng = random.Random(hash(gamma))
    for d in range(1, 4):
        assert _check_independence(sch, d, True)["ok"]
        std = standard_monomials(sch, d)
        for _ in range(10):
            elem = AlgebraElement.zero((2, 4))
            for s in rng.sample(std, min(3, len(std))):
                elem = elem + realize(s, G24).scale(LaurentPoly({rng.randint(-1, 1): rng.choice([1, 2, -3])}))
            assert not ideal_membership(elem, omega, G24, d)[0]


def test_normalizing_sequences():
    poset = config_poset(G24)
    empty = normalizing_sequence_check([], [], G24)
    assert empty.ok and empty.checks == 0
    whole = poset.linear_extension()
    assert normalizing_sequence_check(whole, whole, G24).ok
    omega = pi_ideal(poset, [(1, 4)], "cogenerated")
    order = [(1, 2), (1, 3), (2, 3)]
    assert normalizing_sequence_check(omega, order, G24, max_degree=2).ok
    with pytest.raises(PosetError):
        normalizing_sequence_check(omega, [(1, 2), (2, 3), (1, 3)], G24)
    with pytest.raises(PosetError):
        normalizing_sequence_check(omega, [(1, 2), (1, 3)], G24)


def test_normalizing_sequence_in_matrix_algebra():
    omega = pi_ideal(config_poset(M22), [P((1, 2), (1, 2))], "generated")
    assert normalizing_sequence_check(omega, [P((1, 2), (1, 2))], M22).ok


def test_dehom_pluecker():
    assert verify_dehom_plucker((1, 2), (1, 2), 2, 2)
    assert verify_dehom_plucker((1, 2), (1, 3), 2, 3)
    with pytest.raises(ValueError):
        verify_dehom_plucker((1,), (1,), 2, 2)
    with pytest.raises(ConfigError):
        verify_dehom_plucker((1, 2), (1, 4), 2, 3)


def test_dehom_pluecker_at_q_one_is_classical():
    lhs, rhs = dehom_plucker_sides((1, 2), (1, 2), 2, 2)
    rows = (1, 2)
    classical = classical_minor(rows, (1, 2)) * classical_minor(rows, (3, 4))
    assert sympy.expand(at_q_one(rhs) - classical) == 0
    assert sympy.expand(at_q_one(lhs) - classical) == 0


def test_certificate_error_is_assertion():
    assert issubclass(CertificateError, AssertionError)
