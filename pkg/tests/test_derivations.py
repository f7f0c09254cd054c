from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freemult.arrangement import MultiArrangement, boolean, x3
from freemult.derivations import (
    Derivation,
    MembershipError,
    Status,
    decide_free,
    decide_free_bruteforce,
    degree_component,
    free_hilbert_function,
    hilbert_function,
    is_member,
    minimal_generators,
    saito_check,
)
from freemult.derivations import derivation_from_strings
from freemult.field import GF, QQ
from freemult.linalg import rank
from freemult.poly import Polynomial, monomials


# -- oracle: D(A, m)_d as the kernel of "remainder mod alpha^m" -------------------

def dimension_by_division(A, d):
    """dim D(A, m)_d from the linear map theta -> (theta(alpha_i) mod alpha_i^m_i)_i.

    Each basis derivation x^k d_j is pushed through polynomial division; the
    remainders are flattened into one long row, and the dimension is
    (number of basis derivations) - rank.
    """
    F, ell = A.field, A.ell
    mons = monomials(ell, d)
    divisors = [A.linear_form(i) ** A.mult[i] for i in range(len(A))]
    rows = []
    for j in range(ell):
        for mon in mons:
            P = [Polynomial(F, A.vars) for _ in range(ell)]
            P[j] = Polynomial.monomial(F, A.vars, mon)
            theta = Derivation(tuple(P))
            row = []
            for i, form in enumerate(A.forms):
                _, r = theta.apply(form).divmod(divisors[i])
                # theta(alpha) = sum a_j P_j is homogeneous of degree d, so is r
                row.extend(r.coefficient_vector(d))
            rows.append(row)
    return len(rows) - rank(rows, F)


@pytest.mark.parametrize("A", [
    boolean(3),
    x3(-1),
    x3(2, QQ, (2, 1, 1, 1, 1, 1)),
    x3(3, GF(7), (2, 2, 2, 1, 1, 1)),
    MultiArrangement(QQ, [(1, 0), (0, 1), (1, 1)], [3, 2, 2], ("x", "y")),
], ids=["boolean", "x3", "x3-2", "x3-f7", "p1"])
def test_dimension_matches_division_oracle(A):
    for d in range(0, 5):
        assert len(degree_component(A, d)) == dimension_by_division(A, d)


def test_component_members_pass_division():
    A = x3(-1, QQ, (2, 2, 2, 1, 1, 1))
    for d in range(3, 5):
        for theta in degree_component(A, d):
            assert theta.is_homogeneous() and theta.degree == d
            assert is_member(A, theta)


def test_euler_derivation_is_always_a_member():
    A = x3(5)
    x, y, z = (Polynomial.variable(QQ, A.vars, i) for i in range(3))
    assert is_member(A, Derivation((x, y, z)))
    assert len(degree_component(A, 0)) == 0
    assert len(degree_component(A, 1)) == 1


def test_non_member_detected():
    A = x3(-1)
    theta = derivation_from_strings(["y", "0", "0"], QQ, A.vars)
    assert not is_member(A, theta)


# -- Hilbert functions and generators -------------------------------------------

def test_boolean_hilbert_function():
    A = boolean(3, QQ, (2, 1, 3))
    assert hilbert_function(A, 6) == free_hilbert_function(3, (2, 1, 3), 6)


def test_free_hilbert_function_examples():
    assert free_hilbert_function(2, (1, 1), 3) == [0, 2, 4, 6]
    assert free_hilbert_function(3, (0,), 2) == [1, 3, 6]


def test_minimal_generators_of_boolean():
    A = boolean(3, QQ, (2, 3, 1))
    gens = minimal_generators(A, 4)
    assert sorted(g.degree for g in gens) == [1, 2, 3]


def test_minimal_generators_of_non_free_x3():
    # X3 itself is not free, so it needs more than three generators
    gens = minimal_generators(x3(-1), 6)
    assert len(gens) > 3
    assert min(g.degree for g in gens) == 1


# -- Saito -----------------------------------------------------------------------------

def test_saito_boolean():
    A = boolean(3, QQ, (2, 1, 3))
    x, y, z = (Polynomial.variable(QQ, A.vars, i) for i in range(3))
    zero = Polynomial(QQ, A.vars)
    basis = [Derivation((x ** 2, zero, zero)), Derivation((zero, y, zero)), Derivation((zero, zero, z ** 3))]
    res = saito_check(A, basis)
    assert res.ok and res.k == 1


def test_saito_rejects_non_member():
    A = boolean(3, QQ, (2, 1, 1))
    x, y, z = (Polynomial.variable(QQ, A.vars, i) for i in range(3))
    zero = Polynomial(QQ, A.vars)
    with pytest.raises(MembershipError):
        saito_check(A, [Derivation((x, zero, zero)), Derivation((zero, y, zero)), Derivation((zero, zero, z))])


def test_saito_degenerate_triple_fails():
    # members, but linearly dependent
    A = boolean(3)
    x, y, z = (Polynomial.variable(QQ, A.vars, i) for i in range(3))
    zero = Polynomial(QQ, A.vars)
    e = Derivation((x, y, z))
    res = saito_check(A, [e, e * 2, Derivation((zero, zero, z))])
    assert not res.ok


def test_saito_wrong_count():
    A = boolean(3)
    with pytest.raises(ValueError):
        saito_check(A, [])


# -- brute-force verdicts -------------------------------------------------------------

@given(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4)))
@settings(max_examples=15)
def test_boolean_always_free_with_exponents_m(m):
    v = decide_free_bruteforce(boolean(3, QQ, m))
    assert v.status is Status.FREE
    assert sorted(v.exponents) == sorted(m)


def test_x3_simple_not_free():
    v = decide_free_bruteforce(x3(-1))
    assert v.status is Status.NOT_FREE


def test_x3_free_example():
    v = decide_free_bruteforce(x3(-1, QQ, (2, 2, 2, 1, 1, 1)))
    assert v.is_free and v.exponents == (3, 3, 3)
    assert saito_check(x3(-1, QQ, (2, 2, 2, 1, 1, 1)), v.basis).ok


def test_small_bound_gives_unknown():
    v = decide_free(x3(-1, QQ, (2, 2, 2, 1, 1, 1)), d_max=2)
    assert v.status is Status.UNKNOWN


def test_rank2_always_free():
    for m in [(1, 1, 1), (3, 2, 2), (5, 1, 1)]:
        P = MultiArrangement(QQ, [(1, 0), (0, 1), (1, 1)], m, ("x", "y"))
        v = decide_free(P)
        assert v.is_free and sum(v.exponents) == sum(m)


@given(st.sampled_from([-1, 2, 3, Fraction(1, 2)]),
       st.lists(st.integers(1, 2), min_size=6, max_size=6))
@settings(max_examples=12)
def test_free_exponents_sum_to_size(alpha, m):
    A = x3(alpha, QQ, tuple(m))
    v = decide_free_bruteforce(A)
    if v.is_free:
        assert sum(v.exponents) == A.size
        assert hilbert_function(A, A.size) == free_hilbert_function(3, v.exponents, A.size)


@given(st.sampled_from([-1, 2, 3]), st.integers(0, 5))
@settings(max_examples=12)
def test_verdict_invariant_under_scaling_forms(alpha, i):
    # rescaling a defining form does not change the module
    A = x3(alpha, QQ, (2, 2, 2, 1, 1, 1))
    forms = list(A.forms)
    forms[i] = tuple(c * -3 for c in forms[i])
    B = MultiArrangement(QQ, forms, A.mult)
    assert decide_free_bruteforce(A).status == decide_free_bruteforce(B).status
    assert hilbert_function(A, 4) == hilbert_function(B, 4)


def test_verdict_json():
    v = decide_free_bruteforce(x3(-1, QQ, (2, 2, 2, 1, 1, 1)))
    d = v.to_json(QQ)
    assert d["status"] == "Free" and d["exponents"] == [3, 3, 3] and len(d["basis"]) == 3


def test_bruteforce_needs_rank_three():
    with pytest.raises(ValueError):
        decide_free_bruteforce(boolean(2))
