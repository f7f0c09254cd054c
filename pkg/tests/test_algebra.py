from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from freemult.field import GF, QQ, Field, FieldError
from freemult.linalg import (
    LinearAlgebraError,
    PolyMatrix,
    det,
    inverse,
    kernel_basis,
    mat_mul,
    rank,
    scalar_det,
)
from freemult.poly import Polynomial, PolynomialError, parse_polynomial

XYZ = ("x", "y", "z")


def P(text, field=QQ, variables=XYZ):
    return parse_polynomial(text, field, variables)


# -- fields -------------------------------------------------------------------

def test_field_parse_and_print():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:7") == GF(7)
    assert str(GF(11)) == "Fp:11"
    with pytest.raises(FieldError):
        Field.parse("Fp:9")
    with pytest.raises(FieldError):
        Field.parse("R")


def test_field_coercion():
    assert QQ("3/4") == Fraction(3, 4)
    F = GF(7)
    assert F("1/2") == 4
    assert F(-1) == 6
    assert F.signed(6) == -1


def test_multiplicative_order():
    assert QQ.order(-1) == 2
    assert QQ.order(1) == 1
    assert QQ.order(2) is None
    F = GF(7)
    assert F.order(2) == 3
    assert F.order(3) == 6
    assert F.order(6) == 2


@given(st.integers(1, 12))
def test_order_divides_group_order(a):
    F = GF(13)
    a = F(a)
    assert (F.p - 1) % F.order(a) == 0
    assert F.pow(a, F.order(a)) == 1


# -- polynomials -----------------------------------------------------------------

def test_difference_of_squares():
    assert P("x+y") * P("x-y") == P("x^2 - y^2")


def test_identity_product():
    f = P("x - 3*y")
    assert f * P("1") == f


def test_square_over_f2():
    F = GF(2)
    f = parse_polynomial("x+y", F, XYZ)
    assert f * f == parse_polynomial("x^2+y^2", F, XYZ)
    assert str(f * f) == "x^2 + y^2"


def test_mismatched_rings_rejected():
    with pytest.raises(PolynomialError):
        P("x") + parse_polynomial("x", GF(7), XYZ)
    with pytest.raises(PolynomialError):
        P("x") * parse_polynomial("x", QQ, ("x", "y"))


def test_too_many_variables():
    with pytest.raises(PolynomialError):
        Polynomial(QQ, ("a", "b", "c", "d", "e"))


def test_printer_round_trip_examples():
    for text in ["x^2 - 2*x*y + y^2", "1/2*x*z - 3*w", "x^3*y*z^2 + 7", "0", "-x"]:
        f = parse_polynomial(text, QQ, ("x", "y", "z", "w"))
        assert str(f) == text
        assert parse_polynomial(str(f), QQ, ("x", "y", "z", "w")) == f


def test_substitute_identity_and_swap():
    x = P("x")
    assert x.substitute_linear([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == x
    assert x.substitute_linear([[0, 1, 0], [1, 0, 0], [0, 0, 1]]) == P("y")


@pytest.mark.parametrize("alpha", [-1, 2, Fraction(3, 5)])
def test_substitute_sends_form_to_first_variable(alpha):
    # x -> x + alpha y makes x - alpha y into x
    f = P(f"(x - ({alpha})*y)^2")
    T = [[1, alpha, 0], [0, 1, 0], [0, 0, 1]]
    assert f.substitute_linear(T) == P("x^2")


def test_singular_substitution_rejected():
    with pytest.raises(PolynomialError):
        P("x").substitute_linear([[1, 1, 0], [1, 1, 0], [0, 0, 1]])


def test_division():
    q, r = P("x^3 - y^3").divmod(P("x - y"))
    assert r.is_zero() and q == P("x^2 + x*y + y^2")
    assert not P("x + y").divides(P("x^2 + y^2"))


coeff = st.integers(-4, 4)


@st.composite
def homogeneous(draw, d=None):
    d = draw(st.integers(0, 3)) if d is None else d
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        a = draw(st.integers(0, d))
        b = draw(st.integers(0, d - a))
        terms[(a, b, d - a - b)] = draw(coeff)
    return Polynomial(QQ, XYZ, terms)


@st.composite
def invertible(draw):
    # unit lower times upper with nonzero diagonal
    diag = [draw(st.integers(1, 4)) * draw(st.sampled_from([1, -1])) for _ in range(3)]
    L = [[1 if i == j else (draw(coeff) if j < i else 0) for j in range(3)] for i in range(3)]
    U = [[diag[i] if i == j else (draw(coeff) if j > i else 0) for j in range(3)] for i in range(3)]
    return mat_mul(L, U, QQ)


@given(homogeneous(), homogeneous())
def test_degree_additive(f, g):
    h = f * g
    if f and g:
        assert h.degree == f.degree + g.degree
        assert h.is_homogeneous()
    else:
        assert h.is_zero()


@given(homogeneous(), invertible())
def test_substitution_inverse(f, T):
    Tinv = inverse(T, QQ)
    assert f.substitute_linear(T).substitute_linear(Tinv) == f


@given(homogeneous(), invertible())
def test_substitution_preserves_degree(f, T):
    g = f.substitute_linear(T)
    assert g.degree == f.degree


@given(homogeneous())
def test_parse_print_round_trip(f):
    assert parse_polynomial(str(f), QQ, XYZ) == f


# -- linear algebra ---------------------------------------------------------------

def test_kernel_examples():
    assert kernel_basis([[1, 1]], QQ) == [[1, -1]]
    assert kernel_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ) == []
    assert kernel_basis([[1, 2], [2, 4]], QQ) == [[1, Fraction(-1, 2)]]


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=4),
       st.sampled_from([QQ, GF(5), GF(7)]))
def test_kernel_properties(M, F):
    K = kernel_basis(M, F)
    for v in K:
        for row in M:
            total = F.zero
            for a, b in zip(row, v):
                total = F.add(total, F.mul(F(a), b))
            assert total == 0
        # leading entry normalized
        assert next(c for c in v if c) == 1
    assert len(K) == 5 - rank(M, F)


def test_det_examples():
    x, y, z = P("x"), P("y"), P("z")
    zero, one = P("0"), P("1")
    assert det([[x, zero, zero], [zero, y, zero], [zero, zero, z]]) == P("x*y*z")
    assert det([[one, zero], [zero, zero]]).is_zero()
    with pytest.raises(LinearAlgebraError):
        det([[x, y]])


@st.composite
def graded_matrix(draw):
    n = draw(st.integers(1, 3))
    rows = [draw(st.integers(0, 2)) for _ in range(n)]
    cols = [draw(st.integers(2, 3)) for _ in range(n)]
    entries = [[draw(homogeneous(c - r)) if draw(st.booleans()) else Polynomial(QQ, XYZ) for c in cols] for r in rows]
    return PolyMatrix(entries, rows, cols)


@given(graded_matrix())
def test_graded_det_is_homogeneous(M):
    D = M.det()
    if D:
        assert D.is_homogeneous()
        assert D.degree == sum(M.col_degrees) - sum(M.row_degrees)


def test_graded_labels_enforced():
    with pytest.raises(LinearAlgebraError):
        PolyMatrix([[P("x^2")]], (0,), (1,))


def test_det_agrees_with_scalar_det():
    M = [[2, -1, 3], [0, 4, 1], [5, 2, -2]]
    assert det([[P(str(c)) for c in row] for row in M]).constant_value() == scalar_det(M, QQ)


def test_inverse_and_product():
    M = [[2, 1], [1, 1]]
    assert mat_mul(M, inverse(M, QQ), QQ) == [[1, 0], [0, 1]]
