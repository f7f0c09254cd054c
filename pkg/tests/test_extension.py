import itertools

import pytest
from hypothesis import given, settings, strategies as st

from freemult.arrangement import ArrangementError, MultiArrangement, x3, ziegler_restriction
from freemult.derivations import decide_free
from freemult.extension import (
    ExtensionSpec,
    build_extension,
    find_w,
    normalize_translation,
    recognize_x3,
    terao_trace,
    translate,
    verify_extension,
)
from freemult.field import GF, QQ


def perturbed(A4):
    """Replace the first x - A w form by x - 3 w."""
    forms = list(A4.forms)
    F = A4.field
    forms[0] = (F.one, F.zero, F.zero, F(-3))
    return MultiArrangement(F, forms, A4.mult, A4.vars)


# -- construction -------------------------------------------------------------------

@pytest.mark.parametrize("alpha,consts,F,count", [
    (-1, (1,), QQ, 10),
    (-1, (1, 2), QQ, 16),
    (2, (1,), GF(7), 13),
    (2, (1, 3), GF(7), 22),
])
def test_hyperplane_count(alpha, consts, F, count):
    spec = ExtensionSpec(alpha, consts, F)
    A4 = build_extension(spec)
    assert len(A4) == 3 * spec.order * spec.t + 4 == count
    assert A4.is_simple and A4.rank == 4


def test_spec_validation():
    with pytest.raises(ArrangementError):
        ExtensionSpec(2, (1,), QQ)  # 2 has infinite order in Q
    with pytest.raises(ArrangementError):
        ExtensionSpec(-1, (1, -1), QQ)  # same orbit
    with pytest.raises(ArrangementError):
        ExtensionSpec(-1, (0,), QQ)
    with pytest.raises(ArrangementError):
        ExtensionSpec(-1, (1, 2), QQ, t=1)


def test_restriction_is_x3_with_n_n_n_1_1_1():
    A4 = build_extension(ExtensionSpec(-1, (1,), QQ))
    R = ziegler_restriction(A4, find_w(A4))
    rec = recognize_x3(R)
    assert rec is not None and rec.alpha == -1
    assert rec.mult == (2, 2, 2, 1, 1, 1)


def test_recognize_x3_on_x3_itself():
    for alpha in (-1, 2, 3):
        rec = recognize_x3(x3(alpha))
        assert rec.labels == (0, 1, 2, 3, 4, 5) and rec.alpha == alpha


def test_recognize_rejects_other_arrangements():
    braid = MultiArrangement(QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)], [1] * 6)
    assert recognize_x3(braid) is None


# -- verification ---------------------------------------------------------------------

def test_extension_free_and_full_saito():
    A4 = build_extension(ExtensionSpec(-1, (1,), QQ))
    rep = verify_extension(A4, full_saito=True)
    assert rep.ok and rep.restriction_free and rep.locally_free
    assert rep.full_saito["status"] == "Free"
    assert not rep.notes


@pytest.mark.parametrize("alpha,consts,F", [(-1, (1, 2), QQ), (2, (1,), GF(7)), (2, (1, 3), GF(7))])
def test_extension_free(alpha, consts, F):
    rep = verify_extension(build_extension(ExtensionSpec(alpha, consts, F)))
    assert rep.ok
    assert all(c.agree for c in rep.local)


def test_perturbed_not_locally_free():
    A4 = perturbed(build_extension(ExtensionSpec(-1, (1,), QQ)))
    rep = verify_extension(A4)
    assert not rep.ok and not rep.locally_free
    bad = [c for c in rep.local if not c.free]
    assert bad and all(c.grid_points == 1 and c.n == 2 for c in bad)


def test_perturbed_not_free_by_saito():
    A4 = perturbed(build_extension(ExtensionSpec(-1, (1,), QQ)))
    assert not decide_free(A4).is_free


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=10)
def test_translation_invariance(p, q, r):
    A4 = build_extension(ExtensionSpec(-1, (1,), QQ))
    B = translate(A4, p, q, r)
    assert verify_extension(B).ok == verify_extension(A4).ok
    C, shift = normalize_translation(B)
    assert verify_extension(C).ok == verify_extension(B).ok
    assert set(C.forms) == set(A4.forms)


def test_translation_keeps_perturbed_failure():
    A4 = perturbed(build_extension(ExtensionSpec(-1, (1,), QQ)))
    B = translate(A4, 1, -2, 5)
    assert not verify_extension(B).ok
    assert not verify_extension(normalize_translation(B)[0]).ok


# -- necessity: any free extension of the right shape passes the trace -----------------

def test_trace_on_free_extension():
    A4 = build_extension(ExtensionSpec(2, (1,), GF(7)))
    steps = terao_trace(A4)
    assert [s.name for s in steps] == ["multiplicity_shape", "local_freeness", "order_divides_n", "yoshinaga_verdict"]
    assert all(s.ok for s in steps)
    assert steps[2].detail["order"] == 3 and steps[2].detail["t"] == 1


def test_trace_on_perturbed():
    steps = terao_trace(perturbed(build_extension(ExtensionSpec(-1, (1,), QQ))))
    by = {s.name: s for s in steps}
    assert by["multiplicity_shape"].ok
    assert not by["local_freeness"].ok
    assert not by["yoshinaga_verdict"].ok


def test_order_must_divide_n():
    # a grid of size n = 3 with alpha = -1 (order 2) is not an extension
    F = QQ
    vals = [1, -1, 2]
    forms = [(1, 0, 0, -v) for v in vals] + [(0, 1, 0, -v) for v in vals] + [(0, 0, 1, v) for v in vals]
    forms += [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (0, 0, 0, 1)]
    A4 = MultiArrangement(F, forms, [1] * len(forms), ("x", "y", "z", "w"))
    by = {s.name: s for s in terao_trace(A4)}
    assert not by["order_divides_n"].ok
    assert not verify_extension(A4).ok


def test_verify_needs_rank4():
    with pytest.raises(ArrangementError):
        verify_extension(x3(-1))


def test_report_json():
    rep = verify_extension(build_extension(ExtensionSpec(-1, (1,), QQ)))
    d = rep.to_json()
    assert d["free"] and d["x3_alpha"] == -1 and d["x3_mult"] == [2, 2, 2, 1, 1, 1]


def test_necessity_over_f5():
    # arrangements x - a w, y - b w, z + c w, x + y, x + z, y + z, w over GF(5)
    # with a = {1, -1} (any orbit {A, -A} rescales to it) and b, c ranging over
    # all pairs: the only free one has b = c = a
    F = GF(5)
    a = (1, 4)
    free = []
    for b in itertools.combinations(range(5), 2):
        for c in itertools.combinations(range(5), 2):
            forms = [(1, 0, 0, F.neg(v)) for v in a] + [(0, 1, 0, F.neg(v)) for v in b]
            forms += [(0, 0, 1, v) for v in c]
            forms += [(1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0), (0, 0, 0, 1)]
            A4 = MultiArrangement(F, forms, [1] * 10, ("x", "y", "z", "w"))
            if verify_extension(A4).ok:
                free.append((b, c))
    assert free == [((1, 4), (1, 4))]
