import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxvis.words import (
    BudgetError,
    ConjugateSpecial,
    cayley_ball,
    coset_min_rep,
    double_coset_min_rep,
    format_word,
    intersect_special_conjugates,
    inverse,
    is_geodesic,
    mult,
    normal_form,
    parse_word,
    support,
    words_equal,
)
from conftest import MatrixOracle, dihedral, make_system


def test_parse_and_format_round_trip(simex):
    assert parse_word(simex, "s3 s1 s3") == (2, 0, 2)
    assert parse_word(simex, "e") == ()
    assert format_word(simex, ()) == "e"
    assert format_word(simex, (4, 0)) == "s5 s1"
    assert parse_word(simex, format_word(simex, (1, 2, 1))) == (1, 2, 1)
    with pytest.raises(ValueError):
        parse_word(simex, "s1 nope")


def test_normal_form_basics(simex):
    assert normal_form(simex, ()) == ()
    assert normal_form(simex, (0, 0)) == ()
    assert normal_form(simex, (1, 0)) == (0, 1)  # commuting pair, ShortLex order
    assert normal_form(simex, (0, 1, 0)) == (1,)
    # s3 and s5 have infinite order, so alternating words are already reduced
    assert normal_form(simex, (2, 4, 2, 4, 2)) == (2, 4, 2, 4, 2)


def test_normal_form_dihedral_relations():
    d3 = dihedral(3)
    assert normal_form(d3, (0, 1, 0)) == (0, 1, 0)
    assert normal_form(d3, (1, 0, 1)) == (0, 1, 0)
    assert normal_form(d3, (0, 1, 0, 1)) == (1, 0)
    assert normal_form(d3, (0, 1, 0, 1, 0, 1)) == ()


def test_normal_form_free_product(free4):
    # w=0 x=1 y=2 z=3; the conjugated word reduces by free cancellation only
    p = (0, 2, 1, 2, 0)
    q = (2,) + p + (3,) + p + (2,)
    assert normal_form(free4, q) == (2, 0, 2, 1, 2, 0, 3, 0, 2, 1, 2, 0, 2)
    assert len(normal_form(free4, q)) == 13


def test_is_geodesic_and_support(simex):
    assert is_geodesic(simex, (2, 4, 2))
    assert not is_geodesic(simex, (0, 1, 0))
    assert support(simex, (0, 1, 0)) == (1,)
    assert support(simex, (2, 4, 2, 4)) == (2, 4)
    assert support(simex, ()) == ()


def test_support_equals_letter_set_of_any_geodesic():
    a3 = make_system("x y z", [("x", "y", 3), ("y", "z", 3), ("x", "z", 2)])
    for n in range(6):
        for w in itertools.product(range(3), repeat=n):
            if is_geodesic(a3, w):
                assert support(a3, w) == tuple(sorted(set(w)))


def test_mult_inverse_equal(fa6):
    w = (1, 2, 0, 3)
    assert mult(fa6, w, inverse(fa6, w)) == ()
    assert words_equal(fa6, (0, 1), (1, 0))
    assert not words_equal(fa6, (0,), (1,))
    assert mult(fa6, (), (0,), ()) == (0,)


@given(st.lists(st.integers(min_value=0, max_value=4), max_size=10))
@settings(max_examples=120, deadline=None)
def test_normal_form_is_idempotent_and_shortening(w):
    sys_ = make_system(
        "s1 s2 s3 s4 s5",
        [("s1", "s2", 2), ("s2", "s3", 2), ("s3", "s4", 2), ("s4", "s5", 2)],
    )
    w = tuple(w)
    nf = normal_form(sys_, w)
    assert normal_form(sys_, nf) == nf
    assert len(nf) <= len(w)
    assert (len(w) - len(nf)) % 2 == 0
    assert mult(sys_, w, inverse(sys_, w)) == ()


@given(st.lists(st.integers(min_value=0, max_value=2), max_size=8))
@settings(max_examples=100, deadline=None)
def test_normal_form_matches_matrix_oracle_b3(w):
    sys_ = make_system("x y z", [("x", "y", 4), ("y", "z", 3), ("x", "z", 2)])
    oracle = _b3_oracle(sys_)
    assert normal_form(sys_, tuple(w)) == oracle.canonical(tuple(w))


_B3_CACHE = {}


def _b3_oracle(sys_):
    if "oracle" not in _B3_CACHE:
        _B3_CACHE["oracle"] = MatrixOracle(sys_)
    return _B3_CACHE["oracle"]


def test_deletion_condition_against_oracle():
    # every non-geodesic word admits a two-letter deletion fixing the element
    d3 = dihedral(3)
    oracle = MatrixOracle(d3)
    for n in range(1, 6):
        for w in itertools.product(range(2), repeat=n):
            geodesic = len(oracle.canonical(w)) == n
            assert is_geodesic(d3, w) == geodesic
            if geodesic:
                continue
            assert any(
                oracle.equal(w, w[:i] + w[i + 1:j] + w[j + 1:])
                for i, j in itertools.combinations(range(n), 2)
            )


def test_coset_min_rep_brute_force(fa6):
    A = fa6.subset("a b")
    sub = sorted(cayley_ball(fa6, A).elements, key=lambda u: (len(u), u))
    group = cayley_ball(fa6, "a b c").elements
    assert len(group) == 12
    for y in group:
        cd = coset_min_rep(fa6, y, A)
        assert cd.subgroup == A
        coset = sorted((mult(fa6, y, t) for t in sub), key=lambda u: (len(u), u))
        assert cd.rep == coset[0]
        assert mult(fa6, inverse(fa6, y), cd.rep) in cayley_ball(fa6, A).elements


def test_double_coset_min_rep_brute_force(fa6):
    I = fa6.subset("a b")
    J = fa6.subset("b c")
    left = cayley_ball(fa6, I).elements
    right = cayley_ball(fa6, J).elements
    for w in cayley_ball(fa6, "a b c").elements:
        d = double_coset_min_rep(fa6, I, w, J)
        best = min(
            (mult(fa6, u, w, v) for u in left for v in right),
            key=lambda x: (len(x), x),
        )
        assert d == best


def _conjugate_set(sys_, g, A):
    g_inv = inverse(sys_, g)
    return {mult(sys_, g, u, g_inv) for u in cayley_ball(sys_, A).elements}


def test_intersect_special_conjugates_pinned(fa6):
    P = ConjugateSpecial(conjugator=(), core=fa6.subset("a b"))
    Q = ConjugateSpecial(conjugator=(1, 2), core=fa6.subset("a b"))
    res = intersect_special_conjugates(fa6, P, Q)
    assert res.core == (0,)
    assert format_word(fa6, res.conjugator) == "b"

    same = intersect_special_conjugates(
        fa6,
        ConjugateSpecial((), fa6.subset("a c")),
        ConjugateSpecial((), fa6.subset("a c")),
    )
    assert same.conjugator == ()
    assert same.core == fa6.subset("a c")


def test_intersect_special_conjugates_elementwise(fa6):
    cases = [
        ((), "a b", (1, 2), "a b"),
        ((), "a b", (), "b c"),
        ((2,), "a b", (1,), "b c"),
        ((0, 1), "a c", (), "a b"),
    ]
    for g, I, h, J in cases:
        res = intersect_special_conjugates(
            fa6, ConjugateSpecial(g, fa6.subset(I)), ConjugateSpecial(h, fa6.subset(J))
        )
        lhs = _conjugate_set(fa6, g, I) & _conjugate_set(fa6, h, J)
        rhs = _conjugate_set(fa6, res.conjugator, res.core)
        assert lhs == rhs


def test_cayley_ball_finite_subgroup(fa6):
    ball = cayley_ball(fa6, "a b c")
    assert ball.complete
    assert len(ball.elements) == 12
    assert () in ball.elements


def test_cayley_ball_radius_and_budget(free4):
    ball = cayley_ball(free4, free4.generators, radius=2)
    assert not ball.complete
    assert len(ball.elements) == 1 + 4 + 12
    only_identity = cayley_ball(free4, free4.generators, radius=0)
    assert only_identity.elements == frozenset({()})
    assert not only_identity.complete
    with pytest.raises(BudgetError):
        cayley_ball(free4, free4.generators, max_elements=50)


def test_cayley_ball_respects_subset(simex):
    ball = cayley_ball(simex, "s1 s2")
    assert ball.complete
    assert ball.elements == {(), (0,), (1,), (0, 1)}
