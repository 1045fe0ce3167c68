import pytest

from coxvis.gog import validate_visual
from coxvis.refine import (
    AbstractSplitting,
    SplitEdge,
    SplitStructureError,
    SplitVertex,
    check_split_structure,
    emit_split,
    parse_split,
    refine_to_visual,
    splitting_from_gog,
    _subgroup_ball,
)
from coxvis.decompose import visual_dunwoody
from coxvis.system import ParseError, parse_system
from coxvis.words import _engine, inverse, mult, normal_form


@pytest.fixture(scope="module")
def simex_split(fixture_dir):
    sys_ = parse_system((fixture_dir / "simex.cox").read_text())
    split = parse_split(sys_, (fixture_dir / "simex.split").read_text())
    return sys_, split


@pytest.fixture(scope="module")
def artificial_split(fixture_dir):
    sys_ = parse_system((fixture_dir / "free4.cox").read_text())
    split = parse_split(sys_, (fixture_dir / "artificialex.split").read_text())
    return sys_, split


def test_parse_split_round_trip(simex_split):
    sys_, split = simex_split
    assert [v.id for v in split.vertices] == ["A", "B"]
    assert split.vertex("A").words == ((0,), (1,), (3,), (2, 4, 2))
    assert split.edges[0].ends == ("A", "B")
    again = parse_split(sys_, emit_split(sys_, split))
    assert again == split


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("vertex A words s1\nvertex A words s2\n", "duplicate"),
        ("vertex A words\n", "expected"),
        ("vertex A words s1,,s2\n", "empty word"),
        ("vertex A words s9\n", "unknown"),
        ("vertex A words s1\nedge E A B words s1\n", "unknown vertex"),
        ("vertex A words s1\nvertex B words s2\n", "tree"),
        ("nope\n", "nope"),
        ("vertex A words s1\nedge E A A words s1\n", "loop"),
    ],
)
def test_parse_split_errors(simex, text, fragment):
    with pytest.raises(ParseError) as err:
        parse_split(simex, text)
    assert fragment in str(err.value)


def test_check_split_structure_direct():
    ok = AbstractSplitting(
        vertices=(SplitVertex("A", ((0,),)), SplitVertex("B", ((1,),))),
        edges=(SplitEdge("E", ("A", "B"), (((),))),),
    )
    # the edge word list above is a tuple holding one empty word, which is allowed
    check_split_structure(ok)
    with pytest.raises(SplitStructureError, match="empty word list"):
        check_split_structure(
            AbstractSplitting(vertices=(SplitVertex("A", ()),), edges=())
        )
    with pytest.raises(SplitStructureError, match="at least one vertex"):
        check_split_structure(AbstractSplitting(vertices=(), edges=()))


def test_subgroup_ball_contains_inverses_and_products(free4):
    eng = _engine(free4)
    p = (0, 2, 1, 2, 0)
    ball = _subgroup_ball(eng, ((0,), p), depth=3, cap=10000)
    assert () in ball
    assert (0,) in ball
    assert eng.normal_form(p) in ball
    assert eng.mult((0,), p) in ball
    assert eng.mult(p, (0,), p) in ball


def test_subgroup_ball_includes_reversals(free4):
    # w x is not an involution; its inverse x w must appear at depth 1
    eng = _engine(free4)
    ball = _subgroup_ball(eng, ((0, 1),), depth=1, cap=100)
    assert (0, 1) in ball
    assert (1, 0) in ball


def test_subgroup_ball_cap_stops_growth(free4):
    eng = _engine(free4)
    ball = _subgroup_ball(eng, ((0,), (1,), (2,), (3,)), depth=50, cap=30)
    assert len(ball) >= 30


def test_identity_refinement_of_visual_input(simex):
    g = visual_dunwoody(simex)
    split = splitting_from_gog(simex, g)
    out = refine_to_visual(simex, split, radius=2)
    assert out.status == "refined"
    assert validate_visual(simex, out.decomposition).valid
    assert sorted(v.label for v in out.decomposition.vertices) == sorted(
        v.label for v in g.vertices
    )


def test_refine_simex_to_path_decomposition(simex_split):
    sys_, split = simex_split
    out = refine_to_visual(sys_, split, radius=4)
    assert out.status == "refined"
    assert out.radius_used <= 4
    g = out.decomposition
    assert validate_visual(sys_, g).valid
    assert sorted(v.label for v in g.vertices) == [
        (0, 1, 3),
        (1, 2, 3),
        (1, 3, 4),
    ]
    for e in g.edges:
        assert e.label == (1, 3)


def test_refine_simex_certificates_are_sound(simex_split):
    sys_, split = simex_split
    out = refine_to_visual(sys_, split, radius=4)
    eng = _engine(sys_)
    balls = {
        v.id: _subgroup_ball(eng, v.words, depth=6, cap=20000)
        for v in split.vertices
    }
    assert {c.target for c in out.certificates} == {
        (0,), (1,), (2,), (3,), (4,),
        (0, 1), (1, 2), (2, 3), (3, 4),
    }
    for cert in out.certificates:
        for s in cert.target:
            conj = mult(sys_, inverse(sys_, cert.rep), (s,), cert.rep)
            assert conj in balls[cert.quotient_id]


def test_refine_simex_conjugate_vertex(simex_split):
    # s5 is certified at the coset s3*Lambda(A): s3 s5 s3 is a listed generator
    sys_, split = simex_split
    out = refine_to_visual(sys_, split, radius=4)
    cert = next(c for c in out.certificates if c.target == (4,))
    assert cert.quotient_id == "A"
    assert normal_form(sys_, cert.rep) == (2,)


def test_refine_artificial_free_product(artificial_split):
    sys_, split = artificial_split
    out = refine_to_visual(sys_, split, radius=8)
    assert out.status == "refined"
    g = out.decomposition
    assert validate_visual(sys_, g).valid
    assert sorted(v.label for v in g.vertices) == [(0,), (1,), (2,), (3,)]
    assert all(e.label == () for e in g.edges)
    assert out.radius_used <= 8


def test_refine_inconclusive_at_radius_zero(simex_split):
    sys_, split = simex_split
    out = refine_to_visual(sys_, split, radius=0)
    assert out.status == "inconclusive"
    assert out.decomposition is None
    assert "s5" in out.reason


def test_refine_rejects_uncontained_edge_word(simex):
    split = AbstractSplitting(
        vertices=(
            SplitVertex("A", ((0,),)),
            SplitVertex("B", ((1,),)),
        ),
        edges=(SplitEdge("E", ("A", "B"), ((1,),)),),
    )
    out = refine_to_visual(simex, split)
    assert out.status == "inconclusive"
    assert "not certified" in out.reason


def test_refine_coset_budget(artificial_split):
    sys_, split = artificial_split
    out = refine_to_visual(sys_, split, radius=8, max_cosets=4)
    assert out.status == "inconclusive"
    assert "budget" in out.reason


def test_refine_rejects_negative_radius(simex_split):
    sys_, split = simex_split
    with pytest.raises(ValueError):
        refine_to_visual(sys_, split, radius=-1)


def test_splitting_from_gog_empty_label_uses_identity(free4):
    g = visual_dunwoody(free4)
    split = splitting_from_gog(free4, g)
    for e in split.edges:
        assert e.words == ((),)
    out = refine_to_visual(free4, split, radius=2)
    assert out.status == "refined"
    assert sorted(v.label for v in out.decomposition.vertices) == [
        (0,), (1,), (2,), (3,)
    ]
