import pytest

from coxvis.finite_type import FiniteTypeLabel, classify_irreducible, is_finite
from conftest import MatrixOracle, dihedral, make_system


def _fill_commuting(names, rels):
    """Unlisted pairs commute (unlisted means infinite in the input format)."""
    listed = {frozenset((a, b)) for a, b, _ in rels}
    full = list(rels)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if frozenset((a, b)) not in listed:
                full.append((a, b, 2))
    return make_system(" ".join(names), full)


def chain(labels):
    """Linear spherical-style diagram: consecutive orders as given, the rest commute."""
    names = [f"g{i}" for i in range(len(labels) + 1)]
    rels = [(f"g{i}", f"g{i+1}", m) for i, m in enumerate(labels)]
    return _fill_commuting(names, rels)


def test_label_strings_and_orders():
    assert str(FiniteTypeLabel("A", 3)) == "A3"
    assert str(FiniteTypeLabel("I2", 2, dihedral_order=7)) == "I2(7)"
    assert str(FiniteTypeLabel("H3", 3)) == "H3"
    assert FiniteTypeLabel("A", 3).order() == 24
    assert FiniteTypeLabel("B", 4).order() == 384
    assert FiniteTypeLabel("D", 4).order() == 192
    assert FiniteTypeLabel("I2", 2, dihedral_order=6).order() == 12


@pytest.mark.parametrize(
    "labels,expect",
    [
        ((3,), "I2(3)"),
        ((7,), "I2(7)"),
        ((3, 3), "A3"),
        ((3, 3, 3), "A4"),
        ((4, 3), "B3"),
        ((3, 4), "B3"),
        ((3, 4, 3, 3), None),
        ((3, 4, 3), "F4"),
        ((5, 3), "H3"),
        ((3, 5), "H3"),
        ((5, 3, 3), "H4"),
        ((3, 5, 3), None),
        ((5, 3, 3, 3), None),
        ((4, 4), None),
        ((6, 3), None),
        ((3, 3, 3, 3, 3, 3, 3), "A8"),
    ],
)
def test_classify_paths(labels, expect):
    sys_ = chain(labels)
    got = classify_irreducible(sys_, sys_.generators)
    assert (str(got) if got is not None else None) == expect


def star(center_arms):
    """A tree of order-3 edges: center c with arm paths of the given lengths."""
    names = ["c"]
    rels = []
    for a, length in enumerate(center_arms):
        prev = "c"
        for k in range(length):
            v = f"a{a}_{k}"
            names.append(v)
            rels.append((prev, v, 3))
            prev = v
    return _fill_commuting(names, rels)


@pytest.mark.parametrize(
    "arms,expect",
    [
        ((1, 1, 1), "D4"),
        ((1, 1, 3), "D6"),
        ((1, 2, 2), "E6"),
        ((1, 2, 3), "E7"),
        ((1, 2, 4), "E8"),
        ((1, 2, 5), None),
        ((2, 2, 2), None),
        ((1, 1, 1, 1), None),
    ],
)
def test_classify_branched(arms, expect):
    sys_ = star(arms)
    got = classify_irreducible(sys_, sys_.generators)
    assert (str(got) if got is not None else None) == expect


def test_branch_with_heavy_edge_is_infinite():
    sys_ = _fill_commuting(["c", "p", "q", "r"], [("c", "p", 3), ("c", "q", 3), ("c", "r", 4)])
    assert classify_irreducible(sys_, sys_.generators) is None


def test_circuit_is_infinite(triangle333):
    assert classify_irreducible(triangle333, triangle333.generators) is None


def test_infinite_pair_is_infinite():
    sys_ = dihedral(None)
    assert classify_irreducible(sys_, (0, 1)) is None
    assert not is_finite(sys_, (0, 1)).finite


def test_classify_requires_irreducible(square2):
    with pytest.raises(ValueError):
        classify_irreducible(square2, (0, 1))  # commuting pair, two components
    with pytest.raises(ValueError):
        classify_irreducible(square2, ())


def test_is_finite_products(simex, fa6):
    v = is_finite(simex, ("s2", "s4"))
    assert not v.finite
    assert v.describe() == "infinite"

    v = is_finite(simex, ("s1", "s2"))
    assert v.finite and v.order == 4
    assert v.describe() == "finite order=4 factors=A1*A1"

    v = is_finite(fa6, ("a", "b", "c"))
    assert v.order == 12
    assert v.describe() == "finite order=12 factors=A1*I2(3)"

    v = is_finite(fa6, ())
    assert v.finite and v.order == 1
    assert v.describe() == "finite order=1 factors=1"


def test_is_finite_whole_systems(simex, square2, fa6):
    assert not is_finite(simex, simex.generators).finite
    assert not is_finite(square2, square2.generators).finite
    assert not is_finite(fa6, fa6.generators).finite


@pytest.mark.parametrize(
    "labels,order",
    [
        ((3,), 6),
        ((4,), 8),
        ((5,), 10),
        ((6,), 12),
        ((3, 3), 24),
        ((3, 3, 3), 120),
        ((4, 3), 48),
        ((3, 4), 48),
        ((5, 3), 120),
    ],
)
def test_orders_match_matrix_oracle_small(labels, order):
    sys_ = chain(labels)
    verdict = is_finite(sys_, sys_.generators)
    assert verdict.finite and verdict.order == order
    assert MatrixOracle(sys_).order() == order


def test_d4_order_matches_matrix_oracle():
    sys_ = star((1, 1, 1))
    assert is_finite(sys_, sys_.generators).order == 192
    assert MatrixOracle(sys_).order() == 192


@pytest.mark.parametrize(
    "labels,order",
    [
        ((3, 4, 3), 1152),   # F4
        ((5, 3, 3), 14400),  # H4
    ],
)
def test_orders_match_matrix_oracle_rank4(labels, order):
    sys_ = chain(labels)
    assert is_finite(sys_, sys_.generators).order == order
    assert MatrixOracle(sys_).order() == order


def test_e6_order_matches_matrix_oracle():
    sys_ = star((1, 2, 2))
    assert is_finite(sys_, sys_.generators).order == 51840
    assert MatrixOracle(sys_).order() == 51840


def test_e7_e8_table_constants():
    # too large to enumerate here; the classification fixes these orders
    assert FiniteTypeLabel("E7", 7).order() == 2903040
    assert FiniteTypeLabel("E8", 8).order() == 696729600


def test_oracle_rejects_truncated_order():
    sys_ = dihedral(None)
    oracle = MatrixOracle(sys_, max_length=4)
    oracle.enumerate()
    with pytest.raises(RuntimeError):
        oracle.order()
