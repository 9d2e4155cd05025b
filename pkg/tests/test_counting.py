import pytest

from treesym import (
    BigCount,
    CountTable,
    Tree,
    binomial,
    brute_count_classes,
    count_distinguishing,
    count_proper_distinguishing,
    to_rooted,
)
from treesym.errors import SaturatedCountError
from treesym.families import (
    all_trees_up_to,
    nonisomorphic_rooted_trees,
    nonisomorphic_trees,
    star,
)

from conftest import tree_from


def leaf_rt():
    return to_rooted(Tree(["a"], []))


# -- BigCount ----------------------------------------------------------------

def test_bigcount_validation():
    with pytest.raises(ValueError):
        BigCount(-1)
    with pytest.raises(ValueError):
        BigCount(3, saturated=True)
    with pytest.raises(ValueError):
        BigCount(3, saturated=True, cap=5)
    with pytest.raises(ValueError):
        BigCount(7, saturated=False, cap=5)


def test_bigcount_clamp():
    assert BigCount.clamp(3, 10) == BigCount(3, False, 10)
    assert BigCount.clamp(10, 10) == BigCount(10, True, 10)
    assert BigCount.clamp(123) == BigCount(123)


# -- binomial ------------------------------------------------------------------

def test_binomial_plain():
    assert binomial(5, 2).value == 10
    assert binomial(3, 5).value == 0
    assert binomial(0, 0).value == 1
    for x in (0, 1, 7, 1000):
        assert binomial(x, 0).value == 1


def test_binomial_saturation():
    sat = BigCount(10, True, 10)
    out = binomial(sat, 3)
    assert out.saturated and out.value == 10
    assert binomial(sat, 0) == BigCount(1, False, 10)
    with pytest.raises(SaturatedCountError):
        binomial(sat, 10)


def test_binomial_capped_exact():
    a = BigCount(6, False, 100)
    assert binomial(a, 2) == BigCount(15, False, 100)
    assert binomial(a, 4).value == 15


# -- plain counts ----------------------------------------------------------------

def test_leaf_count_is_palette_size():
    rt = leaf_rt()
    for k in (1, 2, 4, 9):
        assert count_distinguishing(rt, k).value == k


def test_star2_counts():
    rt = to_rooted(star(2))
    assert count_distinguishing(rt, 2).value == 2
    assert count_distinguishing(rt, 1).value == 0
    assert brute_count_classes(rt, 2).value == 2


def test_star3_count():
    rt = to_rooted(star(3))
    assert count_distinguishing(rt, 3).value == 3
    assert brute_count_classes(rt, 3).value == 3


def test_invalid_k():
    rt = leaf_rt()
    with pytest.raises(ValueError):
        count_distinguishing(rt, 0)


# -- proper counts ----------------------------------------------------------------

def test_proper_leaf_is_one():
    rt = leaf_rt()
    for k in (1, 3, 8):
        assert count_proper_distinguishing(rt, k).value == 1


def test_proper_p3(p3):
    rt = to_rooted(p3)
    assert count_proper_distinguishing(rt, 2).value == 0
    assert count_proper_distinguishing(rt, 3).value == 1
    assert brute_count_classes(rt, 3, proper=True).value == 3


def test_count_table_leaf_bases():
    rt = to_rooted(tree_from(("r", "a"), ("r", "b"), ("a", "x")))
    table = CountTable(rt)
    leaf = 2  # vertex "b"
    assert table.distinguishing(leaf, 5).value == 5
    assert table.proper(leaf, 5).value == 1


# -- invariants -------------------------------------------------------------------

def test_monotone_in_k():
    for t in all_trees_up_to(8):
        rt = to_rooted(t)
        table = CountTable(rt)
        for k in range(1, 4):
            assert (table.distinguishing_raw(rt.root, k)
                    <= table.distinguishing_raw(rt.root, k + 1))
            assert (table.proper_raw(rt.root, k)
                    <= table.proper_raw(rt.root, k + 1))


def test_matches_exhaustive_enumeration_small():
    for n in range(1, 7):
        for rt in nonisomorphic_rooted_trees(n):
            table = CountTable(rt)
            for k in (1, 2, 3):
                assert (table.distinguishing_raw(rt.root, k)
                        == brute_count_classes(rt, k).value)
                assert (k * table.proper_raw(rt.root, k)
                        == brute_count_classes(rt, k, proper=True).value)


def test_saturation_soundness():
    for t in nonisomorphic_trees(6):
        rt = to_rooted(t)
        for k in (2, 3):
            exact = count_distinguishing(rt, k).value
            for cap in (1, 2, 3, 5, 10, 50):
                got = count_distinguishing(rt, k, cap=cap)
                if got.saturated:
                    assert exact >= cap
                    assert got.value == cap
                else:
                    assert got.value == exact


def test_cap_accepts_bigcount():
    rt = to_rooted(star(4))
    capped = count_distinguishing(rt, 9, cap=BigCount(5))
    uncapped = count_distinguishing(rt, 9)
    assert capped.saturated and uncapped.value >= 5


def test_isomorphic_inputs_agree():
    a = tree_from(("a", "b"), ("b", "c"), ("b", "d"), ("a", "e"))
    b = tree_from(("p", "q"), ("p", "r"), ("q", "s"), ("q", "t"))
    # same shape entered with different labels and edge order
    for k in (1, 2, 3):
        assert (count_distinguishing(to_rooted(a), k)
                == count_distinguishing(to_rooted(b), k))


def test_sibling_classes_share_entries():
    t = tree_from(("r", "a"), ("r", "b"), ("a", "x"), ("b", "y"))
    rt = to_rooted(t)
    table = CountTable(rt)
    u, v = rt.children[rt.root]
    for k in (2, 3):
        assert table.distinguishing(u, k) == table.distinguishing(v, k)
        assert table.proper(u, k) == table.proper(v, k)
