"""Categories, 2-categories, nerves, and the two inverse constructions."""

import math

import pytest

from hornfill.cat import (
    FiniteCategory,
    categories_isomorphic,
    duskin_nerve,
    enumerate_functors,
    fundamental_category,
    homotopy_category,
    mapping_space,
    nerve,
    one_object_two_group,
    split_two_group,
    two_category_from_category,
    walking_invertible_two_cell,
    walking_two_cell,
)
from hornfill.corpus import (
    all_categories,
    all_two_categories,
    bg_category,
    pair_groupoid_category,
    poset_category,
)
from hornfill.errors import InputError, ValidationError
from hornfill.groupoid import cyclic_group, symmetric_group
from hornfill.sset import is_isomorphic, standard_simplex, subcomplex_of_simplex


def test_category_validation_rejects_partial_composition():
    with pytest.raises(ValidationError):
        FiniteCategory(
            ("a",),
            {"1": ("a", "a"), "z": ("a", "a")},
            {"a": "1"},
            {
                ("1", "1"): "1",
                ("1", "z"): "z",
                ("z", "1"): "z",
                # ("z", "z") missing: composition must be total
            },
        )


def test_category_validation_rejects_broken_identity():
    with pytest.raises(ValidationError):
        FiniteCategory(
            ("a",),
            {"1": ("a", "a"), "z": ("a", "a")},
            {"a": "1"},
            {
                ("1", "1"): "1",
                ("1", "z"): "1",  # 1 . z must be z
                ("z", "1"): "z",
                ("z", "z"): "1",
            },
        )


def test_category_axioms_hold_across_corpus():
    for name, c in all_categories().items():
        c.validate()
        assert len(c.objects) <= 4 and len(c.mor) <= 12, name


def test_corpus_has_enough_groupoids_and_non_groupoids():
    cats = all_categories()
    assert len(cats) >= 20
    groupoids = [n for n, c in cats.items() if c.is_groupoid()]
    assert len(groupoids) >= 3
    assert len(cats) - len(groupoids) >= 3


def test_nerve_of_one_object_group_counts_powers():
    c = bg_category(cyclic_group(2))
    x = nerve(c, dim_cap=4).sset
    for n in range(5):
        assert x.count(n) == 2**n


def test_nerve_of_linear_poset_is_standard_simplex():
    res = nerve(poset_category(2), dim_cap=3)
    assert is_isomorphic(res.sset, standard_simplex(2, dim_cap=3)) is not None


def test_nerve_faces_compose_adjacent_morphisms():
    c = bg_category(symmetric_group(3))
    res = nerve(c, dim_cap=3)
    fs = ("120", "201")  # a 2-string; inner face composes it
    ref = res.ref_of_string(fs)
    inner = res.sset.face(ref, 1)
    assert inner == res.ref_of_string((c.compose(fs[1], fs[0]),))
    assert res.sset.face(ref, 2) == res.ref_of_string((fs[0],))
    assert res.sset.face(ref, 0) == res.ref_of_string((fs[1],))


def test_enumerate_functors_counts():
    bc2 = bg_category(cyclic_group(2))
    assert len(enumerate_functors(bc2, bc2)) == 2
    # poset arrows map to order pairs
    assert len(enumerate_functors(poset_category(1), poset_category(2))) == 6


def test_categories_isomorphic_positive_and_negative():
    bc2 = bg_category(cyclic_group(2))
    relabeled = FiniteCategory(
        ("x",),
        {"m_id": ("x", "x"), "m_sw": ("x", "x")},
        {"x": "m_id"},
        {
            ("m_id", "m_id"): "m_id",
            ("m_id", "m_sw"): "m_sw",
            ("m_sw", "m_id"): "m_sw",
            ("m_sw", "m_sw"): "m_id",
        },
    )
    assert categories_isomorphic(bc2, relabeled) is not None
    assert categories_isomorphic(poset_category(1), bc2) is None
    # same object and morphism counts, different composition tables
    bc4 = bg_category(cyclic_group(4))
    from hornfill.groupoid import direct_product
    bv4 = bg_category(direct_product(cyclic_group(2), cyclic_group(2)))
    assert categories_isomorphic(bc4, bv4) is None


def test_opposite_is_an_involution():
    for name, c in all_categories().items():
        op2 = c.opposite().opposite()
        assert op2.compose_table == c.compose_table, name
        assert categories_isomorphic(c.opposite().opposite(), c) is not None


def test_two_category_validation_catches_bad_vertical_units():
    c2 = one_object_two_group(cyclic_group(2))
    c2.validate()
    w = walking_two_cell()
    w.validate()
    assert not w.all_two_invertible()
    assert walking_invertible_two_cell().all_two_invertible()


def test_duskin_counts_for_one_object_two_groups():
    for order in (2, 3):
        a = cyclic_group(order)
        x = duskin_nerve(one_object_two_group(a), dim_cap=4).sset
        for n in range(5):
            assert x.count(n) == order ** math.comb(n, 2)


def test_duskin_counts_for_split_two_group():
    x = duskin_nerve(split_two_group(cyclic_group(2), cyclic_group(2)), dim_cap=3).sset
    assert [x.count(n) for n in range(4)] == [1, 2, 8, 64]


def test_duskin_of_discrete_two_category_is_the_nerve():
    for c in (poset_category(1), bg_category(cyclic_group(2))):
        a = duskin_nerve(two_category_from_category(c), dim_cap=3).sset
        b = nerve(c, dim_cap=3).sset
        assert is_isomorphic(a, b) is not None


def test_fundamental_category_of_nerve_recovers_the_category():
    for name in ("poset2", "bs3", "pair2", "retraction"):
        c = all_categories()[name]
        res = nerve(c, dim_cap=2)
        tau = fundamental_category(res.sset)
        assert categories_isomorphic(tau.category, c) is not None, name


def test_fundamental_category_of_inner_horn_is_free_on_the_path():
    horn = subcomplex_of_simplex(2, "horn", k=1, dim_cap=2)
    tau = fundamental_category(horn)
    # free category on p -> q -> r: three identities plus pq, qr, and qr.pq
    assert len(tau.category.objects) == 3
    assert len(tau.category.mor) == 6


def test_homotopy_category_of_nerve_recovers_the_category():
    for name in ("poset2", "bs3", "pair2"):
        c = all_categories()[name]
        res = nerve(c, dim_cap=2)
        h = homotopy_category(res.sset)
        assert categories_isomorphic(h.category, c) is not None, name


def test_homotopy_category_needs_inner_fillers():
    horn = subcomplex_of_simplex(2, "horn", k=1, dim_cap=2)
    with pytest.raises(InputError):
        homotopy_category(horn)


def test_homotopy_classes_collapse_duskin_two_cells():
    c2 = split_two_group(cyclic_group(2), cyclic_group(3))
    x = duskin_nerve(c2, dim_cap=2).sset
    h = homotopy_category(x)
    # 1-cells up to invertible 2-cells: the group C2
    assert categories_isomorphic(h.category, bg_category(cyclic_group(2))) is not None


def test_mapping_space_levels_count_cylinders():
    y = nerve(bg_category(cyclic_group(2)), dim_cap=2).sset
    d1 = standard_simplex(1, dim_cap=2)
    m = mapping_space(d1, y, dim_cap=1)
    # maps Delta^1 -> N(BC2) are its edges; cylinders over Delta^1 its squares
    assert len(m.levels[0]) == y.count(1)
    assert len(m.levels[1]) == 8  # commuting squares in BC2: 2^3 labelings

    pinned = mapping_space(d1, y, dim_cap=1, pin=None)
    assert len(pinned.levels[0]) == len(m.levels[0])


def test_pair_groupoid_nerve_counts():
    c = pair_groupoid_category(3)
    x = nerve(c, dim_cap=3).sset
    for n in range(4):
        assert x.count(n) == 3 ** (n + 1)
