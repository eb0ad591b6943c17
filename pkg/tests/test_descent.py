"""Sheaf and stack conditions on finite sites, and Cech descent."""

from fractions import Fraction

import pytest

from hornfill.corpus import all_small_groups, cover_of_shape, cover_shapes, refine_cover
from hornfill.descent import (
    ConstantBGPresheaf,
    ConstantPresheaf,
    Cover,
    DoubledBGPresheaf,
    DoubledGlobalPresheaf,
    FiniteSpace,
    MapPresheaf,
    OpensConstantPresheaf,
    OpensMapPresheaf,
    cech_cocycles,
    cech_descent_skeleton,
    cech_stack_report,
    check_sheaf_opens,
    check_sheaf_sets,
    check_stack_groupoids,
    cochain_action,
    constant_bg_presheaf,
    descent_groupoid,
    refinement_invariance,
    torsor_presheaf,
    truncation_agreement_cech,
    truncation_agreement_groupoids,
    truncation_agreement_sets,
)
from hornfill.errors import InputError
from hornfill.groupoid import cyclic_group, symmetric_group

GROUPS = all_small_groups()


def test_cover_validation():
    with pytest.raises(InputError):
        Cover(("x", "y"), ("u", "v"), {"x": "u", "y": "u"})  # v uncovered
    with pytest.raises(InputError):
        Cover(("x",), ("u",), {"x": "u"}, parts=(("x", "x"),))
    c = cover_of_shape((2, 1), split=True)
    assert c.parts == (("e0_0",), ("e0_1",), ("e1_0",))


def test_fibre_power_counts_and_simplicial_identities():
    cover = cover_of_shape((3, 2))
    assert len(cover.power(1)) == 5
    assert len(cover.power(2)) == 13  # 9 + 4
    assert len(cover.power(3)) == 35  # 27 + 8
    # d_i d_j = d_{j-1} d_i for i < j, evaluated pointwise on E^3
    for j in range(1, 3):
        for i in range(j):
            a1, _ = cover.coface(2, i)
            b1, _ = cover.coface(1, j - 1)
            a2, _ = cover.coface(2, j)
            b2, _ = cover.coface(1, i)
            lhs = {t: b2[a2[t]] for t in cover.power(3)}
            rhs = {t: b1[a1[t]] for t in cover.power(3)}
            assert lhs == rhs, (i, j)
    diag, cod = cover.diagonal()
    assert set(diag.values()) <= set(cod)


def test_representable_presheaf_is_a_sheaf_on_every_shape():
    values = {"v0": "v0", "v1": "v1"}
    for prof in [(1,), (3,), (2, 1), (2, 2, 1)]:
        for split in (False, True):
            rep = check_sheaf_sets(MapPresheaf(values), cover_of_shape(prof, split))
            assert rep.is_sheaf, (prof, split)
            assert rep.products_ok and rep.equalizer_ok


def test_constant_presheaf_fails_products_on_split_covers():
    ps = ConstantPresheaf(("c0", "c1"))
    rep = check_sheaf_sets(ps, cover_of_shape((2, 2), split=True))
    assert not rep.products_ok
    assert rep.equalizer_ok  # the equalizer condition alone cannot see it
    assert not rep.is_sheaf and rep.witness
    # with no splitting the parts condition is vacuous
    assert check_sheaf_sets(ps, cover_of_shape((2, 2))).is_sheaf


def test_doubled_global_presheaf_fails_the_equalizer():
    cover = cover_of_shape((2, 1))
    rep = check_sheaf_sets(DoubledGlobalPresheaf(("c0", "c1"), cover.b), cover)
    assert rep.products_ok
    # comparison collapses the forgotten coordinate and misses the
    # fiberwise-constant sections that differ across fibers
    assert not rep.equalizer_injective
    assert not rep.equalizer_surjective
    assert rep.global_count == 4 and rep.equalizer_count == 4
    assert "restrict equally" in rep.witness


def test_sheaf_counts_for_representable_presheaf():
    cover = cover_of_shape((3, 2))
    rep = check_sheaf_sets(MapPresheaf({"v0": "v0", "v1": "v1"}), cover)
    assert rep.global_count == 2 ** len(cover.b)
    assert rep.equalizer_count == rep.global_count


def test_set_truncation_agreement_across_shapes():
    for prof in [(1,), (2,), (2, 1), (3, 2)]:
        cover = cover_of_shape(prof)
        for ps in (
            MapPresheaf({"v0": "v0", "v1": "v1"}),
            ConstantPresheaf(("c0", "c1")),
            DoubledGlobalPresheaf(("c0", "c1"), cover.b),
        ):
            rep = truncation_agreement_sets(ps, cover)
            assert rep.agree, (prof, type(ps).__name__)
            assert rep.sizes[2] == rep.sizes[3]


def _two_point_space():
    pts = ("p", "q")
    return FiniteSpace(
        pts,
        {
            "empty": frozenset(),
            "P": frozenset({"p"}),
            "Q": frozenset({"q"}),
            "PQ": frozenset(pts),
        },
    )


def test_finite_space_validation_requires_intersection_closure():
    with pytest.raises(InputError):
        FiniteSpace(
            ("p", "q", "r"),
            {
                "empty": frozenset(),
                "A": frozenset({"p", "q"}),
                "B": frozenset({"q", "r"}),
                "all": frozenset({"p", "q", "r"}),
                # A & B = {q} missing
            },
        )


def test_opens_sheaf_conditions_on_the_two_point_space():
    space = _two_point_space()
    rep_values = {"P": ("a", "b"), "Q": ("c",), "PQ": None, "empty": None}
    # product presheaf: F(U) = product of stalks over points of U
    stalks = {"p": ("a", "b"), "q": ("c", "d")}

    class Product(OpensMapPresheaf):
        def __init__(self):
            pass

        def value(self, sp, name):
            out = [()]
            for pt in sorted(sp.opens[name]):
                out = [t + (s,) for t in out for s in stalks[pt]]
            return tuple(out)

        def restrict(self, sp, sup, sub, elem):
            sup_pts = sorted(sp.opens[sup])
            keep = [i for i, pt in enumerate(sup_pts) if pt in sp.opens[sub]]
            return tuple(elem[i] for i in keep)

    rep = check_sheaf_opens(Product(), space, "PQ", ("P", "Q"))
    assert rep.is_sheaf

    const = OpensConstantPresheaf(("c0", "c1"))
    # compatibility over the empty intersection forces the two sections
    # equal (F(empty) is constant too), so this family check passes
    rep2 = check_sheaf_opens(const, space, "PQ", ("P", "Q"))
    assert rep2.is_sheaf and rep2.global_count == 2 and rep2.equalizer_count == 2
    # the failure is at the empty cover of the empty open: one matching
    # family (the empty one) against two sections of F(empty)
    rep3 = check_sheaf_opens(const, space, "empty", ())
    assert not rep3.is_sheaf
    assert rep3.equalizer_count == 1 and rep3.global_count == 2


def test_cech_cocycle_count_is_group_to_the_excess():
    for prof in [(2,), (3,), (2, 2), (3, 2)]:
        cover = cover_of_shape(prof)
        for gname in ("c2", "c3", "s3"):
            g = GROUPS[gname]
            cocycles, pairs = cech_cocycles(g, cover)
            excess = len(cover.e) - len(cover.b)
            assert len(cocycles) == g.order() ** excess, (prof, gname)
            assert len(pairs) == sum(f * f for f in prof)


def test_cochain_action_is_a_group_action_on_cocycles():
    cover = cover_of_shape((3,))
    g = symmetric_group(3)
    cocycles, pairs = cech_cocycles(g, cover)
    cs = set(cocycles)
    h1 = {x: "120" for x in cover.e}
    h2 = {x: ("021" if x == "e0_0" else "201") for x in cover.e}
    for coc in cocycles:
        once = cochain_action(g, pairs, h1, coc)
        assert once in cs
        # (h2 . h1) acts as h2 after h1
        both = cochain_action(g, pairs, {x: g.mul[(h2[x], h1[x])] for x in cover.e}, coc)
        assert both == cochain_action(g, pairs, h2, once)


def test_cech_skeleton_census_for_s3_over_three_two():
    rep = cech_descent_skeleton(GROUPS["s3"], cover_of_shape((3, 2)))
    assert rep.cocycle_count == 216
    assert rep.components == 1
    assert rep.stabilizer_order == 36
    assert rep.stabilizer_fiber_constant
    assert rep.equivalent_to_bg_power
    assert rep.cardinality == Fraction(1, 36) == rep.expected_cardinality


def test_skeleton_matches_materialized_descent_groupoid():
    for prof in [(1,), (2,), (2, 1)]:
        cover = cover_of_shape(prof)
        for gname in ("c2", "c3"):
            g = GROUPS[gname]
            skel = cech_descent_skeleton(g, cover)
            desc = descent_groupoid(torsor_presheaf(g), cover)
            assert len(desc.object_data) == skel.cocycle_count, (prof, gname)
            comps = desc.groupoid.components()
            assert len(comps) == skel.components
            from hornfill.groupoid import groupoid_cardinality

            assert groupoid_cardinality(desc.groupoid) == skel.cardinality


def test_descent_depth_three_adds_no_conditions():
    cover = cover_of_shape((2, 1))
    for gname in ("c2", "c3"):
        rep = truncation_agreement_groupoids(torsor_presheaf(GROUPS[gname]), cover)
        assert rep.agree and rep.sizes[2] == rep.sizes[3]


def test_torsor_presheaf_is_a_stack():
    for prof in [(2,), (2, 1)]:
        for split in (False, True):
            cover = cover_of_shape(prof, split)
            rep = check_stack_groupoids(torsor_presheaf(GROUPS["c2"]), cover)
            assert rep.is_stack, (prof, split)
            assert rep.products_ok and rep.descent_ok


def test_constant_bg_presheaf_fails_products_only():
    cover = cover_of_shape((2, 2), split=True)
    rep = check_stack_groupoids(ConstantBGPresheaf(GROUPS["c2"]), cover)
    assert not rep.products_ok
    assert rep.descent_ok
    assert not rep.is_stack and rep.witness


def test_doubled_bg_presheaf_fails_full_faithfulness():
    cover = cover_of_shape((2, 1))
    rep = check_stack_groupoids(DoubledBGPresheaf(GROUPS["c2"], cover.b), cover)
    assert rep.essentially_surjective
    assert not rep.fully_faithful
    assert not rep.is_stack


def test_cech_stack_report_equals_skeletal_verdict():
    cover = cover_of_shape((2, 1))
    for gname in ("c2", "v4"):
        rep = cech_stack_report(GROUPS[gname], cover)
        assert rep.is_stack
        skel = cech_descent_skeleton(GROUPS[gname], cover)
        assert skel.equivalent_to_bg_power


def test_refinement_invariance_on_a_duplicated_point():
    cover = cover_of_shape((2, 1))
    refined, r = refine_cover(cover, {"b0": 1, "b1": 1})
    for gname in ("c2", "s3"):
        rep = refinement_invariance(GROUPS[gname], cover, refined, r)
        assert rep.restriction_is_equivalence, gname
        assert rep.skeletons_agree, gname


def test_refinement_map_must_live_over_the_base():
    cover = cover_of_shape((2, 1))
    refined, r = refine_cover(cover, {"b0": 1})
    bad_r = dict(r)
    bad_r["cb0_0"] = "e1_0"  # crosses fibers
    with pytest.raises(InputError):
        refinement_invariance(GROUPS["c2"], cover, refined, bad_r)


def test_cech_truncation_agreement_samples():
    for prof in [(2,), (3, 1)]:
        cover = cover_of_shape(prof)
        for gname in ("c3", "s3"):
            rep = truncation_agreement_cech(GROUPS[gname], cover)
            assert rep.agree


def test_cover_shapes_enumerates_all_profiles():
    shapes = cover_shapes()
    assert len(shapes) == 18
    assert len(set(shapes)) == 18
    assert all(sum(p) <= 5 and all(a >= b for a, b in zip(p, p[1:])) for p in shapes)
    assert len(cover_shapes(max_parts=3)) == 15
