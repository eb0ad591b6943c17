"""Simplex calculus: normal forms, standard simplices, maps, products."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hornfill.errors import CapacityError, InputError, ValidationError
from hornfill.sset import (
    SimplexRef,
    SimplicialSet,
    decreasing_words,
    enumerate_maps,
    insert_degeneracy,
    is_isomorphic,
    normalize,
    product,
    product_structure,
    standard_ref_of_vertices,
    standard_simplex,
    subcomplex_of_simplex,
    vertices_of_standard_ref,
)


# -- independent oracle: operators acting on monotone vertex tuples ----------


def _word_on_vertices(word, verts):
    """Evaluate an operator word as a composite of monotone maps.

    d_i deletes position i, s_j repeats position j; last token acts first.
    """
    out = list(verts)
    for tok in reversed(list(word)):
        kind, idx = tok[0], int(tok[1:])
        if kind == "d":
            del out[idx]
        else:
            out.insert(idx, out[idx])
    return tuple(out)


def _random_word(rng, n, length):
    """A random valid operator word on an n-simplex, last token acting first."""
    word = []
    dim = n
    for _ in range(length):
        if dim >= 1 and rng.random() < 0.5:
            i = rng.randrange(dim + 1)
            word.append(f"d{i}")
            dim -= 1
        else:
            j = rng.randrange(dim + 1)
            word.append(f"s{j}")
            dim += 1
    word.reverse()
    return word


def test_insert_degeneracy_keeps_words_strictly_decreasing():
    assert insert_degeneracy((), 0) == (0,)
    assert insert_degeneracy((2, 0), 1) == (3, 1, 0)
    assert insert_degeneracy((1, 0), 3) == (3, 1, 0)
    for word in decreasing_words(3, 6):
        for j in range(7):
            out = insert_degeneracy(word, j)
            assert all(a > b for a, b in zip(out, out[1:]))
            assert len(out) == len(word) + 1


def test_simplex_ref_json_rejects_bad_degeneracy_words():
    # construction trusts its caller; everything read from json is checked
    assert SimplexRef.from_json({"gen": "x", "deg": [2, 0]}) == SimplexRef("x", (2, 0))
    with pytest.raises(InputError):
        SimplexRef.from_json({"gen": "x", "deg": [0, 2]})
    with pytest.raises(InputError):
        SimplexRef.from_json({"gen": "x", "deg": [1, 1]})


def test_standard_simplex_counts_match_binomials():
    for n in range(5):
        x = standard_simplex(n, dim_cap=4)
        for m in range(5):
            assert x.count(m) == math.comb(n + m + 1, m + 1)


def test_standard_simplex_dimension_guard():
    standard_simplex(6)
    with pytest.raises(CapacityError):
        standard_simplex(7)
    with pytest.raises(InputError):
        standard_simplex(3, dim_cap=2)


def test_normalize_matches_monotone_composite_oracle():
    rng = random.Random(20240811)
    for _ in range(500):
        n = rng.randrange(5)
        x = standard_simplex(n, dim_cap=5)
        top = "".join(str(v) for v in range(n + 1))
        word = _random_word(rng, n, rng.randrange(1, 9))
        ref = normalize(x, top, word)
        expected = _word_on_vertices(word, range(n + 1))
        assert vertices_of_standard_ref(x, ref) == expected
        assert standard_ref_of_vertices(expected) == ref


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 3), st.data())
def test_normalize_operator_identities(n, data):
    # s_j s_j = s_{j+1} s_j and d_j s_j = id = d_{j+1} s_j, on every simplex
    x = standard_simplex(n, dim_cap=5)
    top = "".join(str(v) for v in range(n + 1))
    word = data.draw(st.lists(st.sampled_from("ds"), min_size=0, max_size=4))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    prefix = _random_word(rng, n, len(word))
    base = normalize(x, top, prefix)
    m = len(vertices_of_standard_ref(x, base)) - 1
    j = data.draw(st.integers(0, m))
    assert x.degeneracy(x.degeneracy(base, j), j) == x.degeneracy(
        x.degeneracy(base, j), j + 1
    )
    assert x.face(x.degeneracy(base, j), j) == base
    assert x.face(x.degeneracy(base, j), j + 1) == base


def test_restrict_is_functorial_in_the_reindexing_map():
    x = standard_simplex(4, dim_cap=4)
    top = "01234"
    ref = SimplexRef(top)
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randrange(1, 5)
        alpha = tuple(sorted(rng.randrange(5) for _ in range(m + 1)))
        k = rng.randrange(1, m + 2)
        beta = tuple(sorted(rng.randrange(m + 1) for _ in range(k)))
        via = x.restrict(x.restrict(ref, alpha), beta)
        direct = x.restrict(ref, tuple(alpha[b] for b in beta))
        assert via == direct


def test_restrict_rejects_non_monotone_maps():
    x = standard_simplex(2)
    with pytest.raises(InputError):
        x.restrict(SimplexRef("012"), (1, 0))
    with pytest.raises(InputError):
        x.restrict(SimplexRef("012"), (0, 3))


def test_boundary_and_horn_generator_counts():
    bd = subcomplex_of_simplex(2, "boundary")
    assert [len(bd.generators(n)) for n in range(3)] == [3, 3, 0]
    horn = subcomplex_of_simplex(2, "horn", k=1)
    assert [len(horn.generators(n)) for n in range(3)] == [3, 2, 0]
    # horn of dimension n has all faces except the k-th
    for n in (2, 3):
        for k in range(n + 1):
            h = subcomplex_of_simplex(n, "horn", k=k)
            h.validate(deep=True)
            missing = "".join(str(v) for v in range(n + 1) if v != k)
            assert missing not in h.generators(n - 1)


def test_face_identities_hold_on_every_corpus_simplex():
    x = standard_simplex(3, dim_cap=4)
    for n in range(2, 5):
        for ref in x.simplices(n):
            for j in range(1, n + 1):
                for i in range(j):
                    assert x.face(x.face(ref, j), i) == x.face(x.face(ref, i), j - 1)


def test_enumerate_maps_counts_into_standard_targets():
    d1 = standard_simplex(1, dim_cap=2)
    d2 = standard_simplex(2, dim_cap=2)
    # maps Delta^1 -> Delta^2 are the 1-simplices of Delta^2, and dually
    assert len(enumerate_maps(d1, d2)) == d2.count(1)
    assert len(enumerate_maps(d2, d1)) == d1.count(2)
    fixed = {"0": SimplexRef("0"), "1": SimplexRef("0")}
    pinned = enumerate_maps(d1, d2, fixed=fixed)
    assert len(pinned) == 1 and pinned[0].assignment["01"] == SimplexRef("0", (0,))


def test_simplicial_map_validation_checks_faces():
    d1 = standard_simplex(1, dim_cap=2)
    d2 = standard_simplex(2, dim_cap=2)
    from hornfill.sset import SimplicialMap

    with pytest.raises(ValidationError):
        SimplicialMap(
            d1,
            d2,
            {"0": SimplexRef("0"), "1": SimplexRef("2"), "01": SimplexRef("12")},
        )


def test_product_of_intervals_has_the_square_census():
    d1 = standard_simplex(1, dim_cap=3)
    structure = product_structure(d1, d1)
    prod = structure.sset
    assert [len(prod.generators(n)) for n in range(3)] == [4, 5, 2]
    for n in range(4):
        assert prod.count(n) == d1.count(n) ** 2
    # the pairing is a bijection on generators
    for g in prod.all_generators():
        rx, ry = structure.pair_of_gen(g)
        n = prod.gen_dim[g]
        assert structure.ref_of_pair(n, rx, ry) == SimplexRef(g)


def test_product_counts_match_on_mixed_factors():
    d2 = standard_simplex(2, dim_cap=3)
    d1 = standard_simplex(1, dim_cap=3)
    prod = product(d2, d1)
    for n in range(4):
        assert prod.count(n) == d2.count(n) * d1.count(n)


def test_is_isomorphic_finds_relabelings_and_respects_orientation():
    horn = subcomplex_of_simplex(2, "horn", k=1, dim_cap=1)
    relabeled = SimplicialSet(
        1,
        {0: ["p", "q", "r"], 1: ["pq", "qr"]},
        {
            "pq": [SimplexRef("q"), SimplexRef("p")],
            "qr": [SimplexRef("r"), SimplexRef("q")],
        },
    )
    assert is_isomorphic(horn, relabeled) is not None
    # the three 2-horns are pairwise non-isomorphic: out-star, path, in-star
    horns = [subcomplex_of_simplex(2, "horn", k=k, dim_cap=1) for k in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            assert is_isomorphic(horns[i], horns[j]) is None
    assert is_isomorphic(horn, subcomplex_of_simplex(2, "boundary", dim_cap=1)) is None


def test_validate_catches_inconsistent_faces():
    with pytest.raises(ValidationError):
        SimplicialSet(
            1,
            {0: ["a"], 1: ["e"]},
            {"e": [SimplexRef("a"), SimplexRef("b")]},
        )


def test_simplex_ref_json_round_trip():
    for ref in (SimplexRef("01"), SimplexRef("2", (1, 0)), SimplexRef("013", (2,))):
        assert SimplexRef.from_json(ref.to_json()) == ref
    with pytest.raises(InputError):
        SimplexRef.from_json({"gen": "x", "degs": [0, 2]})
