import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starpal import (POSITION_PAIRS, FormatError, Palette, admissible_pairs,
                     canonical_form, compute_stats, iter_all_triples, parse_palette,
                     permute_colors, remove_color, serialize_palette)

palettes = st.integers(1, 3).flatmap(
    lambda m: st.builds(
        Palette,
        st.just(m),
        st.frozensets(st.tuples(st.integers(0, m - 1), st.integers(0, m - 1),
                                st.integers(0, m - 1))),
    ))


def test_constructor_normalizes_and_validates():
    p = Palette(2, [(0, 0, 1), (0, 0, 1)])
    assert p.num_triples == 1
    assert p.sorted_triples() == [(0, 0, 1)]
    with pytest.raises(ValueError):
        Palette(0, [])
    with pytest.raises(ValueError):
        Palette(2, [(0, 0, 2)])
    with pytest.raises(ValueError):
        Palette(2, [(0, -1, 0)])


def test_empty_and_full():
    e = Palette.empty(2)
    assert e.num_triples == 0 and e.density == 0
    f = Palette.full(2)
    assert f.num_triples == 8 and f.density == 1
    st_ = compute_stats(f)
    assert st_.min_degree == 1


def test_example_stats():
    p = Palette(2, [(0, 0, 1)])
    st_ = compute_stats(p)
    assert st_.density == Fraction(1, 8)
    assert st_.min_degree == 0
    assert st_.degree(1, 3, 0) == 1
    assert st_.degree(2, 3, 0) == 1
    assert st_.degree(1, 2, 0) == 1
    assert st_.degree(3, 1, 1) == 1
    assert st_.degree(1, 2, 1) == 0 and st_.degree(1, 3, 1) == 0
    assert st_.degree(2, 1, 1) == 0 and st_.degree(2, 3, 1) == 0
    assert st_.fraction(1, 2, 0) == Fraction(1, 2)
    assert st_.co_degree(1, 2, 0) == 1


def test_example_admissible_pairs():
    p = Palette(2, [(0, 0, 1)])
    assert admissible_pairs(p, 1, 2) == {(0, 0)}
    assert admissible_pairs(p, 1, 3) == {(0, 1)}
    assert admissible_pairs(p, 2, 3) == {(0, 1)}
    assert admissible_pairs(p, 3, 1) == {(1, 0)}
    assert admissible_pairs(p, 3, 2) == {(1, 0)}
    assert admissible_pairs(p, 2, 1) == {(0, 0)}


def test_iter_all_triples_order():
    assert list(iter_all_triples(2))[:3] == [(0, 0, 0), (0, 0, 1), (0, 1, 0)]
    assert len(list(iter_all_triples(3))) == 27


@given(palettes)
def test_min_degree_at_most_density(p):
    st_ = compute_stats(p)
    assert st_.min_degree <= st_.density


@given(palettes)
def test_slice_counts_sum_to_triple_count(p):
    st_ = compute_stats(p)
    for pos in range(3):
        assert sum(row[pos] for row in st_.slice_counts) == p.num_triples


@given(palettes)
def test_degree_counts_admissible_partners(p):
    st_ = compute_stats(p)
    for (i, j) in POSITION_PAIRS:
        pairs = admissible_pairs(p, i, j)
        for a in range(p.num_colors):
            assert st_.degree(i, j, a) == sum(1 for (x, _) in pairs if x == a)
            assert st_.co_degree(i, j, a) == p.num_colors - st_.degree(i, j, a)


def test_remove_color_relabels():
    p = Palette(3, [(0, 1, 2), (2, 2, 2), (0, 0, 1)])
    q = remove_color(p, 1)
    assert q.num_colors == 2
    assert q.sorted_triples() == [(1, 1, 1)]
    with pytest.raises(ValueError):
        remove_color(Palette.empty(1), 0)


def test_permute_colors_roundtrip():
    p = Palette(3, [(0, 1, 2), (0, 0, 1)])
    perm = [2, 0, 1]
    inv = [perm.index(a) for a in range(3)]
    assert permute_colors(permute_colors(p, perm), inv) == p
    assert permute_colors(p, [0, 1, 2]) == p


@given(palettes, st.randoms(use_true_random=False))
def test_canonical_form_is_permutation_invariant(p, rng):
    perm = list(range(p.num_colors))
    rng.shuffle(perm)
    q = permute_colors(p, perm)
    assert canonical_form(q) == canonical_form(p)


@given(palettes)
def test_canonical_form_is_idempotent(p):
    c = canonical_form(p)
    assert canonical_form(c) == c
    assert c.num_triples == p.num_triples


def test_parse_serialize_roundtrip():
    p = Palette(3, [(0, 1, 2), (2, 0, 1), (0, 0, 0)])
    assert parse_palette(serialize_palette(p)) == p


@given(palettes)
def test_parse_serialize_roundtrip_random(p):
    assert parse_palette(serialize_palette(p)) == p


def test_parse_accepts_comments_and_blanks():
    text = "# header comment\npalette 2\n\n0 0 1   # trailing\n# another\n1 1 0\n"
    p = parse_palette(text)
    assert p.sorted_triples() == [(0, 0, 1), (1, 1, 0)]


def test_parse_warns_on_duplicates():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = parse_palette("palette 2\n0 0 1\n0 0 1\n")
    assert p.num_triples == 1
    assert any("duplicate" in str(w.message) for w in caught)


@pytest.mark.parametrize("text", [
    "",
    "palete 2\n",
    "palette 0\n",
    "palette x\n",
    "palette 2 3\n",
    "palette 2\n0 0\n",
    "palette 2\n0 0 1 1\n",
    "palette 2\n0 0 2\n",
    "palette 2\n0 0 -1\n",
    "palette 2\n0 0 a\n",
])
def test_parse_rejects_malformed_input(text):
    with pytest.raises(FormatError):
        parse_palette(text)


def test_serialize_is_sorted_with_trailing_newline():
    p = Palette(2, [(1, 1, 0), (0, 0, 1)])
    assert serialize_palette(p) == "palette 2\n0 0 1\n1 1 0\n"
