import random
from fractions import Fraction

import pytest

from starpal import (Palette, SearchConfig, brute_force_is_good, canonical_form,
                     is_good, iter_all_triples, make_star, maximal_bad_extensions,
                     minimalize, random_bad_palette, random_maximal_bad_palette,
                     search)

OPTIMUM = Palette(2, [(0, 1, 0), (1, 0, 1)])


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(k=3, num_colors=3, objective="density", mode="exhaustive")
    with pytest.raises(ValueError):
        SearchConfig(k=3, num_colors=3, objective="density", mode="exhaustive",
                     allow_large_exhaustive=True)
    with pytest.raises(ValueError):
        SearchConfig(k=3, num_colors=4, objective="density", mode="exhaustive",
                     dedup=True, allow_large_exhaustive=True)
    with pytest.raises(ValueError):
        SearchConfig(k=3, num_colors=2, objective="size", mode="exhaustive")
    with pytest.raises(ValueError):
        SearchConfig(k=1, num_colors=2, objective="density", mode="exhaustive")


def test_exhaustive_two_colors():
    cfg = SearchConfig(k=3, num_colors=2, objective="density", mode="exhaustive")
    report = search(cfg)
    assert report.best_objective == Fraction(1, 4)
    assert canonical_form(report.best_palette) == canonical_form(OPTIMUM)
    assert report.exhaustive_certificate
    assert report.num_candidates_examined == 256
    assert report.num_bad_found == 4
    assert not report.budget_exhausted


def test_exhaustive_min_degree_objective():
    cfg = SearchConfig(k=3, num_colors=2, objective="min_degree", mode="exhaustive")
    report = search(cfg)
    assert report.best_objective == Fraction(1, 4)


def test_exhaustive_single_color():
    cfg = SearchConfig(k=2, num_colors=1, objective="density", mode="exhaustive")
    report = search(cfg)
    assert report.best_objective == 0
    assert report.best_palette.num_triples == 0
    assert report.num_bad_found == 1
    assert report.num_candidates_examined == 2


def test_exhaustive_three_colors_deduped():
    cfg = SearchConfig(k=3, num_colors=3, objective="density", mode="exhaustive",
                       dedup=True, allow_large_exhaustive=True)
    report = search(cfg)
    assert report.best_objective == Fraction(2, 9)
    assert report.exhaustive_certificate
    assert report.num_bad_found == 41
    best = report.best_palette
    assert is_good(best, make_star(3)) is None
    assert brute_force_is_good(best, make_star(3)) is None


def test_dedup_reduces_work_without_changing_answer():
    plain = search(SearchConfig(k=3, num_colors=2, objective="density",
                                mode="exhaustive"))
    deduped = search(SearchConfig(k=3, num_colors=2, objective="density",
                                  mode="exhaustive", dedup=True))
    assert deduped.best_objective == plain.best_objective
    assert canonical_form(deduped.best_palette) == canonical_form(plain.best_palette)
    assert deduped.num_candidates_examined < plain.num_candidates_examined


def test_local_mode_is_deterministic_and_finds_optimum():
    cfg = SearchConfig(k=3, num_colors=2, objective="density", mode="local",
                       seed=7, iteration_budget=300)
    first = search(cfg)
    second = search(cfg)
    assert first.best_palette == second.best_palette
    assert first.num_candidates_examined == second.num_candidates_examined
    assert first.best_objective == Fraction(1, 4)
    assert first.budget_exhausted
    assert not first.exhaustive_certificate


def test_local_mode_seed_changes_trajectory():
    reports = [
        search(SearchConfig(k=3, num_colors=3, objective="density", mode="local",
                            seed=s, iteration_budget=120))
        for s in (0, 1)
    ]
    for report in reports:
        assert is_good(report.best_palette, make_star(3)) is None


def test_maximal_bad_extensions():
    extended = maximal_bad_extensions(Palette.empty(2), 3)
    star = make_star(3)
    assert is_good(extended, star) is None
    for t in iter_all_triples(2):
        if t not in extended.triples:
            assert is_good(extended.with_triple(t), star) is not None
    assert maximal_bad_extensions(OPTIMUM, 3) == OPTIMUM
    with pytest.raises(ValueError):
        maximal_bad_extensions(Palette.full(2), 3)


def test_minimalize_reference_palette():
    result = minimalize(OPTIMUM, 3)
    assert result.palette == OPTIMUM
    assert result.is_minimal
    assert not result.stuck


def test_minimalize_drops_unused_color():
    p = Palette(3, [(0, 1, 0), (1, 0, 1)])
    result = minimalize(p, 3)
    assert result.is_minimal
    assert result.palette.num_colors == 2
    assert result.palette.density == Fraction(1, 4)
    with pytest.raises(ValueError):
        minimalize(Palette.full(2), 3)


def test_random_bad_palettes_are_bad():
    star = make_star(3)
    for seed in range(6):
        rng = random.Random(seed)
        maximal = random_maximal_bad_palette(3, 2, rng)
        assert is_good(maximal, star) is None
        sub = random_bad_palette(3, 2, random.Random(seed))
        assert is_good(sub, star) is None


def test_random_bad_palette_deterministic_per_seed():
    a = random_bad_palette(3, 3, random.Random(11))
    b = random_bad_palette(3, 3, random.Random(11))
    assert a == b
