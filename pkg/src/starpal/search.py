"""Searches for extremal S_k-bad palettes.

Badness is closed under removing triples and colors, so only maximal bad
palettes can carry the best objective value.  The exhaustive engine sweeps
every palette on a fixed color count (optionally deduplicating by canonical
form, which enumerates one palette per color-relabeling class); the local
engine does randomized greedy growth with restarts.  Every reported optimum
is re-verified bad, against the brute-force oracle when it fits its cap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .audit import minimality_check
from .errors import EnumerationCapExceeded
from .goodness import (DEFAULT_ENUM_CAP, DEFAULT_NODE_BUDGET, ThreeGraph,
                       brute_force_is_good, is_good, make_star)
from .palette import Palette, Triple, canonical_form, compute_stats, iter_all_triples, remove_color

OBJECTIVES = ("density", "min_degree")
MODES = ("exhaustive", "local")

# Exhaustive sweeps above 2 colors explode (2^27 palettes at m=3); the m=3
# sweep exists behind an explicit override and requires canonical dedup.
MAX_PLAIN_EXHAUSTIVE_COLORS = 2


@dataclass(frozen=True)
class SearchConfig:
    k: int
    num_colors: int
    objective: str = "density"
    mode: str = "exhaustive"
    seed: int = 0
    iteration_budget: int = 2000
    node_budget: int = DEFAULT_NODE_BUDGET
    dedup: bool = False
    allow_large_exhaustive: bool = False

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.num_colors < 1:
            raise ValueError(f"num_colors must be positive, got {self.num_colors}")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.iteration_budget < 1 or self.node_budget < 1:
            raise ValueError("budgets must be positive")
        if self.mode == "exhaustive" and self.num_colors > MAX_PLAIN_EXHAUSTIVE_COLORS:
            if not (self.num_colors == 3 and self.dedup and self.allow_large_exhaustive):
                raise ValueError(
                    "exhaustive mode supports at most 2 colors; 3 colors need "
                    "dedup=True and allow_large_exhaustive=True")


@dataclass(frozen=True)
class SearchReport:
    config: SearchConfig
    best_palette: Palette
    best_objective: Fraction
    num_candidates_examined: int
    num_bad_found: int
    exhaustive_certificate: bool
    budget_exhausted: bool


def _objective_fn(name: str) -> Callable[[Palette], Fraction]:
    if name == "density":
        return lambda p: p.density
    return lambda p: compute_stats(p).min_degree


def _canon_key(p: Palette) -> tuple[Triple, ...]:
    return tuple(canonical_form(p).sorted_triples())


class _Best:
    """Incumbent tracker; ties break toward the lexicographically least canonical form."""

    def __init__(self, objective: Callable[[Palette], Fraction]):
        self.objective = objective
        self.palette: Optional[Palette] = None
        self.value: Optional[Fraction] = None
        self.key: Optional[tuple[Triple, ...]] = None

    def offer(self, p: Palette) -> None:
        value = self.objective(p)
        if self.value is not None and value < self.value:
            return
        key = _canon_key(p)
        if self.value is None or value > self.value or key < self.key:
            self.palette = Palette(p.num_colors, frozenset(key))
            self.value = value
            self.key = key


def search(cfg: SearchConfig) -> SearchReport:
    """Run the configured search and return a verified, reproducible report.

    The returned best palette is in canonical form.  Exhaustive runs carry a
    certificate; local runs never do.  The report's objective value is
    recomputed from the palette at reporting time.
    """
    star = make_star(cfg.k)
    objective = _objective_fn(cfg.objective)
    best = _Best(objective)
    if cfg.mode == "exhaustive":
        examined, bad_found = _search_exhaustive(cfg, star, best)
        certificate = True
        exhausted = False
    else:
        examined, bad_found, exhausted = _search_local(cfg, star, best)
        certificate = False
    assert best.palette is not None  # the empty palette is always S_k-bad
    _verify_bad(best.palette, star, cfg.node_budget)
    return SearchReport(
        config=cfg,
        best_palette=best.palette,
        best_objective=objective(best.palette),
        num_candidates_examined=examined,
        num_bad_found=bad_found,
        exhaustive_certificate=certificate,
        budget_exhausted=exhausted,
    )


def _verify_bad(p: Palette, star: ThreeGraph, node_budget: int) -> None:
    if is_good(p, star, node_budget=node_budget) is not None:
        raise RuntimeError("internal error: reported optimum is not bad")
    try:
        oracle = brute_force_is_good(p, star, cap=DEFAULT_ENUM_CAP)
    except EnumerationCapExceeded:
        return
    if oracle is not None:
        raise RuntimeError("internal error: brute-force oracle disagrees on reported optimum")


def _search_exhaustive(cfg: SearchConfig, star: ThreeGraph, best: _Best) -> tuple[int, int]:
    if cfg.dedup:
        return _sweep_canonical(cfg, star, best)
    universe = list(iter_all_triples(cfg.num_colors))
    examined = bad_found = 0
    for bits in range(1 << len(universe)):
        p = Palette(cfg.num_colors, frozenset(
            universe[i] for i in range(len(universe)) if (bits >> i) & 1))
        examined += 1
        if is_good(p, star, node_budget=cfg.node_budget) is None:
            bad_found += 1
            best.offer(p)
    return examined, bad_found


def _sweep_canonical(cfg: SearchConfig, star: ThreeGraph, best: _Best) -> tuple[int, int]:
    """Breadth-first sweep of canonical bad palettes, one per relabeling class.

    Badness is closed downward, so every bad palette with t+1 triples is a
    bad t-triple palette plus one triple; growing each canonical bad palette
    by every absent triple and canonicalizing reaches every class exactly
    once.  Good extensions are pruned (supersets of good palettes are good).
    """
    universe = list(iter_all_triples(cfg.num_colors))
    empty = Palette.empty(cfg.num_colors)
    examined, bad_found = 1, 0
    if is_good(empty, star, node_budget=cfg.node_budget) is not None:
        return examined, bad_found  # cannot happen for k >= 2; defensive
    bad_found += 1
    best.offer(empty)
    level = {_canon_key(empty)}
    seen_good: set[tuple[Triple, ...]] = set()
    while level:
        next_level: set[tuple[Triple, ...]] = set()
        for key in sorted(level):
            base = frozenset(key)
            for t in universe:
                if t in base:
                    continue
                cand = Palette(cfg.num_colors, base | {t})
                ckey = _canon_key(cand)
                if ckey in next_level or ckey in seen_good:
                    continue
                examined += 1
                if is_good(cand, star, node_budget=cfg.node_budget) is None:
                    next_level.add(ckey)
                    bad_found += 1
                    best.offer(cand)
                else:
                    seen_good.add(ckey)
        level = next_level
    return examined, bad_found


def _search_local(cfg: SearchConfig, star: ThreeGraph,
                  best: _Best) -> tuple[int, int, bool]:
    """Randomized greedy growth with restarts.

    Each restart grows the empty palette by shuffled triple insertions that
    keep it bad, reaching a maximal bad palette; the incumbent objective is
    non-decreasing within a restart since insertions only add slice counts.
    The iteration budget counts badness tests.
    """
    rng = random.Random(cfg.seed)
    universe = list(iter_all_triples(cfg.num_colors))
    examined = bad_found = 0
    exhausted = False
    best.offer(Palette.empty(cfg.num_colors))
    bad_found += 1
    while not exhausted:
        current = Palette.empty(cfg.num_colors)
        candidates = universe.copy()
        rng.shuffle(candidates)
        progress = True
        while progress:
            progress = False
            rejected = []
            for t in candidates:
                if examined >= cfg.iteration_budget:
                    exhausted = True
                    break
                trial = current.with_triple(t)
                examined += 1
                if is_good(trial, star, node_budget=cfg.node_budget) is None:
                    bad_found += 1
                    current = trial
                    progress = True
                else:
                    rejected.append(t)
            if exhausted:
                break
            candidates = rejected
        best.offer(current)
    return examined, bad_found, exhausted


def maximal_bad_extensions(p: Palette, k: int, *,
                           node_budget: int = DEFAULT_NODE_BUDGET) -> Palette:
    """Greedily extend a bad palette to a maximal bad palette.

    Triples are tried in lexicographic order; one pass suffices because a
    rejected triple stays rejected (supersets of good palettes are good).
    Raises ValueError when p is not S_k-bad.
    """
    star = make_star(k)
    if is_good(p, star, node_budget=node_budget) is not None:
        raise ValueError("palette is not bad; nothing to extend")
    current = p
    for t in iter_all_triples(p.num_colors):
        if t in current.triples:
            continue
        trial = current.with_triple(t)
        if is_good(trial, star, node_budget=node_budget) is None:
            current = trial
    return current


@dataclass(frozen=True)
class MinimalizeResult:
    palette: Palette
    is_minimal: bool
    stuck: bool


def minimalize(p: Palette, k: int, *,
               node_budget: int = DEFAULT_NODE_BUDGET) -> MinimalizeResult:
    """Repeatedly remove colors whose removal does not strictly decrease density.

    Badness is preserved under color removal (any witness for the smaller
    palette lifts to the larger one), but each removal is re-checked; if a
    removal candidate somehow broke badness it is skipped and the result is
    flagged stuck when the palette stays non-minimal.  Raises ValueError when
    p is not S_k-bad.
    """
    star = make_star(k)
    if is_good(p, star, node_budget=node_budget) is not None:
        raise ValueError("palette is not bad; minimalize expects a bad palette")
    current = p
    stuck = False
    while current.num_colors >= 2:
        stats_density = current.density
        advanced = False
        stuck = False
        for a in range(current.num_colors):
            smaller = remove_color(current, a)
            if smaller.density < stats_density:
                continue
            if is_good(smaller, star, node_budget=node_budget) is None:
                current = smaller
                advanced = True
                break
            stuck = True
        if not advanced:
            break
    minimal = minimality_check(current).is_minimal
    return MinimalizeResult(current, minimal, stuck and not minimal)


def random_maximal_bad_palette(k: int, num_colors: int, rng: random.Random, *,
                               node_budget: int = DEFAULT_NODE_BUDGET) -> Palette:
    """Grow the empty palette by shuffled insertions until maximal bad."""
    star = make_star(k)
    current = Palette.empty(num_colors)
    triples = list(iter_all_triples(num_colors))
    rng.shuffle(triples)
    for t in triples:
        trial = current.with_triple(t)
        if is_good(trial, star, node_budget=node_budget) is None:
            current = trial
    return current


def random_bad_palette(k: int, num_colors: int, rng: random.Random, *,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> Palette:
    """A random subset of a random maximal bad palette (subsets stay bad)."""
    base = random_maximal_bad_palette(k, num_colors, rng, node_budget=node_budget)
    kept = frozenset(t for t in base.sorted_triples() if rng.random() < 0.75)
    return Palette(num_colors, kept)
