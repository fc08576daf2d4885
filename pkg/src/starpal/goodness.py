"""3-uniform graphs and the palette goodness decision.

A palette P is good for a 3-graph F when some total order of V(F) and some
coloring of the vertex pairs puts every edge's ordered color triple inside A:
for an edge {u, v, w} with u before v before w, the triple
(color(uv), color(uw), color(vw)) must be admissible.

Two independent deciders live here: `is_good`, an ordering sweep with a
backtracking pair-coloring search, and `brute_force_is_good`, a cap-guarded
full enumeration used as an oracle against the first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .errors import BudgetExceeded, EnumerationCapExceeded, FormatError
from .palette import Palette

Edge = tuple[int, int, int]
Pair = tuple[int, int]

DEFAULT_NODE_BUDGET = 10 ** 8
DEFAULT_ENUM_CAP = 10 ** 7


@dataclass(frozen=True)
class ThreeGraph:
    """An immutable 3-uniform graph on vertices 0..n-1."""

    num_vertices: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.num_vertices, int) or self.num_vertices < 0:
            raise ValueError(f"num_vertices must be a nonnegative integer, got {self.num_vertices!r}")
        norm = []
        for e in self.edges:
            e = tuple(sorted(e))
            if len(e) != 3 or len(set(e)) != 3:
                raise ValueError(f"edge must have three distinct vertices: {e!r}")
            if not all(0 <= v < self.num_vertices for v in e):
                raise ValueError(f"edge {e} out of range for {self.num_vertices} vertices")
            norm.append(e)
        object.__setattr__(self, "edges", frozenset(norm))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def relevant_pairs(self) -> list[Pair]:
        """Vertex pairs that occur inside at least one edge, sorted."""
        pairs = {pr for e in self.edges for pr in itertools.combinations(e, 2)}
        return sorted(pairs)


def make_star(k: int) -> ThreeGraph:
    """The k-star S_k: apex vertex 0, leaves 1..k, edges {0, i, j} for i < j."""
    if k < 2:
        raise ValueError(f"a star needs at least 2 leaves, got k={k}")
    edges = [(0, i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    return ThreeGraph(k + 1, frozenset(edges))


def star_apex(f: ThreeGraph) -> Optional[int]:
    """The least vertex making f a star with that apex, or None if f is no star."""
    if not f.edges:
        return None
    common = set(range(f.num_vertices))
    for e in f.edges:
        common &= set(e)
        if not common:
            return None
    for apex in sorted(common):
        leaves = sorted(v for v in range(f.num_vertices) if v != apex)
        expected = {tuple(sorted((apex, x, y))) for x, y in itertools.combinations(leaves, 2)}
        if expected == set(f.edges):
            return apex
    return None


def relabel_vertices(f: ThreeGraph, perm: list[int]) -> ThreeGraph:
    """Relabel vertices via perm (perm[old] = new)."""
    if sorted(perm) != list(range(f.num_vertices)):
        raise ValueError(f"not a permutation of 0..{f.num_vertices - 1}: {perm!r}")
    return ThreeGraph(f.num_vertices, frozenset(
        tuple(sorted((perm[a], perm[b], perm[c]))) for (a, b, c) in f.edges))


def parse_threegraph(text: str) -> ThreeGraph:
    """Parse the `threegraph <n>` header plus `<u> <v> <w>` edge lines."""
    header: int | None = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or fields[0] != "threegraph":
                raise FormatError(f"line {lineno}: expected `threegraph <n>` header, got {line!r}")
            try:
                header = int(fields[1])
            except ValueError:
                raise FormatError(f"line {lineno}: bad vertex count {fields[1]!r}") from None
            if header < 0:
                raise FormatError(f"line {lineno}: vertex count must be nonnegative")
            continue
        if len(fields) != 3:
            raise FormatError(f"line {lineno}: expected three vertices, got {line!r}")
        try:
            e = tuple(int(f) for f in fields)
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        edges.append(e)  # type: ignore[arg-type]
    if header is None:
        raise FormatError("missing `threegraph <n>` header")
    try:
        return ThreeGraph(header, frozenset(edges))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_threegraph(f: ThreeGraph) -> str:
    lines = [f"threegraph {f.num_vertices}"]
    lines.extend(f"{u} {v} {w}" for (u, v, w) in f.sorted_edges())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GoodnessWitness:
    """A certifying total order (position = rank) plus a pair coloring.

    pair_coloring maps each relevant pair (u, v) with u < v to a color; pairs
    not occurring in any edge are unconstrained and carry no entry.
    """

    ordering: tuple[int, ...]
    pair_coloring: Mapping[Pair, int]

    def color_of(self, u: int, v: int) -> int:
        return self.pair_coloring[(u, v) if u < v else (v, u)]


def verify_witness(p: Palette, f: ThreeGraph, w: GoodnessWitness) -> bool:
    """Check a witness against palette and 3-graph.

    Shape violations (ordering is not a permutation of V(F), missing pair,
    color out of range) raise ValueError; the return value is reserved for
    the actual admissibility verdict.
    """
    if sorted(w.ordering) != list(range(f.num_vertices)):
        raise ValueError(f"ordering is not a permutation of 0..{f.num_vertices - 1}")
    needed = set(f.relevant_pairs())
    for pr in needed:
        if pr not in w.pair_coloring:
            raise ValueError(f"pair coloring misses pair {pr}")
    for pr, c in w.pair_coloring.items():
        if tuple(sorted(pr)) != tuple(pr):
            raise ValueError(f"pair key {pr} is not sorted")
        if not (0 <= c < p.num_colors):
            raise ValueError(f"color {c} of pair {pr} out of range")
    rank = {v: i for i, v in enumerate(w.ordering)}
    for e in f.edges:
        u, v, x = sorted(e, key=rank.__getitem__)
        t = (w.color_of(u, v), w.color_of(u, x), w.color_of(v, x))
        if t not in p.triples:
            return False
    return True


class _Budget:
    """Mutable counter of elementary constraint checks, shared across orderings."""

    __slots__ = ("spent", "limit")

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("node budget must be positive")
        self.spent = 0
        self.limit = limit

    def spend(self, amount: int) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise BudgetExceeded(self.spent, self.limit)


def _candidate_orderings(f: ThreeGraph) -> Iterator[tuple[int, ...]]:
    """Orderings sufficient to decide goodness.

    For a star, leaf swaps are automorphisms, so only the apex rank matters:
    k+1 orderings instead of (k+1)!.  Any other 3-graph falls back to the full
    permutation sweep.
    """
    n = f.num_vertices
    apex = star_apex(f)
    if apex is not None:
        leaves = [v for v in range(n) if v != apex]
        for r in range(n):
            yield tuple(leaves[:r] + [apex] + leaves[r:])
    else:
        yield from itertools.permutations(range(n))


def is_good(p: Palette, f: ThreeGraph, *,
            node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[GoodnessWitness]:
    """Decide goodness of p for f; return a verified witness or None (bad).

    Outer loop: candidate vertex orderings.  Inner loop: backtracking search
    for a pair coloring, pruning with per-pair candidate sets (an edge whose
    compatible-triple set empties kills the branch).  Exceeding node_budget
    raises BudgetExceeded rather than returning a verdict.
    """
    if not f.edges:
        w = GoodnessWitness(tuple(range(f.num_vertices)), {})
        return w
    if not p.triples:
        return None
    budget = _Budget(node_budget)
    triples = p.sorted_triples()
    for ordering in _candidate_orderings(f):
        coloring = _solve_ordering(p, f, ordering, triples, budget)
        if coloring is not None:
            w = GoodnessWitness(ordering, coloring)
            assert verify_witness(p, f, w)
            return w
    return None


def _solve_ordering(p: Palette, f: ThreeGraph, ordering: tuple[int, ...],
                    triples: list[tuple[int, int, int]],
                    budget: _Budget) -> Optional[dict[Pair, int]]:
    """Find a pair coloring valid under one fixed ordering, or None."""
    m = p.num_colors
    rank = {v: i for i, v in enumerate(ordering)}
    pairs = f.relevant_pairs()
    pidx = {pr: i for i, pr in enumerate(pairs)}
    cons: list[tuple[int, int, int]] = []
    for e in f.sorted_edges():
        u, v, x = sorted(e, key=rank.__getitem__)
        cons.append((pidx[_key(u, v)], pidx[_key(u, x)], pidx[_key(v, x)]))
    var_cons: list[list[int]] = [[] for _ in pairs]
    for ci, c in enumerate(cons):
        for var in c:
            var_cons[var].append(ci)

    full = (1 << m) - 1

    def propagate(doms: list[int], queue: list[int]) -> bool:
        pending = set(queue)
        order = list(queue)
        while order:
            ci = order.pop()
            pending.discard(ci)
            v1, v2, v3 = cons[ci]
            d1, d2, d3 = doms[v1], doms[v2], doms[v3]
            s1 = s2 = s3 = 0
            budget.spend(len(triples))
            for (c1, c2, c3) in triples:
                if (d1 >> c1) & 1 and (d2 >> c2) & 1 and (d3 >> c3) & 1:
                    s1 |= 1 << c1
                    s2 |= 1 << c2
                    s3 |= 1 << c3
            if not (s1 and s2 and s3):
                return False
            for var, new in ((v1, s1), (v2, s2), (v3, s3)):
                if new != doms[var]:
                    doms[var] = new
                    for cj in var_cons[var]:
                        if cj != ci and cj not in pending:
                            pending.add(cj)
                            order.append(cj)
        return True

    def backtrack(doms: list[int]) -> Optional[list[int]]:
        best_var = -1
        best_size = m + 1
        for i, d in enumerate(doms):
            size = d.bit_count()
            if 1 < size < best_size:
                best_var, best_size = i, size
        if best_var < 0:
            return doms
        d = doms[best_var]
        while d:
            low = d & -d
            d ^= low
            trial = doms.copy()
            trial[best_var] = low
            if propagate(trial, var_cons[best_var]):
                result = backtrack(trial)
                if result is not None:
                    return result
        return None

    doms = [full] * len(pairs)
    if not propagate(doms, list(range(len(cons)))):
        return None
    solution = backtrack(doms)
    if solution is None:
        return None
    return {pairs[i]: d.bit_length() - 1 for i, d in enumerate(solution)}


def _key(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def brute_force_is_good(p: Palette, f: ThreeGraph, *,
                        cap: int = DEFAULT_ENUM_CAP) -> Optional[GoodnessWitness]:
    """Oracle goodness decision by full enumeration of orderings and colorings.

    Refuses (EnumerationCapExceeded) when m^q * n! exceeds cap, with q the
    number of relevant pairs.  Shares no search machinery with is_good.
    """
    n, m = f.num_vertices, p.num_colors
    pairs = f.relevant_pairs()
    q = len(pairs)
    cost = (m ** q) * math.factorial(n)
    if cost > cap:
        raise EnumerationCapExceeded(
            f"enumeration size {cost} exceeds cap {cap} (m={m}, pairs={q}, n={n})")
    if not f.edges:
        return GoodnessWitness(tuple(range(n)), {})
    pidx = {pr: i for i, pr in enumerate(pairs)}
    tset = p.triples
    for ordering in itertools.permutations(range(n)):
        rank = {v: i for i, v in enumerate(ordering)}
        cons = []
        for e in f.sorted_edges():
            u, v, x = sorted(e, key=rank.__getitem__)
            cons.append((pidx[_key(u, v)], pidx[_key(u, x)], pidx[_key(v, x)]))
        for coloring in itertools.product(range(m), repeat=q):
            if all((coloring[a], coloring[b], coloring[c]) in tset for (a, b, c) in cons):
                w = GoodnessWitness(ordering, dict(zip(pairs, coloring)))
                assert verify_witness(p, f, w)
                return w
    return None
