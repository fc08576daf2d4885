"""Digraphs derived from palettes and the degree inequalities used on them.

The auxiliary digraph of a palette has one vertex per color in each of two
blocks; arcs encode pairwise admissibility.  Two rule sets are supported (see
AuxPolicy).  The rest of the module is generic digraph machinery: transitive
tournament detection, exact extremal arc counts, and the exact-rational
degree inequalities (Caro-Wei style ratio sum, squared-excess sum), plus the
bidirected tripartite construction that shows where the squared-excess
threshold is tight.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import EnumerationCapExceeded, FormatError
from .palette import Palette, admissible_pairs

Arc = tuple[int, int]

# brute_max_arcs enumerates arc subsets: 2^(n(n-1)) must stay within 2^20.
MAX_BRUTE_ARC_POSITIONS = 20


@dataclass(frozen=True)
class Digraph:
    """An immutable digraph on vertices 0..n-1; loops allowed, no multi-arcs."""

    num_vertices: int
    arcs: frozenset[Arc] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.num_vertices, int) or self.num_vertices < 0:
            raise ValueError(f"num_vertices must be a nonnegative integer, got {self.num_vertices!r}")
        norm = []
        for a in self.arcs:
            a = tuple(a)
            if len(a) != 2 or not all(isinstance(v, int) for v in a):
                raise ValueError(f"not an arc: {a!r}")
            if not all(0 <= v < self.num_vertices for v in a):
                raise ValueError(f"arc {a} out of range for {self.num_vertices} vertices")
            norm.append(a)
        object.__setattr__(self, "arcs", frozenset(norm))

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def out_degree(self, v: int) -> int:
        return sum(1 for (u, w) in self.arcs if u == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for (u, w) in self.arcs if w == v)


def out_masks(d: Digraph, *, strip_loops: bool = False) -> list[int]:
    """Out-neighborhoods as bitmasks; optionally with the diagonal removed."""
    out = [0] * d.num_vertices
    for (u, v) in d.arcs:
        if strip_loops and u == v:
            continue
        out[u] |= 1 << v
    return out


def degrees(d: Digraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-vertex (out, in) degree vectors; a loop counts once toward each."""
    outs = [0] * d.num_vertices
    ins = [0] * d.num_vertices
    for (u, v) in d.arcs:
        outs[u] += 1
        ins[v] += 1
    return tuple(outs), tuple(ins)


def induced_subdigraph(d: Digraph, vertices: list[int]) -> Digraph:
    """Subdigraph induced on the given vertices, relabeled to 0..len-1 in sorted order."""
    vs = sorted(set(vertices))
    if any(not 0 <= v < d.num_vertices for v in vs):
        raise ValueError("vertex out of range")
    index = {v: i for i, v in enumerate(vs)}
    arcs = [(index[u], index[v]) for (u, v) in d.arcs if u in index and v in index]
    return Digraph(len(vs), frozenset(arcs))


def parse_digraph(text: str) -> Digraph:
    """Parse the `digraph <n>` header plus `<u> <v>` arc lines."""
    header: int | None = None
    arcs: list[Arc] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or fields[0] != "digraph":
                raise FormatError(f"line {lineno}: expected `digraph <n>` header, got {line!r}")
            try:
                header = int(fields[1])
            except ValueError:
                raise FormatError(f"line {lineno}: bad vertex count {fields[1]!r}") from None
            if header < 0:
                raise FormatError(f"line {lineno}: vertex count must be nonnegative")
            continue
        if len(fields) != 2:
            raise FormatError(f"line {lineno}: expected `<u> <v>`, got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < header and 0 <= v < header):
            raise FormatError(f"line {lineno}: arc ({u},{v}) out of range")
        arcs.append((u, v))
    if header is None:
        raise FormatError("missing `digraph <n>` header")
    return Digraph(header, frozenset(arcs))


def serialize_digraph(d: Digraph) -> str:
    lines = [f"digraph {d.num_vertices}"]
    lines.extend(f"{u} {v}" for (u, v) in d.sorted_arcs())
    return "\n".join(lines) + "\n"


class AuxPolicy(enum.Enum):
    """Arc rule set for the auxiliary digraph of a palette.

    LITERAL: first-block arc a->b from (2,3)-admissibility of (a, b),
    second-block arc a->b from (1,2)-admissibility; this is the rule set as
    originally written.  OBSERVATION: blocks swapped (first block from (1,2),
    second from (2,3)), the variant under which the whole-digraph degree
    identities d+(first-block a) = d_{1,2}(a) + d_{1,3}(a) and
    d-(second-block a) = d_{3,1}(a) + d_{3,2}(a) hold.  Cross arcs are the
    same in both: a(first)->b(second) and b(second)->a(first) whenever (a, b)
    is (1,3)-admissible.
    """

    LITERAL = "literal"
    OBSERVATION = "observation"


def aux_digraph(p: Palette, policy: AuxPolicy = AuxPolicy.LITERAL) -> Digraph:
    """Auxiliary digraph on 2m vertices: colors 0..m-1 twice.

    Vertex a in the first block is index a; in the second block, index m + a.
    """
    m = p.num_colors
    adm12 = admissible_pairs(p, 1, 2)
    adm23 = admissible_pairs(p, 2, 3)
    adm13 = admissible_pairs(p, 1, 3)
    if policy is AuxPolicy.LITERAL:
        block1, block2 = adm23, adm12
    elif policy is AuxPolicy.OBSERVATION:
        block1, block2 = adm12, adm23
    else:
        raise ValueError(f"unknown policy {policy!r}")
    arcs: set[Arc] = set()
    for (a, b) in block1:
        arcs.add((a, b))
    for (a, b) in block2:
        arcs.add((m + a, m + b))
    for (a, b) in adm13:
        arcs.add((a, m + b))
        arcs.add((m + b, a))
    return Digraph(2 * m, frozenset(arcs))


def has_loop(d: Digraph) -> Optional[int]:
    """The least vertex carrying a loop, or None."""
    loops = [v for (u, v) in d.arcs if u == v]
    return min(loops) if loops else None


def _find_tk(out: list[int], n: int, k: int) -> Optional[tuple[int, ...]]:
    """Ordered DFS for k distinct vertices with every forward arc present.

    out must have loops stripped.  Vertices are tried in increasing index so
    the first witness is deterministic.
    """
    if k > n:
        return None
    prefix: list[int] = []

    def rec(cand: int) -> bool:
        if len(prefix) == k:
            return True
        if cand.bit_count() < k - len(prefix):
            return False
        m = cand
        while m:
            low = m & -m
            m ^= low
            prefix.append(low.bit_length() - 1)
            if rec(cand & out[prefix[-1]] & ~low):
                return True
            prefix.pop()
        return False

    if rec((1 << n) - 1):
        return tuple(prefix)
    return None


def find_transitive_tournament(d: Digraph, k: int) -> Optional[tuple[int, ...]]:
    """An ordered k-tuple (v_1..v_k) with all arcs v_i -> v_j for i < j, or None.

    Backward arcs are permitted and loops are irrelevant: containment only
    asks for the forward arcs.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return _find_tk(out_masks(d, strip_loops=True), d.num_vertices, k)


def is_tk_free(d: Digraph, k: int) -> bool:
    return find_transitive_tournament(d, k) is None


def turan_max_arcs(n: int, k: int) -> int:
    """Exact maximum arc count of a T_k-free loopless digraph on n vertices.

    Closed form (k-2)/(k-1) * (n^2 - a^2) + a*(a-1) with a = n mod (k-1);
    this is the arc count of the balanced complete bidirected (k-1)-partite
    digraph.  Requires n >= k >= 3.
    """
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    if n < k:
        raise ValueError(f"n must be at least k, got n={n} < k={k}")
    a = n % (k - 1)
    value = Fraction(k - 2, k - 1) * (n * n - a * a) + a * (a - 1)
    assert value.denominator == 1, f"non-integral extremal count for n={n}, k={k}"
    return int(value)


def brute_max_arcs(n: int, k: int) -> int:
    """Oracle for turan_max_arcs: enumerate loopless digraphs on n vertices.

    Scans arc subsets by descending arc count and returns the first count
    admitting a T_k-free digraph, which is exactly the maximum.  Refuses
    n(n-1) > 20 arc positions (n <= 5).
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    positions = [(u, v) for u in range(n) for v in range(n) if u != v]
    if len(positions) > MAX_BRUTE_ARC_POSITIONS:
        raise EnumerationCapExceeded(
            f"{len(positions)} arc positions exceed cap {MAX_BRUTE_ARC_POSITIONS} (n={n})")
    for count in range(len(positions), -1, -1):
        for combo in itertools.combinations(range(len(positions)), count):
            out = [0] * n
            for i in combo:
                u, v = positions[i]
                out[u] |= 1 << v
            if _find_tk(out, n, k) is None:
                return count
    return 0


def iter_loopless_digraphs(n: int) -> Iterator[Digraph]:
    """All loopless digraphs on n vertices, in arc-subset bitmask order."""
    positions = [(u, v) for u in range(n) for v in range(n) if u != v]
    if len(positions) > MAX_BRUTE_ARC_POSITIONS:
        raise EnumerationCapExceeded(
            f"{len(positions)} arc positions exceed cap {MAX_BRUTE_ARC_POSITIONS} (n={n})")
    for bits in range(1 << len(positions)):
        arcs = frozenset(positions[i] for i in range(len(positions)) if (bits >> i) & 1)
        yield Digraph(n, arcs)


@dataclass(frozen=True)
class DegreeStats:
    """Exact normalized degree data of one digraph.

    m_values[v] = max(out_degree, in_degree) / num_vertices; vprime collects
    the vertices with m_values[v] >= tau.
    """

    num_vertices: int
    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    m_values: tuple[Fraction, ...]
    tau: Fraction
    vprime: frozenset[int]

    def m_ratio(self, v: int) -> Optional[Fraction]:
        """m(v) / (1 - m(v)), or None when m(v) = 1."""
        mv = self.m_values[v]
        if mv == 1:
            return None
        return mv / (1 - mv)


def degree_stats(d: Digraph, tau: Fraction) -> DegreeStats:
    outs, ins = degrees(d)
    n = d.num_vertices
    m_values = tuple(Fraction(max(o, i), n) for o, i in zip(outs, ins))
    vprime = frozenset(v for v, mv in enumerate(m_values) if mv >= tau)
    return DegreeStats(n, outs, ins, m_values, tau, vprime)


@dataclass(frozen=True)
class CaroWeiReport:
    """Sum of m(v)/(1-m(v)) against the bound (k-2) * n for a T_k-free digraph."""

    num_vertices: int
    k: int
    tk_free: bool
    finite: bool
    sum_ratio: Optional[Fraction]
    bound: Fraction
    holds: bool


def caro_wei_check(d: Digraph, k: int) -> CaroWeiReport:
    """Evaluate the degree-ratio inequality on d.

    A vertex with m(v) = 1 makes the sum infinite; the report then carries
    finite=False and holds=False by convention.  T_k-freeness of d is checked
    and recorded but the sums are evaluated either way.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    stats = degree_stats(d, Fraction(0))
    tk_free = is_tk_free(d, k)
    bound = Fraction((k - 2) * d.num_vertices)
    total = Fraction(0)
    finite = True
    for v in range(d.num_vertices):
        ratio = stats.m_ratio(v)
        if ratio is None:
            finite = False
            break
        total += ratio
    if not finite:
        return CaroWeiReport(d.num_vertices, k, tk_free, False, None, bound, False)
    return CaroWeiReport(d.num_vertices, k, tk_free, True, total, bound, total <= bound)


@dataclass(frozen=True)
class TkSquareReport:
    """Sum of (m(v) - 1/2)^2 over vertices with m(v) >= tau, against its bound."""

    num_vertices: int
    k: int
    tau: Fraction
    tk_free: bool
    vprime: frozenset[int]
    sum_sq: Fraction
    bound: Fraction
    holds: bool


def tk_square_check(d: Digraph, k: int, tau: Optional[Fraction] = None) -> TkSquareReport:
    """Evaluate the squared-excess inequality on d.

    With the default threshold tau = 2/(k-1), a T_k-free digraph satisfies
    sum over {v : m(v) >= tau} of (m(v) - 1/2)^2 <= (k-3)^2 / (4 (k-1)^2) * n.
    Requires k >= 4.
    """
    if k < 4:
        raise ValueError(f"k must be at least 4, got {k}")
    if tau is None:
        tau = Fraction(2, k - 1)
    stats = degree_stats(d, tau)
    tk_free = is_tk_free(d, k)
    half = Fraction(1, 2)
    total = sum(((stats.m_values[v] - half) ** 2 for v in sorted(stats.vprime)), Fraction(0))
    bound = Fraction((k - 3) ** 2, 4 * (k - 1) ** 2) * d.num_vertices
    return TkSquareReport(d.num_vertices, k, tau, tk_free, stats.vprime,
                          total, bound, total <= bound)


def tripartite_construction(n: int, eps: Fraction) -> Digraph:
    """Bidirected complete tripartite digraph with parts (1/3-eps)n, (1/3-eps)n, rest.

    All arcs run both ways between distinct parts; no arcs inside a part, no
    loops.  Errors when (1/3 - eps) * n is not a nonnegative integer.
    """
    eps = Fraction(eps)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    size = (Fraction(1, 3) - eps) * n
    if size.denominator != 1 or size < 0:
        raise ValueError(f"(1/3 - eps) * n = {size} is not a nonnegative integer")
    s = int(size)
    if 2 * s > n:
        raise ValueError(f"parts of size {s} do not fit into {n} vertices")
    part = [0] * n
    for v in range(s, 2 * s):
        part[v] = 1
    for v in range(2 * s, n):
        part[v] = 2
    arcs = [(u, v) for u in range(n) for v in range(n)
            if u != v and part[u] != part[v]]
    return Digraph(n, frozenset(arcs))


@dataclass(frozen=True)
class TripartiteReport:
    """Exact squared-excess data of the tripartite construction.

    The sum over all vertices (threshold tau = 2/3 - 2 eps picks up every
    vertex) is exactly 2 (1/3-eps) (1/6+eps)^2 n + (1/3+2 eps) (1/6-2 eps)^2 n,
    which simplifies to (1/36 + 6 eps^3) n.  That exceeds the squared-excess
    bound for k = 4, (1/36) n, for every eps > 0 (the threshold 2/(k-1) is
    tight), but never reaches n/16: exceeds_sixteenth stays False.
    """

    n: int
    eps: Fraction
    part_sizes: tuple[int, int, int]
    t4_free: bool
    t3_witness: Optional[tuple[int, ...]]
    tau: Fraction
    sum_sq: Fraction
    closed_form: Fraction
    equals_closed_form: bool
    k4_bound: Fraction
    exceeds_k4_bound: bool
    sixteenth: Fraction
    exceeds_sixteenth: bool


def tripartite_report(n: int, eps: Fraction) -> TripartiteReport:
    """Build the construction and audit its squared-excess sum exactly."""
    eps = Fraction(eps)
    d = tripartite_construction(n, eps)
    s = int((Fraction(1, 3) - eps) * n)
    tau = Fraction(2, 3) - 2 * eps
    report = tk_square_check(d, 4, tau)
    closed = (2 * (Fraction(1, 3) - eps) * (Fraction(1, 6) + eps) ** 2 * n
              + (Fraction(1, 3) + 2 * eps) * (Fraction(1, 6) - 2 * eps) ** 2 * n)
    k4_bound = Fraction(1, 36) * n
    sixteenth = Fraction(n, 16)
    return TripartiteReport(
        n=n,
        eps=eps,
        part_sizes=(s, s, n - 2 * s),
        t4_free=is_tk_free(d, 4),
        t3_witness=find_transitive_tournament(d, 3),
        tau=tau,
        sum_sq=report.sum_sq,
        closed_form=closed,
        equals_closed_form=report.sum_sq == closed,
        k4_bound=k4_bound,
        exceeds_k4_bound=report.sum_sq > k4_bound,
        sixteenth=sixteenth,
        exceeds_sixteenth=report.sum_sq > sixteenth,
    )


@dataclass(frozen=True)
class IdentityCheck:
    """One claimed degree identity, evaluated per color."""

    name: str
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class DegreeIdentityReport:
    """All four claimed identities under both arc rule sets; purely descriptive."""

    num_colors: int
    checks: tuple[tuple[AuxPolicy, tuple[IdentityCheck, ...]], ...]

    def for_policy(self, policy: AuxPolicy) -> tuple[IdentityCheck, ...]:
        for pol, checks in self.checks:
            if pol is policy:
                return checks
        raise KeyError(policy)


def degree_identity_audit(p: Palette) -> DegreeIdentityReport:
    """Evaluate the four stated degree identities under both policies.

    Identities, per color a (first-block vertex a, second-block vertex m+a):
      block1_out:  out-degree of a inside the first block   = d_{2,3}(a)
      block2_in:   in-degree of m+a inside the second block = d_{2,1}(a)
      full_out:    out-degree of a in the whole digraph     = d_{1,2}(a) + d_{1,3}(a)
      full_in:     in-degree of m+a in the whole digraph    = d_{3,1}(a) + d_{3,2}(a)
    No single policy satisfies all four for every palette; the report records
    what actually holds and draws no conclusion.
    """
    from .palette import compute_stats

    m = p.num_colors
    stats = compute_stats(p)
    results = []
    for policy in (AuxPolicy.LITERAL, AuxPolicy.OBSERVATION):
        d = aux_digraph(p, policy)
        d1 = induced_subdigraph(d, list(range(m)))
        d2 = induced_subdigraph(d, list(range(m, 2 * m)))
        checks = (
            IdentityCheck(
                "block1_out_vs_d23",
                tuple(d1.out_degree(a) for a in range(m)),
                tuple(stats.degree(2, 3, a) for a in range(m))),
            IdentityCheck(
                "block2_in_vs_d21",
                tuple(d2.in_degree(a) for a in range(m)),
                tuple(stats.degree(2, 1, a) for a in range(m))),
            IdentityCheck(
                "full_out_vs_d12_d13",
                tuple(d.out_degree(a) for a in range(m)),
                tuple(stats.degree(1, 2, a) + stats.degree(1, 3, a) for a in range(m))),
            IdentityCheck(
                "full_in_vs_d31_d32",
                tuple(d.in_degree(m + a) for a in range(m)),
                tuple(stats.degree(3, 1, a) + stats.degree(3, 2, a) for a in range(m))),
        )
        results.append((policy, checks))
    return DegreeIdentityReport(m, tuple(results))
