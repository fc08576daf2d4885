"""Exact-rational audit of the density bound argument for star-bad palettes.

Everything here recomputes, from first principles, the quantities appearing
in the written chain of inequalities that bounds the density of an S_k-bad
palette with minimum degree at least 1/4, and reports exactly which links
hold for a concrete palette.  Steps whose justification depends on the
auxiliary-digraph rule set are evaluated under both rule sets (AuxPolicy);
the audit records outcomes and never guesses which variant was intended.

Notation used throughout (palette with m colors, e_{i,j}(a) = d_{i,j}(a)/m):
  f1(a) = e_{1,2} e_{1,3} - (e_{1,2} + e_{1,3}) / 2     (all at a)
  f2(a) = e_{2,1} e_{2,3} - (e_{2,1} + e_{2,3}) / 2
  f3(a) = e_{3,1} e_{3,2} - (e_{3,1} + e_{3,2}) / 2
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .digraphs import AuxPolicy, aux_digraph, degree_stats, has_loop, induced_subdigraph, is_tk_free
from .goodness import DEFAULT_NODE_BUDGET, is_good, make_star
from .palette import Palette, PaletteStats, admissible_pairs, compute_stats, remove_color

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def target_density(k: int) -> Fraction:
    """The proved density ceiling (k^2 - 5k + 7) / (k - 1)^2 for S_k-bad palettes."""
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    return Fraction(k * k - 5 * k + 7, (k - 1) ** 2)


def stars_bounds(k: int) -> tuple[Fraction, Fraction]:
    """(lower, upper) density bounds for S_k: the target and ((k-2)/(k-1))^2."""
    return target_density(k), Fraction((k - 2) ** 2, (k - 1) ** 2)


@dataclass(frozen=True)
class XSetCounts:
    """Counts of the three exclusion sets, their pairwise meets, and their union.

    X1 holds the triples (a,b,c) whose (b,c) is not a (2,3)-admissible pair,
    X2 those whose (a,c) is not (1,3)-admissible, X3 those whose (a,b) is not
    (1,2)-admissible.  Every admissible triple avoids all three.
    """

    x1: int
    x2: int
    x3: int
    x12: int
    x13: int
    x23: int
    union: int


def x_sets(p: Palette) -> XSetCounts:
    """Count the exclusion sets by direct enumeration of C^3.

    Each count is re-derived from co-degree closed forms; a mismatch between
    the enumeration and a closed form is an internal error (RuntimeError),
    never a report entry.
    """
    m = p.num_colors
    adm12 = admissible_pairs(p, 1, 2)
    adm13 = admissible_pairs(p, 1, 3)
    adm23 = admissible_pairs(p, 2, 3)
    counts = {"x1": 0, "x2": 0, "x3": 0, "x12": 0, "x13": 0, "x23": 0, "union": 0}
    for a in range(m):
        for b in range(m):
            for c in range(m):
                in1 = (b, c) not in adm23
                in2 = (a, c) not in adm13
                in3 = (a, b) not in adm12
                counts["x1"] += in1
                counts["x2"] += in2
                counts["x3"] += in3
                counts["x12"] += in1 and in2
                counts["x13"] += in1 and in3
                counts["x23"] += in2 and in3
                counts["union"] += in1 or in2 or in3
    stats = compute_stats(p)

    def co(i: int, j: int, a: int) -> int:
        return stats.co_degree(i, j, a)

    closed = {
        "x1": m * sum(co(2, 3, a) for a in range(m)),
        "x2": m * sum(co(1, 3, a) for a in range(m)),
        "x3": m * sum(co(1, 2, a) for a in range(m)),
        "x12": sum(co(3, 1, a) * co(3, 2, a) for a in range(m)),
        "x13": sum(co(2, 1, a) * co(2, 3, a) for a in range(m)),
        "x23": sum(co(1, 2, a) * co(1, 3, a) for a in range(m)),
    }
    mirror = {
        "x1": m * sum(co(3, 2, a) for a in range(m)),
        "x2": m * sum(co(3, 1, a) for a in range(m)),
        "x3": m * sum(co(2, 1, a) for a in range(m)),
    }
    for key, value in closed.items():
        if counts[key] != value:
            raise RuntimeError(
                f"internal error: enumerated |{key}| = {counts[key]} but closed form gives {value}")
    for key, value in mirror.items():
        if counts[key] != value:
            raise RuntimeError(
                f"internal error: enumerated |{key}| = {counts[key]} but mirrored closed form gives {value}")
    return XSetCounts(counts["x1"], counts["x2"], counts["x3"],
                      counts["x12"], counts["x13"], counts["x23"], counts["union"])


@dataclass(frozen=True)
class FValues:
    """Per-color values of f1, f2, f3 (exact rationals, indexed by color)."""

    f1: tuple[Fraction, ...]
    f2: tuple[Fraction, ...]
    f3: tuple[Fraction, ...]

    def total(self) -> Fraction:
        return sum(self.f1, Fraction(0)) + sum(self.f2, Fraction(0)) + sum(self.f3, Fraction(0))


def f_values(p: Palette) -> FValues:
    stats = compute_stats(p)

    def term(i: int, j1: int, j2: int, a: int) -> Fraction:
        x = stats.fraction(i, j1, a)
        y = stats.fraction(i, j2, a)
        return x * y - (x + y) / 2

    m = p.num_colors
    return FValues(
        f1=tuple(term(1, 2, 3, a) for a in range(m)),
        f2=tuple(term(2, 1, 3, a) for a in range(m)),
        f3=tuple(term(3, 1, 2, a) for a in range(m)),
    )


@dataclass(frozen=True)
class AuditStep:
    """One audited link, oriented as lhs <= rhs (equality steps note it)."""

    step_id: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    premise_ok: bool
    note: str = ""

    @property
    def residual(self) -> Fraction:
        return self.rhs - self.lhs


@dataclass(frozen=True)
class ColorRow:
    """Per-color audit data; case 1 means min(e_{2,1}, e_{2,3}) >= 1/2."""

    color: int
    f1: Fraction
    f2: Fraction
    f3: Fraction
    case: int
    s1: Fraction
    s3: Fraction
    e21: Fraction
    e23: Fraction
    product: Fraction


@dataclass(frozen=True)
class PolicyData:
    """Auxiliary-digraph facts recorded per arc rule set."""

    policy: AuxPolicy
    loop_vertex: Optional[int]
    d_tk_free: bool
    d1_tk_free: bool
    d2_tk_free: bool
    m_d: tuple[Fraction, ...]
    m_d1: tuple[Fraction, ...]
    m_d2: tuple[Fraction, ...]


@dataclass(frozen=True)
class AuditReport:
    k: int
    num_colors: int
    density: Fraction
    min_degree: Fraction
    is_bad: bool
    delta_premise_ok: bool
    x_counts: XSetCounts
    exclusion_bound: int
    ie_bound: int
    color_rows: tuple[ColorRow, ...]
    policies: tuple[PolicyData, ...]
    steps: tuple[AuditStep, ...]

    @property
    def premised_steps_hold(self) -> bool:
        """True when every step whose premises are satisfied holds."""
        return all(s.holds for s in self.steps if s.premise_ok)

    def step(self, step_id: str) -> AuditStep:
        for s in self.steps:
            if s.step_id == step_id:
                return s
        raise KeyError(step_id)


def _agg(step_id: str, items: list[tuple[Fraction, Fraction]], *,
         premise_ok: bool = True, note: str = "") -> AuditStep:
    """Fold per-color (lhs, rhs) pairs into one step keeping the worst pair."""
    if not items:
        return AuditStep(step_id, Fraction(0), Fraction(0), True, premise_ok,
                         note or "vacuous")
    lhs, rhs = min(items, key=lambda t: t[1] - t[0])
    holds = all(l <= r for (l, r) in items)
    return AuditStep(step_id, lhs, rhs, holds, premise_ok, note)


def audit_chain(p: Palette, k: int, *,
                node_budget: int = DEFAULT_NODE_BUDGET) -> AuditReport:
    """Audit the whole bound chain for palette p against the S_k target.

    Every step is evaluated even when its premises fail; failed premises only
    mark the step's premise_ok flag.  Policy-dependent steps carry a
    `.literal` / `.observation` suffix and are computed under both rule sets.
    """
    if k < 5:
        raise ValueError(f"the audited chain needs k >= 5, got {k}")
    n = p.num_colors
    stats = compute_stats(p)
    d = stats.density
    delta = stats.min_degree
    delta_ok = delta >= QUARTER
    is_bad = is_good(p, make_star(k), node_budget=node_budget) is None
    xs = x_sets(p)
    fv = f_values(p)
    tau = Fraction(2, k - 1)
    lemma_coeff = Fraction((k - 3) ** 2, 4 * (k - 1) ** 2)

    e = stats.fraction
    rows = []
    for a in range(n):
        e21, e23 = e(2, 1, a), e(2, 3, a)
        rows.append(ColorRow(
            color=a,
            f1=fv.f1[a], f2=fv.f2[a], f3=fv.f3[a],
            case=1 if min(e21, e23) >= HALF else 2,
            s1=(e(1, 2, a) + e(1, 3, a)) / 2,
            s3=(e(3, 1, a) + e(3, 2, a)) / 2,
            e21=e21, e23=e23,
            product=e21 * e23,
        ))
    cprime = [r for r in rows if r.case == 1]
    cdouble = [r for r in rows if r.case == 2]

    cube = n ** 3
    sum_x = xs.x1 + xs.x2 + xs.x3
    sum_pairs = xs.x12 + xs.x13 + xs.x23
    exclusion_bound = cube - xs.union
    ie_bound = cube - sum_x + sum_pairs

    steps: list[AuditStep] = []
    steps.append(AuditStep(
        "exclusion_bound", Fraction(p.num_triples), Fraction(exclusion_bound),
        p.num_triples <= exclusion_bound, True,
        "admissible triples avoid all three exclusion sets"))
    steps.append(AuditStep(
        "bonferroni", Fraction(exclusion_bound), Fraction(ie_bound),
        exclusion_bound <= ie_bound, True,
        "union lower-bounded by singles minus pairs"))
    f_bound = 1 + Fraction(1, n) * fv.total()
    steps.append(AuditStep(
        "product_identity", Fraction(ie_bound, cube), f_bound,
        Fraction(ie_bound, cube) == f_bound, True,
        "equality: inclusion-exclusion bound rewritten through f1+f2+f3"))
    steps.append(AuditStep(
        "density_vs_f_sum", d, f_bound, d <= f_bound, True))

    steps.append(_agg("f1_square",
                      [(r.f1, (r.s1 - HALF) ** 2 - QUARTER) for r in rows]))
    steps.append(_agg("f3_square",
                      [(r.f3, (r.s3 - HALF) ** 2 - QUARTER) for r in rows]))
    steps.append(_agg("mean_premise",
                      [(HALF, r.s1) for r in rows] + [(HALF, r.s3) for r in rows],
                      premise_ok=delta_ok,
                      note="slot means at least 1/2; expected from min degree >= 1/4"))
    steps.append(_agg("f2_case1",
                      [(r.f2, (r.e21 - HALF) ** 2 / 2 + (r.e23 - HALF) ** 2 / 2 - QUARTER)
                       for r in cprime]))
    case2_premise = all(r.product >= QUARTER for r in cdouble) if cdouble else True
    steps.append(_agg("f2_case2",
                      [(r.f2, -QUARTER) for r in cdouble],
                      premise_ok=case2_premise and delta_ok,
                      note="needs e21*e23 >= min degree >= 1/4"))

    target = target_density(k)
    assembled_target = QUARTER + 3 * lemma_coeff
    steps.append(AuditStep(
        "target_value_identity", assembled_target, target,
        assembled_target == target, True,
        "equality: 1/4 + 3 (k-3)^2 / (4 (k-1)^2) equals the target"))

    policy_data = []
    for policy in (AuxPolicy.LITERAL, AuxPolicy.OBSERVATION):
        suffix = policy.value
        dg = aux_digraph(p, policy)
        d1 = induced_subdigraph(dg, list(range(n)))
        d2 = induced_subdigraph(dg, list(range(n, 2 * n)))
        st_d = degree_stats(dg, tau)
        st_d1 = degree_stats(d1, tau)
        st_d2 = degree_stats(d2, tau)
        m_d = st_d.m_values
        m_d1 = st_d1.m_values
        m_d2 = st_d2.m_values
        tk_d = is_tk_free(dg, k)
        tk_d1 = is_tk_free(d1, k)
        tk_d2 = is_tk_free(d2, k)
        policy_data.append(PolicyData(
            policy=policy,
            loop_vertex=has_loop(dg),
            d_tk_free=tk_d, d1_tk_free=tk_d1, d2_tk_free=tk_d2,
            m_d=m_d, m_d1=m_d1, m_d2=m_d2,
        ))

        # Which degree identities actually back this rule set on this palette.
        # Two hold by construction per rule set; the other two are
        # palette-dependent, so they gate the steps that lean on them.
        ident_slot1 = all(
            dg.out_degree(a) == stats.degree(1, 2, a) + stats.degree(1, 3, a)
            for a in range(n))
        ident_slot3 = all(
            dg.in_degree(n + a) == stats.degree(3, 1, a) + stats.degree(3, 2, a)
            for a in range(n))
        ident_e21 = all(d2.in_degree(a) == stats.degree(2, 1, a) for a in range(n))
        ident_e23 = all(d1.out_degree(a) == stats.degree(2, 3, a) for a in range(n))

        slot1 = _agg(f"slot1_vs_m.{suffix}",
                     [(r.s1, m_d[r.color]) for r in rows],
                     premise_ok=ident_slot1,
                     note="backed by the whole-digraph out-degree identity")
        slot3 = _agg(f"slot3_vs_m.{suffix}",
                     [(r.s3, m_d[n + r.color]) for r in rows],
                     premise_ok=ident_slot3,
                     note="backed by the whole-digraph in-degree identity")
        # The squared comparison needs the slot mean on the increasing branch,
        # which the min-degree premise supplies.
        f1_dig = _agg(f"f1_digraph.{suffix}",
                      [(r.f1, (m_d[r.color] - HALF) ** 2 - QUARTER) for r in rows],
                      premise_ok=delta_ok and slot1.holds)
        f3_dig = _agg(f"f3_digraph.{suffix}",
                      [(r.f3, (m_d[n + r.color] - HALF) ** 2 - QUARTER) for r in rows],
                      premise_ok=delta_ok and slot3.holds)
        e21_step = _agg(f"e21_vs_m2.{suffix}",
                        [(r.e21, m_d2[r.color]) for r in cprime],
                        premise_ok=ident_e21,
                        note="backed by the second-block in-degree identity")
        e23_step = _agg(f"e23_vs_m1.{suffix}",
                        [(r.e23, m_d1[r.color]) for r in cprime],
                        premise_ok=ident_e23,
                        note="backed by the first-block out-degree identity")
        f2c1_dig = _agg(f"f2_case1_digraph.{suffix}",
                        [(r.f2, (m_d2[r.color] - HALF) ** 2 / 2
                          + (m_d1[r.color] - HALF) ** 2 / 2 - QUARTER)
                         for r in cprime],
                        premise_ok=e21_step.holds and e23_step.holds)
        steps.extend([slot1, slot3, f1_dig, f3_dig, e21_step, e23_step, f2c1_dig])

        sum_f2 = sum(fv.f2, Fraction(0))
        sq_d2_cprime = sum(((m_d2[r.color] - HALF) ** 2 for r in cprime), Fraction(0))
        sq_d1_cprime = sum(((m_d1[r.color] - HALF) ** 2 for r in cprime), Fraction(0))
        f2_sum_bound = sq_d2_cprime / 2 + sq_d1_cprime / 2 - Fraction(n, 4)
        steps.append(AuditStep(
            f"f2_sum.{suffix}", sum_f2, f2_sum_bound, sum_f2 <= f2_sum_bound,
            case2_premise and delta_ok and e21_step.holds and e23_step.holds))

        sq_d_all = sum(((mv - HALF) ** 2 for mv in m_d), Fraction(0))
        assembled = (QUARTER + Fraction(1, n) * sq_d_all
                     + Fraction(1, 2 * n) * (sq_d2_cprime + sq_d1_cprime))
        steps.append(AuditStep(
            f"assembled.{suffix}", d, assembled, d <= assembled,
            case2_premise and delta_ok and slot1.holds and slot3.holds
            and e21_step.holds and e23_step.holds))

        coverage_full = all(mv >= tau for mv in m_d)
        steps.append(_agg(f"coverage_full.{suffix}",
                          [(tau, mv) for mv in m_d],
                          premise_ok=delta_ok and slot1.holds and slot3.holds,
                          note="every vertex of the auxiliary digraph reaches the threshold"))
        coverage_cprime = all(m_d1[r.color] >= tau and m_d2[r.color] >= tau for r in cprime)
        steps.append(_agg(f"coverage_cprime.{suffix}",
                          [(tau, m_d1[r.color]) for r in cprime]
                          + [(tau, m_d2[r.color]) for r in cprime],
                          premise_ok=e21_step.holds and e23_step.holds))
        steps.append(AuditStep(
            f"square_sum_d.{suffix}", sq_d_all, lemma_coeff * (2 * n),
            sq_d_all <= lemma_coeff * (2 * n),
            tk_d and coverage_full))
        steps.append(AuditStep(
            f"square_sum_d1.{suffix}", sq_d1_cprime, lemma_coeff * n,
            sq_d1_cprime <= lemma_coeff * n,
            tk_d1 and coverage_cprime))
        steps.append(AuditStep(
            f"square_sum_d2.{suffix}", sq_d2_cprime, lemma_coeff * n,
            sq_d2_cprime <= lemma_coeff * n,
            tk_d2 and coverage_cprime))

    steps.append(AuditStep(
        "final_target", d, target, d <= target,
        is_bad and delta_ok,
        "density against the S_k target; premises: bad palette, min degree >= 1/4"))

    return AuditReport(
        k=k,
        num_colors=n,
        density=d,
        min_degree=delta,
        is_bad=is_bad,
        delta_premise_ok=delta_ok,
        x_counts=xs,
        exclusion_bound=exclusion_bound,
        ie_bound=ie_bound,
        color_rows=tuple(rows),
        policies=tuple(policy_data),
        steps=tuple(steps),
    )


@dataclass(frozen=True)
class GEntry:
    """One evaluation point of the square-versus-line comparison."""

    x: Fraction
    g: Fraction
    bound: Fraction
    residual: Fraction
    cleared: Fraction
    factored: Fraction
    identity_holds: bool
    in_range: bool
    nonneg_holds: bool


@dataclass(frozen=True)
class GInequalityReport:
    k: int
    entries: tuple[GEntry, ...]
    identity_ok: bool
    nonneg_ok: bool


def g_inequality_check(k: int, xs: Iterable[Fraction]) -> GInequalityReport:
    """Check g(x) = (x/(x+1) - 1/2)^2 against its linear bound at given points.

    The bound is (k-3)/(k-1)^3 * x + (k-3)(k^2-8k+11) / (4 (k-1)^3).  After
    clearing the (x+1)^2 denominator, bound - g(x) is identically
    (x-(k-2))^2 ((k-3)x - 2) / ((k-1)^3 (x+1)^2); the cleared polynomial is
    verified to equal 4 * (x-(k-2))^2 ((k-3)x - 2) at every point, and
    nonnegativity of the residual is asserted only for x >= 2/(k-3).
    x = -1 is a pole and is rejected.
    """
    if k < 4:
        raise ValueError(f"k must be at least 4, got {k}")
    q = k - 3
    cube = (k - 1) ** 3
    lo = Fraction(2, q)
    entries = []
    for x in xs:
        x = Fraction(x)
        if x == -1:
            raise ValueError("x = -1 is a pole of g and cannot be evaluated")
        g = (x / (x + 1) - HALF) ** 2
        bound = Fraction(q, cube) * x + Fraction(q * (k * k - 8 * k + 11), 4 * cube)
        cleared = (x + 1) ** 2 * (4 * q * x + q * (k * k - 8 * k + 11)) - cube * (x - 1) ** 2
        factored = (x - (k - 2)) ** 2 * (q * x - 2)
        in_range = x >= lo
        residual = bound - g
        entries.append(GEntry(
            x=x, g=g, bound=bound, residual=residual,
            cleared=cleared, factored=factored,
            identity_holds=cleared == 4 * factored,
            in_range=in_range,
            nonneg_holds=(residual >= 0) if in_range else True,
        ))
    return GInequalityReport(
        k=k,
        entries=tuple(entries),
        identity_ok=all(en.identity_holds for en in entries),
        nonneg_ok=all(en.nonneg_holds for en in entries),
    )


@dataclass(frozen=True)
class MinimalityReport:
    """Whether removing any single color strictly decreases density."""

    is_minimal: bool
    witness_color: Optional[int]


def minimality_check(p: Palette) -> MinimalityReport:
    """A palette is minimal when every color removal strictly decreases density.

    A single-color palette is minimal by convention (no removal is possible).
    The witness color, when present, is the least color whose removal does
    not strictly decrease density.
    """
    if p.num_colors == 1:
        return MinimalityReport(True, None)
    d = p.density
    for a in range(p.num_colors):
        if remove_color(p, a).density >= d:
            return MinimalityReport(False, a)
    return MinimalityReport(True, None)


@dataclass(frozen=True)
class ClaimReport:
    k: int
    delta: Fraction
    rhs: Fraction
    is_minimal: bool
    is_bad: bool
    holds: bool


def claim_check(p: Palette, k: int, *,
                node_budget: int = DEFAULT_NODE_BUDGET) -> ClaimReport:
    """Evaluate min_degree >= 3 * density - (2k-3)/(k-1) on p.

    Both sides are exact.  The inequality is only an expectation for palettes
    that are S_k-bad and minimal; the report records those flags and the raw
    verdict regardless.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    stats = compute_stats(p)
    rhs = 3 * stats.density - Fraction(2 * k - 3, k - 1)
    minimal = minimality_check(p)
    bad = is_good(p, make_star(k), node_budget=node_budget) is None
    return ClaimReport(
        k=k,
        delta=stats.min_degree,
        rhs=rhs,
        is_minimal=minimal.is_minimal,
        is_bad=bad,
        holds=stats.min_degree >= rhs,
    )


def _frac(x: Fraction) -> str:
    return str(x)


def _flag(b: bool) -> str:
    return "true" if b else "false"


def format_audit_text(report: AuditReport) -> str:
    """Human-oriented table rendering of an audit report."""
    lines = []
    lines.append(f"audit k={report.k} colors={report.num_colors} "
                 f"density={_frac(report.density)} min_degree={_frac(report.min_degree)}")
    lines.append(f"premise bad={_flag(report.is_bad)} "
                 f"min_degree_ok={_flag(report.delta_premise_ok)}")
    xs = report.x_counts
    lines.append(f"xsets x1={xs.x1} x2={xs.x2} x3={xs.x3} "
                 f"x12={xs.x12} x13={xs.x13} x23={xs.x23} union={xs.union}")
    lines.append(f"bounds exclusion={report.exclusion_bound} inclusion_exclusion={report.ie_bound}")
    for pd in report.policies:
        loop = "none" if pd.loop_vertex is None else str(pd.loop_vertex)
        lines.append(f"aux policy={pd.policy.value} loop={loop} "
                     f"tkfree_d={_flag(pd.d_tk_free)} tkfree_d1={_flag(pd.d1_tk_free)} "
                     f"tkfree_d2={_flag(pd.d2_tk_free)}")
    for r in report.color_rows:
        lines.append(f"color {r.color} case={r.case} f1={_frac(r.f1)} f2={_frac(r.f2)} "
                     f"f3={_frac(r.f3)} s1={_frac(r.s1)} s3={_frac(r.s3)} "
                     f"e21={_frac(r.e21)} e23={_frac(r.e23)}")
    for s in report.steps:
        note = f" note={s.note!r}" if s.note else ""
        lines.append(f"step {s.step_id} lhs={_frac(s.lhs)} rhs={_frac(s.rhs)} "
                     f"residual={_frac(s.residual)} holds={_flag(s.holds)} "
                     f"premise={_flag(s.premise_ok)}{note}")
    lines.append(f"result premised_steps_hold={_flag(report.premised_steps_hold)}")
    return "\n".join(lines) + "\n"


def format_audit_kv(report: AuditReport) -> str:
    """Machine-oriented rendering: one `key=value ...` line per step."""
    lines = []
    for s in report.steps:
        lines.append(f"step={s.step_id} lhs={_frac(s.lhs)} rhs={_frac(s.rhs)} "
                     f"residual={_frac(s.residual)} holds={_flag(s.holds)} "
                     f"premise_ok={_flag(s.premise_ok)}")
    return "\n".join(lines) + "\n"


def audit_to_jsonable(report: AuditReport) -> dict:
    """A plain-dict view of the report with fractions rendered as `p/q`."""
    return {
        "k": report.k,
        "colors": report.num_colors,
        "density": _frac(report.density),
        "min_degree": _frac(report.min_degree),
        "is_bad": report.is_bad,
        "min_degree_ok": report.delta_premise_ok,
        "xsets": {
            "x1": report.x_counts.x1, "x2": report.x_counts.x2, "x3": report.x_counts.x3,
            "x12": report.x_counts.x12, "x13": report.x_counts.x13, "x23": report.x_counts.x23,
            "union": report.x_counts.union,
        },
        "exclusion_bound": report.exclusion_bound,
        "inclusion_exclusion_bound": report.ie_bound,
        "policies": [
            {
                "policy": pd.policy.value,
                "loop_vertex": pd.loop_vertex,
                "tkfree_d": pd.d_tk_free,
                "tkfree_d1": pd.d1_tk_free,
                "tkfree_d2": pd.d2_tk_free,
            }
            for pd in report.policies
        ],
        "colors_detail": [
            {
                "color": r.color, "case": r.case,
                "f1": _frac(r.f1), "f2": _frac(r.f2), "f3": _frac(r.f3),
            }
            for r in report.color_rows
        ],
        "steps": [
            {
                "id": s.step_id,
                "lhs": _frac(s.lhs),
                "rhs": _frac(s.rhs),
                "residual": _frac(s.residual),
                "holds": s.holds,
                "premise_ok": s.premise_ok,
            }
            for s in report.steps
        ],
        "premised_steps_hold": report.premised_steps_hold,
    }


def audit_to_json(report: AuditReport) -> str:
    return json.dumps(audit_to_jsonable(report), sort_keys=True)
