"""Palettes: a finite set of colors together with a set of ordered color triples.

A palette P = (C, A) has colors C = {0, ..., m-1} and A, a subset of C^3 of
admissible ordered triples.  Density and degree statistics are kept as exact
rationals throughout; nothing in this module ever rounds.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import FormatError

Triple = tuple[int, int, int]

# All ordered pairs (i, j) of distinct coordinate positions, 1-based.
POSITION_PAIRS: tuple[tuple[int, int], ...] = (
    (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2),
)

# canonical_form does a factorial sweep over color relabelings; 8! = 40320
# permutations is the largest we are willing to brute-force.
MAX_CANONICAL_COLORS = 8


@dataclass(frozen=True)
class Palette:
    """An immutable palette (number of colors, set of ordered triples)."""

    num_colors: int
    triples: frozenset[Triple] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.num_colors, int) or self.num_colors < 1:
            raise ValueError(f"num_colors must be a positive integer, got {self.num_colors!r}")
        norm = []
        for t in self.triples:
            t = tuple(t)
            if len(t) != 3 or not all(isinstance(c, int) for c in t):
                raise ValueError(f"not an ordered triple of ints: {t!r}")
            if not all(0 <= c < self.num_colors for c in t):
                raise ValueError(f"triple {t} out of range for {self.num_colors} colors")
            norm.append(t)
        object.__setattr__(self, "triples", frozenset(norm))

    @classmethod
    def empty(cls, num_colors: int) -> "Palette":
        return cls(num_colors, frozenset())

    @classmethod
    def full(cls, num_colors: int) -> "Palette":
        return cls(num_colors, frozenset(iter_all_triples(num_colors)))

    @property
    def num_triples(self) -> int:
        return len(self.triples)

    @property
    def density(self) -> Fraction:
        """|A| / m^3 as an exact rational."""
        return Fraction(len(self.triples), self.num_colors ** 3)

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)

    def with_triple(self, t: Triple) -> "Palette":
        return Palette(self.num_colors, self.triples | {tuple(t)})

    def without_triple(self, t: Triple) -> "Palette":
        return Palette(self.num_colors, self.triples - {tuple(t)})


def iter_all_triples(num_colors: int) -> Iterator[Triple]:
    """All ordered triples over the color set, in lexicographic order."""
    return itertools.product(range(num_colors), repeat=3)


@dataclass(frozen=True)
class PaletteStats:
    """Exact counting statistics of one palette.

    slice_counts[a][i-1] is the number of triples whose i-th coordinate is a.
    adm_degree is aligned with POSITION_PAIRS: for pair index p = (i, j),
    adm_degree[p][a] counts colors b such that some triple has coordinate i
    equal to a and coordinate j equal to b.
    """

    num_colors: int
    num_triples: int
    density: Fraction
    min_degree: Fraction
    slice_counts: tuple[tuple[int, int, int], ...]
    adm_degree: tuple[tuple[int, ...], ...]

    def degree(self, i: int, j: int, a: int) -> int:
        """d_{i,j}(a): number of (i,j)-admissible partners of color a."""
        return self.adm_degree[POSITION_PAIRS.index((i, j))][a]

    def fraction(self, i: int, j: int, a: int) -> Fraction:
        """e_{i,j}(a) = d_{i,j}(a) / m."""
        return Fraction(self.degree(i, j, a), self.num_colors)

    def co_degree(self, i: int, j: int, a: int) -> int:
        """d'_{i,j}(a) = m - d_{i,j}(a)."""
        return self.num_colors - self.degree(i, j, a)


def admissible_pairs(p: Palette, i: int, j: int) -> frozenset[tuple[int, int]]:
    """All (a, b) such that some triple has coordinate i = a and coordinate j = b."""
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"positions must be distinct members of {{1,2,3}}, got ({i},{j})")
    return frozenset((t[i - 1], t[j - 1]) for t in p.triples)


def compute_stats(p: Palette) -> PaletteStats:
    """Exact density, minimum slice degree, and admissibility degrees of p."""
    m = p.num_colors
    slices = [[0, 0, 0] for _ in range(m)]
    pair_sets: dict[tuple[int, int], set[tuple[int, int]]] = {pr: set() for pr in POSITION_PAIRS}
    for t in p.triples:
        for i in range(3):
            slices[t[i]][i] += 1
        for (i, j) in POSITION_PAIRS:
            pair_sets[(i, j)].add((t[i - 1], t[j - 1]))
    adm = []
    for (i, j) in POSITION_PAIRS:
        row = [0] * m
        for (a, _b) in pair_sets[(i, j)]:
            row[a] += 1
        adm.append(tuple(row))
    min_slice = min(slices[a][i] for a in range(m) for i in range(3))
    return PaletteStats(
        num_colors=m,
        num_triples=len(p.triples),
        density=Fraction(len(p.triples), m ** 3),
        min_degree=Fraction(min_slice, m * m),
        slice_counts=tuple(tuple(row) for row in slices),
        adm_degree=tuple(adm),
    )


def remove_color(p: Palette, a: int) -> Palette:
    """Drop color a, discard triples mentioning it, relabel colors above a down."""
    if not 0 <= a < p.num_colors:
        raise ValueError(f"color {a} out of range")
    if p.num_colors < 2:
        raise ValueError("cannot remove the only color")
    kept = []
    for t in p.triples:
        if a in t:
            continue
        kept.append(tuple(c - 1 if c > a else c for c in t))
    return Palette(p.num_colors - 1, frozenset(kept))


def permute_colors(p: Palette, perm: Sequence[int]) -> Palette:
    """Relabel colors via perm (perm[old] = new); perm must be a bijection."""
    if sorted(perm) != list(range(p.num_colors)):
        raise ValueError(f"not a permutation of 0..{p.num_colors - 1}: {perm!r}")
    return Palette(p.num_colors, frozenset(
        (perm[t[0]], perm[t[1]], perm[t[2]]) for t in p.triples))


def canonical_form(p: Palette) -> Palette:
    """Lexicographically least palette over all color relabelings.

    Brute force over all m! permutations; refuses palettes with more than
    MAX_CANONICAL_COLORS colors.  Two palettes are equivalent under color
    permutation iff their canonical forms are equal.
    """
    m = p.num_colors
    if m > MAX_CANONICAL_COLORS:
        raise ValueError(f"canonical_form supports at most {MAX_CANONICAL_COLORS} colors, got {m}")
    best: list[Triple] | None = None
    for perm in itertools.permutations(range(m)):
        mapped = sorted((perm[a], perm[b], perm[c]) for (a, b, c) in p.triples)
        if best is None or mapped < best:
            best = mapped
    return Palette(m, frozenset(best or []))


def parse_palette(text: str) -> Palette:
    """Parse the palette text format.

    Format: a header line `palette <m>`, then one `<c1> <c2> <c3>` line per
    triple.  Blank lines are ignored and `#` starts a comment that runs to the
    end of the line.  A duplicate triple is a warning and is collapsed; an
    out-of-range color is an error.
    """
    header: int | None = None
    triples: list[Triple] = []
    seen: set[Triple] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2 or fields[0] != "palette":
                raise FormatError(f"line {lineno}: expected `palette <m>` header, got {line!r}")
            try:
                header = int(fields[1])
            except ValueError:
                raise FormatError(f"line {lineno}: bad color count {fields[1]!r}") from None
            if header < 1:
                raise FormatError(f"line {lineno}: color count must be positive")
            continue
        if len(fields) != 3:
            raise FormatError(f"line {lineno}: expected three colors, got {line!r}")
        try:
            t = tuple(int(f) for f in fields)
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer color in {line!r}") from None
        if not all(0 <= c < header for c in t):
            raise FormatError(f"line {lineno}: color out of range in {t}")
        if t in seen:
            warnings.warn(f"line {lineno}: duplicate triple {t} collapsed", stacklevel=2)
            continue
        seen.add(t)
        triples.append(t)  # type: ignore[arg-type]
    if header is None:
        raise FormatError("missing `palette <m>` header")
    return Palette(header, frozenset(triples))


def serialize_palette(p: Palette) -> str:
    """Render p in the palette text format, triples sorted lexicographically."""
    lines = [f"palette {p.num_colors}"]
    lines.extend(f"{a} {b} {c}" for (a, b, c) in p.sorted_triples())
    return "\n".join(lines) + "\n"
