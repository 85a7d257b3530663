"""Chord diagrams as double-occurrence words.

A diagram of order ``n`` is a word of length ``2n`` in which each label ``1..n``
occurs exactly twice, read along the oriented circle from some cut point. The
canonical representative is the lexicographically smallest relabelled word over
all rotations; reflections are not identified.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Graph

ENUMERATE_MAX_ORDER = 7


class DOWParseError(ValueError):
    pass


def _relabel(word: Sequence) -> tuple[int, ...]:
    names: dict = {}
    out = []
    for x in word:
        if x not in names:
            names[x] = len(names) + 1
        out.append(names[x])
    return tuple(out)


def _canonical_word(word: tuple[int, ...]) -> tuple[int, ...]:
    if not word:
        return word
    return min(_relabel(word[r:] + word[:r]) for r in range(len(word)))


@dataclass(frozen=True)
class ChordDiagram:
    word: tuple[int, ...]

    def __post_init__(self):
        counts: dict[int, int] = {}
        for x in self.word:
            counts[x] = counts.get(x, 0) + 1
        if any(v != 2 for v in counts.values()):
            raise DOWParseError("every chord label must occur exactly twice")
        if sorted(counts) != list(range(1, len(counts) + 1)):
            raise DOWParseError("chord labels must be 1..n")

    @classmethod
    def from_word(cls, word: Iterable) -> "ChordDiagram":
        """Relabel an arbitrary double-occurrence word by first occurrence."""
        w = list(word)
        counts: dict = {}
        for x in w:
            counts[x] = counts.get(x, 0) + 1
        if len(w) % 2:
            raise DOWParseError(f"odd number of endpoints ({len(w)})")
        bad = [x for x, k in counts.items() if k != 2]
        if bad:
            raise DOWParseError(f"labels not occurring exactly twice: {bad}")
        return cls(_relabel(w))

    @property
    def order(self) -> int:
        return len(self.word) // 2

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        return " ".join(map(str, self.word))

    def __repr__(self) -> str:
        return f"ChordDiagram('{self}')"

    def endpoints(self) -> dict[int, tuple[int, int]]:
        pos: dict[int, list[int]] = {}
        for i, x in enumerate(self.word):
            pos.setdefault(x, []).append(i)
        return {x: (p[0], p[1]) for x, p in pos.items()}

    def crosses(self, a: int, b: int) -> bool:
        ends = self.endpoints()
        return _alternate(ends[a], ends[b])

    def crossing_count(self) -> int:
        ends = list(self.endpoints().values())
        return sum(
            _alternate(ends[i], ends[j])
            for i in range(len(ends))
            for j in range(i + 1, len(ends))
        )

    def reversed(self) -> "ChordDiagram":
        return ChordDiagram.from_word(self.word[::-1])


def _alternate(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return (p[0] < q[0] < p[1]) != (p[0] < q[1] < p[1])


EMPTY = ChordDiagram(())


def parse_dow(text: str) -> ChordDiagram:
    """Parse whitespace/comma separated tokens, or a bare run of single characters."""
    text = text.strip()
    if not text:
        return EMPTY
    if re.search(r"[\s,]", text):
        tokens = [t for t in re.split(r"[\s,]+", text) if t]
    else:
        tokens = list(text)
    return ChordDiagram.from_word(tokens)


def canonicalize(d: ChordDiagram) -> ChordDiagram:
    return ChordDiagram(_canonical_word(d.word))


def is_canonical(d: ChordDiagram) -> bool:
    return _canonical_word(d.word) == d.word


def product(d1: ChordDiagram, d2: ChordDiagram) -> ChordDiagram:
    shift = d1.order
    return canonicalize(ChordDiagram(d1.word + tuple(x + shift for x in d2.word)))


def restrict(d: ChordDiagram, chords: Iterable[int]) -> ChordDiagram:
    keep = set(chords)
    for x in keep:
        if not 1 <= x <= d.order:
            raise ValueError(f"chord label {x} out of range 1..{d.order}")
    return canonicalize(ChordDiagram.from_word([x for x in d.word if x in keep]))


def delete_chord(d: ChordDiagram, chord: int) -> ChordDiagram:
    """Diagram with one chord removed; not canonicalised."""
    return ChordDiagram.from_word([x for x in d.word if x != chord])


def intersection_graph(d: ChordDiagram) -> Graph:
    """Graph on chords ``1..n`` (vertex ``i-1`` for chord ``i``); crossing chords adjacent."""
    ends = d.endpoints()
    edges = []
    for a in range(1, d.order + 1):
        for b in range(a + 1, d.order + 1):
            if _alternate(ends[a], ends[b]):
                edges.append((a - 1, b - 1))
    return Graph.from_edges(d.order, edges)


def bipartite_diagram(l: int, n: int) -> ChordDiagram:
    """Diagram with intersection graph K_{l,n}: nested left chords, nested right
    chords, every left chord crossing every right chord."""
    left = list(range(1, l + 1))
    right = list(range(l + 1, l + n + 1))
    word = left + right + left[::-1] + right[::-1]
    return canonicalize(ChordDiagram.from_word(word))


def tripartite_diagram(n: int) -> ChordDiagram:
    """Diagram with intersection graph K_{1,1,n}: two crossing chords, both crossed
    by ``n`` mutually parallel chords."""
    a, b = 1, 2
    mids = list(range(3, n + 3))
    word = [a] + mids + [b, a] + mids[::-1] + [b]
    return canonicalize(ChordDiagram.from_word(word))


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, other in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + m


def _word_from_matching(n: int, pairs) -> tuple[int, ...]:
    word = [0] * (2 * n)
    for label, (p, q) in enumerate(pairs, 1):
        word[p] = word[q] = label
    return tuple(word)


def enumerate_diagrams(n: int, max_order: int = ENUMERATE_MAX_ORDER) -> list[ChordDiagram]:
    """All canonical diagrams of order ``n``, sorted by word."""
    if n > max_order:
        raise ValueError(f"enumeration is limited to order {max_order}, got {n}")
    if n < 0:
        raise ValueError("order must be non-negative")
    seen = {_canonical_word(_word_from_matching(n, m)) for m in _matchings(list(range(2 * n)))}
    return [ChordDiagram(w) for w in sorted(seen)]


def random_diagram(n: int, rng: random.Random) -> ChordDiagram:
    points = list(range(2 * n))
    rng.shuffle(points)
    pairs = [(points[2 * i], points[2 * i + 1]) for i in range(n)]
    return canonicalize(ChordDiagram.from_word(_word_from_matching(n, pairs)))


@dataclass(frozen=True)
class FourTermQuadruple:
    """``d1 - d2 - d3 + d4``: the diagram, the swapped site, and the two diagrams
    in which the moving endpoint sits beside the other end of the fixed chord."""

    d1: ChordDiagram
    d2: ChordDiagram
    d3: ChordDiagram
    d4: ChordDiagram
    moving: int
    fixed: int
    site: int

    signs = (1, -1, -1, 1)

    @property
    def terms(self) -> tuple[ChordDiagram, ...]:
        return (self.d1, self.d2, self.d3, self.d4)


def four_term_words(d: ChordDiagram):
    """Yield ``(moving, fixed, site, (w1, w2, w3, w4))`` with original labels kept.

    A site is a pair of cyclically adjacent positions ``(p, p+1)`` holding endpoints
    of distinct chords; either chord may be the moving one. The moving endpoint
    either swaps with its neighbour (``w2``) or is re-inserted beside the other
    endpoint of the fixed chord, on the side that keeps (``w3``) or flips (``w4``)
    the crossing of the two chords.
    """
    n2 = len(d.word)
    for p in range(n2):
        x, y = d.word[p], d.word[(p + 1) % n2]
        if x == y:
            continue
        # rotate so the site sits at positions 0, 1
        w = list(d.word[p:] + d.word[:p])
        swapped = [w[1], w[0]] + w[2:]
        for a, b, m_pos in ((x, y, 0), (y, x, 1)):
            rest = w[:m_pos] + w[m_pos + 1 :]
            # rest[0] is the fixed chord's endpoint at the site
            other = rest.index(b, 1)
            after = rest[: other + 1] + [a] + rest[other + 1 :]
            before = rest[:other] + [a] + rest[other:]
            # moving endpoint ahead of the fixed one lands after its other end
            if m_pos == 0:
                tilde, tilde_prime = after, before
            else:
                tilde, tilde_prime = before, after
            yield a, b, p, (tuple(w), tuple(swapped), tuple(tilde), tuple(tilde_prime))


def four_term_quadruples(d: ChordDiagram) -> list[FourTermQuadruple]:
    """All four-term quadruples with ``d1 = d`` (two per adjacent site)."""
    if d.order < 2:
        raise ValueError("four-term quadruples need at least two chords")
    out = []
    for a, b, p, (_, w2, w3, w4) in four_term_words(d):
        out.append(
            FourTermQuadruple(
                d1=d,
                d2=canonicalize(ChordDiagram.from_word(w2)),
                d3=canonicalize(ChordDiagram.from_word(w3)),
                d4=canonicalize(ChordDiagram.from_word(w4)),
                moving=a,
                fixed=b,
                site=p,
            )
        )
    return out


def labelled_intersection_graph(word: Sequence[int], labels: Sequence[int]) -> Graph:
    """Intersection graph of ``word`` with vertex ``i`` standing for ``labels[i]``."""
    pos: dict[int, list[int]] = {}
    for i, x in enumerate(word):
        pos.setdefault(x, []).append(i)
    edges = []
    for i, a in enumerate(labels):
        for j in range(i + 1, len(labels)):
            if _alternate(tuple(pos[a]), tuple(pos[labels[j]])):
                edges.append((i, j))
    return Graph.from_edges(len(labels), edges)
