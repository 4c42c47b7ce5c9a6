"""Numerical semigroups stored by their gap set."""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce

from .errors import EmptyGenerators, InfiniteGaps, NotASemigroup

UP, RIGHT = "U", "R"


@dataclass(frozen=True)
class NumericalSemigroup:
    """A cofinite submonoid of N, kept as (gaps, conductor).

    Elements at or above the conductor are never materialised.
    """

    gaps: tuple
    conductor: int = field(default=0)

    @cached_property
    def genus(self):
        return len(self.gaps)

    @cached_property
    def _gap_set(self):
        return frozenset(self.gaps)

    @cached_property
    def multiplicity(self):
        return self.nth_element(1)

    @cached_property
    def minimal_generators(self):
        m = self.multiplicity
        top = self.conductor + m
        elems = [x for x in range(1, top + 1) if x not in self._gap_set]
        present = set(elems)
        return tuple(x for x in elems if not _is_sum(x, present))

    def __contains__(self, x):
        return self.contains(x)

    def contains(self, x):
        return x >= 0 and x not in self._gap_set

    def elements_below(self, bound):
        return [x for x in range(bound) if x not in self._gap_set]

    def nth_element(self, i):
        """The i-th smallest positive element (m_i)."""
        if i < 1:
            raise ValueError("index starts at 1")
        below = [x for x in range(1, self.conductor) if x not in self._gap_set]
        if i <= len(below):
            return below[i - 1]
        return max(self.conductor, 1) + (i - len(below) - 1)

    def weight(self):
        g = self.genus
        return sum(self.gaps) - g * (g + 1) // 2

    def dyck(self):
        return DyckDiagram.of(self)

    def to_dict(self):
        return {
            "gaps": list(self.gaps),
            "gens": list(self.minimal_generators),
            "genus": self.genus,
            "conductor": self.conductor,
            "weight": self.weight(),
        }

    def label(self):
        return "<" + ",".join(map(str, self.minimal_generators)) + ">"

    def __repr__(self):
        return f"NumericalSemigroup{self.label()}"

    def __lt__(self, other):
        return (self.genus, self.gaps) < (other.genus, other.gaps)


def _is_sum(x, present):
    return any(y in present and (x - y) in present for y in range(1, x // 2 + 1))


def from_generators(gens):
    """Additive closure of ``gens``."""
    gens = sorted({int(a) for a in gens})
    if not gens:
        raise EmptyGenerators("at least one generator is required")
    if gens[0] <= 0:
        raise ValueError("generators must be positive")
    if reduce(math.gcd, gens) != 1:
        raise InfiniteGaps(f"gcd{tuple(gens)} != 1")
    a = gens[0]
    # least element in each residue class mod a (Apery set), by Dijkstra
    best = [math.inf] * a
    best[0] = 0
    heap = [(0, 0)]
    while heap:
        w, res = heapq.heappop(heap)
        if w > best[res]:
            continue
        for b in gens[1:]:
            nw, nr = w + b, (res + b) % a
            if nw < best[nr]:
                best[nr] = nw
                heapq.heappush(heap, (nw, nr))
    gaps = sorted(x for res in range(a) for x in range(res, best[res], a))
    return _build(gaps)


def from_gaps(gaps):
    """The semigroup whose gap set is exactly ``gaps``; validated."""
    gaps = sorted({int(x) for x in gaps})
    if gaps and gaps[0] <= 0:
        raise NotASemigroup((0, gaps[0]), f"{gaps[0]} cannot be a gap")
    gap_set = set(gaps)
    c = gaps[-1] + 1 if gaps else 0
    elems = [x for x in range(1, c) if x not in gap_set]
    for i, s in enumerate(elems):
        for t in elems[i:]:
            if s + t >= c:
                break
            if s + t in gap_set:
                raise NotASemigroup((s, t))
    return _build(gaps)


def _build(gaps):
    gaps = tuple(gaps)
    return NumericalSemigroup(gaps, gaps[-1] + 1 if gaps else 0)


def natural_numbers():
    return NumericalSemigroup((), 0)


def weight(S):
    return S.weight()


def nth_element(S, i):
    return S.nth_element(i)


def contains(S, x):
    return S.contains(x)


def dyck(S):
    return S.dyck()


def from_json(text_or_obj):
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    if "gens" in obj:
        return from_generators(obj["gens"])
    if "gaps" in obj:
        return from_gaps(obj["gaps"])
    raise ValueError('expected a "gens" or "gaps" key')


def to_json(S):
    return json.dumps(S.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class DyckDiagram:
    """Lattice path on the g x g grid; step i is Up exactly when i is a gap."""

    steps: tuple
    box_count: int
    genus: int

    @classmethod
    def of(cls, S):
        g = S.genus
        steps = tuple(UP if x in S._gap_set else RIGHT for x in range(1, 2 * g + 1))
        return cls(steps, sum(cls._column_heights_of(steps, g)), g)

    @staticmethod
    def _column_heights_of(steps, g):
        # boxes sitting above the path in each column, up to the top border
        ups, heights = 0, []
        for s in steps:
            if s == UP:
                ups += 1
            else:
                heights.append(g - ups)
        return heights

    def column_boxes(self):
        return self._column_heights_of(self.steps, self.genus)

    def is_valid(self):
        ups = rights = 0
        for s in self.steps:
            ups += s == UP
            rights += s == RIGHT
            if rights > ups:
                return False
        return ups == rights == self.genus

    def ascii(self):
        g = self.genus
        if g == 0:
            return "(empty diagram)"
        cols = self.column_boxes()
        rows = ["+" + "-" * g + "+"]
        for y in range(g - 1, -1, -1):
            rows.append("|" + "".join("#" if y >= g - h else "." for h in cols) + "|")
        rows.append("+" + "-" * g + "+")
        rows.append(f"{self.box_count} boxes on a {g}x{g} grid")
        return "\n".join(rows)

    def svg(self, cell=24):
        g = self.genus
        side = max(g, 1) * cell
        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{side + 2}" height="{side + 2}" '
                 f'viewBox="-1 -1 {side + 2} {side + 2}">',
                 f'<rect x="0" y="0" width="{side}" height="{side}" fill="none" stroke="#999"/>']
        for k, h in enumerate(self.column_boxes()):
            for row in range(h):
                parts.append(f'<rect x="{k * cell}" y="{row * cell}" width="{cell}" height="{cell}" '
                             f'fill="#c8d7f0" stroke="#4a6fa5"/>')
        x = y = 0
        pts = [(0, side)]
        for s in self.steps:
            if s == UP:
                y += 1
            else:
                x += 1
            pts.append((x * cell, side - y * cell))
        path = " ".join(f"{px},{py}" for px, py in pts)
        parts.append(f'<polyline points="{path}" fill="none" stroke="#b22" stroke-width="2"/>')
        parts.append("</svg>")
        return "\n".join(parts)
