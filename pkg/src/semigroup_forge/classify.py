"""Exhaustive search for value semigroups of small genus, and the reference catalog."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import product

from . import valsgp
from .errors import CapExceeded
from .numsgp import from_generators
from .sgptree import semigroups_of_genus
from .valsgp import ValueTruncation, canonical_form, genus, modulus

GENUS_LIMIT = 4
MAX_BRANCHES = 5


def from_numerical(S):
    """The one-branch truncation {s <= c} of a numerical semigroup."""
    c = S.conductor
    return ValueTruncation(1, (c,), frozenset((s,) for s in range(c + 1) if S.contains(s)))


# ---------------------------------------------------------------- search

def conductor_candidates(g, r, relaxed=False):
    """Sorted conductors with every entry >= 1, entries and sum bounded by 2g (2g+2 relaxed)."""
    top = 2 * g + (2 if relaxed else 0)
    out = []

    def rec(prefix, lo, left):
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        for v in range(lo, min(top, left - (r - len(prefix) - 1)) + 1):
            rec(prefix + [v], v, left - v)

    rec([], 1, top)
    return out


class _Box:
    """Lookup tables for one conductor: the local points and their sums and minima."""

    def __init__(self, c):
        self.c = c
        self.r = len(c)
        inner = sorted(product(*(range(1, ci + 1) for ci in c)), key=lambda p: (sum(p), p))
        self.points = [(0,) * self.r] + inner
        self.index = {p: k for k, p in enumerate(self.points)}
        n = len(self.points)
        self.n = n
        self.top = self.index[c]
        cap = lambda p: tuple(min(x, y) for x, y in zip(p, c))  # noqa: E731
        self.add = [[self.index[cap(tuple(x + y for x, y in zip(a, b)))] for b in self.points]
                    for a in self.points]
        self.meet = [[self.index[tuple(map(min, a, b))] for b in self.points] for a in self.points]
        self.below = [[q for q in range(n) if q != p and valsgp._leq(self.points[q], self.points[p])]
                      for p in range(n)]
        self._sm2 = {}
        self.faces = []
        for i in range(self.r):
            lower = c[:i] + (c[i] - 1,) + c[i + 1:]
            if min(lower) == 0 and self.r > 1:
                continue  # that box holds a point with a zero coordinate, never a member
            ranges = [range(lo, hi + 1) for lo, hi in zip(lower, c)]
            self.faces.append([self.index[p] for p in product(*ranges)])

    def sm2_witnesses(self, a, b, i):
        key = (a, b, i)
        if key not in self._sm2:
            pa, pb = self.points[a], self.points[b]
            least = tuple(map(min, pa, pb))
            self._sm2[key] = [k for k, q in enumerate(self.points)
                              if q[i] > pa[i] and all(
                                  j == i or (q[j] == least[j] if pa[j] != pb[j] else q[j] >= least[j])
                                  for j in range(self.r))]
        return self._sm2[key]

    def longest_chain(self, allowed):
        # points are sorted by coordinate sum, so predecessors come first
        best = [0] * self.n
        for p in range(self.n):
            if not allowed[p]:
                best[p] = -1
                continue
            if p == 0:
                continue
            prev = [best[q] for q in self.below[p] if allowed[q] and best[q] >= 0]
            best[p] = 1 + max(prev) if prev else -1
        return best[self.top]


IN, OUT, OPEN = 1, 0, -1


class _Search:
    def __init__(self, c, g):
        self.box = _Box(c)
        self.g = g
        self.target_length = sum(c) - g
        self.results = []

    def run(self):
        state = [OPEN] * self.box.n
        if not self._set(state, 0) or not self._set(state, self.box.top):
            return []
        self._dfs(state)
        return self.results

    def _set(self, state, p):
        """Mark p present and propagate closure; False on contradiction."""
        if state[p] == IN:
            return True
        if state[p] == OUT:
            return False
        queue = [p]
        state[p] = IN
        while queue:
            a = queue.pop()
            members = [q for q in range(self.box.n) if state[q] == IN]
            for b in members:
                for forced in (self.box.add[a][b], self.box.meet[a][b]):
                    if state[forced] == OUT:
                        return False
                    if state[forced] == OPEN:
                        state[forced] = IN
                        queue.append(forced)
        return True

    def _propagate(self, state):
        while True:
            unit = self._sm2_scan(state)
            if unit is False:
                return False
            if unit is None:
                break
            if not self._set(state, unit):
                return False
        for face in self.box.faces:
            if all(state[q] == IN for q in face):
                return False
        return self._bounds_ok(state)

    def _sm2_scan(self, state):
        """False on a dead SM2 requirement, a point index to force, or None."""
        box = self.box
        members = [q for q in range(box.n) if state[q] == IN]
        for x, a in enumerate(members):
            pa = box.points[a]
            for b in members[x + 1:]:
                pb = box.points[b]
                for i in range(box.r):
                    if pa[i] != pb[i] or pa[i] >= box.c[i]:
                        continue
                    wit = box.sm2_witnesses(a, b, i)
                    if any(state[w] == IN for w in wit):
                        continue
                    open_ = [w for w in wit if state[w] == OPEN]
                    if not open_:
                        return False
                    if len(open_) == 1:
                        return open_[0]
        return None

    def _bounds_ok(self, state):
        box = self.box
        lo = box.longest_chain([s == IN for s in state])
        hi = box.longest_chain([s != OUT for s in state])
        if not (lo <= self.target_length <= hi):
            return False
        # genus >= (r - 1) + sum of branch genera, and branch values only shrink
        gaps = box.r - 1
        for i in range(box.r):
            seen = {box.points[q][i] for q in range(box.n) if state[q] != OUT}
            gaps += sum(1 for v in range(box.c[i]) if v not in seen)
        return gaps <= self.g

    def _dfs(self, state):
        if not self._propagate(state):
            return
        try:
            p = state.index(OPEN)
        except ValueError:
            self._leaf(state)
            return
        branch = state[:]
        if self._set(branch, p):
            self._dfs(branch)
        branch = state[:]
        branch[p] = OUT
        self._dfs(branch)

    def _leaf(self, state):
        pts = [self.box.points[q] for q in range(self.box.n) if state[q] == IN]
        T = ValueTruncation(self.box.r, self.box.c, frozenset(pts))
        if valsgp.validate(T).ok and genus(T) == self.g:
            self.results.append(T)


def search_conductor(c, g):
    """Every valid truncation with conductor exactly c and genus g."""
    return _Search(tuple(c), g).run()


def _search_job(args):
    c, g = args
    return [sorted(T.elements) for T in search_conductor(c, g)]


def enumerate_value_semigroups(g, r, jobs=1, relaxed=False):
    """All value semigroups of genus g with r branches, canonical and sorted."""
    if not 1 <= g <= GENUS_LIMIT:
        raise CapExceeded(f"genus must lie in 1..{GENUS_LIMIT}")
    if r < 1:
        raise ValueError("r must be positive")
    if r == 1:
        return sorted((from_numerical(S) for S in semigroups_of_genus(g)), key=valsgp._key)
    cands = conductor_candidates(g, r, relaxed)
    tasks = [(c, g) for c in cands]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_job, tasks))
    else:
        parts = [_search_job(t) for t in tasks]
    found = {}
    for c, part in zip(cands, parts):
        for pts in part:
            T = canonical_form(ValueTruncation.from_points(pts, c))
            found[valsgp._key(T)] = T
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------- catalog

@dataclass(frozen=True)
class CatalogEntry:
    genus: int
    r: int
    truncation: ValueTruncation
    modulus_gens: tuple
    mt: object = None
    label: str = ""

    def to_dict(self):
        out = {"genus": self.genus, "r": self.r, "label": self.label,
               "modulus": list(self.modulus_gens)}
        out.update(self.truncation.to_dict())
        if self.mt is not None:
            out["mt"] = self.mt
        return out


def _symmetrize(points):
    r = len(points[0])
    from itertools import permutations
    return {tuple(p[k] for k in perm) for p in points for perm in permutations(range(r))}


def _entry_from_json(obj):
    if "gens" in obj:
        T = from_numerical(from_generators(obj["gens"]))
    else:
        pts = [tuple(p) for p in obj["elements"]]
        if obj.get("symmetrize"):
            pts = _symmetrize(pts)
        T = ValueTruncation.from_points(pts)
    return CatalogEntry(obj["genus"], obj["r"], canonical_form(T),
                        tuple(obj.get("modulus", ())), obj.get("mt"), obj.get("label", ""))


@dataclass
class Catalog:
    entries: list = field(default_factory=list)

    @classmethod
    def builtin(cls):
        text = resources.files("semigroup_forge").joinpath("data/catalog_v1.json").read_text()
        return cls.from_json(text)

    @classmethod
    def from_json(cls, text_or_obj):
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        cat = cls([_entry_from_json(e) for e in obj["entries"]])
        keys = [(e.r, valsgp._key(e.truncation)) for e in cat.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("catalog has duplicate classes")
        return cat

    def select(self, g=None, r=None):
        return Catalog([e for e in self.entries
                        if (g is None or e.genus == g) and (r is None or e.r == r)])

    def truncations(self):
        return [e.truncation for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class DiffReport:
    missing: tuple
    extra: tuple
    matched: int

    @property
    def empty(self):
        return not self.missing and not self.extra

    def __bool__(self):
        return not self.empty

    def to_dict(self):
        return {"matched": self.matched, "empty": self.empty,
                "missing": [T.to_dict() for T in self.missing],
                "extra": [T.to_dict() for T in self.extra]}


def diff_catalog(found, expected):
    """Missing and extra classes after canonicalisation."""
    exp = expected.truncations() if isinstance(expected, Catalog) else list(expected)
    a = {valsgp._key(canonical_form(T)): canonical_form(T) for T in found}
    b = {valsgp._key(canonical_form(T)): canonical_form(T) for T in exp}
    missing = tuple(b[k] for k in sorted(b.keys() - a.keys()))
    extra = tuple(a[k] for k in sorted(a.keys() - b.keys()))
    return DiffReport(missing, extra, len(a.keys() & b.keys()))


def stratify_by_modulus(items):
    """Group by modulus; keys are sorted numerical semigroups."""
    strata = {}
    for T in items:
        strata.setdefault(modulus(T), []).append(T)
    return {S: strata[S] for S in sorted(strata)}


def strict_modulus_cases(items):
    """Members whose modulus has strictly smaller genus."""
    return [T for T in items if valsgp.is_strict_modulus(T)]


def classify_all(max_genus=GENUS_LIMIT, max_branches=MAX_BRANCHES, jobs=1, relaxed=False):
    """{(g, r): classes} for every g <= max_genus and r <= max_branches."""
    return {(g, r): enumerate_value_semigroups(g, r, jobs=jobs, relaxed=relaxed)
            for g in range(1, max_genus + 1) for r in range(1, max_branches + 1)}
