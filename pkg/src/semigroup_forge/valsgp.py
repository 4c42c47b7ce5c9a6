"""Value semigroups of multibranch singularities, held by their truncation.

A point p of N^r is a member iff min(p, c) is, c being the conductor.
Every axiom below is evaluated under that capping convention.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product

import numpy as np

from . import kernels
from .errors import NoConductor, NotSpanning
from .numsgp import NumericalSemigroup, from_gaps, from_generators, natural_numbers

INF = math.inf


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lt(a, b):
    return a != b and _leq(a, b)


def _cap(p, c):
    return tuple(min(x, y) for x, y in zip(p, c))


@dataclass(frozen=True)
class ValueTruncation:
    """S* : the members of S lying below the conductor c (inclusive)."""

    r: int
    conductor: tuple
    elements: frozenset = field(compare=True)

    @classmethod
    def from_points(cls, points, conductor=None):
        pts = {tuple(int(x) for x in p) for p in points}
        if not pts:
            raise ValueError("at least one point is required")
        r = len(next(iter(pts)))
        if any(len(p) != r for p in pts):
            raise ValueError("points of mixed length")
        if conductor is None:
            conductor = tuple(max(p[i] for p in pts) for i in range(r))
        conductor = tuple(int(x) for x in conductor)
        pts |= {(0,) * r, conductor}
        if any(not _leq(p, conductor) for p in pts):
            raise ValueError("every point must lie below the conductor")
        return cls(r, conductor, frozenset(pts))

    @cached_property
    def sorted_elements(self):
        return sorted(self.elements)

    def __contains__(self, p):
        return self.contains(p)

    def contains(self, p):
        if any(x < 0 for x in p):
            return False
        return _cap(p, self.conductor) in self.elements

    def __len__(self):
        return len(self.elements)

    def to_dict(self):
        return {"r": self.r, "conductor": list(self.conductor),
                "elements": [list(p) for p in self.sorted_elements]}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text_or_obj):
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        T = cls.from_points(obj["elements"], obj.get("conductor"))
        if "r" in obj and obj["r"] != T.r:
            raise ValueError("r does not match the point length")
        return T

    def label(self):
        body = ", ".join("0" if not any(p) else "(" + ",".join(map(str, p)) + ")"
                         for p in self.sorted_elements)
        return "{" + body + "}"

    def __repr__(self):
        return f"ValueTruncation{self.label()}"

    # invariants ------------------------------------------------------------
    def validate(self):
        return validate(self)

    def genus(self):
        return genus(self)

    def modulus(self):
        return modulus(self)


def truncation(points, conductor=None):
    return ValueTruncation.from_points(points, conductor)


# ---------------------------------------------------------------- axioms

@dataclass(frozen=True)
class AxiomResult:
    name: str
    ok: bool
    witness: tuple = ()

    def to_dict(self):
        return {"axiom": self.name, "ok": self.ok,
                "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness]}


@dataclass(frozen=True)
class ValidationReport:
    results: tuple

    @property
    def ok(self):
        return all(res.ok for res in self.results)

    def __bool__(self):
        return self.ok

    def get(self, name):
        return next(res for res in self.results if res.name == name)

    def failures(self):
        return [res for res in self.results if not res.ok]

    def to_dict(self):
        return {"ok": self.ok, "axioms": [res.to_dict() for res in self.results]}


def _closure_witness(T):
    pts = T.sorted_elements
    for k, a in enumerate(pts):
        for b in pts[k:]:
            s = _cap(tuple(x + y for x, y in zip(a, b)), T.conductor)
            if s not in T.elements:
                return (a, b)
    return None


def _sm1_witness(T):
    pts = T.sorted_elements
    for k, a in enumerate(pts):
        for b in pts[k + 1:]:
            if tuple(map(min, a, b)) not in T.elements:
                return (a, b)
    return None


def sm2_witness_exists(T, a, b, i):
    least = tuple(map(min, a, b))
    for gam in T.elements:
        if gam[i] <= a[i]:
            continue
        if all(j == i or (gam[j] == least[j] if a[j] != b[j] else gam[j] >= least[j])
               for j in range(T.r)):
            return True
    return False


def _sm2_witness(T):
    pts = T.sorted_elements
    for k, a in enumerate(pts):
        for b in pts[k + 1:]:
            for i in range(T.r):
                # at or past the conductor the raised point caps back onto min(a, b)
                if a[i] == b[i] and a[i] < T.conductor[i] and not sm2_witness_exists(T, a, b, i):
                    return (a, b, i)
    return None


def _locality_witness(T):
    if T.r >= 2 and not any(T.conductor):
        return (tuple([1] + [0] * (T.r - 1)),)
    for p in T.sorted_elements:
        if any(p) and not all(p):
            return (p,)
    return None


def _conductor_witness(T):
    """A smaller point whose whole upper box already lies in S, if any."""
    c = T.conductor
    for i in range(T.r):
        if c[i] == 0:
            continue
        lower = c[:i] + (c[i] - 1,) + c[i + 1:]
        ranges = [range(lo, hi + 1) for lo, hi in zip(lower, c)]
        if all(p in T.elements for p in product(*ranges)):
            return (lower,)
    return None


def validate(T):
    checks = [
        ("closure", _closure_witness(T)),
        ("sm1", _sm1_witness(T)),
        ("sm2", _sm2_witness(T)),
        ("locality", _locality_witness(T)),
        ("conductor", _conductor_witness(T)),
    ]
    return ValidationReport(tuple(AxiomResult(n, w is None, w or ()) for n, w in checks))


# ---------------------------------------------------------------- chains

def _covers(T, p):
    above = [q for q in T.elements if _lt(p, q)]
    return sorted(q for q in above if not any(_lt(z, q) for z in above if z != q))


def saturated_chain(T):
    """Lexicographically least saturated chain from 0 to c."""
    p = (0,) * T.r
    chain = [p]
    while p != T.conductor:
        p = _covers(T, p)[0]
        chain.append(p)
    return chain


def random_saturated_chain(T, rng=None):
    rng = rng or random.Random(0)
    p = (0,) * T.r
    chain = [p]
    while p != T.conductor:
        p = rng.choice(_covers(T, p))
        chain.append(p)
    return chain


def is_saturated_chain(T, chain):
    chain = [tuple(p) for p in chain]
    if not chain or chain[0] != (0,) * T.r or chain[-1] != T.conductor:
        return False
    if any(p not in T.elements for p in chain):
        return False
    for a, b in zip(chain, chain[1:]):
        if not _lt(a, b):
            return False
        if any(_lt(a, z) and _lt(z, b) for z in T.elements):
            return False
    return True


def chain_length(T):
    return len(saturated_chain(T)) - 1


def genus(T):
    """|c| minus the length of a saturated chain: the unoccupied places."""
    return sum(T.conductor) - chain_length(T)


def modulus(T):
    """<|p| : p in S*> together with every integer >= |c|."""
    top = sum(T.conductor)
    if top == 0:
        return natural_numbers()
    gens = {sum(p) for p in T.elements if any(p)} | set(range(top, 2 * top + 1))
    return from_generators(gens)


def genus_inequality(T):
    return modulus(T).genus <= genus(T)


def is_strict_modulus(T):
    return modulus(T).genus < genus(T)


# ---------------------------------------------------------------- branches

def branch_projection(T, i) -> NumericalSemigroup:
    ci = T.conductor[i]
    values = {p[i] for p in T.elements}
    return from_gaps([v for v in range(ci) if v not in values])


def branch_genera(T):
    return [branch_projection(T, i).genus for i in range(T.r)]


def is_MT(T):
    return sum(branch_genera(T)) + T.r - 1 == genus(T)


is_mt = is_MT


# ---------------------------------------------------------------- symmetry

def permute(T, perm):
    """Coordinate i of the result is coordinate perm[i] of T."""
    move = lambda p: tuple(p[k] for k in perm)  # noqa: E731
    return ValueTruncation(T.r, move(T.conductor), frozenset(move(p) for p in T.elements))


def _key(T):
    return tuple(T.sorted_elements)


def canonical_form(T):
    """Lexicographically least coordinate permutation."""
    return min((permute(T, perm) for perm in permutations(range(T.r))), key=_key)


def automorphisms(T):
    return [perm for perm in permutations(range(T.r)) if permute(T, perm) == T]


def orbit(T):
    seen = {}
    for perm in permutations(range(T.r)):
        U = permute(T, perm)
        seen[_key(U)] = U
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------- generators

@dataclass(frozen=True, order=True)
class GeneratorTuple:
    """An r-tuple over N and infinity; infinite coordinates add nothing to the modulus."""

    coords: tuple

    def __post_init__(self):
        if not self.coords or all(x == INF for x in self.coords):
            raise ValueError("a generator needs at least one finite coordinate")

    @classmethod
    def of(cls, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = coords[0]
        return cls(tuple(INF if x in (INF, "inf", "∞", None) else int(x) for x in coords))

    @property
    def r(self):
        return len(self.coords)

    @property
    def modulus(self):
        return sum(x for x in self.coords if x != INF)

    def realize(self, bound):
        return tuple(b if x == INF else min(int(x), b) for x, b in zip(self.coords, bound))

    def text(self):
        return "(" + ",".join("∞" if x == INF else str(x) for x in self.coords) + ")"

    def to_json(self):
        return [None if x == INF else x for x in self.coords]

    def __repr__(self):
        return self.text()


def _default_bound(gens, r):
    finite = [x for g in gens for x in g.coords if x != INF]
    top = max(finite, default=1)
    return tuple([2 * top + 4] * r)


def span(gens, r=None, box_bound=None, jit=None):
    """Least axiom-closed set containing 0 and ``gens`` inside a finite box.

    Infinite coordinates sit on the box wall.  The conductor is read off as the
    least point whose whole upper box is filled; it must lie strictly inside.
    """
    gens = [g if isinstance(g, GeneratorTuple) else GeneratorTuple.of(g) for g in gens]
    if not gens:
        raise ValueError("at least one generator is required")
    r = r or gens[0].r
    if any(g.r != r for g in gens):
        raise ValueError("generators of mixed length")
    bound = tuple(box_bound) if box_bound is not None else _default_bound(gens, r)
    bound_arr = np.asarray(bound, dtype=np.int64)
    dims, strides = kernels.box_strides(bound_arr)
    flags = np.zeros(int(np.prod(dims)), dtype=np.uint8)
    flags[0] = 1
    for g in gens:
        flags[int(np.dot(g.realize(bound), strides))] = 1
    out = kernels.close_box(bound_arr, flags, jit=jit).reshape(tuple(int(d) for d in dims))
    return _truncate(out.astype(bool), bound)


def _truncate(box, bound):
    r = box.ndim
    filled = box.copy()
    for axis in range(r):
        # filled[p] <=> every q >= p in the box is a member
        filled = np.flip(np.minimum.accumulate(np.flip(filled, axis), axis=axis), axis)
    where = np.argwhere(filled)
    if where.size == 0:
        raise NoConductor("the box never fills up; enlarge box_bound")
    c = tuple(int(x) for x in where.min(axis=0))
    if not filled[c] or any(ci >= b for ci, b in zip(c, bound)):
        raise NoConductor(f"conductor candidate {c} reaches the box wall {bound}")
    sub = box[tuple(slice(0, ci + 1) for ci in c)]
    pts = [tuple(int(x) for x in p) for p in np.argwhere(sub)]
    return ValueTruncation(r, c, frozenset(pts))


# ---------------------------------------------------------------- models

def _model_exponents(gens, order):
    """Distinct exponent tuples of monomials in the model, capped at ``order`` (INF past it)."""
    start = (0,) * len(order)
    seen, stack = {start}, [start]
    while stack:
        e = stack.pop()
        for g in gens:
            nxt = tuple(INF if (x == INF or y == INF or x + y >= n) else x + y
                        for x, y, n in zip(e, g.coords, order))
            if all(x == INF for x in nxt) or nxt in seen:
                continue
            seen.add(nxt)
            stack.append(nxt)
    return sorted(seen, key=lambda e: tuple(-1 if x == INF else x for x in e))


def _rank_mod(rows, ncols, prime=2_147_483_647):
    if not rows:
        return 0
    a = np.array(rows, dtype=np.int64) % prime
    rank = 0
    for col in range(ncols):
        piv = np.flatnonzero(a[rank:, col])
        if piv.size == 0:
            continue
        k = rank + piv[0]
        a[[rank, k]] = a[[k, rank]]
        inv = pow(int(a[rank, col]), prime - 2, prime)
        a[rank] = (a[rank] * inv) % prime
        others = np.flatnonzero(a[:, col])
        others = others[others != rank]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, col], a[rank]) % prime) % prime
        rank += 1
        if rank == a.shape[0]:
            break
    return rank


def model_truncation(gens, bound):
    """Value semigroup of the monomial model dual to ``gens``, within the box ``bound``.

    Branch i of coordinate function k is t^{gens[k][i]} (zero when infinite).
    p is a value iff {f : ord f >= p} strictly shrinks when any p_i is raised,
    which over an infinite field is the same as some f having ord f = p.
    Ranks are taken modulo a large prime (0/1 matrices; see the ledger).
    """
    gens = [g if isinstance(g, GeneratorTuple) else GeneratorTuple.of(g) for g in gens]
    r = len(bound)
    order = tuple(b + 2 for b in bound)
    exps = _model_exponents(gens, order)
    n = len(exps)
    index = [{} for _ in range(r)]
    for col, e in enumerate(exps):
        for i, x in enumerate(e):
            if x != INF:
                index[i].setdefault(x, []).append(col)

    def row(i, k):
        v = [0] * n
        for col in index[i].get(k, ()):
            v[col] = 1
        return v

    dims = {}

    def dim_above(p):
        if p not in dims:
            rows = [row(i, k) for i in range(r) for k in range(p[i]) if k in index[i]]
            dims[p] = n - _rank_mod(rows, n)
        return dims[p]

    box = np.zeros(tuple(b + 1 for b in bound), dtype=bool)
    for p in product(*(range(b + 1) for b in bound)):
        here = dim_above(p)
        box[p] = all(dim_above(p[:i] + (p[i] + 1,) + p[i + 1:]) < here for i in range(r))
    return _truncate(box, bound)


def realizes(gens, T):
    """The monomial model of ``gens`` has value semigroup T."""
    try:
        return model_truncation(gens, tuple(ci + 2 for ci in T.conductor)) == T
    except NoConductor:
        return False


def _projections_match(gens, T, targets):
    for i, target in enumerate(targets):
        finite = [g.coords[i] for g in gens if g.coords[i] != INF]
        if not finite:
            if target.genus or target.conductor > 1:
                return False
            continue
        top = max(target.conductor, 1) + max(finite)
        reach = {0}
        for v in range(1, top + 1):
            if any(v - a in reach for a in finite if v >= a):
                reach.add(v)
        if any((v in reach) != target.contains(v) for v in range(top + 1)):
            return False
    return True


def _candidate_generators(T):
    """Members of S (capped at c) with optional infinite walls and small overshoots."""
    c = T.conductor
    mult = [branch_projection(T, i).multiplicity if c[i] else 1 for i in range(T.r)]
    out = set()
    for p in T.elements:
        if not any(p):
            continue
        options = []
        for i, x in enumerate(p):
            if x == c[i]:
                options.append(list(range(c[i], c[i] + max(mult[i], 1))) + [INF])
            else:
                options.append([x])
        for coords in product(*options):
            if all(x == INF for x in coords):
                continue
            out.add(GeneratorTuple(tuple(coords)))
    return sorted(out, key=lambda g: (g.modulus, g.coords))


def _span_box(T):
    # one past the largest finite candidate coordinate; infinity sits on the wall
    c = T.conductor
    mult = [branch_projection(T, i).multiplicity if c[i] else 1 for i in range(T.r)]
    return tuple(ci + max(m, 1) for ci, m in zip(c, mult))


def spans_to(gens, T, jit=None):
    try:
        return span(gens, T.r, _span_box(T), jit=jit) == T
    except NoConductor:
        return False


def _gamma_key(gens):
    return tuple(sorted(g.coords for g in gens))


def _canonical_gamma(gens, T):
    best = None
    for perm in automorphisms(T):
        moved = [GeneratorTuple(tuple(g.coords[k] for k in perm)) for g in gens]
        key = _gamma_key(moved)
        if best is None or key < best[0]:
            best = (key, moved)
    return tuple(sorted(best[1]))


def minimal_generators(T, max_size=6, jit=None):
    """Fewest generators spanning T, then least total modulus, then canonical.

    A set qualifies when the rules span T from it and its monomial model
    has value semigroup T.

    Raises NotSpanning when no set of at most ``max_size`` candidates works.
    """
    if T.r == 1 and not any(T.conductor):
        return (GeneratorTuple((1,)),)
    cands = _candidate_generators(T)
    targets = [branch_projection(T, i) for i in range(T.r)]
    for m in range(1, max_size + 1):
        found, best_mod = [], None
        combos = sorted(combinations(cands, m), key=lambda gs: sum(g.modulus for g in gs))
        for gs in combos:
            mod = sum(g.modulus for g in gs)
            if best_mod is not None and mod > best_mod:
                break
            if (_projections_match(gs, T, targets) and spans_to(gs, T, jit=jit)
                    and realizes(gs, T)):
                best_mod = mod
                found.append(gs)
        if found:
            return min((_canonical_gamma(gs, T) for gs in found), key=_gamma_key)
    raise NotSpanning(f"no generating set of size <= {max_size} reproduces {T.label()}")


def embedding_number(T, **kw):
    """m(S*), the size of a minimal generating set."""
    return len(minimal_generators(T, **kw))


def gamma_text(gens):
    return "{" + ", ".join(g.text() for g in gens) + "}"
