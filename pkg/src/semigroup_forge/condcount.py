"""Condition ledgers for singularity models and exact rank certificates.

Coefficient rows follow the parametrisation f_i = sum_j a_{i,j} t^{d-j} u^j:
column j of every matrix belongs to a_{i,j}, so evaluating at (x:1) gives
the row [x^d, ..., x, 1] and the point infinity = (1:0) gives [1, 0, ..., 0].
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

from .errors import DegenerateInput, IdentityFailed, UnknownCase
from .gapseries import Polynomial, variable
from .linalg import RationalMatrix, leibniz_det

KINDS = ("incidence", "tangency_contact", "cusp_vanishing", "determinantal", "beyond_ramification")
SEED_ENV = "SEMIGROUP_FORGE_SEED"
DEFAULT_SEED = 20170

INF = float("inf")


# ---------------------------------------------------------------- ledgers

@dataclass(frozen=True)
class ConditionLedger:
    """Raw counts by kind; net subtracts the target (n) and the preimages."""

    case_id: str
    n: int
    counts: dict
    preimages: int
    genus: int
    semigroup: tuple = ()
    family_size: int = 0
    note: str = ""

    def __post_init__(self):
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("counts must be nonnegative")
        if set(self.counts) - set(KINDS):
            raise ValueError(f"unknown kinds {set(self.counts) - set(KINDS)}")

    @property
    def raw_total(self):
        return sum(self.counts.values())

    @property
    def net(self):
        return self.raw_total - self.n - self.preimages

    @property
    def required(self):
        return (self.n - 2) * self.genus

    def to_dict(self):
        return {"case": self.case_id, "n": self.n, "genus": self.genus,
                "counts": {k: self.counts.get(k, 0) for k in KINDS},
                "raw_total": self.raw_total, "preimages": self.preimages,
                "net": self.net, "required": self.required,
                "determinantal_family_size": self.family_size,
                "semigroup": [list(p) for p in self.semigroup], "note": self.note}


def _case4_credit(n):
    # the minor family has C(n,3) members; only the independent minimum is credited
    return 1 if n == 3 else n


_CASES = {
    "1": dict(genus=2, pre=2, S=((1, 1), (2, 2)),
              counts=lambda n: {"incidence": 2 * n, "tangency_contact": n},
              note="tacnode: common tangency a_{i,d-1} = a_{i,1}"),
    "2": dict(genus=3, pre=2, S=((1, 2), (2, 3)),
              counts=lambda n: {"incidence": 2 * n, "tangency_contact": n, "cusp_vanishing": n},
              note="smooth branch tangent to a simple cusp; a_{i,1} = 0 at infinity"),
    "3": dict(genus=3, pre=2, S=((1, 1), (2, 2), (3, 3)),
              counts=lambda n: {"incidence": 2 * n, "tangency_contact": 2 * n},
              note="two smooth branches with equal first and second derivatives"),
    "4": dict(genus=3, pre=2, S=((1, 2), (1, 3), (2, 2), (2, 4)),
              counts=lambda n: {"incidence": 2 * n, "cusp_vanishing": n,
                                "determinantal": _case4_credit(n)},
              family=lambda n: comb(n, 3),
              note="3x3 minors credited at their independent minimum (n, or 1 when n = 3)"),
    "5": dict(genus=3, pre=3, S=((1, 1, 1), (2, 2, 1)),
              counts=lambda n: {"incidence": 3 * n, "tangency_contact": n},
              note="three smooth branches, two of them tangent"),
    "6": dict(genus=3, pre=3, S=((1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2)),
              counts=lambda n: {"incidence": 3 * n, "determinantal": n + 1},
              family=lambda n: comb(n, 3),
              note="planar triple point; n+1 degeneracy conditions credited "
                   "(exceeds the C(n,3) family when n = 3)"),
    "7": dict(genus=4, pre=2, S=((1, 3), (2, 4)),
              counts=lambda n: {"incidence": 2 * n, "cusp_vanishing": 2 * n, "tangency_contact": n},
              note="smooth branch with third-order contact to a <3,4,5> branch"),
    "node": dict(genus=1, pre=2, S=((1, 1),),
                 counts=lambda n: {"incidence": 2 * n},
                 note="two preimages with a common image"),
}

CASE_IDS = tuple(_CASES)
EXPECTED_NET = {"1": lambda n: 2 * n - 2, "2": lambda n: 3 * n - 2, "3": lambda n: 3 * n - 2,
                "4": lambda n: 3 * n - 2 if n >= 4 else 5, "5": lambda n: 3 * n - 3,
                "6": lambda n: 3 * n - 2, "7": lambda n: 4 * n - 2, "node": lambda n: n - 2}


def ledger_for_case(case_id, n):
    key = str(case_id)
    if key not in _CASES:
        raise UnknownCase(f"no ledger for case {case_id!r}")
    if n < 3:
        raise ValueError("n must be at least 3")
    case = _CASES[key]
    counts = {k: v for k, v in case["counts"](n).items() if v}
    r = len(case["S"][0])
    pts = ((0,) * r,) + case["S"]
    return ConditionLedger(key, n, counts, case["pre"], case["genus"], pts,
                           case.get("family", lambda _: 0)(n), case["note"])


def check_heuristic(ledger, g=None):
    """net >= (n - 2) g."""
    g = ledger.genus if g is None else g
    return ledger.net >= (ledger.n - 2) * g


def mt_gluing_net(branch_genera, n):
    """Branch conditions plus the incidences that glue r branches at one point."""
    r = len(branch_genera)
    return sum((n - 2) * gi for gi in branch_genera) + n * (r - 1)


def mt_gluing_target(branch_genera, n):
    r = len(branch_genera)
    g = sum(branch_genera) + r - 1
    return (n - 2) * g + 2 * (r - 1)


# ---------------------------------------------------------------- matrices

def _row_at(v, d, deriv=0):
    """k-th derivative of [v^d, ..., v, 1]; v = INF gives the chart row at infinity."""
    if v == INF:
        return [Fraction(1) if j == deriv else Fraction(0) for j in range(d + 1)]
    v = Fraction(v)
    out = []
    for j in range(d + 1):
        e = d - j
        out.append(Fraction(factorial(e), factorial(e - deriv)) * v ** (e - deriv) if e >= deriv else Fraction(0))
    return out


def _unit(j, d):
    return [Fraction(int(k == j)) for k in range(d + 1)]


def _distinct(points):
    seen = [p for p in points if p != INF]
    if len(set(seen)) != len(seen) or sum(p == INF for p in points) > 1:
        raise DegenerateInput(f"repeated points {list(points)}")


def node_condition_matrix(points, d):
    """One evaluation row per preimage; INF contributes [1, 0, ..., 0]."""
    points = [INF if p in (INF, None, "inf") else Fraction(p) for p in points]
    _distinct(points)
    return RationalMatrix([_row_at(p, d) for p in points])


def hermite_matrix(nodes, multiplicities, d):
    """Value and derivative rows: node v with multiplicity m gives derivatives 0..m-1."""
    if len(nodes) != len(multiplicities):
        raise ValueError("one multiplicity per node")
    nodes = [Fraction(v) for v in nodes]
    _distinct(nodes)
    rows = []
    for v, m in zip(nodes, multiplicities):
        rows.extend(_row_at(v, d, k) for k in range(m))
    return RationalMatrix(rows)


@dataclass(frozen=True)
class MixedCuspMatrices:
    A: RationalMatrix
    A1: RationalMatrix
    A2: RationalMatrix
    d: int

    @property
    def A0_columns(self):
        """Columns left after removing those of a_{i,1} and a_{i,d-1}."""
        return [j for j in range(self.d + 1) if j not in (1, self.d - 1)]

    def A0(self):
        return self.A.submatrix(rows=[2, 3, 4], cols=self.A0_columns)


def _mixed_rows(x, y, d, one=Fraction(1), zero=Fraction(0)):
    return [
        [one if j == 1 else zero for j in range(d + 1)],          # cusp at infinity
        [one if j == d - 1 else zero for j in range(d + 1)],      # cusp at 0
        [one * (d - j) for j in range(d + 1)],                     # cusp at 1
        [x ** (d - j) if d - j else one for j in range(d + 1)],    # node, branch at x
        [y ** (d - j) if d - j else one for j in range(d + 1)],    # node, branch at y
    ]


def _a1_rows(x, y, one=1):
    return [[one * 3, one * 2, one], [x ** 3, x ** 2, x], [y ** 3, y ** 2, y]]


def _a2_rows(x, y, one=1):
    return [[one * 4, one * 3, one * 2], [x ** 4, x ** 3, x ** 2], [y ** 4, y ** 3, y ** 2]]


def mixed_cusp_system(cusp_points, node_pairs, d):
    """Derivative rows for simple cusps, then two evaluation rows per node."""
    pts = [INF if p in (INF, None, "inf") else Fraction(p) for p in cusp_points]
    flat = pts + [Fraction(v) for pair in node_pairs for v in pair]
    _distinct(flat)
    rows = [_row_at(p, d, 1) for p in pts]
    for x, y in node_pairs:
        rows += [_row_at(Fraction(x), d), _row_at(Fraction(y), d)]
    return RationalMatrix(rows)


def mixed_cusp_matrix(*args):
    """Three simple cusps at infinity, 0, 1 and a node with branches at x and y.

    Accepts ``(x, y, d)`` or ``(cusp_points, node_pairs, d)``; the latter must
    use the normalisation cusps = (inf, 0, 1) with a single node.  Returns A
    together with the two displayed 3x3 blocks A1 and A2.
    """
    if len(args) != 3:
        raise TypeError("expected (x, y, d) or (cusp_points, node_pairs, d)")
    a, b, d = args
    if isinstance(a, (list, tuple)):
        cusps = [INF if p in (INF, None, "inf") else Fraction(p) for p in a]
        if sorted(cusps[1:]) != [0, 1] or cusps[0] != INF or len(b) != 1:
            raise DegenerateInput("A1, A2 are defined for cusps at (inf, 0, 1) and one node")
        (x, y), = b
    else:
        x, y = a, b
    x, y = Fraction(x), Fraction(y)
    if d < 5:
        raise ValueError("d must be at least 5")
    if x == y or x in (0, 1) or y in (0, 1):
        raise DegenerateInput("need x != y and x, y outside {0, 1}")
    A = RationalMatrix(_mixed_rows(x, y, d))
    return MixedCuspMatrices(A, RationalMatrix(_a1_rows(x, y)), RationalMatrix(_a2_rows(x, y)), d)


def tacnode_cusp_matrix(x, y, d):
    """Tacnode with branches at x, y plus a <3,4,5> cusp at infinity."""
    x, y = Fraction(x), Fraction(y)
    if x == y:
        raise DegenerateInput("tacnode branches must be distinct")
    return RationalMatrix([_row_at(x, d), _row_at(y, d), _row_at(x, d, 1), _row_at(y, d, 1),
                           _unit(1, d), _unit(2, d)])


# ---------------------------------------------------------------- certificates

@dataclass
class ProofCertificate:
    name: str
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return all(self.checks.values())

    def require(self, label, value):
        self.checks[label] = bool(value)

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "checks": dict(self.checks), "notes": list(self.notes)}


def _xy():
    return Polynomial.of(variable("x")), Polynomial.of(variable("y"))


def determinant_identities():
    """Both displayed determinant factorisations as exact polynomial identities."""
    x, y = _xy()
    one = Polynomial.const(1)
    det1 = leibniz_det(_a1_rows(x, y, one), one, Polynomial())
    det2 = leibniz_det(_a2_rows(x, y, one), one, Polynomial())
    c1 = (x - 1) * (y - 1) - (x - 1) - (y - 1)
    c2 = 2 * (x - 1) * (y - 1) - (x - 1) - (y - 1)
    mid1 = x * y * leibniz_det([[x * x - 3, x - 2], [y * y - 3, y - 2]], one, Polynomial())
    mid2 = 2 * x * x * y * y * leibniz_det([[x * x - 2, x - Fraction(3, 2)],
                                            [y * y - 2, y - Fraction(3, 2)]], one, Polynomial())
    return {
        "det(A1) = xy det[[x^2-3, x-2], [y^2-3, y-2]]": det1 == mid1,
        "det(A1) = xy(x-y)((x-1)(y-1)-(x-1)-(y-1))": det1 == x * y * (x - y) * c1,
        "det(A2) = 2x^2y^2 det[[x^2-2, x-3/2], [y^2-2, y-3/2]]": det2 == mid2,
        "det(A2) = x^2y^2(x-y)(2(x-1)(y-1)-(x-1)-(y-1))": det2 == x * x * y * y * (x - y) * c2,
    }, det1, det2, c1, c2


def simultaneous_vanishing_excluded(d=6):
    """The two cofactors differ by (x-1)(y-1), so they share no zero with x, y not in {0, 1}."""
    cert = ProofCertificate("simultaneous vanishing of det(A1), det(A2)")
    ids, det1, det2, c1, c2 = determinant_identities()
    for label, ok in ids.items():
        cert.require(label, ok)
    x, y = _xy()
    cert.require("c2 - c1 = (x-1)(y-1)", c2 - c1 == (x - 1) * (y - 1))
    vals = {variable("x"): 2, variable("y"): 3}
    cert.require("x=2, y=3: det(A1) or det(A2) nonzero",
                 det1.evaluate(vals) != 0 or det2.evaluate(vals) != 0)
    diag = {variable("y"): x}
    cert.require("x=y: both vanish", det1.subs(diag).is_zero() and det2.subs(diag).is_zero())
    # A2 sits in the columns d-4, d-3, d-2; with the unit rows this is a 5x5 minor of A
    if d >= 6:
        one = Polynomial.const(1)
        rows = _mixed_rows(x, y, d, one, Polynomial())
        cols = [1, d - 1, d - 4, d - 3, d - 2]
        minor = leibniz_det([[row[j] for j in cols] for row in rows], one, Polynomial())
        cert.require(f"5x5 minor on columns {cols} = +/- det(A2) (d={d})", minor.same_up_to_sign(det2))
    in_a0 = (d - 1) not in (d - 3, d - 2, d - 1)
    cert.notes.append("A1 uses the column of a_{i,d-1}, which the cusp at 0 removes from A0; "
                      "A1 is therefore not a block of A0" if not in_a0 else "A1 is a block of A0")
    if not cert.ok:
        raise IdentityFailed(f"certificate failed: {[k for k, v in cert.checks.items() if not v]}")
    return cert


def vandermonde_oracle(nodes, multiplicities):
    """Confluent determinant by differentiating a Vandermonde in symbolic copies.

    Node v with multiplicity m contributes v and m-1 symbolic copies; copy k is
    differentiated k times and then set equal to v.
    """
    nodes = [Fraction(v) for v in nodes]
    slots, plan = [], []
    for idx, (v, m) in enumerate(zip(nodes, multiplicities)):
        for k in range(m):
            if k == 0:
                slots.append(Polynomial.const(v))
            else:
                sym = variable("u", 100 * (idx + 1) + k)
                slots.append(Polynomial.of(sym))
                plan.append((sym, k, v))
    P = Polynomial.const(1)
    for i in range(len(slots)):
        for j in range(i + 1, len(slots)):
            P = P * (slots[i] - slots[j])
    for sym, k, _ in plan:
        for _ in range(k):
            P = P.diff(sym)
    return P.evaluate({sym: v for sym, _, v in plan})


@dataclass(frozen=True)
class ConfluentReport:
    det: Fraction
    oracle: Fraction
    product: Fraction
    scalar: Fraction
    predicted_scalar: int

    @property
    def nonzero(self):
        return self.det != 0

    @property
    def ok(self):
        return self.nonzero and self.det == self.oracle and abs(self.scalar) == self.predicted_scalar


def confluent_vandermonde(nodes, multiplicities):
    nodes = [Fraction(v) for v in nodes]
    if len(set(nodes)) != len(nodes):
        raise DegenerateInput("nodes must be distinct")
    N = sum(multiplicities)
    M = hermite_matrix(nodes, multiplicities, N - 1)
    det = M.det()
    oracle = vandermonde_oracle(nodes, multiplicities)
    product = Fraction(1)
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            product *= (nodes[i] - nodes[j]) ** (multiplicities[i] * multiplicities[j])
    scalar = det / product
    predicted = prod(factorial(k) for m in multiplicities for k in range(m))
    return ConfluentReport(det, oracle, product, scalar, predicted)


def confluent_vandermonde_check(nodes, multiplicities):
    """Nonzero determinant that agrees with the differentiation oracle."""
    return confluent_vandermonde(nodes, multiplicities).ok


# ---------------------------------------------------------------- random ranks

def resolve_seed(seed=None):
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        return int(env)
    return DEFAULT_SEED if seed is None else int(seed)


def random_rational(rng, bits=31):
    num = rng.randint(-(1 << bits), 1 << bits)
    den = rng.randint(1, 1 << bits)
    return Fraction(num, den)


def _generic_points(rng, count, avoid=(0, 1)):
    while True:
        pts = [random_rational(rng) for _ in range(count)]
        if len(set(pts)) == count and not any(p in avoid for p in pts):
            return pts


@dataclass(frozen=True)
class RankSweep:
    name: str
    samples: int
    expected_rank: int
    failures: tuple
    retries: int

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {"name": self.name, "samples": self.samples, "expected_rank": self.expected_rank,
                "failures": [[str(v) for v in f] for f in self.failures], "retries": self.retries,
                "ok": self.ok}


def rank_sweep(name, build, arity, expected_rank, samples=200, seed=None, retries=3):
    """Evaluate ``build(*points)`` at seeded random rationals; retry a deficient draw."""
    rng = random.Random(resolve_seed(seed))
    failures, used = [], 0
    for _ in range(samples):
        for attempt in range(retries + 1):
            pts = _generic_points(rng, arity)
            if build(*pts).rank() == expected_rank:
                break
            used += 1
        else:
            failures.append(tuple(pts))
    # a failed sample's last deficient draw is not followed by a retry
    return RankSweep(name, samples, expected_rank, tuple(failures), used - len(failures))


def standard_rank_sweeps(samples=200, seed=None, d=8):
    """The mixed-cusp matrix, the tacnode-plus-cusp matrix and the (2,2) blocks."""
    return [
        rank_sweep(f"mixed cusps and node, d={d}", lambda x, y: mixed_cusp_matrix(x, y, d).A,
                   2, 5, samples, seed),
        rank_sweep(f"tacnode with <3,4,5> cusp at infinity, d={d}",
                   lambda x, y: tacnode_cusp_matrix(x, y, d), 2, 6, samples, seed),
        rank_sweep(f"two tacnodes, rightmost 8x8, d={d}",
                   lambda x, y, z, w: hermite_matrix([x, y, z, w], [2, 2, 2, 2], d)
                   .submatrix(cols=range(d - 7, d + 1)), 4, 8, samples, seed),
        rank_sweep(f"tacnode and triple point, d={d}",
                   lambda x, y, v, z, w: hermite_matrix([x, y, v, z, w], [2, 2, 1, 1, 1], d),
                   5, 7, samples, seed),
        rank_sweep(f"four nodes plus a row at infinity, d={d}",
                   lambda *p: node_condition_matrix(list(p) + [INF], d), 8, 9, samples, seed),
    ]
