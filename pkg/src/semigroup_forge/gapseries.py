"""Sparse exact polynomials and truncated power series in t.

Local sections at a unibranch singular point are written as

    f_j(t) = t^{m_j} + alpha_j t^{m_j+1} + beta_j t^{m_j+2} + gamma_j t^{m_j+3} + ...

with symbolic coefficients.  A polynomial expression in the f_j whose
coefficients vanish below a gap rho of S must also have vanishing t^rho
coefficient, since its valuation lies in S.  That coefficient is a
*condition beyond ramification*.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (LowerTermsNonzero, NotAGap, OrderTooSmall, OutOfRange,
                     ValuationMismatch)

_GREEK = {1: ("alpha", "α"), 2: ("beta", "β"), 3: ("gamma", "γ")}
_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True, order=True)
class Symbol:
    """Structured variable name.

    kind 0 is a series coefficient [t^{m_j + shift}] f_j; kind 1 is a free
    variable such as x or y.  Field order doubles as the monomial order.
    """

    kind: int
    shift: int
    index: int
    name: str
    tag: str = ""
    power: int = field(default=0, compare=False)

    def text(self):
        if self.kind == 1:
            base = self.name if not self.index else f"{self.name}{self.index}"
        elif self.shift in _GREEK:
            base = f"{_GREEK[self.shift][0]}_{self.index}"
        elif self.power:
            base = f"[t^{self.power}]f_{self.index}"
        else:
            base = f"f_{self.index}[+{self.shift}]"
        return f"{base}@{self.tag}" if self.tag else base

    def pretty(self):
        if self.kind == 0 and self.shift in _GREEK:
            return _GREEK[self.shift][1] + str(self.index).translate(_SUBSCRIPT)
        return self.text()

    def __repr__(self):
        return self.text()


def coef_symbol(j, shift, tag="", power=0):
    return Symbol(0, shift, j, "f", tag, power)


def variable(name, index=0):
    return Symbol(1, 0, index, name)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


def _mono_text(mono, pretty=False):
    parts = []
    for s, e in mono:
        name = s.pretty() if pretty else s.text()
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """Sparse map from monomials to Fractions; zero coefficients never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms = clean
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def of(cls, sym):
        return cls({((sym, 1),): 1})

    @staticmethod
    def coerce(x):
        return x if isinstance(x, Polynomial) else Polynomial.const(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = Polynomial.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Fraction(other)
            if not other:
                return Polynomial()
            return Polynomial._raw({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __pow__(self, k):
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not m for m in self.terms)

    def constant(self):
        return self.terms.get((), Fraction(0))

    # structure ------------------------------------------------------------
    def symbols(self):
        return sorted({s for m in self.terms for s, _ in m})

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def linear_part(self):
        return {m[0][0]: c for m, c in self.terms.items() if len(m) == 1 and m[0][1] == 1}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0])

    def normalized(self):
        """Sign-fixed copy: positive coefficient on the least monomial."""
        if not self.terms:
            return self
        _, lead = self.sorted_terms()[0]
        return -self if lead < 0 else self

    def same_up_to_sign(self, other):
        other = Polynomial.coerce(other)
        return self == other or self == -other

    def subs(self, mapping):
        """Substitute symbols by Polynomials or numbers (simultaneously)."""
        out = Polynomial()
        cache = {}
        for mono, c in self.terms.items():
            term = Polynomial.const(c)
            rest = []
            for s, e in mono:
                if s in mapping:
                    key = (s, e)
                    if key not in cache:
                        cache[key] = Polynomial.coerce(mapping[s]) ** e
                    term = term * cache[key]
                else:
                    rest.append((s, e))
            out = out + term * Polynomial._raw({tuple(rest): Fraction(1)})
        return out

    def evaluate(self, values):
        total = Fraction(0)
        for mono, c in self.terms.items():
            v = c
            for s, e in mono:
                v *= Fraction(values[s]) ** e
            total += v
        return total

    def diff(self, sym):
        out = {}
        for mono, c in self.terms.items():
            exps = dict(mono)
            e = exps.get(sym, 0)
            if not e:
                continue
            if e == 1:
                del exps[sym]
            else:
                exps[sym] = e - 1
            m = tuple(sorted(exps.items()))
            out[m] = out.get(m, 0) + c * e
        return Polynomial(out)

    # text -----------------------------------------------------------------
    def text(self, pretty=False):
        """Canonical form: monomials in ascending order, explicit rationals."""
        if not self.terms:
            return "0"
        chunks = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = _mono_text(mono, pretty)
            if not body:
                body = str(a)
            elif a != 1:
                body = f"{a}*{body}"
            if i == 0:
                chunks.append(body if sign == "+" else f"-{body}")
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Polynomial({self.text()})"


def alpha(j, tag=""):
    return Polynomial.of(coef_symbol(j, 1, tag))


def beta(j, tag=""):
    return Polynomial.of(coef_symbol(j, 2, tag))


def gamma(j, tag=""):
    return Polynomial.of(coef_symbol(j, 3, tag))


# ----------------------------------------------------------------- series

class SymbolicSeries:
    """sum_{k < order} c_k t^k + O(t^order), c_k Polynomials."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.order = order
        self.coeffs = {}
        for k, c in coeffs.items():
            if k >= order:
                continue
            c = Polynomial.coerce(c)
            if c:
                self.coeffs[k] = c

    @classmethod
    def monomial(cls, k, order, coeff=1):
        return cls({k: coeff}, order)

    @property
    def valuation(self):
        """Least exponent with a nonzero coefficient (order if none is known)."""
        return min(self.coeffs, default=self.order)

    def coefficient(self, k):
        if k < 0 or k >= self.order:
            raise OutOfRange(f"t^{k} lies beyond O(t^{self.order})")
        return self.coeffs.get(k, Polynomial())

    __getitem__ = coefficient

    def __add__(self, other):
        order = min(self.order, other.order)
        out = {}
        for k in set(self.coeffs) | set(other.coeffs):
            if k < order:
                out[k] = self.coeffs.get(k, Polynomial()) + other.coeffs.get(k, Polynomial())
        return SymbolicSeries(out, order)

    def __neg__(self):
        return SymbolicSeries({k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SymbolicSeries):
            return self.scale(other)
        order = min(self.order + other.valuation, other.order + self.valuation)
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j < order:
                    out[i + j] = out.get(i + j, Polynomial()) + a * b
        return SymbolicSeries(out, order)

    def scale(self, c):
        c = Polynomial.coerce(c)
        if not c:
            return SymbolicSeries({}, self.order)
        return SymbolicSeries({k: v * c for k, v in self.coeffs.items()}, self.order)

    __rmul__ = scale

    def __pow__(self, e):
        out = SymbolicSeries({0: 1}, self.order + 10 ** 9)
        for _ in range(e):
            out = out * self
        return out

    def subs(self, mapping):
        return SymbolicSeries({k: c.subs(mapping) for k, c in self.coeffs.items()}, self.order)

    def __eq__(self, other):
        return (isinstance(other, SymbolicSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def text(self, pretty=False):
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            tk = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if c == 1:
                parts.append(tk)
            elif len(c.terms) == 1 and k:
                parts.append(f"{c.text(pretty)}*{tk}")
            else:
                parts.append(f"({c.text(pretty)})*{tk}" if k else f"({c.text(pretty)})")
        parts.append(f"O(t^{self.order})")
        return " + ".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"SymbolicSeries({self.text()})"


def section_template(S, j, depth, order, tag=""):
    """t^{m_j} + sum_{k=1..depth} c_{j,k} t^{m_j+k} + O(t^order).

    depth 1..3 gives alpha, beta, gamma; deeper coefficients get generic
    names [t^e]f_j.  The order is clipped at m_j + depth + 1 so that no
    unknown coefficient is silently treated as zero.
    """
    if j < 1 or depth < 1:
        raise ValueError("j and depth must be positive")
    m = S.nth_element(j)
    if order <= m:
        raise OrderTooSmall(f"order {order} must exceed m_{j} = {m}")
    order = min(order, m + depth + 1)
    coeffs = {m: 1}
    for k in range(1, depth + 1):
        coeffs[m + k] = Polynomial.of(coef_symbol(j, k, tag, power=m + k))
    return SymbolicSeries(coeffs, order)


def coefficient(s, k):
    return s.coefficient(k)


def mul(a, b):
    return a * b


# ------------------------------------------------------- imposed conditions

class Reducer:
    """Triangular rewriting rules symbol -> Polynomial, applied to a fixed point."""

    def __init__(self, rules=None):
        self.rules = dict(rules or {})

    def add(self, sym, value):
        self.rules[sym] = Polynomial.coerce(value)

    def impose(self, condition, witness):
        """Record condition = 0 by solving for its witness symbol."""
        self.add(witness, solve_for(condition, witness))

    def reduce(self, p):
        p = Polynomial.coerce(p)
        for _ in range(len(self.rules) + 1):
            if not any(s in self.rules for s in p.symbols()):
                return p
            p = p.subs(self.rules)
        raise RuntimeError("rewriting rules are cyclic")

    def vanishes(self, p):
        return self.reduce(p).is_zero()


def solve_for(condition, witness):
    """Value of ``witness`` making condition zero; it must appear linearly with constant coefficient."""
    lin, rest = None, {}
    for mono, c in condition.terms.items():
        if any(s == witness for s, _ in mono):
            if mono != ((witness, 1),):
                raise ValueError(f"{witness} does not enter {condition} linearly")
            lin = c
        else:
            rest[mono] = c
    if lin is None:
        raise ValueError(f"{witness} does not occur in {condition}")
    return Polynomial(rest) * Fraction(-1, 1) / lin


def gap_condition(S, expr, rho, reducer=None):
    """[t^rho] expr, after checking rho is a gap and all lower terms vanish."""
    if rho not in S.gaps:
        raise NotAGap(f"{rho} is not a gap")
    if rho >= expr.order:
        raise OutOfRange(f"t^{rho} lies beyond O(t^{expr.order})")
    reducer = reducer or Reducer()
    for k in range(rho):
        c = expr.coefficient(k)
        if c and not reducer.vanishes(c):
            raise LowerTermsNonzero(k, c)
    return expr.coefficient(rho)


def eliminate(expr, k, corrector):
    """expr - ([t^k]expr / lead) corrector, where corrector has valuation k."""
    if corrector.valuation != k:
        raise ValuationMismatch(f"corrector starts at t^{corrector.valuation}, not t^{k}")
    lead = corrector.coefficient(k)
    if not lead.is_constant():
        raise ValuationMismatch("corrector needs a constant leading coefficient")
    out = expr - corrector.scale(expr.coefficient(k) / lead.constant())
    return out


def linear_independence_rank(conditions, witnesses=None):
    """Rank of the linear parts (Jacobian at the origin) of ``conditions``.

    With ``witnesses`` the matrix is restricted to those columns.  Full rank
    certifies the conditions cut out a subvariety of the expected codimension
    near the origin.
    """
    from .linalg import RationalMatrix

    cols = witnesses
    if cols is None:
        cols = sorted({s for p in conditions for s in p.linear_part()})
    rows = [[p.linear_part().get(s, 0) for s in cols] for p in conditions]
    if not rows or not cols:
        return 0
    return RationalMatrix(rows).rank()


# ------------------------------------------------------------ canned cases

@dataclass
class ExtractedCondition:
    label: str
    rho: int
    polynomial: Polynomial
    witness: Symbol = None
    expected: Polynomial = None
    note: str = ""

    @property
    def matches(self):
        if self.expected is None:
            return None
        return self.polynomial.same_up_to_sign(self.expected)

    def to_dict(self):
        d = {"label": self.label, "rho": self.rho,
             "condition": self.polynomial.normalized().text()}
        if self.witness is not None:
            d["witness"] = self.witness.text()
        if self.expected is not None:
            d["expected"] = self.expected.normalized().text()
            d["matches"] = self.matches
        if self.note:
            d["note"] = self.note
        return d


def _sections(S, count, order):
    return {j: section_template(S, j, order - S.nth_element(j) - 1, order) for j in range(1, count + 1)}


def _lowest(S, count):
    return {j: section_template(S, j, 1, S.nth_element(j) + 2) for j in range(1, count + 1)}


def _sym(j, power, S):
    return coef_symbol(j, power - S.nth_element(j), power=power)


def case_three_eight():
    from .numsgp import from_generators
    S = from_generators([3, 8])
    f = _lowest(S, 2)
    expr = f[1] * f[1] - f[2]
    return S, [ExtractedCondition("f1^2 - f2", 7, gap_condition(S, expr, 7),
                                  _sym(2, 7, S), 2 * alpha(1) - alpha(2))]


def case_three_ten_seventeen():
    from .numsgp import from_generators
    S = from_generators([3, 10, 17])
    f = _lowest(S, 2)
    expr = f[1] * f[1] - f[2]
    return S, [ExtractedCondition("f1^2 - f2", 7, gap_condition(S, expr, 7),
                                  _sym(2, 7, S), 2 * alpha(1) - alpha(2))]


def case_four_six_thirteen():
    from .numsgp import from_generators
    S = from_generators([4, 6, 13])
    f = _lowest(S, 4)
    first = f[1] * f[1] - f[3]
    second = f[1] * f[1] * f[2] - f[2] * f[3]
    alternative = f[1] * f[2] - f[4]
    return S, [
        ExtractedCondition("f1^2 - f3", 9, gap_condition(S, first, 9),
                           _sym(3, 9, S), 2 * alpha(1) - alpha(3)),
        ExtractedCondition("f1^2 f2 - f2 f3", 15, gap_condition(S, second, 15),
                           None, 2 * alpha(1) - alpha(2) - alpha(3),
                           note="equals f2 (f1^2 - f3), so it repeats the t^9 condition"),
        ExtractedCondition("f1 f2 - f4", 11, gap_condition(S, alternative, 11),
                           _sym(4, 11, S), None,
                           note="an independent second condition at the gap 11"),
    ]


def case_hyperelliptic(g):
    """Lowest-order linear conditions for <2, 2g+1>, g = 5, 6, 7."""
    from .ramif import hyperelliptic
    S = hyperelliptic(g)
    f = _lowest(S, 5)
    a = alpha
    out = [ExtractedCondition("f1^2 - f2", 5, gap_condition(S, f[1] * f[1] - f[2], 5),
                              _sym(2, 5, S), 2 * a(1) - a(2))]
    if g >= 6:
        out.append(ExtractedCondition("f1 f3 - f4", 9, gap_condition(S, f[1] * f[3] - f[4], 9),
                                      _sym(4, 9, S), a(1) + a(3) - a(4)))
        out.append(ExtractedCondition("f2^2 - f4", 9, gap_condition(S, f[2] * f[2] - f[4], 9),
                                      _sym(4, 9, S), 2 * a(2) - a(4)))
        out.append(ExtractedCondition("f1 f4 - f5", 11, gap_condition(S, f[1] * f[4] - f[5], 11),
                                      _sym(5, 11, S), a(1) + a(4) - a(5)))
    if g >= 7:
        out.append(ExtractedCondition("f2^2 - f1 f3", 9, gap_condition(S, f[2] * f[2] - f[1] * f[3], 9),
                                      coef_symbol(3, 1), 2 * a(2) - a(1) - a(3)))
    return S, out


def linear_rules(n, reducer=None):
    """alpha_j -> j alpha_1 for 2 <= j <= n."""
    reducer = reducer or Reducer()
    for j in range(2, n + 1):
        reducer.add(coef_symbol(j, 1), j * alpha(1))
    return reducer


def genus_seven_displays():
    """F1, F2, F3 coefficients and the nonlinear conditions at genus 7."""
    from .ramif import hyperelliptic
    S = hyperelliptic(7)
    f = {j: section_template(S, j, 3, 2 * j + 4) for j in range(1, 6)}
    a, b, c = alpha, beta, gamma
    F1 = f[1] * f[1] - f[2]
    F2 = f[1] * f[2] - f[3]
    F3 = f[1] * f[3] - f[4]
    displays = [
        ("[t^6]F1", F1.coefficient(6), 2 * b(1) + a(1) ** 2 - b(2)),
        ("[t^7]F1", F1.coefficient(7), 2 * c(1) + 2 * a(1) * b(1) - c(2)),
        ("[t^8]F2", F2.coefficient(8), b(1) + b(2) + a(1) * a(2) - b(3)),
        ("[t^9]F2", F2.coefficient(9), c(1) + c(2) + a(1) * b(2) + a(2) * b(1) - c(3)),
        ("[t^10]F3", F3.coefficient(10), b(1) + b(3) + a(1) * a(3) - b(4)),
        ("[t^11]F3", F3.coefficient(11), c(1) + c(3) + a(1) * b(3) + a(3) * b(1) - c(4)),
    ]
    red = linear_rules(5)
    q1 = eliminate(F1, 6, f[3])
    q2 = eliminate(F2, 8, f[4])
    q3 = eliminate(F3, 10, f[5])
    conds = [
        ExtractedCondition("[t^7](F1 - ([t^6]F1) f3)", 7, gap_condition(S, q1, 7, red),
                           coef_symbol(2, 3),
                           2 * c(1) + 2 * a(1) * b(1) - c(2) - a(3) * (2 * b(1) + a(1) ** 2 - b(2))),
        ExtractedCondition("[t^9](F2 - ([t^8]F2) f4)", 9, gap_condition(S, q2, 9, red),
                           coef_symbol(3, 3),
                           c(1) + c(2) + a(1) * b(2) + a(2) * b(1) - c(3)
                           - a(4) * (b(1) + b(2) + a(1) * a(2) - b(3))),
        ExtractedCondition("[t^11](F3 - ([t^10]F3) f5)", 11, gap_condition(S, q3, 11, red),
                           coef_symbol(4, 3)),
    ]
    return S, displays, conds


def genus_eight_chain():
    """The Q / Q-tilde elimination chain for <2,17>, sections f_1..f_6.

    Each step cancels the lowest surviving term lying in S with a monomial
    in the sections, and reads off the next gap coefficient.  Conditions
    found earlier are imposed (solved for their witness) before later
    lower-term checks.  Before Q3 the t^10 term of F3 has to be cancelled
    with f5, which produces the t^11 condition of the genus-7 case.
    """
    from .ramif import hyperelliptic
    S = hyperelliptic(8)
    order = 16
    f = _sections(S, 6, order)
    red = linear_rules(6)
    out = []

    def take(label, expr, rho, witness_j, expected_note=""):
        cond = gap_condition(S, expr, rho, red)
        w = _sym(witness_j, rho, S)
        red.impose(cond, w)
        out.append(ExtractedCondition(label, rho, cond, w, note=expected_note))
        return cond

    F1 = f[1] * f[1] - f[2]
    F2 = f[1] * f[2] - f[3]
    F3 = f[1] * f[3] - f[4]
    F4 = f[1] * f[5] - f[6]

    Q1 = eliminate(F1, 6, f[3])
    take("[t^7]Q1", Q1, 7, 2)
    Q2 = eliminate(F2, 8, f[4])
    take("[t^9]Q2", Q2, 9, 3)
    Q1t = eliminate(Q1, 8, f[4])
    take("[t^9]Q1~", Q1t, 9, 2)
    Q2t = eliminate(Q2, 10, f[1] * f[4])
    take("[t^11]Q2~", Q2t, 11, 3)
    P3 = eliminate(F3, 10, f[5])
    take("[t^11](F3 - ([t^10]F3) f5)", P3, 11, 4, "intermediate step, not listed at genus 8")
    Q3 = eliminate(P3, 12, f[1] * f[5])
    take("[t^13]Q3", Q3, 13, 4)
    Q3t = eliminate(Q3, 14, f[3] * f[4])
    take("[t^15]Q3~", Q3t, 15, 4)
    Q4 = eliminate(F4, 14, f[1] * f[6])
    take("[t^15]Q4", Q4, 15, 6)
    return S, out, red


CASES = {
    "3,8": case_three_eight,
    "3,10,17": case_three_ten_seventeen,
    "4,6,13": case_four_six_thirteen,
    "hyp5": lambda: case_hyperelliptic(5),
    "hyp6": lambda: case_hyperelliptic(6),
    "hyp7": lambda: case_hyperelliptic(7),
}


def run_case(case_id):
    """JSON-ready summary of one canned extraction."""
    if case_id == "hyp7-chain":
        S, displays, conds = genus_seven_displays()
        return {
            "semigroup": S.label(),
            "displays": [{"label": l, "value": p.normalized().text(),
                          "matches": p.same_up_to_sign(e)} for l, p, e in displays],
            "conditions": [c.to_dict() for c in conds],
        }
    if case_id == "hyp8-chain":
        S, conds, _ = genus_eight_chain()
        return {"semigroup": S.label(), "conditions": [c.to_dict() for c in conds]}
    if case_id not in CASES:
        raise KeyError(case_id)
    S, conds = CASES[case_id]()
    return {"semigroup": S.label(), "conditions": [c.to_dict() for c in conds]}


ALL_CASE_IDS = tuple(CASES) + ("hyp7-chain", "hyp8-chain")
