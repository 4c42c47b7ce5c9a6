"""Ramification of a unibranch point with value semigroup S."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .numsgp import from_generators


@dataclass(frozen=True)
class RamificationProfile:
    """Vanishing orders a_0 = 0 < a_1 < ... < a_n of a linear series at a point."""

    orders: tuple

    def __post_init__(self):
        if not self.orders or self.orders[0] != 0:
            raise ValueError("orders must start at 0")
        if any(b <= a for a, b in zip(self.orders, self.orders[1:])):
            raise ValueError("orders must be strictly increasing")

    @property
    def alpha(self):
        return tuple(a - i for i, a in enumerate(self.orders))

    @property
    def total(self):
        return sum(self.alpha)

    def dominates(self, other):
        """Pointwise a_i >= b_i; a dominating profile ramifies at least as much."""
        return len(self.orders) == len(other.orders) and all(
            a >= b for a, b in zip(self.orders, other.orders))

    @classmethod
    def minimal(cls, S, n):
        return cls((0,) + tuple(S.nth_element(i) for i in range(1, n + 1)))


@dataclass(frozen=True)
class RamificationSequences:
    R: tuple
    TR: tuple


def r_P(S, n):
    """sum_{i=1..n} (m_i - i)."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(S.nth_element(i) - i for i in range(1, n + 1))


def partial_weight(S, n):
    """Boxes in the first n columns of the Dyck diagram: n*g - r_P."""
    return n * S.genus - r_P(S, n)


def check_unibranch_bound(S, n):
    """r_P - 1 >= (n - 2) g."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return r_P(S, n) - 1 >= (n - 2) * S.genus


def ramification_sequences(S, length):
    """R[i] = s_i - i and running sums, for s_0 = 0 < s_1 < ..."""
    R = [0] + [S.nth_element(i) - i for i in range(1, length)]
    TR, acc = [], 0
    for x in R:
        acc += x
        TR.append(acc)
    return RamificationSequences(tuple(R), tuple(TR))


def hyperelliptic(g):
    return from_generators([2, 2 * g + 1]) if g > 0 else from_generators([1])


def hyperelliptic_total(i, g):
    """Closed form of TR[i] for <2, 2g+1>."""
    return comb(i + 1, 2) if i <= g else i * g - comb(g, 2)


def hyperelliptic_threshold(i):
    """floor((i+1) i / (2 (i-2))), the closed-form threshold genus."""
    if i < 3:
        raise ValueError("i must be at least 3")
    return (i + 1) * i // (2 * (i - 2))


def least_genus_within_ramification(i, max_genus=30):
    """Least g <= max_genus with TR[i] <= (i-2) g for <2,2g+1>, read off the sequences."""
    if i < 3:
        raise ValueError("i must be at least 3")
    for g in range(1, max_genus + 1):
        if ramification_sequences(hyperelliptic(g), i + 1).TR[i] <= (i - 2) * g:
            return g
    return None


def N_R(g):
    """Conditions beyond ramification needed by the hyperelliptic semigroup."""
    if g < 3:
        raise ValueError("g must be at least 3")
    return g * (g - 2) + 1 - g * (g + 1) // 2


def sweep(max_genus, tree=None):
    """Check the unibranch bound on every semigroup with W <= 2g-1, 3 <= n <= 2g.

    Returns (checked, failures) where failures lists (gaps, n).
    """
    from .sgptree import enumerate_tree

    checked, failures = 0, []
    nodes = tree if tree is not None else (S for _, S in enumerate_tree(max_genus))
    for S in nodes:
        g = S.genus
        if g == 0 or S.weight() > 2 * g - 1:
            continue
        for n in range(3, 2 * g + 1):
            checked += 1
            if not check_unibranch_bound(S, n):
                failures.append((S.gaps, n))
    return checked, failures
