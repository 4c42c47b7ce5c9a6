"""Singularity models used by the ledgers: truncations and their published generator sets."""
from __future__ import annotations

from dataclasses import dataclass

from .valsgp import INF, GeneratorTuple, ValueTruncation, _canonical_gamma, _gamma_key


@dataclass(frozen=True)
class Model:
    case_id: str
    description: str
    points: tuple
    genus: int
    gamma: tuple = None       # as printed; None when no set is displayed
    embedding: int = None     # m(S*) when stated

    @property
    def truncation(self):
        return ValueTruncation.from_points(((0,) * len(self.points[0]),) + self.points)

    def printed_gamma(self):
        if self.gamma is None:
            return None
        return tuple(GeneratorTuple.of(g) for g in self.gamma)


MODELS = {
    "1": Model("1", "tacnode", ((1, 1), (2, 2)), 2, ((1, 1), (2, INF))),
    "2": Model("2", "smooth branch tangent to a cusp", ((1, 2), (2, 3)), 3,
               ((1, 2), (2, INF), (INF, 3)), embedding=3),
    "3": Model("3", "oscnode", ((1, 1), (2, 2), (3, 3)), 3, ((1, 1), (INF, 3))),
    "4": Model("4", "two cusps sharing a tangent", ((1, 2), (1, 3), (2, 2), (2, 4)), 3,
               ((1, 3), (INF, 2))),
    "5": Model("5", "three branches, two tangent", ((1, 1, 1), (2, 2, 1)), 3),
    "6": Model("6", "planar triple point",
               ((1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2)), 3, embedding=2),
    "7": Model("7", "smooth branch with high contact to a <3,4,5> branch", ((1, 3), (2, 4)), 4,
               ((1, 3), (2, INF), (INF, 4), (INF, 5))),
    "node": Model("node", "node", ((1, 1),), 1, ((1, INF), (INF, 1))),
    "equune": Model("equune", "strict-modulus genus-4 semigroup",
                    ((1, 2), (1, 4), (1, 5), (2, 2), (2, 4), (2, 6)), 4),
}

GAMMA_CASES = ("1", "2", "3", "4", "7")


def same_gamma(found, printed, T):
    """Equal after moving both sets to their least form under Aut(T)."""
    return _gamma_key(_canonical_gamma(found, T)) == _gamma_key(_canonical_gamma(printed, T))
