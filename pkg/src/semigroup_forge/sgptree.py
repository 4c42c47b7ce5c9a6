"""The tree of numerical semigroups, ordered by genus."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor

from . import kernels
from .errors import CapExceeded
from .numsgp import NumericalSemigroup, natural_numbers

GENUS_CAP = 25


def _check_cap(g, cap=GENUS_CAP):
    if g > cap:
        raise CapExceeded(f"genus {g} is above the cap {cap}")
    if g < 0:
        raise ValueError("genus must be nonnegative")


def children(S: NumericalSemigroup):
    """Remove each minimal generator b >= c(S); ordered by b."""
    out = []
    for b in S.minimal_generators:
        if b >= S.conductor:
            out.append(NumericalSemigroup(S.gaps + (b,), b + 1))
    return out


def _walk(S, max_genus):
    stack = [S]
    while stack:
        node = stack.pop()
        yield node.genus, node
        if node.genus < max_genus:
            stack.extend(reversed(children(node)))


def _walk_list(args):
    gaps, max_genus = args
    S = NumericalSemigroup(tuple(gaps), gaps[-1] + 1 if gaps else 0)
    return [node.gaps for _, node in _walk(S, max_genus)]


def enumerate_tree(max_genus, jobs=1, cap=GENUS_CAP):
    """Every semigroup of genus <= max_genus once, depth-first by removed generator."""
    _check_cap(max_genus, cap)
    if jobs <= 1 or max_genus < 4:
        yield from _walk(natural_numbers(), max_genus)
        return
    # split at genus 3: the prefix is emitted in order, subtrees are farmed out
    split = 3
    prefix, roots = [], []
    stack = [natural_numbers()]
    while stack:
        node = stack.pop()
        if node.genus == split:
            roots.append(node)
            prefix.append(None)
            continue
        prefix.append(node)
        stack.extend(reversed(children(node)))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = iter(pool.map(_walk_list, [(r.gaps, max_genus) for r in roots]))
        for node in prefix:
            if node is not None:
                yield node.genus, node
                continue
            for gaps in next(parts):
                S = NumericalSemigroup(gaps, gaps[-1] + 1)
                yield S.genus, S


enumerate = enumerate_tree  # noqa: A001  (public name used by callers)


def semigroups_of_genus(g):
    return [S for genus, S in enumerate_tree(g) if genus == g]


def count_by_genus(max_genus, cap=GENUS_CAP):
    """Per-genus counts through the accelerated kernel."""
    _check_cap(max_genus, cap)
    return [int(x) for x in kernels.count_tree(max_genus)]


def oracle_gap_sets(g):
    """Independent check: every closed g-subset of {1..2g}, as sorted gap tuples."""
    out = []
    for mask in kernels.closed_gap_masks(g):
        mask = int(mask)
        out.append(tuple(k + 1 for k in range(2 * g) if (mask >> k) & 1))
    return sorted(out)


def is_hyperelliptic(S):
    return S.contains(2)


def weight_outliers(g, cap=GENUS_CAP):
    """Nonhyperelliptic semigroups of genus exactly g with weight >= 2g."""
    _check_cap(g, cap)
    return [S for S in semigroups_of_genus(g)
            if not is_hyperelliptic(S) and S.weight() >= 2 * g]


def jsonl_record(S):
    return json.dumps({
        "genus": S.genus,
        "gens": list(S.minimal_generators),
        "gaps": list(S.gaps),
        "weight": S.weight(),
        "hyperelliptic": is_hyperelliptic(S),
    }, sort_keys=True)
