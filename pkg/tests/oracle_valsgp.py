"""A slow, independent enumerator of value semigroups used only by the tests.

Sets are grown point by point and pruned by sum/min closure alone; the
remaining axioms, the conductor and the genus are checked from their
definitions at the leaves.  No code from the package is used.
"""
from itertools import permutations, product


def _cap(p, c):
    return tuple(min(x, y) for x, y in zip(p, c))


def _members_ok(S, c):
    r = len(c)
    pts = sorted(S)
    for a in pts:
        for b in pts:
            if _cap(tuple(x + y for x, y in zip(a, b)), c) not in S:
                return False
            if tuple(map(min, a, b)) not in S:
                return False
    for a in pts:
        if any(x == 0 for x in a) and any(a):
            return False
    for a in pts:
        for b in pts:
            for i in range(r):
                if a[i] != b[i] or a[i] >= c[i] or a == b:
                    continue
                if not any(q[i] > a[i] and all(
                        (q[j] == min(a[j], b[j]) if a[j] != b[j] else q[j] >= a[j])
                        for j in range(r) if j != i) for q in pts):
                    return False
    for i in range(r):
        lower = c[:i] + (c[i] - 1,) + c[i + 1:]
        if all(_cap(p, c) in S for p in product(*(range(lo, hi + 1) for lo, hi in zip(lower, c)))):
            return False
    return True


def _longest_chain(S, c):
    pts = sorted(S, key=sum)
    longest = {}
    for p in pts:
        below = [longest[q] for q in longest if q != p and all(x <= y for x, y in zip(q, p))]
        longest[p] = 1 + max(below) if below else 0
    return longest.get(c, -1)


def _genus(S, c):
    return sum(c) - _longest_chain(S, c)


def canonical(S, r):
    return min(tuple(sorted(tuple(p[k] for k in perm) for p in S)) for perm in permutations(range(r)))


def value_semigroups(g, r, bound=None):
    """Canonical element tuples of every genus-g value semigroup with r branches."""
    top = bound or 2 * g
    found = set()
    for c in product(range(1, top + 1), repeat=r):
        if list(c) != sorted(c):
            continue
        inner = sorted((p for p in product(*(range(1, ci + 1) for ci in c)) if p != c), key=lambda p: (sum(p), p))
        base = {(0,) * r, c}

        def closed_with(S):
            todo = list(S)
            S = set(S)
            while todo:
                a = todo.pop()
                for b in list(S):
                    for q in (_cap(tuple(x + y for x, y in zip(a, b)), c), tuple(map(min, a, b))):
                        if q not in S:
                            S.add(q)
                            todo.append(q)
            return S

        def dfs(k, S, banned):
            # chains only lengthen as points are added
            if sum(c) - _longest_chain(S, c) < g:
                return
            if sum(c) - _longest_chain(set(inner[k:]) | S, c) > g:
                return
            if k == len(inner):
                if _genus(S, c) == g and _members_ok(S, c):
                    found.add(canonical(S, r))
                return
            p = inner[k]
            if p in S:
                dfs(k + 1, S, banned)
                return
            if p not in banned:
                T = closed_with(S | {p})
                if not (T & banned):
                    dfs(k + 1, T, banned)
            dfs(k + 1, S, banned | {p})

        dfs(0, closed_with(base), frozenset())
    return found
