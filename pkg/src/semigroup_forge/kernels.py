"""Hot loops, each in a numba build and a numpy build.

Dispatchers at the bottom pick one according to ``_accel.jit_enabled()``.
Both builds must return identical arrays; the test-suite checks this.

* tree counting works on decomposition numbers: ``dec[x]`` is the number
  of pairs ``a <= b`` in S with ``a + b = x``.  Then x is in S iff
  ``dec[x] > 0`` and x is a minimal generator iff ``dec[x] == 1``.
* the gap-subset oracle scans every g-subset of ``{1..2g}`` and keeps the
  closed ones.  It shares no code with the tree.
* box closure saturates a dense 0/1 array over ``[0, B_1] x ... x [0, B_r]``
  under capped addition, componentwise min and least-witness repair of the
  second strong-min axiom.
"""
import numpy as np

from ._accel import jit_enabled, njit


# ---------------------------------------------------------------- tree counts

def _root_decomposition(size):
    return np.arange(size, dtype=np.int64) // 2 + 1


@njit
def _count_tree_jit(max_genus):
    counts = np.zeros(max_genus + 1, np.int64)
    counts[0] = 1
    if max_genus == 0:
        return counts
    size = 3 * max_genus + 3
    dec = np.zeros((max_genus + 1, size), np.int64)
    for x in range(size):
        dec[0, x] = x // 2 + 1
    cond = np.zeros(max_genus + 1, np.int64)
    mult = np.zeros(max_genus + 1, np.int64)
    nxt = np.zeros(max_genus + 1, np.int64)
    mult[0] = 1
    nxt[0] = 1
    depth = 0
    while depth >= 0:
        hi = min(size, cond[depth] + mult[depth] + 1)
        x = nxt[depth]
        while x < hi and dec[depth, x] != 1:
            x += 1
        if x >= hi:
            depth -= 1
            continue
        nxt[depth] = x + 1
        counts[depth + 1] += 1
        if depth + 1 == max_genus:
            continue
        child = depth + 1
        for y in range(size):
            dec[child, y] = dec[depth, y]
        for y in range(x, size):
            if dec[depth, y - x] > 0:
                dec[child, y] -= 1
        cond[child] = x + 1
        m = mult[depth]
        if x == m:
            m = x + 1
            while dec[child, m] == 0:
                m += 1
        mult[child] = m
        nxt[child] = x + 1
        depth = child
    return counts


def _count_tree_np(max_genus):
    counts = np.zeros(max_genus + 1, np.int64)
    counts[0] = 1
    if max_genus == 0:
        return counts
    size = 3 * max_genus + 3
    stack = [(_root_decomposition(size), 0, 1, 0)]
    while stack:
        dec, c, m, g = stack.pop()
        lo = max(c, 1)
        hi = min(size, c + m + 1)
        gens = np.flatnonzero(dec[lo:hi] == 1) + lo
        counts[g + 1] += gens.size
        if g + 1 == max_genus:
            continue
        for x in gens[::-1]:
            child = dec.copy()
            child[x:] -= dec[: size - x] > 0
            nm = m
            if x == m:
                nm = x + 1 + int(np.flatnonzero(child[x + 1:] > 0)[0])
            stack.append((child, int(x) + 1, nm, g + 1))
    return counts


# ------------------------------------------------------------ subset oracle

@njit
def _gap_mask_closed(mask, g):
    span = 2 * g
    pop = 0
    v = mask
    while v:
        v &= v - 1
        pop += 1
    if pop != g:
        return False
    for s in range(1, span + 1):
        if (mask >> (s - 1)) & 1:
            continue
        for t in range(s, span - s + 1):
            if (mask >> (t - 1)) & 1:
                continue
            if (mask >> (s + t - 1)) & 1:
                return False
    return True


@njit
def _closed_gap_masks_jit(g):
    hits = 0
    for mask in range(1 << (2 * g)):
        if _gap_mask_closed(mask, g):
            hits += 1
    out = np.empty(hits, np.int64)
    hits = 0
    for mask in range(1 << (2 * g)):
        if _gap_mask_closed(mask, g):
            out[hits] = mask
            hits += 1
    return out


def _closed_gap_masks_np(g):
    span = 2 * g
    masks = np.arange(1 << span, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(span)) & 1).astype(bool)
    keep = bits.sum(axis=1) == g
    masks, bits = masks[keep], bits[keep]
    ok = np.ones(masks.size, dtype=bool)
    for s in range(1, span + 1):
        for t in range(s, span - s + 1):
            ok &= ~(~bits[:, s - 1] & ~bits[:, t - 1] & bits[:, s + t - 1])
    return masks[ok]


# -------------------------------------------------------------- box closure

def _strides(bound):
    dims = np.asarray(bound, dtype=np.int64) + 1
    strides = np.ones(dims.size, np.int64)
    for i in range(dims.size - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    return dims, strides


@njit
def _above_tables_jit(out, coords, bound, strides):
    # up[D, p]: some member q >= p agrees with p on every axis in the bitmask D
    r = bound.shape[0]
    total = out.shape[0]
    up = np.zeros((1 << r, total), np.uint8)
    for D in range(1 << r):
        for idx in range(total - 1, -1, -1):
            v = out[idx]
            if v == 0:
                for k in range(r):
                    if (D >> k) & 1 == 0 and coords[idx, k] < bound[k]:
                        if up[D, idx + strides[k]]:
                            v = 1
                            break
            up[D, idx] = v
    return up


@njit
def _saturate_jit(out, coords, bound, strides, frontier):
    # semi-naive closure under capped sums and minima
    r = bound.shape[0]
    members = list(np.flatnonzero(out))
    todo = list(frontier)
    while len(todo) > 0:
        a = todo.pop()
        for bi in range(len(members)):
            b = members[bi]
            sidx = 0
            midx = 0
            for i in range(r):
                v = coords[a, i] + coords[b, i]
                if v > bound[i]:
                    v = bound[i]
                sidx += v * strides[i]
                midx += min(coords[a, i], coords[b, i]) * strides[i]
            if out[sidx] == 0:
                out[sidx] = 1
                members.append(sidx)
                todo.append(sidx)
            if out[midx] == 0:
                out[midx] = 1
                members.append(midx)
                todo.append(midx)


@njit
def _first_sm2_repair_jit(out, coords, bound, strides):
    r = bound.shape[0]
    up = _above_tables_jit(out, coords, bound, strides)
    members = np.flatnonzero(out)
    m = members.shape[0]
    for ai in range(m):
        a = members[ai]
        for bi in range(ai + 1, m):
            b = members[bi]
            D = 0
            for j in range(r):
                if coords[a, j] != coords[b, j]:
                    D |= 1 << j
            for i in range(r):
                av = coords[a, i]
                if (D >> i) & 1 or av >= bound[i]:
                    continue
                p = 0
                for j in range(r):
                    if j == i:
                        p += (av + 1) * strides[j]
                    else:
                        p += min(coords[a, j], coords[b, j]) * strides[j]
                if up[D, p] == 0:
                    return p
    return -1


@njit
def _close_box_jit(bound, strides, flags):
    r = bound.shape[0]
    total = flags.shape[0]
    coords = np.empty((total, r), np.int64)
    for idx in range(total):
        rem = idx
        for i in range(r):
            coords[idx, i] = rem // strides[i]
            rem = rem % strides[i]
    out = flags.copy()
    frontier = np.flatnonzero(out)
    while True:
        _saturate_jit(out, coords, bound, strides, frontier)
        repair = _first_sm2_repair_jit(out, coords, bound, strides)
        if repair < 0:
            return out
        out[repair] = 1
        frontier = np.array([repair], np.int64)


def _close_box_np(bound, strides, flags):
    bound = np.asarray(bound, dtype=np.int64)
    dims = bound + 1
    out = flags.astype(bool)
    frontier = list(np.flatnonzero(out))
    while True:
        members = np.flatnonzero(out)
        pts = np.stack(np.unravel_index(members, dims), axis=1)
        while frontier:
            a = np.asarray(np.unravel_index(frontier.pop(), dims))
            hit = np.concatenate([np.minimum(pts + a, bound) @ strides,
                                  np.minimum(pts, a) @ strides])
            fresh = np.unique(hit[~out[hit]])
            if fresh.size:
                out[fresh] = True
                frontier.extend(int(x) for x in fresh)
                pts = np.concatenate([pts, np.stack(np.unravel_index(fresh, dims), axis=1)])
        members = np.flatnonzero(out)
        pts = np.stack(np.unravel_index(members, dims), axis=1)
        repair = _first_sm2_repair_np(pts, bound, strides, out)
        if repair is None:
            return out.astype(np.uint8)
        out[repair] = True
        frontier = [repair]


def _above_tables_np(out, bound):
    r = bound.size
    box = out.reshape(tuple(int(d) for d in bound + 1))
    tables = []
    for D in range(1 << r):
        u = box.copy()
        for k in range(r):
            if not (D >> k) & 1:
                u = np.flip(np.maximum.accumulate(np.flip(u, k), axis=k), k)
        tables.append(u.ravel())
    return np.stack(tables)


def _first_sm2_repair_np(pts, bound, strides, out):
    r = bound.size
    up = _above_tables_np(out, bound)
    weights = 1 << np.arange(r)
    for ka in range(len(pts) - 1):
        a, rest = pts[ka], pts[ka + 1:]
        diff = rest != a
        D = diff @ weights
        least = np.minimum(rest, a)
        for kb in range(len(rest)):
            for i in range(r):
                if diff[kb, i] or a[i] >= bound[i]:
                    continue
                p = least[kb].copy()
                p[i] += 1
                idx = int(p @ strides)
                if not up[D[kb], idx]:
                    return idx
    return None


# ---------------------------------------------------------------- dispatch

def count_tree(max_genus, jit=None):
    """Number of numerical semigroups of each genus 0..max_genus."""
    use = jit_enabled() if jit is None else jit
    fn = _count_tree_jit if use else _count_tree_np
    return np.asarray(fn(int(max_genus)), dtype=np.int64)


def closed_gap_masks(g, jit=None):
    """Bitmasks (bit k-1 <-> k is a gap) of every genus-g gap set, ascending."""
    use = jit_enabled() if jit is None else jit
    fn = _closed_gap_masks_jit if use else _closed_gap_masks_np
    return np.sort(np.asarray(fn(int(g)), dtype=np.int64))


def close_box(bound, flags, jit=None):
    """Saturate ``flags`` (flattened 0/1 box of shape bound+1) under the value-semigroup rules."""
    use = jit_enabled() if jit is None else jit
    bound = np.asarray(bound, dtype=np.int64)
    _, strides = _strides(bound)
    flags = np.ascontiguousarray(flags, dtype=np.uint8)
    if use:
        return _close_box_jit(bound, strides, flags)
    return _close_box_np(bound, strides, flags)


def box_strides(bound):
    return _strides(bound)
