"""Subset and enumeration kernels behind the DU packer.

Items are indexed ``0..n-1``; subsets are bitmasks over those indices. Every
kernel comes in a numba flavour (``*_nb``) and a vectorised numpy flavour
(``*_np``); the public name dispatches on :data:`vranplan._accel.JIT_ENABLED`.
"""
import numpy as np

from ._accel import JIT_ENABLED, njit

MIN_DUS = 0
MAX_PROFIT = 1
INF = np.int64(1 << 30)


def _mask_bits(n):
    masks = np.arange(1 << n, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.float64)


# -- single-DU feasibility ----------------------------------------------------

@njit
def feasible_masks_nb(cells, fr1, fr2, max_cells, max_fr1, max_fr2):
    n = cells.shape[0]
    size = 1 << n
    c = np.zeros(size, np.float64)
    a = np.zeros(size, np.float64)
    b = np.zeros(size, np.float64)
    ok = np.zeros(size, np.bool_)
    ok[0] = True
    for m in range(1, size):
        low = m & -m
        i = 0
        while (low >> i) != 1:
            i += 1
        r = m ^ low
        c[m] = c[r] + cells[i]
        a[m] = a[r] + fr1[i]
        b[m] = b[r] + fr2[i]
        ok[m] = c[m] <= max_cells and a[m] < max_fr1 and b[m] <= max_fr2
    return ok


def feasible_masks_np(cells, fr1, fr2, max_cells, max_fr1, max_fr2):
    bits = _mask_bits(cells.shape[0])
    return (bits @ cells <= max_cells) & (bits @ fr1 < max_fr1) & (bits @ fr2 <= max_fr2)


# -- minimum partition into feasible subsets ----------------------------------

@njit
def min_partition_nb(ok, n):
    size = 1 << n
    f = np.full(size, INF, np.int64)
    choice = np.zeros(size, np.int64)
    f[0] = 0
    for m in range(1, size):
        low = m & -m
        rest = m ^ low
        sub = rest
        while True:
            s = sub | low
            if ok[s]:
                cand = f[m ^ s] + 1
                if cand < f[m]:
                    f[m] = cand
                    choice[m] = s
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return f, choice


def min_partition_np(ok, n):
    size = 1 << n
    f = np.full(size, INF, np.int64)
    choice = np.zeros(size, np.int64)
    f[0] = 0
    feas = np.flatnonzero(ok).astype(np.int64)
    feas = feas[feas > 0][::-1]
    for m in range(1, size):
        low = m & -m
        cand = feas[((feas & low) != 0) & ((feas & ~m) == 0)]
        if cand.size == 0:
            continue
        vals = f[m ^ cand] + 1
        k = int(np.argmin(vals))
        if vals[k] < INF:
            f[m] = vals[k]
            choice[m] = cand[k]
    return f, choice


# -- exhaustive oracle --------------------------------------------------------

@njit
def _disabled_less(a, b, n):
    # lexicographic order of the sorted index lists encoded by masks a and b
    for i in range(n):
        ia = (a >> i) & 1
        ib = (b >> i) & 1
        if ia != ib:
            other = b if ia == 1 else a
            above = (other >> (i + 1)) != 0
            return above if ia == 1 else not above
    return False


@njit
def enumerate_nb(cells, fr1, fr2, profit, max_cells, max_fr1, max_fr2, n_bins, mode):
    """Depth-first walk over every canonical assignment (restricted growth labels).

    Label -1 means disabled (MAX_PROFIT only). Branches are cut only when a
    DU ceiling is already exceeded, never by objective bounds.
    """
    n = cells.shape[0]
    full = (1 << n) - 1
    lab = np.full(n, -1, np.int64)
    nxt = np.zeros(n + 1, np.int64)
    opened = np.zeros(n, np.bool_)
    lc = np.zeros(n_bins + 1, np.float64)
    l1 = np.zeros(n_bins + 1, np.float64)
    l2 = np.zeros(n_bins + 1, np.float64)

    best = np.full(n, -1, np.int64)
    best_obj = -1.0
    best_nb = INF
    best_dis = full
    found = False

    nb = 0
    prof = 0.0
    keep = 0
    depth = 0
    first = 1 if mode == MIN_DUS else 0
    nxt[0] = first
    while True:
        if depth == n:
            if mode == MIN_DUS:
                if nb < best_nb:
                    best_nb = nb
                    best_obj = float(nb)
                    best[:] = lab
                    found = True
            else:
                dis = full ^ keep
                better = False
                if not found or prof > best_obj:
                    better = True
                elif prof == best_obj:
                    if nb < best_nb:
                        better = True
                    elif nb == best_nb and _disabled_less(dis, best_dis, n):
                        better = True
                if better:
                    best_obj = prof
                    best_nb = nb
                    best_dis = dis
                    best[:] = lab
                    found = True
            depth -= 1
            if depth < 0:
                break
            # undo the assignment made at this depth
            if lab[depth] >= 0:
                bb = lab[depth]
                lc[bb] -= cells[depth]
                l1[bb] -= fr1[depth]
                l2[bb] -= fr2[depth]
                prof -= profit[depth]
                keep ^= 1 << depth
                if opened[depth]:
                    nb -= 1
                    opened[depth] = False
            continue

        c = nxt[depth]
        limit = nb + 1 if nb < n_bins else nb
        if c > limit:
            depth -= 1
            if depth < 0:
                break
            if lab[depth] >= 0:
                bb = lab[depth]
                lc[bb] -= cells[depth]
                l1[bb] -= fr1[depth]
                l2[bb] -= fr2[depth]
                prof -= profit[depth]
                keep ^= 1 << depth
                if opened[depth]:
                    nb -= 1
                    opened[depth] = False
            continue
        nxt[depth] = c + 1
        if c == 0:
            lab[depth] = -1
            depth += 1
            nxt[depth] = first
            continue
        bb = c - 1
        if (lc[bb] + cells[depth] > max_cells or l1[bb] + fr1[depth] >= max_fr1
                or l2[bb] + fr2[depth] > max_fr2):
            continue
        lc[bb] += cells[depth]
        l1[bb] += fr1[depth]
        l2[bb] += fr2[depth]
        prof += profit[depth]
        keep |= 1 << depth
        lab[depth] = bb
        if bb == nb:
            nb += 1
            opened[depth] = True
        depth += 1
        if depth <= n - 1:
            nxt[depth] = first
    return found, best, best_obj, best_nb


def _canonical(labels):
    out = np.full(labels.shape[0], -1, np.int64)
    seen = {}
    for i, b in enumerate(labels):
        if b >= 0:
            out[i] = seen.setdefault(int(b), len(seen))
    return out


def _lex_key(dis_mask, n):
    return [i for i in range(n) if (dis_mask >> i) & 1] + [-1] * n


def enumerate_np(cells, fr1, fr2, profit, max_cells, max_fr1, max_fr2, n_bins, mode, chunk=1 << 18):
    """Same contract as :func:`enumerate_nb`, by brute labelling in numpy chunks.

    Walks all ``(n_bins+1)**n`` labellings (``n_bins**n`` for MIN_DUS) without
    symmetry reduction, so it is only practical for modest instances.
    """
    n = cells.shape[0]
    full = (1 << n) - 1
    if n == 0:
        return True, np.zeros(0, np.int64), 0.0, 0
    base = n_bins if mode == MIN_DUS else n_bins + 1
    total = base ** n
    pows = base ** np.arange(n, dtype=np.int64)
    weights = (1 << np.arange(n, dtype=np.int64))

    found = False
    best = None
    best_obj = -1.0
    best_nb = int(INF)
    best_dis = full
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (codes[:, None] // pows) % base
        labels = digits if mode == MIN_DUS else digits - 1
        ok = np.ones(codes.shape[0], bool)
        used = np.zeros(codes.shape[0], np.int64)
        for b in range(n_bins):
            on = (labels == b).astype(np.float64)
            ok &= (on @ cells <= max_cells) & (on @ fr1 < max_fr1) & (on @ fr2 <= max_fr2)
            used += on.any(axis=1)
        if not ok.any():
            continue
        labels, used = labels[ok], used[ok]
        if mode == MIN_DUS:
            k = int(np.argmin(used))
            if used[k] < best_nb:
                best_nb = int(used[k])
                best_obj = float(best_nb)
                best = labels[k]
                found = True
            continue
        kept = labels >= 0
        prof = kept.astype(np.float64) @ profit
        top = prof.max()
        if found and top < best_obj:
            continue
        sel = prof == top
        fewest = used[sel].min()
        sel &= used == fewest
        dis = (~kept[sel]).astype(np.int64) @ weights
        cand_dis = min(np.unique(dis).tolist(), key=lambda d: _lex_key(d, n))
        if (not found or top > best_obj or fewest < best_nb
                or (fewest == best_nb and _lex_key(cand_dis, n) < _lex_key(best_dis, n))):
            idx = np.flatnonzero(sel)[np.flatnonzero(dis == cand_dis)[0]]
            best = labels[idx]
            best_obj = float(top)
            best_nb = int(fewest)
            best_dis = int(cand_dis)
            found = True
    if not found:
        return False, np.full(n, -1, np.int64), best_obj, int(INF)
    return True, _canonical(best), best_obj, best_nb


if JIT_ENABLED:
    feasible_masks = feasible_masks_nb
    min_partition = min_partition_nb
    enumerate_assignments = enumerate_nb
else:
    feasible_masks = feasible_masks_np
    min_partition = min_partition_np
    enumerate_assignments = enumerate_np
