"""Numba kernels for the threshold binary search and the selection passes.

Numeric contract (relied on by tests and by the batch/single-row equivalence
guarantee): row values are float32; the bracket endpoints and the threshold
are float32; the midpoint is computed in float64 from the two endpoints and
rounded once back to float32 (avoids overflow for huge-magnitude rows while
keeping every comparison a 32-bit comparison). The loop condition
``max - min > eps`` is evaluated in float64, which is exact for float32
operands.
"""

import numpy as np
from numba import njit

F32 = np.float32
F64 = np.float64

# Exit reason codes (mirrored by select.ExitReason).
EXIT_COUNT_EQUALS_K = 1
EXIT_INTERVAL_BELOW_EPSILON = 2
EXIT_MAX_ITER_REACHED = 3
EXIT_HARD_CAP_REACHED = 4
EXIT_DEGENERATE_ROW = 5


@njit(cache=True, nogil=True)
def row_min_max(v):
    mn = v[0]
    mx = v[0]
    for i in range(1, v.shape[0]):
        x = v[i]
        if x < mn:
            mn = x
        elif x > mx:
            mx = x
    return mn, mx


@njit(cache=True, nogil=True)
def count_ge(v, t):
    c = 0
    for i in range(v.shape[0]):
        if v[i] >= t:
            c += 1
    return c


@njit(cache=True, nogil=True)
def exact_search(v, k, eps_rel, hard_cap):
    """Bisect [min, max] until the count at the threshold hits k.

    Exits when cnt == k, when the bracket width drops to eps = eps_rel * max,
    when the midpoint stops making progress (bracket already at float
    resolution), or at hard_cap iterations.

    Returns (thres, mn, mx, cnt, exit_iter, reason); exit_iter counts executed
    loop bodies, 0 meaning the loop never ran (degenerate row).
    """
    mn, mx = row_min_max(v)
    eps = F64(eps_rel) * F64(mx)
    thres = mn
    cnt = v.shape[0]
    it = 0
    while True:
        if not (F64(mx) - F64(mn) > eps):
            if it == 0:
                return thres, mn, mx, cnt, it, EXIT_DEGENERATE_ROW
            return thres, mn, mx, cnt, it, EXIT_INTERVAL_BELOW_EPSILON
        if it >= hard_cap:
            return thres, mn, mx, cnt, it, EXIT_HARD_CAP_REACHED
        it += 1
        mid = F32((F64(mn) + F64(mx)) * 0.5)
        thres = mid
        cnt = count_ge(v, thres)
        if cnt == k:
            return thres, mn, mx, cnt, it, EXIT_COUNT_EQUALS_K
        elif cnt < k:
            if mid == mx:  # assignment would not shrink the bracket
                return thres, mn, mx, cnt, it, EXIT_INTERVAL_BELOW_EPSILON
            mx = mid
        else:
            if mid == mn:
                return thres, mn, mx, cnt, it, EXIT_INTERVAL_BELOW_EPSILON
            mn = mid


@njit(cache=True, nogil=True)
def early_search(v, k, max_iter):
    """Run exactly max_iter bisection steps; ties (cnt == k) raise min.

    Returns (mn, mx, exit_iter, reason). A constant row skips the loop.
    """
    mn, mx = row_min_max(v)
    if not (mx > mn):
        return mn, mx, 0, EXIT_DEGENERATE_ROW
    for _ in range(max_iter):
        mid = F32((F64(mn) + F64(mx)) * 0.5)
        cnt = count_ge(v, mid)
        if cnt < k:
            mx = mid
        else:
            mn = mid
    return mn, mx, max_iter, EXIT_MAX_ITER_REACHED


@njit(cache=True, nogil=True)
def select_threshold(v, k, thres, lo, out_vals, out_idx):
    """Select k elements: all with v >= thres, filled up from [lo, thres).

    If at least k elements clear thres, the first k of them in index order are
    taken. Otherwise every element >= thres is taken and the shortfall is
    covered by the first elements of [lo, thres) in index order. Output is
    emitted in ascending index order. Returns the number written (== k
    whenever the caller guarantees count(v >= lo) >= k).
    """
    cnt = count_ge(v, thres)
    j = 0
    if cnt >= k:
        for i in range(v.shape[0]):
            if v[i] >= thres:
                out_idx[j] = i
                out_vals[j] = v[i]
                j += 1
                if j == k:
                    break
    else:
        # Find the index bound of the last supplement taken so the emitting
        # pass below can stay a single ascending sweep.
        need = k - cnt
        bound = -1
        seen = 0
        for i in range(v.shape[0]):
            if lo <= v[i] < thres:
                seen += 1
                if seen == need:
                    bound = i
                    break
        for i in range(v.shape[0]):
            x = v[i]
            if x >= thres or (i <= bound and lo <= x < thres):
                out_idx[j] = i
                out_vals[j] = x
                j += 1
                if j == k:
                    break
    return j


@njit(cache=True, nogil=True)
def select_exact(v, k, thres, mn, mx, cnt, full_precision, degenerate, out_vals, out_idx):
    """Selection pass after exact_search.

    In full-precision mode (eps_rel == 0) an exit with cnt > k means the
    bracket collapsed with duplicated borderline values still unsplit; those
    duplicates all sit in [mn, mx), so thresholding at mx and filling from
    [mn, mx) keeps the selected value multiset exact. Degenerate rows keep the
    literal threshold (mn), which selects the first k elements.
    """
    t = thres
    if cnt > k and full_precision and not degenerate:
        t = mx
    return select_threshold(v, k, t, mn, out_vals, out_idx)


@njit(cache=True, nogil=True)
def exact_topk_chunk(data, k, eps_rel, hard_cap, out_vals, out_idx, out_iters, out_reasons):
    """Exact top-k over every row of a chunk; results land in the row's slot."""
    m = data.shape[1]
    row = np.empty(m, F32)  # per-worker staging buffer
    for r in range(data.shape[0]):
        for j in range(m):
            row[j] = data[r, j]
        if k == m:
            for j in range(m):
                out_vals[r, j] = row[j]
                out_idx[r, j] = j
            out_iters[r] = 0
            out_reasons[r] = EXIT_DEGENERATE_ROW
            continue
        thres, mn, mx, cnt, it, reason = exact_search(row, k, eps_rel, hard_cap)
        select_exact(
            row, k, thres, mn, mx, cnt, eps_rel == 0.0,
            reason == EXIT_DEGENERATE_ROW, out_vals[r], out_idx[r],
        )
        out_iters[r] = it
        out_reasons[r] = reason


@njit(cache=True, nogil=True)
def early_topk_chunk(data, k, max_iter, out_vals, out_idx, out_iters, out_reasons):
    """Early-stopping top-k over every row of a chunk."""
    m = data.shape[1]
    row = np.empty(m, F32)
    for r in range(data.shape[0]):
        for j in range(m):
            row[j] = data[r, j]
        if k == m:
            for j in range(m):
                out_vals[r, j] = row[j]
                out_idx[r, j] = j
            out_iters[r] = 0
            out_reasons[r] = EXIT_DEGENERATE_ROW
            continue
        mn, mx, it, reason = early_search(row, k, max_iter)
        j = 0
        for i in range(m):
            if row[i] >= mn:
                out_idx[r, j] = i
                out_vals[r, j] = row[i]
                j += 1
                if j == k:
                    break
        out_iters[r] = it
        out_reasons[r] = reason


@njit(cache=True, nogil=True)
def exact_trace_chunk(data, k, eps_rel, hard_cap, out_iters, out_reasons):
    """Exit statistics only; skips the selection passes."""
    m = data.shape[1]
    row = np.empty(m, F32)
    for r in range(data.shape[0]):
        for j in range(m):
            row[j] = data[r, j]
        if k == m:
            out_iters[r] = 0
            out_reasons[r] = EXIT_DEGENERATE_ROW
            continue
        _, _, _, _, it, reason = exact_search(row, k, eps_rel, hard_cap)
        out_iters[r] = it
        out_reasons[r] = reason
