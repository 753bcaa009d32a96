"""Numba-compiled inner loops for noise injection and the rank filters.

Everything here works on bare uint8 arrays; the public modules own validation
and the GrayImage wrapping. All kernels are pure functions of their arguments.
"""

import math

import numpy as np
from numba import njit

# SplitMix64 constants. All arithmetic below stays in wrapping uint64; the
# pure-Python mirror lives in noise.SplitMix64 and must produce the same
# stream bit-for-bit.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_INV_2_64 = 2.0**-64
_TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _sm64_next(state):
    state = state + _GOLDEN
    z = state
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return state, z ^ (z >> _S31)


@njit(cache=True)
def inject_impulse(px, density, low, high, random_valued, seed):
    # One uniform draw per pixel decides corruption; corrupted pixels take a
    # second draw for the replacement value. Draw order is part of the
    # reproducibility contract, so the loops must stay row-major.
    h, w = px.shape
    out = px.copy()
    mask = np.zeros((h, w), dtype=np.bool_)
    state = seed
    span = float(high - low + 1)
    for y in range(h):
        for x in range(w):
            state, z = _sm64_next(state)
            if float(z) * _INV_2_64 < density:
                mask[y, x] = True
                state, z = _sm64_next(state)
                u = float(z) * _INV_2_64
                if random_valued:
                    # u can round to exactly 1.0 (float(2**64 - 1) == 2.0**64),
                    # so the offset needs a clamp.
                    off = int(u * span)
                    if off > high - low:
                        off = high - low
                    out[y, x] = low + off
                else:
                    out[y, x] = low if u < 0.5 else high
    return out, mask


@njit(cache=True)
def inject_gaussian(px, sigma, seed):
    # Box-Muller, one deviate per pixel from a consecutive uniform pair (the
    # sine branch is discarded). log(1 - u1) keeps the argument in (0, 1].
    h, w = px.shape
    out = np.empty_like(px)
    mask = np.zeros((h, w), dtype=np.bool_)
    state = seed
    for y in range(h):
        for x in range(w):
            state, z1 = _sm64_next(state)
            state, z2 = _sm64_next(state)
            u1 = float(z1) * _INV_2_64
            u2 = float(z2) * _INV_2_64
            g = math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(_TWO_PI * u2)
            v = math.floor(px[y, x] + g * sigma + 0.5)
            if v < 0.0:
                v = 0.0
            elif v > 255.0:
                v = 255.0
            b = np.uint8(v)
            out[y, x] = b
            mask[y, x] = b != px[y, x]
    return out, mask


@njit(cache=True)
def _fold(c, n, reflect):
    if not reflect:
        if c < 0:
            return 0
        if c >= n:
            return n - 1
        return c
    period = 2 * n
    m = c % period
    if m < 0:
        m += period
    if m >= n:
        m = period - 1 - m
    return m


@njit(cache=True)
def _edge_map(n, pad, reflect):
    # idx[i] is the source row/column for padded coordinate i - pad.
    idx = np.empty(n + 2 * pad, dtype=np.int64)
    for i in range(idx.size):
        idx[i] = _fold(i - pad, n, reflect)
    return idx


@njit(cache=True)
def sliding_stats(px, side, reflect):
    # Running 256-bin histogram slid along each row: per step one window
    # column leaves and one enters. min/max are repaired by directed scans;
    # the median is rebalanced via a strictly-below counter, so most steps
    # touch only a handful of bins.
    h, w = px.shape
    pad = side // 2
    rows = _edge_map(h, pad, reflect)
    cols = _edge_map(w, pad, reflect)
    n = side * side
    rank = (n + 1) // 2
    mn = np.empty((h, w), dtype=np.uint8)
    md = np.empty((h, w), dtype=np.uint8)
    mx = np.empty((h, w), dtype=np.uint8)
    hist = np.zeros(256, dtype=np.int32)
    for y in range(h):
        for b in range(256):
            hist[b] = 0
        for dy in range(side):
            r = rows[y + dy]
            for dx in range(side):
                hist[px[r, cols[dx]]] += 1
        cur_min = 0
        while hist[cur_min] == 0:
            cur_min += 1
        cur_max = 255
        while hist[cur_max] == 0:
            cur_max -= 1
        med = 0
        acc = hist[0]
        while acc < rank:
            med += 1
            acc += hist[med]
        below = acc - hist[med]  # count strictly below med
        mn[y, 0] = cur_min
        md[y, 0] = med
        mx[y, 0] = cur_max
        for x in range(1, w):
            for dy in range(side):
                r = rows[y + dy]
                v_out = px[r, cols[x - 1]]
                hist[v_out] -= 1
                if v_out < med:
                    below -= 1
                v_in = px[r, cols[x + side - 1]]
                hist[v_in] += 1
                if v_in < med:
                    below += 1
                if v_in < cur_min:
                    cur_min = v_in
                if v_in > cur_max:
                    cur_max = v_in
            while hist[cur_min] == 0:
                cur_min += 1
            while hist[cur_max] == 0:
                cur_max -= 1
            while below >= rank:
                med -= 1
                while hist[med] == 0:
                    med -= 1
                below -= hist[med]
            while below + hist[med] < rank:
                below += hist[med]
                med += 1
                while hist[med] == 0:
                    med += 1
            mn[y, x] = cur_min
            md[y, x] = med
            mx[y, x] = cur_max
    return mn, md, mx


@njit(cache=True)
def weighted_median(px, weights, side, reflect):
    # Insertion-sort the window values carrying their position weights, then
    # walk the cumulative weight to rank (total+1)/2. Equivalent to the
    # median of the multiset with each value replicated weight times.
    h, w = px.shape
    pad = side // 2
    rows = _edge_map(h, pad, reflect)
    cols = _edge_map(w, pad, reflect)
    k = side * side
    total = np.int64(0)
    for i in range(k):
        total += weights[i]
    rank = (total + 1) // 2
    out = np.empty((h, w), dtype=np.uint8)
    vals = np.empty(k, dtype=np.int64)
    wts = np.empty(k, dtype=np.int64)
    for y in range(h):
        for x in range(w):
            m = 0
            for dy in range(side):
                r = rows[y + dy]
                for dx in range(side):
                    v = np.int64(px[r, cols[x + dx]])
                    wt = weights[m]
                    j = m
                    while j > 0 and vals[j - 1] > v:
                        vals[j] = vals[j - 1]
                        wts[j] = wts[j - 1]
                        j -= 1
                    vals[j] = v
                    wts[j] = wt
                    m += 1
            acc = np.int64(0)
            i = 0
            while True:
                acc += wts[i]
                if acc >= rank:
                    break
                i += 1
            out[y, x] = vals[i]
    return out


@njit(cache=True)
def adaptive_median(px, w_init, w_max, reflect, fallback_median):
    # Per pixel: grow the window from w_init by 2 while its median does not
    # strictly separate min and max. A strictly-separated median keeps the
    # center pixel if the center also lies strictly inside (min, max), else
    # emits the median. Exhausting w_max emits either the w_max-window median
    # or the untouched center, per fallback_median.
    h, w = px.shape
    pad_max = w_max // 2
    rows = _edge_map(h, pad_max, reflect)
    cols = _edge_map(w, pad_max, reflect)
    out = np.empty((h, w), dtype=np.uint8)
    buf = np.empty(w_max * w_max, dtype=np.int64)
    for y in range(h):
        for x in range(w):
            side = w_init
            while True:
                pad = side // 2
                m = 0
                for dy in range(-pad, pad + 1):
                    r = rows[y + dy + pad_max]
                    for dx in range(-pad, pad + 1):
                        v = np.int64(px[r, cols[x + dx + pad_max]])
                        j = m
                        while j > 0 and buf[j - 1] > v:
                            buf[j] = buf[j - 1]
                            j -= 1
                        buf[j] = v
                        m += 1
                s_min = buf[0]
                s_med = buf[m // 2]
                s_max = buf[m - 1]
                if s_min < s_med and s_med < s_max:
                    c = np.int64(px[y, x])
                    if s_min < c and c < s_max:
                        out[y, x] = px[y, x]
                    else:
                        out[y, x] = s_med
                    break
                side += 2
                if side > w_max:
                    if fallback_median:
                        out[y, x] = s_med
                    else:
                        out[y, x] = px[y, x]
                    break
    return out
