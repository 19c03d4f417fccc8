"""Compiled search kernels.

The remaining set lives in a doubly linked list over values (``nxt``/``prv``,
head sentinel 0, tail sentinel ``value_bound + 1``) plus a membership table,
so removing and restoring a triple is O(1). Alongside the sums we carry
``lo = b_2m`` and ``hi = b_{2m+1}``; comparing a value with ``hi`` tells
which side of the low/high split its index falls on.

Statistics go into an int64 array laid out like ``SearchStats``.
"""

from __future__ import annotations

import numba as nb
import numpy as np

NAIVE = 0
BASIC = 1
THM2 = 2
THM2_3 = 3

GENERAL = 0
REDUCED = 1

SOLUTIONS = 0
CALLS = 1
PRUNES_SUM = 2
PRUNES_CUTOFF = 3
PRUNES_BALANCE = 4
FORCED_MOVES = 5
ENDGAME_HITS = 6
N_STATS = 7


@nb.njit(cache=True, inline="always")
def _unlink(v, nxt, prv, present):
    nxt[prv[v]] = nxt[v]
    prv[nxt[v]] = prv[v]
    present[v] = 0


@nb.njit(cache=True, inline="always")
def _relink(v, nxt, prv, present):
    nxt[prv[v]] = v
    prv[nxt[v]] = v
    present[v] = 1


@nb.njit(cache=True)
def _endgame(x, nxt, top):
    b2 = nxt[x]
    b3 = nxt[b2]
    b4 = nxt[b3]
    b5 = nxt[b4]
    c = 0
    if x + b2 == b5:
        c += 1
    if x + b3 == b5:
        c += 1
    if x + b4 == b5:
        c += 1
    if x + b4 == top:
        c += 1
    return c


@nb.njit
def _rec(m, s1, s2, lo, hi, mode, tier, nxt, prv, present, tail, stats):
    stats[CALLS] += 1
    if m == 0:
        stats[SOLUTIONS] += 1
        return
    x = nxt[0]
    top = prv[tail]
    smart = tier >= THM2

    if smart:
        if s1 > s2:
            stats[PRUNES_SUM] += 1
            return
        if tier == THM2_3 and m == 2:
            if mode != REDUCED:
                stats[PRUNES_BALANCE] += 1
                return
            stats[ENDGAME_HITS] += 1
            stats[SOLUTIONS] += _endgame(x, nxt, top)
            return
        if x + lo > top:
            stats[PRUNES_BALANCE] += 1
            return
        if mode == GENERAL and (x + lo == top or x + hi > top):
            stats[PRUNES_BALANCE] += 1
            return
        if x + lo == top and m >= 2:
            stats[FORCED_MOVES] += 1
            _unlink(x, nxt, prv, present)
            _unlink(lo, nxt, prv, present)
            _unlink(top, nxt, prv, present)
            _rec(m - 1, s1 - x - lo, s2 - top, prv[lo], hi, REDUCED, tier, nxt, prv, present, tail, stats)
            _relink(top, nxt, prv, present)
            _relink(lo, nxt, prv, present)
            _relink(x, nxt, prv, present)
            return
        y_stop = lo if mode == REDUCED else prv[top]
    else:
        if tier == BASIC and s1 > s2:
            stats[PRUNES_SUM] += 1
            return
        y_stop = prv[top]

    # x stays unlinked for the whole scan; its own nxt pointer is left intact
    _unlink(x, nxt, prv, present)
    y = nxt[x]
    while True:
        z = x + y
        if z > top:
            if smart:
                stats[PRUNES_CUTOFF] += 1
                break
        elif present[z] == 1 and (mode == GENERAL or z >= hi):
            if y >= hi:
                c1 = s1 - x - lo
                c2 = s2 - y - z + lo
            elif z >= hi:
                c1 = s1 - x - y
                c2 = s2 - z
            else:
                c1 = s1 - x - y - z + hi
                c2 = s2 - hi
            if mode == GENERAL and tier != NAIVE and c1 > c2:
                stats[PRUNES_SUM] += 1
            else:
                _unlink(y, nxt, prv, present)
                _unlink(z, nxt, prv, present)
                if y >= hi:
                    nlo = prv[lo]
                    nhi = lo
                elif z >= hi:
                    nlo = prv[y] if y == lo else lo
                    nhi = nxt[z] if z == hi else hi
                else:
                    nlo = hi
                    nhi = nxt[hi]
                cmode = mode
                if smart and mode == GENERAL and c1 == c2:
                    cmode = REDUCED
                _rec(m - 1, c1, c2, nlo, nhi, cmode, tier, nxt, prv, present, tail, stats)
                _relink(z, nxt, prv, present)
                _relink(y, nxt, prv, present)
        if y == y_stop:
            break
        y = nxt[y]
    _relink(x, nxt, prv, present)


@nb.njit
def solve(els, value_bound, s1, s2, mode, tier):
    """Run one tier on the sorted element array; returns the stats array."""
    stats = np.zeros(N_STATS, dtype=np.int64)
    size = els.shape[0]
    m = size // 3
    tail = value_bound + 1
    nxt = np.zeros(value_bound + 2, dtype=np.int64)
    prv = np.zeros(value_bound + 2, dtype=np.int64)
    present = np.zeros(2 * value_bound + 2, dtype=np.uint8)
    prev = 0
    for j in range(size):
        v = els[j]
        nxt[prev] = v
        prv[v] = prev
        present[v] = 1
        prev = v
    nxt[prev] = tail
    prv[tail] = prev
    if m == 0:
        stats[CALLS] = 1
        stats[SOLUTIONS] = 1
        return stats
    lo = els[2 * m - 1]
    hi = els[2 * m]
    _rec(m, s1, s2, lo, hi, mode, tier, nxt, prv, present, tail, stats)
    return stats
