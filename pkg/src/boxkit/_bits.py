"""Bitmask helpers for graphs on local vertex indices ``0..k-1``.

An edge mask has one bit per unordered pair ``(i, j)``, ``i < j``; bit
order follows :func:`pair_bits`. These routines back the exhaustive oracle
and the per-bag work of the path-decomposition DP, so they are kept tight.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial


@lru_cache(maxsize=None)
def pair_bits(k: int) -> tuple[tuple[int, ...], ...]:
    """``pair_bits(k)[i][j]`` is the bit (as an int with one bit set) of pair ij."""
    table = [[0] * k for _ in range(k)]
    b = 0
    for i in range(k):
        for j in range(i + 1, k):
            table[i][j] = table[j][i] = 1 << b
            b += 1
    return tuple(tuple(row) for row in table)


@lru_cache(maxsize=None)
def pair_list(k: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(k) for j in range(i + 1, k))


def full_mask(k: int) -> int:
    return (1 << (k * (k - 1) // 2)) - 1


def adjacency(k: int, mask: int) -> list[int]:
    """Per-vertex neighbour bitsets (over vertex indices) of an edge mask."""
    adj = [0] * k
    for b, (i, j) in enumerate(pair_list(k)):
        if mask >> b & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def _reach(start: int, allowed: int, adj: list[int]) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_chordal_adj(k: int, adj: list[int]) -> bool:
    alive = (1 << k) - 1
    while alive:
        for v in range(k):
            if not alive >> v & 1:
                continue
            nb = adj[v] & alive
            ok = True
            x = nb
            while x:
                low = x & -x
                u = low.bit_length() - 1
                if (nb & ~low) & ~adj[u]:
                    ok = False
                    break
                x ^= low
            if ok:
                alive &= ~(1 << v)
                break
        else:
            return False
    return True


def has_asteroidal_triple(k: int, adj: list[int]) -> bool:
    closed = [adj[v] | (1 << v) for v in range(k)]
    everything = (1 << k) - 1
    for a in range(k):
        for b in range(a + 1, k):
            if adj[a] >> b & 1:
                continue
            for c in range(b + 1, k):
                if adj[a] >> c & 1 or adj[b] >> c & 1:
                    continue
                if (_reach(a, everything & ~closed[c], adj) >> b & 1
                        and _reach(a, everything & ~closed[b], adj) >> c & 1
                        and _reach(b, everything & ~closed[a], adj) >> c & 1):
                    return True
    return False


@lru_cache(maxsize=1 << 20)
def is_interval_mask(k: int, mask: int) -> bool:
    """Interval test via Lekkerkerker-Boland: chordal and asteroidal-triple free."""
    adj = adjacency(k, mask)
    return is_chordal_adj(k, adj) and not has_asteroidal_triple(k, adj)


@lru_cache(maxsize=4096)
def interval_supergraphs(k: int, gmask: int) -> tuple[int, ...]:
    """All interval graphs on ``k`` labelled vertices containing ``gmask``."""
    free = full_mask(k) & ~gmask
    out = []
    sub = free
    while True:
        if is_interval_mask(k, gmask | sub):
            out.append(gmask | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    out.reverse()
    return tuple(out)


def count_arrangements(k: int) -> int:
    """Number of canonical interval models on ``k`` vertices: (2k)!/2^k."""
    return factorial(2 * k) >> k


def first_model_positions(k: int, required: int, forbidden: int) -> tuple[int, ...] | None:
    """Lexicographically first canonical model honouring the edge constraints.

    A canonical model is encoded as ``(l_0, r_0, l_1, r_1, ...)`` with the
    2k positions a permutation of ``1..2k``; the order is lexicographic on
    that tuple. Pairs in ``required`` must overlap, pairs in ``forbidden``
    must not. Returns None if no model qualifies.
    """
    bits = pair_bits(k)
    size = 2 * k
    ls = [0] * k
    rs = [0] * k
    used = [False] * (size + 1)

    def place(i: int) -> bool:
        if i == k:
            return True
        for lpos in range(1, size + 1):
            if used[lpos]:
                continue
            used[lpos] = True
            for rpos in range(lpos + 1, size + 1):
                if used[rpos]:
                    continue
                ok = True
                row = bits[i]
                for j in range(i):
                    b = row[j]
                    overlap = (lpos if lpos > ls[j] else ls[j]) < (rpos if rpos < rs[j] else rs[j])
                    if overlap:
                        if forbidden & b:
                            ok = False
                            break
                    elif required & b:
                        ok = False
                        break
                if not ok:
                    continue
                used[rpos] = True
                ls[i], rs[i] = lpos, rpos
                if place(i + 1):
                    return True
                used[rpos] = False
            used[lpos] = False
        return False

    if not place(0):
        return None
    out = []
    for i in range(k):
        out.extend((ls[i], rs[i]))
    return tuple(out)


def _completes(k: int, adj: list[int], forced: dict[int, tuple[int, int]], free_vertices: int) -> bool:
    """Whether the endpoints of ``free_vertices`` fit the unforced positions so the model realises ``adj``.

    Sweeps positions left to right. A vertex may open only if every open
    vertex is its neighbour and no neighbour has closed, and may close only
    once all its neighbours have opened; these are exactly the conditions
    for the overlap graph to be ``adj``. Validity of the rest depends only
    on which vertices have opened and closed, so dead states are memoised.
    """
    size = 2 * k
    dead: set[tuple[int, int]] = set()

    def go(opened: int, closed: int, pos: int) -> bool:
        if pos > size:
            return True
        key = (opened, closed)
        if key in dead:
            return False
        tok = forced.get(pos)
        if tok is not None:
            moves = (tok,)
        else:
            moves = [(x, 0) for x in range(k) if free_vertices >> x & 1 and not opened >> x & 1]
            moves += [(x, 1) for x in range(k) if free_vertices >> x & 1 and (opened & ~closed) >> x & 1]
        for x, side in moves:
            bx = 1 << x
            if side == 0:
                if (opened & ~closed) & ~adj[x] or closed & adj[x]:
                    continue
                if go(opened | bx, closed, pos + 1):
                    return True
            else:
                if adj[x] & ~opened:
                    continue
                if go(opened, closed | bx, pos + 1):
                    return True
        dead.add(key)
        return False

    return go(0, 0, 1)


def first_model_among(k: int, allowed) -> tuple[int, ...] | None:
    """Lexicographically first canonical model whose graph mask is in ``allowed``.

    Same encoding and order as :func:`first_model_positions`. Vertices are
    placed in order, each at the first ``(left, right)`` pair from which
    the model can still be completed to some allowed mask, which is decided
    exactly by :func:`_completes`; so no placement is ever undone.
    """
    allowed = list(frozenset(allowed))
    if not allowed:
        return None
    bits = pair_bits(k)
    adjs = {h: adjacency(k, h) for h in allowed}
    size = 2 * k
    forced: dict[int, tuple[int, int]] = {}
    ls = [0] * k
    rs = [0] * k
    cur = 0
    acc = 0
    for i in range(k):
        for j in range(i):
            acc |= bits[i][j]
        free_vertices = ((1 << k) - 1) ^ ((1 << (i + 1)) - 1)
        placed = False
        for lpos in range(1, size + 1):
            if lpos in forced:
                continue
            for rpos in range(lpos + 1, size + 1):
                if rpos in forced:
                    continue
                nxt = cur
                for j in range(i):
                    if (lpos if lpos > ls[j] else ls[j]) < (rpos if rpos < rs[j] else rs[j]):
                        nxt |= bits[i][j]
                cands = [h for h in allowed if h & acc == nxt]
                if not cands:
                    continue
                forced[lpos], forced[rpos] = (i, 0), (i, 1)
                ok = [h for h in cands if _completes(k, adjs[h], forced, free_vertices)]
                if ok:
                    allowed, cur, placed = ok, nxt, True
                    ls[i], rs[i] = lpos, rpos
                    break
                del forced[lpos], forced[rpos]
            if placed:
                break
        if not placed:
            return None
    out = []
    for i in range(k):
        out.extend((ls[i], rs[i]))
    return tuple(out)


def rank_positions(positions: tuple[int, ...]) -> int:
    """Index of a canonical model in the lexicographic enumeration."""
    k = len(positions) // 2
    free = list(range(1, 2 * k + 1))
    rank = 0
    for i in range(k):
        lpos, rpos = positions[2 * i], positions[2 * i + 1]
        m = len(free)
        a = free.index(lpos)
        b = free.index(rpos)
        # pairs (x, y), x < y over `free`, lexicographically before (a, b)
        before = a * m - a * (a + 1) // 2 + (b - a - 1)
        rank = rank * (m * (m - 1) // 2) + before
        free.pop(b)
        free.pop(a)
    return rank


def unrank_positions(k: int, rank: int) -> tuple[int, ...]:
    counts = []
    m = 2 * k
    for _ in range(k):
        counts.append(m * (m - 1) // 2)
        m -= 2
    digits = []
    for c in reversed(counts):
        digits.append(rank % c)
        rank //= c
    if rank:
        raise IndexError("rank out of range")
    digits.reverse()
    free = list(range(1, 2 * k + 1))
    out = []
    for d in digits:
        m = len(free)
        a = 0
        while d >= m - a - 1:
            d -= m - a - 1
            a += 1
        b = a + 1 + d
        out.extend((free[a], free[b]))
        free.pop(b)
        free.pop(a)
    return tuple(out)


def positions_mask(positions: tuple[int, ...]) -> int:
    k = len(positions) // 2
    bits = pair_bits(k)
    mask = 0
    for i in range(k):
        li, ri = positions[2 * i], positions[2 * i + 1]
        for j in range(i + 1, k):
            lj, rj = positions[2 * j], positions[2 * j + 1]
            if max(li, lj) < min(ri, rj):
                mask |= bits[i][j]
    return mask
