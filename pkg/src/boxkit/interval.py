"""Interval models, the consistency relation, merging, normalization and recognition.

Endpoints are integers and, within one model, pairwise distinct; every
interval is closed with ``left < right``. Two intervals therefore overlap
exactly when ``max(lefts) < min(rights)``.
"""

from __future__ import annotations

import bisect
from collections.abc import Iterable, Iterator, Mapping
from itertools import islice

from . import _bits
from .graph import Graph, GraphError, connected_components


class InvalidModel(ValueError):
    pass


class InconsistentModels(ValueError):
    pass


class IntervalModel:
    """Immutable map vertex -> ``(left, right)``."""

    __slots__ = ("_iv", "_hash")

    def __init__(self, intervals: Mapping[int, tuple[int, int]] | Iterable[tuple[int, tuple[int, int]]] = ()):
        items = intervals.items() if isinstance(intervals, Mapping) else intervals
        iv = {}
        seen = set()
        for v, (lo, hi) in items:
            lo, hi = int(lo), int(hi)
            if not lo < hi:
                raise InvalidModel(f"vertex {v}: left {lo} not below right {hi}")
            if lo in seen or hi in seen:
                raise InvalidModel(f"vertex {v}: endpoint shared with another interval")
            seen.add(lo)
            seen.add(hi)
            iv[v] = (lo, hi)
        self._iv = iv
        self._hash = None

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._iv)

    def __getitem__(self, v: int) -> tuple[int, int]:
        return self._iv[v]

    def __contains__(self, v) -> bool:
        return v in self._iv

    def __len__(self) -> int:
        return len(self._iv)

    def items(self):
        return self._iv.items()

    def endpoint_sequence(self, keep: Iterable[int] | None = None) -> tuple[tuple[int, int], ...]:
        """Endpoints in increasing order as ``(vertex, 0 for left / 1 for right)``.

        Two models are consistent iff these sequences, restricted to the
        common vertices, coincide.
        """
        pts = []
        if keep is None:
            for v, (lo, hi) in self._iv.items():
                pts.append((lo, v, 0))
                pts.append((hi, v, 1))
        else:
            for v in keep:
                lo, hi = self._iv[v]
                pts.append((lo, v, 0))
                pts.append((hi, v, 1))
        pts.sort()
        return tuple((v, side) for _, v, side in pts)

    def to_json(self) -> dict[str, list[int]]:
        return {str(v): [lo, hi] for v, (lo, hi) in sorted(self._iv.items())}

    @classmethod
    def from_json(cls, obj: Mapping[str, Iterable[int]]) -> IntervalModel:
        return cls({int(k): tuple(val) for k, val in obj.items()})

    @classmethod
    def from_sequence(cls, seq: Iterable[tuple[int, int]]) -> IntervalModel:
        """Build the model placing the i-th endpoint of ``seq`` at position i + 1."""
        lo: dict[int, int] = {}
        hi: dict[int, int] = {}
        for pos, (v, side) in enumerate(seq, start=1):
            (hi if side else lo)[v] = pos
        return cls({v: (lo[v], hi[v]) for v in lo})

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalModel):
            return NotImplemented
        return self._iv == other._iv

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._iv.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v}: [{lo}, {hi}]" for v, (lo, hi) in sorted(self._iv.items()))
        return f"IntervalModel({{{body}}})"


def model_to_graph(m: IntervalModel) -> Graph:
    # sweep: a left endpoint meets every interval still open
    edges = []
    open_: set[int] = set()
    for v, side in m.endpoint_sequence():
        if side == 0:
            edges.extend((u, v) for u in open_)
            open_.add(v)
        else:
            open_.discard(v)
    return Graph(m.vertices, edges)


def is_consistent(m1: IntervalModel, m2: IntervalModel) -> bool:
    common = m1.vertices & m2.vertices
    return m1.endpoint_sequence(common) == m2.endpoint_sequence(common)


def normalize(m: IntervalModel) -> IntervalModel:
    """Rank-map endpoints onto ``1..2n`` (order-preserving)."""
    return IntervalModel.from_sequence(m.endpoint_sequence())


def restrict(m: IntervalModel, s: Iterable[int]) -> IntervalModel:
    s = set(s)
    unknown = s - m.vertices
    if unknown:
        raise InvalidModel(f"unknown vertices {sorted(unknown)}")
    return IntervalModel({v: m[v] for v in s})


def merge_consistent(m1: IntervalModel, m2: IntervalModel) -> IntervalModel:
    """A model on the union of both vertex sets consistent with ``m1`` and ``m2``.

    Vertices of ``m2`` missing from ``m1`` are inserted one at a time (in
    increasing id order). Each new endpoint goes into the gap of the current
    model delimited by the ``m2``-neighbours it has among already placed
    vertices, at the midpoint of that gap; with no neighbour on one side it
    goes before (after) everything. The result is normalized.
    """
    if not is_consistent(m1, m2):
        raise InconsistentModels("models disagree on the endpoint order of shared vertices")
    cur = {v: iv for v, iv in normalize(m1).items()} if len(m1) else {}
    placed = set(m1.vertices & m2.vertices)
    for v in sorted(m2.vertices - m1.vertices):
        # spread current endpoints to multiples of 4 so midpoints stay free
        seq = IntervalModel(cur).endpoint_sequence() if cur else ()
        pos = {}
        for i, tok in enumerate(seq, start=1):
            pos[tok] = 4 * i
        top = 4 * len(seq)
        cur = {u: (pos[(u, 0)], pos[(u, 1)]) for u in cur}

        ref = sorted((m2[u][side], u, side) for u in placed for side in (0, 1))
        keys = [x[0] for x in ref]

        def gap(value):
            i = bisect.bisect_left(keys, value)
            p = pos[(ref[i - 1][1], ref[i - 1][2])] if i > 0 else None
            q = pos[(ref[i][1], ref[i][2])] if i < len(ref) else None
            return i, p, q

        gl, pl, ql = gap(m2[v][0])
        gr, pr, qr = gap(m2[v][1])
        if pl is None:
            lo = 1
        elif ql is None:
            lo = top + 1
        else:
            mid = (pl + ql) // 2
            lo = mid + 1 if mid % 4 == 0 else mid
        if gr == gl:
            hi = lo + 1
        elif qr is None:
            hi = top + 2
        else:
            mid = (pr + qr) // 2
            hi = mid + 1 if mid % 4 == 0 else mid
        cur[v] = (lo, hi)
        placed.add(v)
    return normalize(IntervalModel(cur))


def count_canonical_models(k: int) -> int:
    return _bits.count_arrangements(k)


def canonical_model_at(s: Iterable[int], index: int) -> IntervalModel:
    """Random access into :func:`enumerate_canonical_models`."""
    vs = sorted(s)
    if not 0 <= index < count_canonical_models(len(vs)):
        raise IndexError(index)
    pos = _bits.unrank_positions(len(vs), index)
    return IntervalModel({v: (pos[2 * i], pos[2 * i + 1]) for i, v in enumerate(vs)})


def canonical_index(m: IntervalModel) -> int:
    """Position of ``normalize(m)`` in the canonical enumeration of its vertex set."""
    nm = normalize(m)
    vs = sorted(nm.vertices)
    flat = []
    for v in vs:
        flat.extend(nm[v])
    return _bits.rank_positions(tuple(flat))


def enumerate_canonical_models(s: Iterable[int], start: int = 0,
                               stop: int | None = None) -> Iterator[IntervalModel]:
    """One model per consistency class on ``s``, in lexicographic order.

    The order is lexicographic on ``(l_v1, r_v1, l_v2, r_v2, ...)`` with
    vertices sorted by id and endpoints a permutation of ``1..2|s|``;
    ``start``/``stop`` select a slice without generating the prefix.
    """
    vs = sorted(s)
    k = len(vs)
    total = count_canonical_models(k)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    if k == 0:
        yield IntervalModel()
        return
    size = 2 * k
    first = _bits.unrank_positions(k, start)
    ls = [0] * k
    rs = [0] * k
    used = [False] * (size + 1)

    def rec(i: int, resume: bool):
        if i == k:
            yield IntervalModel({v: (ls[j], rs[j]) for j, v in enumerate(vs)})
            return
        l0 = first[2 * i] if resume else 1
        for lpos in range(l0, size + 1):
            if used[lpos]:
                continue
            used[lpos] = True
            r0 = first[2 * i + 1] if resume and lpos == l0 else lpos + 1
            for rpos in range(r0, size + 1):
                if used[rpos]:
                    continue
                used[rpos] = True
                ls[i], rs[i] = lpos, rpos
                yield from rec(i + 1, resume and lpos == l0 and rpos == r0)
                used[rpos] = False
            used[lpos] = False

    yield from islice(rec(0, True), stop - start)


def intersect_models(ms: list[IntervalModel]) -> Graph:
    if not ms:
        raise ValueError("need at least one model")
    vs = ms[0].vertices
    for m in ms[1:]:
        if m.vertices != vs:
            raise GraphError("models have different vertex sets")
    edges = model_to_graph(ms[0]).edges
    for m in ms[1:]:
        edges = edges & model_to_graph(m).edges
    return Graph(vs, edges)


# --- recognition -------------------------------------------------------------

def _mcs_order(g: Graph, comp: Iterable[int]) -> list[int]:
    """Maximum cardinality search; the reverse is a PEO iff the graph is chordal."""
    weight = {v: 0 for v in comp}
    order = []
    while weight:
        v = max(weight, key=lambda x: (weight[x], -x))
        order.append(v)
        del weight[v]
        for u in g.neighbors(v):
            if u in weight:
                weight[u] += 1
    return order


def _maximal_cliques_chordal(g: Graph, comp) -> list[frozenset[int]] | None:
    order = _mcs_order(g, comp)
    peo = order[::-1]
    idx = {v: i for i, v in enumerate(peo)}
    cands = []
    for v in peo:
        later = {u for u in g.neighbors(v) if idx[u] > idx[v]}
        if later:
            # chordality: v's earliest later neighbour must see the rest
            w = min(later, key=idx.__getitem__)
            if not (later - {w}) <= g.neighbors(w):
                return None
        cands.append(frozenset(later | {v}))
    cands = sorted(set(cands), key=len, reverse=True)
    maximal: list[frozenset[int]] = []
    for c in cands:
        if not any(c <= q for q in maximal):
            maximal.append(c)
    return maximal


def _clique_path(cliques: list[frozenset[int]]) -> list[frozenset[int]] | None:
    """Order cliques so every vertex occupies a contiguous run (backtracking)."""
    count: dict[int, int] = {}
    for q in cliques:
        for v in q:
            count[v] = count.get(v, 0) + 1
    n = len(cliques)
    failed: set[tuple[frozenset[int], int]] = set()
    order: list[int] = []

    def rec(used: frozenset[int], remaining: dict[int, int]) -> bool:
        if len(order) == n:
            return True
        last = order[-1] if order else None
        if last is not None and (used, last) in failed:
            return False
        seen_active = cliques[last] if last is not None else frozenset()
        for i in range(n):
            if i in used:
                continue
            q = cliques[i]
            if last is not None:
                # vertices leaving now must not reappear later
                leaving = seen_active - q
                if any(remaining[v] > 0 for v in leaving):
                    continue
                # vertices already closed cannot come back
                if any(remaining[v] < count[v] and v not in seen_active for v in q):
                    continue
            for v in q:
                remaining[v] -= 1
            order.append(i)
            if rec(used | {i}, remaining):
                return True
            order.pop()
            for v in q:
                remaining[v] += 1
        if last is not None:
            failed.add((used, last))
        return False

    if not rec(frozenset(), dict(count)):
        return None
    return [cliques[i] for i in order]


def _model_from_runs(runs: dict[int, tuple[int, int]]) -> IntervalModel:
    """Integer index ranges -> distinct endpoints, touching ranges still overlap."""
    events = []
    for v, (a, b) in runs.items():
        events.append((a, 0, v))
        events.append((b, 1, v))
    events.sort()
    return IntervalModel.from_sequence((v, side) for _, side, v in events)


def is_interval_graph(g: Graph) -> bool:
    return recognize_interval(g) is not None


def recognize_interval(g: Graph) -> IntervalModel | None:
    """A model of ``g`` if it is an interval graph, else None.

    Chordality via maximum cardinality search, then a consecutive
    arrangement of maximal cliques per component. Small components are
    first screened with the chordal + AT-free test.
    """
    runs: dict[int, tuple[int, int]] = {}
    offset = 0
    for comp in connected_components(g):
        cliques = _maximal_cliques_chordal(g, comp)
        if cliques is None:
            return None
        if len(comp) <= 12:
            vs = sorted(comp)
            idx = {v: i for i, v in enumerate(vs)}
            bits = _bits.pair_bits(len(vs))
            mask = 0
            for v in vs:
                for u in g.neighbors(v):
                    if idx[u] > idx[v]:
                        mask |= bits[idx[v]][idx[u]]
            if not _bits.is_interval_mask(len(vs), mask):
                return None
        path = _clique_path(cliques)
        if path is None:
            return None
        for i, q in enumerate(path):
            for v in q:
                a, b = runs.get(v, (offset + i, offset + i))
                runs[v] = (min(a, offset + i), max(b, offset + i))
        offset += len(path)
    return _model_from_runs(runs)
