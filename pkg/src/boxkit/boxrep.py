"""Box representations and the exact (exponential) boxicity oracle."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
import numpy as np

from . import _bits
from .graph import Graph, GraphError
from .interval import IntervalModel, intersect_models


class InvalidRepresentation(ValueError):
    pass


class BoxRepresentation:
    """``d`` integer intervals per vertex; endpoints distinct within each dimension.

    ``d == 0`` is allowed: every box is the whole (zero-dimensional) space,
    so the represented graph is complete.
    """

    __slots__ = ("d", "boxes")

    def __init__(self, d: int, boxes: Mapping[int, Iterable[Iterable[int]]]):
        if d < 0:
            raise InvalidRepresentation("dimension must be non-negative")
        self.d = d
        self.boxes = {v: tuple((int(lo), int(hi)) for lo, hi in ivs) for v, ivs in boxes.items()}
        for i in range(d):
            seen = set()
            for v, ivs in self.boxes.items():
                if len(ivs) != d:
                    raise InvalidRepresentation(f"vertex {v} has {len(ivs)} intervals, expected {d}")
                lo, hi = ivs[i]
                if not lo < hi:
                    raise InvalidRepresentation(f"vertex {v}, dimension {i}: empty interval")
                if lo in seen or hi in seen:
                    raise InvalidRepresentation(f"dimension {i}: endpoint of vertex {v} is shared")
                seen.update((lo, hi))
        if d == 0 and any(self.boxes.values()):
            raise InvalidRepresentation("zero-dimensional boxes must be empty")

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.boxes)

    def to_json(self) -> dict:
        return {"d": self.d,
                "boxes": {str(v): [list(iv) for iv in ivs] for v, ivs in sorted(self.boxes.items())}}

    @classmethod
    def from_json(cls, obj: Mapping) -> BoxRepresentation:
        return cls(int(obj["d"]), {int(k): v for k, v in obj["boxes"].items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxRepresentation):
            return NotImplemented
        return self.d == other.d and self.boxes == other.boxes

    def __repr__(self) -> str:
        return f"BoxRepresentation(d={self.d}, n={len(self.boxes)})"


@dataclass(frozen=True)
class Verdict:
    """Result of :func:`verify`.

    On failure ``pair`` is the offending vertex pair and ``kind`` says
    whether an edge of the graph has disjoint boxes (``"missing"``, with
    ``dimension`` the separating one) or a non-edge has intersecting boxes
    (``"spurious"``).
    """

    ok: bool
    pair: tuple[int, int] | None = None
    kind: str | None = None
    dimension: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _overlap_matrix(rep: BoxRepresentation, order: list[int]) -> np.ndarray:
    n = len(order)
    if rep.d == 0:
        return np.ones((n, n), dtype=bool)
    arr = np.array([rep.boxes[v] for v in order], dtype=object)
    # object dtype keeps arbitrary-precision ints; convert when they fit
    try:
        arr = arr.astype(np.int64)
    except OverflowError:
        pass
    both = np.ones((n, n), dtype=bool)
    for i in range(rep.d):
        lo = arr[:, i, 0]
        hi = arr[:, i, 1]
        ov = np.maximum.outer(lo, lo) < np.minimum.outer(hi, hi)
        both &= ov.astype(bool)
    return both


def verify(g: Graph, rep: BoxRepresentation) -> Verdict:
    if rep.vertices != g.vertices:
        raise GraphError("representation does not cover exactly the graph's vertices")
    order = g.sorted_vertices()
    n = len(order)
    if n < 2:
        return Verdict(True)
    idx = {v: i for i, v in enumerate(order)}
    adj = np.zeros((n, n), dtype=bool)
    for u, v in g.edges:
        adj[idx[u], idx[v]] = adj[idx[v], idx[u]] = True
    inter = _overlap_matrix(rep, order)
    np.fill_diagonal(inter, False)
    bad = np.argwhere(np.triu(inter != adj, 1))
    if len(bad) == 0:
        return Verdict(True)
    i, j = (int(x) for x in bad[0])
    u, v = order[i], order[j]
    if adj[i, j]:
        for dim in range(rep.d):
            (a, b), (c, e) = rep.boxes[u][dim], rep.boxes[v][dim]
            if not max(a, c) < min(b, e):
                return Verdict(False, (u, v), "missing", dim)
    return Verdict(False, (u, v), "spurious", None)


def to_models(rep: BoxRepresentation) -> list[IntervalModel]:
    return [IntervalModel({v: ivs[i] for v, ivs in rep.boxes.items()}) for i in range(rep.d)]


def from_models(ms: list[IntervalModel]) -> BoxRepresentation:
    if not ms:
        raise ValueError("need at least one model; build d = 0 representations directly")
    vs = ms[0].vertices
    if any(m.vertices != vs for m in ms):
        raise GraphError("models have different vertex sets")
    return BoxRepresentation(len(ms), {v: [m[v] for m in ms] for v in vs})


def represented_graph(rep: BoxRepresentation) -> Graph:
    if rep.d == 0:
        return Graph.complete(rep.vertices)
    return intersect_models(to_models(rep))


# --- exact oracle ------------------------------------------------------------

def _local_mask(g: Graph) -> tuple[list[int], int]:
    vs = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(vs)}
    bits = _bits.pair_bits(len(vs))
    mask = 0
    for u, v in g.edges:
        mask |= bits[idx[u]][idx[v]]
    return vs, mask


def _cover_search(k: int, gmask: int, d: int, cands: tuple[int, ...]) -> list[tuple[int, ...]] | None:
    """Lexicographically first d-tuple of canonical models intersecting to gmask.

    Returned as position tuples (see ``_bits.first_model_positions``).
    Feasibility of a partial choice depends only on the running
    intersection mask, so it is memoised at mask level; each dimension then
    takes the first model (in canonical order) realising any mask that
    still admits a completion.
    """
    memo: dict[tuple[int, int], bool] = {}

    def feasible(running: int, left: int) -> bool:
        if left == 0:
            return running == gmask
        key = (running, left)
        hit = memo.get(key)
        if hit is None:
            if left == 1:
                hit = any(running & h == gmask for h in cands)
            else:
                hit = any(feasible(running & h, left - 1) for h in cands)
            memo[key] = hit
        return hit

    running = _bits.full_mask(k)
    if not feasible(running, d):
        return None
    out = []
    for left in range(d, 0, -1):
        ok = [h for h in cands if feasible(running & h, left - 1)]
        pos = _bits.first_model_among(k, ok)
        out.append(pos)
        running &= _bits.positions_mask(pos)
    return out


def brute_force_boxicity(g: Graph, d_max: int | None = None) -> tuple[int, BoxRepresentation] | None:
    """Smallest ``d <= d_max`` with a witness, by exhaustive search.

    Each dimension ranges over the canonical models of V(g) that contain
    every edge of g; d-tuples are taken in lexicographic order and the first
    one whose intersection is g is returned. Internally models are grouped
    by the graph they realise: a group is represented by its first model,
    which preserves the lexicographically-first answer. Complete graphs
    (including n <= 1) give ``d = 0``. Practical up to about 7 vertices.
    """
    if g.is_complete():
        return 0, BoxRepresentation(0, {v: [] for v in g.vertices})
    vs, gmask = _local_mask(g)
    k = len(vs)
    if d_max is None:
        d_max = k
    for d in range(1, d_max + 1):
        if d == 1 and not _bits.is_interval_mask(k, gmask):
            continue
        cands = (gmask,) if d == 1 else _bits.interval_supergraphs(k, gmask)
        found = _cover_search(k, gmask, d, cands)
        if found is None:
            continue
        models = [IntervalModel({v: (pos[2 * i], pos[2 * i + 1]) for i, v in enumerate(vs)})
                  for pos in found]
        return d, from_models(models)
    return None
