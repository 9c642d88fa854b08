"""The block B, the spiral family G^n, and the K_{2,n} example.

Vertex ids: block ``i`` (1-based) owns ``8(i-1) .. 8(i-1)+7`` in the order
u, v, w1..w6, which is also the bandwidth labeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import _bits
from .boxrep import BoxRepresentation, verify
from .graph import Graph, induced_subgraph
from .interval import IntervalModel

NAMES = ("u", "v", "w1", "w2", "w3", "w4", "w5", "w6")


class ConstructionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    blocks: tuple[dict[str, int], ...]

    @property
    def n(self) -> int:
        return len(self.blocks)

    def named(self, name: str) -> list[int]:
        """The vertex called ``name`` in every block, in block order."""
        return [b[name] for b in self.blocks]


def _block_ids(i: int) -> dict[str, int]:
    return {name: 8 * (i - 1) + k for k, name in enumerate(NAMES)}


def _block_edges(b: dict[str, int]) -> list[tuple[int, int]]:
    ws = [b[f"w{j}"] for j in range(1, 7)]
    edges = list(zip(ws, ws[1:]))
    edges += [(b["u"], w) for w in ws]
    edges += [(b["v"], w) for w in ws]
    return edges


def _cross_edges(lo: dict[str, int], hi: dict[str, int]) -> list[tuple[int, int]]:
    return [(hi["u"], lo["u"]), (hi["u"], lo["v"]), (hi["u"], lo["w4"]),
            (hi["v"], lo["v"]), (hi["v"], lo["w3"]),
            (hi["w1"], lo["v"])]


def build_gn(n: int) -> GadgetGraph:
    if n < 1:
        raise ValueError("n must be positive")
    blocks = tuple(_block_ids(i) for i in range(1, n + 1))
    edges = []
    for b in blocks:
        edges += _block_edges(b)
    for lo, hi in zip(blocks, blocks[1:]):
        edges += _cross_edges(lo, hi)
    return GadgetGraph(Graph(range(8 * n), edges), blocks)


def build_block() -> GadgetGraph:
    return build_gn(1)


def gn_labeling(n: int) -> dict[int, int]:
    return {v: v for v in range(8 * n)}


def induced_c4s(gadget: GadgetGraph) -> list[tuple[int, int, int, int]]:
    """Every u w_i v w_j u with w_i, w_j non-adjacent that is an induced 4-cycle."""
    g = gadget.graph
    out = []
    for b in gadget.blocks:
        for i, j in combinations(range(1, 7), 2):
            wi, wj = b[f"w{i}"], b[f"w{j}"]
            if g.has_edge(wi, wj):
                continue
            cyc = (b["u"], wi, b["v"], wj)
            h = induced_subgraph(g, cyc)
            if h.m == 4 and all(len(h.neighbors(x)) == 2 for x in cyc):
                out.append(cyc)
    return out


# --- the explicit 2-box representation -------------------------------------

# Boxes of one block in its own frame, (x-interval, y-interval). The u and v
# boxes stretch left and are stacked below/above the w column; w_j are tall
# boxes overlapping exactly their path neighbours in x. The small offsets
# keep all endpoints distinct.
_BASE = {
    "u": ((-900, 90), (90, 100)),
    "v": ((-185, 89), (0, 10)),
    **{f"w{j}": ((10 * j, 10 * j + 14), (5 + Fraction(j, 8), 95 - Fraction(j, 8))) for j in range(1, 7)},
}


def _turn(box):
    """Frame of the next block: rotate by -90 degrees, scale by 1/10, shift.

    (x, y) -> (35.5 + y/10, 3/2 - x/10). This places the next u inside the
    strip of w4, the next v over w3 and the next w1 on top of v, and every
    other part of the next block in the gap below the current one.
    """
    (x0, x1), (y0, y1) = box
    return ((Fraction(71, 2) + y0 / 10, Fraction(71, 2) + y1 / 10),
            (Fraction(3, 2) - x1 / 10, Fraction(3, 2) - x0 / 10))


def _rank_dimension(values: dict[int, tuple[Fraction, Fraction]]) -> dict[int, tuple[int, int]]:
    events = []
    for v, (lo, hi) in values.items():
        events.append((lo, v, 0))
        events.append((hi, v, 1))
    events.sort()
    for a, b in zip(events, events[1:]):
        if a[0] == b[0]:
            raise ConstructionFailed(f"endpoint tie between vertices {a[1]} and {b[1]}")
    out: dict[int, list[int]] = {}
    for pos, (_, v, side) in enumerate(events, start=1):
        out.setdefault(v, [0, 0])[side] = pos
    return {v: (p[0], p[1]) for v, p in out.items()}


def gn_box_representation(n: int) -> BoxRepresentation:
    """A 2-box representation of G^n; each block is the previous one turned a quarter."""
    gadget = build_gn(n)
    shape = {name: tuple(tuple(Fraction(c) for c in iv) for iv in box) for name, box in _BASE.items()}
    xs, ys = {}, {}
    for b in gadget.blocks:
        for name, v in b.items():
            xs[v], ys[v] = shape[name]
        shape = {name: _turn(box) for name, box in shape.items()}
    rx, ry = _rank_dimension(xs), _rank_dimension(ys)
    rep = BoxRepresentation(2, {v: [rx[v], ry[v]] for v in gadget.graph.vertices})
    verdict = verify(gadget.graph, rep)
    if not verdict:
        raise ConstructionFailed(f"spiral representation fails verification: {verdict}")
    return rep


def uv_dimensions(gadget: GadgetGraph, rep: BoxRepresentation) -> list[int]:
    """Per block, the dimension in which the u and v intervals intersect."""
    out = []
    for b in gadget.blocks:
        (u, v) = rep.boxes[b["u"]], rep.boxes[b["v"]]
        hits = [i for i in range(rep.d) if max(u[i][0], v[i][0]) < min(u[i][1], v[i][1])]
        if len(hits) != 1:
            raise ConstructionFailed(f"u and v of a block intersect in dimensions {hits}")
        out.append(hits[0])
    return out


# --- block exhaustion --------------------------------------------------------

@dataclass
class BlockExhaustion:
    pairs: int
    violations: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def block_exhaustion() -> BlockExhaustion:
    """Check property (uv in one model, w1..w6 a clique in the other) on every 2-model realisation of B.

    The property only depends on the two interval graphs, so it is checked
    on every pair of interval supergraphs of B intersecting to B; each
    2-tuple of models realising B has such a pair as its graphs.
    """
    g = build_block().graph
    k = 8
    bits = _bits.pair_bits(k)
    gmask = 0
    for a, b in g.edges:
        gmask |= bits[a][b]
    uv = bits[0][1]
    wclique = 0
    for a, b in combinations(range(2, 8), 2):
        wclique |= bits[a][b]
    cands = _bits.interval_supergraphs(k, gmask)
    pairs = 0
    bad = []
    for h1 in cands:
        for h2 in cands:
            if h1 & h2 != gmask:
                continue
            pairs += 1
            good = any(hk & uv and (ho & wclique) == wclique for hk, ho in ((h1, h2), (h2, h1)))
            if not good:
                bad.append((h1, h2))
    return BlockExhaustion(pairs, bad)


# --- K_{2,n} -----------------------------------------------------------------

def build_k2n(n: int) -> tuple[Graph, IntervalModel, IntervalModel]:
    """K_{2,n} on x = 0, y = 1, v_i = i + 1 with two interval models meeting in it.

    The first model is K_{2,n} plus xy, the second K_{2,n} plus a clique on
    the v_i.
    """
    if n < 1:
        raise ValueError("n must be positive")
    x, y = 0, 1
    vs = list(range(2, n + 2))
    g = Graph([x, y, *vs], [(a, v) for a in (x, y) for v in vs])
    seq1 = [(x, 0), (y, 0)]
    for v in vs:
        seq1 += [(v, 0), (v, 1)]
    seq1 += [(x, 1), (y, 1)]
    seq2 = [(x, 0), *((v, 0) for v in vs), (x, 1), (y, 0), *((v, 1) for v in vs), (y, 1)]
    return g, IntervalModel.from_sequence(seq1), IntervalModel.from_sequence(seq2)


# --- stab number -------------------------------------------------------------

def stab_analysis(rep: BoxRepresentation, s) -> tuple[int, int, int]:
    """(dimension, point, count) maximising the number of s-intervals containing the point.

    Only left endpoints need checking; with distinct endpoints the count at
    the best one equals the largest clique of s in that dimension.
    """
    s = sorted(s)
    best = (0, 0, 0)
    for dim in range(rep.d):
        ivs = [rep.boxes[v][dim] for v in s]
        for p in sorted(lo for lo, _ in ivs):
            c = sum(1 for lo, hi in ivs if lo <= p <= hi)
            if c > best[2]:
                best = (dim, p, c)
    return best
