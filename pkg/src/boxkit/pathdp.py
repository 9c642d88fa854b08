"""Boxicity within an additive 1 from a path decomposition.

For a fixed ``d`` the DP walks the bags left to right. A layer holds
d-tuples of endpoint orders (canonical interval models) on the current bag
whose intersection is the graph induced by the bag, each consistent with
some tuple of the previous layer. If every layer is non-empty the graph is
the intersection of ``d + 1`` interval graphs (the extra one is the
interval graph of the decomposition itself); if a layer empties,
``box(G) > d``.

Endpoint orders are tuples of ``(vertex, side)`` tokens, side 0 for a left
and 1 for a right endpoint. Consistency of two models only concerns their
shared vertices, and tuples of consecutive bags share exactly
``W_s & W_{s+1}``, so a tuple is summarised for the next layer by its
orders restricted to that set (the *state*). Tuples of a layer are
generated by inserting the bag's new vertices into a predecessor state,
which yields each consistent tuple exactly once.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

from . import _bits
from .boxrep import BoxRepresentation, from_models, verify
from .graph import Graph, bandwidth_of_labeling
from .interval import IntervalModel, is_consistent, merge_consistent

Order = tuple[tuple[int, int], ...]
State = tuple[Order, ...]


class InvalidDecomposition(ValueError):
    pass


class UncoveredVertex(InvalidDecomposition):
    def __init__(self, v):
        super().__init__(f"vertex {v} is in no bag")
        self.witness = v


class UncoveredEdge(InvalidDecomposition):
    def __init__(self, e):
        super().__init__(f"edge {e} is in no bag")
        self.witness = e


class BrokenContiguity(InvalidDecomposition):
    def __init__(self, v, bags):
        super().__init__(f"vertex {v} occurs in non-consecutive bags {bags}")
        self.witness = (v, bags)


class ReconstructionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]]) -> PathDecomposition:
        return cls(tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def normalized(self) -> PathDecomposition:
        """Drop empty bags and bags contained in a neighbouring bag.

        Afterwards every bag introduces a vertex unseen before it, so there
        are at most ``|V|`` bags.
        """
        bags = [b for b in self.bags if b]
        changed = True
        while changed:
            changed = False
            for i, b in enumerate(bags):
                if (i > 0 and b <= bags[i - 1]) or (i + 1 < len(bags) and b <= bags[i + 1]):
                    del bags[i]
                    changed = True
                    break
        return PathDecomposition(tuple(bags))

    def to_text(self) -> str:
        return "".join(" ".join(map(str, sorted(b))) + "\n" for b in self.bags)

    @classmethod
    def from_text(cls, text: str) -> PathDecomposition:
        bags = []
        for no, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                bags.append([int(tok) for tok in line.split()])
            except ValueError:
                raise InvalidDecomposition(f"line {no}: non-integer vertex id") from None
        return cls.of(bags)


def validate_pd(g: Graph, pd: PathDecomposition) -> int:
    where: dict[int, list[int]] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            if v not in g:
                raise InvalidDecomposition(f"bag {i} contains unknown vertex {v}")
            where.setdefault(v, []).append(i)
    for v in g.sorted_vertices():
        if v not in where:
            raise UncoveredVertex(v)
    for v, idx in sorted(where.items()):
        if idx[-1] - idx[0] + 1 != len(idx):
            raise BrokenContiguity(v, idx)
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in pd.bags):
            raise UncoveredEdge((u, v))
    return pd.width


def star_model(pd: PathDecomposition) -> IntervalModel:
    """Interval graph of the decomposition: adjacent iff some bag holds both.

    Vertex v gets [first bag, last bag]; at a shared bag index all left
    endpoints precede all right endpoints, so touching ranges overlap.
    """
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            first.setdefault(v, i)
            last[v] = i
    events = []
    for v in first:
        events.append((first[v], 0, v))
        events.append((last[v], 1, v))
    events.sort()
    return IntervalModel.from_sequence((v, side) for _, side, v in events)


def window_pd(g: Graph, lab: Mapping[int, int], width: int) -> PathDecomposition:
    """Sliding windows of ``width + 1`` consecutive vertices in label order."""
    bw = bandwidth_of_labeling(g, lab)
    if bw > width:
        raise InvalidDecomposition(f"labeling has bandwidth {bw} > {width}")
    order = sorted(g.vertices, key=lab.__getitem__)
    if len(order) <= width + 1:
        return PathDecomposition.of([order])
    return PathDecomposition.of(order[i:i + width + 1] for i in range(len(order) - width))


def optimal_path_decomposition(g: Graph) -> PathDecomposition:
    """Minimum-width decomposition by subset DP on vertex separation (small graphs only)."""
    vs = g.sorted_vertices()
    n = len(vs)
    if n == 0:
        return PathDecomposition(())
    idx = {v: i for i, v in enumerate(vs)}
    nb = [0] * n
    for u, v in g.edges:
        nb[idx[u]] |= 1 << idx[v]
        nb[idx[v]] |= 1 << idx[u]
    full = (1 << n) - 1

    def boundary(s: int) -> int:
        c = 0
        x = s
        while x:
            low = x & -x
            if nb[low.bit_length() - 1] & ~s:
                c += 1
            x ^= low
        return c

    best = [0] * (1 << n)
    choice = [0] * (1 << n)
    for s in range(1, 1 << n):
        val = None
        x = s
        while x:
            low = x & -x
            rest = s ^ low
            cand = max(best[rest], boundary(rest))
            if val is None or cand < val:
                val, choice[s] = cand, low.bit_length() - 1
            x ^= low
        best[s] = val
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    bags = []
    for i in range(n):
        prefix = 0
        for j in range(i):
            prefix |= 1 << order[j]
        suffix = full & ~prefix
        bag = {vs[order[i]]}
        for j in range(i):
            if nb[order[j]] & suffix:
                bag.add(vs[order[j]])
        bags.append(bag)
    return PathDecomposition.of(bags).normalized()


# --- the DP ------------------------------------------------------------------

@dataclass
class DPLayer:
    """Tuples kept for one bag.

    ``entries`` maps a state (restriction to the next shared set) to one
    representative tuple with that state and the predecessor state it
    extends. ``tuple_count`` is the number of tuples in the layer when the
    layer was built exhaustively, else None.
    """

    index: int
    bag: frozenset[int]
    entries: dict[State, tuple[State, State]] = field(default_factory=dict)
    tuple_count: int | None = None


@dataclass
class DPChain:
    g: Graph
    pd: PathDecomposition
    d: int
    layers: list[DPLayer]
    wall_time: float = 0.0

    def report(self) -> dict:
        return {"d": self.d,
                "layers": [{"bag": sorted(L.bag), "states": len(L.entries), "tuples": L.tuple_count}
                           for L in self.layers],
                "wall_time": round(self.wall_time, 6)}


class _Bag:
    """Per-bag data for generating and filtering tuples."""

    def __init__(self, g: Graph, bag: frozenset[int], prev: frozenset[int], nxt: frozenset[int]):
        self.vs = sorted(bag)
        self.k = len(self.vs)
        self.idx = {v: i for i, v in enumerate(self.vs)}
        self.new = sorted(bag - prev)
        self.keep = nxt
        bits = _bits.pair_bits(self.k)
        self.bit = {}
        gmask = 0
        self.newbad = 0
        for u, v in combinations(self.vs, 2):
            b = bits[self.idx[u]][self.idx[v]]
            self.bit[u, v] = self.bit[v, u] = b
            if g.has_edge(u, v):
                gmask |= b
            elif u in self.new or v in self.new:
                self.newbad |= b
        self.gmask = gmask
        self.adj = {v: g.neighbors(v) & bag for v in self.vs}
        self.nxt: _Bag | None = None
        self._cands = None
        self._cover: dict[tuple[int, int], bool] = {}
        self._groups = None
        self._admits: dict[tuple[int, ...], bool] = {}

    def candidates(self) -> tuple[int, ...]:
        """Interval supergraphs of the bag graph, or () when there are too many to list."""
        if self._cands is None:
            free = _bits.full_mask(self.k) & ~self.gmask
            if bin(free).count("1") > 16:
                self._cands = ()
            else:
                self._cands = _bits.interval_supergraphs(self.k, self.gmask)
        return self._cands

    def mask_of(self, order: Order) -> int:
        """Edge mask, in this bag's local bits, of a model given by its endpoint order."""
        span = {}
        for i, (u, side) in enumerate(order):
            if side == 0:
                span[u] = [i, 0]
            else:
                span[u][1] = i
        items = list(span.items())
        mask = 0
        for a in range(len(items)):
            u, (lu, ru) = items[a]
            for b in range(a + 1, len(items)):
                v, (lv, rv) = items[b]
                if max(lu, lv) < min(ru, rv):
                    mask |= self.bit[u, v]
        return mask

    def _by_restriction(self) -> dict[int, tuple[int, ...]] | None:
        # candidates grouped by their restriction to the pairs inside the
        # incoming shared set; values are the surplus (non-edge) bits
        if self._groups is None:
            cands = self.candidates()
            if not cands:
                self._groups = {}
                return None
            inside = 0
            shared = [v for v in self.vs if v not in self.new]
            for u, v in combinations(shared, 2):
                inside |= self.bit[u, v]
            groups: dict[int, set[int]] = {}
            for h in cands:
                groups.setdefault(h & inside, set()).add(h & ~self.gmask)
            self._groups = {key: tuple(sorted(v)) for key, v in groups.items()}
        return self._groups or None

    def admits_one(self, order: Order) -> bool:
        groups = self._by_restriction()
        return groups is None or self.mask_of(order) in groups

    def admits(self, state: State) -> bool:
        """Mask-level necessary condition for ``state`` to have a valid extension here."""
        groups = self._by_restriction()
        if groups is None:
            return True
        masks = tuple(sorted(self.mask_of(o) for o in state))
        hit = self._admits.get(masks)
        if hit is not None:
            return hit
        lists = [groups.get(m) for m in masks]
        hit = False
        if all(lists):
            seen = set()

            def rec(i: int, running: int) -> bool:
                if i == len(lists):
                    return running == 0
                if (i, running) in seen:
                    return False
                seen.add((i, running))
                return any(rec(i + 1, running & extra) for extra in lists[i])

            hit = rec(0, -1)
        self._admits[masks] = hit
        return hit

    def coverable(self, uncovered: int, left: int) -> bool:
        """Mask-level necessary condition: ``left`` interval supergraphs of the
        bag graph can jointly avoid every pair in ``uncovered``."""
        if left == 0:
            return uncovered == 0
        if uncovered == 0:
            return True
        cands = self.candidates()
        if not cands:
            return True
        key = (uncovered, left)
        hit = self._cover.get(key)
        if hit is None:
            hit = any(self.coverable(uncovered & h, left - 1) for h in cands)
            self._cover[key] = hit
        return hit

    def extensions(self, base: Order, forbidden: int = 0) -> Iterator[tuple[Order, int]]:
        """Insert the new vertices into ``base`` in every admissible way.

        Yields ``(order, bad)`` where ``bad`` collects the non-edges of the
        bag graph realised by the order; every edge is realised and no pair
        of ``forbidden`` is.
        """
        seq = list(base)
        new = self.new
        bit = self.bit
        adj = self.adj

        def rec(t: int, bad: int):
            if t == len(new):
                yield tuple(seq), bad
                return
            x = new[t]
            nbx = adj[x]
            span = {}
            for i, (u, side) in enumerate(seq):
                if side == 0:
                    span[u] = [i, 0]
                else:
                    span[u][1] = i
            items = [(u, pl, pr, bit[x, u], u in nbx) for u, (pl, pr) in span.items()]
            n = len(seq)
            for a in range(n + 1):
                for b in range(a, n + 1):
                    extra = 0
                    ok = True
                    for u, pl, pr, bu, is_edge in items:
                        if b > pl and a <= pr:
                            if not is_edge:
                                if forbidden & bu:
                                    ok = False
                                    break
                                extra |= bu
                        elif is_edge:
                            ok = False
                            break
                    if not ok:
                        continue
                    seq.insert(b, (x, 1))
                    seq.insert(a, (x, 0))
                    yield from rec(t + 1, bad | extra)
                    del seq[a]
                    del seq[b]

        yield from rec(0, 0)

    def state_of(self, order: Order) -> Order:
        keep = self.keep
        return tuple(tok for tok in order if tok[0] in keep)

    def tuples(self, state: State, d: int) -> Iterator[tuple[State, State]]:
        """Valid d-tuples extending ``state``, one per distinct continuation.

        Tuples agreeing in their next state and in the non-edges still
        uncovered lead to identical searches, so only the first is yielded.
        """
        chosen: list[Order] = []
        nxt = self.nxt

        def rec(i: int, uncovered: int):
            last = i == d - 1
            seen = set()
            for order, bad in self.extensions(state[i], uncovered if last else 0):
                rest = uncovered & bad
                if not self.coverable(rest, d - i - 1):
                    continue
                nk = self.state_of(order)
                if (nk, rest) in seen:
                    continue
                seen.add((nk, rest))
                if nxt is not None and not nxt.admits_one(nk):
                    continue
                chosen.append(order)
                if last:
                    state_out = tuple(self.state_of(o) for o in chosen)
                    if nxt is None or nxt.admits(state_out):
                        yield tuple(chosen), state_out
                else:
                    yield from rec(i + 1, rest)
                chosen.pop()

        yield from rec(0, self.newbad)

    def all_tuples(self, state: State, d: int) -> tuple[int, dict[State, State]]:
        """Count every valid tuple extending ``state``; one representative per next state."""
        groups = []
        for i in range(d):
            per: dict[tuple[Order, int], list] = {}
            for order, bad in self.extensions(state[i]):
                key = (self.state_of(order), bad)
                slot = per.get(key)
                if slot is None:
                    per[key] = [order, 1]
                else:
                    slot[1] += 1
            groups.append(list(per.items()))
        count = 0
        reps: dict[State, State] = {}

        def rec(i: int, uncovered: int, mult: int, orders: list, nks: list):
            nonlocal count
            if i == d:
                if uncovered == 0:
                    count += mult
                    reps.setdefault(tuple(nks), tuple(orders))
                return
            for (nk, bad), (order, c) in groups[i]:
                orders.append(order)
                nks.append(nk)
                rec(i + 1, uncovered & bad, mult * c, orders, nks)
                orders.pop()
                nks.pop()

        rec(0, self.newbad, 1, [], [])
        return count, reps


def _bag_specs(g: Graph, pd: PathDecomposition) -> list[_Bag]:
    bags = pd.bags
    out = []
    for s, bag in enumerate(bags):
        prev = bags[s - 1] & bag if s > 0 else frozenset()
        nxt = bags[s + 1] & bag if s + 1 < len(bags) else frozenset()
        out.append(_Bag(g, bag, prev, nxt))
    for a, b in zip(out, out[1:]):
        a.nxt = b
    return out


def dp_feasible(g: Graph, pd: PathDecomposition, d: int, exhaustive: bool = False) -> DPChain | None:
    """Run the DP for ``d``; a chain of non-empty layers, or None if ``box(g) > d``.

    By default the layers are explored depth-first and the search stops at
    the first complete chain (each returned layer then holds the tuple used
    by that chain); failed states are memoised. With ``exhaustive=True``
    every layer is built in full and its tuple count recorded.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    validate_pd(g, pd)
    pd = pd.normalized()
    t0 = time.perf_counter()
    specs = _bag_specs(g, pd)
    start: State = tuple(() for _ in range(d))
    if exhaustive:
        layers = _layers_exhaustive(specs, d, start)
    else:
        layers = _layers_search(specs, d, start)
    if layers is None:
        return None
    return DPChain(g, pd, d, layers, time.perf_counter() - t0)


def _layers_exhaustive(specs: list[_Bag], d: int, start: State) -> list[DPLayer] | None:
    layers = []
    states = [start]
    for s, spec in enumerate(specs):
        layer = DPLayer(s, frozenset(spec.vs), tuple_count=0)
        for st in states:
            count, reps = spec.all_tuples(st, d)
            layer.tuple_count += count
            for nk, tup in reps.items():
                layer.entries.setdefault(nk, (tup, st))
        bound = (factorial(2 * spec.k) >> spec.k) ** d
        assert layer.tuple_count <= bound, "layer exceeds the number of canonical tuples"
        if not layer.entries:
            return None
        layers.append(layer)
        states = list(layer.entries)
    return layers


def _layers_search(specs: list[_Bag], d: int, start: State) -> list[DPLayer] | None:
    dead: set[tuple[int, State]] = set()
    path: list[tuple[State, State, State]] = []

    def rec(s: int, state: State) -> bool:
        if s == len(specs):
            return True
        if (s, state) in dead:
            return False
        for tup, nk in specs[s].tuples(state, d):
            if (s + 1, nk) in dead:
                continue
            path.append((tup, state, nk))
            if rec(s + 1, nk):
                return True
            path.pop()
        dead.add((s, state))
        return False

    if not rec(0, start):
        return None
    layers = []
    for s, (tup, prev, nk) in enumerate(path):
        layers.append(DPLayer(s, frozenset(specs[s].vs), {nk: (tup, prev)}))
    return layers


def reconstruct(chain: DPChain, pd: PathDecomposition | None = None) -> BoxRepresentation:
    """A (d+1)-box representation from a feasible chain.

    Follows predecessor links back from the last layer, merges each
    dimension's per-bag models left to right, and appends the interval
    graph of the decomposition as the last dimension.
    """
    pd = (pd or chain.pd).normalized()
    layers = chain.layers
    picked: list[State] = []
    key = next(iter(layers[-1].entries))
    for layer in reversed(layers):
        tup, prev = layer.entries[key]
        picked.append(tup)
        key = prev
    picked.reverse()
    models = []
    for i in range(chain.d):
        acc = IntervalModel.from_sequence(picked[0][i])
        for tup in picked[1:]:
            piece = IntervalModel.from_sequence(tup[i])
            if not is_consistent(acc, piece):
                raise ReconstructionFailed(f"dimension {i}: consecutive bag models are inconsistent")
            acc = merge_consistent(acc, piece)
        models.append(acc)
    models.append(star_model(pd))
    rep = from_models(models)
    verdict = verify(chain.g, rep)
    if not verdict:
        raise ReconstructionFailed(f"reconstructed representation fails verification: {verdict}")
    return rep


@dataclass
class Approximation:
    d: int
    rep: BoxRepresentation
    chain: DPChain | None
    tried: list[int]
    wall_time: float

    def report(self) -> dict:
        out = {"d": self.d, "rep_dimension": self.rep.d, "tried": self.tried,
               "wall_time": round(self.wall_time, 6)}
        if self.chain is not None:
            out["layers"] = self.chain.report()["layers"]
        return out


def approx_boxicity(g: Graph, pd: PathDecomposition, exhaustive: bool = False) -> Approximation:
    """Smallest feasible d; then ``d <= box(g) <= d + 1`` with a (d+1)-box witness."""
    t0 = time.perf_counter()
    width = validate_pd(g, pd)
    if g.is_complete():
        rep = from_models([star_model(pd.normalized())]) if g.n else BoxRepresentation(1, {})
        return Approximation(0, rep, None, [], time.perf_counter() - t0)
    tried = []
    for d in range(1, width + 3):
        tried.append(d)
        chain = dp_feasible(g, pd, d, exhaustive=exhaustive)
        if chain is not None:
            rep = reconstruct(chain)
            return Approximation(d, rep, chain, tried, time.perf_counter() - t0)
    raise RuntimeError(f"DP infeasible at d = {width + 2}; box(G) <= tw(G) + 2 is violated")
