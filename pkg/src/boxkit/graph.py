"""Simple undirected graphs over integer vertex ids, plus edge-list I/O."""

from __future__ import annotations

from collections.abc import Iterable, Mapping


class GraphError(ValueError):
    pass


class NotClusterGraph(GraphError):
    """Raised by :func:`clusters`; ``witness`` is an induced P3 ``(a, b, c)``."""

    def __init__(self, witness):
        super().__init__(f"not a cluster graph: induced P3 {witness}")
        self.witness = witness


class EdgeListParseError(GraphError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Immutable simple graph.

    Vertices are non-negative ints. Edges are stored as ``(u, v)`` with
    ``u < v``. Deleting vertices returns a new graph and never renames the
    survivors.
    """

    __slots__ = ("_adj", "_edges", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise GraphError(f"vertex ids must be non-negative ints, got {v!r}")
            adj.setdefault(v, set())
        canon = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
            canon.add((u, v) if u < v else (v, u))
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._edges = frozenset(canon)
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> Graph:
        edges = [(u, v) for u, ns in adj.items() for v in ns if u < v]
        return cls(adj.keys(), edges)

    @classmethod
    def complete(cls, vertices: Iterable[int]) -> Graph:
        vs = sorted(vertices)
        return cls(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    def sorted_vertices(self) -> list[int]:
        return sorted(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def is_complete(self) -> bool:
        n = len(self._adj)
        return len(self._edges) == n * (n - 1) // 2

    def remove_vertices(self, s: Iterable[int]) -> Graph:
        drop = set(s)
        return induced_subgraph(self, self.vertices - drop)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj.keys() == other._adj.keys() and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._adj), self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    s = set(s)
    unknown = s - g.vertices
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    return Graph(s, [(u, v) for u, v in g.edges if u in s and v in s])


def find_induced_p3(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically smallest ``(a, b, c)`` with ``a < c``, ab and bc edges, ac not.

    Returns None exactly when ``g`` is a cluster graph.
    """
    for a in g.sorted_vertices():
        na = g.neighbors(a)
        for b in sorted(na):
            for c in sorted(g.neighbors(b)):
                if c > a and c not in na:
                    return (a, b, c)
    return None


def true_twin_pairs(g: Graph) -> set[tuple[int, int]]:
    """Adjacent pairs ``(u, v)``, ``u < v``, with equal closed neighbourhoods."""
    return {(u, v) for u, v in g.edges if g.closed_neighborhood(u) == g.closed_neighborhood(v)}


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for s in g.sorted_vertices():
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def clusters(g: Graph) -> list[frozenset[int]]:
    """Partition a cluster graph into its cliques, ordered by smallest member."""
    comps = connected_components(g)
    for comp in comps:
        for v in comp:
            if len(g.neighbors(v)) != len(comp) - 1:
                raise NotClusterGraph(find_induced_p3(induced_subgraph(g, comp)))
    return comps


def bandwidth_of_labeling(g: Graph, lab: Mapping[int, int]) -> int:
    if set(lab) != g.vertices:
        raise GraphError("labeling domain differs from the vertex set")
    if len(set(lab.values())) != len(lab):
        raise GraphError("labeling is not injective")
    return max((abs(lab[u] - lab[v]) for u, v in g.edges), default=0)


def read_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    An optional ``vertices: <ids>`` header declares vertices (isolated ones
    included); each other non-blank line is ``<u> <v>``. ``#`` starts a comment.
    """
    vertices: set[int] = set()
    edges = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            try:
                vertices.update(int(tok) for tok in line[len("vertices:"):].split())
            except ValueError as exc:
                raise EdgeListParseError(no, f"bad vertex id in header: {exc}") from None
            continue
        toks = line.split()
        if len(toks) != 2:
            raise EdgeListParseError(no, f"expected two vertex ids, got {len(toks)} tokens")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise EdgeListParseError(no, f"non-integer vertex id in {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListParseError(no, "vertex ids must be non-negative")
        if u == v:
            raise EdgeListParseError(no, f"self-loop at {u}")
        vertices.update((u, v))
        edges.append((u, v))
    return Graph(vertices, edges)


def write_edge_list(g: Graph) -> str:
    lines = []
    isolated = [v for v in g.sorted_vertices() if not g.neighbors(v)]
    if isolated:
        lines.append("vertices: " + " ".join(map(str, g.sorted_vertices())))
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + ("\n" if lines else "")
