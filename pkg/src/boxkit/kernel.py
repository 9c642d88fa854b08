"""Kernelization for boxicity parameterized by cluster vertex deletion number.

Pipeline: greedy P3 hitting set ``X`` (3-approximate), removal of true
twins, grouping of the clusters of ``G - X`` into equivalence classes by
their X-neighbourhood signature, and trimming of oversized classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .boxrep import brute_force_boxicity
from .graph import Graph, clusters, find_induced_p3, induced_subgraph


class TwinsPresent(ValueError):
    pass


class KernelTooLarge(RuntimeError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"kernel has {size} vertices; the exact oracle is limited to {limit}")
        self.size = size
        self.limit = limit


def class_bound(k: int) -> int:
    """Class size from which one cluster may be dropped: 2(2k+2)^(2^(k+1)(2^k+k+1))."""
    return 2 * (2 * k + 2) ** (2 ** (k + 1) * (2 ** k + k + 1))


def _excess_over_bound(count: int, k: int) -> int:
    """``max(0, count - class_bound(k))`` without materialising huge bounds."""
    exponent = 2 ** (k + 1) * (2 ** k + k + 1)
    if exponent * math.log2(2 * k + 2) > count.bit_length() + 1:
        return 0
    return max(0, count - class_bound(k))


@dataclass
class EquivalenceClass:
    """Clusters of ``G - X`` with the same set of X-neighbourhoods.

    ``members`` are sorted vertex tuples. ``matching[i]`` maps each
    X-neighbourhood in ``signature`` to the vertex of ``members[i]`` having
    it, which is the bijection between any two members.
    """

    signature: frozenset[frozenset[int]]
    members: list[tuple[int, ...]]
    matching: list[dict[frozenset[int], int]]
    deletion_set: frozenset[int]

    def bijection(self, i: int, j: int) -> dict[int, int]:
        return {self.matching[i][sig]: self.matching[j][sig] for sig in self.signature}


@dataclass
class KernelReport:
    X: list[int]
    classes: list[dict] = field(default_factory=list)
    sound: bool = True
    twins_removed: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"X": self.X, "classes": self.classes, "sound": self.sound}


def cvd_3approx(g: Graph) -> frozenset[int]:
    x: set[int] = set()
    h = g
    while (p3 := find_induced_p3(h)) is not None:
        x.update(p3)
        h = h.remove_vertices(p3)
    return frozenset(x)


def remove_true_twins(g: Graph) -> Graph:
    """Keep the smallest id of every class of vertices with equal closed neighbourhoods.

    This is what repeatedly deleting the larger vertex of the
    lexicographically smallest true-twin pair converges to: deleting a twin
    never creates or destroys twin relations among the survivors.
    """
    keep = {}
    for v in g.sorted_vertices():
        keep.setdefault(g.closed_neighborhood(v), v)
    return induced_subgraph(g, keep.values())


def equivalence_classes(g: Graph, x) -> list[EquivalenceClass]:
    x = frozenset(x)
    rest = induced_subgraph(g, g.vertices - x)
    groups: dict[frozenset, EquivalenceClass] = {}
    for c in clusters(rest):
        nbhd = {}
        for v in sorted(c):
            sig = g.neighbors(v) & x
            if sig in nbhd:
                raise TwinsPresent(f"vertices {nbhd[sig]} and {v} are true twins")
            nbhd[sig] = v
        assert len(c) <= 2 ** len(x), "cluster larger than 2^|X| in a twin-free graph"
        signature = frozenset(nbhd)
        cls = groups.get(signature)
        if cls is None:
            cls = groups[signature] = EquivalenceClass(signature, [], [], x)
        cls.members.append(tuple(sorted(c)))
        cls.matching.append(nbhd)
    return sorted(groups.values(), key=lambda cl: cl.members[0])


def trim_classes(g: Graph, classes: list[EquivalenceClass],
                 threshold_override: int | None = None) -> tuple[Graph, list[int]]:
    """Delete whole clusters from every class larger than the bound.

    Returns the trimmed graph and, per class, the number of deleted
    clusters. Members with the largest minimum vertex id go first.
    """
    drop: set[int] = set()
    deleted = []
    for cls in classes:
        if threshold_override is not None:
            excess = max(0, len(cls.members) - threshold_override)
        else:
            excess = _excess_over_bound(len(cls.members), len(cls.deletion_set))
        victims = sorted(cls.members, key=lambda c: c[0], reverse=True)[:excess]
        for c in victims:
            drop.update(c)
        deleted.append(excess)
    return g.remove_vertices(drop), deleted


def kernelize(g: Graph, threshold_override: int | None = None) -> tuple[Graph, KernelReport]:
    x = cvd_3approx(g)
    h = remove_true_twins(g)
    twins = sorted(g.vertices - h.vertices)
    x = x & h.vertices
    classes = equivalence_classes(h, x)
    out, deleted = trim_classes(h, classes, threshold_override)
    report = KernelReport(
        X=sorted(x),
        classes=[{"signature_size": len(cl.signature), "members": len(cl.members), "deleted": dl}
                 for cl, dl in zip(classes, deleted)],
        sound=threshold_override is None,
        twins_removed=twins,
    )
    return out, report


def solve_fpt(g: Graph, d: int, max_kernel: int = 8) -> bool:
    """Decide ``box(g) <= d`` by running the exact oracle on the kernel."""
    kern, _ = kernelize(g)
    if kern.n > max_kernel and not kern.is_complete():
        raise KernelTooLarge(kern.n, max_kernel)
    return brute_force_boxicity(kern, d_max=d) is not None
