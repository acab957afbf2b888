"""Domination DAGs over isomorphism classes.

Nodes are isomorphism classes dominated by a root object; an edge
``(u, v)`` records that ``v`` is properly dominated by ``u``.  For Hopfian
classes proper and strong domination coincide, so a single edge kind is
stored, and the relation is acyclic and transitive.  A pair of distinct
classes dominating each other is reported as :class:`CycleDetected`
instead of being modelled.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Optional

from .errors import CycleDetected


@dataclass(frozen=True)
class ClassNode:
    id: Hashable
    label: str = ""
    payload: Any = field(default=None, compare=False, hash=False)

    def __str__(self):
        return self.label or str(self.id)


@dataclass
class DominationDAG:
    nodes: dict[Hashable, ClassNode]
    edges: set[tuple[Hashable, Hashable]]
    root: Hashable

    def __post_init__(self):
        self._above: dict = {v: [] for v in self.nodes}
        self._below: dict = {v: [] for v in self.nodes}
        for u, v in self.edges:
            self._above[v].append(u)
            self._below[u].append(v)
        for adj in (self._above, self._below):
            for lst in adj.values():
                lst.sort()

    def above(self, v) -> list:
        """Ids of the nodes that properly dominate ``v``."""
        return self._above[v]

    def below(self, u) -> list:
        return self._below[u]


class ChainCheck(NamedTuple):
    ok: bool
    index: Optional[int] = None
    reason: str = ""


def build(
    nodes: Iterable[ClassNode],
    dominates: Callable[[ClassNode, ClassNode], bool],
    proper: Callable[[ClassNode, ClassNode], bool],
    root: Optional[Hashable] = None,
) -> DominationDAG:
    """Build the proper-domination DAG.

    ``dominates(u, v)`` must be true when ``v`` is dominated by ``u`` and
    ``proper(u, v)`` when the two classes are not isomorphic.  The root
    defaults to the unique node dominating every other node.
    """
    nodes = list(nodes)
    by_id = {n.id: n for n in nodes}
    if len(by_id) != len(nodes):
        raise ValueError("node ids must be unique")

    edges = set()
    for u in nodes:
        for v in nodes:
            if u.id != v.id and proper(u, v) and dominates(u, v):
                edges.add((u.id, v.id))

    for u, v in sorted(edges, key=repr):
        if (v, u) in edges:
            raise CycleDetected(
                f"{by_id[u]} and {by_id[v]} dominate each other but are not isomorphic"
            )
    ts = graphlib.TopologicalSorter({v: set() for v in by_id})
    for u, v in edges:
        ts.add(v, u)
    try:
        order = list(ts.static_order())
    except graphlib.CycleError as exc:
        cycle = " -> ".join(str(by_id[x]) for x in exc.args[1])
        raise CycleDetected(f"domination cycle {cycle}") from None

    # transitive closure, processed top-down so ancestors are complete
    parents: dict[Hashable, list] = {v: [] for v in by_id}
    for u, v in edges:
        parents[v].append(u)
    anc: dict[Hashable, set] = {}
    for v in order:
        anc[v] = set()
        for u in parents[v]:
            anc[v] |= anc[u]
            anc[v].add(u)
    closed = {(u, v) for v in by_id for u in anc[v]}

    if root is None:
        tops = [n for n in by_id if len(anc[n]) == 0]
        full = [t for t in tops if all(t == v or (t, v) in closed for v in by_id)]
        if len(full) != 1:
            raise ValueError("no node dominates every other node; pass root explicitly")
        root = full[0]
    elif root not in by_id:
        raise KeyError(root)
    return DominationDAG(by_id, closed, root)


def _upward_lengths(dag: DominationDAG) -> dict:
    """Longest path (in nodes) from each node up through its dominators."""
    ts = graphlib.TopologicalSorter({v: dag.above(v) for v in dag.nodes})
    up: dict = {}
    for v in ts.static_order():
        up[v] = 1 + max((up[u] for u in dag.above(v)), default=0)
    return up


def longest_chain(dag: DominationDAG) -> tuple[int, list[ClassNode]]:
    """Length and witness of a longest chain, listed smallest class first.

    Among maximal chains the lexicographically smallest id sequence is
    returned.
    """
    if not dag.nodes:
        return 0, []
    up = _upward_lengths(dag)
    best = max(up.values())
    current = min(v for v in dag.nodes if up[v] == best)
    path = [current]
    while up[current] > 1:
        current = min(u for u in dag.above(current) if up[u] == up[current] - 1)
        path.append(current)
    return best, [dag.nodes[v] for v in path]


def verify_chain(chain: list[ClassNode], dag: DominationDAG) -> ChainCheck:
    """Check ``chain`` (smallest first) is a proper-domination chain in ``dag``."""
    seen = {}
    for i, node in enumerate(chain):
        if node.id not in dag.nodes:
            return ChainCheck(False, i, f"{node} is not a node of the DAG")
        if node.id in seen:
            return ChainCheck(False, i, f"{node} repeats position {seen[node.id]}")
        seen[node.id] = i
        if i and (node.id, chain[i - 1].id) not in dag.edges:
            return ChainCheck(False, i, f"{chain[i - 1]} is not properly dominated by {node}")
    return ChainCheck(True)


def class_count(dag: DominationDAG) -> int:
    return len(dag.nodes)


def down_set(dag: DominationDAG, top: Hashable) -> DominationDAG:
    """Sub-DAG of classes dominated by ``top`` (``top`` included)."""
    keep = {top, *dag.below(top)}
    return DominationDAG(
        {k: dag.nodes[k] for k in keep},
        {(u, v) for u, v in dag.edges if u in keep and v in keep},
        top,
    )
