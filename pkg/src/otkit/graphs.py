"""Graphs of the pipeline: edge lists, graph6 input, stacked triangulations.

Two text formats are supported.  The plain edge-list format writes the
endpoints of all edges in one line, "u1 v1 u2 v2 ... um vm".  The graph6
format is the standard 6-bit encoding used by plantri and nauty (only
n <= 62, which covers everything here).

A stacked triangulation (planar 3-tree) is grown from a triangle by
repeatedly putting a new vertex inside a face and joining it to the three
face vertices.  Since triangulations on >= 4 vertices are 3-connected,
their planar embedding is unique up to reflection; faces are therefore
tracked through the stacking construction itself and isomorphism testing
uses a canonical traversal of the rotation system instead of a general
graph isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import DuplicateEdge, Loop, NotStacked, ParseError

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class Graph:
    """Simple labeled graph on vertices 0..n-1."""

    n: int
    edges: frozenset[Edge]

    @classmethod
    def from_edges(cls, edges: Sequence[Edge], n: Optional[int] = None) -> "Graph":
        norm = []
        seen = set()
        top = -1
        for u, v in edges:
            if u == v:
                raise Loop(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdge(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
            top = max(top, e[1])
        if n is None:
            n = top + 1
        elif top >= n:
            raise ParseError(f"edge endpoint {top} exceeds vertex count {n}")
        return cls(n, frozenset(norm))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


# ---------------------------------------------------------------------------
# text formats


def parse_edge_list(line: str) -> Graph:
    tokens = line.split()
    if len(tokens) % 2 != 0:
        raise ParseError(f"odd token count {len(tokens)}")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from None
    if any(x < 0 for x in nums):
        raise ParseError("negative vertex label")
    return Graph.from_edges(list(zip(nums[0::2], nums[1::2])))


def emit_edge_list(g: Graph) -> str:
    return " ".join(f"{u} {v}" for u, v in sorted(g.edges))


def read_edge_list_file(path) -> list[Graph]:
    graphs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(parse_edge_list(line))
    return graphs


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (n <= 62: header byte n+63, then the upper
    triangle of the adjacency matrix column by column, 6 bits per byte)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ParseError("empty graph6 string", offset=0)
    n = ord(s[0]) - 63
    if n < 0 or n > 62:
        raise ParseError(f"unsupported graph6 header byte {s[0]!r}", offset=0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - 1 != need:
        raise ParseError(
            f"expected {need} payload bytes for n={n}, got {len(s) - 1}",
            offset=len(s),
        )
    bits = []
    for pos, ch in enumerate(s[1:], start=1):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ParseError(f"byte {ch!r} outside graph6 range", offset=pos)
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return Graph(n, frozenset(edges))


def read_graph6_file(path) -> list[Graph]:
    graphs = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                graphs.append(parse_graph6(line))
    return graphs


# ---------------------------------------------------------------------------
# triangulation predicates


def is_triangulation_candidate(g: Graph) -> bool:
    """Necessary conditions for a (maximal planar) triangulation: connected,
    3n-6 edges, minimum degree 3.  Planarity itself is certified downstream,
    by stackedness or by a successful embedding."""
    if g.n < 4:
        return False
    if len(g.edges) != 3 * g.n - 6:
        return False
    if min(g.degrees()) < 3:
        return False
    return g.is_connected()


@dataclass(frozen=True)
class StackingOrder:
    """Construction order of a stacked triangulation, after relabeling so
    that vertex k is stacked into a face of the graph on 0..k-1."""

    n: int
    steps: tuple[Triangle, ...]  # face receiving vertex k, for k = 3..n-1
    faces: tuple[Triangle, ...]  # oriented faces of the finished graph
    relabeling: tuple[int, ...]  # relabeling[old_label] = new_label

    def graph(self) -> Graph:
        edges = {(0, 1), (0, 2), (1, 2)}
        for k, (a, b, c) in enumerate(self.steps, start=3):
            edges.update(
                tuple(sorted(p)) for p in ((a, k), (b, k), (c, k))
            )
        return Graph(self.n, frozenset(edges))


def _replay_faces(n: int, steps: Sequence[Triangle]) -> Optional[tuple[Triangle, ...]]:
    """Oriented faces after stacking; None if some step is not a face."""
    faces: list[Triangle] = [(0, 1, 2), (0, 2, 1)]
    by_set = {frozenset((0, 1, 2)): [0, 1]}
    for k, tri in enumerate(steps, start=3):
        slots = by_set.get(frozenset(tri))
        if not slots:
            return None
        pos = slots[0]
        a, b, c = faces[pos]
        replacement = [(a, b, k), (b, c, k), (c, a, k)]
        faces[pos] = replacement[0]
        faces.extend(replacement[1:])
        slots.remove(pos)
        if not slots:
            del by_set[frozenset(tri)]
        by_set[frozenset((a, b, k))] = [pos]
        by_set.setdefault(frozenset((b, c, k)), []).append(len(faces) - 2)
        by_set.setdefault(frozenset((c, a, k)), []).append(len(faces) - 1)
    return tuple(faces)


def recognize_stacked(g: Graph) -> Optional[StackingOrder]:
    """Peel degree-3 vertices with triangle neighborhoods down to K4, then
    replay the construction; None if the graph is not stacked."""
    if not is_triangulation_candidate(g):
        return None
    adj = g.adjacency()
    alive = set(range(g.n))
    peel: list[tuple[int, frozenset[int]]] = []
    while len(alive) > 4:
        victim = None
        for v in sorted(alive):
            if len(adj[v]) == 3:
                a, b, c = sorted(adj[v])
                if b in adj[a] and c in adj[a] and c in adj[b]:
                    victim = v
                    break
        if victim is None:
            return None
        peel.append((victim, frozenset(adj[victim])))
        for w in adj[victim]:
            adj[w].discard(victim)
        adj[victim] = set()
        alive.discard(victim)
    base = sorted(alive)
    if any(len(adj[v]) != 3 for v in base):
        return None

    relabel = {old: new for new, old in enumerate(base)}
    steps: list[Triangle] = [(0, 1, 2)]
    for new_label, (old, nbrs) in enumerate(reversed(peel), start=4):
        tri = tuple(sorted(relabel[w] for w in nbrs))
        if len(tri) != 3:
            return None
        steps.append(tri)  # placeholder; validated by replay below
        relabel[old] = new_label
    faces = _replay_faces(g.n, steps)
    if faces is None:
        return None
    order = StackingOrder(
        n=g.n,
        steps=tuple(steps),
        faces=faces,
        relabeling=tuple(relabel[v] for v in range(g.n)),
    )
    # replay soundness: the relabeled graph must reproduce the input
    expect = frozenset(
        tuple(sorted((order.relabeling[u], order.relabeling[v]))) for u, v in g.edges
    )
    if order.graph().edges != expect:
        return None
    return order


def faces_all_have_degree3_vertex(g: Graph) -> bool:
    """Whether every face of the (unique) embedding touches a degree-3
    vertex.  Only defined for stacked triangulations."""
    order = recognize_stacked(g)
    if order is None:
        raise NotStacked("face predicate requires a stacked triangulation")
    relabeled = order.graph()
    deg = relabeled.degrees()
    return all(any(deg[v] == 3 for v in face) for face in order.faces)


# ---------------------------------------------------------------------------
# canonical form via the rotation system


def _rotation_maps(n: int, faces: Sequence[Triangle]):
    nxt = [dict() for _ in range(n)]
    for a, b, c in faces:
        nxt[a][b] = c
        nxt[b][c] = a
        nxt[c][a] = b
    prv = [dict() for _ in range(n)]
    for v in range(n):
        for x, y in nxt[v].items():
            prv[v][y] = x
    return nxt, prv


def _traversal_code(n, edges, rot, start_u, start_v):
    labels = {start_u: 0}
    order = [start_u]
    ref = {start_u: start_v}
    for x in order:
        r = rot[x]
        y = ref[x]
        for _ in range(len(r)):
            if y not in labels:
                labels[y] = len(order)
                order.append(y)
                ref[y] = x
            y = r[y]
    code = sorted(
        (labels[u], labels[v]) if labels[u] < labels[v] else (labels[v], labels[u])
        for u, v in edges
    )
    return tuple(code)


def triangulation_certificate(g: Graph, faces: Sequence[Triangle]) -> tuple:
    """Canonical edge code: minimum over all rotation-system traversals
    (every directed edge as root, both orientations).  Two stacked
    triangulations are isomorphic iff their certificates are equal, because
    3-connected planar graphs embed uniquely up to reflection."""
    nxt, prv = _rotation_maps(g.n, faces)
    best = None
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            for rot in (nxt, prv):
                code = _traversal_code(g.n, g.edges, rot, a, b)
                if best is None or code < best:
                    best = code
    return best


def generate_stacked(n: int) -> list[Graph]:
    """All non-isomorphic stacked triangulations on n vertices (4 <= n <= 12)."""
    if not 4 <= n <= 12:
        raise ValueError(f"n={n} outside supported range 4..12")
    k4_steps = [(0, 1, 2)]
    level = {(): None}  # seeded below
    current = [(Graph.from_edges([(a, b) for a, b in combinations(range(4), 2)]),
                _replay_faces(4, k4_steps), tuple(k4_steps))]
    for size in range(5, n + 1):
        seen = {}
        for g, faces, steps in current:
            for face in {tuple(sorted(f)) for f in faces}:
                new_steps = steps + (face,)
                new_faces = _replay_faces(size, new_steps)
                edges = set(g.edges)
                for v in face:
                    edges.add((v, size - 1))
                child = Graph(size, frozenset(edges))
                cert = triangulation_certificate(child, new_faces)
                if cert not in seen:
                    seen[cert] = (child, new_faces, new_steps)
        current = [seen[c] for c in sorted(seen)]
    return [g for g, _, _ in current]


def count_labeled_stackings(n: int) -> int:
    """Number of distinct labeled stacking sequences, counting every face
    choice at every step (no isomorphism rejection)."""
    total = 0
    stack = [(4, [(0, 1, 2)])]
    while stack:
        size, steps = stack.pop()
        if size == n:
            total += 1
            continue
        faces = _replay_faces(size, steps)
        for face in {tuple(sorted(f)) for f in faces}:
            stack.append((size + 1, steps + [face]))
    return total


def filter_max_degree(graphs: Sequence[Graph], d: int, exact: bool = False) -> list[Graph]:
    """Graphs with maximum degree <= d, or exactly d with exact=True."""
    out = []
    for g in graphs:
        m = max(g.degrees())
        if (m == d) if exact else (m <= d):
            out.append(g)
    return out
