"""Graphs: the combinatorial side of a framework.

Vertices are 0..n-1, edges are unordered pairs stored sorted, so every
edge-indexed vector in the package shares one canonical ordering.
"""

import json
from dataclasses import dataclass, field

from .errors import InvalidInput

__all__ = [
    "Graph",
    "vertex_connectivity",
    "find_clique",
    "graph_from_json_dict",
    "graph_to_json_dict",
    "load_graph",
    "save_graph",
    "builtin_graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "wheel_graph",
    "complete_bipartite_graph",
    "prism_graph",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``edges`` is normalized on construction: each pair sorted, the list
    sorted lexicographically, duplicates and loops rejected.
    """

    num_vertices: int
    edges: tuple = ()
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.num_vertices
        if not isinstance(n, int) or n < 0:
            raise InvalidInput(f"num_vertices must be a non-negative int, got {n!r}")
        normalized = []
        for e in self.edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise InvalidInput(f"edge {e!r} is not a pair")
            i, j = int(pair[0]), int(pair[1])
            if i == j:
                raise InvalidInput(f"loop edge ({i}, {j}) not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidInput(f"edge ({i}, {j}) out of range for {n} vertices")
            normalized.append((min(i, j), max(i, j)))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise InvalidInput(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(normalized))
        adj = [set() for _ in range(n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @property
    def num_edges(self):
        return len(self.edges)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, i, j):
        return j in self._adj[i] if 0 <= i < self.num_vertices else False

    def non_edges(self):
        """Unordered non-adjacent pairs (i, j), i < j, lexicographic."""
        return [
            (i, j)
            for i in range(self.num_vertices)
            for j in range(i + 1, self.num_vertices)
            if j not in self._adj[i]
        ]

    def edge_index(self):
        """Map edge pair -> position in the canonical edge order."""
        return {e: k for k, e in enumerate(self.edges)}

    def is_clique(self, vertices):
        vs = list(vertices)
        return all(self.has_edge(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))


def vertex_connectivity(g):
    """Exact vertex connectivity via pairwise max-flow.

    Every vertex is split into an in/out pair with unit capacity, and the
    connectivity is the minimum over non-adjacent pairs of the max number
    of internally disjoint paths.  Complete graphs return n - 1.
    """
    n = g.num_vertices
    if n < 2:
        raise InvalidInput("vertex connectivity needs at least 2 vertices")
    if g.num_edges == n * (n - 1) // 2:
        return n - 1
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if g.has_edge(s, t):
                continue
            best = min(best, _max_disjoint_paths(g, s, t, cap=best))
            if best == 0:
                return 0
    return best


def _max_disjoint_paths(g, s, t, cap):
    """Max internally vertex-disjoint s-t paths, stopping early at cap."""
    n = g.num_vertices
    big = n + 1
    # node u splits into 2u (in) and 2u+1 (out)
    capacity = {}
    for u in range(n):
        capacity[(2 * u, 2 * u + 1)] = big if u in (s, t) else 1
        capacity[(2 * u + 1, 2 * u)] = 0
    for i, j in g.edges:
        capacity[(2 * i + 1, 2 * j)] = big
        capacity[(2 * j, 2 * i + 1)] = 0
        capacity[(2 * j + 1, 2 * i)] = big
        capacity[(2 * i, 2 * j + 1)] = 0
    out_arcs = {u: [] for u in range(2 * n)}
    for (a, b) in capacity:
        out_arcs[a].append(b)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        # BFS for an augmenting path; all residual capacities are >= 1
        parent = {source: None}
        queue = [source]
        while queue and sink not in parent:
            nxt = []
            for a in queue:
                for b in out_arcs[a]:
                    if b not in parent and capacity[(a, b)] > 0:
                        parent[b] = a
                        nxt.append(b)
            queue = nxt
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            capacity[(a, b)] -= 1
            capacity[(b, a)] += 1
            b = a
        flow += 1
    return flow


def find_clique(g, k):
    """Lexicographically smallest k-clique as a sorted tuple, or None.

    Exact backtracking; first complete branch in increasing vertex order
    is the lexicographic minimum.
    """
    n = g.num_vertices
    if not (1 <= k <= max(n, 1)):
        raise InvalidInput(f"clique size must be between 1 and {n}, got {k}")
    if k > n:
        return None

    def extend(chosen, candidates):
        if len(chosen) == k:
            return tuple(chosen)
        if len(chosen) + len(candidates) < k:
            return None
        for idx, v in enumerate(candidates):
            chosen.append(v)
            narrowed = [u for u in candidates[idx + 1:] if u in g.neighbors(v)]
            hit = extend(chosen, narrowed)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    return extend([], list(range(n)))


def graph_to_json_dict(g):
    return {"num_vertices": g.num_vertices, "edges": [[i, j] for i, j in g.edges]}


def graph_from_json_dict(data):
    if not isinstance(data, dict):
        raise InvalidInput("graph JSON must be an object")
    try:
        n = data["num_vertices"]
        edges = data["edges"]
    except KeyError as missing:
        raise InvalidInput(f"graph JSON missing key {missing}") from None
    if not isinstance(n, int):
        raise InvalidInput("num_vertices must be an integer")
    if not isinstance(edges, list):
        raise InvalidInput("edges must be a list of pairs")
    return Graph(n, tuple(tuple(e) for e in edges))


def load_graph(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read graph from {path}: {exc}") from exc
    return graph_from_json_dict(data)


def save_graph(g, path):
    with open(path, "w") as fh:
        json.dump(graph_to_json_dict(g), fh, indent=2, sort_keys=True)
        fh.write("\n")


def complete_graph(n):
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n):
    if n < 3:
        raise InvalidInput("cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n):
    if n < 2:
        raise InvalidInput("path needs at least 2 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def wheel_graph(rim):
    """Hub vertex 0 joined to a rim cycle on vertices 1..rim."""
    if rim < 3:
        raise InvalidInput("wheel needs a rim of at least 3")
    spokes = tuple((0, i) for i in range(1, rim + 1))
    cycle = tuple((i, i % rim + 1) for i in range(1, rim + 1))
    return Graph(rim + 1, spokes + cycle)


def complete_bipartite_graph(a, b):
    if a < 1 or b < 1:
        raise InvalidInput("bipartite parts must be non-empty")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def prism_graph(k):
    """Two k-cycles 0..k-1 and k..2k-1 joined by rungs (i, i+k)."""
    if k < 3:
        raise InvalidInput("prism needs cycles of length at least 3")
    top = tuple((i, (i + 1) % k) for i in range(k))
    bottom = tuple((k + i, k + (i + 1) % k) for i in range(k))
    rungs = tuple((i, k + i) for i in range(k))
    return Graph(2 * k, top + bottom + rungs)


def builtin_graph(name):
    """Resolve a builtin graph name to (Graph, default_dimension).

    Fixed names: k4, w5, k33, prism3.  Families: cycle{n}, path{n},
    complete{n}, wheel{k}, prism{k}.
    """
    key = name.strip().lower()
    fixed = {
        "k4": (lambda: complete_graph(4), 2),
        "w5": (lambda: wheel_graph(5), 2),
        "k33": (lambda: complete_bipartite_graph(3, 3), 2),
        "prism3": (lambda: prism_graph(3), 2),
    }
    if key in fixed:
        build, dim = fixed[key]
        return build(), dim
    families = {
        "cycle": (cycle_graph, 1),
        "path": (path_graph, 1),
        "complete": (complete_graph, 2),
        "wheel": (wheel_graph, 2),
        "prism": (prism_graph, 2),
    }
    for prefix, (build, dim) in families.items():
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return build(int(key[len(prefix):])), dim
    raise InvalidInput(f"unknown builtin graph {name!r}")
