"""Small simple graphs: constructors, canonical certificates, induced subgraphs,
four-term moves and circumference.

A graph is stored as a vertex count plus one adjacency bitmask per vertex, which
keeps subset operations (induced subgraphs, components) cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

CERTIFICATE_MAX_VERTICES = 13
CIRCUMFERENCE_MAX_VERTICES = 12


class GraphSizeError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency list length must equal vertex count")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            if mask & ~full:
                raise ValueError(f"vertex {v} adjacent to a vertex out of range")
            for u in _bits(mask):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {u}-{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for {n} vertices")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """Parse ``"n; u-v,u-v,..."``."""
        head, _, tail = text.partition(";")
        n = int(head.strip())
        edges = []
        for item in tail.split(","):
            item = item.strip()
            if not item:
                continue
            u, v = item.split("-")
            edges.append((int(u), int(v)))
        return cls.from_edges(n, edges)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(bin(m).count("1") for m in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def to_text(self) -> str:
        return f"{self.n}; " + ",".join(f"{u}-{v}" for u, v in self.edges())

    def __str__(self) -> str:
        return self.to_text()

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        pos = {v: i for i, v in enumerate(order)}
        adj = []
        for v in order:
            m = 0
            for u in _bits(self.adj[v]):
                m |= 1 << pos[u]
            adj.append(m)
        return Graph(self.n, tuple(adj))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complete_bipartite(l: int, n: int) -> Graph:
    """K_{l,n}: vertices ``0..l-1`` form one part, ``l..l+n-1`` the other."""
    if l < 0 or n < 0:
        raise ValueError("part sizes must be non-negative")
    left = (1 << l) - 1
    right = ((1 << (l + n)) - 1) ^ left
    return Graph(l + n, tuple([right] * l + [left] * n))


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(vs)}
    adj = []
    for v in vs:
        m = 0
        for u in _bits(g.adj[v]):
            if u in pos:
                m |= 1 << pos[u]
        adj.append(m)
    return Graph(len(vs), tuple(adj))


def induced_mask(g: Graph, mask: int) -> Graph:
    return induced(g, _bits(mask))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(m << shift for m in h.adj))


def component_masks(g: Graph) -> list[int]:
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(comp)
    return out


def components(g: Graph) -> list[Graph]:
    return [induced_mask(g, m) for m in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return len(component_masks(g)) <= 1


def four_term_graphs(g: Graph, a: int, b: int) -> tuple[Graph, Graph, Graph, Graph]:
    """``(G, G'_ab, G~_ab, G~'_ab)``.

    ``G'`` toggles the edge ``ab``; ``G~`` toggles the adjacency with ``a`` of every
    vertex other than ``a`` joined with ``b``.
    """
    if a == b:
        raise ValueError("four-term graphs need two distinct vertices")
    if not (0 <= a < g.n and 0 <= b < g.n):
        raise ValueError("vertex out of range")

    def toggle_ab(adj: list[int]) -> list[int]:
        adj = list(adj)
        adj[a] ^= 1 << b
        adj[b] ^= 1 << a
        return adj

    tilde = list(g.adj)
    for v in _bits(g.adj[b] & ~(1 << a)):
        tilde[a] ^= 1 << v
        tilde[v] ^= 1 << a
    return (
        g,
        Graph(g.n, tuple(toggle_ab(g.adj))),
        Graph(g.n, tuple(tilde)),
        Graph(g.n, tuple(toggle_ab(tilde))),
    )


# -- canonical labelling ----------------------------------------------------


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Colour refinement; the result depends only on the ordered input partition."""
    while True:
        colour = {}
        for i, cell in enumerate(cells):
            for v in cell:
                colour[v] = i
        cell_masks = [sum(1 << v for v in cell) for cell in cells]
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {
                v: tuple(bin(g.adj[v] & cm).count("1") for cm in cell_masks) for v in cell
            }
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            if len(groups) > 1:
                changed = True
            for key in sorted(groups):
                new_cells.append(groups[key])
        cells = new_cells
        if not changed:
            return cells


def _code(g: Graph, order: list[int]) -> tuple[int, ...]:
    return tuple(
        sum(1 << i for i, u in enumerate(order) if g.adj[v] >> u & 1) for v in order
    )


def _are_twins(g: Graph, u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return (g.adj[u] & mask) == (g.adj[v] & mask)


def _canonical_order(g: Graph) -> list[int]:
    if g.n == 0:
        return []
    start = _refine(g, [list(range(g.n))])
    best: list = [None, None]

    def search(cells: list[list[int]]):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            code = _code(g, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            return
        tried: list[int] = []
        for v in cells[target]:
            # swapping twins is an automorphism fixing every individualised vertex
            if any(_are_twins(g, v, u) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1 :]
            search(_refine(g, split))

    search(start)
    return best[1]


@lru_cache(maxsize=1 << 16)
def _canonical(n: int, adj: tuple[int, ...]) -> tuple[bytes, Graph]:
    g = Graph(n, adj)
    order = _canonical_order(g)
    canon = g.relabel(order)
    width = (n + 7) // 8 or 1
    body = b"".join(m.to_bytes(width, "big") for m in canon.adj)
    return bytes([n]) + body, canon


def certificate(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic."""
    if g.n > CERTIFICATE_MAX_VERTICES:
        raise GraphSizeError(
            f"certificate supports at most {CERTIFICATE_MAX_VERTICES} vertices, got {g.n}"
        )
    return _canonical(g.n, g.adj)[0]


def canonical_form(g: Graph) -> Graph:
    if g.n > CERTIFICATE_MAX_VERTICES:
        raise GraphSizeError(
            f"certificate supports at most {CERTIFICATE_MAX_VERTICES} vertices, got {g.n}"
        )
    return _canonical(g.n, g.adj)[1]


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.edge_count == h.edge_count and certificate(g) == certificate(h)


def bipartite_parts(g: Graph):
    """``(l, n)`` with ``l <= n`` if ``g`` is isomorphic to K_{l,n}, else ``None``.

    Edgeless graphs are K_{0,n}.
    """
    if g.edge_count == 0:
        return (0, g.n)
    if not is_connected(g):
        return None
    left = g.adj[0]
    right = ((1 << g.n) - 1) ^ left
    for v in range(g.n):
        expected = left if right >> v & 1 else right
        if g.adj[v] != expected:
            return None
    a, b = bin(left).count("1"), bin(right).count("1")
    return (min(a, b), max(a, b))


def circumference(g: Graph) -> int:
    """Length of the longest simple cycle, 0 for forests. Exhaustive search."""
    if g.n > CIRCUMFERENCE_MAX_VERTICES:
        raise GraphSizeError(
            f"circumference supports at most {CIRCUMFERENCE_MAX_VERTICES} vertices"
        )
    best = 0
    # each cycle is found from its smallest vertex
    for s in range(g.n):
        allowed = ~((1 << s) - 1)

        def dfs(v: int, visited: int, length: int):
            nonlocal best
            for u in _bits(g.adj[v] & allowed):
                if u == s:
                    if length >= 3 and length > best:
                        best = length
                elif not visited >> u & 1:
                    dfs(u, visited | 1 << u, length + 1)

        dfs(s, 1 << s, 1)
        if best == g.n:
            break
    return best


def all_graphs(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class on ``n`` vertices."""
    if n == 0:
        return [Graph.empty(0)]
    out: dict[bytes, Graph] = {}
    for base in all_graphs(n - 1):
        for mask in range(1 << (n - 1)):
            adj = list(base.adj)
            for u in _bits(mask):
                adj[u] |= 1 << (n - 1)
            adj.append(mask)
            g = Graph(n, tuple(adj))
            cert, canon = _canonical(g.n, g.adj)
            out.setdefault(cert, canon)
    return [out[k] for k in sorted(out)]
