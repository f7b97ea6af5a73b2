"""Simple-graph data model, graph6 I/O, the graph-family grammar, and small
exact invariants (clique and independence number).

Vertices are externally 1-based (v_1..v_n, matching the usual labeling of the
constructions); internally adjacency is stored as n bitmasks over 0-based
vertex indices.  Graphs are immutable after construction.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitset adjacency rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph must have at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency bits out of range in row {i}")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.adj[i] >> j & 1) != (self.adj[j] >> i & 1):
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u}, {v}) for order {n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return bin(self.adj[u]).count("1")

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            row = self.adj[u] >> (u + 1) << (u + 1)
            while row:
                low = row & -row
                yield (u, low.bit_length() - 1)
                row ^= low

    @property
    def q(self) -> int:
        """Edge count."""
        return sum(self.degree(u) for u in range(self.n)) // 2

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple((full ^ self.adj[i] ^ (1 << i)) for i in range(self.n)))

    def induced(self, vs: Sequence[int]) -> "Graph":
        """Induced subgraph on ``vs`` (0-based), relabeled 0..len(vs)-1 in the given order."""
        if not vs:
            raise ValueError("vertex set must be nonempty")
        if len(set(vs)) != len(vs) or not all(0 <= v < self.n for v in vs):
            raise ValueError("vertex set must be a set of valid vertices")
        pos = {v: i for i, v in enumerate(vs)}
        adj = [0] * len(vs)
        for v in vs:
            row = self.adj[v]
            while row:
                low = row & -row
                w = low.bit_length() - 1
                row ^= low
                if w in pos:
                    adj[pos[v]] |= 1 << pos[w]
        return Graph(len(vs), tuple(adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the vertex bijection old -> perm[old] (0-based)."""
        adj = [0] * self.n
        for u, v in self.edges():
            adj[perm[u]] |= 1 << perm[v]
            adj[perm[v]] |= 1 << perm[u]
        return Graph(self.n, tuple(adj))

    def is_complete(self) -> bool:
        return self.q == self.n * (self.n - 1) // 2

    def is_empty(self) -> bool:
        return self.q == 0


# graph6 encoding: n <= 62 single-byte size form, upper triangle column-major,
# 6 bits per character offset by 63.

def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    vals = []
    for off, ch in enumerate(s):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {ch!r} out of range [63,126]", off)
        vals.append(c - 63)
    n = vals[0]
    if n > 62:
        raise Graph6Error("only single-byte sizes (n <= 62) are supported", 0)
    if n == 0:
        raise Graph6Error("graph must have at least one vertex", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - 1 != need:
        raise Graph6Error(
            f"expected {need} payload characters for n={n}, got {len(vals) - 1}",
            len(s),
        )
    bits = 0
    for v in vals[1:]:
        bits = bits << 6 | v
    pad = need * 6 - nbits
    if pad and bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(s) - 1)
    bits >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def graph6_encode(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("only n <= 62 supported by the single-byte graph6 form")
    bits = 0
    nbits = g.n * (g.n - 1) // 2
    for j in range(1, g.n):
        for i in range(j):
            bits = bits << 1 | (g.adj[i] >> j & 1)
    need = (nbits + 5) // 6
    bits <<= need * 6 - nbits
    chars = [chr(g.n + 63)]
    for p in range(need - 1, -1, -1):
        chars.append(chr((bits >> (6 * p) & 63) + 63))
    return "".join(chars)


# Family grammar ---------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """Parsed graph-family description: a tag plus integer parameters.

    kinds: complete(n), path(n), cycle(n), empty(n), bipartite(r, s),
    minus_clique(n, r), minus_path(n, k), minus_cycle(n, k), minus_2k2(n),
    minus_p3p2(n), graph6(text).
    """

    kind: str
    params: tuple[int, ...] = ()
    text: str = ""


_FAMILY_RES = [
    (re.compile(r"^K(\d+)$"), lambda m: FamilySpec("complete", (int(m[1]),))),
    (re.compile(r"^P(\d+)$"), lambda m: FamilySpec("path", (int(m[1]),))),
    (re.compile(r"^C(\d+)$"), lambda m: FamilySpec("cycle", (int(m[1]),))),
    (re.compile(r"^E(\d+)$"), lambda m: FamilySpec("empty", (int(m[1]),))),
    (re.compile(r"^K(\d+),(\d+)$"), lambda m: FamilySpec("bipartite", (int(m[1]), int(m[2])))),
    (re.compile(r"^K(\d+)-K(\d+)$"), lambda m: FamilySpec("minus_clique", (int(m[1]), int(m[2])))),
    (re.compile(r"^K(\d+)-P(\d+)$"), lambda m: FamilySpec("minus_path", (int(m[1]), int(m[2])))),
    (re.compile(r"^K(\d+)-C(\d+)$"), lambda m: FamilySpec("minus_cycle", (int(m[1]), int(m[2])))),
    (re.compile(r"^K(\d+)-2K2$"), lambda m: FamilySpec("minus_2k2", (int(m[1]),))),
    (re.compile(r"^K(\d+)-P3uP2$"), lambda m: FamilySpec("minus_p3p2", (int(m[1]),))),
]


def parse_family(text: str) -> FamilySpec:
    """Parse a family-grammar string such as "K5", "K6-2K2", "K3,4" or "g6:Bw"."""
    s = text.strip()
    if s.startswith("g6:"):
        return FamilySpec("graph6", (), s[3:])
    for rx, make in _FAMILY_RES:
        m = rx.match(s)
        if m:
            return make(m)
    raise ValueError(f"cannot parse graph family {text!r}")


def _complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def _path_edges(k: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k - 1)]


def build_family(spec: FamilySpec) -> Graph:
    """Materialize a FamilySpec with the labeling the constructions expect.

    For the complete-minus families the removed pattern sits on the first
    vertices: K(r) removes all edges inside {v_1..v_r}; P(k) removes
    v_i v_{i+1} for i in [k-1]; C(k) additionally removes v_k v_1;
    2K2 removes v_1 v_2 and v_3 v_4; P3uP2 removes v_1 v_2, v_2 v_3, v_4 v_5.
    """
    kind, p = spec.kind, spec.params
    if kind == "graph6":
        return graph6_decode(spec.text)
    if kind == "complete":
        (n,) = p
        if n < 1:
            raise ValueError("K_n needs n >= 1")
        return _complete(n)
    if kind == "empty":
        (n,) = p
        if n < 1:
            raise ValueError("E_n needs n >= 1")
        return Graph(n, (0,) * n)
    if kind == "path":
        (n,) = p
        if n < 1:
            raise ValueError("P_n needs n >= 1")
        return Graph.from_edges(n, _path_edges(n))
    if kind == "cycle":
        (n,) = p
        if n < 3:
            raise ValueError("C_n needs n >= 3")
        return Graph.from_edges(n, _path_edges(n) + [(n - 1, 0)])
    if kind == "bipartite":
        r, s = p
        if r < 1 or s < 1:
            raise ValueError("K_{r,s} needs r, s >= 1")
        return Graph.from_edges(r + s, [(i, r + j) for i in range(r) for j in range(s)])

    # complete minus a pattern
    (n, *rest) = p
    if kind == "minus_clique":
        (r,) = rest
        if not 2 <= r <= n:
            raise ValueError("K_n - K_r needs 2 <= r <= n")
        missing = [(i, j) for i in range(r) for j in range(i + 1, r)]
    elif kind == "minus_path":
        (k,) = rest
        if not 2 <= k <= n:
            raise ValueError("K_n - P_k needs 2 <= k <= n")
        missing = _path_edges(k)
    elif kind == "minus_cycle":
        (k,) = rest
        if not 3 <= k <= n:
            raise ValueError("K_n - C_k needs 3 <= k <= n")
        missing = _path_edges(k) + [(k - 1, 0)]
    elif kind == "minus_2k2":
        if n < 4:
            raise ValueError("K_n - 2K_2 needs n >= 4")
        missing = [(0, 1), (2, 3)]
    elif kind == "minus_p3p2":
        if n < 5:
            raise ValueError("K_n - (P_3 u P_2) needs n >= 5")
        missing = [(0, 1), (1, 2), (3, 4)]
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    g = _complete(n)
    adj = list(g.adj)
    for u, v in missing:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(n, tuple(adj))


def graph_from_spec_text(text: str) -> Graph:
    return build_family(parse_family(text))


# Exact invariants -------------------------------------------------------

MAX_EXACT_ORDER = 64


def clique_number(g: Graph) -> int:
    """Exact maximum clique size by branch and bound with a greedy coloring bound."""
    if g.n > MAX_EXACT_ORDER:
        raise ValueError("graph too large for exact invariant")
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    best = 0

    def color_bound(cand: int, verts: list[int]) -> list[tuple[int, int]]:
        # greedy coloring; (vertex, color) pairs in non-decreasing color order,
        # which the branch pruning below relies on
        classes: list[int] = []
        members: list[list[int]] = []
        for v in verts:
            for ci, cmask in enumerate(classes):
                if not (g.adj[v] & cmask):
                    classes[ci] |= 1 << v
                    members[ci].append(v)
                    break
            else:
                classes.append(1 << v)
                members.append([v])
        return [(v, ci + 1) for ci, vs in enumerate(members) for v in vs]

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        verts = [v for v in order if cand >> v & 1]
        colored = color_bound(cand, verts)
        # explore highest color first: stronger pruning
        for v, c in reversed(colored):
            if size + c <= best:
                return
            expand(cand & g.adj[v], size + 1)
            cand &= ~(1 << v)

    expand((1 << g.n) - 1, 0)
    return best


def independence_number(g: Graph) -> int:
    return clique_number(g.complement())


# Clique decompositions ---------------------------------------------------

@dataclass(frozen=True)
class CliqueDecomposition:
    """Edge partition of a host graph into cliques of size >= 2 (0-based vertex tuples)."""

    cliques: tuple[tuple[int, ...], ...]

    def validate(self, host: Graph) -> None:
        seen: set[tuple[int, int]] = set()
        for c in self.cliques:
            if len(c) < 2:
                raise ValueError(f"clique {c} is trivial")
            for u, v in combinations(c, 2):
                if not host.has_edge(u, v):
                    raise ValueError(f"{c} is not a clique of the host graph")
                e = (min(u, v), max(u, v))
                if e in seen:
                    raise ValueError(f"edge {e} covered twice")
                seen.add(e)
        if len(seen) != host.q:
            raise ValueError("cliques do not cover every edge")


def trivial_edge_decomposition(g: Graph) -> CliqueDecomposition:
    """Every edge as its own K_2."""
    if g.q == 0:
        raise ValueError("no non-trivial decomposition exists")
    return CliqueDecomposition(tuple(sorted(g.edges())))


def greedy_clique_decomposition(g: Graph) -> CliqueDecomposition:
    """Repeatedly extract a (greedily grown) maximal clique of the remaining edge set."""
    if g.q == 0:
        raise ValueError("no non-trivial decomposition exists")
    rem = list(g.adj)
    cliques = []
    while any(rem):
        u = next(v for v in range(g.n) if rem[v])
        v = (rem[u] & -rem[u]).bit_length() - 1
        clique = [u, v]
        common = rem[u] & rem[v]
        while common:
            w = (common & -common).bit_length() - 1
            clique.append(w)
            common &= rem[w]
        clique.sort()
        for a, b in combinations(clique, 2):
            rem[a] &= ~(1 << b)
            rem[b] &= ~(1 << a)
        cliques.append(tuple(clique))
    d = CliqueDecomposition(tuple(cliques))
    d.validate(g)
    return d


# Isomorphism-free enumeration of small orders ----------------------------

MAX_ENUM_ORDER = 6

_enum_cache: dict[int, list[Graph]] = {}


def _edge_slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _mask_to_graph(n: int, mask: int, slots: list[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, [e for b, e in enumerate(slots) if mask >> b & 1])


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """All non-isomorphic simple graphs of order n (n <= 6), deterministic order.

    Labeled graphs are deduplicated under all n! vertex permutations; the
    representative of each class is its numerically smallest edge mask.
    Cached in memory and, when DRN_CACHE_DIR is set, on disk as graph6 lines.
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_ORDER}")
    if n in _enum_cache:
        return _enum_cache[n]

    cache_dir = os.environ.get("DRN_CACHE_DIR")
    cache_path = os.path.join(cache_dir, f"order{n}.g6") if cache_dir else None
    if cache_path and os.path.exists(cache_path):
        with open(cache_path, encoding="ascii") as fh:
            graphs = [graph6_decode(line) for line in fh if line.strip()]
        _enum_cache[n] = graphs
        return graphs

    slots = _edge_slots(n)
    slot_index = {e: b for b, e in enumerate(slots)}
    perm_maps = []
    for p in permutations(range(n)):
        perm_maps.append(tuple(slot_index[(min(p[i], p[j]), max(p[i], p[j]))] for (i, j) in slots))

    m = len(slots)
    seen = bytearray(1 << m)
    reps = []
    for mask in range(1 << m):
        if seen[mask]:
            continue
        reps.append(mask)
        for pm in perm_maps:
            img = 0
            rest = mask
            while rest:
                low = rest & -rest
                img |= 1 << pm[low.bit_length() - 1]
                rest ^= low
            seen[img] = 1
    graphs = [_mask_to_graph(n, mask, slots) for mask in reps]

    if cache_path:
        os.makedirs(cache_dir, exist_ok=True)
        with open(cache_path, "w", encoding="ascii") as fh:
            for g in graphs:
                fh.write(graph6_encode(g) + "\n")
    _enum_cache[n] = graphs
    return graphs


def read_graph6_lines(text: str) -> list[Graph]:
    """One graph per LF-terminated line; '#' lines and blank lines are skipped."""
    graphs = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            graphs.append(graph6_decode(line))
    return graphs
