"""Simple undirected graphs: representation, formats, generators, permutations.

Graphs are stored as dense bit-packed adjacency matrices (one Python int per
row), which keeps edge tests, permutation, and BFS cheap at the target sizes
of up to a few hundred vertices.  Two interchange formats are supported:

* graph6 -- the compact 6-bit ASCII encoding of the upper adjacency triangle
  (bit-exact, canonical minimal-length on output);
* edge list -- a plain text format for hand-written fixtures: a header line
  ``n m`` followed by ``m`` lines ``u v`` with 0-indexed endpoints.

All randomness flows through :class:`SplitMix64`, a fixed, portable 64-bit
generator, so fixtures reproduce bit-for-bit across platforms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

MAX_VERTICES = 1 << 16


class GraphParseError(ValueError):
    """Raised for malformed graph input; ``offset`` is the failing byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``rows[i]`` is a bitmask with bit ``j`` set iff ``{i, j}`` is an edge.
    The matrix is validated to be symmetric with a zero diagonal.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside supported range 1..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row < 0 or row >> self.n:
                raise ValueError(f"adjacency row {i} has bits outside 0..{self.n - 1}")
            if (row >> i) & 1:
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(self.n):
            m = self.rows[i]
            while m:
                j = (m & -m).bit_length() - 1
                if not (self.rows[j] >> i) & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
                m &= m - 1

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "Graph":
        n = len(matrix)
        rows = []
        for i in range(n):
            if len(matrix[i]) != n:
                raise ValueError(f"matrix is not square: row {i} has {len(matrix[i])} entries")
            row = 0
            for j in range(n):
                if matrix[i][j]:
                    row |= 1 << j
            rows.append(row)
        return cls(n, tuple(rows))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def neighbors(self, i: int) -> list[int]:
        out = []
        m = self.rows[i]
        while m:
            out.append((m & -m).bit_length() - 1)
            m &= m - 1
        return out

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors(i) if i < j]

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(r.bit_count() for r in self.rows))

    def matrix(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``{0..n-1}``; ``mapping[i]`` is the image of ``i``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if sorted(self.mapping) != list(range(n)):
            raise ValueError("mapping is not a bijection on 0..n-1")

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, x in enumerate(self.mapping):
            inv[x] = i
        return Permutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))


class SplitMix64:
    """splitmix64 generator (Steele/Lea/Flood), the one fixed PRNG of this package.

    state' = state + 0x9E3779B97F4A7C15 (mod 2^64); the output is the standard
    two-round xor-shift-multiply mix of state'.  Seeding with the same 64-bit
    value yields the same stream on every platform.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), deterministic in (n, p, seed).

    Pairs are visited in row-major order ``(0,1), (0,2), ..., (n-2,n-1)``; the
    pair is an edge iff the next splitmix64 draw is below ``floor(p * 2^64)``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = SplitMix64(seed)
    threshold = int(p * (1 << 64))
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_u64() < threshold:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def random_permutation(n: int, seed: int) -> Permutation:
    """Fisher-Yates shuffle of ``0..n-1`` driven by splitmix64."""
    rng = SplitMix64(seed)
    out = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return Permutation(tuple(out))


def apply_permutation(g: Graph, perm: Permutation) -> Graph:
    """Relabel: the result places ``g``'s edge {i, j} at {perm(i), perm(j)}."""
    if len(perm) != g.n:
        raise ValueError(f"permutation length {len(perm)} != vertex count {g.n}")
    rows = [0] * g.n
    for i in range(g.n):
        pi = perm.mapping[i]
        for j in g.neighbors(i):
            rows[pi] |= 1 << perm.mapping[j]
    return Graph(g.n, tuple(rows))


def is_connected(g: Graph) -> bool:
    """True iff a BFS from vertex 0 reaches every vertex."""
    visited = 1
    frontier = 1
    while frontier:
        nxt = 0
        m = frontier
        while m:
            i = (m & -m).bit_length() - 1
            nxt |= g.rows[i]
            m &= m - 1
        frontier = nxt & ~visited
        visited |= frontier
    return visited == (1 << g.n) - 1


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted, ordered by minimum vertex."""
    seen = 0
    comps = []
    for start in range(g.n):
        if (seen >> start) & 1:
            continue
        visited = 1 << start
        frontier = visited
        while frontier:
            nxt = 0
            m = frontier
            while m:
                i = (m & -m).bit_length() - 1
                nxt |= g.rows[i]
                m &= m - 1
            frontier = nxt & ~visited
            visited |= frontier
        seen |= visited
        comp = []
        m = visited
        while m:
            comp.append((m & -m).bit_length() - 1)
            m &= m - 1
        comps.append(comp)
    return comps


def induced_subgraph(g: Graph, vertices: list[int]) -> Graph:
    """Subgraph induced by ``vertices``, relabeled 0..len-1 in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    rows = [0] * len(vertices)
    for v in vertices:
        for w in g.neighbors(v):
            if w in index:
                rows[index[v]] |= 1 << index[w]
    return Graph(len(vertices), tuple(rows))


def neighborhood_subgraph(g: Graph, v: int) -> Graph:
    """Subgraph induced by the neighbors of ``v`` (``v`` itself excluded)."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range 0..{g.n - 1}")
    nbrs = g.neighbors(v)
    if not nbrs:
        raise ValueError(f"vertex {v} is isolated; its neighborhood is empty")
    return induced_subgraph(g, nbrs)


def contains_triangle(g: Graph) -> bool:
    for i in range(g.n):
        for j in g.neighbors(i):
            if j > i and g.rows[i] & g.rows[j]:
                return True
    return False


# --- graph6 ----------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (short form or '~'-prefixed long form).

    Raises :class:`GraphParseError` naming the byte offset for malformed
    length prefixes, out-of-range body bytes, wrong body length, and nonzero
    padding bits.
    """
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):].strip()
    if not s:
        raise GraphParseError("empty graph6 input", 0)

    def val(k: int) -> int:
        c = ord(s[k])
        if not 63 <= c <= 126:
            raise GraphParseError(f"byte {c!r} outside graph6 range 63..126", k)
        return c - 63

    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            if len(s) < 8:
                raise GraphParseError("truncated 8-byte length prefix", len(s))
            nn = 0
            for k in range(2, 8):
                nn = (nn << 6) | val(k)
            n, body_at = nn, 8
        else:
            if len(s) < 4:
                raise GraphParseError("truncated 4-byte length prefix", len(s))
            nn = 0
            for k in range(1, 4):
                nn = (nn << 6) | val(k)
            n, body_at = nn, 4
        if n <= 62:
            raise GraphParseError(f"non-minimal length prefix for n={n}", 0)
    else:
        n, body_at = val(0), 1

    if n < 1:
        raise GraphParseError("graph6 vertex count 0 not supported", 0)
    if n > MAX_VERTICES:
        raise GraphParseError(f"vertex count {n} exceeds supported maximum {MAX_VERTICES}", 0)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - body_at < nbytes:
        raise GraphParseError(
            f"truncated body: expected {nbytes} bytes, got {len(s) - body_at}", len(s))
    if len(s) - body_at > nbytes:
        raise GraphParseError("unexpected trailing byte", body_at + nbytes)

    rows = [0] * n
    bit = 0
    group = 0
    for j in range(1, n):
        for i in range(j):
            if bit % 6 == 0:
                group = val(body_at + bit // 6)
            if (group >> (5 - bit % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    if nbits % 6:
        pad = val(body_at + nbytes - 1) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise GraphParseError("nonzero padding bits", body_at + nbytes - 1)
    return Graph(n, tuple(rows))


def write_graph6(g: Graph) -> str:
    """Canonical minimal-length graph6 encoding of ``g``."""
    if g.n <= 62:
        prefix = chr(63 + g.n)
    else:
        prefix = "~" + "".join(chr(63 + ((g.n >> s) & 63)) for s in (12, 6, 0))
    chunks = []
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | ((g.rows[i] >> j) & 1)
            nbits += 1
            if nbits == 6:
                chunks.append(chr(63 + acc))
                acc, nbits = 0, 0
    if nbits:
        chunks.append(chr(63 + (acc << (6 - nbits))))
    return prefix + "".join(chunks)


# --- edge-list format -------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the fixture format: header ``n m``, then ``m`` lines ``u v`` (0-indexed)."""
    lines = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise GraphParseError("empty edge-list input")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GraphParseError(f"line {lineno}: expected header 'n m', got {header!r}")
    n, m = int(parts[0]), int(parts[1])
    if n < 1:
        raise GraphParseError(f"line {lineno}: need at least one vertex")
    if len(lines) - 1 != m:
        raise GraphParseError(f"header declares {m} edges but {len(lines) - 1} edge lines follow")
    rows = [0] * n
    for lineno, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise GraphParseError(f"line {lineno}: expected 'u v', got {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop {u}")
        if (rows[u] >> v) & 1:
            raise GraphParseError(f"line {lineno}: duplicate edge {u} {v}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph_auto(text: str) -> Graph:
    """Parse either format; a first line of two integers selects edge-list."""
    stripped = text.strip()
    first = stripped.splitlines()[0].strip() if stripped else ""
    if re.fullmatch(r"\d+\s+\d+", first):
        return parse_edge_list(text)
    return parse_graph6(stripped)


# --- named fixtures ---------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def rook_4x4_graph() -> Graph:
    """4x4 rook's graph (K4 x K4 Cartesian product): cells adjacent iff same row or column."""
    edges = []
    for a in range(16):
        for b in range(a + 1, 16):
            if a // 4 == b // 4 or a % 4 == b % 4:
                edges.append((a, b))
    return Graph.from_edges(16, edges)


def shrikhande_graph() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.

    Vertex (a, b) has index 4*a + b.  Built from the algebraic definition so
    the fixture carries no transcription risk.
    """
    connection = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    u, v = 4 * a + b, 4 * c + d
                    if u < v and ((a - c) % 4, (b - d) % 4) in connection:
                        edges.append((u, v))
    return Graph.from_edges(16, edges)


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): 2-subsets of {0..4}, adjacent iff disjoint."""
    from itertools import combinations

    pairs = list(combinations(range(5), 2))
    index = {p: i for i, p in enumerate(pairs)}
    edges = []
    for p in pairs:
        for q in pairs:
            if index[p] < index[q] and not set(p) & set(q):
                edges.append((index[p], index[q]))
    return Graph.from_edges(10, edges)


def fixture_graph(name: str) -> Graph:
    """Look up a named fixture: shrikhande, rook44, petersen, kN, pathN, cycleN."""
    fixed = {
        "shrikhande": shrikhande_graph,
        "rook44": rook_4x4_graph,
        "petersen": petersen_graph,
    }
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"(k|path|cycle)(\d+)", name)
    if not m:
        raise ValueError(f"unknown fixture {name!r}")
    kind, n = m.group(1), int(m.group(2))
    builder = {"k": complete_graph, "path": path_graph, "cycle": cycle_graph}[kind]
    return builder(n)
