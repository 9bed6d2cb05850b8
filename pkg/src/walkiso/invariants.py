"""Per-vertex walk-count invariants and the certificates built from them.

The central object is the table ``d[k][i]`` = number of closed walks of
length ``k`` starting and ending at vertex ``i``, i.e. the diagonal of the
k-th power of the adjacency matrix, computed in exact arbitrary-precision
arithmetic.  Sorting the per-vertex columns lexicographically gives a
relabeling-invariant certificate.  Extensions: reduction mod a large prime
(equality screening only), off-diagonal row profiles, and an iterated
neighbor-sum refinement of arbitrary per-vertex color vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, Permutation

#: Default screening modulus: the Mersenne prime 2^61 - 1.
DEFAULT_MODULUS = (1 << 61) - 1


@dataclass(frozen=True)
class InvariantTable:
    """Exact closed-walk counts; ``rows[k-1][i]`` holds ``(A^k)_ii``."""

    n: int
    kmax: int
    rows: tuple[tuple[int, ...], ...]

    def at(self, k: int, i: int) -> int:
        return self.rows[k - 1][i]

    def column(self, i: int) -> tuple[int, ...]:
        """The length-kmax invariant vector of vertex ``i``."""
        return tuple(row[i] for row in self.rows)

    def to_json_dict(self) -> dict:
        return {
            "type": "invariant_table",
            "n": self.n,
            "kmax": self.kmax,
            "modulus": None,
            "d": [[str(x) for x in row] for row in self.rows],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "InvariantTable":
        if obj.get("type") != "invariant_table" or obj.get("modulus") is not None:
            raise ValueError("not an exact invariant_table object")
        rows = tuple(tuple(int(x) for x in row) for row in obj["d"])
        return cls(n=int(obj["n"]), kmax=int(obj["kmax"]), rows=rows)


@dataclass(frozen=True)
class ModularTable:
    """Walk-count table reduced entry-wise modulo ``modulus``."""

    n: int
    kmax: int
    modulus: int
    rows: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "type": "invariant_table",
            "n": self.n,
            "kmax": self.kmax,
            "modulus": str(self.modulus),
            "d": [[str(x) for x in row] for row in self.rows],
        }


@dataclass(frozen=True)
class Certificate:
    """Lexicographically sorted per-vertex invariant vectors.

    ``order`` maps sorted position to original vertex; ties are broken by
    original vertex index, so the permutation is deterministic.
    """

    n: int
    kmax: int
    rows: tuple[tuple[int, ...], ...]
    order: Permutation

    def to_json_dict(self) -> dict:
        return {
            "type": "certificate",
            "n": self.n,
            "kmax": self.kmax,
            "rows": [[str(x) for x in row] for row in self.rows],
            "order": list(self.order.mapping),
        }


@dataclass(frozen=True)
class CertificateComparison:
    equal: bool
    #: First sorted position whose rows differ; -1 when shapes (n, kmax) mismatch.
    position: int | None

    def to_json_dict(self) -> dict:
        return {"equal": self.equal, "position": self.position}


@dataclass(frozen=True)
class ExtendedProfile:
    """Off-diagonal walk profiles: for each vertex the sorted multiset of
    per-target tuples ``((A^1)_ij, ..., (A^kmax)_ij)`` over ``j != i``, plus the
    vertex's own diagonal vector.

    Tuples stay aligned by target vertex across powers (one tuple per ``j``);
    only whole tuples are sorted.
    """

    n: int
    kmax: int
    diagonals: tuple[tuple[int, ...], ...]
    offdiag: tuple[tuple[tuple[int, ...], ...], ...]

    def vertex_signature(self, i: int) -> tuple:
        return (self.diagonals[i], self.offdiag[i])

    def sorted_signature(self) -> tuple:
        """Vertex-order-independent signature for cross-graph comparison."""
        return tuple(sorted(self.vertex_signature(i) for i in range(self.n)))


def _neighbor_lists(g: Graph) -> list[list[int]]:
    return [g.neighbors(j) for j in range(g.n)]


def walk_diagonal_table(g: Graph, kmax: int) -> InvariantTable:
    """Exact table of closed-walk counts for powers ``1..kmax``.

    Successive powers are built by one exact multiplication with the 0/1
    adjacency matrix per step; since the right factor is 0/1 this is a sum
    over neighbor columns, performed on Python big integers.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    n = g.n
    nbrs = _neighbor_lists(g)
    rows = [tuple(0 for _ in range(n))]
    b = g.matrix()
    for i in range(n):
        b[i] = [int(x) for x in b[i]]
    for _ in range(2, kmax + 1):
        b = [[sum(row[l] for l in nb) for nb in nbrs] for row in b]
        rows.append(tuple(b[i][i] for i in range(n)))
    return InvariantTable(n=n, kmax=kmax, rows=tuple(rows[:kmax]))


def walk_matrix_powers(g: Graph, kmax: int) -> list[list[list[int]]]:
    """Full exact powers ``A^1..A^kmax`` as nested lists (small-n helper)."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    nbrs = _neighbor_lists(g)
    b = g.matrix()
    powers = [b]
    for _ in range(2, kmax + 1):
        b = [[sum(row[l] for l in nb) for nb in nbrs] for row in b]
        powers.append(b)
    return powers


def walk_diagonal_table_mod(g: Graph, kmax: int, modulus: int = DEFAULT_MODULUS) -> ModularTable:
    """Walk-count table with entries reduced mod ``modulus`` at every step."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    n = g.n
    nbrs = _neighbor_lists(g)
    rows = [tuple(0 for _ in range(n))]
    b = [[x % modulus for x in row] for row in g.matrix()]
    for _ in range(2, kmax + 1):
        b = [[sum(row[l] for l in nb) % modulus for nb in nbrs] for row in b]
        rows.append(tuple(b[i][i] for i in range(n)))
    return ModularTable(n=n, kmax=kmax, modulus=modulus, rows=tuple(rows[:kmax]))


def certificate(table: InvariantTable | ModularTable) -> Certificate:
    """Sort the per-vertex columns lexicographically (stable in vertex index)."""
    cols = [(tuple(row[i] for row in table.rows), i) for i in range(table.n)]
    cols.sort()
    return Certificate(
        n=table.n,
        kmax=table.kmax,
        rows=tuple(c for c, _ in cols),
        order=Permutation(tuple(i for _, i in cols)),
    )


def compare_certificates(c1: Certificate, c2: Certificate) -> CertificateComparison:
    """Element-wise comparison of sorted rows; shape mismatch reports position -1."""
    if c1.n != c2.n or c1.kmax != c2.kmax:
        return CertificateComparison(equal=False, position=-1)
    for pos, (r1, r2) in enumerate(zip(c1.rows, c2.rows)):
        if r1 != r2:
            return CertificateComparison(equal=False, position=pos)
    return CertificateComparison(equal=True, position=None)


def extended_profile(g: Graph, kmax: int) -> ExtendedProfile:
    """Per-vertex multisets of off-diagonal row tuples across powers ``1..kmax``."""
    powers = walk_matrix_powers(g, kmax)
    diagonals = []
    offdiag = []
    for i in range(g.n):
        diagonals.append(tuple(p[i][i] for p in powers))
        tuples = [tuple(p[i][j] for p in powers) for j in range(g.n) if j != i]
        tuples.sort()
        offdiag.append(tuple(tuples))
    return ExtendedProfile(n=g.n, kmax=kmax, diagonals=tuple(diagonals), offdiag=tuple(offdiag))


def neighbor_sum_refinement(g: Graph, colors, rounds: int) -> list[tuple[int, ...]]:
    """Iterated refinement: each round replaces a vertex's vector by its own
    vector concatenated with the componentwise sum over its neighbors' vectors.

    ``rounds=0`` returns the input vectors unchanged (as tuples).
    """
    if len(colors) != g.n:
        raise ValueError(f"expected {g.n} color vectors, got {len(colors)}")
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    current = [tuple(c) for c in colors]
    width = len(current[0]) if current else 0
    if any(len(c) != width for c in current):
        raise ValueError("color vectors must share one length")
    for _ in range(rounds):
        nxt = []
        for i in range(g.n):
            nbrs = g.neighbors(i)
            if nbrs:
                summed = tuple(sum(current[j][t] for j in nbrs) for t in range(len(current[i])))
            else:
                summed = tuple(0 for _ in current[i])
            nxt.append(current[i] + summed)
        current = nxt
    return current
