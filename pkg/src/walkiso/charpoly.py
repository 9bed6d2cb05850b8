"""Exact characteristic-polynomial machinery over the integers.

Two independent routes to ``p(x) = det(xI - A)``: Newton's identities applied
to the power-trace sequence, and the division-free Berkowitz algorithm working
directly on the matrix (the oracle).  On top of these sit the vertex-deleted
characteristic polynomials ``p_i`` obtained from the closed-walk table through
the Cayley-Hamilton quotient expansion, the identity ``sum_i p_i = p'``, and
the inverse map recovering walk counts from the ``p_i``.

All arithmetic is exact; a division in Newton's recurrence that leaves a
remainder means the input data was not a genuine trace sequence and raises
:class:`IntegrityError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graphs import Graph
from .invariants import InvariantTable


class IntegrityError(ValueError):
    """Input claims to be derived from a real matrix but is internally inconsistent."""


@dataclass(frozen=True)
class Polynomial:
    """Monic integer polynomial; ``coeffs[j]`` is the coefficient of ``x^j``
    and the leading entry is always 1."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if self.coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative_coeffs(self) -> tuple[int, ...]:
        """Ascending coefficients of p'."""
        return tuple(j * self.coeffs[j] for j in range(1, len(self.coeffs)))

    def format_text(self) -> str:
        """Human form, e.g. ``x^3 - 3x - 2``."""
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0 and self.degree > 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                xpart = "x" if e == 1 else f"x^{e}"
                body = xpart if mag == 1 else f"{mag}{xpart}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms)

    def to_json_dict(self) -> dict:
        return {
            "type": "polynomial",
            "degree": self.degree,
            "coeffs": [str(c) for c in self.coeffs],
        }


@dataclass(frozen=True)
class TraceSequence:
    """``values[k-1]`` is Tr A^k."""

    kmax: int
    values: tuple[int, ...]

    def trace(self, k: int) -> int:
        return self.values[k - 1]

    def to_json_dict(self) -> dict:
        return {"type": "trace_sequence", "kmax": self.kmax,
                "traces": [str(t) for t in self.values]}


@dataclass(frozen=True)
class DeletedCharPolys:
    """``polys[i]`` is the characteristic polynomial of A with row/column i removed."""

    polys: tuple[Polynomial, ...]

    def to_json_dict(self) -> dict:
        return {"type": "deleted_charpolys", "n": len(self.polys),
                "polys": [p.to_json_dict() for p in self.polys]}


class RecoveredInvariants(NamedTuple):
    table: InvariantTable
    #: coefficients a_1..a_{n-1} of the full characteristic polynomial
    #: (a_0, the determinant, is not recoverable from the deleted polynomials).
    coeffs: tuple[int, ...]


def power_traces(table: InvariantTable) -> TraceSequence:
    """Tr A^k = sum_i d[k][i], exactly."""
    return TraceSequence(
        kmax=table.kmax,
        values=tuple(sum(row) for row in table.rows),
    )


def charpoly_from_traces(traces: TraceSequence, n: int) -> Polynomial:
    """Newton's identities: power sums -> elementary symmetric -> coefficients.

    Every division by k is exact for genuine trace data; a remainder raises
    :class:`IntegrityError`.
    """
    if traces.kmax < n:
        raise ValueError(f"need at least {n} traces, have {traces.kmax}")
    p = traces.values
    e = [1]
    for k in range(1, n + 1):
        s = 0
        sign = 1
        for i in range(1, k + 1):
            s += sign * e[k - i] * p[i - 1]
            sign = -sign
        q, r = divmod(s, k)
        if r:
            raise IntegrityError(f"Newton recurrence not integral at step {k}")
        e.append(q)
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = e[k] if k % 2 == 0 else -e[k]
    return Polynomial(tuple(coeffs))


def _berkowitz(a: list[list[int]], n: int) -> list[int]:
    # Descending coefficients of det(xI - M), grown one principal minor at a
    # time through lower-triangular Toeplitz products.  Division-free.
    vec = [1, -a[0][0]]
    for i in range(1, n):
        r = a[i][:i]
        t = [1, -a[i][i]]
        q = [a[j][i] for j in range(i)]
        for k in range(i):
            t.append(-sum(r[j] * q[j] for j in range(i)))
            if k < i - 1:
                q = [sum(a[j][l] * q[l] for l in range(i)) for j in range(i)]
        new = [0] * (len(vec) + 1)
        for j, vj in enumerate(vec):
            if vj:
                top = min(j + len(t), len(new))
                for k in range(j, top):
                    new[k] += t[k - j] * vj
        vec = new
    return vec


def charpoly_direct(g: Graph) -> Polynomial:
    """Exact ``det(xI - A)`` via the Berkowitz algorithm.

    Independent of the trace/Newton route, so the two can cross-check each
    other.
    """
    desc = _berkowitz(g.matrix(), g.n)
    return Polynomial(tuple(reversed(desc)))


def vertex_deleted_charpolys(table: InvariantTable, p: Polynomial) -> DeletedCharPolys:
    """All ``p_i`` from walk counts alone, via the Cayley-Hamilton quotient.

    Dividing ``p(X)`` by ``X - A`` and reading the i-th diagonal entry gives

        coeff of x^(n-1-m) in p_i  =  sum_{r=0..m} a_{n-r} (A^(m-r))_ii

    with the conventions ``a_n = 1`` and ``(A^0)_ii = 1``.  Needs walk counts
    up to power n-1.
    """
    n = p.degree
    if table.n != n:
        raise ValueError(f"table is for {table.n} vertices, polynomial degree is {n}")
    if table.kmax < n - 1:
        raise ValueError(f"need walk counts up to power {n - 1}, table has kmax={table.kmax}")
    a = p.coeffs
    polys = []
    for i in range(n):
        d = [1] + [table.at(k, i) for k in range(1, n)]
        c = [sum(a[n - r] * d[m - r] for r in range(m + 1)) for m in range(n)]
        polys.append(Polynomial(tuple(reversed(c))))
    return DeletedCharPolys(tuple(polys))


def check_derivative_identity(deleted: DeletedCharPolys, p: Polynomial) -> bool:
    """True iff sum_i p_i(x) = p'(x) coefficient-for-coefficient."""
    n = p.degree
    if len(deleted.polys) != n:
        return False
    if any(q.degree != n - 1 for q in deleted.polys):
        return False
    summed = [sum(q.coeffs[j] for q in deleted.polys) for j in range(n)]
    return tuple(summed) == p.derivative_coeffs()


def invariants_from_deleted_charpolys(deleted: DeletedCharPolys) -> RecoveredInvariants:
    """Inverse direction: from all ``p_i`` recover a_1..a_{n-1} and the walk
    counts ``(A^k)_ii`` for k = 1..n-1.

    Summing the ``p_i`` must give the derivative of some monic degree-n
    polynomial; that pins a_1..a_{n-1} (never a_0).  The quotient expansion is
    then solved triangularly for the diagonal powers.
    """
    n = len(deleted.polys)
    if n < 2:
        raise ValueError("need at least two deleted polynomials")
    if any(q.degree != n - 1 for q in deleted.polys):
        raise IntegrityError("every deleted polynomial must be monic of degree n-1")
    summed = [sum(q.coeffs[j] for q in deleted.polys) for j in range(n)]
    a = [0] * (n + 1)
    a[n] = 1
    for j in range(n - 1):
        q, r = divmod(summed[j], j + 1)
        if r:
            raise IntegrityError(f"sum of p_i is not a derivative (x^{j} coefficient)")
        a[j + 1] = q
    if summed[n - 1] != n:
        raise IntegrityError("sum of p_i has wrong leading coefficient")
    rows = [[0] * n for _ in range(n - 1)]
    for i in range(n):
        c = list(reversed(deleted.polys[i].coeffs))
        d = [1]
        for m in range(1, n):
            d.append(c[m] - sum(a[n - r] * d[m - r] for r in range(1, m + 1)))
        for k in range(1, n):
            rows[k - 1][i] = d[k]
    table = InvariantTable(n=n, kmax=n - 1, rows=tuple(tuple(r) for r in rows))
    return RecoveredInvariants(table=table, coeffs=tuple(a[1:n]))
