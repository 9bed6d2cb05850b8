"""Rebuild an adjacency matrix from its closed-walk diagonal table.

Pipeline: power traces give the characteristic polynomial (Newton), its roots
give the spectrum, and for each vertex the walk counts form a Vandermonde
system in the eigenvalues whose solution is the squared eigenvector entries.
A backtracking pass then resolves the signs, constrained by orthogonality and
by the requirement that the rebuilt matrix have entries in {0, 1}.  Every
success is re-verified exactly by recomputing the walk table on the recovered
graph.

The method needs a simple spectrum.  Degeneracy is detected two ways: an
exact square-free test on the integer characteristic polynomial, and a
relative gap threshold on the numerical eigenvalues; either one yields
``NON_GENERIC_SPECTRUM`` instead of an ill-conditioned solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .charpoly import Polynomial, charpoly_from_traces, power_traces
from .graphs import Graph, write_graph6
from .invariants import InvariantTable, walk_diagonal_table
from .isomatch import IsoVerdict, find_isomorphism

#: Eigenvalue gaps below GAP_TOLERANCE * max(1, |lambda|_max) count as equal.
GAP_TOLERANCE = 1e-8
#: Squared entries above this are significant for sign anchoring.
WEIGHT_SIGNIFICANT = 1e-10
#: Negative squared entries no larger than this are clamped to zero.
WEIGHT_CLAMP = 1e-8
ORTHOGONALITY_TOL = 1e-6
ENTRY_ROUND_TOL = 0.1
RESIDUAL_TOL = 1e-6
IMAG_TOL = 1e-6
SIGN_SEARCH_BUDGET = 5_000_000
#: Distinct candidate matrices collected before the sign search stops.
MAX_SIGN_CANDIDATES = 16


class ReconstructionError(Exception):
    pass


class NonGenericSpectrumError(ReconstructionError):
    """Two eigenvalues coincide within tolerance; the interpolation step is refused."""


class SolveFailureError(ReconstructionError):
    """Numerically unusable solve (large residual, complex roots, negative weights)."""


class ReconstructionStatus(str, Enum):
    SUCCESS = "success"
    NON_GENERIC_SPECTRUM = "non_generic_spectrum"
    SIGN_AMBIGUITY = "sign_ambiguity"
    FAILURE = "failure"


@dataclass(frozen=True)
class Spectrum:
    """Adjacency eigenvalues in descending order with the consecutive gaps."""

    eigenvalues: tuple[float, ...]

    @property
    def gaps(self) -> tuple[float, ...]:
        e = self.eigenvalues
        return tuple(e[i] - e[i + 1] for i in range(len(e) - 1))

    @property
    def min_gap(self) -> float:
        return min(self.gaps, default=math.inf)

    @property
    def gap_tolerance(self) -> float:
        e = self.eigenvalues
        scale = max(1.0, abs(e[0]), abs(e[-1]))
        return GAP_TOLERANCE * scale

    def is_degenerate(self) -> bool:
        return self.min_gap < self.gap_tolerance

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "gaps": list(self.gaps),
            "min_gap": self.min_gap if self.eigenvalues else None,
        }


@dataclass(frozen=True)
class ReconstructionResult:
    status: ReconstructionStatus
    spectrum: Spectrum | None = None
    vsq: tuple[tuple[float, ...], ...] | None = None
    v: tuple[tuple[float, ...], ...] | None = None
    graph: Graph | None = None
    note: str = ""
    max_residual: float | None = None
    #: On SIGN_AMBIGUITY: the two essentially different sign-resolved matrices.
    assignments: tuple = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "type": "reconstruction",
            "status": self.status.value,
            "note": self.note,
            "spectrum": self.spectrum.to_json_dict() if self.spectrum else None,
            "max_residual": self.max_residual,
            "graph6": write_graph6(self.graph) if self.graph else None,
        }


def compute_spectrum(g: Graph) -> Spectrum:
    """Eigenvalues of the adjacency matrix, descending (symmetric solver)."""
    a = np.array(g.matrix(), dtype=float)
    eig = np.linalg.eigvalsh(a)
    return Spectrum(eigenvalues=tuple(float(x) for x in eig[::-1]))


def spectrum_from_charpoly(p: Polynomial) -> Spectrum:
    """Roots of the characteristic polynomial, which must be (numerically) real."""
    roots = np.roots([float(c) for c in reversed(p.coeffs)])
    if roots.size and float(np.max(np.abs(roots.imag))) > IMAG_TOL:
        raise SolveFailureError("characteristic polynomial has non-real roots")
    eig = sorted((float(r) for r in roots.real), reverse=True)
    return Spectrum(eigenvalues=tuple(eig))


def charpoly_has_repeated_roots(p: Polynomial) -> bool:
    """Exact square-free test: deg gcd(p, p') > 0, over the rationals."""

    def strip(u: list[Fraction]) -> list[Fraction]:
        while u and u[-1] == 0:
            u.pop()
        return u

    def poly_mod(u: list[Fraction], v: list[Fraction]) -> list[Fraction]:
        r = u[:]
        while len(r) >= len(v):
            factor = r[-1] / v[-1]
            shift = len(r) - len(v)
            for i in range(len(v)):
                r[shift + i] -= factor * v[i]
            strip(r)
        return r

    u = strip([Fraction(c) for c in p.coeffs])
    v = strip([Fraction(c) for c in p.derivative_coeffs()])
    while v:
        u, v = v, poly_mod(u, v)
    return len(u) - 1 > 0


def _solve_dual_vandermonde(nodes, rhs) -> list[float]:
    # Bjorck-Pereyra O(n^2) solve of sum_j nodes[j]^k x_j = rhs[k], k=0..n-1.
    a = list(nodes)
    x = [float(v) for v in rhs]
    n = len(a)
    for k in range(n - 1):
        for i in range(n - 1, k, -1):
            x[i] -= a[k] * x[i - 1]
    for k in range(n - 2, -1, -1):
        for i in range(k + 1, n):
            x[i] /= a[i] - a[i - k - 1]
        for i in range(k, n - 1):
            x[i] -= x[i + 1]
    return x


def _interpolation_residual(eigs, weights, rhs) -> float:
    worst = 0.0
    power = [1.0] * len(eigs)
    for k in range(len(rhs)):
        if k:
            power = [p * e for p, e in zip(power, eigs)]
        lhs = sum(w * p for w, p in zip(weights, power))
        worst = max(worst, abs(lhs - rhs[k]) / max(1.0, abs(rhs[k])))
    return worst


def solve_v_squares(spectrum: Spectrum, column) -> tuple[float, ...]:
    """Squared eigenvector entries of one vertex from its walk-count column.

    ``column`` holds d[k][i] for k = 1, 2, ...; the k = 0 equation (sum of
    weights = 1) is added internally.  Requires all eigenvalue gaps above
    tolerance; tiny negative weights are clamped to zero, anything worse
    raises :class:`SolveFailureError`.
    """
    eigs = spectrum.eigenvalues
    n = len(eigs)
    if spectrum.is_degenerate():
        raise NonGenericSpectrumError(
            f"minimum eigenvalue gap {spectrum.min_gap:.3e} below tolerance "
            f"{spectrum.gap_tolerance:.3e}")
    if len(column) < n - 1:
        raise ValueError(f"need walk counts up to power {n - 1}, got {len(column)}")
    rhs = [1.0] + [float(c) for c in column[: n - 1]]
    weights = _solve_dual_vandermonde(eigs, rhs)
    residual = _interpolation_residual(eigs, weights, rhs)
    if residual > RESIDUAL_TOL:
        raise SolveFailureError(f"interpolation residual {residual:.3e} too large")
    out = []
    for w in weights:
        if w < -WEIGHT_CLAMP:
            raise SolveFailureError(f"squared entry {w:.3e} significantly negative")
        out.append(max(w, 0.0))
    return tuple(out)


def _closest_binary(value: float) -> int:
    return 0 if abs(value) <= abs(value - 1.0) else 1


class _SignSearch:
    # Row-by-row backtracking over the undetermined signs.  Each column's
    # anchor row (first significant squared entry) is pinned positive; a row
    # candidate survives only if, against every finished row, the plain dot
    # product vanishes and the eigenvalue-weighted dot product is near 0 or 1.

    def __init__(self, vsq, eigs, max_found: int = MAX_SIGN_CANDIDATES):
        self.n = len(eigs)
        self.eigs = list(eigs)
        self.mag = [[math.sqrt(w) for w in row] for row in vsq]
        self.max_found = max_found
        self.anchor = [-1] * self.n
        for j in range(self.n):
            for i in range(self.n):
                if vsq[i][j] > WEIGHT_SIGNIFICANT:
                    self.anchor[j] = i
                    break
        self.rows: list[list[float]] = []
        self.nodes = 0
        self.found: list[tuple[tuple[int, ...], list[list[float]]]] = []
        self.exhausted = True

    def run(self) -> None:
        self._extend(0)

    def _extend(self, i: int) -> None:
        if len(self.found) >= self.max_found:
            return
        if i == self.n:
            self._record()
            return
        free = [j for j in range(self.n)
                if self.mag[i][j] > 0.0 and self.anchor[j] != i
                and self.mag[i][j] ** 2 > WEIGHT_SIGNIFICANT]
        base = [self.mag[i][j] if j not in free else 0.0 for j in range(self.n)]
        prev = self.rows
        # partial dot products with every finished row, plus Cauchy-Schwarz-free
        # suffix bounds so hopeless branches die early
        pd = [sum(base[j] * row[j] for j in range(self.n)) for row in prev]
        pl = [sum(self.eigs[j] * base[j] * row[j] for j in range(self.n)) for row in prev]
        sb = []
        sbl = []
        for row in prev:
            s = [0.0] * (len(free) + 1)
            sl = [0.0] * (len(free) + 1)
            for c in range(len(free) - 1, -1, -1):
                j = free[c]
                s[c] = s[c + 1] + abs(row[j]) * self.mag[i][j]
                sl[c] = sl[c + 1] + abs(self.eigs[j]) * abs(row[j]) * self.mag[i][j]
            sb.append(s)
            sbl.append(sl)
        row_i = base[:]

        def dfs(c: int, pd, pl) -> None:
            if len(self.found) >= self.max_found:
                return
            self.nodes += 1
            if self.nodes > SIGN_SEARCH_BUDGET:
                self.exhausted = False
                return
            for u in range(len(prev)):
                if abs(pd[u]) - sb[u][c] > ORTHOGONALITY_TOL:
                    return
                lo = pl[u] - sbl[u][c]
                hi = pl[u] + sbl[u][c]
                if (lo > 1.0 + ENTRY_ROUND_TOL or hi < -ENTRY_ROUND_TOL
                        or (lo > ENTRY_ROUND_TOL and hi < 1.0 - ENTRY_ROUND_TOL)):
                    return
            if c == len(free):
                self.rows.append(row_i[:])
                self._extend(i + 1)
                self.rows.pop()
                return
            j = free[c]
            for sign in (1.0, -1.0):
                val = sign * self.mag[i][j]
                row_i[j] = val
                dfs(c + 1,
                    [pd[u] + prev[u][j] * val for u in range(len(prev))],
                    [pl[u] + self.eigs[j] * prev[u][j] * val for u in range(len(prev))])
                if len(self.found) >= self.max_found or not self.exhausted:
                    row_i[j] = 0.0
                    return
            row_i[j] = 0.0

        dfs(0, pd, pl)

    def _record(self) -> None:
        v = self.rows
        n = self.n
        for a in range(n):
            for b in range(a, n):
                dot = sum(v[a][j] * v[b][j] for j in range(n))
                target = 1.0 if a == b else 0.0
                if abs(dot - target) > ORTHOGONALITY_TOL:
                    return
        bits = []
        for a in range(n):
            for b in range(a + 1, n):
                entry = sum(self.eigs[j] * v[a][j] * v[b][j] for j in range(n))
                rounded = _closest_binary(entry)
                if abs(entry - rounded) > ENTRY_ROUND_TOL:
                    return
                bits.append(rounded)
        for a in range(n):
            diag = sum(self.eigs[j] * v[a][j] * v[a][j] for j in range(n))
            if abs(diag) > ENTRY_ROUND_TOL:
                return
        key = tuple(bits)
        if any(key == k for k, _ in self.found):
            return
        self.found.append((key, [row[:] for row in v]))


def _graph_from_bits(bits: tuple[int, ...], n: int) -> Graph:
    rows = [0] * n
    idx = 0
    for a in range(n):
        for b in range(a + 1, n):
            if bits[idx]:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
            idx += 1
    return Graph(n, tuple(rows))


def assign_signs(vsq, spectrum: Spectrum,
                 table: InvariantTable | None = None) -> ReconstructionResult:
    """Resolve eigenvector entry signs by backtracking; column flips are
    quotiented out by pinning each column's anchor row positive.

    Without ``table``, two surviving assignments that round to different
    adjacency matrices mean ``SIGN_AMBIGUITY``.  With ``table``, survivors are
    confirmed by recomputing the exact walk table: candidates that fail are
    numerical junk and are dropped, and several confirmed candidates that are
    all isomorphic to each other count as one answer (they reproduce the very
    same table, so the input cannot tell them apart; this happens exactly when
    two vertices share an invariant column).  Only confirmed, provably
    non-equivalent survivors yield ``SIGN_AMBIGUITY``.
    """
    eigs = spectrum.eigenvalues
    n = len(eigs)
    vsq = tuple(tuple(float(w) for w in row) for row in vsq)
    search = _SignSearch(vsq, eigs)
    if any(a < 0 for a in search.anchor):
        return ReconstructionResult(
            status=ReconstructionStatus.FAILURE, spectrum=spectrum, vsq=vsq,
            note="an eigenvector column carries no significant weight")
    search.run()
    budget_note = "" if search.exhausted else "; sign search budget exhausted"
    if not search.found:
        note = ("no consistent sign assignment" if search.exhausted
                else "sign search budget exhausted")
        return ReconstructionResult(
            status=ReconstructionStatus.FAILURE, spectrum=spectrum, vsq=vsq, note=note)
    candidates = [(bits, _graph_from_bits(bits, n), v) for bits, v in search.found]
    if table is None:
        if len(candidates) >= 2:
            return ReconstructionResult(
                status=ReconstructionStatus.SIGN_AMBIGUITY, spectrum=spectrum, vsq=vsq,
                note="multiple sign assignments survive" + budget_note,
                assignments=tuple(tuple(tuple(r) for r in v) for _, _, v in candidates))
        confirmed = candidates
    else:
        confirmed = [c for c in candidates
                     if walk_diagonal_table(c[1], table.kmax).rows == table.rows]
        if not confirmed:
            return ReconstructionResult(
                status=ReconstructionStatus.FAILURE, spectrum=spectrum, vsq=vsq,
                note="no sign assignment reproduces the walk table exactly" + budget_note)
        head = confirmed[0][1]
        for _, other, _ in confirmed[1:]:
            if find_isomorphism(head, other).verdict is not IsoVerdict.ISOMORPHIC:
                return ReconstructionResult(
                    status=ReconstructionStatus.SIGN_AMBIGUITY, spectrum=spectrum,
                    vsq=vsq,
                    note="non-isomorphic graphs reproduce the same walk table"
                         + budget_note,
                    assignments=tuple(tuple(tuple(r) for r in v) for _, _, v in confirmed))
        confirmed.sort(key=lambda c: c[1].rows)
    _, graph, v = confirmed[0]
    note = ""
    if len(confirmed) > 1:
        note = (f"{len(confirmed)} equivalent labeled realizations; "
                "returned the lexicographically least")
    return ReconstructionResult(
        status=ReconstructionStatus.SUCCESS, spectrum=spectrum, vsq=vsq,
        v=tuple(tuple(r) for r in v), graph=graph, note=note + budget_note)


def reconstruct_adjacency(table: InvariantTable) -> ReconstructionResult:
    """Full pipeline from an exact walk-count table to a recovered graph.

    On success the result's graph reproduces the input table exactly (verified
    by recomputation); every other outcome is a flagged refusal, never a
    silently wrong graph.
    """
    n = table.n
    if table.kmax < n:
        raise ValueError(f"need kmax >= {n}, table has kmax={table.kmax}")
    p = charpoly_from_traces(power_traces(table), n)
    if charpoly_has_repeated_roots(p):
        spectrum = None
        try:
            spectrum = spectrum_from_charpoly(p)
        except SolveFailureError:
            pass
        return ReconstructionResult(
            status=ReconstructionStatus.NON_GENERIC_SPECTRUM, spectrum=spectrum,
            note="characteristic polynomial has a repeated root (exact test)")
    try:
        spectrum = spectrum_from_charpoly(p)
    except SolveFailureError as exc:
        return ReconstructionResult(status=ReconstructionStatus.FAILURE, note=str(exc))
    if spectrum.is_degenerate():
        return ReconstructionResult(
            status=ReconstructionStatus.NON_GENERIC_SPECTRUM, spectrum=spectrum,
            note="eigenvalue gap below tolerance")
    vsq = []
    max_residual = 0.0
    for i in range(n):
        column = table.column(i)
        try:
            weights = solve_v_squares(spectrum, column)
        except NonGenericSpectrumError as exc:
            return ReconstructionResult(
                status=ReconstructionStatus.NON_GENERIC_SPECTRUM, spectrum=spectrum,
                note=str(exc))
        except SolveFailureError as exc:
            return ReconstructionResult(
                status=ReconstructionStatus.FAILURE, spectrum=spectrum,
                note=f"vertex {i}: {exc}")
        rhs = [1.0] + [float(c) for c in column[: n - 1]]
        max_residual = max(max_residual,
                           _interpolation_residual(spectrum.eigenvalues, weights, rhs))
        vsq.append(weights)
    result = assign_signs(vsq, spectrum, table=table)
    result = ReconstructionResult(
        status=result.status, spectrum=result.spectrum, vsq=result.vsq, v=result.v,
        graph=result.graph, note=result.note, max_residual=max_residual,
        assignments=result.assignments)
    if result.status is not ReconstructionStatus.SUCCESS:
        return result
    if any(row == 0 for row in result.graph.rows):
        return ReconstructionResult(
            status=ReconstructionStatus.FAILURE, spectrum=spectrum, vsq=result.vsq,
            max_residual=max_residual,
            note="recovered matrix has a zero row (input not connected?)")
    return result
