"""Shared corpus fixtures: exhaustive small-graph isomorphism classes.

Representatives are found by bucketing all labeled graphs on n vertices by
their walk-count certificate and deduplicating each bucket with the
brute-force oracle, so the corpus itself double-checks the certificate's
screening power.
"""

import itertools

import pytest

from walkiso import (
    Graph,
    brute_force_isomorphism,
    certificate,
    is_connected,
    walk_diagonal_table,
)

# graphs on 1..6 vertices up to isomorphism, and the connected ones
KNOWN_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}
KNOWN_CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def all_labeled_graphs(n):
    """Every simple graph on n labeled vertices, one per upper-triangle mask."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if (mask >> b) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield Graph(n, tuple(rows))


def iso_class_representatives(n):
    buckets = {}
    for g in all_labeled_graphs(n):
        key = certificate(walk_diagonal_table(g, n)).rows
        reps = buckets.setdefault(key, [])
        if all(brute_force_isomorphism(g, r) is None for r in reps):
            reps.append(g)
    out = [g for reps in buckets.values() for g in reps]
    out.sort(key=lambda g: g.rows)
    return out


@pytest.fixture(scope="session")
def iso_reps():
    """dict n -> representatives of every isomorphism class, n = 1..6."""
    reps = {n: iso_class_representatives(n) for n in range(1, 7)}
    for n, want in KNOWN_CLASS_COUNTS.items():
        assert len(reps[n]) == want, f"n={n}: found {len(reps[n])}, expected {want}"
    return reps


@pytest.fixture(scope="session")
def connected_reps(iso_reps):
    """dict n -> representatives of the connected classes, n = 1..6."""
    reps = {n: [g for g in gs if is_connected(g)] for n, gs in iso_reps.items()}
    for n, want in KNOWN_CONNECTED_COUNTS.items():
        assert len(reps[n]) == want, f"n={n}: found {len(reps[n])}, expected {want}"
    return reps


# one line per acceptance criterion, echoed in the terminal summary so the
# verdicts survive pytest's output capturing
_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_report():
    def report(line: str) -> None:
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
