import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planaria.codec import canonical_key, realize
from planaria.core import CurveDiagram
from planaria.fixtures import load_fixtures
from planaria.moves import ALL_KINDS, DELTA, apply, enumerate_moves


def move_corpus(depth=4, max_crossings=5):
    """Classes reachable from the circle in at most ``depth`` moves."""
    start = CurveDiagram()
    seen = {canonical_key(start): start}
    layer = [start]
    for _ in range(depth):
        nxt = []
        for d in layer:
            for m in enumerate_moves(d, ALL_KINDS):
                if d.n + DELTA[m.kind] > max_crossings:
                    continue
                e = apply(d, m)
                k = canonical_key(e)
                if k not in seen:
                    seen[k] = e
                    nxt.append(e)
        layer = nxt
    return list(seen.values())


@pytest.fixture(scope="session")
def corpus():
    return move_corpus()


@pytest.fixture(scope="session")
def fx():
    return load_fixtures()


@pytest.fixture
def kink():
    return realize([1, 1])


@pytest.fixture
def trefoil():
    return realize([1, 2, 3, 1, 2, 3])


# acceptance verdicts, one line per criterion in the terminal summary

VERDICTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[VERDICTS] = {}


@pytest.fixture
def verdict(request):
    """record(criterion, clause, ok, detail) for the acceptance summary."""
    table = request.config.stash[VERDICTS]

    def record(criterion, clause, ok, detail=""):
        table.setdefault(criterion, []).append((clause, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = config.stash.get(VERDICTS, {})
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(table):
        rows = table[criterion]
        ok = all(r[1] for r in rows)
        parts = "; ".join(f"{c} {'ok' if good else 'FAILED'}{f' ({d})' if d else ''}" for c, good, d in rows)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {parts}")
