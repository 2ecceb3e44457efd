import math

import pytest

from gieseking.surgery import Branch, solve

# criterion number -> list of (ok, detail); filled by test_acceptance
CRITERIA: dict[int, list[tuple[bool, str]]] = {}

MANIFOLD_Z = complex(0.5, math.sqrt(3) / 2)


def angle_gap(a: float, b: float) -> float:
    """Distance between two angles modulo 2 pi."""
    return abs(math.remainder(a - b, 2 * math.pi))


@pytest.fixture(scope="session")
def roots():
    """All surgery roots for k = 2..200."""
    return {(b, k): solve(b, k) for b in Branch for k in range(2, 201)}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        checks = CRITERIA[n]
        bad = [d for ok, d in checks if not ok]
        status = "PASS" if not bad else "FAIL"
        line = f"criterion {n}: {status} ({len(checks) - len(bad)}/{len(checks)} checks)"
        terminalreporter.write_line(line)
        for d in bad:
            terminalreporter.write_line(f"    failed: {d}")
