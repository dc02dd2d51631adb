import numpy as np
from scipy.optimize import linear_sum_assignment


def multiset_dist(a, b):
    """Max pointwise distance of the best pairing between two eigenvalue
    multisets (robust against ordering flips of near-equal values)."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    assert a.size == b.size
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # surface the per-criterion report lines even when capture hides the
    # prints of passing tests
    try:
        from test_acceptance import REPORT_LINES
    except ImportError:
        return
    if REPORT_LINES:
        terminalreporter.section("acceptance report")
        for line in sorted(REPORT_LINES):
            terminalreporter.write_line(line)
