"""Prints one PASS/FAIL line per acceptance criterion at the end of a run."""
import re
from collections import OrderedDict

_CRITERIA = OrderedDict(
    (k, label)
    for k, label in [
        (1, "constant tables"),
        (2, "xi* root and exponent identity"),
        (3, "M(c) branch continuity"),
        (4, "bound composition identities"),
        (5, "MN sanity, limits and minimizer"),
        (6, "interpolation correctness"),
        (7, "error bound holds, delta convergence"),
        (8, "E_sigma closed form vs quadrature"),
        (9, "CLI determinism and reference curve setups"),
    ]
)
_PATTERN = re.compile(r"test_acceptance\.py::test_c(\d+)_")
_outcomes: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(k, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, label in _CRITERIA.items():
        results = _outcomes.get(k)
        if not results:
            status = "NOT RUN"
        elif all(r == "passed" for r in results):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {k}: {status:7s} {label} ({len(results or [])} checks)")
