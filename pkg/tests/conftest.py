import numpy as np
import pytest
from hypothesis import strategies as st

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or report.failed:
        entry = _criteria.setdefault(marker.args[0], {"title": marker.kwargs.get("title", ""), "ok": True})
        entry["ok"] = entry["ok"] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        entry = _criteria[n]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {entry['title']}")


@st.composite
def chiralities(draw):
    """Normalized complex 3-vectors."""
    parts = draw(st.lists(st.floats(-1, 1, allow_nan=False), min_size=6, max_size=6))
    v = np.array(parts[0::2]) + 1j * np.array(parts[1::2])
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([1, 0, 0], dtype=complex), 1.0
    return v / n


@st.composite
def spectra(draw, min_value=1e-6):
    """Three strictly positive populations summing to one."""
    w = np.array(draw(st.lists(st.floats(min_value, 1.0), min_size=3, max_size=3)))
    return w / w.sum()


angles = st.floats(0.0, 2 * np.pi, allow_nan=False)
