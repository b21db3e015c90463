import numpy as np
import pytest

from cuspidal.curves import CurveGerm
from cuspidal.jets import Jet1, Jet2
from cuspidal.surface import SurfaceGerm


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def curve(*polys, order=6):
    """CurveGerm from three coefficient lists (ascending powers)."""
    return CurveGerm.from_polys(*polys, order=order)


def germ(*terms, order=6):
    """SurfaceGerm from three {(i, j): c} dicts."""
    return SurfaceGerm([Jet2.from_terms(t, order) for t in terms])


def line(*coeffs, order=6):
    return Jet1(list(coeffs), order)


# one line per acceptance criterion, printed after the run
CRITERIA = {}


def record(number, title, passed, detail=""):
    CRITERIA[number] = (title, bool(passed), detail)
    print(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}  {detail}")
