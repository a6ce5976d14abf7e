import math
from pathlib import Path

import pytest

from rayleighmt import ScanWindow, find_rayleigh, load_material, mode_speeds

MATERIALS = Path(__file__).resolve().parent.parent / "materials"


@pytest.fixture(scope="session")
def reference():
    return load_material(MATERIALS / "reference.json")


@pytest.fixture(scope="session")
def case_i_material():
    return load_material(MATERIALS / "case_i.json")


@pytest.fixture(scope="session")
def case_ii_material():
    return load_material(MATERIALS / "case_ii.json")


@pytest.fixture(scope="session")
def case_iii_material():
    return load_material(MATERIALS / "case_iii.json")


def default_window(M, nx=128, ny=64):
    c = math.sqrt(max(mode_speeds(M).t_values()))
    return ScanWindow(re_min=0.02 * c, re_max=1.25 * c,
                      im_min=-0.45 * c, im_max=0.0, nx=nx, ny=ny)


@pytest.fixture(scope="session")
def solved_reference(reference):
    """The converged surface-wave root of the reference material."""
    roots = find_rayleigh(reference, default_window(reference))
    converged = [r for r in roots if r.classification == "converged"]
    assert converged, "reference material must yield a converged root"
    return converged[0]
