import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from tfdclass.lattice import MAX_RANK, CohClass, Root, SurfaceModel

settings.register_profile("default", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

PROPERTY = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def surfaces(draw, max_blowups=None):
    root = draw(st.sampled_from(list(Root)))
    top = MAX_RANK - (1 if root is Root.PROJ_PLANE else 2)
    if max_blowups is not None:
        top = min(top, max_blowups)
    return SurfaceModel(root, draw(st.integers(0, top)))


def classes(surface, lo=-6, hi=6):
    return st.tuples(*[st.integers(lo, hi)] * surface.rank).map(lambda v: CohClass(surface, v))


@pytest.fixture(scope="session")
def computed():
    from tfdclass.enumerator import enumerate_all
    return enumerate_all(jobs=min(4, os.cpu_count() or 1))


@pytest.fixture(scope="session")
def golden():
    from tfdclass.catalog import golden_catalog
    return golden_catalog()


@pytest.fixture(scope="session")
def golden_canonical(golden):
    from tfdclass.enumerator import canonicalize
    return [canonicalize(g) for g in golden]


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        if name.startswith("test_criterion_"):
            _ACCEPTANCE[int(name.split("_")[2])] = (report.passed, name)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, name = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  ({name})")
