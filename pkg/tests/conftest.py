import functools

import pytest
from hypothesis import settings

from hecke_ext.field import make_field
from hecke_ext.hecke_data import GenericHeckeData, OmegaGen, ZKappa, build_gl_n, check

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def gl(n, q):
    return build_gl_n(n, q)


def toy_one_reflection(omega=True, p=3):
    """One reflection s, Z_kappa = Z/2, c_s = 1 + t, and (optionally) a central omega of infinite order."""
    Z = ZKappa((2,), ("t",))
    w = OmegaGen("w", 0, (0,), ((1,),), (0,), ((0,),))
    data = GenericHeckeData(
        ("s",), ((1,),), Z, (((1,),),), ({(0,): 1, (1,): 1},), (w,) if omega else (), {}, make_field(p, 2)
    )
    return check(data)


@pytest.fixture
def gl2q3():
    return gl(2, 3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
