from pathlib import Path

import pytest

from blx.baselocus import ParamSurface
from blx.planemaps import PlaneMap
from blx.polycore import parse_poly

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def polys(*texts):
    return tuple(parse_poly(t) for t in texts)


def surface(*texts, **meta):
    return ParamSurface(polys(*texts), **meta)


def plane(*texts):
    return PlaneMap(polys(*texts))


@pytest.fixture
def one_point():
    return surface("t2^2*t3 + t1^3", "t1^2*t3 + t2^3", "t1*t2*t3", "t2^2*t3")


@pytest.fixture
def cremona():
    return plane("t2*t3", "t1*t3", "t1*t2")


@pytest.fixture
def quadric():
    return surface("t1^2", "t2^2", "t3^2", "t1*t2", degmap=2, surface_degree=2)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
