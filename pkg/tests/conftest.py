"""Pytest configuration and fixtures."""

import pytest

from nomiddle.ringkit import FiniteRing, build_ring
from nomiddle.ringspec import parse_spec

TRIMAT_Z4 = "trimat(zmod(4),zmod(2))"
COMPANION_TRI = "tri(gf(2);2;companion[1,1,1])"
SCALAR_TRI = "tri(gf(2);2;scalars)"
FULL_TRI = "tri(gf(2);1;full)"
GF3_TRI = "tri(gf(3);2;gen[[1,2],[1,1]])"

# Small rings every property suite runs over.
FLEET = [
    "zmod(2)",
    "zmod(4)",
    "zmod(6)",
    "zmod(8)",
    "gf(2,2)",
    "prod(zmod(2),zmod(4))",
    "idealize(gf(2),2)",
    FULL_TRI,
    SCALAR_TRI,
    TRIMAT_Z4,
]

_RINGS = {}


def ring_for(text: str) -> FiniteRing:
    """Build once per session; rings carry their own caches."""
    if text not in _RINGS:
        _RINGS[text] = build_ring(parse_spec(text))
    return _RINGS[text]


@pytest.fixture(scope="session")
def make_ring():
    return ring_for


@pytest.fixture
def zmod8():
    return ring_for("zmod(8)")


@pytest.fixture
def zmod4():
    return ring_for("zmod(4)")


@pytest.fixture
def trimat_z4():
    """Lower triangular [[Z/4, 0], [Z/2, Z/2]], 16 elements."""
    return ring_for(TRIMAT_Z4)


@pytest.fixture
def companion_tri():
    return ring_for(COMPANION_TRI)


@pytest.fixture
def scalar_tri():
    return ring_for(SCALAR_TRI)


@pytest.fixture
def full_tri():
    return ring_for(FULL_TRI)
