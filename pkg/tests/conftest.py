from __future__ import annotations

import functools

import pytest

from hfk11.diagram import RasmussenParams, family_params
from hfk11.invariants import run_pipeline


@functools.lru_cache(maxsize=None)
def family_result(n):
    return run_pipeline(family_params(n))


@functools.lru_cache(maxsize=None)
def params_result(p, q, r, s):
    return run_pipeline(RasmussenParams(p, q, r, s))


@pytest.fixture(scope="session")
def k0():
    return family_result(0)


@pytest.fixture(scope="session")
def unknot():
    return params_result(1, 0, 0, 0)


@pytest.fixture(scope="session")
def fig8():
    return params_result(5, 2, 0, 4)
