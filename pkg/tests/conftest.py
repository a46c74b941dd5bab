import functools

import pytest

from simuorb import analyze, summarize


@functools.lru_cache(maxsize=None)
def cached_summary(n):
    return summarize(n)


@functools.lru_cache(maxsize=None)
def cached_orbits(n, use_filter=True):
    return tuple(analyze(n, detail=True, use_filter=use_filter))


@pytest.fixture
def summary_of():
    return cached_summary


@pytest.fixture
def orbits_of():
    return cached_orbits
