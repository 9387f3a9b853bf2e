import functools

import pytest

from cglforge import presets, primes

FIXTURE_NAMES = ("b2-w1212", "a2tw-01010", "lastex", "qweyl:2", "qweyl:3", "a1q")


@functools.lru_cache(maxsize=None)
def get_preset(name, char=0):
    return presets.preset(name, char)


@functools.lru_cache(maxsize=None)
def get_pipeline(name, char=0):
    return primes.Pipeline(get_preset(name, char).presentation)


@pytest.fixture(scope="session")
def b2():
    return get_preset("b2-w1212")


@pytest.fixture(scope="session")
def b2_pipe():
    return get_pipeline("b2-w1212")


@pytest.fixture(scope="session")
def a2tw():
    return get_preset("a2tw-01010")


@pytest.fixture(scope="session")
def lastex():
    return get_preset("lastex")


@pytest.fixture(scope="session")
def lastex_pipe():
    return get_pipeline("lastex")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
