import random
from pathlib import Path

import pytest

from iarefine import corpus

CORPUS_DIR = Path(corpus.__file__).parent


@pytest.fixture(scope="session")
def load():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = corpus.load(name)
        return cache[name]

    return get


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
