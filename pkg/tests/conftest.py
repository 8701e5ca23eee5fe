import random

import pytest

from ringgroups.corpus_files import CORPUS_DIR, load_group
from ringgroups.words import GroupSpec


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def corpus():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def group():
    return load_group


@pytest.fixture(scope="session")
def A():
    return GroupSpec(("a", "b", "c"), frozenset({frozenset("ab")}))



ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Lines reported in the terminal summary, one per acceptance criterion."""
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: (s.startswith("criteria total"), s)):
            terminalreporter.write_line(line)
