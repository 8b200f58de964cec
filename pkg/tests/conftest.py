import pytest

from pcgroups.families import builtin_corpus, builtin_family


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def corpus_small(corpus):
    return [G for G in corpus if G.order <= 243]


@pytest.fixture(scope="session")
def heis3():
    return builtin_family("heis", 3)


@pytest.fixture(scope="session")
def elab32():
    return builtin_family("elab", 3, 2)


@pytest.fixture(scope="session")
def wreath3():
    return builtin_family("wreath", 3)
