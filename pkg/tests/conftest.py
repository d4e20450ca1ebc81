import pytest

from syncguard import (
    Alphabet,
    all_normalized_automata,
    check_enforceability,
    random_enforceable_automata,
)

ALPHA_11 = Alphabet(("A",), ("B",))
ALPHA_21 = Alphabet(("A", "B"), ("R",))


@pytest.fixture(scope="session")
def alpha_11():
    return ALPHA_11


@pytest.fixture(scope="session")
def alpha_21():
    return ALPHA_21


@pytest.fixture(scope="session")
def exhaustive_family():
    """All structurally distinct normalized automata, |locations| <= 3, |I|=|O|=1."""
    return all_normalized_automata(ALPHA_11, max_accepting=2)


@pytest.fixture(scope="session")
def enforceable_family(exhaustive_family):
    return [a for a in exhaustive_family if check_enforceability(a).enforceable]


@pytest.fixture(scope="session")
def dead_family(exhaustive_family):
    return [a for a in exhaustive_family if not check_enforceability(a).enforceable]


@pytest.fixture(scope="session")
def random_family():
    """100 seeded-random enforceable automata, |locations| <= 5, |I|=2, |O|=1."""
    return random_enforceable_automata(ALPHA_21, count=100, max_accepting=4, seed=42)
