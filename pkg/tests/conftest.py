import pytest

from episturmian.morphism import Morphism, d_bonacci, parse_epi

# rows of the conjugacy class of psi_abb o (b c), ordered by index
ABB_CLASS = [
    ("a->ababa,b->ababac,c->ab", "", 0),
    ("a->babaa,b->babaca,c->ba", "a", 1),
    ("a->abaab,b->abacab,c->ab", "ab", 2),
    ("a->baaba,b->bacaba,c->ba", "aba", 3),
    ("a->aabab,b->acabab,c->ab", "abab", 4),
    ("a->ababa,b->cababa,c->ba", "ababa", 5),
]

# psi_abb o (a c b) and the left return words of acababab in its shift
ABB_ACB = "psi:abb:(a c b)"
ABB_ACB_RETURNS = (
    "acabababacababaababacababaabab",
    "acabababacababaababacababaababacababaabab",
    "acabababacababaababacababaababacababacababaababacababaabab",
)


@pytest.fixture(scope="session")
def fib():
    return d_bonacci(2)


@pytest.fixture(scope="session")
def trib():
    return d_bonacci(3)


@pytest.fixture(scope="session")
def tetra():
    return d_bonacci(4)


@pytest.fixture(scope="session")
def abb_acb():
    return parse_epi(ABB_ACB)


@pytest.fixture(scope="session")
def abb_class():
    return [Morphism.parse(text) for text, _, _ in ABB_CLASS]


# one PASS/FAIL line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
