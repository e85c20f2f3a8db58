import functools

import pytest

from mseqca.finite_field import build_tower, tower_for


@functools.lru_cache(maxsize=None)
def cached_tower(q, t):
    return tower_for(q, t)


@pytest.fixture(scope="session")
def t16():
    """F_16 over F_4 = F_2(alpha), alpha^2 = alpha + 1, beta a root of x^2 + x + alpha."""
    return build_tower(2, 2, 2, [1, 1, 1], [2, 1, 1])


@pytest.fixture(scope="session")
def t27():
    """F_27 over F_3 with alpha a root of x^3 + 2x + 1."""
    return build_tower(3, 1, 3, None, [1, 2, 0, 1])


@pytest.fixture(scope="session")
def t9():
    return build_tower(3, 1, 2, None, [2, 1, 1])


@pytest.fixture(scope="session")
def t49():
    return build_tower(7, 1, 2, None, [3, 6, 1])


@pytest.fixture(scope="session")
def tower():
    return cached_tower


# acceptance bookkeeping: one line per criterion, printed after the run
ACCEPTANCE: dict[int, list] = {}


def record_criterion(number, text, ok, detail=""):
    entry = ACCEPTANCE.setdefault(number, [True, text, []])
    entry[0] = entry[0] and ok
    if detail:
        entry[2].append(detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, text, details = ACCEPTANCE[number]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
        if details:
            line += " [" + "; ".join(details) + "]"
        terminalreporter.write_line(line)
