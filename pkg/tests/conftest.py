import random
from fractions import Fraction
from itertools import product

import pytest

from sdsets.polyring import Polynomial


def rational_unit_vector(rng, n, spread=7):
    """Exact point on S^{n-1} by inverse stereographic projection of a rational point."""
    if n == 1:
        return [Fraction(rng.choice((1, -1)))]
    y = [Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(n - 1)]
    q = sum(v * v for v in y)
    return [2 * v / (q + 1) for v in y] + [(q - 1) / (q + 1)]


def random_polynomial(rng, n, max_degree, n_terms):
    terms = []
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        alpha = [0] * n
        for _ in range(deg):
            alpha[rng.randrange(n)] += 1
        terms.append((tuple(alpha), Fraction(rng.randint(-9, 9), rng.randint(1, 9))))
    return Polynomial(n, terms)


def cofactor_det(m):
    """Laplace expansion along the first row; independent of any elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def brute_force_members(n, s, keep):
    return sorted(a for a in product(range(s + 1), repeat=n) if sum(a) <= s and keep(a))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: int(x.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20261016)
