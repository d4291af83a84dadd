from fractions import Fraction

import pytest

from wzproof.dsl import parse_cert
from wzproof.wz import cb_pair


def rf(text):
    """Rational function from certificate syntax; handy for writing expectations."""
    return parse_cert(text)


def poly(text):
    value = parse_cert(text)
    assert value.is_polynomial(), text
    return value.num


@pytest.fixture(scope="session")
def pair():
    return cb_pair()


@pytest.fixture(scope="session")
def F(pair):
    return pair.f


Q = Fraction


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    lines = test_acceptance.format_results()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
