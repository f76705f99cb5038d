import pytest
from hypothesis import settings

from pregroup_lab.core import SimpleType, Term

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def T(*spec):
    """T(("p", 0), ("q", -1)) -> Term."""
    return Term(SimpleType(b, z) for b, z in spec)


@pytest.fixture(scope="session")
def english():
    from pregroup_lab.grammar import builtin_english
    return builtin_english()


@pytest.fixture(scope="session")
def lumberjack():
    from pregroup_lab.grammar import builtin_lumberjack
    return builtin_lumberjack()
