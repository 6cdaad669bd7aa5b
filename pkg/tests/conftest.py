from __future__ import annotations

import pytest
from hypothesis import settings

from acunify import Signature, Term

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

VARIABLES = ("x", "y", "z", "w", "u", "v")


def term(text: str, theories: dict[str, str] | None = None, arities: dict[str, int] | None = None,
         variables=VARIABLES) -> Term:
    """Parse ``text`` with ``theories`` tagging binary symbols."""
    return Signature.build(theories, arities).parse(text, variables)


@pytest.fixture
def T():
    return term


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
