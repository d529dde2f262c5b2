from functools import cached_property

import pytest

from prshells.groups import affine_group, conjugating_permutation, orbits_on_ksubsets
from prshells.prcode import build_code


class Instance:
    """A power residue code with its groups, enumerated once per session."""

    def __init__(self, p, m, q):
        self.p, self.m, self.q = p, m, q
        self.code = build_code(p, m, q)
        self.S = self.code.enumerate()
        self.H, self.G = affine_group(p, m)
        self.tau = conjugating_permutation(p, m)
        self.pairs = orbits_on_ksubsets(self.H, 2)

    @cached_property
    def independence(self):
        from prshells.jacobi import independence_check

        return independence_check(self.S, self.tau, self.m, 2)


@pytest.fixture(scope="session")
def pr31():
    return Instance(31, 3, 2)


@pytest.fixture(scope="session")
def pr13():
    return Instance(13, 3, 5)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """Store one pass/fail line per acceptance criterion for the summary."""

    def _record(number, ok, detail):
        ACCEPTANCE[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
