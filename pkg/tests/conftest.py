import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from esketch import fincat as fc  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def small_categories():
    """Twenty finite categories with at most 4 objects and 8 morphisms."""
    z = lambda n: fc.from_monoid(range(n), lambda a, b: (a + b) % n, 0)  # noqa: E731
    return [
        fc.terminal(),
        fc.discrete(["a", "b"]),
        fc.discrete(["a", "b", "c"]),
        fc.discrete(["a", "b", "c", "d"]),
        fc.arrow(),
        fc.iso(),
        fc.from_preorder([0, 1, 2], lambda a, b: a <= b),
        fc.free_on_dag(["a", "b", "c"], [("f", "a", "b"), ("g", "c", "b")]),
        fc.free_on_dag(["a", "b", "c"], [("f", "a", "b"), ("g", "a", "c")]),
        fc.free_on_dag(["a", "b"], [("f", "a", "b"), ("g", "a", "b")]),
        fc.free_on_dag(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")]),
        z(2),
        z(3),
        z(4),
        fc.from_monoid([0, 1], min, 1),
        fc.from_monoid([(0, 0), (0, 1), (1, 0), (1, 1)],
                       lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0)),
        fc.from_preorder([0, 1, 2, 3], lambda a, b: a == b or (a == 0 and b in (1, 2))),
        fc.from_preorder(["x", "y", "z"], lambda a, b: a == b or (a, b) == ("x", "y")),
        fc.from_preorder([0, 1, 2, 3], lambda a, b: a == b or (a, b) in ((0, 1), (2, 3))),
        fc.codiscrete(["p", "q"]),
    ]


@pytest.fixture(scope="session")
def corpus():
    cats = small_categories()
    assert len(cats) == 20
    assert all(C.n_obj <= 4 and C.n_mor <= 8 for C in cats)
    return cats


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
