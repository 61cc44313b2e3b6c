import itertools

import pytest
from hypothesis import strategies as st

from listcolor.instance import build_instance

ACCEPTANCE = {}


def complete(n):
    return build_instance(range(n), itertools.combinations(range(n), 2))


def tripartite333():
    V = range(9)
    return build_instance(V, [(u, v) for u, v in itertools.combinations(V, 2) if u // 3 != v // 3])


def cycle(n, lists=None):
    return build_instance(range(n), [(i, (i + 1) % n) for i in range(n)], lists)


@pytest.fixture
def k7():
    return complete(7)


@pytest.fixture
def k333():
    return tripartite333()


@st.composite
def instances(draw, max_n=8, masks=range(1, 8)):
    """Small random instances with vertex ids 0..n-1."""
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    masks = list(masks)
    lists = {v: draw(st.sampled_from(masks)) for v in range(n)}
    inst = build_instance(range(n), edges)
    return type(inst)(inst.adj, lists)


def record_acceptance(name, passed, detail=""):
    ACCEPTANCE[name] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
