import hypothesis.strategies as st
import pytest

from nandlab.tree import NandInstance


@st.composite
def instances(draw, depths=(0, 2, 4, 6)):
    depth = draw(st.sampled_from(depths))
    bits = draw(st.lists(st.integers(0, 1), min_size=1 << depth, max_size=1 << depth))
    return NandInstance(depth, tuple(bits))


def inst(text: str) -> NandInstance:
    return NandInstance.parse(text)


@pytest.fixture
def parse():
    return inst


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
