import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from wedgecalc.complex import SimplicialComplex, build_complex
from wedgecalc.shifted import shift_closure

FIXTURES = Path(__file__).parent / "fixtures"

# filled by test_acceptance, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def worked() -> SimplicialComplex:
    return build_complex([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])


@pytest.fixture
def square() -> SimplicialComplex:
    return build_complex([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)])


@st.composite
def complexes(draw, max_n: int = 6, min_n: int = 1, singletons: bool = True):
    """Arbitrary complex on 1..n, optionally with every vertex a face."""
    n = draw(st.integers(min_n, max_n))
    verts = list(range(1, n + 1))
    faces = draw(st.lists(st.sets(st.sampled_from(verts), min_size=1), max_size=5))
    if singletons:
        faces += [{v} for v in verts]
    return build_complex(verts, faces)


@st.composite
def shifted(draw, max_n: int = 6, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    verts = list(range(1, n + 1))
    gens = draw(st.lists(st.sets(st.sampled_from(verts), min_size=1), max_size=3))
    return shift_closure(n, gens)


def rng(seed: int = 0) -> random.Random:
    return random.Random(seed)
