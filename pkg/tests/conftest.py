from __future__ import annotations


from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from descalg.perm_core import ColoredPermutation, Permutation, SignedPermutation

settings.register_profile(
    "descalg", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("descalg")


@st.composite
def permutations(draw, min_n: int = 1, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def signed_permutations(draw, min_n: int = 1, max_n: int = 5):
    n = draw(st.integers(min_n, max_n))
    w = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from((-1, 1)), min_size=n, max_size=n))
    return SignedPermutation(tuple(s * v for s, v in zip(signs, w)))


@st.composite
def colored_permutations(draw, r: int | None = None, min_n: int = 1, max_n: int = 4):
    r = r if r is not None else draw(st.integers(1, 4))
    n = draw(st.integers(min_n, max_n))
    w = draw(st.permutations(range(1, n + 1)))
    colors = draw(st.lists(st.integers(0, r - 1), min_size=n, max_size=n))
    return ColoredPermutation(r, tuple(zip(w, colors)))


def descents(keys) -> list[int]:
    """Reference descent positions (1-based) of a list of comparable keys."""
    return [i + 1 for i, (a, b) in enumerate(zip(keys, keys[1:])) if a > b]


# one line per acceptance criterion, printed again in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
