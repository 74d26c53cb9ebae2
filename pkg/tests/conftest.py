from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from removahedra.decoration import ALPHABET, Decoration

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def decorations(min_size=1, max_size=4, alphabet=ALPHABET):
    return st.text(alphabet=alphabet, min_size=min_size, max_size=max_size).map(Decoration)


@st.composite
def permutations(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    return tuple(draw(st.permutations(range(1, n + 1))))


@st.composite
def proper_subsets(draw, min_n=2, max_n=6):
    n = draw(st.integers(min_n, max_n))
    s = draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1))
    return n, frozenset(s)


# Printed examples for the decorations oodo and oxuo (compact subset notation).
EXAMPLES = {
    "oodo": {
        "rays": "1, 2, 3, 4, 12, 13, 23, 34, 123, 134, 234",
        "pairs": (
            "{1, 2}, {1, 3}, {1, 34}, {12, 13}, {12, 134}, {12, 23}, {12, 234}, {123, 134}, "
            "{123, 234}, {123, 4}, {13, 23}, {13, 34}, {13, 4}, {134, 234}, {2, 3}, {2, 34}, "
            "{23, 34}, {23, 4}, {3, 4}"
        ),
        "facets": (
            "{1, 2}, {1, 3}, {12, 13}, {12, 23}, {123, 134}, {123, 234}, {13, 23}, {13, 34}, "
            "{134, 234}, {2, 3}, {23, 34}, {3, 4}"
        ),
        "counts": (11, 19, 12),
    },
    "oxuo": {
        "rays": "1, 4, 12, 34, 123, 124, 234",
        "pairs": "{1, 234}, {12, 34}, {12, 4}, {123, 124}, {123, 4}, {124, 34}",
        "facets": "{1, 234}, {12, 4}, {123, 124}, {124, 34}",
        "counts": (7, 6, 4),
    },
}


def split_pairs(text):
    return [p.strip() + "}" if not p.strip().endswith("}") else p.strip() for p in text.split("}, ")]


# -- acceptance reporting ------------------------------------------------------------

import pytest  # noqa: E402

_CRITERIA = {}
CRITERION_DETAILS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict = _CRITERIA[number]
        detail = CRITERION_DETAILS.get(number, "") if verdict == "PASS" else ""
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {title} {detail}".rstrip())
