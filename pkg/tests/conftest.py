from __future__ import annotations

from importlib import resources

import pytest

from ucdmerge.diagram import parse_diagram
from ucdmerge.matcher import SimilarityConfig, match_ontologies, parse_lexicon
from ucdmerge.ontology import transform_diagram

DATA = resources.files("ucdmerge") / "data"


@pytest.fixture(scope="session")
def data_dir():
    with resources.as_file(DATA) as path:
        yield path


@pytest.fixture(scope="session")
def g1():
    return parse_diagram((DATA / "g1.ucd").read_bytes())


@pytest.fixture(scope="session")
def g2():
    return parse_diagram((DATA / "g2.ucd").read_bytes())


@pytest.fixture(scope="session")
def lexicon():
    return parse_lexicon((DATA / "lexicon.tsv").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def o1(g1):
    return transform_diagram(g1)


@pytest.fixture(scope="session")
def o2(g2):
    return transform_diagram(g2)


@pytest.fixture(scope="session")
def worked_m(o1, o2, lexicon):
    return match_ontologies(o1, o2, SimilarityConfig(), lexicon)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(test_acceptance.RESULTS):
        terminalreporter.write_line(test_acceptance.summary_line(n))
