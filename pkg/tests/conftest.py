import pytest

from knotquiver.corpus import load_corpus
from knotquiver.diagram import parse_pd

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIG8_PD = "X(3,1,4,8) X(7,5,8,4) X(5,2,6,3) X(1,6,2,7)"


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def fig8():
    return parse_pd(FIG8_PD)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_diagrams(corpus):
    return {entry.name: entry.diagram() for entry in corpus}


@pytest.fixture(scope="session")
def corpus_reports(corpus):
    """Full verification sweep over the bundled corpus, computed once."""
    from knotquiver.verify import verify_diagram

    reports = {}
    for entry in corpus:
        reports[entry.name] = verify_diagram(
            entry.diagram(),
            name=entry.name,
            expected_alexander=entry.alexander,
            check_all_states=True,
        )
    return reports
