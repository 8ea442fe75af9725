import sys
from pathlib import Path

import pytest

from kindex import CorpusBundle, parse_publications

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def filter_corpus() -> CorpusBundle:
    return parse_publications((DATA / "corpus_filter.txt").read_text())


@pytest.fixture(scope="session")
def natsci_text() -> str:
    return (DATA / "natsci_top_sample.tsv").read_text()


@pytest.fixture(scope="session")
def krating_text() -> str:
    return (DATA / "krating_summary.tsv").read_text()
