import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from climakg.ingest import ingest_file
from climakg.schema import builtin_climate_schema
from climakg.store import Graph

DATA_DIR = pathlib.Path(__file__).parent / "data"
FIXTURE_CORPUS = DATA_DIR / "fixture_corpus.ndjson"


def load_fixture_graph() -> Graph:
    graph = Graph()
    stats = ingest_file(graph, builtin_climate_schema(), FIXTURE_CORPUS)
    assert stats.errors == 0
    return graph


@pytest.fixture(scope="session")
def fixture_graph() -> Graph:
    return load_fixture_graph()
