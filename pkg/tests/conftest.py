import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

from sforge.corpus import builtin_corpus

REPO_ROOT = Path(__file__).resolve().parent.parent
GRAPHS_DIR = REPO_ROOT / "graphs"


@pytest.fixture(scope="session")
def corpus():
    return builtin_corpus()


@pytest.fixture(scope="session")
def graphs_dir():
    assert GRAPHS_DIR.is_dir(), "run sforge.corpus.write_corpus('graphs')"
    return GRAPHS_DIR
