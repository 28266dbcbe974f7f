import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sokosearch.corpus import corpus_dir, load_corpus  # noqa: E402

# Optimal move counts, frozen from tests/oracles.py (bfs_path and iddfs_length agree).
ORACLE_LENGTHS = {
    "L01": 1,
    "L02": 2,
    "L03": 4,
    "L04": 12,
    "L05": 12,
    "L06": 11,
    "L07": 10,
    "L08": 14,
    "L09": 17,
    "L10": 11,
    "L11": 8,
    "L12": 0,
    "L13": 16,
    "L14": 10,
}

TINY = "#####\n#@$.#\n#####"
CORNER = "#####\n#$@.#\n#####"
OPEN_ROOM = "#####\n#   #\n# @ #\n#   #\n#####"
# Unsolved level too large for exhaustive search within a short timeout.
BIG = """\
################
#@             #
# $ $ $ $ $ $  #
#              #
#  $ $ $ $ $   #
#              #
# .  .  .  .   #
#              #
# . . . . . .  #
#              #
#   .          #
################"""


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def corpus_by_name(corpus):
    return {lv.name: lv for lv in corpus}


@pytest.fixture(scope="session")
def micro_dir():
    return corpus_dir()
