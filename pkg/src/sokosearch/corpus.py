"""The bundled micro corpus: small solvable levels with known optimal lengths."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .levels import Level, load_levels


def corpus_dir() -> Path:
    return Path(str(resources.files("sokosearch") / "levels" / "micro"))


def load_corpus(directory: str | Path | None = None) -> list[Level]:
    """Every level of every ``*.xsb`` file in ``directory``, ordered by file name."""
    directory = Path(directory) if directory is not None else corpus_dir()
    levels = []
    for path in sorted(directory.glob("*.xsb")):
        levels.extend(load_levels(path))
    return levels
