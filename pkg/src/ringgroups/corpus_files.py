"""Access to the shipped corpus of presentations, maps, extensions and motions."""

from __future__ import annotations

from pathlib import Path

from .presentation import Presentation, load_presentation

CORPUS_DIR = Path(__file__).with_name("corpus")


def corpus_path(name: str, directory: str | Path | None = None) -> Path:
    return Path(directory or CORPUS_DIR) / name


def load_group(name: str, directory: str | Path | None = None) -> Presentation:
    """Load ``<name>.grp`` from the corpus."""
    return load_presentation(corpus_path(f"{name}.grp", directory))


def group_registry(directory: str | Path | None = None) -> dict[str, Presentation]:
    """Every ``.grp`` in a directory, keyed by its declared group name."""
    out = {}
    for path in sorted(Path(directory or CORPUS_DIR).glob("*.grp")):
        p = load_presentation(path)
        out[p.name] = p
    return out
