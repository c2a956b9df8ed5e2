"""Bundled dietary intake networks.

Two sex-specific principal dietary intake networks (13 food groups for women,
12 for men; the men's network has no fried-potatoes vertex) with published
edge partial correlations transcribed at two decimals. Both load as models
whose concentration matrix has unit diagonal, so their covariance equals the
inflated correlation matrix.
"""

from __future__ import annotations

from importlib import resources

from .model import Model
from .modelio import load_model

_DATA = resources.files(__name__.rsplit(".", 1)[0]) / "data"


def dataset_path(name: str):
    """Filesystem path of a bundled model file ('women' or 'men')."""
    candidate = _DATA / f"{name}.model"
    if not candidate.is_file():
        raise KeyError(f"no bundled dataset named {name!r}")
    return candidate


def women_network() -> Model:
    """Women's principal dietary intake network (13 vertices, 17 edges)."""
    return load_model(dataset_path("women"))


def men_network() -> Model:
    """Men's principal dietary intake network (12 vertices, 14 edges)."""
    return load_model(dataset_path("men"))
