"""Loaders for the three biomedical benchmark datasets.

WBC and WDBC ship with the package. The Parkinsons voice dataset is not
bundled; :func:`load_parkinsons` looks for the UCI ``parkinsons.data`` file
in ``$FUZZYSEL_DATA_DIR`` (or an explicit path).
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from ..data import Dataset, load_csv

DATA_DIR_ENV = "FUZZYSEL_DATA_DIR"


def _bundled(filename):
    return resources.files(__name__).joinpath(filename)


def load_wbc() -> Dataset:
    """Wisconsin Breast Cancer (original), 683 complete rows, 9 features.

    Class labels are the UCI codes "2" (benign) and "4" (malignant). The
    sample code number is dropped and the 16 rows with a missing
    bare-nuclei score are removed.
    """
    with resources.as_file(_bundled("wbc.csv")) as path:
        return load_csv(path, "class", {"sample_id"}, name="WBC")


def load_wdbc() -> Dataset:
    """Wisconsin Diagnostic Breast Cancer, 569 rows, 30 features, labels M/B."""
    with resources.as_file(_bundled("wdbc.csv")) as path:
        return load_csv(path, "diagnosis", name="WDBC")


def parkinsons_path(path=None) -> Path:
    if path is not None:
        return Path(path)
    candidates = []
    if os.environ.get(DATA_DIR_ENV):
        root = Path(os.environ[DATA_DIR_ENV])
        candidates += [root / "parkinsons.data", root / "parkinsons.csv"]
    for c in candidates:
        if c.is_file():
            return c
    raise FileNotFoundError(
        "Parkinsons dataset not found: download parkinsons.data from the UCI "
        f"repository and set {DATA_DIR_ENV} to its directory (or pass a path)")


def load_parkinsons(path=None) -> Dataset:
    """Oxford Parkinson's disease voice measurements, 195 rows, 22 features.

    Expects the UCI layout: a ``name`` column (dropped), 22 numeric
    measurements and the ``status`` label (1 = Parkinson's, 0 = healthy).
    """
    return load_csv(parkinsons_path(path), "status", {"name"}, name="Parkinsons")


LOADERS = {"wbc": load_wbc, "wdbc": load_wdbc, "parkinsons": load_parkinsons}


def load(name: str) -> Dataset:
    try:
        loader = LOADERS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown dataset {name!r}; choose from {sorted(LOADERS)}") from None
    return loader()
