"""Bundled reference dataset: 63 historical software projects."""

from __future__ import annotations

from importlib import resources

from ..dataset import ProjectSet, parse_dataset

BUNDLED_NAME = "cocomo81.csv"


def bundled_dataset_text() -> str:
    """Raw CSV text of the bundled dataset."""
    return resources.files(__package__).joinpath(BUNDLED_NAME).read_text("utf-8")


def load_bundled() -> ProjectSet:
    """Parse the bundled dataset."""
    return parse_dataset(bundled_dataset_text().splitlines())
