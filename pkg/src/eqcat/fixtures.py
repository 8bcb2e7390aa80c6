"""The shipped fixture corpus of small actions and certificates."""

from __future__ import annotations

from importlib import resources

from .covers import CategoricalCover, loads_cover
from .document import ActionDocument, load_document

FIXTURES = (
    "point",
    "hexagon-trivial",
    "hexagon-antipodal",
    "hexagon-rot3",
    "square-reflection",
    "triangle-s3",
    "octagon-reflection",
)

CERTIFICATES = {
    "square-reflection": "square-reflection.cover.json",
    "octagon-reflection": "octagon-reflection.cover.json",
}


def fixture_path(name: str):
    return resources.files("eqcat") / "data" / f"{name}.json"


def load_fixture(name: str) -> ActionDocument:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}")
    with resources.as_file(fixture_path(name)) as p:
        return load_document(p)


def certificate_path(name: str):
    return resources.files("eqcat") / "data" / CERTIFICATES[name]


def load_certificate(name: str) -> CategoricalCover:
    doc = load_fixture(name)
    return loads_cover(doc.complex, certificate_path(name).read_text())
