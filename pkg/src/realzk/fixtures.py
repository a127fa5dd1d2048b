"""Access to the bundled example complexes (JSON files under fixtures/)."""

from __future__ import annotations

from importlib.resources import files

from .complexes import SimplicialComplex, loads_complex


def fixture_names() -> list[str]:
    root = files("realzk") / "fixtures"
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_text(name: str) -> str:
    resource = files("realzk") / "fixtures" / f"{name}.json"
    return resource.read_text(encoding="utf-8")


def load_fixture(name: str) -> SimplicialComplex:
    return loads_complex(fixture_text(name))
