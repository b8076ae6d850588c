"""Bundled incidence tables (published (19_4) tables, classical configurations, patterns)."""

from __future__ import annotations

from importlib import resources

from .incidence import Configuration, parse_configuration

TABLES_19_4 = (
    "fig4_z2cubed",
    "fig5_left",
    "fig5_right",
    "fig6_left",
    "fig6_right",
    "example_novar",
    "example_onevar",
    "example_twovar_a",
    "example_twovar_b",
)
SYMMETRIC_19_4 = TABLES_19_4[:5]
EXAMPLES_19_4 = TABLES_19_4[5:]
CLASSICAL = ("fano", "pappus", "desargues")
PATTERNS = ("pappus", "non_pappus", "desargues", "non_desargues")


def fixture_names() -> list[str]:
    root = resources.files("nkconf") / "fixtures"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


def fixture_text(name: str) -> str:
    path = resources.files("nkconf") / "fixtures" / f"{name}.txt"
    if not path.is_file():
        raise KeyError(f"no bundled fixture named {name!r}")
    return path.read_text()


def load_fixture(name: str) -> Configuration:
    return parse_configuration(fixture_text(name), name=name)
