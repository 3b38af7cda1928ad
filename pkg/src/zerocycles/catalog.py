"""Bundled configurations: the three fake-plane line arrangements and a set of
small hand-built gluings used as sanity checks.

Each fixture is a JSON file in ``fixtures/`` named after the fixture. The
expected counts and flags below are what the criteria module should
reproduce; they are checked by the test suite, not trusted at load time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .configmodel import Counts, GluingConfiguration, parse_configuration


class UnknownFixtureError(KeyError):
    def __str__(self) -> str:
        return f"unknown fixture {self.args[0]!r}; known: {', '.join(sorted(_REGISTRY))}"


@dataclass(frozen=True)
class Expected:
    counts: Counts
    inequality_holds: bool
    generation_holds: bool
    structure_h1_kernel: int
    nodal_components: tuple[str, ...] = ()


@dataclass(frozen=True)
class Fixture:
    name: str
    source: str
    config: GluingConfiguration
    expected: Expected

    @property
    def experimental(self) -> bool:
        return self.source.startswith("experimental")


def _exp(c: tuple[int, int, int, int, int], ineq: bool, gen: bool, h1: int, nodal: tuple[str, ...] = ()) -> Expected:
    return Expected(Counts(*c), ineq, gen, h1, nodal)


# name -> (source, expected)
_REGISTRY: dict[str, tuple[str, Expected]] = {
    "mumford": (
        "Mumford fake projective plane: special-fibre lines (E, C curves) and their glued images",
        _exp((7, 20, 6, 14, 21), True, True, 0, ("Z7",)),
    ),
    "kato-ishida-1": (
        "Kato-Ishida fake projective plane, first line table, lines r and r+7 identified",
        _exp((7, 21, 7, 14, 21), True, True, 0),
    ),
    "kato-ishida-2": (
        "experimental: Kato-Ishida fake projective plane, second line table, lines r and r+7 "
        "identified; the trace produces nodal lines Z2, Z6, Z7",
        _exp((7, 18, 4, 14, 21), True, False, 1, ("Z2", "Z6", "Z7")),
    ),
    "two-lines": ("synthetic: two lines meeting once, identity gluing", _exp((2, 1, 0, 2, 1), True, True, 0)),
    "triangle": ("synthetic: three lines in a cycle, identity gluing", _exp((3, 3, 0, 3, 3), True, True, 0)),
    "square": ("synthetic: four lines in a cycle, identity gluing", _exp((4, 4, 0, 4, 4), True, True, 0)),
    "chain-4": ("synthetic: chain of four lines, identity gluing", _exp((4, 3, 0, 4, 3), True, True, 0)),
    "two-lines-onto-one": (
        "synthetic: two disjoint lines glued onto one line, no points",
        _exp((1, 0, 0, 2, 0), True, True, 1),
    ),
    "nodal-crossing": (
        "synthetic: two crossing lines glued onto one nodal line",
        _exp((1, 0, 0, 2, 1), True, True, 0, ("Z",)),
    ),
    "double-node": (
        "synthetic: two lines crossing twice, glued onto one line with two nodes",
        _exp((1, 0, 0, 2, 2), False, False, 0, ("Z",)),
    ),
    "triple-node": (
        "synthetic: two lines crossing three times, glued onto one line with three nodes",
        _exp((1, 0, 0, 2, 3), False, False, 0, ("Z",)),
    ),
    "nodal-with-tail": (
        "synthetic: nodal line built from two sheets, plus a line through one sheet",
        _exp((2, 1, 0, 3, 2), True, True, 0, ("Z1",)),
    ),
    "sheeted-pairs": (
        "synthetic: two sheets over each of two lines, one crossing block with two points",
        _exp((2, 2, 0, 4, 3), True, True, 1),
    ),
    "sheeted-triple": (
        "synthetic: two sheets over each of three lines, one triple point from three upstream points",
        _exp((3, 6, 1, 6, 6), True, True, 2),
    ),
    "sheeted-triple-nodal": (
        "synthetic: the sheeted triple with each line made nodal",
        _exp((3, 6, 1, 6, 9), False, False, 0, ("Z1", "Z2", "Z3")),
    ),
}


def fixture_names() -> list[str]:
    return sorted(_REGISTRY)


@lru_cache(maxsize=None)
def get_fixture(name: str) -> Fixture:
    if name not in _REGISTRY:
        raise UnknownFixtureError(name)
    source, expected = _REGISTRY[name]
    return Fixture(name, source, parse_configuration(fixture_text(name)), expected)


def fixture_text(name: str) -> str:
    """Raw JSON text of a bundled fixture file."""
    if name not in _REGISTRY:
        raise UnknownFixtureError(name)
    return resources.files(__package__).joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")


def list_fixtures() -> list[tuple[str, str, Counts]]:
    return [(n, _REGISTRY[n][0], _REGISTRY[n][1].counts) for n in fixture_names()]
