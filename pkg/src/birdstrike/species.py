"""Bird species records and the species registry CSV format.

All quantities are SI: kilograms, metres, kg/m^3, m/s.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from importlib import resources

from .errors import InvalidParameterError, ParseError

# Body densities outside this band are suspicious for real birds but not
# fatal: constructing such a record warns and keeps it, so exotic test
# inputs stay usable.
PLAUSIBLE_BODY_DENSITY = (500.0, 2000.0)  # kg/m^3

SPECIES_CSV_HEADER = ("name", "mass_kg", "length_m", "density_kg_m3", "flight_speed_m_s")


def _require_positive(field: str, value: float, context: str = "") -> None:
    if not value > 0:
        where = f" ({context})" if context else ""
        raise InvalidParameterError(f"{field} must be > 0, got {value}{where}")


@dataclass(frozen=True)
class BirdSpecies:
    """Physical parameters of one bird species."""

    name: str
    mass: float          # kg
    length: float        # m
    body_density: float  # kg/m^3
    flight_speed: float  # m/s

    def __post_init__(self) -> None:
        _require_positive("mass", self.mass, self.name)
        _require_positive("length", self.length, self.name)
        _require_positive("body_density", self.body_density, self.name)
        if self.flight_speed < 0:
            raise InvalidParameterError(
                f"flight_speed must be >= 0, got {self.flight_speed} ({self.name})"
            )
        lo, hi = PLAUSIBLE_BODY_DENSITY
        if not lo <= self.body_density <= hi:
            warnings.warn(
                f"{self.name or 'species'}: body_density {self.body_density} kg/m^3 "
                f"outside plausible range [{lo:g}, {hi:g}]",
                stacklevel=2,
            )


def load_species_registry(path) -> list[BirdSpecies]:
    """Load species records from a CSV file with SPECIES_CSV_HEADER columns.

    An empty file yields an empty registry. Duplicate names, malformed numbers
    and invariant violations raise ParseError naming the offending row.
    """
    registry: list[BirdSpecies] = []
    seen: set[str] = set()
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            return registry
        if tuple(cell.strip() for cell in header) != SPECIES_CSV_HEADER:
            raise ParseError(
                f"{path}: expected header {','.join(SPECIES_CSV_HEADER)!r}, "
                f"got {','.join(header)!r}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(SPECIES_CSV_HEADER):
                raise ParseError(
                    f"{path}: row {row_no}: expected {len(SPECIES_CSV_HEADER)} "
                    f"columns, got {len(row)}"
                )
            name = row[0].strip()
            numbers = {}
            for column, text in zip(SPECIES_CSV_HEADER[1:], row[1:]):
                try:
                    numbers[column] = float(text)
                except ValueError:
                    raise ParseError(
                        f"{path}: row {row_no}, column {column}: not a number: {text!r}"
                    ) from None
            if name in seen:
                raise ParseError(f"{path}: row {row_no}: duplicate species name {name!r}")
            try:
                species = BirdSpecies(
                    name=name,
                    mass=numbers["mass_kg"],
                    length=numbers["length_m"],
                    body_density=numbers["density_kg_m3"],
                    flight_speed=numbers["flight_speed_m_s"],
                )
            except InvalidParameterError as exc:
                raise ParseError(f"{path}: row {row_no}: {exc}") from exc
            seen.add(name)
            registry.append(species)
    return registry


def save_species_registry(path, registry: list[BirdSpecies]) -> None:
    """Write a registry back to CSV, lossless at full floating precision."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(SPECIES_CSV_HEADER)
        for species in registry:
            writer.writerow(
                [
                    species.name,
                    repr(species.mass),
                    repr(species.length),
                    repr(species.body_density),
                    repr(species.flight_speed),
                ]
            )


def bundled_species_registry() -> list[BirdSpecies]:
    """The species set shipped with the package (11 species)."""
    ref = resources.files(__package__).joinpath("data/species.csv")
    with resources.as_file(ref) as path:
        return load_species_registry(path)


def find_species(registry: list[BirdSpecies], name: str) -> BirdSpecies:
    """Look a species up by name (exact match first, then case-insensitive)."""
    for species in registry:
        if species.name == name:
            return species
    folded = name.casefold()
    for species in registry:
        if species.name.casefold() == folded:
            return species
    raise KeyError(f"unknown species {name!r}")
