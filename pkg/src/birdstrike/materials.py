"""Specimen (aircraft-skin) materials and aircraft parameters."""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .errors import InvalidParameterError, ParseError

ALUMINIUM_DENSITY = 2780.0   # kg/m^3, 2024-T3 handbook value
CFRP_DENSITY_RATIO = 0.42    # CFRP sheet density relative to the aluminium specimen
SPECIMEN_THICKNESS = 0.002   # m, representative air-taxi fuselage skin gauge
CRUISE_SPEED = 90.0          # m/s (175 kt), mid-range air-taxi cruise speed

MATERIALS_CSV_HEADER = ("name", "density_kg_m3", "thickness_m")


@dataclass(frozen=True)
class MaterialSpec:
    name: str
    density: float    # kg/m^3
    thickness: float  # m

    def __post_init__(self) -> None:
        if not self.density > 0:
            raise InvalidParameterError(f"density must be > 0, got {self.density} ({self.name})")
        if not self.thickness > 0:
            raise InvalidParameterError(
                f"thickness must be > 0, got {self.thickness} ({self.name})"
            )


ALUMINIUM_2024_T3 = MaterialSpec("Aluminium-2024-T3", ALUMINIUM_DENSITY, SPECIMEN_THICKNESS)
CFRP = MaterialSpec("CFRP", CFRP_DENSITY_RATIO * ALUMINIUM_DENSITY, SPECIMEN_THICKNESS)


@dataclass(frozen=True)
class AircraftParams:
    """Aircraft-side inputs of an impact scenario."""

    cruise_speed: float = CRUISE_SPEED  # m/s
    skin: MaterialSpec = ALUMINIUM_2024_T3

    def __post_init__(self) -> None:
        if self.cruise_speed < 0:
            raise InvalidParameterError(f"cruise_speed must be >= 0, got {self.cruise_speed}")


def builtin_materials() -> list[MaterialSpec]:
    """The two stock specimen materials (aluminium sheet and CFRP sheet)."""
    return [ALUMINIUM_2024_T3, CFRP]


def load_materials(path) -> list[MaterialSpec]:
    """Load a materials override CSV (MATERIALS_CSV_HEADER columns)."""
    materials: list[MaterialSpec] = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            return materials
        if tuple(cell.strip() for cell in header) != MATERIALS_CSV_HEADER:
            raise ParseError(
                f"{path}: expected header {','.join(MATERIALS_CSV_HEADER)!r}, "
                f"got {','.join(header)!r}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(MATERIALS_CSV_HEADER):
                raise ParseError(
                    f"{path}: row {row_no}: expected {len(MATERIALS_CSV_HEADER)} "
                    f"columns, got {len(row)}"
                )
            try:
                density = float(row[1])
                thickness = float(row[2])
            except ValueError as exc:
                raise ParseError(f"{path}: row {row_no}: {exc}") from None
            try:
                materials.append(MaterialSpec(row[0].strip(), density, thickness))
            except InvalidParameterError as exc:
                raise ParseError(f"{path}: row {row_no}: {exc}") from exc
    return materials


def find_material(materials: list[MaterialSpec], name: str) -> MaterialSpec:
    for material in materials:
        if material.name == name:
            return material
    folded = name.casefold()
    for material in materials:
        if material.name.casefold() == folded:
            return material
    raise KeyError(f"unknown material {name!r}")
