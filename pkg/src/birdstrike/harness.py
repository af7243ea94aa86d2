"""Drop-test experiment harness.

Builds the test matrix (seven cases, nine scenarios, fifteen iterations each
by default), ingests per-iteration force measurements, computes theoretical
reference forces and renders theory-vs-experiment conformance reports:

    % error       = (theoretical - experimental) * 100 / theoretical
    % conformance = 100 - % error
"""

from __future__ import annotations

import csv
import io
import json
import statistics
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import InvalidParameterError, ParseError
from .impact import ImpactScenario, impact_force
from .kinematics import DEFAULT_SCALE_FACTOR, GRAVITY_STANDARD, ideal_impact_velocity
from .materials import CRUISE_SPEED, MaterialSpec, builtin_materials
from .projectile import ProjectileSpec, generate_projectile_set
from .species import bundled_species_registry, find_species

DEFAULT_ITERATIONS = 15
BASELINE_SPECIES = "Starling"

MEASUREMENTS_CSV_HEADER = ("scenario_id", "iteration", "force_n")
MEASUREMENTS_VELOCITY_COLUMN = "impact_velocity_m_s"

REPORT_CSV_HEADER = (
    "scenario_id",
    "theoretical_n",
    "experimental_mean_n",
    "experimental_std_n",
    "percent_error",
    "percent_conformance",
)

# Stored nominal velocities are print-rounded; gaps beyond this are flagged
# as genuine inconsistencies rather than rounding.
NOMINAL_VELOCITY_TOLERANCE = 0.05  # m/s


@dataclass(frozen=True)
class TestScenario:
    """One row of the test matrix."""

    id: str
    case_number: int
    projectile_serial: int
    drop_height: float              # m
    nominal_impact_velocity: float  # m/s, stored verbatim, see nominal_velocity_mismatches
    impact_angle: float             # degrees
    specimen_material: str
    iterations: int

    def __post_init__(self) -> None:
        if not 1 <= self.case_number <= 7:
            raise InvalidParameterError(f"case_number must be within 1..7, got {self.case_number}")
        if not 1 <= self.projectile_serial <= 5:
            raise InvalidParameterError(
                f"projectile_serial must be within 1..5, got {self.projectile_serial}"
            )
        if not self.drop_height > 0:
            raise InvalidParameterError(f"drop_height must be > 0, got {self.drop_height}")
        if self.iterations < 1:
            raise InvalidParameterError(f"iterations must be >= 1, got {self.iterations}")
        if not 0.0 < self.impact_angle <= 90.0:
            raise InvalidParameterError(
                f"impact_angle must be within (0, 90], got {self.impact_angle}"
            )


@dataclass(frozen=True)
class TestMatrix:
    scenarios: tuple[TestScenario, ...]
    iterations_per_scenario: int = DEFAULT_ITERATIONS

    @property
    def total_iterations(self) -> int:
        return sum(scenario.iterations for scenario in self.scenarios)

    @property
    def case_numbers(self) -> set[int]:
        return {scenario.case_number for scenario in self.scenarios}

    def scenario(self, scenario_id: str) -> TestScenario:
        for candidate in self.scenarios:
            if candidate.id == scenario_id:
                return candidate
        raise KeyError(f"unknown scenario id {scenario_id!r}")


# Default matrix rows: the shared baseline plus one variant per case (case 2
# has two). Nominal velocities are the published values, kept verbatim.
_ALUMINIUM = "Aluminium-2024-T3"
_DEFAULT_ROWS = (
    # id, case, serial, drop height, nominal velocity, angle, specimen
    ("baseline", 1, 1, 2.8, 7.49, 90.0, _ALUMINIUM),
    ("1", 1, 3, 2.8, 7.49, 90.0, _ALUMINIUM),
    ("2.1", 2, 1, 2.0, 6.44, 90.0, _ALUMINIUM),
    ("2.2", 2, 1, 1.5, 5.47, 90.0, _ALUMINIUM),
    ("3", 3, 2, 2.8, 7.49, 90.0, _ALUMINIUM),
    ("4", 4, 4, 2.8, 7.49, 90.0, _ALUMINIUM),
    ("5", 5, 1, 2.8, 7.49, 50.0, _ALUMINIUM),
    ("6", 6, 1, 2.8, 7.49, 90.0, "CFRP"),
    ("7", 7, 5, 2.8, 7.49, 90.0, _ALUMINIUM),
)


def default_projectiles() -> list[ProjectileSpec]:
    """Projectile set generated from the bundled baseline species."""
    base = find_species(bundled_species_registry(), BASELINE_SPECIES)
    return generate_projectile_set(base)


def build_test_matrix(
    projectiles: Sequence[ProjectileSpec] | None = None,
    materials: Sequence[MaterialSpec] | None = None,
    iterations_per_scenario: int = DEFAULT_ITERATIONS,
) -> TestMatrix:
    """Assemble the test matrix, validating projectile serials and materials.

    The default configuration yields 9 scenarios across 7 cases, 135
    iterations in total.
    """
    if iterations_per_scenario < 1:
        raise InvalidParameterError(
            f"iterations_per_scenario must be >= 1, got {iterations_per_scenario}"
        )
    projectiles = list(projectiles) if projectiles is not None else default_projectiles()
    materials = list(materials) if materials is not None else builtin_materials()
    known_serials = {spec.serial for spec in projectiles}
    known_materials = {material.name for material in materials}
    scenarios = []
    for scenario_id, case, serial, height, velocity, angle, specimen in _DEFAULT_ROWS:
        if serial not in known_serials:
            raise InvalidParameterError(
                f"scenario {scenario_id!r} references unknown projectile serial {serial}"
            )
        if specimen not in known_materials:
            raise InvalidParameterError(
                f"scenario {scenario_id!r} references unknown material {specimen!r}"
            )
        scenarios.append(
            TestScenario(scenario_id, case, serial, height, velocity, angle,
                         specimen, iterations_per_scenario)
        )
    return TestMatrix(tuple(scenarios), iterations_per_scenario)


def matrix_to_json(matrix: TestMatrix) -> str:
    """Deterministic JSON rendering (identical matrices render byte-identical)."""
    payload = {
        "iterations_per_scenario": matrix.iterations_per_scenario,
        "scenarios": [
            {
                "id": s.id,
                "case_number": s.case_number,
                "projectile_serial": s.projectile_serial,
                "drop_height_m": s.drop_height,
                "nominal_impact_velocity_m_s": s.nominal_impact_velocity,
                "impact_angle_deg": s.impact_angle,
                "specimen_material": s.specimen_material,
                "iterations": s.iterations,
            }
            for s in matrix.scenarios
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def write_matrix(matrix: TestMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(matrix_to_json(matrix))


def read_matrix(path) -> TestMatrix:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    try:
        scenarios = tuple(
            TestScenario(
                id=row["id"],
                case_number=row["case_number"],
                projectile_serial=row["projectile_serial"],
                drop_height=row["drop_height_m"],
                nominal_impact_velocity=row["nominal_impact_velocity_m_s"],
                impact_angle=row["impact_angle_deg"],
                specimen_material=row["specimen_material"],
                iterations=row["iterations"],
            )
            for row in payload["scenarios"]
        )
        return TestMatrix(scenarios, payload["iterations_per_scenario"])
    except KeyError as exc:
        raise ParseError(f"{path}: missing field {exc}") from exc


def nominal_velocity_mismatches(
    matrix: TestMatrix, gravity: float = 10.0
) -> dict[str, tuple[float, float]]:
    """Scenarios whose stored nominal velocity disagrees with sqrt(2*g*h).

    Returns {scenario_id: (nominal, recomputed)}. With the default matrix and
    g = 10 only scenario 2.1 is flagged: its published velocity was carried
    over from the species plan instead of being recomputed for the 2.0 m drop.
    """
    mismatches = {}
    for scenario in matrix.scenarios:
        recomputed = ideal_impact_velocity(scenario.drop_height, gravity)
        if abs(recomputed - scenario.nominal_impact_velocity) > NOMINAL_VELOCITY_TOLERANCE:
            mismatches[scenario.id] = (scenario.nominal_impact_velocity, recomputed)
    return mismatches


class VelocitySplit(str, Enum):
    """How the drop velocity is split between bird and aircraft speed.

    The force model needs both terms but a drop only realises their sum, so
    the split is a modelling convention:

    - SCALED_CRUISE: aircraft speed is the cruise speed divided by the scale
      factor (6 m/s at 1:15), the bird gets the remainder. When the drop
      velocity is below the scaled cruise speed the whole velocity is treated
      as aircraft speed (equivalent to the stationary model at 90 deg).
    - ALL_AIRCRAFT: the whole drop velocity is the aircraft speed.
    """

    SCALED_CRUISE = "scaled-cruise"
    ALL_AIRCRAFT = "all-aircraft"


def theoretical_reference(
    scenario: TestScenario,
    projectile: ProjectileSpec,
    specimen: MaterialSpec,
    gravity: float = GRAVITY_STANDARD,
    split: VelocitySplit = VelocitySplit.SCALED_CRUISE,
    scale_factor: float = DEFAULT_SCALE_FACTOR,
    cruise_speed: float = CRUISE_SPEED,
    use_nominal_velocity: bool = False,
) -> float:
    """Theoretical force for one scenario, in newtons.

    The impact velocity comes from the drop height (or the stored nominal
    value when use_nominal_velocity is set), is split into bird and aircraft
    speeds per the chosen convention, and is fed to the force model with the
    projectile's mass, length and effective density and the specimen density.
    """
    if projectile.mass == 0:
        return 0.0
    velocity = (
        scenario.nominal_impact_velocity
        if use_nominal_velocity
        else ideal_impact_velocity(scenario.drop_height, gravity)
    )
    if split is VelocitySplit.ALL_AIRCRAFT:
        aircraft_speed = velocity
    else:
        aircraft_speed = min(cruise_speed / scale_factor, velocity)
    bird_speed = velocity - aircraft_speed
    model_scenario = ImpactScenario(
        bird_mass=projectile.mass,
        bird_length=projectile.shape.length,
        bird_density=projectile.effective_density,
        bird_speed=bird_speed,
        aircraft_speed=aircraft_speed,
        aircraft_density=specimen.density,
        impact_angle=scenario.impact_angle,
    )
    return impact_force(model_scenario).force


@dataclass(frozen=True)
class MeasurementSet:
    """Per-iteration force readings for one scenario."""

    scenario_id: str
    forces: tuple[float, ...]                          # N
    impact_velocities: tuple[float, ...] | None = None  # m/s, optional

    def __post_init__(self) -> None:
        if not self.forces:
            raise InvalidParameterError(f"scenario {self.scenario_id!r}: forces must be non-empty")
        for force in self.forces:
            if force < 0:
                raise InvalidParameterError(
                    f"scenario {self.scenario_id!r}: forces must be >= 0, got {force}"
                )


def ingest_measurements(
    path, matrix: TestMatrix | None = None, strict: bool = False
) -> list[MeasurementSet]:
    """Read a measurements CSV, grouped by scenario in first-appearance order.

    With a matrix supplied, iteration counts are validated against it and
    unknown scenario ids warn (or raise in strict mode).
    """
    forces: dict[str, list[float]] = {}
    velocities: dict[str, list[float]] = {}
    has_velocity = False
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            return []
        stripped = tuple(cell.strip() for cell in header)
        if stripped == MEASUREMENTS_CSV_HEADER + (MEASUREMENTS_VELOCITY_COLUMN,):
            has_velocity = True
        elif stripped != MEASUREMENTS_CSV_HEADER:
            raise ParseError(
                f"{path}: expected header {','.join(MEASUREMENTS_CSV_HEADER)!r} "
                f"(optionally plus {MEASUREMENTS_VELOCITY_COLUMN!r}), got {','.join(header)!r}"
            )
        expected_columns = 4 if has_velocity else 3
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != expected_columns:
                raise ParseError(
                    f"{path}: row {row_no}: expected {expected_columns} columns, got {len(row)}"
                )
            scenario_id = row[0].strip()
            try:
                int(row[1])
            except ValueError:
                raise ParseError(
                    f"{path}: row {row_no}, column iteration: not an integer: {row[1]!r}"
                ) from None
            try:
                force = float(row[2])
            except ValueError:
                raise ParseError(
                    f"{path}: row {row_no}, column force_n: not a number: {row[2]!r}"
                ) from None
            if force < 0:
                raise ParseError(f"{path}: row {row_no}: force_n must be >= 0, got {force}")
            if matrix is not None:
                try:
                    matrix.scenario(scenario_id)
                except KeyError:
                    message = f"{path}: row {row_no}: scenario id {scenario_id!r} not in matrix"
                    if strict:
                        raise ParseError(message) from None
                    warnings.warn(message, stacklevel=2)
            forces.setdefault(scenario_id, []).append(force)
            if has_velocity:
                try:
                    velocities.setdefault(scenario_id, []).append(float(row[3]))
                except ValueError:
                    raise ParseError(
                        f"{path}: row {row_no}, column {MEASUREMENTS_VELOCITY_COLUMN}: "
                        f"not a number: {row[3]!r}"
                    ) from None
    sets = []
    for scenario_id, values in forces.items():
        measured_velocities = tuple(velocities[scenario_id]) if has_velocity else None
        sets.append(MeasurementSet(scenario_id, tuple(values), measured_velocities))
    if matrix is not None:
        for measurement in sets:
            try:
                scenario = matrix.scenario(measurement.scenario_id)
            except KeyError:
                continue
            if len(measurement.forces) != scenario.iterations:
                raise ParseError(
                    f"{path}: scenario {measurement.scenario_id!r} has "
                    f"{len(measurement.forces)} iterations, matrix expects {scenario.iterations}"
                )
    return sets


def scenario_stats(measurement: MeasurementSet) -> tuple[float, float]:
    """Arithmetic mean and sample (n-1) standard deviation of the forces.

    A single iteration yields standard deviation 0 by convention.
    """
    mean = statistics.fmean(measurement.forces)
    std = statistics.stdev(measurement.forces) if len(measurement.forces) > 1 else 0.0
    return mean, std


def percent_error(theoretical: float, experimental: float) -> float:
    """Signed error (theoretical - experimental)*100/theoretical."""
    if theoretical == 0:
        raise InvalidParameterError("percent error undefined for zero theoretical force")
    return (theoretical - experimental) * 100.0 / theoretical


@dataclass(frozen=True)
class ScenarioConformance:
    scenario_id: str
    theoretical_force: float      # N
    experimental_mean: float      # N
    experimental_std: float       # N
    percent_error: float          # signed
    percent_conformance: float    # 100 - percent_error, may exceed 100
    percent_conformance_abs: float  # 100 - |percent_error|, secondary metric


@dataclass(frozen=True)
class ConformanceReport:
    scenarios: tuple[ScenarioConformance, ...]
    overall_mean_conformance: float
    overall_mean_conformance_abs: float


def conformance_report(
    matrix: TestMatrix,
    references: Mapping[str, float],
    measurements: Sequence[MeasurementSet],
) -> ConformanceReport:
    """Per-scenario and overall conformance between theory and measurement."""
    by_id = {measurement.scenario_id: measurement for measurement in measurements}
    rows = []
    for scenario in matrix.scenarios:
        if scenario.id not in references:
            raise InvalidParameterError(f"no theoretical reference for scenario {scenario.id!r}")
        if scenario.id not in by_id:
            raise InvalidParameterError(f"no measurements for scenario {scenario.id!r}")
        theoretical = references[scenario.id]
        mean, std = scenario_stats(by_id[scenario.id])
        error = percent_error(theoretical, mean)
        rows.append(
            ScenarioConformance(scenario.id, theoretical, mean, std, error,
                                100.0 - error, 100.0 - abs(error))
        )
    if not rows:
        raise InvalidParameterError("cannot build a conformance report for an empty matrix")
    overall = statistics.fmean(row.percent_conformance for row in rows)
    overall_abs = statistics.fmean(row.percent_conformance_abs for row in rows)
    return ConformanceReport(tuple(rows), overall, overall_abs)


def render_report_csv(report: ConformanceReport) -> str:
    """CSV rendering: one row per scenario plus a final OVERALL row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_CSV_HEADER)
    for row in report.scenarios:
        writer.writerow(
            [
                row.scenario_id,
                repr(row.theoretical_force),
                repr(row.experimental_mean),
                repr(row.experimental_std),
                repr(row.percent_error),
                repr(row.percent_conformance),
            ]
        )
    writer.writerow(["OVERALL", "", "", "", "", repr(report.overall_mean_conformance)])
    return buffer.getvalue()


def render_report_json(report: ConformanceReport) -> str:
    """JSON rendering mirroring the CSV fields plus the secondary abs metric."""
    payload = {
        "scenarios": [
            {
                "scenario_id": row.scenario_id,
                "theoretical_n": row.theoretical_force,
                "experimental_mean_n": row.experimental_mean,
                "experimental_std_n": row.experimental_std,
                "percent_error": row.percent_error,
                "percent_conformance": row.percent_conformance,
                "percent_conformance_abs": row.percent_conformance_abs,
            }
            for row in report.scenarios
        ],
        "overall_mean_conformance": report.overall_mean_conformance,
        "overall_mean_conformance_abs": report.overall_mean_conformance_abs,
    }
    return json.dumps(payload, indent=2) + "\n"


def emit_report(report: ConformanceReport, format: str, path) -> None:
    """Write a report file in 'csv' or 'json' format."""
    if format == "csv":
        rendered = render_report_csv(report)
    elif format == "json":
        rendered = render_report_json(report)
    else:
        raise InvalidParameterError(f"format must be 'csv' or 'json', got {format!r}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(rendered)
