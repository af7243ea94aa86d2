import pytest

from birdstrike.harness import build_test_matrix
from birdstrike.materials import builtin_materials
from birdstrike.projectile import generate_projectile_set
from birdstrike.species import bundled_species_registry, find_species


@pytest.fixture(scope="session")
def registry():
    return bundled_species_registry()


@pytest.fixture(scope="session")
def starling(registry):
    return find_species(registry, "Starling")


@pytest.fixture(scope="session")
def projectile_set(starling):
    return generate_projectile_set(starling)


@pytest.fixture(scope="session")
def materials():
    return builtin_materials()


@pytest.fixture()
def default_matrix():
    return build_test_matrix()
