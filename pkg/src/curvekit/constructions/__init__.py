"""Named curve families on the base triangulations, one module per genus."""

from .common import ConstructionError, FamilyCatalog
from .genus0 import genus0_family, separating_witness
from .genus1 import genus1_family
from .genus2 import genus2_family


def family(genus: int, punctures: int) -> FamilyCatalog:
    builders = {0: genus0_family, 1: genus1_family, 2: genus2_family}
    if genus not in builders:
        raise ConstructionError(f"no constructions in genus {genus}")
    return builders[genus](punctures)


__all__ = [
    "ConstructionError",
    "FamilyCatalog",
    "family",
    "genus0_family",
    "genus1_family",
    "genus2_family",
    "separating_witness",
]
