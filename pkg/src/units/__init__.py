from .constants import CODATA2018, PhysicalConstants
from .params import DerivedQuantities, GasParameters, contact_coupling, derived_quantities, energy_scale
from .species import Species, lookup_species, resolve_species, species_registry

__all__ = [
    "CODATA2018",
    "PhysicalConstants",
    "Species",
    "lookup_species",
    "resolve_species",
    "species_registry",
    "GasParameters",
    "DerivedQuantities",
    "derived_quantities",
    "contact_coupling",
    "energy_scale",
]
