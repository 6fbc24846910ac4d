"""Thermal entanglement in periodic spin-s Heisenberg chains by exact diagonalization."""

__version__ = "0.1.0"

from .chain import ChainSpec, build_hamiltonian, dimension, sector_index, sector_split  # noqa: E402
from .entanglement import negativity, partial_transpose, witness  # noqa: E402
from .errors import InstanceTooLarge, NoCrossing  # noqa: E402
from .scans import characteristic_temperature, negativity_vanishing_temperature  # noqa: E402
from .separable import e_min_closed_form, numeric_min_product_energy, separable_bound  # noqa: E402
from .spectra import diagonalize, ground_energy  # noqa: E402
from .spinalg import SpinValue  # noqa: E402
from .thermal import nn_reduced_density, observables, thermal_state  # noqa: E402
