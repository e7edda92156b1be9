"""Persistence and stability analysis of bounded-capacity compartmental networks.

Particles hop along the edges of a directed compartmental graph; every
compartment has a finite capacity, and a transfer needs particles in the
donor and free space in the recipient. The package builds the induced
reaction network and Petri net, certifies persistence through siphons and
conserved quantities, and checks the equilibrium, monotonicity and
contraction behaviour of the dynamics numerically.
"""

from .crn import (
    ConservedQuantity,
    Crn,
    EdgeRate,
    MassActionRate,
    Reaction,
    compartmental_crn,
    conservation_basis,
    example1_crn,
    ode_rhs,
    positive_conserved_on_support,
    stoichiometric_matrix,
)
from .dynamics import (
    ReducedSystem,
    Trajectory,
    boundary_equilibria_scan,
    find_equilibrium,
    jacobian,
    matrix_measure_l1,
    reduced_rhs,
    simulate,
    simulate_ensemble,
    verify_boundary_repulsion,
    verify_contraction,
    verify_monotonicity,
    verify_persistence_numerically,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    CompartmentalGraph,
    DonorRecipientIndex,
    build_graph,
    donors_recipients,
    is_strongly_connected,
    strong_components,
)
from .io import graph_from_json, graph_to_json, load_graph
from .persistence import (
    PersistenceVerdict,
    check_persistence_structural,
    check_persistence_theorem1,
    verify_certificates,
)
from .petri import (
    PetriNet,
    build_petri,
    closed_form_siphons,
    is_siphon,
    minimal_siphons,
    petri_strongly_connected,
)
from .rates import CustomRate, MassAction, RateKernel, Saturating, rate_from_spec, validate_kernel

__version__ = "0.1.0"
