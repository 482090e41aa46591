"""Simulation and analysis of quantum autonomous Boolean networks."""
from .boolfn import (CATALOG, TruthTable, enumerate_functions, evaluate, lookup_function,
                     needs_ancilla, parse_function)
from .errors import (ArityError, DomainError, NumericalDomainError, QabnError, ResourceError,
                     SpecParseError)
from .network import (InputStateExpr, NetworkSpec, PureState, QubitLayout, StepOperator,
                      build_step_operator, build_wiring_permutation, count_wirings, evolve,
                      layout, parse_input, product_state, random_network)
from .oracle import BitOracle, PhaseOracle, build_bit_oracle, build_phase_oracle, tensor_network_oracle

__version__ = "0.1.0"
