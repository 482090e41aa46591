from .cores import (FrozenCoreReport, PerturbationReport, frozen_cores, island_of, islands,
                    perturb, perturb_operator, perturbed_trajectory)
from .cycles import (CycleReport, cycle_report, detect_im_cycle, detect_state_cycle_iterative,
                     detect_state_cycle_orbit, im_period_exact, permutation_cycles)
from .entropy import (im_batch, im_series, im_series_density, multipartite_mutual_information,
                      mutual_information_density, reduced_qubit_state, reduced_states,
                      trace_distance, validate_density, von_neumann_entropy)
from .spectrum import SpectrumReport, dft_spectrum
