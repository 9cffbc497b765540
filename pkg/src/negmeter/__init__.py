"""Exact and sampled measurement of two-qubit entanglement negativity from
multicopy singlet-projection observables."""

from .interferometer import (CONFIGURATIONS, ExperimentRecord, PipelineReport,
                             outcome_distribution, run_pipeline, sample)
from .invariants import (InvariantSet, invariants_from_decomposition,
                         invariants_from_g, moments_from_invariants)
from .multicopy import (GTable, Pairing, cyclically_equivalent, g_exact,
                        g_table, singlet_projector)
from .negativity import (QuarticCoefficients, WitnessResult, coeffs_from_g,
                         coeffs_from_moments, det_pt_from_moments,
                         solve_negativity, witness_from_g)
from .states import (PauliDecomposition, PTMoments, bell, negativity_oracle,
                     partial_transpose, pauli_decompose, pt_moments,
                     random_mixed, random_pure, singlet, validate, werner)

__version__ = "0.1.0"
