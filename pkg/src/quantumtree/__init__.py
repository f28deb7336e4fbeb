"""Forward and inverse scattering on equilateral metric trees.

Submodules
----------
trees        combinatorial rooted trees, enumeration, canonical codes
polynomials  exact characteristic polynomials, branched continued fractions
sturm        edge potentials, characteristic functions, spectra
scattering   Jost/S functions and forward-simulated scattering records
recover      exact shape recovery from scattering data
cli          command-line surface (`qtree`)
"""

from .trees import (RootedTree, from_edge_list, degree, root_subtrees,
                    canonical_code, is_isomorphic, attach_branches,
                    enumerate_rooted_trees, tree_to_json, tree_from_json)
from .polynomials import (psi, psi_hat, branch_polynomials, BranchedFraction,
                          bcf_expand, bcf_eval, bcf_text, subtree_catalog)
from .sturm import (Potential, fundamental_values, char_functions,
                    char_functions_fast, assemble_phi_matrices,
                    eigenvalues_in_interval, reduction_identities_check,
                    spectrum_csv)
from .scattering import (ScatteringRecord, jost, s_function, common_spectrum,
                         scattering_info, count_negative_eigenvalues,
                         absorb_pendant_root, emat_residual,
                         s_ratio_diagnostic, s_trace_csv)
from .recover import (interpolate_polynomials, recover_d0,
                      reciprocal_degree_sum, diophantine_reciprocals,
                      split_psihat, undetermined_coefficients,
                      RecoveryResult, recover_shape, recover_snowflake)

__all__ = [
    "RootedTree", "from_edge_list", "degree", "root_subtrees",
    "canonical_code", "is_isomorphic", "attach_branches",
    "enumerate_rooted_trees", "tree_to_json", "tree_from_json",
    "psi", "psi_hat", "branch_polynomials", "BranchedFraction", "bcf_expand",
    "bcf_eval", "bcf_text", "subtree_catalog",
    "Potential", "fundamental_values", "char_functions",
    "char_functions_fast", "assemble_phi_matrices", "eigenvalues_in_interval",
    "reduction_identities_check", "spectrum_csv",
    "ScatteringRecord", "jost", "s_function", "common_spectrum",
    "scattering_info", "count_negative_eigenvalues", "absorb_pendant_root",
    "emat_residual", "s_ratio_diagnostic", "s_trace_csv",
    "interpolate_polynomials", "recover_d0", "reciprocal_degree_sum",
    "diophantine_reciprocals", "split_psihat", "undetermined_coefficients",
    "RecoveryResult", "recover_shape", "recover_snowflake",
]

__version__ = "1.0.0"
