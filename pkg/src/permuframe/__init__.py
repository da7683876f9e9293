"""Compatible Frobenius-Schur frames for signals on Cayley graphs of S_n."""

from .cayley import (
    Eigenspace,
    GeneratingSet,
    cayley_edges,
    group_eigenspaces,
    parse_genset,
    pi_of_S,
    symmetric_eigen,
)
from .frames import (
    EigenspaceFramePolicy,
    Frame,
    FrameAtom,
    analysis,
    build_compatible_frame,
    canonical_dual,
    custom_policy,
    frame_bounds,
    frame_operator,
    onb_policy,
    project_w_gamma,
    project_z,
    repeat_policy,
    synthesize,
    theta_lift,
    z_space_basis,
)
from .irreps import IrrepTable, build_irrep_table, coefficient_vector, fs_basis, verify_schur
from .perm import GroupOrdering, Permutation, adjacent_factorization, compose, enumerate_group, inverse
from .ranked import RankedDataset, coefficient_report, ingest_rankings
from .young import dimension, partitions_of, standard_tableaux, yor_adjacent, yor_evaluate

__version__ = "0.1.0"
