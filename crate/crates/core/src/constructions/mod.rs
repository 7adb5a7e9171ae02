//! Secondary constructions of APN functions and their criteria.

mod concat;
mod coset;
mod ea;
mod hyperplane;
mod nyberg;
mod switching;

pub use concat::{concat_is_apn, concatenate, quadratic_concat_criterion, ConcatWitness, Embedding};
pub use coset::{admissible_sums, coset_criterion, coset_modify, CosetDecomposition, CosetVerdict};
pub use ea::{ea_transform, random_affine, random_affine_bijection};
pub use hyperplane::{
    exp_sum_condition, h_equivalence_witness, hyperplane_basis, hyperplane_modify, table1_maps, tr_l_criterion,
    trace_zero_basis, ExpSum, HyperplaneSpec, TrLChecker, TrLWitness, TABLE1_EXPONENTS,
};
pub use nyberg::{inverse_extension, nyberg_four_roots, nyberg_root_count, nyberg_roots_direct};
pub use switching::{decompose_to_4uniform, switch, Decomposition, SwitchOutcome, SwitchSpec};
