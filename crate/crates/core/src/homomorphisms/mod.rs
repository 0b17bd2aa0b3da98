//! Homomorphisms, multi-homomorphisms and surjective multi-homomorphisms.

mod digraph;
mod mvf;
mod partition;
mod profile;
mod search;

pub use digraph::{digraph_combine, CombineCase};
pub(crate) use mvf::full_mask;
pub use mvf::MultiValuedFunction;
pub use partition::{
    indistinguishability_partition, indistinguishable, preserves_partition,
    IndistinguishabilityPartition,
};
pub use profile::{
    exists_point, forall_point, is_ae_smuhom, smuhom_profile, AeWitness, ExistsWitness,
    ForallWitness, SmuhomProfile,
};
pub use search::{
    candidate_count, enumerate_homomorphisms, enumerate_muhoms, enumerate_smuhoms,
    exists_constant_homomorphism, find_homomorphism, find_smuhom, for_each_homomorphism,
    for_each_smuhom, is_multi_homomorphism, is_surjective_multi_homomorphism, maximal_muhoms,
};
