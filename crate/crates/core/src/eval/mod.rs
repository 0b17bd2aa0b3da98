//! Model checking and the membership algorithms.

mod algorithms;
mod compiled;
mod witness;

pub use algorithms::{
    ae_fast_path, ae_function, ae_image, conp_algorithm, dual_special_form, np_algorithm,
    pmc_reference_decide, Answer, InstanceStatus,
};
pub use compiled::{eval, holds, Assignment, Compiled};
pub use witness::{find_witnesses, WitnessTable};
