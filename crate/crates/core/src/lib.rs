pub mod catalog;
pub mod classifier;
pub mod error;
pub mod eval;
pub mod homomorphisms;
pub mod logic;
pub mod reductions;
pub mod structure;
pub mod sweeps;
pub mod text;

pub use classifier::{ComplexityLabel, ComplexityVerdict, TemplatePair};
pub use error::{Error, Result};
pub use eval::{Answer, Assignment};
pub use homomorphisms::{MultiValuedFunction, SmuhomProfile};
pub use logic::{Formula, Fragment, SpecialForm};
pub use structure::{Elem, Relation, Signature, Structure, Symbol, Violation};
