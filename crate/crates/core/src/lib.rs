//! Decision procedures and witness synthesis for the reducibility
//! hierarchy of simply typed lambda calculus over one base type.

pub mod types;
pub mod term;
pub mod normalize;
pub mod subst;
pub mod syntax;
pub mod classify;
pub mod decide;
pub mod enumerate;
pub mod synth;
pub mod verify;
pub mod cert;
pub mod par;

pub use classify::HierarchyClass;
pub use normalize::LambdaError;
pub use subst::Substitution;
pub use term::{Context, Name, Term};
pub use types::SimpleType;
