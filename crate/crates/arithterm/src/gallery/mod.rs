//! The gallery of number-theoretic closed forms: a registry of functions,
//! each with a naive oracle, a counting spec or direct term, a domain
//! predicate, and range-verification machinery.

pub mod composite;
pub mod oracles;
pub mod registry;
pub mod specs;
pub mod terms;
pub mod verify;

pub use composite::{
    cantor_unpair, cantor_x_term, cantor_y_term, rsa_factor, rsa_factor_term,
    rsa_factor_term_with_phi,
};
pub use registry::{find, oracle_eval, registry, EntryKind, FunctionEntry};
pub use specs::{phi_term_at, spec_of, GalleryFn};
pub use terms::{nu_p_term, term_of, NuVariant};
pub use verify::{
    arg_tuples, identity_suite, identity_suites, verify_range, Row, RowStatus, Strategy, VerifyOpts,
};
