//! The four families' monolith constructions and their side identities.

mod assumptions;
mod downup;
mod identities;
mod monolith;
mod ore;
mod spec;
mod weyl;

pub use assumptions::check_assumptions;
pub use downup::{
    down_up_duality_check, filtration_checks, identity_duality_control, lowest_weight_module,
    singular_weight_report, singular_weights, verma_module, weight_sequence, SequenceKind,
    SingularWeight, WeightSequence,
};
pub use identities::{chain_growth_check, jx_membership_check};
pub use monolith::{build_monolith, direct_sum_control, jx_generators, MonolithOutcome};
pub use ore::{ore_factorial_identity, ore_nonisomorphism, ore_submodule_classification};
pub use spec::{make_spec, Complement, MonolithSpec, DEFAULT_KAPPA};
pub use weyl::{weyl_n_closed_form, weyl_oracle_check};
