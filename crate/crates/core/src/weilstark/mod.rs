//! The cyclotomic Weil-Stark element and its verifiers.

pub mod element;
pub mod selmer;
pub mod verify;

pub use element::{change_of_basis, compute_e_pi, cyclotomic_element, cyclotomic_norm, expected_rank, gamma_t, WeilStarkElement};
pub use selmer::{FiniteModuleJson, SelmerFixture, SelmerFixtureJson};
pub use verify::{
    evaluation_ideal, fe_dimension_check, module_invariance, regulator_identity, regulator_identity_of, verify_annihilation,
    verify_fitting_equality, verify_integrality, CheckReport,
};
