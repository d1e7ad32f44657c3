mod check;
mod complex;
mod conjugate;
mod homotopy;
mod random;
mod reduction;

pub use check::{abstract_suite, InstanceShape};
pub use complex::{
    complex_from_json, euler_characteristic, FiniteComplex, FiniteComplexJson, MAX_JSON_SPACES,
    MAX_JSON_SPACE_DIM,
};
pub use conjugate::{conjugate_by_exp_k, Conjugated, KFamily};
pub use homotopy::{
    check_homotopy, check_modified, harmonic_homotopy, hat_modification, modify_hat_tilde,
    perturb_homotopy, subcomplex_from_l, tilde_modification, HomotopySet, SubcomplexReport,
};
pub use random::{
    random_complex, random_complex_with_ranks, random_dims, random_gram, random_grams, random_grid,
    random_invertible, random_matrix, random_perturbation, seeded_rng, RandomComplex,
};
pub use reduction::{random_reduction, Reduction};
