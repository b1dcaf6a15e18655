//! λ-ring layer: symmetric functions, universal polynomials, λ-rings on
//! concrete carriers and the assembly axioms on module instances.

pub mod assembly;
pub mod lambda_ring;
pub mod poly;
pub mod symmetric;

pub use assembly::{
    check_e1, check_e2, check_e3, check_e4, check_e5, check_e5_complexes, check_e5_pair,
    check_naturality, comultiplication, multiplication, ExactnessReport, ModuleChain,
};
pub use lambda_ring::{
    check_composition_axiom, check_product_rule, check_sum_rule, evaluate_p_compose,
    generalized_binomial, lambda_binomial, Binomial, LambdaPoint, LambdaRing, Universal,
};
pub use poly::{Monomial, SymPoly};
pub use symmetric::{
    elementary, expand_elementary, reduce_to_elementary, single_factor_coefficient, universal_composition_sides,
    universal_p_compose, universal_p_product,
};
