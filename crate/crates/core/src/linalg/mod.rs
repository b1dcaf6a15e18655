//! Exact matrix arithmetic over ℤ, ℚ and 𝔽_p.

mod matrix;
mod multilinear;
mod ring;
mod snf;

pub use matrix::Matrix;
pub use multilinear::{
    binomial, exterior_power_matrix, kronecker, multisets, subset_rank, subsets, sym_columns,
    symmetric_power_matrix, wedge_columns, SparseVec,
};
pub use ring::{format_scalar, int, Ring, Scalar};
pub use snf::{
    cokernel_projection, hermite_rows, image_basis, invariant_factors, is_split_injective,
    is_surjective, kernel_basis, smith_normal_form, solve, SmithForm,
};
