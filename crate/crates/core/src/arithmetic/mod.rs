//! Exact integer and quadratic-form arithmetic.

mod forms;
mod symbols;

pub use forms::{
    automorph_matrix, class_data, geodesic_point, mobius, reduction_cycle, BinaryForm, Discriminant,
    GeodesicParam, HeegnerPoint, IntMatrix, UnitData,
};
pub use symbols::{
    divisor_power_sum, factorize, fundamental_discriminant_of, fundamental_discriminants, is_fundamental,
    jacobi, kronecker, moebius, squarefree_decompose, Parity, QuadChar,
};
