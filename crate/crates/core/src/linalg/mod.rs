//! `Q_p^d` with the sup norm as a concrete Banach space: matrices, Krylov
//! minimal polynomials, Newton polygons and vector types.

mod krylov;
mod matrix;
mod newton;
mod vtype;

pub use krylov::{minimal_polynomial, MinimalPolynomial};
pub use matrix::{mat_apply, operator_norm, sup_norm, PMatrix, PVector};
pub use newton::{dominant_slope, newton_polygon, Edge, NewtonPolygon};
pub use vtype::{
    e_alpha_norm, entire_vector_check, orbit_growth_estimate, vector_type, EAlphaNorm, TypeCertificate, TypeMethod,
};
