//! Finite-field arithmetic: the coefficient field F_q, dense polynomials
//! over it, structural decompositions, and a text format.

mod fq;
mod poly;
mod structure;
mod text;

pub use fq::{FqConfig, CUBE_ROOT_BRUTE_LIMIT, MAX_E, MAX_Q};
pub use poly::{
    all_count, monic_by_index, monic_count, monic_polys_of_degree, poly_by_index,
    polys_of_degree, polys_of_degree_at_most, FqPoly,
};
pub use structure::{
    cube_free_decompose_poly, cube_root_poly, factor_poly, is_square_free_poly,
    mason_stothers_check, omega_poly, poly_pth_root, radical, radical_degree,
    square_free_decomposition, MasonStothersReport, SquareFreeDecomposition,
};
pub use text::{format_poly, format_poly_list, parse_poly, MAX_PARSE_EXPONENT};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FfError {
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("extension degree {e} out of range [1, 16]")]
    BadExtensionDegree { e: u32 },
    #[error("field p^e with p = {p}, e = {e} exceeds the size cap")]
    FieldTooLarge { p: u64, e: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization structure")]
    ZeroPolynomial,
    #[error("not cube-free: {prime}^3 divides the input")]
    NotCubeFree { prime: String },
    #[error("Mason-Stothers precondition violated: {0}")]
    MasonStothersPrecondition(String),
    #[error("required exponent q^{degree} does not fit in 128 bits")]
    ExponentTooLarge { degree: usize },
    #[error("parse error at byte {position}: {message}")]
    ParseError { position: usize, message: String },
    #[error("{code} is not an element code of F_{q}")]
    BadCode { code: u64, q: u64 },
}
