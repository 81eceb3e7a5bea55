//! Monogenicity of pure cubic fields, in both classical guises.
//!
//! A number field Q(cbrt(n)) for cube-free n = k^2 m is monogenic when its
//! ring of integers is Z[theta] for a single theta; that question reduces
//! to an explicit Thue equation k X^3 - m Y^3 = c. The function-field
//! analogue F_q(t, cbrt(g^2 h)) reduces the same way to g X^3 - h Y^3
//! landing in the constants, where Mason-Stothers turns the search into a
//! finite, complete one. This crate implements both decision procedures,
//! censuses over ranges, the explicit monogenic families beneath the
//! counting bounds, and the sieve/omega machinery around them.

pub mod census_ff;
pub mod census_z;
pub mod cli;
pub mod cubic_ff;
pub mod cubic_field_z;
pub mod ff_arith;
pub mod int_arith;
pub mod thue_z;

pub use census_ff::{FFCensusReport, FFWitness};
pub use census_z::{CensusClass, CensusReportZ, SievePrimeReport};
pub use cubic_ff::{DegreeBounds, FFVerdict, IntegralBasisFF, PureCubicFF};
pub use cubic_field_z::{BasisBranch, FieldElementZ, GeneratorZ, IntegralBasisZ};
pub use ff_arith::{FqConfig, FqPoly};
pub use int_arith::{CubeFreeInt, Mod9Class};
pub use thue_z::{HeightPolicy, SearchConfig, VerdictZ};
