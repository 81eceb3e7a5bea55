//! Deciding monogenicity over Z: the question reduces to whether the Thue
//! equation k X^3 - m Y^3 = c has an integer solution, with c = 1 away from
//! the ramified mod-9 classes and c = 9 on them.
//!
//! The decision procedure is three-valued. A local obstruction (a modulus
//! with no residue solutions) certifies a definitive NO; a witness found by
//! bounded search certifies a definitive YES after independent verification
//! of the generator; otherwise the verdict is UNDETERMINED at the searched
//! height, never a guess.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubic_field_z::{self, CubicFieldError};
use crate::int_arith::{self, CubeFreeInt, IntArithError, Mod9Class};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThueError {
    #[error(transparent)]
    Arith(#[from] IntArithError),
    #[error(transparent)]
    Field(#[from] CubicFieldError),
    #[error("invalid search configuration: {0}")]
    BadConfig(String),
    /// A verified witness failed generator verification; indicates an
    /// internal inconsistency, not a property of the input.
    #[error("internal: witness ({x}, {y}) for k = {k}, m = {m} failed generator verification")]
    WitnessRejected { k: u64, m: u64, x: i64, y: i64 },
}

/// How the search height is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum HeightPolicy {
    /// Scan |X| up to exactly this bound.
    Fixed(u64),
    /// Height ceil(C * m^(2/3 + delta)) motivated by the conditional size
    /// bound on solutions; C = 4 with a small delta is the default.
    AbcHeuristic { delta: f64 },
}

pub const ABC_HEIGHT_SCALE: f64 = 4.0;
pub const DEFAULT_ABC_DELTA: f64 = 0.05;
pub const DEFAULT_OBSTRUCTION_PRIME_BOUND: u64 = 1_000_000;

/// Configuration for the decision procedure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub height: HeightPolicy,
    /// Primes dividing m above this bound are not tested for obstructions.
    pub obstruction_prime_bound: u64,
    /// Composite moduli checked by full residue enumeration; 9 catches the
    /// classes the prime test cannot see.
    pub extra_moduli: Vec<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            height: HeightPolicy::AbcHeuristic {
                delta: DEFAULT_ABC_DELTA,
            },
            obstruction_prime_bound: DEFAULT_OBSTRUCTION_PRIME_BOUND,
            extra_moduli: vec![9],
        }
    }
}

impl SearchConfig {
    pub fn with_fixed_height(h: u64) -> Self {
        SearchConfig {
            height: HeightPolicy::Fixed(h),
            ..SearchConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), ThueError> {
        if let HeightPolicy::AbcHeuristic { delta } = self.height {
            if !(delta > 0.0 && delta < 0.25) {
                return Err(ThueError::BadConfig(format!(
                    "delta must lie in (0, 1/4), got {delta}"
                )));
            }
        }
        for &m in &self.extra_moduli {
            if m < 2 || m > 10_000 {
                return Err(ThueError::BadConfig(format!(
                    "extra modulus {m} out of supported range [2, 10000]"
                )));
            }
        }
        Ok(())
    }

    /// The concrete scan height for a given m.
    pub fn height_for(&self, m: u64) -> u64 {
        match self.height {
            HeightPolicy::Fixed(h) => h,
            HeightPolicy::AbcHeuristic { delta } => {
                let h = ABC_HEIGHT_SCALE * (m as f64).powf(2.0 / 3.0 + delta);
                h.ceil() as u64
            }
        }
    }
}

/// Three-valued outcome of the decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictZ {
    /// theta built from (x, y) generates the ring of integers.
    Monogenic { x: i64, y: i64 },
    /// No solutions modulo `modulus`, so no global solutions.
    NotMonogenic { modulus: u64 },
    /// Neither a witness below the height nor an obstruction was found.
    Undetermined { height: u64 },
}

/// Searches for a modulus ruling out a X^3 - m Y^3 = b.
///
/// Primes p | m with p not dividing 3ab give an obstruction exactly when
/// b/a is a non-cube mod p. The extra composite moduli are checked by
/// exhaustive residue enumeration.
pub fn local_obstruction(a: u64, m: u64, b: u64, config: &SearchConfig) -> Option<u64> {
    if let Ok(f) = int_arith::factor(m) {
        for p in f.primes() {
            if p > config.obstruction_prime_bound {
                continue;
            }
            if p == 3 || a % p == 0 || b % p == 0 {
                continue;
            }
            let inv_a = int_arith::inv_mod(a % p, p).expect("p does not divide a");
            let target = (b % p) as u128 * inv_a as u128 % p as u128;
            match int_arith::is_cube_mod_p(target as i64, p) {
                Ok(false) => return Some(p),
                _ => continue,
            }
        }
    }
    for &modulus in &config.extra_moduli {
        if !solvable_mod(a, m, b, modulus) {
            return Some(modulus);
        }
    }
    None
}

/// Exhaustively checks whether a x^3 - m y^3 = b has a solution mod `q`.
fn solvable_mod(a: u64, m: u64, b: u64, q: u64) -> bool {
    let cubes: Vec<u64> = (0..q).map(|x| x * x % q * x % q).collect();
    let target = b % q;
    for &x3 in &cubes {
        let lhs = a % q * x3 % q;
        for &y3 in &cubes {
            let rhs = m % q * y3 % q;
            if (lhs + q - rhs) % q == target {
                return true;
            }
        }
    }
    false
}

/// Sign-aware integer cube root: the y with y^3 = w, if one exists.
fn exact_cube_root(w: i128) -> Option<i128> {
    let neg = w < 0;
    let mag = w.unsigned_abs();
    let mut y = (mag as f64).cbrt().round() as i128;
    if y < 0 {
        y = 0;
    }
    // correct any floating-point drift
    while y > 0 && (y as u128).pow(3) > mag {
        y -= 1;
    }
    while ((y + 1) as u128).pow(3) <= mag {
        y += 1;
    }
    if (y as u128).pow(3) == mag {
        Some(if neg { -y } else { y })
    } else {
        None
    }
}

/// Scans X = 0, 1, -1, 2, -2, ... up to |X| = height, solving exactly for Y
/// whenever m divides a X^3 - b. Returns the first solution in scan order.
pub fn bounded_search(a: u64, m: u64, b: u64, height: u64) -> Option<(i64, i64)> {
    let a = a as i128;
    let m = m as i128;
    let b = b as i128;
    let try_x = |x: i64| -> Option<(i64, i64)> {
        let t = a * (x as i128).pow(3) - b;
        if t.rem_euclid(m) != 0 {
            return None;
        }
        let y = exact_cube_root(t / m)?;
        Some((x, y as i64))
    };
    if let Some(hit) = try_x(0) {
        return Some(hit);
    }
    for x in 1..=height.min(i64::MAX as u64) as i64 {
        if let Some(hit) = try_x(x) {
            return Some(hit);
        }
        if let Some(hit) = try_x(-x) {
            return Some(hit);
        }
    }
    None
}

/// Decides monogenicity of Q(cbrt(k^2 m)) for square-free coprime k, m.
pub fn decide_monogenic(k: u64, m: u64, config: &SearchConfig) -> Result<VerdictZ, ThueError> {
    config.validate()?;
    let field = CubeFreeInt::from_parts(k, m)?;
    let c: u64 = match field.mod9() {
        Mod9Class::Neither => 1,
        _ => 9,
    };
    if let Some(modulus) = local_obstruction(k, m, c, config) {
        return Ok(VerdictZ::NotMonogenic { modulus });
    }
    let height = config.height_for(m);
    match bounded_search(k, m, c, height) {
        Some((x, y)) => {
            let gen = cubic_field_z::theta_from_solution(&field, x, y)?;
            if !cubic_field_z::verify_generator(&field, &gen)? {
                return Err(ThueError::WitnessRejected { k, m, x, y });
            }
            Ok(VerdictZ::Monogenic { x, y })
        }
        None => Ok(VerdictZ::Undetermined { height }),
    }
}
