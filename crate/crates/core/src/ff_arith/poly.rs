//! Dense univariate polynomials over F_q with coefficient codes from
//! [`FqConfig`]. The zero polynomial is the empty coefficient vector, and
//! every constructor and operation maintains the no-trailing-zeros
//! invariant, so structural equality is mathematical equality.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use super::fq::FqConfig;
use super::FfError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FqPoly {
    /// Coefficient codes, low to high; empty means zero.
    coeffs: Vec<u64>,
}

impl FqPoly {
    /// Wraps raw coefficients, trimming trailing zeros. Codes must already
    /// be valid for the intended field.
    pub fn from_coeffs(coeffs: Vec<u64>) -> FqPoly {
        let mut p = FqPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> FqPoly {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> FqPoly {
        FqPoly { coeffs: vec![1] }
    }

    pub fn constant(c: u64) -> FqPoly {
        FqPoly::from_coeffs(vec![c])
    }

    /// The monomial c * t^d.
    pub fn monomial(c: u64, d: usize) -> FqPoly {
        if c == 0 {
            return FqPoly::zero();
        }
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        FqPoly { coeffs }
    }

    /// The variable t.
    pub fn t() -> FqPoly {
        FqPoly::monomial(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; 0 for the zero polynomial.
    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_coeff(&self) -> u64 {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn add(&self, other: &FqPoly, cfg: &FqConfig) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(cfg.add(self.coeff(i), other.coeff(i)));
        }
        FqPoly::from_coeffs(out)
    }

    pub fn neg(&self, cfg: &FqConfig) -> FqPoly {
        FqPoly {
            coeffs: self.coeffs.iter().map(|&c| cfg.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &FqPoly, cfg: &FqConfig) -> FqPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(cfg.sub(self.coeff(i), other.coeff(i)));
        }
        FqPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &FqPoly, cfg: &FqConfig) -> FqPoly {
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = cfg.add(out[i + j], cfg.mul(a, b));
            }
        }
        FqPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, s: u64, cfg: &FqConfig) -> FqPoly {
        FqPoly::from_coeffs(self.coeffs.iter().map(|&c| cfg.mul(c, s)).collect())
    }

    /// Multiplication by t^k.
    pub fn shift_up(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return FqPoly::zero();
        }
        let mut coeffs = vec![0u64; k];
        coeffs.extend_from_slice(&self.coeffs);
        FqPoly { coeffs }
    }

    pub fn pow(&self, n: u32, cfg: &FqConfig) -> FqPoly {
        let mut acc = FqPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, cfg);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, cfg);
            }
        }
        acc
    }

    pub fn cube(&self, cfg: &FqConfig) -> FqPoly {
        self.mul(self, cfg).mul(self, cfg)
    }

    /// Euclidean division: self = q * other + r with deg r < deg other.
    pub fn divrem(&self, other: &FqPoly, cfg: &FqConfig) -> Result<(FqPoly, FqPoly), FfError> {
        if other.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let d = other.degree().unwrap();
        if self.coeffs.len() < other.coeffs.len() {
            return Ok((FqPoly::zero(), self.clone()));
        }
        let inv_lead = cfg.inv(other.leading_coeff()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = cfg.mul(c, inv_lead);
            quo[i - d] = f;
            for (j, &oj) in other.coeffs.iter().enumerate() {
                rem[i - d + j] = cfg.sub(rem[i - d + j], cfg.mul(f, oj));
            }
        }
        Ok((FqPoly::from_coeffs(quo), FqPoly::from_coeffs(rem)))
    }

    /// Division known to be exact; any remainder is an internal error.
    pub(crate) fn exact_div(&self, other: &FqPoly, cfg: &FqConfig) -> FqPoly {
        let (q, r) = self.divrem(other, cfg).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "exact_div had remainder");
        q
    }

    /// Monic gcd by Euclid's algorithm; gcd(0, 0) = 0.
    pub fn gcd_monic(&self, other: &FqPoly, cfg: &FqConfig) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b, cfg).expect("b nonzero");
            a = b;
            b = r;
        }
        a.make_monic(cfg).0
    }

    /// Scales to leading coefficient 1; returns (monic, former lead).
    pub fn make_monic(&self, cfg: &FqConfig) -> (FqPoly, u64) {
        let lead = self.leading_coeff();
        if lead == 0 || lead == 1 {
            return (self.clone(), lead);
        }
        let inv = cfg.inv(lead).expect("nonzero");
        (self.mul_scalar(inv, cfg), lead)
    }

    /// Formal derivative, with char-p collapses included.
    pub fn derivative(&self, cfg: &FqConfig) -> FqPoly {
        if self.coeffs.len() <= 1 {
            return FqPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(cfg.mul(c, cfg.from_int(i as u64)));
        }
        FqPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: u64, cfg: &FqConfig) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = cfg.add(cfg.mul(acc, x), c);
        }
        acc
    }

    /// self^exp mod modulus, by square and multiply.
    pub fn pow_mod(&self, exp: u128, modulus: &FqPoly, cfg: &FqConfig) -> Result<FqPoly, FfError> {
        if modulus.is_constant() {
            return Err(FfError::DivisionByZero);
        }
        let mut base = self.divrem(modulus, cfg)?.1;
        let mut acc = FqPoly::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, cfg).divrem(modulus, cfg)?.1;
            }
            base = base.mul(&base, cfg).divrem(modulus, cfg)?.1;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Inverse of self modulo `modulus` (extended Euclid); None when the
    /// two are not coprime.
    pub fn inv_mod(&self, modulus: &FqPoly, cfg: &FqConfig) -> Option<FqPoly> {
        if modulus.is_constant() {
            return None;
        }
        let mut r0 = modulus.clone();
        let mut r1 = self.divrem(modulus, cfg).ok()?.1;
        let mut s0 = FqPoly::zero();
        let mut s1 = FqPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, cfg).expect("r1 nonzero");
            let s = s0.sub(&q.mul(&s1, cfg), cfg);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if !r0.is_constant() || r0.is_zero() {
            return None;
        }
        let scale = cfg.inv(r0.constant_coeff()).expect("nonzero constant");
        Some(s0.mul_scalar(scale, cfg).divrem(modulus, cfg).ok()?.1)
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqPoly {
    /// Degree first, then coefficients from the top down: a canonical total
    /// order used wherever results must be emitted deterministically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Number of monic polynomials of exact degree d.
pub fn monic_count(q: u64, d: usize) -> u128 {
    (q as u128).pow(d as u32)
}

/// Number of polynomials of exact degree d (any nonzero lead).
pub fn all_count(q: u64, d: usize) -> u128 {
    (q as u128 - 1) * (q as u128).pow(d as u32)
}

fn decode_digits(q: u64, mut idx: u128, len: usize) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(len + 1);
    for _ in 0..len {
        coeffs.push((idx % q as u128) as u64);
        idx /= q as u128;
    }
    coeffs
}

/// The idx-th monic polynomial of exact degree d (odometer order on the
/// lower coefficients, constant coefficient fastest).
pub fn monic_by_index(q: u64, d: usize, idx: u128) -> FqPoly {
    debug_assert!(idx < monic_count(q, d));
    let mut coeffs = decode_digits(q, idx, d);
    coeffs.push(1);
    FqPoly { coeffs }
}

/// The idx-th polynomial of exact degree d over all nonzero leads.
pub fn poly_by_index(q: u64, d: usize, idx: u128) -> FqPoly {
    debug_assert!(idx < all_count(q, d));
    let base = monic_count(q, d);
    let lead = 1 + (idx / base) as u64;
    let mut coeffs = decode_digits(q, idx % base, d);
    coeffs.push(lead);
    FqPoly { coeffs }
}

/// All monic polynomials of exact degree d, lazily, in index order.
pub fn monic_polys_of_degree(cfg: &FqConfig, d: usize) -> impl Iterator<Item = FqPoly> {
    let q = cfg.q();
    (0..monic_count(q, d)).map(move |i| monic_by_index(q, d, i))
}

/// All polynomials of exact degree d (every nonzero lead), lazily.
pub fn polys_of_degree(cfg: &FqConfig, d: usize) -> impl Iterator<Item = FqPoly> {
    let q = cfg.q();
    (0..all_count(q, d)).map(move |i| poly_by_index(q, d, i))
}

/// All nonzero polynomials of degree <= d, ascending degree.
pub fn polys_of_degree_at_most(cfg: &FqConfig, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    (0..=d).flat_map(move |dd| polys_of_degree(cfg, dd))
}
