//! Exact integer arithmetic substrate: factorization, square-free and
//! cube-free structure, cubic residue tests, and prime sieving.
//!
//! Everything here is deterministic. Factoring uses trial division backed by
//! a deterministic 64-bit Miller-Rabin test and Brent's variant of Pollard
//! rho with a fixed parameter schedule, so repeated runs agree bit for bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default ceiling for [`factor`]: the full 64-bit range.
pub const DEFAULT_FACTOR_CEILING: u64 = u64::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntArithError {
    /// Input exceeds the configured factorization ceiling. Callers that only
    /// need a square-free bit should fall back to a probabilistic test.
    #[error("{n} exceeds the factorization ceiling {ceiling}")]
    CeilingExceeded { n: u64, ceiling: u64 },
    /// A cube of a prime divides the input, so no k^2*m decomposition exists.
    #[error("{n} is not cube-free: {prime}^3 divides it")]
    NotCubeFree { n: u64, prime: u64 },
    /// The cubic residue test was called with p = 3 or p dividing x.
    #[error("bad modulus for cubic residue test: p = {p}, x = {x}")]
    BadModulus { x: i64, p: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Prime factorization `n = prod p_i^{e_i}` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factorization back together.
    pub fn value(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }

    pub fn is_square_free(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Mobius-style sign when square-free: (-1)^(number of primes).
    pub fn mobius(&self) -> i64 {
        if !self.is_square_free() {
            0
        } else if self.pairs.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Residue class of n modulo 9, as far as the integral-basis branch cares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mod9Class {
    /// n = 1 (mod 9)
    PlusOne,
    /// n = 8 (mod 9)
    MinusOne,
    /// any other residue
    Neither,
}

impl Mod9Class {
    pub fn of(n: u64) -> Self {
        match n % 9 {
            1 => Mod9Class::PlusOne,
            8 => Mod9Class::MinusOne,
            _ => Mod9Class::Neither,
        }
    }
}

/// A cube-free integer n written as n = k^2 * m with k, m square-free.
///
/// The decomposition is unique; the mod-9 class is cached because every
/// downstream basis and search branch keys on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeFreeInt {
    n: u64,
    k: u64,
    m: u64,
    mod9: Mod9Class,
}

impl CubeFreeInt {
    /// Decomposes n >= 2 into k^2 * m.
    pub fn from_n(n: u64) -> Result<Self, IntArithError> {
        if n < 2 {
            return Err(IntArithError::InvalidInput(format!(
                "cube-free decomposition needs n >= 2, got {n}"
            )));
        }
        let f = factor(n)?;
        let mut k = 1u64;
        let mut m = 1u64;
        for &(p, e) in f.pairs() {
            match e {
                1 => m *= p,
                2 => k *= p,
                _ => return Err(IntArithError::NotCubeFree { n, prime: p }),
            }
        }
        Ok(CubeFreeInt {
            n,
            k,
            m,
            mod9: Mod9Class::of(n),
        })
    }

    /// Builds the field descriptor from square-free coprime parts.
    pub fn from_parts(k: u64, m: u64) -> Result<Self, IntArithError> {
        if k == 0 || m == 0 {
            return Err(IntArithError::InvalidInput(
                "k and m must be positive".into(),
            ));
        }
        if gcd(k, m) != 1 {
            return Err(IntArithError::InvalidInput(format!(
                "k = {k} and m = {m} are not coprime"
            )));
        }
        if !is_square_free(k)? {
            return Err(IntArithError::InvalidInput(format!(
                "k = {k} is not square-free"
            )));
        }
        if !is_square_free(m)? {
            return Err(IntArithError::InvalidInput(format!(
                "m = {m} is not square-free"
            )));
        }
        let n = k
            .checked_mul(k)
            .and_then(|k2| k2.checked_mul(m))
            .ok_or_else(|| IntArithError::InvalidInput("k^2 * m overflows u64".into()))?;
        if n < 2 {
            return Err(IntArithError::InvalidInput(
                "k^2 * m must be at least 2".into(),
            ));
        }
        Ok(CubeFreeInt {
            n,
            k,
            m,
            mod9: Mod9Class::of(n),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn mod9(&self) -> Mod9Class {
        self.mod9
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of a mod m for gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin, valid for the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set is known to be exact for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle variant of Pollard rho with a fixed parameter schedule.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 != 0);
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    unreachable!("pollard rho exhausted parameter schedule for {n}")
}

fn factor_into(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push((n, 1));
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Factors n with an explicit ceiling; exceeding it is an error rather than
/// a silent slow call.
pub fn factor_with_ceiling(n: u64, ceiling: u64) -> Result<Factorization, IntArithError> {
    if n == 0 {
        return Err(IntArithError::InvalidInput("cannot factor 0".into()));
    }
    if n > ceiling {
        return Err(IntArithError::CeilingExceeded { n, ceiling });
    }
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d <= 1_000_000 && d * d <= rest {
        if rest % d == 0 {
            let mut e = 0u32;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut tail: Vec<(u64, u32)> = Vec::new();
        factor_into(rest, &mut tail);
        tail.sort_unstable();
        // merge equal primes from the recursive split
        let mut merged: Vec<(u64, u32)> = Vec::new();
        for (p, e) in tail {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        pairs.extend(merged);
    }
    debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(Factorization { pairs })
}

/// Factors n below the default (full u64) ceiling.
pub fn factor(n: u64) -> Result<Factorization, IntArithError> {
    factor_with_ceiling(n, DEFAULT_FACTOR_CEILING)
}

/// The unique decomposition n = k^2 * m with both parts square-free.
pub fn cube_free_decompose(n: u64) -> Result<CubeFreeInt, IntArithError> {
    CubeFreeInt::from_n(n)
}

/// True iff no prime square divides n.
pub fn is_square_free(n: u64) -> Result<bool, IntArithError> {
    if n == 0 {
        return Err(IntArithError::InvalidInput(
            "square-free test needs n >= 1".into(),
        ));
    }
    Ok(factor(n)?.is_square_free())
}

/// Euler-criterion cubic residue test: does y^3 = x (mod p) have a solution?
///
/// For p = 2 (mod 3) the cube map is a bijection so everything is a cube;
/// for p = 1 (mod 3) the criterion is x^((p-1)/3) = 1.
pub fn is_cube_mod_p(x: i64, p: u64) -> Result<bool, IntArithError> {
    if p == 3 || !is_prime(p) {
        return Err(IntArithError::BadModulus { x, p });
    }
    let r = x.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(IntArithError::BadModulus { x, p });
    }
    if p % 3 == 2 {
        return Ok(true);
    }
    Ok(pow_mod(r, (p - 1) / 3, p) == 1)
}

/// All primes up to and including `limit`, by a bit-packed Eratosthenes sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_unit() {
        assert_eq!(factor(1).unwrap().pairs(), &[]);
    }

    #[test]
    fn factor_small() {
        assert_eq!(factor(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
    }

    #[test]
    fn factor_large_prime() {
        // oracle: the deterministic primality test
        let n = 9_999_999_967u64;
        assert!(is_prime(n));
        assert_eq!(factor(n).unwrap().pairs(), &[(n, 1)]);
    }

    #[test]
    fn factor_ceiling() {
        assert_eq!(
            factor_with_ceiling(1000, 100),
            Err(IntArithError::CeilingExceeded {
                n: 1000,
                ceiling: 100
            })
        );
    }

    #[test]
    fn factor_semiprime_past_trial_range() {
        // two primes above the 10^6 trial-division bound
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let f = factor(p * q).unwrap();
        assert_eq!(f.pairs(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn cube_free_examples() {
        let c = cube_free_decompose(12).unwrap();
        assert_eq!((c.k(), c.m(), c.mod9()), (2, 3, Mod9Class::Neither));
        let c = cube_free_decompose(10).unwrap();
        assert_eq!((c.k(), c.m(), c.mod9()), (1, 10, Mod9Class::PlusOne));
        assert_eq!(
            cube_free_decompose(8),
            Err(IntArithError::NotCubeFree { n: 8, prime: 2 })
        );
    }

    #[test]
    fn square_free_examples() {
        assert!(is_square_free(1).unwrap());
        assert!(is_square_free(15).unwrap());
        assert!(!is_square_free(18).unwrap());
    }

    #[test]
    fn cube_mod_p_examples() {
        // cubes mod 7 enumerate to {1, 6}
        assert!(!is_cube_mod_p(2, 7).unwrap());
        assert!(is_cube_mod_p(1, 7).unwrap());
        // 3^3 = 27 = 2 (mod 5); p = 2 (mod 3) forces all residues cubic
        assert!(is_cube_mod_p(2, 5).unwrap());
        assert!(matches!(
            is_cube_mod_p(6, 3),
            Err(IntArithError::BadModulus { .. })
        ));
        assert!(matches!(
            is_cube_mod_p(14, 7),
            Err(IntArithError::BadModulus { .. })
        ));
    }

    #[test]
    fn decompose_round_trip_to_1e6_sample() {
        // spot the invariant on a stride to keep the unit suite quick;
        // the full range is covered by the integration tests
        for n in (2u64..1_000_000).step_by(97) {
            match cube_free_decompose(n) {
                Ok(c) => {
                    assert_eq!(c.k() * c.k() * c.m(), n);
                    assert!(is_square_free(c.k()).unwrap());
                    assert!(is_square_free(c.m()).unwrap());
                }
                Err(IntArithError::NotCubeFree { .. }) => {}
                Err(e) => panic!("unexpected error for {n}: {e}"),
            }
        }
    }

    #[test]
    fn cube_residue_counts_match_enumeration() {
        for &p in &primes_up_to(200) {
            if p < 5 || p % 3 != 1 {
                continue;
            }
            let brute: std::collections::BTreeSet<u64> =
                (1..p).map(|y| pow_mod(y, 3, p)).collect();
            let via_test: Vec<u64> = (1..p)
                .filter(|&x| is_cube_mod_p(x as i64, p).unwrap())
                .collect();
            assert_eq!(via_test.len() as u64, (p - 1) / 3, "p = {p}");
            for x in via_test {
                assert!(brute.contains(&x), "x = {x}, p = {p}");
            }
        }
    }

    #[test]
    fn all_residues_cubic_when_p_2_mod_3() {
        for &p in &primes_up_to(10_000) {
            if p % 3 != 2 || p == 2 {
                continue;
            }
            for x in [1u64, 2, 3, p - 1, p / 2 + 1] {
                assert!(is_cube_mod_p((x % p) as i64, p).unwrap(), "x={x} p={p}");
            }
        }
    }

    #[test]
    fn primes_up_to_matches_pi() {
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(1).len(), 0);
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn inv_mod_basics() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(3, 6), None);
        for a in 1..50u64 {
            if gcd(a, 101) == 1 {
                let inv = inv_mod(a, 101).unwrap();
                assert_eq!(mul_mod(a, inv, 101), 1);
            }
        }
    }
}
