//! Structural decompositions of polynomials over F_q: square-free parts,
//! radicals, counts of irreducible factors, full factorization, and the
//! Mason-Stothers degree inequality.
//!
//! Everything respects characteristic p: the square-free decomposition
//! recurses through p-th roots when the derivative vanishes, and the
//! factor count uses distinct-degree splitting only (no equal-degree
//! randomness is needed just to count). Full factorization adds seeded
//! Cantor-Zassenhaus equal-degree splitting on top.

use rand::Rng;

use super::fq::FqConfig;
use super::poly::FqPoly;
use super::FfError;

/// f = lead * prod of part^multiplicity with monic pairwise-coprime
/// square-free parts and strictly increasing multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub lead: u64,
    pub parts: Vec<(FqPoly, u32)>,
}

impl SquareFreeDecomposition {
    /// Multiplies the decomposition back together.
    pub fn value(&self, cfg: &FqConfig) -> FqPoly {
        let mut acc = FqPoly::constant(self.lead);
        for (part, mult) in &self.parts {
            acc = acc.mul(&part.pow(*mult, cfg), cfg);
        }
        acc
    }
}

/// The p-th root of f when f is a p-th power (all exponents divisible by p
/// and coefficients admitting inverse Frobenius), else None.
pub fn poly_pth_root(f: &FqPoly, cfg: &FqConfig) -> Option<FqPoly> {
    if f.is_zero() {
        return Some(FqPoly::zero());
    }
    let p = cfg.p() as usize;
    let d = f.degree().unwrap();
    if d % p != 0 {
        return None;
    }
    let mut out = Vec::with_capacity(d / p + 1);
    for i in 0..=d {
        let c = f.coeff(i);
        if i % p == 0 {
            out.push(cfg.pth_root(c));
        } else if c != 0 {
            return None;
        }
    }
    Some(FqPoly::from_coeffs(out))
}

/// Characteristic-correct square-free decomposition.
pub fn square_free_decomposition(
    f: &FqPoly,
    cfg: &FqConfig,
) -> Result<SquareFreeDecomposition, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let (monic, lead) = f.make_monic(cfg);
    let mut parts = sfd_monic(&monic, cfg);
    parts.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(SquareFreeDecomposition { lead, parts })
}

fn sfd_monic(f: &FqPoly, cfg: &FqConfig) -> Vec<(FqPoly, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let p = cfg.p() as u32;
    let deriv = f.derivative(cfg);
    if deriv.is_zero() {
        // f is a p-th power
        let root = poly_pth_root(f, cfg).expect("zero derivative implies p-th power");
        return sfd_monic(&root, cfg)
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd_monic(&deriv, cfg);
    let mut w = f.exact_div(&c, cfg);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd_monic(&c, cfg);
        let z = w.exact_div(&y, cfg);
        if !z.is_one() {
            out.push((z, i));
        }
        c = c.exact_div(&y, cfg);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // leftover multiplicities divisible by p
        let root = poly_pth_root(&c, cfg).expect("leftover is a p-th power");
        out.extend(
            sfd_monic(&root, cfg)
                .into_iter()
                .map(|(g, m)| (g, m * p)),
        );
    }
    out
}

/// True iff f has no repeated irreducible factor. Errors on f = 0.
pub fn is_square_free_poly(f: &FqPoly, cfg: &FqConfig) -> Result<bool, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(true);
    }
    Ok(f.gcd_monic(&f.derivative(cfg), cfg).is_one())
}

/// Writes f = g^2 h with g monic, g and h square-free. Errors on zero input
/// or when some prime cube divides f.
pub fn cube_free_decompose_poly(
    f: &FqPoly,
    cfg: &FqConfig,
) -> Result<(FqPoly, FqPoly), FfError> {
    let sfd = square_free_decomposition(f, cfg)?;
    let mut g = FqPoly::one();
    for (part, mult) in &sfd.parts {
        match mult {
            1 => {}
            2 => g = g.mul(part, cfg),
            _ => {
                return Err(FfError::NotCubeFree {
                    prime: super::text::format_poly(part, cfg),
                })
            }
        }
    }
    let h = f.exact_div(&g.mul(&g, cfg), cfg);
    debug_assert!(is_square_free_poly(&h, cfg)?);
    Ok((g, h))
}

/// Degree of the radical (product of distinct monic irreducible factors).
pub fn radical_degree(f: &FqPoly, cfg: &FqConfig) -> Result<usize, FfError> {
    Ok(square_free_decomposition(f, cfg)?
        .parts
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(0))
        .sum())
}

/// The radical itself, monic.
pub fn radical(f: &FqPoly, cfg: &FqConfig) -> Result<FqPoly, FfError> {
    let mut acc = FqPoly::one();
    for (g, _) in square_free_decomposition(f, cfg)?.parts {
        acc = acc.mul(&g, cfg);
    }
    Ok(acc)
}

/// Number of irreducible factors of a monic square-free f, counted by the
/// distinct-degree Frobenius splitting alone (no equal-degree randomness).
fn count_factors_square_free(f: &FqPoly, cfg: &FqConfig) -> u32 {
    distinct_degree_split(f, cfg)
        .expect("input nonzero")
        .iter()
        .map(|(d, product)| (product.degree().unwrap() / d) as u32)
        .sum()
}

/// omega(f): the number of distinct monic irreducible factors of f != 0.
pub fn omega_poly(f: &FqPoly, cfg: &FqConfig) -> Result<u32, FfError> {
    Ok(square_free_decomposition(f, cfg)?
        .parts
        .iter()
        .map(|(g, _)| count_factors_square_free(g, cfg))
        .sum())
}

/// Outcome of the Mason-Stothers inequality for A + B = C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasonStothersReport {
    pub max_degree: usize,
    pub radical_degree: usize,
    /// max deg <= deg rad(ABC) - 1
    pub holds: bool,
}

/// Checks the Mason-Stothers inequality for the sum A + B = C with C
/// derived from the inputs. Preconditions: A, B, C nonzero, pairwise
/// coprime, not all derivatives zero.
pub fn mason_stothers_check(
    a: &FqPoly,
    b: &FqPoly,
    cfg: &FqConfig,
) -> Result<MasonStothersReport, FfError> {
    let c = a.add(b, cfg);
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(FfError::MasonStothersPrecondition(
            "A, B and A + B must all be nonzero".into(),
        ));
    }
    for (x, y) in [(a, b), (a, &c), (b, &c)] {
        if !x.gcd_monic(y, cfg).is_one() {
            return Err(FfError::MasonStothersPrecondition(
                "A, B and A + B must be pairwise coprime".into(),
            ));
        }
    }
    if a.derivative(cfg).is_zero() && b.derivative(cfg).is_zero() && c.derivative(cfg).is_zero() {
        return Err(FfError::MasonStothersPrecondition(
            "not all of A, B, A + B may have zero derivative".into(),
        ));
    }
    let product = a.mul(b, cfg).mul(&c, cfg);
    let rad = radical_degree(&product, cfg)?;
    let max_degree = a
        .degree()
        .unwrap()
        .max(b.degree().unwrap())
        .max(c.degree().unwrap());
    Ok(MasonStothersReport {
        max_degree,
        radical_degree: rad,
        holds: rad >= 1 && max_degree <= rad - 1,
    })
}

/// Full factorization f = lead * prod P_i^{e_i} into monic irreducibles,
/// sorted by (degree, coefficients). Equal-degree splitting is randomized;
/// pass a seeded generator for reproducible internal behavior (the returned
/// factorization itself is unique regardless).
pub fn factor_poly(
    f: &FqPoly,
    cfg: &FqConfig,
    rng: &mut impl Rng,
) -> Result<(u64, Vec<(FqPoly, u32)>), FfError> {
    let sfd = square_free_decomposition(f, cfg)?;
    let mut out: Vec<(FqPoly, u32)> = Vec::new();
    for (part, mult) in &sfd.parts {
        for (irr_deg, product) in distinct_degree_split(part, cfg)? {
            let mut pieces = Vec::new();
            equal_degree_split(&product, irr_deg, cfg, rng, &mut pieces)?;
            for piece in pieces {
                out.push((piece, *mult));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok((sfd.lead, out))
}

/// Splits a monic square-free f into (d, product of irreducible factors of
/// degree d) pairs.
fn distinct_degree_split(
    f: &FqPoly,
    cfg: &FqConfig,
) -> Result<Vec<(usize, FqPoly)>, FfError> {
    let mut out = Vec::new();
    let mut s = f.clone();
    if s.is_constant() {
        return Ok(out);
    }
    let mut r = FqPoly::t().divrem(&s, cfg)?.1;
    let mut d = 0usize;
    loop {
        d += 1;
        if 2 * d > s.degree().unwrap_or(0) {
            break;
        }
        r = r.pow_mod(cfg.q() as u128, &s, cfg)?;
        let split = s.gcd_monic(&r.sub(&FqPoly::t(), cfg), cfg);
        if !split.is_one() {
            out.push((d, split.clone()));
            s = s.exact_div(&split, cfg);
            if s.is_constant() {
                break;
            }
            r = r.divrem(&s, cfg)?.1;
        }
    }
    if !s.is_constant() {
        out.push((s.degree().unwrap(), s));
    }
    Ok(out)
}

fn random_poly_below(deg: usize, cfg: &FqConfig, rng: &mut impl Rng) -> FqPoly {
    let coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..cfg.q())).collect();
    FqPoly::from_coeffs(coeffs)
}

/// Cantor-Zassenhaus equal-degree splitting: f monic square-free, every
/// irreducible factor of degree d.
fn equal_degree_split(
    f: &FqPoly,
    d: usize,
    cfg: &FqConfig,
    rng: &mut impl Rng,
    out: &mut Vec<FqPoly>,
) -> Result<(), FfError> {
    let deg_f = f.degree().unwrap();
    if deg_f == d {
        out.push(f.clone());
        return Ok(());
    }
    let q = cfg.q() as u128;
    loop {
        let r = random_poly_below(deg_f, cfg, rng);
        if r.is_constant() {
            continue;
        }
        let candidate = if cfg.p() == 2 {
            // additive trace to F_2: sum of r^(2^i) over the F_2-dimension
            // of the degree-d residue fields
            let dim = (cfg.e() as usize) * d;
            let mut x = r.divrem(f, cfg)?.1;
            let mut acc = x.clone();
            for _ in 1..dim {
                x = x.mul(&x, cfg).divrem(f, cfg)?.1;
                acc = acc.add(&x, cfg);
            }
            acc
        } else {
            let qd = q
                .checked_pow(d as u32)
                .ok_or(FfError::ExponentTooLarge { degree: d })?;
            let s = r.pow_mod((qd - 1) / 2, f, cfg)?;
            s.sub(&FqPoly::one(), cfg)
        };
        let g = f.gcd_monic(&candidate, cfg);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < deg_f {
            equal_degree_split(&g, d, cfg, rng, out)?;
            equal_degree_split(&f.exact_div(&g, cfg), d, cfg, rng, out)?;
            return Ok(());
        }
    }
}

/// The polynomial cube root of f, if f is a perfect cube. Deterministic:
/// leading-coefficient cube roots are tried in ascending order and the
/// remaining coefficients are forced top-down. Requires p != 3 (cube roots
/// in characteristic 3 are the Frobenius, handled by p-th roots instead).
pub fn cube_root_poly(f: &FqPoly, cfg: &FqConfig) -> Option<FqPoly> {
    assert!(cfg.p() != 3, "cube_root_poly requires characteristic != 3");
    if f.is_zero() {
        return Some(FqPoly::zero());
    }
    let deg = f.degree().unwrap();
    if deg % 3 != 0 {
        return None;
    }
    let d = deg / 3;
    'lead: for lambda in cfg.cube_roots(f.leading_coeff()) {
        // 3 lambda^2 is the coefficient that multiplies each newly
        // determined coefficient of the root
        let scale = cfg.mul(cfg.three(), cfg.mul(lambda, lambda));
        let scale_inv = cfg.inv(scale).expect("p != 3 and lambda != 0");
        let mut root = FqPoly::monomial(lambda, d);
        let mut lowest_known = d;
        for _ in 0..=d {
            let r = f.sub(&root.cube(cfg), cfg);
            if r.is_zero() {
                return Some(root);
            }
            let rd = r.degree().unwrap();
            if rd < 2 * d {
                continue 'lead;
            }
            let i = rd - 2 * d;
            if i >= lowest_known {
                continue 'lead;
            }
            let c = cfg.mul(r.coeff(rd), scale_inv);
            let mut coeffs = root.coeffs().to_vec();
            coeffs[i] = c;
            root = FqPoly::from_coeffs(coeffs);
            lowest_known = i;
        }
        let r = f.sub(&root.cube(cfg), cfg);
        if r.is_zero() {
            return Some(root);
        }
    }
    None
}
