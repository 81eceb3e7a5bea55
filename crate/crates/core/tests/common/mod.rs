//! Shared oracle helpers for the integration suites: independent
//! brute-force searches and exhaustive residue checks that the main code
//! paths are measured against.

#![allow(dead_code)]

use purecubic::cubic_ff::PureCubicFF;
use purecubic::ff_arith::{self, cube_root_poly, FqPoly};

/// Exhaustively confirms that a X^3 - m Y^3 = b has no solutions modulo
/// `modulus` by scanning every residue pair.
pub fn no_solutions_modulo(a: u64, m: u64, b: u64, modulus: u64) -> bool {
    let md = modulus as i128;
    let cubes: Vec<i128> = (0..modulus)
        .map(|x| {
            let x = x as i128;
            (x * x % md) * x % md
        })
        .collect();
    for cx in &cubes {
        for cy in &cubes {
            let value = (a as i128 * cx - m as i128 * cy - b as i128).rem_euclid(md);
            if value == 0 {
                return false;
            }
        }
    }
    true
}

/// Literal double-loop search for g X^3 - h Y^3 landing in the units, over
/// every X with deg <= cap (any leading coefficient, zero included) and
/// every monic Y with deg <= cap. Monic Y loses no generality: scaling a
/// solution (X, Y) by the inverse leading coefficient of Y gives another
/// solution with monic Y.
pub fn ff_box_search(field: &PureCubicFF, cap: usize) -> Option<(FqPoly, FqPoly)> {
    let cfg = field.cfg();
    let mut xs: Vec<FqPoly> = vec![FqPoly::zero()];
    for d in 0..=cap {
        xs.extend(ff_arith::polys_of_degree(cfg, d));
    }
    let mut ys: Vec<FqPoly> = Vec::new();
    for d in 0..=cap {
        ys.extend(ff_arith::monic_polys_of_degree(cfg, d));
    }
    for x in &xs {
        for y in &ys {
            if field.solution_value(x, y).is_some() {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

/// Complete search over every monic Y with deg <= cap and every X of any
/// degree: for fixed Y and unit alpha, X exists exactly when
/// (h Y^3 + alpha)/g is a perfect cube, which cube-root extraction
/// decides directly. Covers a superset of any (deg X <= c, deg Y <= cap)
/// box.
pub fn ff_cube_extraction_search(
    field: &PureCubicFF,
    deg_y_cap: usize,
) -> Option<(FqPoly, FqPoly)> {
    let cfg = field.cfg();
    let (g, h) = (field.g(), field.h());
    for dy in 0..=deg_y_cap {
        for y in ff_arith::monic_polys_of_degree(cfg, dy) {
            let hy3 = h.mul(&y.cube(cfg), cfg);
            for alpha in cfg.units() {
                let v = hy3.add(&FqPoly::constant(alpha), cfg);
                let (quot, rem) = v.divrem(g, cfg).expect("g is nonzero");
                if !rem.is_zero() {
                    continue;
                }
                if let Some(x) = cube_root_poly(&quot, cfg) {
                    debug_assert_eq!(field.solution_value(&x, &y), Some(alpha));
                    return Some((x, y));
                }
            }
        }
    }
    None
}
