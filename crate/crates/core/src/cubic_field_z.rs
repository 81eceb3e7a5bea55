//! Exact arithmetic in the pure cubic number field Q(cbrt(n)) for cube-free
//! n = k^2 * m, together with its ring of integers and index forms.
//!
//! Elements are stored as exact rational coordinates over the power basis
//! {1, a, a^2} with a = cbrt(n). The integral basis follows the classical
//! two-case shape: it is {1, a, a^2/k} unless n = +-1 (mod 9), where a third
//! denominator 3k appears. Index-form values are computed twice, once by
//! exact 3x3 linear algebra over the rationals and once by a closed formula,
//! and the two must agree; a mismatch is reported as an internal error
//! instead of being silently trusted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::int_arith::{CubeFreeInt, IntArithError, Mod9Class};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubicFieldError {
    #[error(transparent)]
    Arith(#[from] IntArithError),
    /// The branch-selected basis candidate failed its integrality check.
    /// This should never fire; it guards against a sign slip in the branch.
    #[error("basis candidate for n = {n} is not integral")]
    InternalSignError { n: u64 },
    /// The two independent index-form evaluations disagreed.
    #[error("index form mismatch for n = {n} at (u, v) = ({u}, {v}): linear algebra {det_la}, closed form {det_closed}")]
    FormulaMismatch {
        n: u64,
        u: i64,
        v: i64,
        det_la: String,
        det_closed: String,
    },
    /// (x, y) does not solve k x^3 - m y^3 = c for the expected c.
    #[error("({x}, {y}) does not satisfy k x^3 - m y^3 = {expected} for k = {k}, m = {m}")]
    NotASolution {
        k: u64,
        m: u64,
        x: i64,
        y: i64,
        expected: i64,
    },
    /// In the ramified branches u = (x -+ k y) / 3 must be integral.
    #[error("u = ({numerator})/3 is not integral for n = {n}")]
    NonIntegralU { n: u64, numerator: i64 },
    #[error("intermediate value overflowed a 64-bit integer")]
    Overflow,
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big_u(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// An element of Q(cbrt(n)) in power-basis coordinates c0 + c1*a + c2*a^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElementZ {
    pub coords: [BigRational; 3],
}

impl FieldElementZ {
    pub fn new(coords: [BigRational; 3]) -> Self {
        FieldElementZ { coords }
    }

    pub fn zero() -> Self {
        FieldElementZ::new([BigRational::zero(), BigRational::zero(), BigRational::zero()])
    }

    pub fn one() -> Self {
        FieldElementZ::new([BigRational::one(), BigRational::zero(), BigRational::zero()])
    }

    pub fn from_integer_coords(c0: i64, c1: i64, c2: i64) -> Self {
        FieldElementZ::new([big(c0), big(c1), big(c2)])
    }

    pub fn add(&self, other: &Self) -> Self {
        FieldElementZ::new([
            &self.coords[0] + &other.coords[0],
            &self.coords[1] + &other.coords[1],
            &self.coords[2] + &other.coords[2],
        ])
    }

    pub fn sub(&self, other: &Self) -> Self {
        FieldElementZ::new([
            &self.coords[0] - &other.coords[0],
            &self.coords[1] - &other.coords[1],
            &self.coords[2] - &other.coords[2],
        ])
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        FieldElementZ::new([
            &self.coords[0] * s,
            &self.coords[1] * s,
            &self.coords[2] * s,
        ])
    }

    /// Product in the field, using a^3 = n.
    pub fn mul(&self, other: &Self, field: &CubeFreeInt) -> Self {
        let n = big_u(field.n());
        let [a0, a1, a2] = &self.coords;
        let [b0, b1, b2] = &other.coords;
        let c0 = a0 * b0 + &n * (a1 * b2 + a2 * b1);
        let c1 = a0 * b1 + a1 * b0 + &n * (a2 * b2);
        let c2 = a0 * b2 + a1 * b1 + a2 * b0;
        FieldElementZ::new([c0, c1, c2])
    }

    /// Least common multiple of the three coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        let mut acc = BigInt::one();
        for c in &self.coords {
            let d = c.denom().abs();
            let g = num_integer::Integer::gcd(&acc, &d);
            acc = acc / g * d;
        }
        acc
    }

    pub fn is_integral_coords(&self) -> bool {
        self.coords.iter().all(|c| c.denom().abs() == BigInt::one())
    }
}

/// Monic cubic T^3 + a2 T^2 + a1 T + a0 with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPoly {
    pub a2: BigRational,
    pub a1: BigRational,
    pub a0: BigRational,
}

impl CubicPoly {
    /// True iff all coefficients are rational integers, i.e. the element is
    /// an algebraic integer.
    pub fn is_integral(&self) -> bool {
        [&self.a2, &self.a1, &self.a0]
            .iter()
            .all(|c| c.denom().abs() == BigInt::one())
    }
}

/// Characteristic polynomial of multiplication by `x` on the power basis.
pub fn char_poly(field: &CubeFreeInt, x: &FieldElementZ) -> CubicPoly {
    let n = big_u(field.n());
    let [c0, c1, c2] = &x.coords;
    // columns of the multiplication matrix: x*1, x*a, x*a^2
    let m = [
        [c0.clone(), &n * c2, &n * c1],
        [c1.clone(), c0.clone(), &n * c2],
        [c2.clone(), c1.clone(), c0.clone()],
    ];
    let tr = &m[0][0] + &m[1][1] + &m[2][2];
    let minors = (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0])
        + (&m[0][0] * &m[2][2] - &m[0][2] * &m[2][0])
        + (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]);
    let det = det3(&m);
    CubicPoly {
        a2: -tr,
        a1: minors,
        a0: -det,
    }
}

fn det3(m: &[[BigRational; 3]; 3]) -> BigRational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Which of the three classical integral-basis shapes applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisBranch {
    /// n != +-1 (mod 9): basis {1, a, a^2/k}.
    Generic,
    /// n = +1 (mod 9): basis {1, a, (k^2 + k^2 a + a^2)/(3k)}.
    PlusOne,
    /// n = -1 (mod 9): basis {1, a, (k^2 - k^2 a + a^2)/(3k)}.
    MinusOne,
}

impl BasisBranch {
    pub fn of(field: &CubeFreeInt) -> Self {
        match field.mod9() {
            Mod9Class::PlusOne => BasisBranch::PlusOne,
            Mod9Class::MinusOne => BasisBranch::MinusOne,
            Mod9Class::Neither => BasisBranch::Generic,
        }
    }
}

/// An integral basis {1, a, e2} for the ring of integers of Q(cbrt(n)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralBasisZ {
    pub branch: BasisBranch,
    pub elements: [FieldElementZ; 3],
}

impl IntegralBasisZ {
    /// Renders the basis in the human form used by the CLI, writing `a` for
    /// the cube root, e.g. `1, a, (1+a+a^2)/3`.
    pub fn display(&self, field: &CubeFreeInt) -> String {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|e| render_element(e))
            .collect();
        let _ = field;
        parts.join(", ")
    }
}

fn render_element(e: &FieldElementZ) -> String {
    let den = e.denominator();
    let mut terms: Vec<String> = Vec::new();
    for (i, c) in e.coords.iter().enumerate() {
        let scaled = c * BigRational::from_integer(den.clone());
        debug_assert!(scaled.denom().abs() == BigInt::one());
        let w = scaled.numer().clone();
        if w.is_zero() {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "a".to_string(),
            _ => "a^2".to_string(),
        };
        let mag = w.abs();
        let body = if var.is_empty() {
            format!("{mag}")
        } else if mag.is_one() {
            var
        } else {
            format!("{mag}{var}")
        };
        if w.is_negative() {
            terms.push(format!("-{body}"));
        } else if terms.is_empty() {
            terms.push(body);
        } else {
            terms.push(format!("+{body}"));
        }
    }
    let numer = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.concat()
    };
    if den.is_one() {
        numer
    } else if terms.len() > 1 {
        format!("({numer})/{den}")
    } else {
        format!("{numer}/{den}")
    }
}

/// The integral basis of the ring of integers, branch-selected on n mod 9
/// and verified integral via characteristic polynomials.
pub fn integral_basis(field: &CubeFreeInt) -> Result<IntegralBasisZ, CubicFieldError> {
    let branch = BasisBranch::of(field);
    let k = big_u(field.k());
    let three = big(3);
    let e0 = FieldElementZ::one();
    let e1 = FieldElementZ::from_integer_coords(0, 1, 0);
    let e2 = match branch {
        BasisBranch::Generic => {
            FieldElementZ::new([BigRational::zero(), BigRational::zero(), k.recip()])
        }
        BasisBranch::PlusOne => FieldElementZ::new([
            &k / &three,
            &k / &three,
            (&three * &k).recip(),
        ]),
        BasisBranch::MinusOne => FieldElementZ::new([
            &k / &three,
            -(&k / &three),
            (&three * &k).recip(),
        ]),
    };
    for e in [&e0, &e1, &e2] {
        if !char_poly(field, e).is_integral() {
            return Err(CubicFieldError::InternalSignError { n: field.n() });
        }
    }
    Ok(IntegralBasisZ {
        branch,
        elements: [e0, e1, e2],
    })
}

/// Index form of theta = u*e1 + v*e2 over the integral basis: the
/// determinant of the coordinates of (1, theta, theta^2) with respect to
/// that basis. |value| = 1 exactly when theta generates the ring.
///
/// Evaluated both by exact linear algebra and by the closed per-branch
/// formula; disagreement is an error.
pub fn index_form_det(field: &CubeFreeInt, u: i64, v: i64) -> Result<BigRational, CubicFieldError> {
    let basis = integral_basis(field)?;
    let theta = basis.elements[1]
        .scale(&big(u))
        .add(&basis.elements[2].scale(&big(v)));
    let theta2 = theta.mul(&theta, field);

    // rows: power-basis coordinates of 1, theta, theta^2
    let m_rows = [
        FieldElementZ::one().coords,
        theta.coords.clone(),
        theta2.coords,
    ];
    let b_rows = [
        basis.elements[0].coords.clone(),
        basis.elements[1].coords.clone(),
        basis.elements[2].coords.clone(),
    ];
    let det_la = det3(&m_rows) / det3(&b_rows);

    let kq = big_u(field.k());
    let mq = big_u(field.m());
    let uq = big(u);
    let vq = big(v);
    let cube = |x: &BigRational| x * x * x;
    let det_closed = match basis.branch {
        BasisBranch::Generic => &kq * cube(&uq) - &mq * cube(&vq),
        BasisBranch::PlusOne => {
            (&kq * cube(&(&big(3) * &uq + &kq * &vq)) - &mq * cube(&vq)) / big(9)
        }
        BasisBranch::MinusOne => {
            (&kq * cube(&(&big(3) * &uq - &kq * &vq)) - &mq * cube(&vq)) / big(9)
        }
    };
    if det_la != det_closed {
        return Err(CubicFieldError::FormulaMismatch {
            n: field.n(),
            u,
            v,
            det_la: det_la.to_string(),
            det_closed: det_closed.to_string(),
        });
    }
    Ok(det_la)
}

/// A candidate generator theta = u*e1 + v*e2 of the ring of integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorZ {
    pub u: i64,
    pub v: i64,
    pub element: FieldElementZ,
}

/// Converts a solution (x, y) of k x^3 - m y^3 = c into basis coordinates
/// (u, v), where c = 1 off the ramified classes and c = 9 on them.
pub fn theta_from_solution(
    field: &CubeFreeInt,
    x: i64,
    y: i64,
) -> Result<GeneratorZ, CubicFieldError> {
    let k = field.k() as i128;
    let m = field.m() as i128;
    let expected: i128 = match field.mod9() {
        Mod9Class::Neither => 1,
        _ => 9,
    };
    let lhs = k * (x as i128).pow(3) - m * (y as i128).pow(3);
    if lhs != expected {
        return Err(CubicFieldError::NotASolution {
            k: field.k(),
            m: field.m(),
            x,
            y,
            expected: expected as i64,
        });
    }
    let (u, v) = match field.mod9() {
        Mod9Class::Neither => (x as i128, y as i128),
        Mod9Class::PlusOne => {
            let numer = x as i128 - k * y as i128;
            if numer % 3 != 0 {
                return Err(CubicFieldError::NonIntegralU {
                    n: field.n(),
                    numerator: numer as i64,
                });
            }
            (numer / 3, y as i128)
        }
        Mod9Class::MinusOne => {
            let numer = x as i128 + k * y as i128;
            if numer % 3 != 0 {
                return Err(CubicFieldError::NonIntegralU {
                    n: field.n(),
                    numerator: numer as i64,
                });
            }
            (numer / 3, y as i128)
        }
    };
    let u = i64::try_from(u).map_err(|_| CubicFieldError::Overflow)?;
    let v = i64::try_from(v).map_err(|_| CubicFieldError::Overflow)?;
    let basis = integral_basis(field)?;
    let element = basis.elements[1]
        .scale(&big(u))
        .add(&basis.elements[2].scale(&big(v)));
    Ok(GeneratorZ { u, v, element })
}

/// True iff theta generates the ring of integers: |index form| = 1.
pub fn verify_generator(field: &CubeFreeInt, gen: &GeneratorZ) -> Result<bool, CubicFieldError> {
    let det = index_form_det(field, gen.u, gen.v)?;
    Ok(det.abs() == BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int_arith::cube_free_decompose;

    fn field(n: u64) -> CubeFreeInt {
        cube_free_decompose(n).unwrap()
    }

    #[test]
    fn basis_branch_selection() {
        assert_eq!(BasisBranch::of(&field(12)), BasisBranch::Generic);
        assert_eq!(BasisBranch::of(&field(10)), BasisBranch::PlusOne);
        assert_eq!(BasisBranch::of(&field(17)), BasisBranch::MinusOne);
    }

    #[test]
    fn basis_display_matches_cli_contract() {
        let f = field(10);
        let b = integral_basis(&f).unwrap();
        assert_eq!(b.display(&f), "1, a, (1+a+a^2)/3");
        let f = field(12);
        let b = integral_basis(&f).unwrap();
        assert_eq!(b.display(&f), "1, a, a^2/2");
        let f = field(17);
        let b = integral_basis(&f).unwrap();
        assert_eq!(b.display(&f), "1, a, (1-a+a^2)/3");
    }

    #[test]
    fn basis_is_integral_across_small_n() {
        for n in 2..500u64 {
            let f = match cube_free_decompose(n) {
                Ok(f) => f,
                Err(_) => continue,
            };
            let b = integral_basis(&f).unwrap();
            for e in &b.elements {
                assert!(char_poly(&f, e).is_integral(), "n = {n}");
            }
        }
    }

    #[test]
    fn ramified_denominator_is_3k() {
        for n in 2..2000u64 {
            let f = match cube_free_decompose(n) {
                Ok(f) => f,
                Err(_) => continue,
            };
            if f.mod9() == Mod9Class::Neither {
                continue;
            }
            let b = integral_basis(&f).unwrap();
            assert_eq!(
                b.elements[2].denominator(),
                BigInt::from(3 * f.k()),
                "n = {n}"
            );
        }
    }

    #[test]
    fn char_poly_of_cube_root() {
        // a = cbrt(12) has characteristic polynomial T^3 - 12
        let f = field(12);
        let a = FieldElementZ::from_integer_coords(0, 1, 0);
        let cp = char_poly(&f, &a);
        assert_eq!(cp.a2, big(0));
        assert_eq!(cp.a1, big(0));
        assert_eq!(cp.a0, big(-12));
    }

    #[test]
    fn char_poly_scale_and_shift() {
        // x = 1 + a over n = 2: minimal polynomial (T-1)^3 - 2
        let f = field(2);
        let x = FieldElementZ::from_integer_coords(1, 1, 0);
        let cp = char_poly(&f, &x);
        assert_eq!(cp.a2, big(-3));
        assert_eq!(cp.a1, big(3));
        assert_eq!(cp.a0, big(-3));
    }

    #[test]
    fn mul_reduces_cube() {
        let f = field(2);
        let a = FieldElementZ::from_integer_coords(0, 1, 0);
        let a2 = a.mul(&a, &f);
        assert_eq!(a2, FieldElementZ::from_integer_coords(0, 0, 1));
        let a3 = a2.mul(&a, &f);
        assert_eq!(a3, FieldElementZ::from_integer_coords(2, 0, 0));
    }

    #[test]
    fn index_form_generic_closed_form() {
        // n = 12: k = 2, m = 3, generic branch: value is 2u^3 - 3v^3
        let f = field(12);
        for (u, v) in [(1i64, 1i64), (2, 1), (-1, 2), (3, -2), (0, 1), (1, 0)] {
            let det = index_form_det(&f, u, v).unwrap();
            let expect = 2 * u.pow(3) - 3 * v.pow(3);
            assert_eq!(det, big(expect), "(u, v) = ({u}, {v})");
        }
    }

    #[test]
    fn index_form_ramified_closed_form() {
        // n = 10 (k = 1, m = 10, +1 branch): value is ((3u+v)^3 - 10 v^3)/9
        let f = field(10);
        for (u, v) in [(1i64, 1i64), (0, 3), (2, -3), (-1, 6), (1, 0)] {
            let det = index_form_det(&f, u, v).unwrap();
            let expect = BigRational::new(
                BigInt::from((3 * u + v).pow(3) - 10 * v.pow(3)),
                BigInt::from(9),
            );
            assert_eq!(det, expect, "(u, v) = ({u}, {v})");
        }
    }

    #[test]
    fn theta_from_solution_examples() {
        // k = 2, m = 15: 2*2^3 - 15*1^3 = 1, generic branch
        let f = CubeFreeInt::from_parts(2, 15).unwrap();
        let g = theta_from_solution(&f, 2, 1).unwrap();
        assert_eq!((g.u, g.v), (2, 1));
        assert!(verify_generator(&f, &g).unwrap());

        // k = 1, m = 55 = 1 (mod 9): 4^3 - 55*1^3 = 9 exercises the
        // ramified branch, where (u, v) = ((x - k y)/3, y)
        let f = CubeFreeInt::from_parts(1, 55).unwrap();
        assert_eq!(f.mod9(), Mod9Class::PlusOne);
        let g = theta_from_solution(&f, 4, 1).unwrap();
        // u = (4 - 1)/3 = 1, v = 1
        assert_eq!((g.u, g.v), (1, 1));
        assert!(verify_generator(&f, &g).unwrap());
    }

    #[test]
    fn theta_rejects_non_solutions() {
        let f = CubeFreeInt::from_parts(2, 15).unwrap();
        assert!(matches!(
            theta_from_solution(&f, 1, 1),
            Err(CubicFieldError::NotASolution { .. })
        ));
    }

    #[test]
    fn non_generator_has_large_index() {
        // k = 1, m = 7: theta = a has index form u^3 - 7 v^3 at (1, 0) -> 1,
        // but (0, 1) gives -7: not a generator.
        let f = CubeFreeInt::from_parts(1, 7).unwrap();
        let det = index_form_det(&f, 0, 1).unwrap();
        assert_eq!(det, big(-7));
    }
}
