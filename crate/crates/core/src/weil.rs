//! Weil validation: the real Weil polynomial, exact root-location
//! certification via Sturm sequences over the rationals, and the
//! plausibility battery (nonnegative point and place counts).
//!
//! The report keeps the three checks separate because they mean
//! different things. The functional equation plus root location is the
//! Weil property proper and is multiplicative; plausibility (counts
//! consistent with an actual curve) is not: a product of two honest
//! curve L-polynomials can have N_2 < N_1.

use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::lpoly::LPolynomial;
use crate::poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

/// One failed check, precise enough to act on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    /// a_{2g-i} != q^{g-i} a_i at this coefficient index.
    FunctionalEquation {
        index: usize,
    },
    /// Root location cannot be certified without the functional equation.
    RootLocationUnchecked,
    /// Fewer distinct real roots in [-2 sqrt(q), 2 sqrt(q)] than the
    /// real Weil polynomial has distinct complex roots.
    RootLocation {
        in_bound: usize,
        distinct: usize,
    },
    NegativePointCount {
        d: usize,
        value: BigInt,
    },
    NonIntegralPlaceCount {
        d: usize,
    },
    NegativePlaceCount {
        d: usize,
        value: BigInt,
    },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::FunctionalEquation { index } => {
                write!(f, "coefficient {index} violates the functional equation")
            }
            ValidationFailure::RootLocationUnchecked => {
                write!(f, "root location unchecked: functional equation does not hold")
            }
            ValidationFailure::RootLocation { in_bound, distinct } => write!(
                f,
                "only {in_bound} of {distinct} distinct roots of the real Weil polynomial lie in [-2sqrt(q), 2sqrt(q)]"
            ),
            ValidationFailure::NegativePointCount { d, value } => {
                write!(f, "point count N_{d} = {value} is negative")
            }
            ValidationFailure::NonIntegralPlaceCount { d } => {
                write!(f, "place count b_{d} is not an integer")
            }
            ValidationFailure::NegativePlaceCount { d, value } => {
                write!(f, "place count b_{d} = {value} is negative")
            }
        }
    }
}

/// Outcome of validate_weil. Overall validity is the conjunction of
/// the three flags; `weil_ok` is the multiplicative part alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub functional_equation_ok: bool,
    pub root_location_ok: bool,
    pub plausibility_ok: bool,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    /// The Weil property proper: coefficient symmetry and every
    /// Frobenius eigenvalue on |alpha| = sqrt(q). Holds for a product
    /// if and only if it holds for every factor.
    pub fn weil_ok(&self) -> bool {
        self.functional_equation_ok && self.root_location_ok
    }

    /// All three checks. Required before claiming the input describes
    /// a curve; not multiplicative.
    pub fn all_ok(&self) -> bool {
        self.weil_ok() && self.plausibility_ok
    }

    /// Failure reasons rendered for diagnostics.
    pub fn failure_messages(&self) -> Vec<String> {
        self.failures.iter().map(|f| f.to_string()).collect()
    }
}

/// Exact binomial coefficient; every intermediate division is exact.
fn binomial(n: usize, m: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for k in 1..=m {
        c = c * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    c
}

/// The degree-g monic integer polynomial h with roots alpha_i + q/alpha_i
/// (one per conjugate pair), returned with ascending coefficients.
/// Computed by the exact triangular solve
/// c_j = a_{g-j} - sum_{m=1..(g-j)/2} c_{j+2m} C(j+2m, m) q^m,
/// which inverts L(t) = t^g h((1 + q t^2)/t) coefficient by coefficient.
/// Requires the functional equation; only a_0..a_g are read.
pub fn real_weil_polynomial(l: &LPolynomial) -> Result<Vec<BigInt>> {
    if let Some(index) = l.functional_equation_violation() {
        return Err(Error::FunctionalEquation { index });
    }
    let g = l.genus() as usize;
    let q = BigInt::from(l.base_field().q());
    let a = l.coefficients();
    let mut c = vec![BigInt::zero(); g + 1];
    for j in (0..=g).rev() {
        let mut value = a[g - j].clone();
        let mut qm = BigInt::from(1);
        for m in 1..=((g - j) / 2) {
            qm = &qm * &q;
            value -= &c[j + 2 * m] * binomial(j + 2 * m, m) * &qm;
        }
        c[j] = value;
    }
    Ok(c)
}

/// Validates with the default plausibility depth of 2g place counts.
pub fn validate_weil(l: &LPolynomial) -> ValidationReport {
    validate_weil_with_depth(l, 2 * l.genus() as usize)
}

/// Validates with an explicit plausibility depth (how many place
/// counts b_1..b_depth must be nonnegative). Depth below 1 is raised
/// to 1 so that N_1 is always checked.
pub fn validate_weil_with_depth(l: &LPolynomial, depth: usize) -> ValidationReport {
    let mut failures = Vec::new();

    let violation = l.functional_equation_violation();
    let functional_equation_ok = violation.is_none();
    if let Some(index) = violation {
        failures.push(ValidationFailure::FunctionalEquation { index });
    }

    let root_location_ok = if functional_equation_ok {
        let h = real_weil_polynomial(l).expect("functional equation holds");
        let (in_bound, distinct) = certified_roots_in_bound(&h, l.base_field());
        if in_bound == distinct {
            true
        } else {
            failures.push(ValidationFailure::RootLocation { in_bound, distinct });
            false
        }
    } else {
        failures.push(ValidationFailure::RootLocationUnchecked);
        false
    };

    let depth = depth.max(1);
    let counts = l.point_counts(depth);
    let mut plausibility_ok = true;
    if counts.values()[0].is_negative() {
        plausibility_ok = false;
        failures.push(ValidationFailure::NegativePointCount {
            d: 1,
            value: counts.values()[0].clone(),
        });
    }
    match counts.place_counts() {
        Ok(places) => {
            // b_1 = N_1 is already covered above; report from degree 2.
            for (i, b) in places.iter().enumerate().skip(1) {
                if b.is_negative() {
                    plausibility_ok = false;
                    failures.push(ValidationFailure::NegativePlaceCount {
                        d: i + 1,
                        value: b.clone(),
                    });
                }
            }
        }
        Err(Error::NonIntegralPlaceCount { d }) => {
            plausibility_ok = false;
            failures.push(ValidationFailure::NonIntegralPlaceCount { d });
        }
        Err(_) => unreachable!("place_counts only fails on non-integrality"),
    }

    ValidationReport {
        functional_equation_ok,
        root_location_ok,
        plausibility_ok,
        failures,
    }
}

/// Counts distinct roots of the monic integer polynomial h that are
/// real and lie in [-2 sqrt(q), 2 sqrt(q)], against the total number
/// of distinct complex roots. Equality of the pair certifies that all
/// roots of h are real and within the Weil bound.
///
/// Endpoint roots are handled first by exact factor stripping: when q
/// is a perfect square the endpoints are the integers +-2 sqrt(q) and
/// their linear factors are divided out; otherwise an endpoint root
/// forces the factor x^2 - 4q (the minimal polynomial of 2 sqrt(q)),
/// which is divided out while present. The remainder has no endpoint
/// roots, so an open-interval Sturm count decides membership exactly.
fn certified_roots_in_bound(h: &[BigInt], field: FieldSize) -> (usize, usize) {
    let four_q = BigInt::from(field.q()) * 4u32;

    // Distinct endpoint roots stripped; they sit on the closed bound,
    // so they count on both sides of the comparison.
    let mut reduced = h.to_vec();
    let mut stripped = 0usize;
    if field.degree().is_multiple_of(2) {
        // q is a perfect square, 2 sqrt(q) = 2 p^(f/2) is an integer
        let w = BigInt::from(2u32) * BigInt::from(field.characteristic()).pow(field.degree() / 2);
        for root in [w.clone(), -w] {
            let mut seen = false;
            while let Some(quot) = poly::divide_by_linear_exact(&reduced, &root) {
                reduced = quot;
                seen = true;
            }
            stripped += seen as usize;
        }
    } else {
        // an endpoint root at irrational +-2 sqrt(q) forces the full
        // minimal polynomial x^2 - 4q, bringing both endpoints at once
        let divisor = [-four_q.clone(), BigInt::zero(), BigInt::from(1)];
        let mut seen = false;
        while let Some(quot) = poly::divide_by_monic_exact(&reduced, &divisor) {
            reduced = quot;
            seen = true;
        }
        stripped += 2 * seen as usize;
    }

    let rational: Vec<BigRational> = reduced
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let deg = poly::degree(&rational).expect("monic polynomial is nonzero");
    if deg == 0 {
        return (stripped, stripped);
    }

    let gcd = poly::gcd(&rational, &poly::derivative(&rational));
    let squarefree = poly::divide_exact_rational(&rational, &gcd);
    let deg_f = poly::degree(&squarefree).expect("squarefree part of nonconstant poly");

    // Sturm chain on the squarefree part; elements are rescaled to
    // leading coefficient +-1, which preserves every sign.
    let mut chain = vec![
        normalize_scale(squarefree.clone()),
        normalize_scale(poly::derivative(&squarefree)),
    ];
    loop {
        let n = chain.len();
        let mut rem = poly::remainder(&chain[n - 2], &chain[n - 1]);
        if rem.is_empty() {
            break;
        }
        for c in &mut rem {
            *c = -c.clone();
        }
        chain.push(normalize_scale(rem));
    }

    let v_minus = sign_changes(&chain, &four_q, -1);
    let v_plus = sign_changes(&chain, &four_q, 1);
    let interior = v_minus.saturating_sub(v_plus);
    (stripped + interior, stripped + deg_f)
}

fn normalize_scale(mut p: Vec<BigRational>) -> Vec<BigRational> {
    poly::trim(&mut p);
    if let Some(d) = poly::degree(&p) {
        let scale = p[d].abs();
        for c in &mut p {
            *c = &*c / &scale;
        }
    }
    p
}

/// Sign changes of the chain evaluated at s*sqrt(four_q), zeros skipped.
fn sign_changes(chain: &[Vec<BigRational>], four_q: &BigInt, s: i8) -> usize {
    let mut signs = Vec::with_capacity(chain.len());
    for p in chain {
        let sg = poly::sign_at_sqrt(p, four_q, s);
        if sg != 0 {
            signs.push(sg);
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpoly::LPolynomial;

    fn field(q: u64) -> FieldSize {
        FieldSize::new(q).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lp(q: u64, half: &[i64]) -> LPolynomial {
        LPolynomial::from_half(field(q), half.len() as u32, &big(half)).unwrap()
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(10, 5), BigInt::from(252));
    }

    #[test]
    fn real_weil_genus_one() {
        assert_eq!(real_weil_polynomial(&lp(2, &[3])).unwrap(), big(&[3, 1]));
        assert_eq!(real_weil_polynomial(&lp(2, &[0])).unwrap(), big(&[0, 1]));
    }

    #[test]
    fn real_weil_genus_two() {
        // generic identity: h = x^2 + a_1 x + (a_2 - 2q)
        let l = lp(3, &[2, 5]);
        assert_eq!(real_weil_polynomial(&l).unwrap(), big(&[-1, 2, 1]));
        let l = LPolynomial::new(field(2), 2, big(&[1, 0, -4, 0, 4])).unwrap();
        assert_eq!(real_weil_polynomial(&l).unwrap(), big(&[-8, 0, 1]));
    }

    #[test]
    fn real_weil_requires_functional_equation() {
        let l = LPolynomial::new(field(2), 1, big(&[1, 1, 3])).unwrap();
        assert_eq!(
            real_weil_polynomial(&l).unwrap_err(),
            Error::FunctionalEquation { index: 0 }
        );
    }

    #[test]
    fn real_weil_roots_are_traces_for_products() {
        // product of 1 + a t + q t^2 factors: h = prod (x + a)
        let l = LPolynomial::from_elliptic_product(field(2), &[1, 2]).unwrap();
        // (x+1)(x+2) = x^2 + 3x + 2
        assert_eq!(real_weil_polynomial(&l).unwrap(), big(&[2, 3, 1]));
    }

    #[test]
    fn table_classes_pass_all_checks() {
        for (q, half) in [
            (2u64, vec![3i64, 8, 14, 23]),
            (2, vec![4, 12, 26, 47, 72]),
            (3, vec![8, 34, 96, 195]),
            (3, vec![7, 26, 66, 129]),
            (3, vec![7, 27, 71, 140]),
            (4, vec![6, 21, 49]),
            (4, vec![5, 15, 32]),
            (5, vec![10, 47, 132]),
            (5, vec![9, 39, 106]),
            (5, vec![9, 40, 111]),
            (5, vec![8, 31, 80]),
        ] {
            let l = lp(q, &half);
            let report = validate_weil(&l);
            assert!(
                report.all_ok(),
                "q={q} half={half:?}: {:?}",
                report.failures
            );
            assert!(l.power_sums(2 * l.genus() as usize).within_weil_bound());
        }
    }

    #[test]
    fn root_location_rejects_large_trace() {
        // q=2, a_1=3: root of x+3 is outside [-2sqrt(2), 2sqrt(2)]
        let report = validate_weil(&lp(2, &[3]));
        assert!(report.functional_equation_ok);
        assert!(!report.root_location_ok);
        // the oversized trace also collapses N_2 below N_1, so the
        // plausibility check independently reports a negative place count
        assert_eq!(
            report.failures,
            vec![
                ValidationFailure::RootLocation {
                    in_bound: 0,
                    distinct: 1
                },
                ValidationFailure::NegativePlaceCount {
                    d: 2,
                    value: BigInt::from(-3)
                }
            ]
        );

        // q=3, a_1=4 > floor(2 sqrt(3)) = 3 likewise fails
        assert!(!validate_weil(&lp(3, &[4])).root_location_ok);
    }

    #[test]
    fn root_location_accepts_boundary_trace() {
        // q=2, a_1=2: elliptic curve with 5 points
        let report = validate_weil(&lp(2, &[2]));
        assert!(report.all_ok(), "{:?}", report.failures);
    }

    #[test]
    fn endpoint_root_integer_case() {
        // q=4, a_1=4: h = x + 4 vanishes at -2 sqrt(4); stripped exactly
        let report = validate_weil(&lp(4, &[4]));
        assert!(report.functional_equation_ok);
        assert!(report.root_location_ok, "{:?}", report.failures);
    }

    #[test]
    fn endpoint_root_irrational_case() {
        // q=2, h = x^2 - 8 vanishes at +-2 sqrt(2): root location holds,
        // but N_2 = 5 - 8 < 0 so plausibility fails.
        let l = LPolynomial::new(field(2), 2, big(&[1, 0, -4, 0, 4])).unwrap();
        let report = validate_weil(&l);
        assert!(report.functional_equation_ok);
        assert!(report.root_location_ok, "{:?}", report.failures);
        assert!(!report.plausibility_ok);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::NegativePlaceCount { d: 2, .. })));
    }

    #[test]
    fn plausibility_is_not_multiplicative() {
        // (1 + 2t + 2t^2)^2: both factors are honest elliptic curves
        // over F_2, the square has N_1 = 7 > N_2 = 5, impossible for a
        // curve. weil_ok stays true; all_ok does not.
        let factor = lp(2, &[2]);
        assert!(validate_weil(&factor).all_ok());
        let square = LPolynomial::from_elliptic_product(field(2), &[2, 2]).unwrap();
        assert_eq!(square.coefficients(), &big(&[1, 4, 8, 8, 4])[..]);
        let report = validate_weil(&square);
        assert!(report.weil_ok(), "{:?}", report.failures);
        assert!(!report.plausibility_ok);
        assert_eq!(square.rational_points(), BigInt::from(7));
        assert_eq!(square.point_counts(2).values()[1], BigInt::from(5));
    }

    #[test]
    fn functional_equation_failure_reported() {
        let l = LPolynomial::new(field(2), 1, big(&[1, 1, 3])).unwrap();
        let report = validate_weil(&l);
        assert!(!report.functional_equation_ok);
        assert!(!report.root_location_ok);
        assert!(report
            .failures
            .contains(&ValidationFailure::FunctionalEquation { index: 0 }));
        assert!(report
            .failures
            .contains(&ValidationFailure::RootLocationUnchecked));
    }

    #[test]
    fn generator_products_always_weil_ok() {
        // every trace within floor(2 sqrt(q)) gives a valid factor
        for (q, bound) in [(2u64, 2i64), (3, 3), (4, 4), (5, 4)] {
            for a in -bound..=bound {
                for b in -bound..=bound {
                    let l = LPolynomial::from_elliptic_product(field(q), &[a, b]).unwrap();
                    let report = validate_weil(&l);
                    assert!(
                        report.weil_ok(),
                        "q={q} traces=({a},{b}): {:?}",
                        report.failures
                    );
                    assert!(l.power_sums(4).within_weil_bound());
                }
            }
        }
    }

    #[test]
    fn multiple_roots_certified() {
        // (1 + t + 2t^2)^3 has every real Weil root with multiplicity 3;
        // the squarefree reduction must still certify it.
        let l = LPolynomial::from_elliptic_product(field(2), &[1, 1, 1]).unwrap();
        assert!(validate_weil(&l).weil_ok());
    }

    #[test]
    fn depth_controls_plausibility() {
        // x^2 - 8 case fails at depth 2 but passes at depth 1
        let l = LPolynomial::new(field(2), 2, big(&[1, 0, -4, 0, 4])).unwrap();
        assert!(!validate_weil_with_depth(&l, 2).plausibility_ok);
        assert!(validate_weil_with_depth(&l, 1).plausibility_ok);
    }
}
