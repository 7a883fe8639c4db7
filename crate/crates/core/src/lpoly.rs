//! Exact algebra of L-polynomials: construction, power sums, point
//! counts, class numbers, and base change. Everything is arbitrary
//! precision integer arithmetic; nothing here rounds.
//!
//! Conventions: L(t) = prod_{i=1..2g} (1 - alpha_i t) with integer
//! coefficients a_0..a_2g, a_0 = 1, and the functional equation
//! a_{2g-i} = q^{g-i} a_i. The inverse roots alpha_i are never
//! materialized; all root data flows through integer power sums.

use crate::error::{Error, Result};
use crate::field::FieldSize;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The numerator of a curve's zeta function over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LPolynomial {
    base_field: FieldSize,
    genus: u32,
    coefficients: Vec<BigInt>,
}

/// Power sums p_k = sum_i alpha_i^k of the inverse roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums {
    base_field: FieldSize,
    genus: u32,
    values: Vec<BigInt>,
}

/// Point counts N_d = q^d + 1 - p_d over the degree-d extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCounts {
    base_field: FieldSize,
    genus: u32,
    values: Vec<BigInt>,
}

impl LPolynomial {
    /// Builds from the full coefficient list a_0..a_2g. Requires a_0 = 1
    /// and exactly 2g+1 entries; the functional equation is *not*
    /// enforced here, so that validation can report on it.
    pub fn new(base_field: FieldSize, genus: u32, coefficients: Vec<BigInt>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let expected = 2 * genus as usize + 1;
        if coefficients.len() != expected {
            return Err(Error::CoefficientCount {
                expected,
                got: coefficients.len(),
            });
        }
        if !coefficients[0].is_one() {
            return Err(Error::ConstantCoefficient);
        }
        Ok(LPolynomial {
            base_field,
            genus,
            coefficients,
        })
    }

    /// Completes the leading half a_1..a_g to a full L-polynomial via
    /// the functional equation a_{2g-i} = q^{g-i} a_i.
    pub fn from_half(base_field: FieldSize, genus: u32, half: &[BigInt]) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if half.len() != genus as usize {
            return Err(Error::CoefficientCount {
                expected: genus as usize,
                got: half.len(),
            });
        }
        let g = genus as usize;
        let q = BigInt::from(base_field.q());
        let mut coefficients = vec![BigInt::zero(); 2 * g + 1];
        coefficients[0] = BigInt::one();
        coefficients[1..=g].clone_from_slice(half);
        for i in 0..g {
            coefficients[2 * g - i] = q.pow((g - i) as u32) * &coefficients[i];
        }
        Ok(LPolynomial {
            base_field,
            genus,
            coefficients,
        })
    }

    /// Product of genus-1 factors 1 + a t + q t^2, one per trace entry.
    /// With |a| <= floor(2 sqrt(q)) every factor is Weil-valid, which
    /// makes this the workhorse generator for property tests.
    pub fn from_elliptic_product(base_field: FieldSize, traces: &[i64]) -> Result<Self> {
        if traces.is_empty() {
            return Err(Error::ZeroGenus);
        }
        let q = BigInt::from(base_field.q());
        let mut coefficients = vec![BigInt::one()];
        for &a in traces {
            let factor = [BigInt::one(), BigInt::from(a), q.clone()];
            let mut next = vec![BigInt::zero(); coefficients.len() + 2];
            for (i, c) in coefficients.iter().enumerate() {
                for (j, f) in factor.iter().enumerate() {
                    next[i + j] += c * f;
                }
            }
            coefficients = next;
        }
        LPolynomial::new(base_field, traces.len() as u32, coefficients)
    }

    /// Reconstructs the unique L-polynomial with the given power sums.
    /// The inverse Newton recursion divides by k at step k; a nonzero
    /// remainder means the power sums are not realizable and is a hard
    /// error, never a silent rounding.
    pub fn from_power_sums(base_field: FieldSize, genus: u32, sums: &PowerSums) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let n = 2 * genus as usize;
        if sums.values.len() < n {
            return Err(Error::PowerSumLength {
                needed: n,
                got: sums.values.len(),
            });
        }
        let p = &sums.values;
        let mut e = vec![BigInt::one()]; // e_0 = 1
        for k in 1..=n {
            // k * e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let term = &e[k - i] * &p[i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(k));
            if !rem.is_zero() {
                return Err(Error::InexactNewtonDivision { k });
            }
            e.push(quot);
        }
        let coefficients: Vec<BigInt> = e
            .into_iter()
            .enumerate()
            .map(|(k, ek)| if k % 2 == 1 { -ek } else { ek })
            .collect();
        LPolynomial::new(base_field, genus, coefficients)
    }

    pub fn base_field(&self) -> FieldSize {
        self.base_field
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// The leading half a_1..a_g, the part an isogeny-class label carries.
    pub fn half_coefficients(&self) -> &[BigInt] {
        &self.coefficients[1..=self.genus as usize]
    }

    /// Exact evaluation at an integer point.
    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Index of the first coefficient violating a_{2g-i} = q^{g-i} a_i,
    /// or None if the functional equation holds.
    pub fn functional_equation_violation(&self) -> Option<usize> {
        let g = self.genus as usize;
        let q = BigInt::from(self.base_field.q());
        (0..=g).find(|&i| {
            self.coefficients[2 * g - i] != q.pow((g - i) as u32) * &self.coefficients[i]
        })
    }

    pub fn functional_equation_ok(&self) -> bool {
        self.functional_equation_violation().is_none()
    }

    /// First m power sums via the Newton recursion
    /// p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^(k-1) k e_k,
    /// where e_k = (-1)^k a_k (zero beyond degree 2g).
    pub fn power_sums(&self, m: usize) -> PowerSums {
        let n = 2 * self.genus as usize;
        let e = |k: usize| -> BigInt {
            if k > n {
                BigInt::zero()
            } else if k % 2 == 1 {
                -self.coefficients[k].clone()
            } else {
                self.coefficients[k].clone()
            }
        };
        let mut p: Vec<BigInt> = Vec::with_capacity(m);
        for k in 1..=m {
            let mut acc = BigInt::zero();
            for i in 1..k {
                let term = e(i) * &p[k - i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let tail = e(k) * BigInt::from(k);
            if k % 2 == 1 {
                acc += tail;
            } else {
                acc -= tail;
            }
            p.push(acc);
        }
        PowerSums {
            base_field: self.base_field,
            genus: self.genus,
            values: p,
        }
    }

    /// Point counts N_d = q^d + 1 - p_d for d = 1..m.
    pub fn point_counts(&self, m: usize) -> PointCounts {
        let q = BigInt::from(self.base_field.q());
        let sums = self.power_sums(m);
        let values = sums
            .values
            .iter()
            .enumerate()
            .map(|(i, p)| q.pow(i as u32 + 1) + 1 - p)
            .collect();
        PointCounts {
            base_field: self.base_field,
            genus: self.genus,
            values,
        }
    }

    /// Number of rational points over the base field.
    pub fn rational_points(&self) -> BigInt {
        self.point_counts(1).values[0].clone()
    }

    /// The Jacobian group order L(1). Rejects non-positive results,
    /// which can only arise from inputs that are not Weil-valid.
    pub fn class_number(&self) -> Result<BigInt> {
        let value = self.evaluate(&BigInt::one());
        if value.is_positive() {
            Ok(value)
        } else {
            Err(Error::NonPositiveClassNumber { value })
        }
    }

    /// The L-polynomial of the same curve over the degree-d extension:
    /// inverse roots map alpha -> alpha^d, so the new power sums are
    /// p'_k = p_{dk}. Genus is unchanged; the base field becomes q^d.
    pub fn base_change(&self, d: u32) -> Result<LPolynomial> {
        if d == 0 {
            return Err(Error::ZeroGenus);
        }
        let extended = self.base_field.extend(d)?;
        let n = 2 * self.genus as usize;
        let all = self.power_sums(n * d as usize);
        let values: Vec<BigInt> = (1..=n)
            .map(|k| all.values[k * d as usize - 1].clone())
            .collect();
        let sums = PowerSums {
            base_field: extended,
            genus: self.genus,
            values,
        };
        LPolynomial::from_power_sums(extended, self.genus, &sums)
    }
}

impl PowerSums {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Exactly testable magnitude bound p_k^2 <= 4 g^2 q^k, a
    /// consequence of |alpha_i| = sqrt(q). Expected to hold only for
    /// inputs that pass Weil validation.
    pub fn within_weil_bound(&self) -> bool {
        let q = BigInt::from(self.base_field.q());
        let four_g2 = BigInt::from(4u32) * BigInt::from(self.genus) * BigInt::from(self.genus);
        self.values
            .iter()
            .enumerate()
            .all(|(i, p)| p * p <= &four_g2 * q.pow(i as u32 + 1))
    }

    pub fn base_field(&self) -> FieldSize {
        self.base_field
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn new(base_field: FieldSize, genus: u32, values: Vec<BigInt>) -> Self {
        PowerSums {
            base_field,
            genus,
            values,
        }
    }
}

impl PointCounts {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn base_field(&self) -> FieldSize {
        self.base_field
    }

    pub fn new(base_field: FieldSize, genus: u32, values: Vec<BigInt>) -> Self {
        PointCounts {
            base_field,
            genus,
            values,
        }
    }

    /// Counts of closed points: b_d = (1/d) sum_{e|d} mu(d/e) N_e.
    /// A non-integral b_d proves the point-count sequence cannot come
    /// from a curve and is reported as an error.
    pub fn place_counts(&self) -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(self.values.len());
        for d in 1..=self.values.len() {
            let mut acc = BigInt::zero();
            for e in 1..=d {
                if d % e != 0 {
                    continue;
                }
                match moebius(d / e) {
                    1 => acc += &self.values[e - 1],
                    -1 => acc -= &self.values[e - 1],
                    _ => {}
                }
            }
            let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(d));
            if !rem.is_zero() {
                return Err(Error::NonIntegralPlaceCount { d });
            }
            out.push(quot);
        }
        Ok(out)
    }
}

/// Moebius function by trial division; inputs here stay tiny.
fn moebius(mut n: usize) -> i8 {
    let mut mu = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn completion_from_half() {
        assert_eq!(
            lp(2, &[3, 8, 14, 23]).coefficients(),
            &big(&[1, 3, 8, 14, 23, 28, 32, 24, 16])[..]
        );
        assert_eq!(lp(2, &[0]).coefficients(), &big(&[1, 0, 2])[..]);
        assert_eq!(
            lp(5, &[10, 47, 132]).coefficients(),
            &big(&[1, 10, 47, 132, 235, 250, 125])[..]
        );
    }

    #[test]
    fn completion_rejects_bad_arity() {
        let err = LPolynomial::from_half(field(2), 4, &big(&[3, 8, 14])).unwrap_err();
        assert_eq!(
            err,
            Error::CoefficientCount {
                expected: 4,
                got: 3
            }
        );
    }

    #[test]
    fn new_rejects_constant_other_than_one() {
        let err = LPolynomial::new(field(2), 1, big(&[2, 0, 2])).unwrap_err();
        assert_eq!(err, Error::ConstantCoefficient);
    }

    #[test]
    fn evaluation() {
        assert_eq!(lp(2, &[0]).evaluate(&BigInt::one()), BigInt::from(3));
        assert_eq!(
            lp(2, &[3, 8, 14, 23]).evaluate(&BigInt::from(-1)),
            BigInt::from(11)
        );
        assert_eq!(
            lp(5, &[10, 47, 132]).evaluate(&BigInt::from(-1)),
            BigInt::from(16)
        );
    }

    #[test]
    fn newton_power_sums() {
        // hand-run Newton recursion: e_1 = -a_1, e_2 = a_2
        assert_eq!(lp(2, &[0]).power_sums(2).values(), &big(&[0, -4])[..]);
        assert_eq!(lp(2, &[1]).power_sums(2).values(), &big(&[-1, -3])[..]);
        assert_eq!(
            lp(2, &[3, 8, 14, 23]).power_sums(2).values(),
            &big(&[-3, -7])[..]
        );
    }

    #[test]
    fn power_sums_against_trace_recurrence() {
        // Independent oracle: for a factor 1 + a t + q t^2 the power sums
        // obey s_k = -a s_{k-1} - q s_{k-2} with s_0 = 2, s_1 = -a; a
        // product's power sums are the sum over factors.
        let q = 3i64;
        let traces = [-3i64, -1, 0, 2, 3];
        let m = 12;
        let mut expected = vec![BigInt::zero(); m];
        for &a in &traces {
            let mut prev2 = BigInt::from(2);
            let mut prev1 = BigInt::from(-a);
            expected[0] += &prev1;
            for item in expected.iter_mut().take(m).skip(1) {
                let next = BigInt::from(-a) * &prev1 - BigInt::from(q) * &prev2;
                *item += &next;
                prev2 = prev1;
                prev1 = next;
            }
        }
        let l = LPolynomial::from_elliptic_product(field(3), &traces).unwrap();
        assert_eq!(l.power_sums(m).values(), &expected[..]);
    }

    #[test]
    fn inverse_newton_round_trip() {
        let l = lp(2, &[3, 8, 14, 23]);
        let sums = l.power_sums(8);
        let back = LPolynomial::from_power_sums(field(2), 4, &sums).unwrap();
        assert_eq!(back, l);

        let sums = PowerSums::new(field(2), 1, big(&[0, -4]));
        let back = LPolynomial::from_power_sums(field(2), 1, &sums).unwrap();
        assert_eq!(back.coefficients(), &big(&[1, 0, 2])[..]);
    }

    #[test]
    fn inverse_newton_rejects_unrealizable_sums() {
        let sums = PowerSums::new(field(2), 1, big(&[1, 0]));
        assert_eq!(
            LPolynomial::from_power_sums(field(2), 1, &sums).unwrap_err(),
            Error::InexactNewtonDivision { k: 2 }
        );
    }

    #[test]
    fn inverse_newton_rejects_short_input() {
        let sums = PowerSums::new(field(2), 2, big(&[1, 1, 1]));
        assert_eq!(
            LPolynomial::from_power_sums(field(2), 2, &sums).unwrap_err(),
            Error::PowerSumLength { needed: 4, got: 3 }
        );
    }

    #[test]
    fn point_counts_from_power_sums() {
        assert_eq!(
            lp(2, &[3, 8, 14, 23]).point_counts(1).values(),
            &big(&[6])[..]
        );
        assert_eq!(lp(2, &[0]).point_counts(2).values(), &big(&[3, 9])[..]);
        assert_eq!(
            lp(5, &[10, 47, 132]).point_counts(1).values(),
            &big(&[16])[..]
        );
    }

    #[test]
    fn class_numbers() {
        assert_eq!(lp(2, &[1]).class_number().unwrap(), BigInt::from(4));
        assert_eq!(
            lp(2, &[3, 8, 14, 23]).class_number().unwrap(),
            BigInt::from(149)
        );
        assert_eq!(lp(2, &[0]).class_number().unwrap(), BigInt::from(3));
    }

    #[test]
    fn class_number_rejects_non_positive() {
        // 1 - 3t + 2t^2 = (1-t)(1-2t) evaluates to 0 at 1
        let l = LPolynomial::new(field(2), 1, big(&[1, -3, 2])).unwrap();
        assert!(matches!(
            l.class_number(),
            Err(Error::NonPositiveClassNumber { .. })
        ));
    }

    #[test]
    fn base_change_squares_roots() {
        let l = lp(2, &[1]);
        let l2 = l.base_change(2).unwrap();
        assert_eq!(l2.base_field().q(), 4);
        assert_eq!(l2.coefficients(), &big(&[1, 3, 4])[..]);

        let g4 = lp(2, &[3, 8, 14, 23]);
        let g4_ext = g4.base_change(2).unwrap();
        assert_eq!(g4_ext.evaluate(&BigInt::one()), BigInt::from(1639)); // 149 * 11
    }

    #[test]
    fn base_change_degree_one_is_identity() {
        let l = lp(5, &[10, 47, 132]);
        assert_eq!(l.base_change(1).unwrap(), l);
    }

    #[test]
    fn base_change_composes() {
        let l = lp(3, &[2, 5]);
        let a = l.base_change(2).unwrap().base_change(3).unwrap();
        let b = l.base_change(6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn extension_point_counts_match_base_change() {
        let l = lp(2, &[3, 8, 14, 23]);
        let counts = l.point_counts(8);
        for e in 1..=8u32 {
            let n1 = l.base_change(e).unwrap().rational_points();
            assert_eq!(&n1, &counts.values()[e as usize - 1], "e={e}");
        }
    }

    #[test]
    fn place_count_examples() {
        let pc = PointCounts::new(field(2), 1, big(&[3, 9]));
        assert_eq!(pc.place_counts().unwrap(), big(&[3, 3]));
        let pc = PointCounts::new(field(2), 4, big(&[6, 12]));
        assert_eq!(pc.place_counts().unwrap(), big(&[6, 3]));
        let pc = PointCounts::new(field(2), 1, big(&[1, 1]));
        assert_eq!(pc.place_counts().unwrap(), big(&[1, 0]));
    }

    #[test]
    fn place_counts_reject_non_integral() {
        let pc = PointCounts::new(field(2), 1, big(&[3, 10]));
        assert_eq!(
            pc.place_counts().unwrap_err(),
            Error::NonIntegralPlaceCount { d: 2 }
        );
    }

    #[test]
    fn weil_magnitude_bound() {
        assert!(lp(2, &[3, 8, 14, 23]).power_sums(8).within_weil_bound());
        assert!(lp(5, &[10, 47, 132]).power_sums(6).within_weil_bound());
        // a_1 = 3 over q = 2 is not Weil: p_1^2 = 9 > 4q = 8
        assert!(!lp(2, &[3]).power_sums(2).within_weil_bound());
    }

    #[test]
    fn moebius_small_values() {
        let expected: [i8; 12] = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(moebius(i + 1), m, "n={}", i + 1);
        }
    }
}
