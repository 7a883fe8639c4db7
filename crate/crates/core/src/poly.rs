//! Minimal dense univariate polynomial arithmetic, just enough for the
//! real-root certification. Coefficients ascend by degree; the zero
//! polynomial is the empty vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim<T: Zero>(coeffs: &mut Vec<T>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

pub(crate) fn degree<T>(coeffs: &[T]) -> Option<usize> {
    if coeffs.is_empty() {
        None
    } else {
        Some(coeffs.len() - 1)
    }
}

/// Synthetic division of p by (x - r). Returns the quotient if the
/// remainder is zero.
pub(crate) fn divide_by_linear_exact(p: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    let mut quotient = vec![BigInt::zero(); p.len() - 1];
    let mut carry = BigInt::zero();
    for i in (0..p.len()).rev() {
        let value = &p[i] + &carry * r;
        if i == 0 {
            if value.is_zero() {
                let mut q = quotient;
                trim(&mut q);
                return Some(q);
            }
            return None;
        }
        quotient[i - 1] = value.clone();
        carry = value;
    }
    unreachable!()
}

/// Exact division of p by a monic divisor d. Returns None if any
/// remainder coefficient is nonzero.
pub(crate) fn divide_by_monic_exact(p: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = degree(d)?;
    assert!(d[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = p.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    let pd = rem.len() - 1;
    if pd < dd {
        return None;
    }
    let mut quotient = vec![BigInt::zero(); pd - dd + 1];
    for k in (0..quotient.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quotient[k] = c.clone();
        for (j, dj) in d.iter().enumerate() {
            let idx = k + j;
            rem[idx] = &rem[idx] - &c * dj;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        trim(&mut quotient);
        Some(quotient)
    } else {
        None
    }
}

pub(crate) fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

/// Remainder of the Euclidean division a mod b over the rationals.
pub(crate) fn remainder(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<BigRational> = a.to_vec();
    trim(&mut rem);
    while degree(&rem).is_some_and(|dr| dr >= db) {
        let dr = rem.len() - 1;
        let factor = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = &rem[shift + j] - &factor * bj;
        }
        // the leading term cancels by construction
        rem.pop();
        trim(&mut rem);
    }
    rem
}

/// Monic gcd over the rationals.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x: Vec<BigRational> = a.to_vec();
    let mut y: Vec<BigRational> = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = remainder(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let lead = x[d].clone();
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

/// Quotient of the exact division a / b over the rationals (panics if
/// the division is not exact; callers divide by a known factor).
pub(crate) fn divide_exact_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<BigRational> = a.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Vec::new();
    }
    let da = rem.len() - 1;
    assert!(da >= db, "division is not exact");
    let mut quotient = vec![BigRational::zero(); da - db + 1];
    for k in (0..quotient.len()).rev() {
        let c = &rem[k + db] / &lead;
        quotient[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &c * bj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division is not exact");
    trim(&mut quotient);
    quotient
}

/// Sign of p evaluated at the point s*sqrt(square), where s is +1 or -1
/// and `square` is a nonnegative integer (the point may be irrational;
/// the sign is still exact). Returns -1, 0, or 1.
pub(crate) fn sign_at_sqrt(p: &[BigRational], square: &BigInt, s: i8) -> i8 {
    // Split p(x) = u(x^2) + x*v(x^2) and evaluate both parts at `square`.
    let sq = BigRational::from_integer(square.clone());
    let mut even = BigRational::zero();
    let mut odd = BigRational::zero();
    let mut power = BigRational::one();
    for pair in p.chunks(2) {
        even += &pair[0] * &power;
        if let Some(c1) = pair.get(1) {
            odd += c1 * &power;
        }
        power *= &sq;
    }
    // p(s*sqrt(square)) = even + s*odd*sqrt(square)
    let odd = if s < 0 { -odd } else { odd };
    match (sign(&even), sign(&odd)) {
        (0, 0) => 0,
        (se, 0) => se,
        (0, so) => so,
        (se, so) if se == so => se,
        (se, so) => {
            // compare |even| against |odd|*sqrt(square) by squaring
            let lhs = &even * &even;
            let rhs = &odd * &odd * &sq;
            match lhs.cmp(&rhs) {
                std::cmp::Ordering::Greater => se,
                std::cmp::Ordering::Less => so,
                std::cmp::Ordering::Equal => 0,
            }
        }
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut out);
        out
    }

    fn qp(v: &[i64]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        trim(&mut out);
        out
    }

    #[test]
    fn linear_division() {
        // x^2 - 4 = (x-2)(x+2)
        let p = zp(&[-4, 0, 1]);
        let q = divide_by_linear_exact(&p, &BigInt::from(2)).unwrap();
        assert_eq!(q, zp(&[2, 1]));
        assert!(divide_by_linear_exact(&p, &BigInt::from(3)).is_none());
    }

    #[test]
    fn monic_division() {
        // (x^2-8)(x^2+x+1)
        let p = zp(&[-8, -8, -7, 1, 1]);
        let q = divide_by_monic_exact(&p, &zp(&[-8, 0, 1])).unwrap();
        assert_eq!(q, zp(&[1, 1, 1]));
        assert!(divide_by_monic_exact(&zp(&[1, 0, 1]), &zp(&[-8, 0, 1])).is_none());
    }

    #[test]
    fn gcd_finds_common_factor() {
        // gcd((x-1)(x-2), (x-1)(x-3)) = x-1
        let a = qp(&[2, -3, 1]);
        let b = qp(&[3, -4, 1]);
        assert_eq!(gcd(&a, &b), qp(&[-1, 1]));
    }

    #[test]
    fn sign_at_quadratic_points() {
        // p(x) = x - 2 at sqrt(8) = 2.83: positive; at -sqrt(8): negative
        let p = qp(&[-2, 1]);
        assert_eq!(sign_at_sqrt(&p, &BigInt::from(8), 1), 1);
        assert_eq!(sign_at_sqrt(&p, &BigInt::from(8), -1), -1);
        // p(x) = x - 3 at sqrt(8): negative
        assert_eq!(sign_at_sqrt(&qp(&[-3, 1]), &BigInt::from(8), 1), -1);
        // x^2 - 8 vanishes at both
        let v = qp(&[-8, 0, 1]);
        assert_eq!(sign_at_sqrt(&v, &BigInt::from(8), 1), 0);
        assert_eq!(sign_at_sqrt(&v, &BigInt::from(8), -1), 0);
        // rational point: sqrt(16) = 4
        assert_eq!(sign_at_sqrt(&qp(&[-4, 1]), &BigInt::from(16), 1), 0);
        assert_eq!(sign_at_sqrt(&qp(&[-5, 1]), &BigInt::from(16), 1), -1);
    }
}
