//! Cover invariants of unramified abelian covers: the quotient order
//! (Galois group order), the cover genus from the unramified
//! Riemann-Hurwitz formula, and the rational point count from split
//! points. Includes the constant-field-extension construction that
//! derives everything from one L-polynomial.

use crate::error::{Error, Result};
use crate::lpoly::LPolynomial;
use crate::weil::validate_weil;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Numeric invariants of one unramified abelian cover Y -> X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInvariants {
    /// m = j_order / h_order, the Galois group order |G|.
    pub quotient_order: BigInt,
    /// g_X, the genus of the base curve.
    pub base_genus: u32,
    /// g_Y = 1 + m (g_X - 1), unramified Riemann-Hurwitz.
    pub cover_genus: BigInt,
    /// Number of rational points of X totally split in Y.
    pub split_count: BigInt,
    /// N_Y = m * split_count: every split fiber contributes m points.
    pub cover_points: BigInt,
}

/// The general calculator: group orders and split count in, invariants
/// out. h_order must divide j_order exactly; the quotient is the
/// Galois group order.
pub fn cover_invariants(
    j_order: &BigInt,
    h_order: &BigInt,
    base_genus: u32,
    split_count: &BigInt,
) -> Result<CoverInvariants> {
    if !j_order.is_positive() || !h_order.is_positive() {
        return Err(Error::NonPositiveOrder {
            j_order: j_order.clone(),
            h_order: h_order.clone(),
        });
    }
    if base_genus < 1 {
        return Err(Error::ZeroGenus);
    }
    if split_count.is_negative() {
        return Err(Error::NegativeSplitCount {
            split_count: split_count.clone(),
        });
    }
    let (quotient, remainder) = num_integer::Integer::div_rem(j_order, h_order);
    if !remainder.is_zero() {
        return Err(Error::OrderNotDivisible {
            j_order: j_order.clone(),
            h_order: h_order.clone(),
        });
    }
    let cover_genus = BigInt::one() + &quotient * BigInt::from(base_genus - 1);
    let cover_points = &quotient * split_count;
    Ok(CoverInvariants {
        quotient_order: quotient,
        base_genus,
        cover_genus,
        split_count: split_count.clone(),
        cover_points,
    })
}

/// The constant-field-extension construction. Given the L-polynomial
/// of a curve X over a field of size r, builds the cover of the
/// base-changed curve over the quadratic extension (target field r^2)
/// whose subgroup is the full group of base-field-rational divisor
/// classes:
///
///   j_order = L_2(1) over r^2 (class number after base change),
///   h_order = L(1) over r,
///   split points = N_1 (the base-field-rational points of X),
///
/// so m = L_2(1)/L(1), which provably equals L(-1); both paths are
/// computed and cross-checked.
///
/// Preconditions: L passes Weil validation (functional equation and
/// root location; plausibility is the caller's policy since formally
/// valid non-curve inputs still satisfy the identities), N_1 >= 1
/// (a rational point must exist to split), and genus >= 1.
pub fn constant_field_cover(l: &LPolynomial) -> Result<CoverInvariants> {
    let report = validate_weil(l);
    if !report.weil_ok() {
        return Err(Error::NotWeilValid {
            reasons: report.failure_messages().join("; "),
        });
    }
    let split_count = l.rational_points();
    if split_count < BigInt::one() {
        return Err(Error::NoRationalPoint);
    }
    let h_order = l.class_number()?;
    let j_order = l.base_change(2)?.class_number()?;
    let invariants = cover_invariants(&j_order, &h_order, l.genus(), &split_count)?;

    // Independent path: m = L(-1), since prod(1 - a^2) / prod(1 - a)
    // is prod(1 + a). A mismatch can only be an arithmetic regression.
    let evaluated = l.evaluate(&BigInt::from(-1));
    if evaluated != invariants.quotient_order {
        return Err(Error::QuotientOrderMismatch {
            ratio: invariants.quotient_order.clone(),
            evaluated,
        });
    }
    Ok(invariants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSize;

    fn lp(q: u64, half: &[i64]) -> LPolynomial {
        let half: Vec<BigInt> = half.iter().map(|&x| BigInt::from(x)).collect();
        LPolynomial::from_half(FieldSize::new(q).unwrap(), half.len() as u32, &half).unwrap()
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn general_formula() {
        let inv = cover_invariants(&b(1639), &b(149), 4, &b(6)).unwrap();
        assert_eq!(inv.quotient_order, b(11));
        assert_eq!(inv.cover_genus, b(34));
        assert_eq!(inv.cover_points, b(66));
    }

    #[test]
    fn identity_cover() {
        let inv = cover_invariants(&b(360), &b(360), 7, &b(5)).unwrap();
        assert_eq!(inv.quotient_order, b(1));
        assert_eq!(inv.cover_genus, b(7));
        assert_eq!(inv.cover_points, b(5));
    }

    #[test]
    fn maximal_cover() {
        // trivial subgroup: m = j_order, the largest unramified
        // abelian cover with full rational splitting
        let inv = cover_invariants(&b(360), &b(1), 7, &b(5)).unwrap();
        assert_eq!(inv.quotient_order, b(360));
        assert_eq!(inv.cover_genus, b(1 + 360 * 6));
        assert_eq!(inv.cover_points, b(1800));
    }

    #[test]
    fn divisibility_enforced() {
        assert_eq!(
            cover_invariants(&b(10), &b(4), 3, &b(2)).unwrap_err(),
            Error::OrderNotDivisible {
                j_order: b(10),
                h_order: b(4)
            }
        );
    }

    #[test]
    fn rejects_non_positive_orders_and_negative_split() {
        assert!(matches!(
            cover_invariants(&b(0), &b(1), 2, &b(1)),
            Err(Error::NonPositiveOrder { .. })
        ));
        assert!(matches!(
            cover_invariants(&b(5), &b(-1), 2, &b(1)),
            Err(Error::NonPositiveOrder { .. })
        ));
        assert!(matches!(
            cover_invariants(&b(6), &b(3), 2, &b(-2)),
            Err(Error::NegativeSplitCount { .. })
        ));
    }

    #[test]
    fn genus_one_base_gives_genus_one_cover() {
        let inv = cover_invariants(&b(12), &b(3), 1, &b(5)).unwrap();
        assert_eq!(inv.cover_genus, b(1));
        assert_eq!(inv.cover_points, b(20));
    }

    #[test]
    fn all_eleven_table_rows() {
        // (q, half, |G|, g_Y, N_Y)
        let rows: [(u64, &[i64], i64, i64, i64); 11] = [
            (2, &[3, 8, 14, 23], 11, 34, 66),
            (2, &[4, 12, 26, 47, 72], 12, 49, 84),
            (3, &[8, 34, 96, 195], 9, 28, 108),
            (3, &[7, 26, 66, 129], 11, 34, 121),
            (3, &[7, 27, 71, 140], 12, 37, 132),
            (4, &[6, 21, 49], 19, 39, 209),
            (4, &[5, 15, 32], 23, 47, 230),
            (5, &[10, 47, 132], 16, 33, 256),
            (5, &[9, 39, 106], 20, 41, 300),
            (5, &[9, 40, 111], 21, 43, 315),
            (5, &[8, 31, 80], 24, 49, 336),
        ];
        for (q, half, m, gy, ny) in rows {
            let inv = constant_field_cover(&lp(q, half)).unwrap();
            assert_eq!(inv.quotient_order, b(m), "q={q} half={half:?}");
            assert_eq!(inv.cover_genus, b(gy), "q={q} half={half:?}");
            assert_eq!(inv.cover_points, b(ny), "q={q} half={half:?}");
        }
    }

    #[test]
    fn trick_requires_rational_point() {
        // Weil-valid genus-2 class over F_2 with N_1 = 3 + (a+b) = 0
        let l = LPolynomial::from_elliptic_product(FieldSize::new(2).unwrap(), &[-2, -1]).unwrap();
        assert_eq!(l.rational_points(), b(0));
        assert_eq!(
            constant_field_cover(&l).unwrap_err(),
            Error::NoRationalPoint
        );
    }

    #[test]
    fn trick_requires_weil_validity() {
        let l = lp(2, &[3]);
        assert!(matches!(
            constant_field_cover(&l),
            Err(Error::NotWeilValid { .. })
        ));
    }

    #[test]
    fn quotient_order_equals_evaluation_at_minus_one() {
        for (q, traces) in [
            (2u64, vec![1i64, -1, 2]),
            (3, vec![0, 2, -3]),
            (4, vec![3, 3]),
            (5, vec![-2, 4, 1]),
        ] {
            let l =
                LPolynomial::from_elliptic_product(FieldSize::new(q).unwrap(), &traces).unwrap();
            if l.rational_points() < b(1) {
                continue;
            }
            let inv = constant_field_cover(&l).unwrap();
            assert_eq!(inv.quotient_order, l.evaluate(&BigInt::from(-1)));
            // re-assert the output identities
            assert_eq!(
                inv.cover_genus,
                BigInt::one() + &inv.quotient_order * BigInt::from(inv.base_genus - 1)
            );
            assert_eq!(inv.cover_points, &inv.quotient_order * &inv.split_count);
        }
    }

    #[test]
    fn maximal_quotient_dominates() {
        // among all valid h_order choices dividing j_order, h = 1
        // maximizes genus and point count
        let j = b(360);
        let best = cover_invariants(&j, &b(1), 5, &b(4)).unwrap();
        for h in [2i64, 3, 4, 5, 6, 8, 9, 10, 12, 360] {
            let inv = cover_invariants(&j, &b(h), 5, &b(4)).unwrap();
            assert!(inv.cover_genus <= best.cover_genus);
            assert!(inv.cover_points <= best.cover_points);
        }
    }
}
