//! Isogeny-class labels "g.q.c1_c2_..._cg". Each code is base 26 with
//! digits a=0..z=25, most significant first; a code of two or more
//! characters starting with 'a' denotes a negative value (strip the
//! leading 'a', decode, negate). The encoder is canonical: it never
//! emits a redundant leading 'a' on a nonnegative code.

use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::lpoly::LPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// A parsed label: genus, base field, and the leading half
/// a_1..a_g of the L-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsogenyClassLabel {
    genus: u32,
    field: FieldSize,
    half: Vec<BigInt>,
}

impl IsogenyClassLabel {
    pub fn new(field: FieldSize, genus: u32, half: Vec<BigInt>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if half.len() != genus as usize {
            return Err(Error::LabelArity {
                declared: genus as usize,
                got: half.len(),
            });
        }
        Ok(IsogenyClassLabel { genus, field, half })
    }

    /// Decodes the textual form. Lenient about a redundant leading 'a'
    /// (e.g. "aa" for zero) so that near-canonical data still parses;
    /// the dataset layer rejects non-canonical text where it matters.
    pub fn parse(text: &str) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedLabel {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut parts = text.split('.');
        let (genus_part, field_part, codes_part) =
            match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some(g), Some(q), Some(c), None) => (g, q, c),
                _ => return Err(malformed("expected three dot-separated sections")),
            };
        let genus: u32 = genus_part
            .parse()
            .map_err(|_| malformed("genus is not a positive integer"))?;
        if genus == 0 {
            return Err(malformed("genus must be at least 1"));
        }
        let q: u64 = field_part
            .parse()
            .map_err(|_| malformed("field size is not a positive integer"))?;
        let field = FieldSize::new(q)?;
        let codes: Vec<&str> = codes_part.split('_').collect();
        if codes.len() != genus as usize {
            return Err(Error::LabelArity {
                declared: genus as usize,
                got: codes.len(),
            });
        }
        let mut half = Vec::with_capacity(codes.len());
        for code in codes {
            half.push(decode_code(code).map_err(|reason| malformed(&reason))?);
        }
        Ok(IsogenyClassLabel { genus, field, half })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn field(&self) -> FieldSize {
        self.field
    }

    pub fn half_coefficients(&self) -> &[BigInt] {
        &self.half
    }

    /// The full L-polynomial named by this label.
    pub fn lpolynomial(&self) -> Result<LPolynomial> {
        LPolynomial::from_half(self.field, self.genus, &self.half)
    }
}

impl fmt::Display for IsogenyClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.genus, self.field.q())?;
        for (i, c) in self.half.iter().enumerate() {
            let sep = if i == 0 { '.' } else { '_' };
            write!(f, "{sep}{}", encode_code(c))?;
        }
        Ok(())
    }
}

fn decode_code(code: &str) -> std::result::Result<BigInt, String> {
    if code.is_empty() {
        return Err("empty coefficient code".to_string());
    }
    if let Some(c) = code.chars().find(|c| !c.is_ascii_lowercase()) {
        return Err(format!("invalid character {c:?} in coefficient code"));
    }
    let bytes = code.as_bytes();
    let (digits, negative) = if bytes.len() >= 2 && bytes[0] == b'a' {
        (&bytes[1..], true)
    } else {
        (bytes, false)
    };
    let mut value = BigInt::zero();
    for &b in digits {
        value = value * 26 + BigInt::from(b - b'a');
    }
    Ok(if negative { -value } else { value })
}

fn encode_code(value: &BigInt) -> String {
    let mut digits = Vec::new();
    let mut v = value.abs();
    let base = BigInt::from(26);
    loop {
        let (quot, rem) = v.div_rem(&base);
        let d: u8 = rem.try_into().expect("remainder below 26");
        digits.push(b'a' + d);
        v = quot;
        if v.is_zero() {
            break;
        }
    }
    if value.is_negative() {
        digits.push(b'a');
    }
    digits.reverse();
    String::from_utf8(digits).expect("ascii digits")
}
