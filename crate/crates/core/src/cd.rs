//! Composition algebras R, C, H, O via Cayley–Dickson doubling.
//!
//! An element of level `k` has `2^k` coordinates. Level `k + 1` pairs two
//! level-`k` elements with the product
//!
//! ```text
//! (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c))
//! ```
//!
//! and conjugation `conj(a, b) = (conj(a), -b)`. Over Q(i) scalars the same
//! structure constants give the complexified algebras (O_C and friends);
//! conjugation stays Q(i)-linear.

use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::scalar::{Field, Scalar};

pub const MAX_LEVEL: u8 = 3;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CDElement {
    level: u8,
    field: Field,
    coeffs: Vec<Scalar>,
}

impl std::fmt::Debug for CDElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CD{}[", self.level)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Deserialize)]
struct CDRepr {
    level: u8,
    #[serde(default)]
    field: Option<Field>,
    coeffs: Vec<Scalar>,
}

impl<'de> Deserialize<'de> for CDElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CDRepr::deserialize(d)?;
        let field = r.field.unwrap_or_else(|| {
            if r.coeffs.iter().all(Scalar::is_real) {
                Field::Rational
            } else {
                Field::Gaussian
            }
        });
        CDElement::new(r.level, field, r.coeffs).map_err(serde::de::Error::custom)
    }
}

impl CDElement {
    pub fn new(level: u8, field: Field, coeffs: Vec<Scalar>) -> Result<Self> {
        if level > MAX_LEVEL {
            return input(format!("level {level} exceeds {MAX_LEVEL}"));
        }
        if coeffs.len() != 1 << level {
            return input(format!(
                "level {level} needs {} coefficients, got {}",
                1 << level,
                coeffs.len()
            ));
        }
        if field == Field::Rational && !coeffs.iter().all(Scalar::is_real) {
            return input("non-real coefficient in an element over Q");
        }
        Ok(Self { level, field, coeffs })
    }

    pub fn zero(level: u8, field: Field) -> Self {
        Self { level, field, coeffs: vec![Scalar::zero(); 1 << level] }
    }

    pub fn one(level: u8, field: Field) -> Self {
        Self::from_scalar(level, field, Scalar::one())
    }

    pub fn from_scalar(level: u8, field: Field, s: Scalar) -> Self {
        let mut x = Self::zero(level, field);
        x.coeffs[0] = s;
        x
    }

    /// Basis unit `e_i` (`e_0 = 1`).
    pub fn basis(level: u8, field: Field, i: usize) -> Self {
        let mut x = Self::zero(level, field);
        x.coeffs[i] = Scalar::one();
        x
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// True when all imaginary CD-coefficients vanish.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    pub fn scalar_part(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let field = if k.is_real() { self.field } else { Field::Gaussian };
        Self { level: self.level, field, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Re-tag over a larger field, or embed into a higher level as the first half.
    pub fn promote(&self, level: u8, field: Field) -> Result<Self> {
        if level < self.level {
            return input("cannot demote a CD element");
        }
        if field == Field::Rational && self.field == Field::Gaussian {
            return input("cannot restrict a Q(i) element to Q");
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << level, Scalar::zero());
        Ok(Self { level, field, coeffs })
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.level != o.level || self.field != o.field {
            return Err(Error::Input(format!(
                "CD operands differ: level {} over {} vs level {} over {}",
                self.level,
                self.field.name(),
                o.level,
                o.field.name()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(self.add_unchecked(o))
    }

    pub(crate) fn add_unchecked(&self, o: &Self) -> Self {
        Self {
            level: self.level,
            field: self.field,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, o: &Self) -> Self {
        Self {
            level: self.level,
            field: self.field,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Table-driven product; operands must already agree on level and field.
    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let (la, lb) = (coeff_lcm([self]), coeff_lcm([o]));
        let mut acc = vec![(BigInt::zero(), BigInt::zero()); self.coeffs.len()];
        mul_acc_int(&mut acc, &self.int_coeffs(&la), &o.int_coeffs(&lb));
        Self::from_int_coeffs(self.level, self.field, acc, &(la * lb))
    }

    /// Coefficients times `l`, which must clear every denominator.
    pub(crate) fn int_coeffs(&self, l: &BigInt) -> Vec<GaussInt> {
        let sc = |r: &BigRational| r.numer() * (l / r.denom());
        self.coeffs.iter().map(|c| (sc(&c.re), sc(&c.im))).collect()
    }

    pub(crate) fn from_int_coeffs(level: u8, field: Field, v: Vec<GaussInt>, den: &BigInt) -> Self {
        let coeffs = v
            .into_iter()
            .map(|(re, im)| Scalar::complex(BigRational::new(re, den.clone()), BigRational::new(im, den.clone())))
            .collect();
        Self { level, field, coeffs }
    }

    pub fn conjugate(&self) -> Self {
        conjugate(self)
    }

    pub fn norm_form(&self) -> Scalar {
        norm_form(self)
    }

    pub fn real_trace(&self) -> Scalar {
        real_trace(self)
    }
}

/// Product under the fixed Cayley–Dickson recursion.
pub(crate) type GaussInt = (BigInt, BigInt);

/// Lcm of all coefficient denominators.
pub(crate) fn coeff_lcm<'a>(xs: impl IntoIterator<Item = &'a CDElement>) -> BigInt {
    xs.into_iter()
        .flat_map(|x| x.coeffs.iter().flat_map(|c| [c.re.denom(), c.im.denom()]))
        .fold(BigInt::one(), |acc, d| acc.lcm(d))
}

/// `acc += a b` on integer coefficient vectors, via the product table.
pub(crate) fn mul_acc_int(acc: &mut [GaussInt], a: &[GaussInt], b: &[GaussInt]) {
    let table = product_table();
    for (i, x) in a.iter().enumerate() {
        if x.0.is_zero() && x.1.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.0.is_zero() && y.1.is_zero() {
                continue;
            }
            let (sign, k) = table[i][j];
            let mut re = &x.0 * &y.0;
            let mut im = BigInt::zero();
            if !x.1.is_zero() || !y.1.is_zero() {
                re -= &x.1 * &y.1;
                im = &x.0 * &y.1 + &x.1 * &y.0;
            }
            if sign > 0 {
                acc[k].0 += re;
                acc[k].1 += im;
            } else {
                acc[k].0 -= re;
                acc[k].1 -= im;
            }
        }
    }
}

pub fn cd_multiply(x: &CDElement, y: &CDElement) -> Result<CDElement> {
    x.check_compatible(y)?;
    Ok(x.mul_unchecked(y))
}

pub fn conjugate(x: &CDElement) -> CDElement {
    let coeffs = x
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { c.clone() } else { -c })
        .collect();
    CDElement { level: x.level, field: x.field, coeffs }
}

/// `N(x)`, the scalar part of `x * conj(x)`: the sum of squared coordinates.
pub fn norm_form(x: &CDElement) -> Scalar {
    x.coeffs.iter().map(|c| c * c).sum()
}

/// `t(x) = x + conj(x)`, i.e. twice the scalar part.
pub fn real_trace(x: &CDElement) -> Scalar {
    &x.coeffs[0] + &x.coeffs[0]
}

/// Direct evaluation of the doubling formula on coordinate slices. This is the
/// definition; [`cd_multiply`] runs on the basis table derived from it.
pub fn recursive_multiply(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let conj = |v: &[Scalar]| -> Vec<Scalar> {
        v.iter().enumerate().map(|(i, s)| if i == 0 { s.clone() } else { -s }).collect()
    };
    let ac = recursive_multiply(a, c);
    let dbar_b = recursive_multiply(&conj(d), b);
    let da = recursive_multiply(d, a);
    let b_cbar = recursive_multiply(b, &conj(c));
    let mut out = Vec::with_capacity(n);
    out.extend(ac.iter().zip(&dbar_b).map(|(p, q)| p - q));
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}

/// `table[i][j] = (sign, k)` with `e_i e_j = sign * e_k` at level 3. Lower
/// levels are the leading sub-blocks, since `(a,0)(c,0) = (ac,0)`.
pub fn product_table() -> &'static [[(i8, usize); 8]; 8] {
    static TABLE: OnceLock<[[(i8, usize); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i8, 0usize); 8]; 8];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut ei = vec![Scalar::zero(); 8];
                let mut ej = vec![Scalar::zero(); 8];
                ei[i] = Scalar::one();
                ej[j] = Scalar::one();
                let p = recursive_multiply(&ei, &ej);
                let (k, v) = p
                    .iter()
                    .enumerate()
                    .find(|(_, s)| !s.is_zero())
                    .expect("basis product is nonzero");
                let sign = if v.is_one() { 1 } else { -1 };
                *cell = (sign, k);
            }
        }
        t
    })
}

impl Add for &CDElement {
    type Output = CDElement;
    /// Panics on level/field mismatch; see [`CDElement::try_add`].
    fn add(self, o: &CDElement) -> CDElement {
        self.try_add(o).expect("CD addition operands differ")
    }
}

impl Sub for &CDElement {
    type Output = CDElement;
    fn sub(self, o: &CDElement) -> CDElement {
        self.check_compatible(o).expect("CD subtraction operands differ");
        self.sub_unchecked(o)
    }
}

impl Neg for &CDElement {
    type Output = CDElement;
    fn neg(self) -> CDElement {
        CDElement { level: self.level, field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(level: u8, i: usize) -> CDElement {
        CDElement::basis(level, Field::Rational, i)
    }

    #[test]
    fn quaternion_table_is_frozen() {
        // e_i e_j at level 2, derived by hand from the doubling formula.
        // (i, j) -> (sign, k)
        let expected = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let p = cd_multiply(&e(2, i), &e(2, j)).unwrap();
                let (s, k) = expected[i][j];
                assert_eq!(p, e(2, k).scale(&Scalar::from_int(s)), "e{i} e{j}");
            }
        }
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        for level in 1..=3u8 {
            for i in 1..(1usize << level) {
                let sq = cd_multiply(&e(level, i), &e(level, i)).unwrap();
                assert_eq!(sq, CDElement::from_scalar(level, Field::Rational, Scalar::from_int(-1)));
            }
        }
    }

    #[test]
    fn one_is_a_unit() {
        let x = CDElement::new(
            3,
            Field::Gaussian,
            (0..8).map(|k| Scalar::gaussian(k, 1 - k)).collect(),
        )
        .unwrap();
        let one = CDElement::one(3, Field::Gaussian);
        assert_eq!(cd_multiply(&one, &x).unwrap(), x);
        assert_eq!(cd_multiply(&x, &one).unwrap(), x);
    }

    #[test]
    fn octonion_associator_counterexample() {
        // (e1 e2) e4 = e7 but e1 (e2 e4) = -e7.
        let lhs = cd_multiply(&cd_multiply(&e(3, 1), &e(3, 2)).unwrap(), &e(3, 4)).unwrap();
        let rhs = cd_multiply(&e(3, 1), &cd_multiply(&e(3, 2), &e(3, 4)).unwrap()).unwrap();
        assert_eq!(lhs, e(3, 7));
        assert_eq!(rhs, -&e(3, 7));
    }

    #[test]
    fn table_matches_recursion() {
        let x: Vec<Scalar> = (0..8).map(|k| Scalar::ratio(k - 3, k + 1)).collect();
        let y: Vec<Scalar> = (0..8).map(|k| Scalar::gaussian(2 - k, k)).collect();
        let xe = CDElement::new(3, Field::Gaussian, x.clone()).unwrap();
        let ye = CDElement::new(3, Field::Gaussian, y.clone()).unwrap();
        assert_eq!(cd_multiply(&xe, &ye).unwrap().coeffs(), recursive_multiply(&x, &y).as_slice());
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        assert!(cd_multiply(&e(2, 1), &e(3, 1)).is_err());
        let g = CDElement::basis(2, Field::Gaussian, 1);
        assert!(cd_multiply(&e(2, 1), &g).is_err());
        assert!(CDElement::new(2, Field::Rational, vec![Scalar::zero(); 3]).is_err());
        assert!(CDElement::new(4, Field::Rational, vec![Scalar::zero(); 16]).is_err());
    }

    #[test]
    fn conjugation_norm_trace_examples() {
        assert_eq!(CDElement::one(3, Field::Rational).conjugate(), CDElement::one(3, Field::Rational));
        assert_eq!(e(3, 5).conjugate(), -&e(3, 5));
        assert_eq!(CDElement::zero(3, Field::Rational).norm_form(), Scalar::zero());
        assert_eq!((&e(2, 1) + &e(2, 2)).norm_form(), Scalar::from_int(2));
        assert_eq!(CDElement::one(3, Field::Rational).real_trace(), Scalar::from_int(2));
        assert_eq!(e(3, 7).real_trace(), Scalar::zero());
    }

    #[test]
    fn json_shape() {
        let x = e(1, 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"level":1,"field":"Q","coeffs":[{"re":"0/1","im":"0/1"},{"re":"1/1","im":"0/1"}]}"#
        );
        let back: CDElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let untagged: CDElement =
            serde_json::from_str(r#"{"level":0,"coeffs":[{"re":"1","im":"2"}]}"#).unwrap();
        assert_eq!(untagged.field(), Field::Gaussian);
    }
}
