//! Hermitian matrix Jordan algebras `H_n(K)` and their complexifications.
//!
//! The degree-3 machinery (sharp, generic determinant, rank) is defined from
//! the Jordan product and the trace alone:
//!
//! ```text
//! x# = x^2 - t(x) x + s(x) I,     s(x) = (t(x)^2 - t(x∘x)) / 2
//! det(x) = t(x# ∘ x) / 3
//! ```
//!
//! so no octonion monomial ordering has to be chosen by hand. For the
//! complexified algebras (Q(i) scalars) the rank is defined through the same
//! sharp/determinant characterization, which extends the eigenvalue count of
//! the euclidean case.

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cd::{coeff_lcm, mul_acc_int, CDElement, GaussInt, MAX_LEVEL};
use crate::error::{input, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JordanElement {
    n: usize,
    level: u8,
    field: Field,
    /// Row-major `n x n`.
    entries: Vec<CDElement>,
}

impl std::fmt::Debug for JordanElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "H_{}({}) [", self.n, algebra_name(self.level, self.field))?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", &self.entries[i * self.n..(i + 1) * self.n])?;
        }
        write!(f, "]")
    }
}

pub fn algebra_name(level: u8, field: Field) -> String {
    let base = ["R", "C", "H", "O"][level as usize];
    match field {
        Field::Rational => base.to_string(),
        Field::Gaussian => format!("{base}_C"),
    }
}

pub fn parse_algebra(name: &str) -> Result<(u8, Field)> {
    let (base, field) = match name.strip_suffix("_C") {
        Some(b) => (b, Field::Gaussian),
        None => (name, Field::Rational),
    };
    let level = match base {
        "R" => 0,
        "C" => 1,
        "H" => 2,
        "O" => 3,
        _ => return input(format!("unknown algebra {name:?}; expected R|C|H|O with optional _C")),
    };
    Ok((level, field))
}

impl JordanElement {
    /// Full `n x n` entry grid; must be hermitian with scalar diagonal.
    pub fn new(rows: Vec<Vec<CDElement>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return input("empty Jordan element");
        }
        let (level, field) = (rows[0][0].level(), rows[0][0].field());
        if level == MAX_LEVEL && n > 3 {
            return Err(Error::Unsupported(format!("H_{n}(O) is not a Jordan algebra")));
        }
        if rows.iter().any(|r| r.len() != n) {
            return input("Jordan element must be square");
        }
        if rows.iter().flatten().any(|e| e.level() != level || e.field() != field) {
            return input("mixed entry algebras in Jordan element");
        }
        for i in 0..n {
            if !rows[i][i].is_scalar() {
                return input(format!("diagonal entry ({i},{i}) is not a scalar"));
            }
            for j in i + 1..n {
                if rows[j][i] != rows[i][j].conjugate() {
                    return input(format!("entry ({j},{i}) is not the conjugate of ({i},{j})"));
                }
            }
        }
        Ok(Self { n, level, field, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds from the diagonal and strict upper triangle, row by row
    /// (`upper[i]` holds entries `(i, i..n)`).
    pub fn from_upper(upper: Vec<Vec<CDElement>>) -> Result<Self> {
        let n = upper.len();
        if n == 0 {
            return input("empty Jordan element");
        }
        let (level, field) = (upper[0][0].level(), upper[0][0].field());
        let mut rows = vec![vec![CDElement::zero(level, field); n]; n];
        for (i, row) in upper.into_iter().enumerate() {
            if row.len() != n - i {
                return input(format!("upper row {i} needs {} entries", n - i));
            }
            for (k, e) in row.into_iter().enumerate() {
                let j = i + k;
                rows[j][i] = e.conjugate();
                rows[i][j] = e;
            }
        }
        Self::new(rows)
    }

    pub fn zero(n: usize, level: u8, field: Field) -> Self {
        Self { n, level, field, entries: vec![CDElement::zero(level, field); n * n] }
    }

    pub fn identity(n: usize, level: u8, field: Field) -> Self {
        let mut x = Self::zero(n, level, field);
        for i in 0..n {
            x.entries[i * n + i] = CDElement::one(level, field);
        }
        x
    }

    pub fn diag(level: u8, field: Field, d: &[Scalar]) -> Self {
        let n = d.len();
        let mut x = Self::zero(n, level, field);
        for (i, s) in d.iter().enumerate() {
            x.entries[i * n + i] = CDElement::from_scalar(level, field, s.clone());
        }
        x
    }

    /// `v v*` for a column `v` of entries; hermitian by construction.
    pub fn outer_self(v: &[CDElement]) -> Result<Self> {
        let n = v.len();
        if n == 0 {
            return input("empty vector");
        }
        let mut rows = Vec::with_capacity(n);
        for a in v {
            let mut row = Vec::with_capacity(n);
            for b in v {
                row.push(crate::cd::cd_multiply(a, &b.conjugate())?);
            }
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn algebra(&self) -> String {
        algebra_name(self.level, self.field)
    }

    pub fn entry(&self, i: usize, j: usize) -> &CDElement {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CDElement::is_zero)
    }

    /// Coordinates in a fixed real basis: diagonal scalars, then the CD
    /// coefficients of each strictly-upper entry in row-major order.
    pub fn coordinates(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = (0..self.n).map(|i| self.entry(i, i).scalar_part().clone()).collect();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.extend(self.entry(i, j).coeffs().iter().cloned());
            }
        }
        out
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.n != o.n || self.level != o.level || self.field != o.field {
            return Err(Error::Input(format!(
                "Jordan operands differ: H_{}({}) vs H_{}({})",
                self.n,
                self.algebra(),
                o.n,
                o.algebra()
            )));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&CDElement) -> CDElement) -> Self {
        Self { n: self.n, level: self.level, field: self.field, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = self.map(|e| e.scale(k));
        if !k.is_real() {
            out.field = Field::Gaussian;
        }
        out
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(Self {
            n: self.n,
            level: self.level,
            field: self.field,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add_unchecked(b)).collect(),
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(Self {
            n: self.n,
            level: self.level,
            field: self.field,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub_unchecked(b)).collect(),
        })
    }

    /// Ordinary matrix product of the entry grids (not hermitian in general).
    /// Plain matrix product of the entry arrays, accumulated over Z[i]
    /// with one denominator per row of `self` and column of `o`.
    fn matmul(&self, o: &Self) -> Vec<CDElement> {
        let n = self.n;
        let rows: Vec<(BigInt, Vec<Vec<GaussInt>>)> = (0..n)
            .map(|i| {
                let l = coeff_lcm((0..n).map(|k| self.entry(i, k)));
                let ints = (0..n).map(|k| self.entry(i, k).int_coeffs(&l)).collect();
                (l, ints)
            })
            .collect();
        let cols: Vec<(BigInt, Vec<Vec<GaussInt>>)> = (0..n)
            .map(|j| {
                let l = coeff_lcm((0..n).map(|k| o.entry(k, j)));
                let ints = (0..n).map(|k| o.entry(k, j).int_coeffs(&l)).collect();
                (l, ints)
            })
            .collect();
        let dim = self.entry(0, 0).dim();
        let mut out = Vec::with_capacity(n * n);
        for (lr, a) in &rows {
            for (lc, b) in &cols {
                let mut acc = vec![(BigInt::zero(), BigInt::zero()); dim];
                for k in 0..n {
                    mul_acc_int(&mut acc, &a[k], &b[k]);
                }
                out.push(CDElement::from_int_coeffs(self.level, self.field, acc, &(lr * lc)));
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        Self { n: self.n, level: self.level, field: self.field, entries: self.matmul(self) }
    }

    pub fn power(&self, k: u32) -> Self {
        match k {
            0 => Self::identity(self.n, self.level, self.field),
            1 => self.clone(),
            _ => {
                let prev = self.power(k - 1);
                jordan_product(self, &prev).expect("same shape")
            }
        }
    }
}

impl Serialize for JordanElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            algebra: String,
            entries: Vec<Vec<&'a CDElement>>,
        }
        let entries = (0..self.n).map(|i| (i..self.n).map(|j| self.entry(i, j)).collect()).collect();
        Repr { n: self.n, algebra: self.algebra(), entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JordanElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            algebra: String,
            entries: Vec<Vec<CDElement>>,
        }
        let r = Repr::deserialize(d)?;
        let (level, field) = parse_algebra(&r.algebra).map_err(serde::de::Error::custom)?;
        if r.entries.len() != r.n {
            return Err(serde::de::Error::custom("entries must have n rows"));
        }
        let upper = r
            .entries
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.promote(level, field)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        JordanElement::from_upper(upper).map_err(serde::de::Error::custom)
    }
}

/// `x ∘ y = (xy + yx) / 2`.
pub fn jordan_product(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    x.check_same(y)?;
    let xy = x.matmul(y);
    let yx = y.matmul(x);
    let half = Scalar::ratio(1, 2);
    let entries = xy.iter().zip(&yx).map(|(a, b)| a.add_unchecked(b).scale(&half)).collect();
    Ok(JordanElement { n: x.n, level: x.level, field: x.field, entries })
}

pub fn jtrace(x: &JordanElement) -> Scalar {
    (0..x.n).map(|i| x.entry(i, i).scalar_part().clone()).sum()
}

/// Scalar part of `a b` without forming the product.
fn scalar_part_of_product(a: &CDElement, b: &CDElement) -> Scalar {
    let mut acc = a.coeff(0) * b.coeff(0);
    for k in 1..a.dim() {
        let p = a.coeff(k) * b.coeff(k);
        acc -= &p;
    }
    acc
}

/// `t(x ∘ y)`.
pub fn trace_form(x: &JordanElement, y: &JordanElement) -> Result<Scalar> {
    x.check_same(y)?;
    let mut acc = Scalar::zero();
    for i in 0..x.n {
        for k in 0..x.n {
            acc += &scalar_part_of_product(x.entry(i, k), y.entry(k, i));
        }
    }
    Ok(acc)
}

fn require_degree3(x: &JordanElement) -> Result<()> {
    if x.n != 3 {
        return Err(Error::Unsupported(format!("degree-3 operation on H_{}", x.n)));
    }
    Ok(())
}

/// The quadratic adjoint map.
pub fn sharp(x: &JordanElement) -> Result<JordanElement> {
    require_degree3(x)?;
    let t = jtrace(x);
    let sq = x.square();
    let s = (&(&t * &t) - &jtrace(&sq)).half();
    let id = JordanElement::identity(3, x.level, x.field);
    sq.try_sub(&x.scale(&t))?.try_add(&id.scale(&s))
}

/// Generic norm. Degree 3 uses `t(x# ∘ x)/3`; other sizes use Newton's
/// identities on the power traces `t(x^k)`, which is the same generic norm.
pub fn generic_det(x: &JordanElement) -> Result<Scalar> {
    if x.n == 3 {
        let xs = sharp(x)?;
        return Ok(&trace_form(&xs, x)? * &Scalar::ratio(1, 3));
    }
    newton_det(x)
}

/// Generic norm from the power traces `p_k = t(x^k)` via Newton's identities.
pub fn newton_det(x: &JordanElement) -> Result<Scalar> {
    if x.level == MAX_LEVEL && x.n > 3 {
        return Err(Error::Unsupported("octonionic entries with n > 3".into()));
    }
    let n = x.n;
    let mut p = Vec::with_capacity(n + 1);
    p.push(Scalar::from_int(n as i64));
    let mut pw = x.clone();
    for k in 1..=n {
        if k > 1 {
            pw = jordan_product(x, &pw)?;
        }
        p.push(jtrace(&pw));
    }
    let mut e = vec![Scalar::one()];
    for k in 1..=n {
        let mut acc = Scalar::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(&acc * &Scalar::ratio(1, k as i64));
    }
    Ok(e.pop().expect("n >= 1"))
}

/// Closed cubic form `abc - aN(x23) - bN(x13) - cN(x12) + t((x12 x23) x31)`.
/// The trilinear argument order agrees with the ordinary determinant on
/// associative entries; kept as a cross-check for [`generic_det`].
pub fn freudenthal_det(x: &JordanElement) -> Result<Scalar> {
    require_degree3(x)?;
    let (a, b, c) = (x.entry(0, 0).scalar_part(), x.entry(1, 1).scalar_part(), x.entry(2, 2).scalar_part());
    let (x12, x13, x23) = (x.entry(0, 1), x.entry(0, 2), x.entry(1, 2));
    let x31 = x.entry(2, 0);
    let tri = x12.mul_unchecked(x23).mul_unchecked(x31).real_trace();
    let mut d = &(a * b) * c;
    d -= &(a * &x23.norm_form());
    d -= &(b * &x13.norm_form());
    d -= &(c * &x12.norm_form());
    d += &tri;
    Ok(d)
}

/// Jordan rank of a degree-3 element: 0 iff zero, 1 iff `x# = 0`,
/// 2 iff `det x = 0`, else 3.
pub fn jordan_rank3(x: &JordanElement) -> Result<usize> {
    require_degree3(x)?;
    if x.is_zero() {
        return Ok(0);
    }
    let xs = sharp(x)?;
    if xs.is_zero() {
        return Ok(1);
    }
    let det = &trace_form(&xs, x)? * &Scalar::ratio(1, 3);
    Ok(if det.is_zero() { 2 } else { 3 })
}

/// Complex matrix of an element with entries in C over Q (level <= 1,
/// rational scalars): `a + b e1 -> a + b i`.
pub fn to_complex_matrix(x: &JordanElement) -> Result<Matrix> {
    if x.level > 1 || x.field != Field::Rational {
        return input("only H_n(R) or H_n(C) over Q embeds into complex matrices");
    }
    Ok(Matrix::from_fn(x.n, x.n, |i, j| {
        let e = x.entry(i, j);
        let im = if e.dim() > 1 { e.coeff(1).re.clone() } else { Default::default() };
        Scalar::complex(e.coeff(0).re.clone(), im)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> JordanElement {
        let s: Vec<Scalar> = v.iter().map(|&k| Scalar::from_int(k)).collect();
        JordanElement::diag(3, Field::Rational, &s)
    }

    #[test]
    fn diagonal_examples() {
        let x = d(&[2, 3, 5]);
        assert_eq!(generic_det(&x).unwrap(), Scalar::from_int(30));
        assert_eq!(sharp(&x).unwrap(), d(&[15, 10, 6]));
        assert_eq!(jordan_product(&x, &d(&[7, 11, 13])).unwrap(), d(&[14, 33, 65]));
        let id = JordanElement::identity(3, 3, Field::Rational);
        assert_eq!(sharp(&id).unwrap(), id);
        assert_eq!(jordan_product(&x.try_add(&d(&[0, 0, 0])).unwrap(), &d(&[1, 1, 1])).unwrap(), x);
        assert_eq!(jtrace(&id), Scalar::from_int(3));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(jordan_rank3(&JordanElement::zero(3, 3, Field::Gaussian)).unwrap(), 0);
        assert_eq!(jordan_rank3(&JordanElement::identity(3, 3, Field::Gaussian)).unwrap(), 3);
        assert_eq!(jordan_rank3(&d(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(jordan_rank3(&d(&[0, 4, 0])).unwrap(), 1);
    }

    #[test]
    fn degree_errors() {
        let x = JordanElement::identity(2, 2, Field::Rational);
        assert!(matches!(sharp(&x), Err(Error::Unsupported(_))));
        assert!(matches!(jordan_rank3(&x), Err(Error::Unsupported(_))));
        let rows = vec![vec![CDElement::zero(3, Field::Rational); 4]; 4];
        assert!(matches!(JordanElement::new(rows), Err(Error::Unsupported(_))));
    }

    #[test]
    fn non_hermitian_input_rejected() {
        let e1 = CDElement::basis(1, Field::Rational, 1);
        let z = CDElement::zero(1, Field::Rational);
        let rows = vec![vec![z.clone(), e1.clone()], vec![e1, z]];
        assert!(JordanElement::new(rows).is_err());
    }

    #[test]
    fn h2_octonion_norm_via_newton() {
        // det [[a, z], [z*, b]] = ab - N(z)
        let z = CDElement::new(3, Field::Rational, (1..=8).map(Scalar::from_int).collect()).unwrap();
        let a = CDElement::from_scalar(3, Field::Rational, Scalar::from_int(50));
        let b = CDElement::from_scalar(3, Field::Rational, Scalar::from_int(7));
        let x = JordanElement::from_upper(vec![vec![a, z.clone()], vec![b]]).unwrap();
        assert_eq!(generic_det(&x).unwrap(), Scalar::from_int(350 - 204));
    }

    #[test]
    fn json_stores_upper_triangle() {
        let x = d(&[1, 2, 3]);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"n":3,"algebra":"O","entries":[["#));
        let back: JordanElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
