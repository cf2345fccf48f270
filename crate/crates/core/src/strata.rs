//! Jordan-rank strata of the four matrix models `Sym(r)`, `Mat(q,p)`,
//! `Skew(n)` and the 27-dimensional exceptional model `H_3(O_C)`.
//!
//! Dimensions of stratum closures are measured, not looked up: the closure of
//! the rank-`s` stratum is parameterized by `s`-fold sums of rank-one maps,
//! the polynomial map is differentiated symbolically and its Jacobian rank is
//! taken at random Gaussian-integer points. Generic rank is the maximum over
//! a few points, so a degenerate draw can only underestimate.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cd::{product_table, CDElement};
use crate::error::{input, Error, Result};
use crate::jordan::{generic_det, jordan_rank3, sharp, JordanElement};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::rng::{rand_int_scalar, rand_nonzero_scalar, rand_scalar};
use crate::scalar::{Field, Scalar};

const OCT: usize = 8;
const SAMPLE_RETRIES: usize = 8;
pub const JACOBIAN_POINTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PSpaceModel {
    Sym { r: usize },
    Mat { q: usize, p: usize },
    Skew { n: usize },
    Exc27,
}

impl PSpaceModel {
    pub fn sym(r: usize) -> Result<Self> {
        Self::Sym { r }.validated()
    }

    pub fn mat(q: usize, p: usize) -> Result<Self> {
        Self::Mat { q, p }.validated()
    }

    pub fn skew(n: usize) -> Result<Self> {
        Self::Skew { n }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Sym { r } => r >= 1,
            Self::Mat { q, p } => q >= 1 && p >= 1,
            Self::Skew { n } => n >= 2,
            Self::Exc27 => true,
        };
        if ok {
            Ok(self)
        } else {
            input(format!("model parameters out of range: {self}"))
        }
    }

    /// Largest Jordan rank occurring in the model.
    pub fn max_rank(&self) -> usize {
        match *self {
            Self::Sym { r } => r,
            Self::Mat { q, p } => q.min(p),
            Self::Skew { n } => n / 2,
            Self::Exc27 => 3,
        }
    }

    /// Complex dimension of the model (the affine cone).
    pub fn ambient_dim(&self) -> usize {
        match *self {
            Self::Sym { r } => r * (r + 1) / 2,
            Self::Mat { q, p } => q * p,
            Self::Skew { n } => n * (n - 1) / 2,
            Self::Exc27 => 27,
        }
    }

    /// Dimension `m` of the projective space `P(model)`.
    pub fn proj_ambient_dim(&self) -> usize {
        self.ambient_dim() - 1
    }

    /// Whether the model carries a relative invariant of degree `max_rank`
    /// (square symmetric/rectangular, even skew, exceptional).
    pub fn is_regular(&self) -> bool {
        match *self {
            Self::Sym { .. } | Self::Exc27 => true,
            Self::Mat { q, p } => q == p,
            Self::Skew { n } => n % 2 == 0,
        }
    }

    pub const GRAMMAR: &'static str = "sym:R | mat:Q,P | skew:N | exc27";
}

impl fmt::Display for PSpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Sym { r } => write!(f, "sym:{r}"),
            Self::Mat { q, p } => write!(f, "mat:{q},{p}"),
            Self::Skew { n } => write!(f, "skew:{n}"),
            Self::Exc27 => write!(f, "exc27"),
        }
    }
}

fn parse_usize_list(s: &str, n: usize, grammar: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return input(format!("bad selector parameters {s:?}; expected {grammar}"));
    }
    parts
        .iter()
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad number {p:?}; expected {grammar}"))))
        .collect()
}

pub(crate) fn split_selector<'a>(s: &'a str, grammar: &str) -> Result<(&'a str, Option<&'a str>)> {
    let s = s.trim();
    if s.is_empty() {
        return input(format!("empty selector; expected {grammar}"));
    }
    Ok(match s.split_once(':') {
        Some((k, rest)) => (k, Some(rest)),
        None => (s, None),
    })
}

impl FromStr for PSpaceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let g = Self::GRAMMAR;
        let (kind, rest) = split_selector(s, g)?;
        let args = |n| parse_usize_list(rest.unwrap_or(""), n, g);
        match (kind.to_ascii_lowercase().as_str(), rest) {
            ("sym", Some(_)) => Self::sym(args(1)?[0]),
            ("mat", Some(_)) => {
                let a = args(2)?;
                Self::mat(a[0], a[1])
            }
            ("skew", Some(_)) => Self::skew(args(1)?[0]),
            ("exc27", None) => Ok(Self::Exc27),
            _ => input(format!("unknown model selector {s:?}; expected {g}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coords {
    Matrix(Matrix),
    Jordan(JordanElement),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumPoint {
    model: PSpaceModel,
    coords: Coords,
    cached_rank: Option<usize>,
}

fn check_matrix(model: PSpaceModel, m: &Matrix) -> Result<()> {
    let (rows, cols) = match model {
        PSpaceModel::Sym { r } => (r, r),
        PSpaceModel::Mat { q, p } => (q, p),
        PSpaceModel::Skew { n } => (n, n),
        PSpaceModel::Exc27 => return input("exc27 points carry a Jordan element, not a matrix"),
    };
    if m.shape() != (rows, cols) {
        return input(format!("{model} expects a {rows}x{cols} matrix, got {}x{}", m.rows(), m.cols()));
    }
    match model {
        PSpaceModel::Sym { .. } if !m.is_symmetric() => input("sym point is not symmetric"),
        PSpaceModel::Skew { .. } if !m.is_skew() => input("skew point is not skew-symmetric"),
        _ => Ok(()),
    }
}

impl StratumPoint {
    pub fn from_matrix(model: PSpaceModel, m: Matrix) -> Result<Self> {
        check_matrix(model, &m)?;
        Ok(Self { model, coords: Coords::Matrix(m), cached_rank: None })
    }

    pub fn from_jordan(x: JordanElement) -> Result<Self> {
        if x.n() != 3 || x.level() != 3 {
            return input("exc27 points are 3x3 hermitian octonion matrices");
        }
        Ok(Self { model: PSpaceModel::Exc27, coords: Coords::Jordan(x), cached_rank: None })
    }

    pub fn zero(model: PSpaceModel) -> Self {
        let coords = match model {
            PSpaceModel::Sym { r } => Coords::Matrix(Matrix::zeros(r, r)),
            PSpaceModel::Mat { q, p } => Coords::Matrix(Matrix::zeros(q, p)),
            PSpaceModel::Skew { n } => Coords::Matrix(Matrix::zeros(n, n)),
            PSpaceModel::Exc27 => Coords::Jordan(JordanElement::zero(3, 3, Field::Gaussian)),
        };
        Self { model, coords, cached_rank: Some(0) }
    }

    pub fn model(&self) -> PSpaceModel {
        self.model
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn matrix(&self) -> Option<&Matrix> {
        match &self.coords {
            Coords::Matrix(m) => Some(m),
            Coords::Jordan(_) => None,
        }
    }

    pub fn jordan(&self) -> Option<&JordanElement> {
        match &self.coords {
            Coords::Jordan(x) => Some(x),
            Coords::Matrix(_) => None,
        }
    }

    pub fn cached_rank(&self) -> Option<usize> {
        self.cached_rank
    }

    /// Computes and caches the rank.
    pub fn with_rank(mut self) -> Result<Self> {
        self.cached_rank = Some(rank_of(&self)?);
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Matrix(m) => m.is_zero(),
            Coords::Jordan(x) => x.is_zero(),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.model != o.model {
            return input(format!("cannot add points of {} and {}", self.model, o.model));
        }
        let coords = match (&self.coords, &o.coords) {
            (Coords::Matrix(a), Coords::Matrix(b)) => Coords::Matrix(a.try_add(b)?),
            (Coords::Jordan(a), Coords::Jordan(b)) => {
                let f = if a.field() == b.field() { a.field() } else { Field::Gaussian };
                Coords::Jordan(promote_jordan(a, f)?.try_add(&promote_jordan(b, f)?)?)
            }
            _ => return Err(Error::Internal("coordinate kinds disagree with model".into())),
        };
        Ok(Self { model: self.model, coords, cached_rank: None })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let coords = match &self.coords {
            Coords::Matrix(m) => Coords::Matrix(m.scale(k)),
            Coords::Jordan(x) => Coords::Jordan(x.scale(k)),
        };
        let cached_rank = if k.is_zero() { Some(0) } else { self.cached_rank };
        Self { model: self.model, coords, cached_rank }
    }

    /// Flat coordinate vector in the model's fixed basis.
    pub fn coordinate_vector(&self) -> Vec<Scalar> {
        match (&self.coords, self.model) {
            (Coords::Matrix(m), PSpaceModel::Sym { r }) => {
                (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect()
            }
            (Coords::Matrix(m), PSpaceModel::Skew { n }) => {
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect()
            }
            (Coords::Matrix(m), _) => m.to_rows().into_iter().flatten().collect(),
            (Coords::Jordan(x), _) => x.coordinates(),
        }
    }
}

fn promote_jordan(x: &JordanElement, field: Field) -> Result<JordanElement> {
    if x.field() == field {
        return Ok(x.clone());
    }
    let upper = (0..3).map(|i| (i..3).map(|j| x.entry(i, j).promote(3, field)).collect()).collect::<Result<Vec<_>>>()?;
    JordanElement::from_upper(upper)
}

impl Serialize for StratumPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("model", &self.model)?;
        match &self.coords {
            Coords::Matrix(x) => m.serialize_entry("coords", x)?,
            Coords::Jordan(x) => m.serialize_entry("coords", x)?,
        }
        if let Some(r) = self.cached_rank {
            m.serialize_entry("rank", &r)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for StratumPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            model: PSpaceModel,
            coords: serde_json::Value,
            #[serde(default)]
            rank: Option<usize>,
        }
        let r = Repr::deserialize(d)?;
        let model = r.model.validated().map_err(D::Error::custom)?;
        let pt = match model {
            PSpaceModel::Exc27 => {
                let x: JordanElement = serde_json::from_value(r.coords).map_err(D::Error::custom)?;
                StratumPoint::from_jordan(x)
            }
            _ => {
                let m: Matrix = serde_json::from_value(r.coords).map_err(D::Error::custom)?;
                StratumPoint::from_matrix(model, m)
            }
        }
        .map_err(D::Error::custom)?;
        if let Some(claimed) = r.rank {
            let actual = rank_of(&pt).map_err(D::Error::custom)?;
            if claimed != actual {
                return Err(D::Error::custom(format!("stated rank {claimed} but the point has rank {actual}")));
            }
        }
        Ok(StratumPoint { cached_rank: r.rank, ..pt })
    }
}

/// Jordan rank: matrix rank for Sym/Mat, half the matrix rank for Skew,
/// the degree-3 characterization for the exceptional model.
pub fn rank_of(x: &StratumPoint) -> Result<usize> {
    match (&x.coords, x.model) {
        (Coords::Jordan(j), _) => jordan_rank3(j),
        (Coords::Matrix(m), PSpaceModel::Skew { .. }) => {
            let r = m.rank();
            if r % 2 == 1 {
                return Err(Error::Internal(format!("skew matrix of odd rank {r}")));
            }
            Ok(r / 2)
        }
        (Coords::Matrix(m), _) => Ok(m.rank()),
    }
}

/// `rank_of(x) <= s`.
pub fn closure_membership(x: &StratumPoint, s: usize) -> Result<bool> {
    Ok(rank_of(x)? <= s)
}

fn rand_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, height: u32) -> Vec<Scalar> {
    (0..n).map(|_| rand_scalar(rng, Field::Gaussian, height)).collect()
}

fn rand_octonion<R: Rng + ?Sized>(rng: &mut R, height: u32) -> CDElement {
    crate::rng::rand_cd(rng, 3, Field::Gaussian, height)
}

/// `λ v v*` with `v = (1, a, b)`, `a, b ∈ O_C`. By Artin's theorem `a, b`
/// generate an associative (complexified quaternion) subalgebra, so this is
/// an honest rank-one element. Every point of the rank-one cone with nonzero
/// (1,1) entry has this form.
pub fn exc27_rank_one(lambda: &Scalar, a: &CDElement, b: &CDElement) -> Result<JordanElement> {
    let v = [CDElement::one(3, Field::Gaussian), a.clone(), b.clone()];
    Ok(JordanElement::outer_self(&v)?.scale(lambda))
}

/// A random nonzero point of Jordan rank one.
pub fn sample_rank_one<R: Rng + ?Sized>(model: PSpaceModel, rng: &mut R, height: u32) -> Result<StratumPoint> {
    for _ in 0..SAMPLE_RETRIES {
        let pt = match model {
            PSpaceModel::Sym { r } => {
                let v = rand_vec(rng, r, height);
                StratumPoint::from_matrix(model, Matrix::outer(&v, &v))?
            }
            PSpaceModel::Mat { q, p } => {
                let (v, w) = (rand_vec(rng, q, height), rand_vec(rng, p, height));
                StratumPoint::from_matrix(model, Matrix::outer(&v, &w))?
            }
            PSpaceModel::Skew { n } => {
                let (v, w) = (rand_vec(rng, n, height), rand_vec(rng, n, height));
                StratumPoint::from_matrix(model, Matrix::outer(&v, &w).try_sub(&Matrix::outer(&w, &v))?)?
            }
            PSpaceModel::Exc27 => {
                let lambda = rand_nonzero_scalar(rng, Field::Gaussian, height);
                let (a, b) = (rand_octonion(rng, height), rand_octonion(rng, height));
                let x = exc27_rank_one(&lambda, &a, &b)?;
                if !sharp(&x)?.is_zero() {
                    continue;
                }
                StratumPoint::from_jordan(x)?
            }
        };
        if !pt.is_zero() {
            return Ok(pt);
        }
    }
    if model == PSpaceModel::Exc27 {
        return Err(Error::Internal("rank-one construction keeps failing sharp = 0".into()));
    }
    Err(Error::Internal(format!("could not draw a nonzero rank-one point of {model}")))
}

/// Sum of `k + 1` independent rank-one samples: a point of the `k`-th secant
/// variety of the rank-one locus.
pub fn sample_secant<R: Rng + ?Sized>(model: PSpaceModel, k: usize, rng: &mut R, height: u32) -> Result<StratumPoint> {
    let mut acc = sample_rank_one(model, rng, height)?;
    for _ in 0..k {
        acc = acc.try_add(&sample_rank_one(model, rng, height)?)?;
    }
    Ok(acc)
}

/// The fundamental relative invariant of a regular model: determinant,
/// Pfaffian or the cubic norm of `H_3(O_C)`.
pub fn relative_invariant(x: &StratumPoint) -> Result<Scalar> {
    if !x.model.is_regular() {
        return Err(Error::Unsupported(format!("{} has no relative invariant of full degree", x.model)));
    }
    match &x.coords {
        Coords::Jordan(j) => generic_det(j),
        Coords::Matrix(m) => match x.model {
            PSpaceModel::Skew { .. } => m.pfaffian(),
            _ => m.det(),
        },
    }
}

/// Splits a Sym/Mat/Skew point into `rank_of(x)` rank-one summands by
/// repeated Wedderburn rank-one reduction.
pub fn peel_rank_one(x: &StratumPoint) -> Result<Vec<StratumPoint>> {
    let Coords::Matrix(m0) = &x.coords else {
        return Err(Error::Unsupported("rank-one peeling is implemented for the matrix models".into()));
    };
    let mut a = m0.clone();
    let mut out = Vec::new();
    while !a.is_zero() {
        let term = match x.model {
            PSpaceModel::Mat { q, p } => {
                let (i, j) = (0..q).flat_map(|i| (0..p).map(move |j| (i, j))).find(|&ij| !a[ij].is_zero()).expect("nonzero");
                let inv = a[(i, j)].inv()?;
                let col = a.col(j);
                let row: Vec<Scalar> = a.row(i).iter().map(|v| v * &inv).collect();
                Matrix::outer(&col, &row)
            }
            PSpaceModel::Sym { r } => {
                let xv: Vec<Scalar> = match (0..r).find(|&i| !a[(i, i)].is_zero()) {
                    Some(i) => unit(r, &[i]),
                    None => {
                        let (i, j) = (0..r)
                            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
                            .find(|&ij| !a[ij].is_zero())
                            .expect("nonzero");
                        unit(r, &[i, j])
                    }
                };
                let ax = a.try_mul(&Matrix::column(&xv))?.col(0);
                let c: Scalar = xv.iter().zip(&ax).map(|(u, v)| u * v).sum();
                let inv = c.inv()?;
                let scaled: Vec<Scalar> = ax.iter().map(|v| v * &inv).collect();
                Matrix::outer(&ax, &scaled)
            }
            PSpaceModel::Skew { n } => {
                let (i, j) =
                    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&ij| !a[ij].is_zero()).expect("nonzero");
                let inv = a[(i, j)].inv()?;
                let u = a.col(i);
                let w: Vec<Scalar> = a.col(j).iter().map(|v| v * &inv).collect();
                Matrix::outer(&u, &w).try_sub(&Matrix::outer(&w, &u))?
            }
            PSpaceModel::Exc27 => unreachable!(),
        };
        a = a.try_sub(&term)?;
        out.push(StratumPoint::from_matrix(x.model, term)?);
        if out.len() > x.model.max_rank() {
            return Err(Error::Internal("rank-one peeling did not terminate".into()));
        }
    }
    Ok(out)
}

fn unit(n: usize, idx: &[usize]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for &i in idx {
        v[i] = Scalar::one();
    }
    v
}

/// Polynomial parameterization of the cone over the closure of the rank-`s`
/// stratum, as coordinate polynomials in the model's flat basis. Returns the
/// polynomials and the number of parameters.
pub fn parameterization(model: PSpaceModel, s: usize) -> (Vec<Poly>, usize) {
    let per_term = match model {
        PSpaceModel::Sym { r } => r,
        PSpaceModel::Mat { q, p } => q + p,
        PSpaceModel::Skew { n } => 2 * n,
        PSpaceModel::Exc27 => 1 + 2 * OCT,
    };
    let mut coords = vec![Poly::zero(); model.ambient_dim()];
    for t in 0..s {
        let base = (t * per_term) as u32;
        let var = |i: usize| Poly::var(base + i as u32);
        let term: Vec<Poly> = match model {
            PSpaceModel::Sym { r } => (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).map(|(i, j)| var(i).mul(&var(j))).collect(),
            PSpaceModel::Mat { q, p } => {
                (0..q).flat_map(|i| (0..p).map(move |j| (i, j))).map(|(i, j)| var(i).mul(&var(q + j))).collect()
            }
            PSpaceModel::Skew { n } => (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| var(i).mul(&var(n + j)).sub(&var(j).mul(&var(n + i))))
                .collect(),
            PSpaceModel::Exc27 => {
                let lambda = var(0);
                let a: Vec<Poly> = (0..OCT).map(|i| var(1 + i)).collect();
                let b: Vec<Poly> = (0..OCT).map(|i| var(1 + OCT + i)).collect();
                exc27_term(&lambda, &a, &b)
            }
        };
        for (c, p) in coords.iter_mut().zip(term) {
            *c = c.add(&p);
        }
    }
    (coords, s * per_term)
}

fn poly_norm(a: &[Poly]) -> Poly {
    a.iter().fold(Poly::zero(), |acc, x| acc.add(&x.mul(x)))
}

fn poly_conj(a: &[Poly]) -> Vec<Poly> {
    a.iter().enumerate().map(|(i, x)| if i == 0 { x.clone() } else { x.scale(&Scalar::from_int(-1)) }).collect()
}

fn poly_oct_mul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let table = product_table();
    let mut out = vec![Poly::zero(); OCT];
    for i in 0..OCT {
        for j in 0..OCT {
            let (sign, k) = table[i][j];
            let p = a[i].mul(&b[j]);
            out[k] = if sign > 0 { out[k].add(&p) } else { out[k].sub(&p) };
        }
    }
    out
}

/// Flat coordinates of `λ v v*`, `v = (1, a, b)`, in the order of
/// [`JordanElement::coordinates`].
fn exc27_term(lambda: &Poly, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let bc = poly_conj(b);
    let mut out = vec![lambda.clone(), lambda.mul(&poly_norm(a)), lambda.mul(&poly_norm(b))];
    out.extend(poly_conj(a).iter().map(|x| lambda.mul(x)));
    out.extend(bc.iter().map(|x| lambda.mul(x)));
    out.extend(poly_oct_mul(a, &bc).iter().map(|x| lambda.mul(x)));
    out
}

/// Symbolic Jacobian of a polynomial map: `jac[i][v] = ∂f_i/∂x_v`.
pub fn symbolic_jacobian(polys: &[Poly], nvars: usize) -> Vec<Vec<Poly>> {
    polys.iter().map(|f| (0..nvars).map(|v| f.diff(v as u32)).collect()).collect()
}

pub fn eval_jacobian(jac: &[Vec<Poly>], point: &[Scalar]) -> Matrix {
    let cols = jac.first().map_or(0, Vec::len);
    Matrix::from_fn(jac.len(), cols, |i, j| jac[i][j].eval(point))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDim {
    pub cone_dim: usize,
    pub proj_dim: usize,
}

/// Dimension of the closure of the rank-`s` stratum, as the generic rank
/// of the Jacobian of the `s`-fold rank-one parameterization.
pub fn stratum_dimension<R: Rng + ?Sized>(model: PSpaceModel, s: usize, rng: &mut R, height: u32) -> Result<StratumDim> {
    if s == 0 || s > model.max_rank() {
        return input(format!("stratum {s} out of range 1..={} for {model}", model.max_rank()));
    }
    let (polys, nvars) = parameterization(model, s);
    let jac = symbolic_jacobian(&polys, nvars);
    let bound = nvars.min(model.ambient_dim());
    let mut best = 0;
    for _ in 0..JACOBIAN_POINTS {
        let point: Vec<Scalar> = (0..nvars).map(|_| rand_int_scalar(rng, Field::Gaussian, height)).collect();
        best = best.max(eval_jacobian(&jac, &point).rank());
        if best == bound {
            break;
        }
    }
    if best == 0 {
        return Err(Error::Internal("zero Jacobian rank at every sample point".into()));
    }
    Ok(StratumDim { cone_dim: best, proj_dim: best - 1 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Defects {
    /// Projective dimensions of `S^0 = X, S^1, ..., S^{k0}`.
    pub secant_dims: Vec<usize>,
    /// `δ_1, ..., δ_{k0}`.
    pub delta: Vec<usize>,
    pub k0: usize,
    /// `floor(dim X / δ_1)`.
    pub k0_bound: usize,
    pub scorza_ok: bool,
}

/// Secant defects of the rank-one locus `X`:
/// `δ_i = dim X + dim S^{i-1} + 1 - dim S^i`, `k0` the least `i` with
/// `S^i` filling the ambient space, and the Scorza conditions
/// `k0 = floor(dim X / δ)` and `δ_i = i δ`.
pub fn defects<R: Rng + ?Sized>(model: PSpaceModel, rng: &mut R, height: u32) -> Result<Defects> {
    if model.max_rank() < 2 {
        return Err(Error::Precondition(format!("{model} has maximal rank {} < 2", model.max_rank())));
    }
    let full = model.proj_ambient_dim();
    let mut dims = Vec::new();
    for s in 1..=model.max_rank() {
        let d = stratum_dimension(model, s, rng, height)?.proj_dim;
        dims.push(d);
        if d == full {
            break;
        }
    }
    let k0 = dims.len() - 1;
    if dims[k0] != full {
        return Err(Error::Internal(format!("top stratum of {model} has dimension {} < {full}", dims[k0])));
    }
    let dim_x = dims[0];
    let delta: Vec<usize> = (1..=k0).map(|i| dim_x + dims[i - 1] + 1 - dims[i]).collect();
    let k0_bound = if delta.is_empty() || delta[0] == 0 { 0 } else { dim_x / delta[0] };
    let scorza_ok =
        !delta.is_empty() && k0 == k0_bound && delta.iter().enumerate().all(|(i, &d)| d == (i + 1) * delta[0]);
    Ok(Defects { secant_dims: dims, delta, k0, k0_bound, scorza_ok })
}
