//! Dual pairs `(G, H)` acting on `W = Hom_K(K^s, V)` and their momentum
//! (Hilbert) maps
//!
//! ```text
//! μ_K(α) = -α† α  ∈ h,        μ_G(α) = α α†  ∈ g,
//! ```
//!
//! where `α†` is the adjoint of `α` for the form `B` on `V` and the standard
//! positive hermitian form on `K^s`.
//!
//! All three cases share one complex model. `V = C^N` carries
//! `B(u, v) = u* F v` with `F = -J_V`, so `(u, v) ↦ B(u, J_V v) = u* v` is
//! positive definite and `α† = α* F*`.
//!
//! | case        | N     | `J_V`                   | extra structure                  | p⁺ model   |
//! |-------------|-------|-------------------------|----------------------------------|------------|
//! | `sp:L`      | 2L    | `[[0,-I],[I,0]]`        | real matrices                    | `Sym(L)`   |
//! | `u:P,Q`     | P+Q   | `-i diag(I_P, -I_Q)`    | none                             | `Mat(Q,P)` |
//! | `ostar:D`   | 2D    | `[[0,-I],[I,0]]`        | commute with `(x;y) ↦ (-ȳ; x̄)`   | `Skew(D)`  |
//!
//! In the symplectic case the basis is `(e_1..e_L, f_1..f_L)` with
//! `B(e_i, f_j) = δ_ij`, `J_V e_i = f_i`. In the quaternionic case `H^D` is
//! `C^{2D}` with the antilinear structure map above, and an element of
//! `Hom_H(H^s, H^D)` is a `2D x 2s` complex matrix commuting with it.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::linalg::Matrix;
use crate::rng::{rand_rational, rand_scalar};
use crate::scalar::{Field, Scalar};
use crate::strata::{split_selector, PSpaceModel, StratumPoint};

const CAYLEY_RETRIES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CaseKind {
    /// `(O(s), Sp(l, R))`.
    Sp { l: usize },
    /// `(U(s), U(p, q))`.
    U { p: usize, q: usize },
    /// `(Sp(s), O*(2d))`.
    Ostar { d: usize },
}

impl CaseKind {
    pub const GRAMMAR: &'static str = "sp:L | u:P,Q | ostar:D";

    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Sp { l } => l >= 1,
            Self::U { p, q } => p >= 1 && q >= 1,
            Self::Ostar { d } => d >= 2,
        };
        if ok {
            Ok(self)
        } else {
            input(format!("dual-pair parameters out of range: {self}"))
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Sp { l } => write!(f, "sp:{l}"),
            Self::U { p, q } => write!(f, "u:{p},{q}"),
            Self::Ostar { d } => write!(f, "ostar:{d}"),
        }
    }
}

impl FromStr for CaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let g = Self::GRAMMAR;
        let bad = || Error::Input(format!("unknown dual-pair selector {s:?}; expected {g}"));
        let (kind, rest) = split_selector(s, g)?;
        let rest = rest.ok_or_else(bad)?;
        let nums: Vec<usize> =
            rest.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?;
        match (kind.to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("sp", &[l]) => Self::Sp { l },
            ("u", &[p, q]) => Self::U { p, q },
            ("ostar", &[d]) => Self::Ostar { d },
            _ => return Err(bad()),
        }
        .validated()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualPairCase {
    #[serde(flatten)]
    pub kind: CaseKind,
    pub s: usize,
}

/// `[[0, -I], [I, 0]]` of size `2n`.
fn qmat(n: usize) -> Matrix {
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i >= n && j == i - n {
            Scalar::one()
        } else if i < n && j == i + n {
            Scalar::from_int(-1)
        } else {
            Scalar::zero()
        }
    })
}

impl DualPairCase {
    pub fn new(kind: CaseKind, s: usize) -> Result<Self> {
        if s == 0 {
            return input("s must be >= 1");
        }
        Ok(Self { kind: kind.validated()?, s })
    }

    /// Complex dimension of the matrix model of `V`.
    pub fn v_dim(&self) -> usize {
        match self.kind {
            CaseKind::Sp { l } => 2 * l,
            CaseKind::U { p, q } => p + q,
            CaseKind::Ostar { d } => 2 * d,
        }
    }

    /// Number of columns of the matrix of `α` (and size of `h`).
    pub fn k_dim(&self) -> usize {
        match self.kind {
            CaseKind::Ostar { .. } => 2 * self.s,
            _ => self.s,
        }
    }

    /// Real rank `r` of `g`, equal to the maximal Jordan rank of `p⁺`.
    pub fn split_rank(&self) -> usize {
        self.model().max_rank()
    }

    pub fn model(&self) -> PSpaceModel {
        match self.kind {
            CaseKind::Sp { l } => PSpaceModel::Sym { r: l },
            CaseKind::U { p, q } => PSpaceModel::Mat { q, p },
            CaseKind::Ostar { d } => PSpaceModel::Skew { n: d },
        }
    }

    /// Dimension of `W(s)` as a complex vector space under `J_W`.
    pub fn w_complex_dim(&self) -> usize {
        match self.kind {
            CaseKind::Sp { l } => l * self.s,
            CaseKind::U { p, q } => (p + q) * self.s,
            CaseKind::Ostar { d } => 2 * d * self.s,
        }
    }

    /// Dimension of a maximal `B`-isotropic subspace of `V`, over `K`.
    pub fn isotropic_dim(&self) -> usize {
        self.split_rank()
    }

    pub fn j_v(&self) -> Matrix {
        match self.kind {
            CaseKind::Sp { l } => qmat(l),
            CaseKind::Ostar { d } => qmat(d),
            CaseKind::U { p, q } => Matrix::from_fn(p + q, p + q, |i, j| match (i == j, i < p) {
                (false, _) => Scalar::zero(),
                (true, true) => Scalar::gaussian(0, -1),
                (true, false) => Scalar::gaussian(0, 1),
            }),
        }
    }

    /// Gram matrix of `B`: `B(u, v) = u* F v`, `F = -J_V`.
    pub fn gram(&self) -> Matrix {
        -&self.j_v()
    }

    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let f = self.gram();
        let fv = &f * &Matrix::column(v);
        u.iter().zip(fv.col(0)).map(|(a, b)| &a.conj() * &b).sum()
    }

    /// Extra linear structure on `V`-side matrices beyond the form.
    fn structured_v(&self, x: &Matrix) -> bool {
        match self.kind {
            CaseKind::Sp { .. } => x.is_real(),
            CaseKind::U { .. } => true,
            CaseKind::Ostar { d } => commutes_with_structure(x, d, x.cols() / 2),
        }
    }

    fn structured_k(&self, y: &Matrix) -> bool {
        match self.kind {
            CaseKind::Sp { .. } => y.is_real(),
            CaseKind::U { .. } => true,
            CaseKind::Ostar { .. } => commutes_with_structure(y, self.s, self.s),
        }
    }

    /// `X ∈ g`: `X* F + F X = 0` plus the case's structure.
    pub fn in_g(&self, x: &Matrix) -> bool {
        let n = self.v_dim();
        if x.shape() != (n, n) || !self.structured_v(x) {
            return false;
        }
        let f = self.gram();
        (&(&x.adjoint() * &f) + &(&f * x)).is_zero()
    }

    /// `Y ∈ h`: `Y* + Y = 0` plus the case's structure.
    pub fn in_h(&self, y: &Matrix) -> bool {
        let k = self.k_dim();
        y.shape() == (k, k) && self.structured_k(y) && (&y.adjoint() + y).is_zero()
    }

    /// `g ∈ G`: `g* F g = F` plus structure.
    pub fn in_group_g(&self, g: &Matrix) -> bool {
        let n = self.v_dim();
        if g.shape() != (n, n) || !self.structured_v(g) {
            return false;
        }
        let f = self.gram();
        &(&g.adjoint() * &f) * g == f
    }

    /// `h ∈ H`: `h* h = I` plus structure.
    pub fn in_group_h(&self, h: &Matrix) -> bool {
        let k = self.k_dim();
        h.shape() == (k, k) && self.structured_k(h) && &h.adjoint() * h == Matrix::identity(k)
    }
}

impl fmt::Display for DualPairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (s = {})", self.kind, self.s)
    }
}

/// `M 𝒥_cols = 𝒥_rows M` for the structure `𝒥(x; y) = (-ȳ; x̄)`, i.e.
/// `M Q_cols = Q_rows conj(M)`.
fn commutes_with_structure(m: &Matrix, rows_half: usize, cols_half: usize) -> bool {
    if m.shape() != (2 * rows_half, 2 * cols_half) {
        return false;
    }
    m * &qmat(cols_half) == &qmat(rows_half) * &m.conj()
}

/// `𝒥(v)` for `v ∈ C^{2n}`.
pub fn quaternionic_structure(v: &[Scalar]) -> Vec<Scalar> {
    let n = v.len() / 2;
    (0..2 * n).map(|i| if i < n { -&v[n + i].conj() } else { v[i - n].conj() }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WElement {
    case: DualPairCase,
    alpha: Matrix,
}

impl WElement {
    pub fn new(case: DualPairCase, alpha: Matrix) -> Result<Self> {
        if alpha.shape() != (case.v_dim(), case.k_dim()) {
            return input(format!(
                "{case} expects a {}x{} matrix, got {}x{}",
                case.v_dim(),
                case.k_dim(),
                alpha.rows(),
                alpha.cols()
            ));
        }
        if !case.structured_v(&alpha) {
            return input(match case.kind {
                CaseKind::Sp { .. } => "alpha must be real in the symplectic case",
                _ => "alpha must commute with the quaternionic structure",
            });
        }
        Ok(Self { case, alpha })
    }

    /// From the first `s` columns; in the quaternionic case column `s + k`
    /// is completed as `𝒥(column k)`.
    pub fn from_columns(case: DualPairCase, cols: &[Vec<Scalar>]) -> Result<Self> {
        if cols.len() != case.s {
            return input(format!("expected {} columns, got {}", case.s, cols.len()));
        }
        let mut all: Vec<Vec<Scalar>> = cols.to_vec();
        if let CaseKind::Ostar { .. } = case.kind {
            all.extend(cols.iter().map(|c| quaternionic_structure(c)));
        }
        let n = case.v_dim();
        if all.iter().any(|c| c.len() != n) {
            return input(format!("columns must have length {n}"));
        }
        Self::new(case, Matrix::from_fn(n, all.len(), |i, j| all[j][i].clone()))
    }

    pub fn zero(case: DualPairCase) -> Self {
        Self { case, alpha: Matrix::zeros(case.v_dim(), case.k_dim()) }
    }

    pub fn case(&self) -> DualPairCase {
        self.case
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn scale(&self, k: &Scalar) -> Result<Self> {
        Self::new(self.case, self.alpha.scale(k))
    }

    /// `g α h⁻¹`.
    pub fn act(&self, h: &Matrix, g: &Matrix) -> Result<Self> {
        let hinv = h.inverse()?.ok_or_else(|| Error::Contract("h is not invertible".into()))?;
        Self::new(self.case, &(g * &self.alpha) * &hinv)
    }
}

/// The unique `α†` with `(α† u, v) = B(u, α v)`: `α† = α* F*`.
pub fn dagger(a: &WElement) -> Matrix {
    &a.alpha.adjoint() * &a.case.gram().adjoint()
}

pub type DaggerFn = fn(&WElement) -> Matrix;

/// Momentum maps parameterized by the adjoint in use, so that a suite can run
/// against a deliberately broken adjoint.
#[derive(Clone, Copy)]
pub struct MomentMaps {
    pub dagger: DaggerFn,
}

impl Default for MomentMaps {
    fn default() -> Self {
        Self { dagger }
    }
}

impl MomentMaps {
    pub fn mu_k(&self, a: &WElement) -> Matrix {
        -&(&(self.dagger)(a) * &a.alpha)
    }

    pub fn mu_g(&self, a: &WElement) -> Matrix {
        &a.alpha * &(self.dagger)(a)
    }
}

pub fn mu_k(a: &WElement) -> Matrix {
    MomentMaps::default().mu_k(a)
}

pub fn mu_g(a: &WElement) -> Matrix {
    MomentMaps::default().mu_g(a)
}

/// `(α† u, v) - B(u, α v)` over all basis pairs; zero iff the adjoint is right.
pub fn dagger_defect(a: &WElement, dag: &Matrix) -> Vec<Scalar> {
    let case = a.case;
    let (n, k) = (case.v_dim(), case.k_dim());
    let mut out = Vec::with_capacity(n * k);
    for ui in 0..n {
        let u = basis(n, ui);
        let du = dag.try_mul(&Matrix::column(&u)).map(|m| m.col(0)).unwrap_or_else(|_| vec![Scalar::zero(); k]);
        for vi in 0..k {
            let lhs = if du.len() == k { du[vi].conj() } else { Scalar::zero() };
            let av = a.alpha.col(vi);
            out.push(&lhs - &case.form(&u, &av));
        }
    }
    out
}

fn basis(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if j == i { Scalar::one() } else { Scalar::zero() }).collect()
}

/// Checks `μ_K(g α h⁻¹) = h μ_K(α) h⁻¹` and `μ_G(g α h⁻¹) = g μ_G(α) g⁻¹`.
pub fn equivariance_check(a: &WElement, h: &Matrix, g: &Matrix) -> Result<bool> {
    equivariance_check_with(&MomentMaps::default(), a, h, g)
}

pub fn equivariance_check_with(maps: &MomentMaps, a: &WElement, h: &Matrix, g: &Matrix) -> Result<bool> {
    let case = a.case;
    if !case.in_group_h(h) {
        return Err(Error::Contract(format!("h is not in the compact group of {case}")));
    }
    if !case.in_group_g(g) {
        return Err(Error::Contract(format!("g does not preserve the form of {case}")));
    }
    let moved = a.act(h, g)?;
    // h* h = I and g* F g = F with F⁻¹ = J_V give the inverses without elimination.
    let hinv = h.adjoint();
    let f = case.gram();
    let ginv = &(&case.j_v() * &g.adjoint()) * &f;
    let k_ok = maps.mu_k(&moved) == &(h * &maps.mu_k(a)) * &hinv;
    let g_ok = maps.mu_g(&moved) == &(g * &maps.mu_g(a)) * &ginv;
    Ok(k_ok && g_ok)
}

fn rand_entry<R: Rng + ?Sized>(rng: &mut R, real: bool, height: u32) -> Scalar {
    rand_scalar(rng, if real { Field::Rational } else { Field::Gaussian }, height)
}

/// Random matrix with the case's V-side structure (not yet in `g`).
fn rand_structured_v<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Matrix {
    match case.kind {
        CaseKind::Sp { .. } => {
            let n = case.v_dim();
            Matrix::from_fn(n, n, |_, _| Scalar::from_rational(rand_rational(rng, height)))
        }
        CaseKind::U { .. } => {
            let n = case.v_dim();
            Matrix::from_fn(n, n, |_, _| rand_scalar(rng, Field::Gaussian, height))
        }
        CaseKind::Ostar { d } => rand_quaternionic(rng, d, d, height),
    }
}

/// `[[A, -conj B], [B, conj A]]`: the complex form of a quaternionic matrix.
fn rand_quaternionic<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, height: u32) -> Matrix {
    let a = Matrix::from_fn(rows, cols, |_, _| rand_scalar(rng, Field::Gaussian, height));
    let b = Matrix::from_fn(rows, cols, |_, _| rand_scalar(rng, Field::Gaussian, height));
    Matrix::from_fn(2 * rows, 2 * cols, |i, j| match (i < rows, j < cols) {
        (true, true) => a[(i, j)].clone(),
        (true, false) => -&b[(i, j - cols)].conj(),
        (false, true) => b[(i - rows, j)].clone(),
        (false, false) => a[(i - rows, j - cols)].conj(),
    })
}

/// Random element of `g`: the `B`-skew part `(Y - F⁻¹ Y* F)/2` of a random
/// structured `Y`.
pub fn random_lie_g<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Result<Matrix> {
    let y = rand_structured_v(case, rng, height);
    let f = case.gram();
    let finv = f.inverse()?.ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
    let x = (&y - &(&(&finv * &y.adjoint()) * &f)).scale(&Scalar::ratio(1, 2));
    if !case.in_g(&x) {
        return Err(Error::Internal(format!("projection to g failed for {case}")));
    }
    Ok(x)
}

/// Random element of `h` (skew-hermitian with the case's structure).
pub fn random_lie_h<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Result<Matrix> {
    let k = case.k_dim();
    let z = match case.kind {
        CaseKind::Sp { .. } => Matrix::from_fn(k, k, |_, _| rand_entry(rng, true, height)),
        CaseKind::U { .. } => Matrix::from_fn(k, k, |_, _| rand_entry(rng, false, height)),
        CaseKind::Ostar { .. } => rand_quaternionic(rng, case.s, case.s, height),
    };
    let y = (&z - &z.adjoint()).scale(&Scalar::ratio(1, 2));
    if !case.in_h(&y) {
        return Err(Error::Internal(format!("projection to h failed for {case}")));
    }
    Ok(y)
}

/// Cayley transform `(I + X)(I - X)⁻¹`, `None` when `I - X` is singular.
pub fn cayley(x: &Matrix) -> Result<Option<Matrix>> {
    let id = Matrix::identity(x.rows());
    Ok((&id - x).inverse()?.map(|inv| &(&id + x) * &inv))
}

/// Random exact element of `G` as the Cayley transform of a random element of `g`.
pub fn random_group_g<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Result<Matrix> {
    for _ in 0..CAYLEY_RETRIES {
        let x = random_lie_g(case, rng, height)?;
        if let Some(g) = cayley(&x)? {
            if !case.in_group_g(&g) {
                return Err(Error::Internal(format!("Cayley transform left G for {case}")));
            }
            return Ok(g);
        }
    }
    Err(Error::Internal("no invertible Cayley denominator found".into()))
}

pub fn random_group_h<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Result<Matrix> {
    let y = random_lie_h(case, rng, height)?;
    let h = cayley(&y)?.ok_or_else(|| Error::Internal("I - Y singular for skew-hermitian Y".into()))?;
    if !case.in_group_h(&h) {
        return Err(Error::Internal(format!("Cayley transform left H for {case}")));
    }
    Ok(h)
}

/// Random signed permutation matrix of size `n` (an element of `O(n)`).
pub fn signed_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs: Vec<i64> = (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
    Matrix::from_fn(n, n, |i, j| if perm[j] == i { Scalar::from_int(signs[j]) } else { Scalar::zero() })
}

/// `[[I, S], [0, I]]` with `S` random rational symmetric; preserves the
/// standard symplectic form.
pub fn symplectic_shear<R: Rng + ?Sized>(l: usize, rng: &mut R, height: u32) -> Matrix {
    let mut s = Matrix::zeros(l, l);
    for i in 0..l {
        for j in i..l {
            let v = Scalar::from_rational(rand_rational(rng, height));
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    Matrix::from_fn(2 * l, 2 * l, |i, j| {
        if i == j {
            Scalar::one()
        } else if i < l && j >= l {
            s[(i, j - l)].clone()
        } else {
            Scalar::zero()
        }
    })
}

/// Basis of a fixed maximal isotropic subspace `L` of `V`, over C (closed
/// under the quaternionic structure in the `ostar` case).
pub fn isotropic_basis(case: &DualPairCase) -> Vec<Vec<Scalar>> {
    let n = case.v_dim();
    match case.kind {
        CaseKind::Sp { l } => (0..l).map(|i| basis(n, i)).collect(),
        CaseKind::U { p, q } => (0..p.min(q))
            .map(|j| {
                let mut v = basis(n, j);
                v[p + j] = Scalar::one();
                v
            })
            .collect(),
        CaseKind::Ostar { d } => {
            let mut out = Vec::new();
            for m in 0..d / 2 {
                let (a, b) = (2 * m, 2 * m + 1);
                let mut u = vec![Scalar::zero(); n];
                u[a] = Scalar::one();
                u[d + b] = Scalar::i();
                let w = quaternionic_structure(&u);
                out.push(u);
                out.push(w);
            }
            out
        }
    }
}

/// A random point of `μ_K⁻¹(0)`: `s` random vectors of the isotropic
/// subspace `L`, moved by a random element of `G`. Any `s >= 1` is allowed;
/// for `s` beyond `dim L` the columns are dependent but still isotropic.
pub fn sample_zero_level<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Result<WElement> {
    let lb = isotropic_basis(case);
    let real = matches!(case.kind, CaseKind::Sp { .. });
    let n = case.v_dim();
    let cols: Vec<Vec<Scalar>> = (0..case.s)
        .map(|_| {
            let mut c = vec![Scalar::zero(); n];
            for v in &lb {
                let coef = rand_entry(rng, real, height);
                for (ci, vi) in c.iter_mut().zip(v) {
                    *ci += &(vi * &coef);
                }
            }
            c
        })
        .collect();
    let a0 = WElement::from_columns(*case, &cols)?;
    let g = random_group_g(case, rng, height)?;
    let a = WElement::new(*case, &g * &a0.alpha)?;
    if !mu_k(&a).is_zero() {
        return Err(Error::Internal(format!("zero-level sample has nonzero mu_K for {case}")));
    }
    Ok(a)
}

/// Splits `X ∈ g` as `X_k + X_p` with `X_k = (X - J X J)/2` commuting and
/// `X_p = (X + J X J)/2` anticommuting with `J_V`.
pub fn cartan_split(x: &Matrix, case: &DualPairCase) -> Result<(Matrix, Matrix)> {
    if !case.in_g(x) {
        return Err(Error::Contract(format!("matrix is not in g for {case}")));
    }
    let j = case.j_v();
    let jxj = &(&j * x) * &j;
    let half = Scalar::ratio(1, 2);
    Ok(((x - &jxj).scale(&half), (x + &jxj).scale(&half)))
}

/// Projection of `X ∈ g` to `p`, read off in the matrix model of `p⁺`.
pub fn cartan_project(x: &Matrix, case: &DualPairCase) -> Result<StratumPoint> {
    let (_, xp) = cartan_split(x, case)?;
    let z = match case.kind {
        CaseKind::Sp { l } => Matrix::from_fn(l, l, |i, j| &xp[(i, j)] + &(&Scalar::i() * &xp[(l + i, j)])),
        CaseKind::U { p, q } => xp.submatrix(p, 0, q, p),
        CaseKind::Ostar { d } => Matrix::from_fn(d, d, |i, j| &xp[(i, j)] + &(&Scalar::i() * &xp[(d + i, j)])),
    };
    StratumPoint::from_matrix(case.model(), z)
        .map_err(|e| Error::Internal(format!("p-part does not land in {}: {e}", case.model())))
}

/// Image of a zero-level point in the closure of a stratum of `p⁺`.
pub fn reduced_point(a: &WElement) -> Result<StratumPoint> {
    if !mu_k(a).is_zero() {
        return Err(Error::Precondition("reduced_point needs mu_K(alpha) = 0".into()));
    }
    cartan_project(&mu_g(a), &a.case)?.with_rank()
}

/// `v ↦ p-part of μ_G(v)` for `s = 1`. No zero-level condition is imposed:
/// for `s = 1` the map is the Veronese (resp. Segre, Pluecker) map on all of `V`.
pub fn veronese_map(case: &DualPairCase, v: &[Scalar]) -> Result<StratumPoint> {
    if case.s != 1 {
        return Err(Error::Precondition(format!("veronese_map needs s = 1, got s = {}", case.s)));
    }
    let a = WElement::from_columns(*case, &[v.to_vec()])?;
    cartan_project(&mu_g(&a), case)?.with_rank()
}

/// Random vector of `V` with the case's scalars.
pub fn random_v<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Vec<Scalar> {
    let real = matches!(case.kind, CaseKind::Sp { .. });
    (0..case.v_dim()).map(|_| rand_entry(rng, real, height)).collect()
}

/// Random element of `W(s)`.
pub fn random_w<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> WElement {
    let cols: Vec<Vec<Scalar>> = (0..case.s).map(|_| random_v(case, rng, height)).collect();
    WElement::from_columns(*case, &cols).expect("structured by construction")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub alpha: Matrix,
    #[serde(rename = "mu_K")]
    pub mu_k: Matrix,
    #[serde(rename = "mu_G")]
    pub mu_g: Matrix,
    pub reduced_point: StratumPoint,
    pub rank: usize,
}

/// Full reduction record for a zero-level sample.
pub fn reduce<R: Rng + ?Sized>(case: &DualPairCase, rng: &mut R, height: u32) -> Result<Reduction> {
    let a = sample_zero_level(case, rng, height)?;
    let pt = reduced_point(&a)?;
    let rank = pt.cached_rank().expect("with_rank");
    Ok(Reduction { mu_k: mu_k(&a), mu_g: mu_g(&a), alpha: a.alpha, reduced_point: pt, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;
    use crate::strata::rank_of;

    fn case(sel: &str, s: usize) -> DualPairCase {
        DualPairCase::new(sel.parse().unwrap(), s).unwrap()
    }

    #[test]
    fn selectors() {
        for s in ["sp:3", "u:3,3", "ostar:6"] {
            assert_eq!(s.parse::<CaseKind>().unwrap().to_string(), s);
        }
        for bad in ["sp", "sp:0", "u:3", "ostar:x", "exc27", "ostar:1"] {
            assert!(bad.parse::<CaseKind>().is_err(), "{bad}");
        }
        assert!(DualPairCase::new(CaseKind::Sp { l: 1 }, 0).is_err());
    }

    #[test]
    fn forms_are_positive_and_complex_structures_square_to_minus_one() {
        for c in [case("sp:2", 1), case("u:2,3", 1), case("ostar:3", 1)] {
            let j = c.j_v();
            let n = c.v_dim();
            assert_eq!(&j * &j, -&Matrix::identity(n));
            assert_eq!(&c.gram() * &j, Matrix::identity(n));
            assert!(c.in_g(&j), "{c}");
        }
    }

    #[test]
    fn symplectic_hand_example() {
        let c = case("sp:1", 1);
        let a = WElement::new(c, Matrix::from_ints(&[&[1], &[0]])).unwrap();
        assert_eq!(dagger(&a), Matrix::from_ints(&[&[0, -1]]));
        assert_eq!(mu_g(&a), Matrix::from_ints(&[&[0, -1], &[0, 0]]));
        assert!(mu_k(&a).is_zero());
    }

    #[test]
    fn structure_map_is_quaternionic() {
        let mut rng = trial_rng(0, "q", 0);
        let v: Vec<Scalar> = (0..6).map(|_| rand_scalar(&mut rng, Field::Gaussian, 5)).collect();
        let jj = quaternionic_structure(&quaternionic_structure(&v));
        assert_eq!(jj, v.iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn isotropic_bases_are_isotropic() {
        for c in [case("sp:3", 1), case("u:3,2", 1), case("ostar:5", 1)] {
            let b = isotropic_basis(&c);
            for u in &b {
                for w in &b {
                    assert!(c.form(u, w).is_zero(), "{c}");
                }
            }
        }
    }

    #[test]
    fn zero_level_and_reduction_per_case() {
        for sel in ["sp:3", "u:3,3", "ostar:6"] {
            for s in 1..=4 {
                let c = case(sel, s);
                let mut rng = trial_rng(11, sel, s as u64);
                let a = sample_zero_level(&c, &mut rng, 5).unwrap();
                assert!(c.in_g(&mu_g(&a)), "{c}");
                let pt = reduced_point(&a).unwrap();
                assert!(rank_of(&pt).unwrap() <= s.min(c.split_rank()), "{c}");
                assert_eq!(rank_of(&pt).unwrap(), s.min(c.split_rank()), "{c}");
            }
        }
    }

    #[test]
    fn group_elements_and_equivariance() {
        for sel in ["sp:2", "u:2,3", "ostar:4"] {
            let c = case(sel, 2);
            let mut rng = trial_rng(5, sel, 0);
            let a = random_w(&c, &mut rng, 5);
            let g = random_group_g(&c, &mut rng, 3).unwrap();
            let h = random_group_h(&c, &mut rng, 3).unwrap();
            assert!(c.in_h(&mu_k(&a)), "{c}");
            assert!(c.in_g(&mu_g(&a)), "{c}");
            assert!(equivariance_check(&a, &h, &g).unwrap(), "{c}");
            assert!(dagger_defect(&a, &dagger(&a)).iter().all(Scalar::is_zero), "{c}");
        }
    }

    #[test]
    fn non_group_input_is_a_contract_error() {
        let c = case("sp:1", 1);
        let a = WElement::zero(c);
        let bad = Matrix::from_ints(&[&[2, 0], &[0, 1]]);
        assert!(matches!(equivariance_check(&a, &Matrix::identity(1), &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn veronese_images_have_rank_one() {
        for sel in ["sp:3", "u:3,3", "ostar:6"] {
            let c = case(sel, 1);
            let mut rng = trial_rng(2, sel, 0);
            let v = random_v(&c, &mut rng, 5);
            assert_eq!(veronese_map(&c, &v).unwrap().cached_rank(), Some(1), "{c}");
        }
    }

    #[test]
    fn j_itself_projects_to_zero() {
        for c in [case("sp:2", 1), case("u:2,2", 1), case("ostar:4", 1)] {
            assert!(cartan_project(&c.j_v(), &c).unwrap().is_zero());
        }
    }
}
