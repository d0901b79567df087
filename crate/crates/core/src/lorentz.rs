//! SO₀(1,n) in floating point: membership, sampling, the Iwasawa
//! decomposition `g = kA(t)N(x)` and its `k̃F(t)N(x)` variants.
//!
//! Indices are 0-based, so `e₁` is index 0 and `e_{n+1}` is index `n`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::report::{Check, Report};

/// Membership and reconstruction tolerance.
pub const TOL: f64 = 1e-9;
/// Threshold on `k[n][n]` separating the Poincaré branches.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// An `(n+1)×(n+1)` real matrix acting on `R^{1,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl LorentzMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() < 3 {
            return Err(Error::BadParams(format!(
                "expected a square matrix of size at least 3, got {}×{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(LorentzMatrix { n: entries.nrows() - 1, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::BadParams("rows must all have length equal to the row count".into()));
        }
        Self::new(DMatrix::from_fn(size, size, |i, j| rows[i][j]))
    }

    pub fn identity(n: usize) -> Self {
        LorentzMatrix { n, entries: DMatrix::identity(n + 1, n + 1) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    pub fn mul(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix { n: self.n, entries: &self.entries * &other.entries }
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_diff(&self, other: &LorentzMatrix) -> f64 {
        (&self.entries - &other.entries).amax()
    }
}

impl Serialize for LorentzMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LorentzMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        LorentzMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

fn eta(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n + 1, n + 1, |i, j| match (i == j, i) {
        (false, _) => 0.0,
        (true, 0) => 1.0,
        (true, _) => -1.0,
    })
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadParams(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_len(x: &[f64], n: usize) -> Result<()> {
    if x.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, found: x.len() });
    }
    Ok(())
}

/// Checks that `s` is a real antisymmetric `(n−1)×(n−1)` matrix.
pub fn check_generator(s: &DMatrix<f64>, n: usize) -> Result<()> {
    if s.nrows() != n - 1 || s.ncols() != n - 1 {
        return Err(Error::BadParams(format!("s must be {0}×{0}, got {1}×{2}", n - 1, s.nrows(), s.ncols())));
    }
    if (s + s.transpose()).amax() > 1e-12 {
        return Err(Error::BadParams("s must be antisymmetric".into()));
    }
    Ok(())
}

/// Generator `s` from row-major entries, validated for size `n`.
pub fn generator_from_rows(rows: &[Vec<f64>], n: usize) -> Result<DMatrix<f64>> {
    check_n(n)?;
    if rows.is_empty() {
        return Ok(DMatrix::zeros(n - 1, n - 1));
    }
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::BadParams("s must be a square matrix".into()));
    }
    let s = DMatrix::from_fn(rows.len(), rows.len(), |i, j| rows[i][j]);
    check_generator(&s, n)?;
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    A,
    N,
    S,
    F,
    K0,
}

/// Parameters for [`factor_matrix`]; unused fields are ignored.
#[derive(Debug, Clone, Default)]
pub struct FactorParams {
    pub t: f64,
    pub x: Vec<f64>,
    pub s: Option<DMatrix<f64>>,
}

pub fn factor_matrix(kind: FactorKind, n: usize, params: &FactorParams) -> Result<LorentzMatrix> {
    check_n(n)?;
    let zero_s = || DMatrix::zeros(n - 1, n - 1);
    match kind {
        FactorKind::A => Ok(a_matrix(n, params.t)),
        FactorKind::N => {
            let x = if params.x.is_empty() { vec![0.0; n - 1] } else { params.x.clone() };
            n_matrix(n, &x)
        }
        FactorKind::S => s_matrix(n, params.t, params.s.as_ref().unwrap_or(&zero_s())),
        FactorKind::F => f_matrix(n, params.t, params.s.as_ref().unwrap_or(&zero_s())),
        FactorKind::K0 => Ok(k0(n)),
    }
}

pub fn a_matrix(n: usize, t: f64) -> LorentzMatrix {
    let mut m = DMatrix::identity(n + 1, n + 1);
    m[(0, 0)] = t.cosh();
    m[(0, n)] = t.sinh();
    m[(n, 0)] = t.sinh();
    m[(n, n)] = t.cosh();
    LorentzMatrix { n, entries: m }
}

pub fn n_matrix(n: usize, x: &[f64]) -> Result<LorentzMatrix> {
    check_len(x, n)?;
    let h = 0.5 * x.iter().map(|v| v * v).sum::<f64>();
    let mut m = DMatrix::identity(n + 1, n + 1);
    m[(0, 0)] = 1.0 + h;
    m[(0, n)] = h;
    m[(n, 0)] = -h;
    m[(n, n)] = 1.0 - h;
    for (j, &v) in x.iter().enumerate() {
        m[(0, j + 1)] = -v;
        m[(j + 1, 0)] = -v;
        m[(j + 1, n)] = -v;
        m[(n, j + 1)] = v;
    }
    Ok(LorentzMatrix { n, entries: m })
}

/// `block(1, exp(ts), 1)`.
pub fn s_matrix(n: usize, t: f64, s: &DMatrix<f64>) -> Result<LorentzMatrix> {
    check_generator(s, n)?;
    let e = rotation_exp(s, t);
    let mut m = DMatrix::identity(n + 1, n + 1);
    m.view_mut((1, 1), (n - 1, n - 1)).copy_from(&e);
    Ok(LorentzMatrix { n, entries: m })
}

pub fn f_matrix(n: usize, t: f64, s: &DMatrix<f64>) -> Result<LorentzMatrix> {
    Ok(a_matrix(n, t).mul(&s_matrix(n, t, s)?))
}

/// `diag(I_{n−1}, −I₂)`.
pub fn k0(n: usize) -> LorentzMatrix {
    let mut m = DMatrix::identity(n + 1, n + 1);
    m[(n - 1, n - 1)] = -1.0;
    m[(n, n)] = -1.0;
    LorentzMatrix { n, entries: m }
}

/// `exp(ts)` for antisymmetric `s`, polished to orthogonality so that
/// `exp(−ts)` is exactly its transpose.
fn rotation_exp(s: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    let size = s.nrows();
    let mut e = expm(&(s * t.abs()));
    for _ in 0..2 {
        e = &e * (DMatrix::identity(size, size) * 3.0 - e.transpose() * &e) / 2.0;
    }
    if t < 0.0 {
        e.transpose()
    } else {
        e
    }
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(x: &DMatrix<f64>) -> DMatrix<f64> {
    let size = x.nrows();
    let norm = x.row_iter().map(|r| r.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let y = x / 2f64.powi(squarings);
    let mut sum = DMatrix::identity(size, size);
    let mut term = DMatrix::identity(size, size);
    for k in 1..=30 {
        term = &term * &y / k as f64;
        sum += &term;
        if term.amax() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// η-orthogonality, unit determinant and `g₀₀ ≥ 1`, each within `tol`.
pub fn verify_so0(g: &LorentzMatrix, tol: f64) -> Report {
    let e = eta(g.n);
    let m = g.matrix();
    let dev = (m.transpose() * &e * m - &e).amax();
    let det = m.determinant();
    let g00 = m[(0, 0)];
    let mut r = Report::new();
    let orth = if dev <= tol {
        Check::pass("eta_orthogonal")
    } else {
        Check::fail("eta_orthogonal", format!("max |gᵀηg − η| = {dev:e}"))
    };
    r.push(orth.with_value(format!("{dev:e}")));
    let det_check = if (det - 1.0).abs() <= tol {
        Check::pass("det_one")
    } else {
        Check::fail("det_one", format!("det = {det}"))
    };
    r.push(det_check.with_value(format!("{det}")));
    let comp = if g00 >= 1.0 - tol {
        Check::pass("identity_component")
    } else {
        Check::fail("identity_component", format!("g[1][1] = {g00}"))
    };
    r.push(comp.with_value(format!("{g00}")));
    r
}

fn require_so0(g: &LorentzMatrix) -> Result<()> {
    match verify_so0(g, TOL).first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::NotInGroup(c.witness.clone().unwrap_or_default())),
    }
}

fn uniform_matrix(size: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(size, size, |_, _| rng.gen_range(-2.0..=2.0))
}

/// `exp(ηB)` for `B` the antisymmetric part of a uniform `[−2,2]` matrix.
pub fn sample_so0(n: usize, seed: u64) -> Result<LorentzMatrix> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = uniform_matrix(n + 1, &mut rng);
    let b = (&a - a.transpose()) / 2.0;
    Ok(LorentzMatrix { n, entries: expm(&(eta(n) * b)) })
}

/// Antisymmetric `size×size` matrix with entries uniform in `[−2,2]`.
pub fn random_generator(size: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = uniform_matrix(size, &mut rng);
    (&a - a.transpose()) / 2.0
}

/// `block(1, T)` with `T ∈ SO(n)`.
pub fn sample_rotation(n: usize, seed: u64) -> Result<LorentzMatrix> {
    check_n(n)?;
    let t = expm(&random_generator(n, seed));
    let mut m = DMatrix::identity(n + 1, n + 1);
    m.view_mut((1, 1), (n, n)).copy_from(&t);
    Ok(LorentzMatrix { n, entries: m })
}

/// `block(T̃, 1)` with `T̃ ∈ SO₀(1, n−1)`.
pub fn sample_poincare_block(n: usize, seed: u64) -> Result<LorentzMatrix> {
    check_n(n)?;
    let mut m = DMatrix::identity(n + 1, n + 1);
    if n == 2 {
        // SO₀(1,1) is a boost group
        let t = random_generator(2, seed)[(0, 1)];
        m.view_mut((0, 0), (2, 2)).copy_from(&DMatrix::from_row_slice(2, 2, &[t.cosh(), t.sinh(), t.sinh(), t.cosh()]));
    } else {
        let t = sample_so0(n - 1, seed)?;
        m.view_mut((0, 0), (n, n)).copy_from(t.matrix());
    }
    Ok(LorentzMatrix { n, entries: m })
}

/// Largest deviation of the first row and column from `e₁`.
pub fn k_block_deviation(k: &LorentzMatrix) -> f64 {
    edge_deviation(k, 0)
}

/// Largest deviation of the last row and column from `e_{n+1}`.
pub fn poincare_block_deviation(k: &LorentzMatrix) -> f64 {
    edge_deviation(k, k.n)
}

fn edge_deviation(k: &LorentzMatrix, idx: usize) -> f64 {
    let mut dev: f64 = 0.0;
    for j in 0..=k.n {
        let target = if j == idx { 1.0 } else { 0.0 };
        dev = dev.max((k.get(idx, j) - target).abs()).max((k.get(j, idx) - target).abs());
    }
    dev
}

/// `W(g) = η(g(e₁ − e_{n+1}), e_{n+1})`.
pub fn w_value(g: &LorentzMatrix) -> f64 {
    let n = g.n;
    g.get(n, n) - g.get(n, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IwasawaFactors {
    pub k: LorentzMatrix,
    pub t: f64,
    pub x: Vec<f64>,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> LorentzMatrix {
        let n = self.k.n;
        self.k.mul(&a_matrix(n, self.t)).mul(&n_matrix(n, &self.x).expect("x has length n−1"))
    }

    pub fn residual(&self, g: &LorentzMatrix) -> f64 {
        self.reconstruct().max_diff(g)
    }
}

/// `g = kA(t)N(x)`, read off the first row of `g`.
pub fn iwasawa_decompose(g: &LorentzMatrix) -> Result<IwasawaFactors> {
    require_so0(g)?;
    let n = g.n;
    let e_minus_t = g.get(0, 0) - g.get(0, n);
    if e_minus_t <= TOL {
        return Err(Error::NumericalBreakdown(format!("g[1][1] − g[1][n+1] = {e_minus_t:e}")));
    }
    let t = -e_minus_t.ln();
    let x: Vec<f64> = (1..n).map(|j| -g.get(0, j) * t.exp()).collect();
    let neg_x: Vec<f64> = x.iter().map(|v| -v).collect();
    let k = g.mul(&n_matrix(n, &neg_x)?).mul(&a_matrix(n, -t));
    let dev = k_block_deviation(&k);
    if dev > TOL {
        return Err(Error::NumericalBreakdown(format!("k-factor deviates from block form by {dev:e}")));
    }
    Ok(IwasawaFactors { k, t, x })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Euclid,
    Poincare,
    ExtendedK0,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KfnFactors {
    pub k_tilde: LorentzMatrix,
    pub t: f64,
    pub x: Vec<f64>,
    pub branch: Branch,
    pub s: Vec<Vec<f64>>,
}

impl KfnFactors {
    fn generator(&self) -> DMatrix<f64> {
        let m = self.s.len();
        DMatrix::from_fn(m, m, |i, j| self.s[i][j])
    }

    /// `k̃F(t)N(x)`, evaluated as `k̃S(t)N(e^{−t}x)A(t)`. The factors `F(t)` and
    /// `N(x)` grow like `1/k[n][n]` near the Poincaré boundary while this
    /// ordering keeps the intermediate products bounded.
    pub fn reconstruct(&self) -> LorentzMatrix {
        let n = self.k_tilde.n;
        let shrunk: Vec<f64> = self.x.iter().map(|v| v * (-self.t).exp()).collect();
        self.k_tilde
            .mul(&s_matrix(n, self.t, &self.generator()).expect("s validated on construction"))
            .mul(&n_matrix(n, &shrunk).expect("x has length n−1"))
            .mul(&a_matrix(n, self.t))
    }

    /// `k̃F(t)N(x)` multiplied left to right.
    pub fn reconstruct_naive(&self) -> LorentzMatrix {
        let n = self.k_tilde.n;
        self.k_tilde
            .mul(&f_matrix(n, self.t, &self.generator()).expect("s validated on construction"))
            .mul(&n_matrix(n, &self.x).expect("x has length n−1"))
    }

    pub fn residual(&self, g: &LorentzMatrix) -> f64 {
        self.reconstruct().max_diff(g)
    }
}

fn rows_of(s: &DMatrix<f64>) -> Vec<Vec<f64>> {
    s.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// `k̃ = kS(−t)` on top of the Iwasawa factors.
pub fn kfn_euclid(g: &LorentzMatrix, s: &DMatrix<f64>) -> Result<KfnFactors> {
    check_generator(s, g.n)?;
    let iw = iwasawa_decompose(g)?;
    let k_tilde = iw.k.mul(&s_matrix(g.n, -iw.t, s)?);
    Ok(KfnFactors { k_tilde, t: iw.t, x: iw.x, branch: Branch::Euclid, s: rows_of(s) })
}

/// `k̃ ∈ block(SO₀(1,n−1), 1)`; fails with `Obstructed` unless the Iwasawa
/// k-factor has `k[n][n] > BOUNDARY_TOL`.
pub fn kfn_poincare(g: &LorentzMatrix, s: &DMatrix<f64>) -> Result<KfnFactors> {
    check_generator(s, g.n)?;
    let n = g.n;
    let iw = iwasawa_decompose(g)?;
    let knn = iw.k.get(n, n);
    if knn <= BOUNDARY_TOL {
        return Err(Error::Obstructed { k_value: knn });
    }
    let w = knn.ln();
    let z: Vec<f64> = (1..n).map(|j| -iw.k.get(n, j)).collect();
    let t = iw.t - w;
    let x: Vec<f64> = iw.x.iter().zip(&z).map(|(y, z)| y - t.exp() * z).collect();
    let mut k_tilde = iw.k.mul(&a_matrix(n, w)).mul(&n_matrix(n, &z)?).mul(&s_matrix(n, -t, s)?);
    let dev = poincare_block_deviation(&k_tilde);
    if dev > TOL {
        return Err(Error::NumericalBreakdown(format!("k̃ deviates from block form by {dev:e}")));
    }
    for j in 0..=n {
        let v = if j == n { 1.0 } else { 0.0 };
        k_tilde.entries[(n, j)] = v;
        k_tilde.entries[(j, n)] = v;
    }
    Ok(KfnFactors { k_tilde, t, x, branch: Branch::Poincare, s: rows_of(s) })
}

/// `g = xfm` with `x ∈ K̃ ∪ k₀K̃`.
pub fn xfn_extended(g: &LorentzMatrix, s: &DMatrix<f64>) -> Result<KfnFactors> {
    check_generator(s, g.n)?;
    let n = g.n;
    let knn = iwasawa_decompose(g)?.k.get(n, n);
    if knn.abs() <= BOUNDARY_TOL {
        return Err(Error::OnBoundary { k_value: knn });
    }
    if knn > 0.0 {
        return kfn_poincare(g, s);
    }
    let k0 = k0(n);
    let mut f = kfn_poincare(&k0.mul(g), s)?;
    f.k_tilde = k0.mul(&f.k_tilde);
    f.branch = Branch::ExtendedK0;
    Ok(f)
}
