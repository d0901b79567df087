//! so(p,q) and iso(p,q) in the Λ/e basis, the invariant element Ω, the four
//! b-type r-matrix families, the b ↔ f dictionary, and the Iwasawa-type
//! subalgebra families.
//!
//! Indices are 0-based here. `Λ_ij` (i < j) come first in lexicographic order;
//! in iso(p,q) the translations `e_0 .. e_n` follow. Labels are 1-based
//! (`L12`, `e1`).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bialg::{Bivector, Trivector};
use crate::error::{Error, Result};
use crate::liecore::{self, BilinearForm, LieAlgebra, Metric, Subspace};
use crate::report::{Check, Report};
use crate::scalar::{self, int, zeros, Scalar, Vector};

/// Flattening of the `Λ_ij` (i < j) and, for iso, the translations `e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthogonalBasisIndex {
    n1: usize,
}

impl OrthogonalBasisIndex {
    pub fn new(n1: usize) -> Self {
        OrthogonalBasisIndex { n1 }
    }

    /// Dimension `N` of the vector space.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Number of `Λ` generators, `N(N−1)/2`.
    pub fn so_dim(&self) -> usize {
        self.n1 * (self.n1.saturating_sub(1)) / 2
    }

    pub fn iso_dim(&self) -> usize {
        self.so_dim() + self.n1
    }

    /// Linear index of `Λ_ij`, `i < j`.
    pub fn lambda(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n1);
        i * self.n1 - i * (i + 1) / 2 + (j - i - 1)
    }

    /// `(i, j)` with `i < j` for a linear `Λ` index.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs().nth(idx).expect("Λ index in range")
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n1;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Coordinates of `Λ_ij` (with `Λ_ji = −Λ_ij`, `Λ_ii = 0`) in a space of
    /// dimension `dim ≥ so_dim`.
    pub fn lambda_vec(&self, i: usize, j: usize, dim: usize) -> Vector {
        let mut v = zeros(dim);
        if i < j {
            v[self.lambda(i, j)] = scalar::one();
        } else if i > j {
            v[self.lambda(j, i)] = int(-1);
        }
        v
    }

    /// Index of `e_k` inside iso.
    pub fn e(&self, k: usize) -> usize {
        self.so_dim() + k
    }

    /// `e_k` coordinates inside iso.
    pub fn e_vec(&self, k: usize) -> Vector {
        scalar::unit(self.iso_dim(), self.e(k))
    }

    /// Embeds a `V` vector into iso coordinates.
    pub fn v_in_iso(&self, v: &[Scalar]) -> Vector {
        let mut out = zeros(self.so_dim());
        out.extend(v.iter().cloned());
        out
    }

    /// Embeds an so vector into iso coordinates.
    pub fn so_in_iso(&self, x: &[Scalar]) -> Vector {
        let mut out = x.to_vec();
        out.extend(zeros(self.n1));
        out
    }

    pub fn lambda_label(&self, i: usize, j: usize) -> String {
        if self.n1 <= 9 {
            format!("L{}{}", i + 1, j + 1)
        } else {
            format!("L{},{}", i + 1, j + 1)
        }
    }

    /// Resolves `Lij` / `Li,j` / `ek` labels, including `Lji = −Lij`.
    fn resolve(&self, label: &str) -> Option<(usize, Scalar)> {
        if let Some(rest) = label.strip_prefix('e') {
            let k: usize = rest.parse().ok()?;
            return (1..=self.n1).contains(&k).then(|| (self.e(k - 1), scalar::one()));
        }
        let rest = label.strip_prefix('L')?;
        let (a, b) = match rest.split_once(',') {
            Some((a, b)) => (a.parse::<usize>().ok()?, b.parse::<usize>().ok()?),
            None if rest.len() == 2 && self.n1 <= 9 => {
                let d: Vec<usize> = rest.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?;
                (d[0], d[1])
            }
            None => return None,
        };
        if a == 0 || b == 0 || a > self.n1 || b > self.n1 || a == b {
            return None;
        }
        let (i, j) = (a - 1, b - 1);
        Some(if i < j { (self.lambda(i, j), scalar::one()) } else { (self.lambda(j, i), int(-1)) })
    }
}

/// Parses an expression in the `L`/`e` labels of so(p,q) or iso(p,q);
/// `Lji` is read as `−Lij`.
pub fn parse_element(alg: &LieAlgebra, metric: &Metric, expr: &str) -> Result<Vector> {
    let idx = OrthogonalBasisIndex::new(metric.len());
    alg.parse_element_with(expr, |label| idx.resolve(label).filter(|(i, _)| *i < alg.dim()))
}

fn so_entries(metric: &Metric) -> Vec<(usize, usize, usize, Scalar)> {
    let idx = OrthogonalBasisIndex::new(metric.len());
    let dim = idx.so_dim();
    let pairs: Vec<_> = idx.pairs().collect();
    let mut entries = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            let mut v = zeros(dim);
            for (coef, (x, y)) in [
                (metric.eta(i, l), (j, k)),
                (metric.eta(j, k), (i, l)),
                (-metric.eta(i, k), (j, l)),
                (-metric.eta(j, l), (i, k)),
            ] {
                if coef != 0 {
                    scalar::add_scaled(&mut v, &int(coef), &idx.lambda_vec(x, y, dim));
                }
            }
            for (c, val) in v.into_iter().enumerate() {
                if !val.is_zero() {
                    entries.push((a, b, c, val));
                }
            }
        }
    }
    entries
}

fn so_labels(idx: &OrthogonalBasisIndex) -> Vec<String> {
    idx.pairs().map(|(i, j)| idx.lambda_label(i, j)).collect()
}

/// so(p,q): `[Λ_ij, Λ_kl] = η_il Λ_jk + η_jk Λ_il − η_ik Λ_jl − η_jl Λ_ik`.
pub fn build_so(metric: &Metric) -> LieAlgebra {
    let idx = OrthogonalBasisIndex::new(metric.len());
    LieAlgebra::new(so_labels(&idx), so_entries(metric)).expect("so(p,q) constants are antisymmetric")
}

/// iso(p,q) = so(p,q) ⋉ V with `[Λ_ij, e_k] = η_jk e_i − η_ik e_j`.
pub fn build_iso(metric: &Metric) -> LieAlgebra {
    let idx = OrthogonalBasisIndex::new(metric.len());
    let mut labels = so_labels(&idx);
    labels.extend((1..=metric.len()).map(|k| format!("e{k}")));
    let mut entries = so_entries(metric);
    for (a, (i, j)) in idx.pairs().enumerate() {
        for k in 0..metric.len() {
            if metric.eta(j, k) != 0 {
                entries.push((a, idx.e(k), idx.e(i), int(metric.eta(j, k))));
            }
            if metric.eta(i, k) != 0 {
                entries.push((a, idx.e(k), idx.e(j), int(-metric.eta(i, k))));
            }
        }
    }
    LieAlgebra::new(labels, entries).expect("iso(p,q) constants are antisymmetric")
}

/// Matrix of an so(p,q) element in the defining representation, where
/// `Λ_ij e_k = η_jk e_i − η_ik e_j`.
pub fn defining_matrix(metric: &Metric, x: &[Scalar]) -> Vec<Vector> {
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    let mut m = vec![zeros(n); n];
    for (a, (i, j)) in idx.pairs().enumerate() {
        let c = &x[a];
        if c.is_zero() {
            continue;
        }
        m[i][j] += c * int(metric.sign(j));
        m[j][i] -= c * int(metric.sign(i));
    }
    m
}

/// `X v` for `X ∈ so(p,q)`, `v ∈ V`.
pub fn act(metric: &Metric, x: &[Scalar], v: &[Scalar]) -> Vector {
    crate::linalg::mat_vec(&defining_matrix(metric, x), v)
}

/// `K(A, B) = −½ Tr(AB)` on the defining representation.
pub fn killing_form(metric: &Metric) -> BilinearForm {
    let idx = OrthogonalBasisIndex::new(metric.len());
    let dim = idx.so_dim();
    let mats: Vec<_> = (0..dim).map(|a| defining_matrix(metric, &scalar::unit(dim, a))).collect();
    let half = scalar::frac(-1, 2);
    let matrix = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    let prod = crate::linalg::mat_mul(&mats[a], &mats[b]);
                    let tr = (0..metric.len()).fold(Scalar::zero(), |acc, i| acc + &prod[i][i]);
                    &half * tr
                })
                .collect()
        })
        .collect();
    BilinearForm::new(matrix, true).expect("trace form is symmetric")
}

/// `Λ_{xy}` for `x, y ∈ V`: the element with `Λ_{e_i e_j} = Λ_ij`, bilinear.
pub fn lambda_of(metric: &Metric, x: &[Scalar], y: &[Scalar]) -> Vector {
    let idx = OrthogonalBasisIndex::new(metric.len());
    let mut out = zeros(idx.so_dim());
    for (a, (i, j)) in idx.pairs().enumerate() {
        out[a] = &x[i] * &y[j] - &x[j] * &y[i];
    }
    out
}

/// `Ω = η^{jl} η^{km} e_j ∧ e_k ⊗ Λ_lm`, totally antisymmetrized, in iso coordinates.
pub fn omega_element(metric: &Metric) -> Trivector {
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    let dim = idx.iso_dim();
    // full tensor: only (e_j, e_k, Λ) slots are populated
    let m = idx.so_dim();
    let component = move |a: usize, b: usize, c: usize| -> Scalar {
        if a < m || b < m || c >= m {
            return Scalar::zero();
        }
        let (j, k) = (a - m, b - m);
        if j == k {
            return Scalar::zero();
        }
        // both orderings (j,k) and (k,j) of the sum contribute equally
        let (p, q) = idx.pair(c);
        let mut v = 0;
        if (p, q) == (j, k) {
            v += 2 * metric.sign(j) * metric.sign(k);
        } else if (p, q) == (k, j) {
            v -= 2 * metric.sign(j) * metric.sign(k);
        }
        int(v)
    };
    Trivector::antisymmetrize(dim, component)
}

/// `b_x = Σ_j η_jj e_j ∧ Λ_{x e_j}` in iso coordinates.
pub fn b_x(metric: &Metric, x: &[Scalar]) -> Bivector {
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    let dim = idx.iso_dim();
    let mut b = Bivector::zero(dim);
    for j in 0..n {
        let lam = lambda_of(metric, x, &scalar::unit(n, j));
        let lam = idx.so_in_iso(&scalar::scaled(&int(metric.sign(j)), &lam));
        b = b.add(&Bivector::wedge(&idx.e_vec(j), &lam));
    }
    b
}

/// Parameters of the four b-type families. Vectors in `V` have length `N`;
/// so(p,q) elements have length `N(N−1)/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum BSolutionParams {
    #[serde(rename = "b1")]
    Family1 {
        #[serde(with = "scalar::serde_frac_vec")]
        x: Vector,
    },
    #[serde(rename = "b2")]
    Family2 {
        #[serde(with = "scalar::serde_frac_vec")]
        x: Vector,
        #[serde(rename = "X", with = "scalar::serde_frac_vec")]
        big_x: Vector,
    },
    #[serde(rename = "b3")]
    Family3 {
        #[serde(with = "scalar::serde_frac_vec")]
        x: Vector,
        #[serde(with = "scalar::serde_frac_vecs")]
        v_list: Vec<Vector>,
        #[serde(rename = "X_list", with = "scalar::serde_frac_vecs")]
        x_list: Vec<Vector>,
        #[serde(with = "scalar::serde_frac_vec")]
        alpha_list: Vector,
    },
    #[serde(rename = "b4")]
    Family4 {
        #[serde(with = "scalar::serde_frac_vec")]
        x: Vector,
        #[serde(rename = "X", with = "scalar::serde_frac_vec")]
        big_x: Vector,
        #[serde(with = "scalar::serde_frac_vec")]
        v: Vector,
    },
}

impl BSolutionParams {
    pub fn family(&self) -> u8 {
        match self {
            BSolutionParams::Family1 { .. } => 1,
            BSolutionParams::Family2 { .. } => 2,
            BSolutionParams::Family3 { .. } => 3,
            BSolutionParams::Family4 { .. } => 4,
        }
    }

    pub fn x(&self) -> &[Scalar] {
        match self {
            BSolutionParams::Family1 { x }
            | BSolutionParams::Family2 { x, .. }
            | BSolutionParams::Family3 { x, .. }
            | BSolutionParams::Family4 { x, .. } => x,
        }
    }
}

fn expect_len(v: &[Scalar], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    Ok(())
}

fn violated(what: &str) -> Error {
    Error::ConstraintViolated(what.to_string())
}

/// The bivector of the given family after validating its constraints exactly.
pub fn b_solution(metric: &Metric, params: &BSolutionParams) -> Result<Bivector> {
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    let m = idx.so_dim();
    let x = params.x();
    expect_len(x, n)?;
    let base = b_x(metric, x);
    let xi = idx.v_in_iso(x);
    match params {
        BSolutionParams::Family1 { .. } => Ok(base),
        BSolutionParams::Family2 { big_x, .. } => {
            expect_len(big_x, m)?;
            if !scalar::is_zero_vec(&act(metric, big_x, x)) {
                return Err(violated("Xx=0"));
            }
            Ok(base.add(&Bivector::wedge(&xi, &idx.so_in_iso(big_x))))
        }
        BSolutionParams::Family3 { v_list, x_list, alpha_list, .. } => {
            let k = v_list.len();
            if x_list.len() != k || alpha_list.len() != k {
                return Err(Error::BadParams(format!(
                    "family 3 lists differ in length: {} v, {} X, {} alpha",
                    k,
                    x_list.len(),
                    alpha_list.len()
                )));
            }
            if !metric.inner(x, x).is_zero() {
                return Err(violated("x null"));
            }
            for v in v_list {
                expect_len(v, n)?;
            }
            for big in x_list {
                expect_len(big, m)?;
            }
            let so = build_so(metric);
            for (i, xi_el) in x_list.iter().enumerate() {
                if !scalar::is_zero_vec(&act(metric, xi_el, x)) {
                    return Err(violated("X_i x=0"));
                }
                for (j, vj) in v_list.iter().enumerate() {
                    let expected = if i == j { scalar::scaled(&int(-1), x) } else { zeros(n) };
                    if act(metric, xi_el, vj) != expected {
                        return Err(violated("X_i v_j=-δ_ij x"));
                    }
                }
                for xj_el in &x_list[i + 1..] {
                    if !scalar::is_zero_vec(&so.bracket(xi_el, xj_el)?) {
                        return Err(violated("[X_i,X_j]=0"));
                    }
                }
            }
            let mut y = zeros(m);
            for (a, big) in alpha_list.iter().zip(x_list) {
                scalar::add_scaled(&mut y, a, big);
            }
            let mut b = base.add(&Bivector::wedge(&xi, &idx.so_in_iso(&y)));
            for (v, big) in v_list.iter().zip(x_list) {
                b = b.add(&Bivector::wedge(&idx.v_in_iso(v), &idx.so_in_iso(big)));
            }
            Ok(b)
        }
        BSolutionParams::Family4 { big_x, v, .. } => {
            expect_len(big_x, m)?;
            expect_len(v, n)?;
            if !scalar::is_zero_vec(&act(metric, big_x, x)) {
                return Err(violated("Xx=0"));
            }
            if act(metric, big_x, v) != *v {
                return Err(violated("Xv=v"));
            }
            let xs = idx.so_in_iso(big_x);
            Ok(base.add(&Bivector::wedge(&xi, &xs)).add(&Bivector::wedge(&idx.v_in_iso(v), &xs)))
        }
    }
}

/// Structure constants of a bracket on `V*` in the basis `e*_k = η(e_k)`,
/// lowered: `f[i][j][k] = f_ij^k η_kk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualStructure {
    metric: Metric,
    f: Vec<Scalar>,
}

impl DualStructure {
    pub fn zero(metric: &Metric) -> Self {
        let n = metric.len();
        DualStructure { metric: metric.clone(), f: zeros(n * n * n) }
    }

    /// From lowered components `f_ijk`; checks antisymmetry in `(i, j)`.
    pub fn from_lowered(metric: &Metric, f: impl Fn(usize, usize, usize) -> Scalar) -> Result<Self> {
        let n = metric.len();
        let mut out = DualStructure::zero(metric);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.f[(i * n + j) * n + k] = f(i, j, k);
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if out.get(i, j, k) != -out.get(j, i, k) {
                        return Err(Error::AntisymmetryViolation { i, j, k });
                    }
                }
            }
        }
        Ok(out)
    }

    /// From raised components `f_ij^k` of `[e*_i, e*_j] = f_ij^k e*_k`.
    pub fn from_raised(metric: &Metric, f: impl Fn(usize, usize, usize) -> Scalar) -> Result<Self> {
        DualStructure::from_lowered(metric, |i, j, k| f(i, j, k) * int(metric.sign(k)))
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    /// Lowered `f_ijk`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        let n = self.metric.len();
        self.f[(i * n + j) * n + k].clone()
    }

    /// Raised `f_ij^k`.
    pub fn raised(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.get(i, j, k) * int(self.metric.sign(k))
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.f)
    }
}

/// Checks that `b` has no `h∧h` or `V∧V` component.
pub fn check_b_type(metric: &Metric, b: &Bivector) -> Result<()> {
    let idx = OrthogonalBasisIndex::new(metric.len());
    if b.dim() != idx.iso_dim() {
        return Err(Error::DimensionMismatch { expected: idx.iso_dim(), found: b.dim() });
    }
    let m = idx.so_dim();
    let mixed = |i: usize, j: usize| (i < m) != (j < m);
    if b.restricted(|i, j| !mixed(i, j)).is_zero() {
        Ok(())
    } else {
        Err(Error::NotBType)
    }
}

/// The bracket `[α, β] = b(α)β − b(β)α` on `V*`, with `b(α) = ⟨v_i, α⟩ h_i`
/// for `b = v_i ∧ h_i` and the coadjoint action of so(p,q) on `V*`.
pub fn b_to_dual_structure(metric: &Metric, b: &Bivector) -> Result<DualStructure> {
    check_b_type(metric, b)?;
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    let m = idx.so_dim();
    let r = b.matrix();
    // b(e^a) in so coordinates (coordinate dual basis)
    let b_of: Vec<Vector> = (0..n).map(|a| (0..m).map(|h| r[idx.e(a)][h].clone()).collect()).collect();
    // coadjoint action on coordinate duals: X·α = −Aᵀα
    let coad = |h: &[Scalar], alpha: &[Scalar]| -> Vector {
        let a = defining_matrix(metric, h);
        (0..n)
            .map(|k| -(0..n).fold(Scalar::zero(), |acc, j| acc + &a[j][k] * &alpha[j]))
            .collect()
    };
    let mut raw = vec![zeros(n); n * n];
    for i in 0..n {
        for j in 0..n {
            let ei = scalar::unit(n, i);
            let ej = scalar::unit(n, j);
            raw[i * n + j] = scalar::sub(&coad(&b_of[i], &ej), &coad(&b_of[j], &ei));
        }
    }
    // twisted basis e*_k = η_kk e^k, then lower
    DualStructure::from_lowered(metric, |i, j, k| &raw[i * n + j][k] * int(metric.sign(i) * metric.sign(j)))
}

/// Inverse of [`b_to_dual_structure`]: `b_ijk = ¼(f_jki − f_ijk − f_kij)` and
/// `b = b^{kmn} e_k ∧ Λ_mn`.
pub fn dual_structure_to_b(f: &DualStructure) -> Bivector {
    let metric = f.metric();
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    let quarter = scalar::frac(1, 4);
    let mut b = Bivector::zero(idx.iso_dim());
    for i in 0..n {
        for (a, (p, q)) in idx.pairs().enumerate() {
            let bipq = (f.get(p, q, i) - f.get(i, p, q) - f.get(q, i, p)) * &quarter;
            if bipq.is_zero() {
                continue;
            }
            let c = bipq * int(2 * metric.sign(i) * metric.sign(p) * metric.sign(q));
            b.add_entry(idx.e(i), a, &c);
        }
    }
    b
}

/// Which so(p,q) subalgebra is paired with the Iwasawa-type family:
/// `H1` fixes `e_1` (so(p−1,q)), `H2` fixes `e_{n+1}` (so(p,q−1)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    H1,
    H2,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h1" => Ok(Side::H1),
            "h2" => Ok(Side::H2),
            other => Err(Error::BadParams(format!("unknown side {other:?} (expected h1 or h2)"))),
        }
    }
}

/// `h1 = ⟨Λ_ij : 2 ≤ i < j ≤ n+1⟩` or `h2 = ⟨Λ_ij : 1 ≤ i < j ≤ n⟩`, as
/// generators in so coordinates.
pub fn h_generators(metric: &Metric, side: Side) -> Vec<Vector> {
    let n = metric.len();
    let idx = OrthogonalBasisIndex::new(n);
    idx.pairs()
        .filter(|&(i, j)| match side {
            Side::H1 => i >= 1,
            Side::H2 => j + 2 <= n,
        })
        .map(|(i, j)| idx.lambda_vec(i, j, idx.so_dim()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "u")]
    U,
    #[serde(rename = "utilde")]
    UTilde,
    #[serde(rename = "Utilde")]
    BigUTilde,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Variant::U),
            "utilde" => Ok(Variant::UTilde),
            "Utilde" => Ok(Variant::BigUTilde),
            other => Err(Error::BadParams(format!("unknown variant {other:?} (expected u, utilde or Utilde)"))),
        }
    }
}

/// `s` is the raised-index antisymmetric `N×N` matrix; the so element is
/// `s = Σ_{i,j} s^{ij} Λ_ij`. `d_pairs` lists `(m_k, n_k)` for Ũ.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraSpec {
    pub variant: Variant,
    pub s: Vec<Vector>,
    pub d_pairs: Vec<(usize, usize)>,
}

impl SubalgebraSpec {
    pub fn u(n1: usize) -> Self {
        SubalgebraSpec { variant: Variant::U, s: vec![zeros(n1); n1], d_pairs: Vec::new() }
    }

    pub fn u_tilde(s: Vec<Vector>) -> Self {
        SubalgebraSpec { variant: Variant::UTilde, s, d_pairs: Vec::new() }
    }

    pub fn big_u_tilde(s: Vec<Vector>, d_pairs: Vec<(usize, usize)>) -> Self {
        SubalgebraSpec { variant: Variant::BigUTilde, s, d_pairs }
    }

    /// `χ^D(k)`.
    pub fn chi(&self, k: usize) -> bool {
        self.variant == Variant::BigUTilde && self.d_pairs.iter().any(|&(m, n)| m == k || n == k)
    }
}

/// Raised antisymmetric matrix from `(i, j, s^{ij})` entries (0-based), with
/// `s^{ji} = −s^{ij}` filled in.
pub fn raised_matrix(n1: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Vec<Vector> {
    let mut s = vec![zeros(n1); n1];
    for (i, j, v) in entries {
        s[i][j] += &v;
        s[j][i] -= &v;
    }
    s
}

/// `s = Σ_{i,j} s^{ij} Λ_ij` in so coordinates.
pub fn so_element_from_raised(metric: &Metric, s: &[Vector]) -> Vector {
    let idx = OrthogonalBasisIndex::new(metric.len());
    idx.pairs().map(|(i, j)| &s[i][j] - &s[j][i]).collect()
}

fn validate_raised(n1: usize, s: &[Vector]) -> Result<()> {
    if s.len() != n1 || s.iter().any(|r| r.len() != n1) {
        return Err(Error::DimensionMismatch { expected: n1, found: s.len() });
    }
    for i in 0..n1 {
        for j in i..n1 {
            if s[i][j] != -s[j][i].clone() {
                return Err(Error::BadParams(format!("s is not antisymmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

fn validate_spec(metric: &Metric, spec: &SubalgebraSpec) -> Result<()> {
    let n1 = metric.len();
    if n1 < 3 {
        return Err(Error::InvalidMetric(format!("need n+1 ≥ 3, got {n1}")));
    }
    if metric.sign(0) != 1 || metric.sign(n1 - 1) != -1 {
        return Err(Error::InvalidMetric(format!("need η_11 = +1 and η_(n+1)(n+1) = −1, got {metric}")));
    }
    validate_raised(n1, &spec.s)?;
    let inner = |i: usize| i >= 1 && i + 1 < n1;
    for i in 0..n1 {
        for j in 0..n1 {
            if !spec.s[i][j].is_zero() && !(inner(i) && inner(j)) {
                return Err(Error::BadParams(format!(
                    "s^{{{}{}}} ≠ 0 outside the indices 2..n",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    match spec.variant {
        Variant::U => {
            if spec.s.iter().any(|r| !scalar::is_zero_vec(r)) {
                return Err(Error::BadParams("variant u takes s = 0".into()));
            }
        }
        Variant::UTilde => {}
        Variant::BigUTilde => {
            if spec.d_pairs.is_empty() {
                return Err(Error::BadParams("Utilde needs at least one (m, n) pair".into()));
            }
            let mut seen = Vec::new();
            for &(m, n) in &spec.d_pairs {
                if !(inner(m) && inner(n) && m < n) {
                    return Err(Error::BadParams(format!("pair ({}, {}) must satisfy 2 ≤ m < n ≤ n", m + 1, n + 1)));
                }
                if metric.sign(m) != 1 || metric.sign(n) != -1 {
                    return Err(Error::BadParams(format!(
                        "pair ({}, {}) needs η_mm = +1 and η_nn = −1",
                        m + 1,
                        n + 1
                    )));
                }
                if seen.contains(&m) || seen.contains(&n) {
                    return Err(Error::BadParams("D pairs overlap".into()));
                }
                seen.extend([m, n]);
            }
        }
    }
    Ok(())
}

/// Defect of `s^{ij}η_jp χ(i) − s^{ij}η_ip χ(j) = −χ(p)` at the first failing `p`.
pub fn chi_identity_witness(metric: &Metric, spec: &SubalgebraSpec) -> Option<usize> {
    let n1 = metric.len();
    let chi = |k: usize| if spec.chi(k) { int(1) } else { int(0) };
    (0..n1).find(|&p| {
        let mut lhs = Scalar::zero();
        for i in 0..n1 {
            for j in 0..n1 {
                let s = &spec.s[i][j];
                if s.is_zero() {
                    continue;
                }
                lhs += s * int(metric.eta(j, p)) * chi(i) - s * int(metric.eta(i, p)) * chi(j);
            }
        }
        lhs != -chi(p)
    })
}

/// Generators and validation of an Iwasawa-type subalgebra.
#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaSubalgebra {
    /// `f` (or `f̃`) first, then `g_k` (or `g̃_k`) for `k = 2..n`.
    pub generators: Vec<Vector>,
    pub span: Subspace,
    pub report: Report,
}

/// `u = ⟨f⟩ ⊕ n`, `ũ = ⟨f + s⟩ ⊕ n` or `Ũ = ⟨f + s⟩ ⊕ ⟨χ^D(k) f + g_k⟩`, with
/// `f = Λ_1,n+1` and `g_k = Λ_1k + Λ_k,n+1`.
pub fn iwasawa_type_subalgebra(metric: &Metric, spec: &SubalgebraSpec) -> Result<IwasawaSubalgebra> {
    validate_spec(metric, spec)?;
    let n1 = metric.len();
    let idx = OrthogonalBasisIndex::new(n1);
    let dim = idx.so_dim();
    let last = n1 - 1;
    let so = build_so(metric);
    if spec.variant == Variant::BigUTilde {
        if let Some(p) = chi_identity_witness(metric, spec) {
            return Err(Error::EigenstructureViolated(format!("χ^D identity fails at p = {}", p + 1)));
        }
    }
    let f = idx.lambda_vec(0, last, dim);
    let s = so_element_from_raised(metric, &spec.s);
    let f_tilde = scalar::add(&f, &s);
    let g = |k: usize| scalar::add(&idx.lambda_vec(0, k, dim), &idx.lambda_vec(k, last, dim));
    let g_tilde = |k: usize| if spec.chi(k) { scalar::add(&g(k), &f) } else { g(k) };
    let mut generators = vec![f_tilde.clone()];
    generators.extend((1..last).map(g_tilde));
    let span = Subspace::new(dim, generators.clone())?;

    let mut report = Report::new();
    report.push(liecore::is_subalgebra(&so, &span));
    for side in [Side::H1, Side::H2] {
        let h = Subspace::new(dim, h_generators(metric, side))?;
        let dd = liecore::verify_double_decomposition(&so, &h, &span);
        let pass = dd.passed();
        let name = match side {
            Side::H1 => "complement_h1",
            Side::H2 => "complement_h2",
        };
        report.push(match dd.first_failure() {
            Some(c) if !pass => Check::fail(name, format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
            _ => Check::pass(name),
        });
    }
    // [f̃, g̃_p] = g̃_p + s^{ij}(η_jp g̃_i − η_ip g̃_j) = g̃_p + 2η_pp Σ_i s^{ip} g̃_i
    let mut witness = None;
    for p in 1..last {
        let lhs = so.bracket(&f_tilde, &g_tilde(p))?;
        let mut rhs = g_tilde(p);
        for i in 1..last {
            let c = &spec.s[i][p] * int(2 * metric.sign(p));
            scalar::add_scaled(&mut rhs, &c, &g_tilde(i));
        }
        if lhs != rhs {
            witness = Some(format!("p = {}", p + 1));
            break;
        }
    }
    report.push(Check::from_witness("f_bracket", witness));
    // [g̃_k, g̃_l] = χ(k) g̃_l − χ(l) g̃_k
    let mut witness = None;
    'pairs: for k in 1..last {
        for l in k + 1..last {
            let lhs = so.bracket(&g_tilde(k), &g_tilde(l))?;
            let mut rhs = zeros(dim);
            if spec.chi(k) {
                scalar::add_scaled(&mut rhs, &int(1), &g_tilde(l));
            }
            if spec.chi(l) {
                scalar::add_scaled(&mut rhs, &int(-1), &g_tilde(k));
            }
            if lhs != rhs {
                witness = Some(format!("k = {}, l = {}", k + 1, l + 1));
                break 'pairs;
            }
        }
    }
    report.push(Check::from_witness("g_brackets", witness));
    if spec.variant == Variant::BigUTilde {
        report.push(Check::pass("chi_identity"));
    }
    Ok(IwasawaSubalgebra { generators, span, report })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Remark1Choice {
    Plain,
    Shifted,
}

/// Generators and validation of the iso(p,q) subalgebra
/// `⟨f̄, w, x_k⟩` (plain) or `⟨f̄, w, x_k + λ g_k⟩` (shifted), where
/// `f̄ = e_1 + λ Λ_1,n+1 + s + g`, `w = e_1 − e_{n+1}`, `x_k = e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Remark1Subalgebra {
    pub generators: Vec<Vector>,
    pub span: Subspace,
    pub report: Report,
}

pub fn remark1_subalgebra(
    metric: &Metric,
    lambda: &Scalar,
    s: &[Vector],
    g_elem: &[Scalar],
    choice: Remark1Choice,
) -> Result<Remark1Subalgebra> {
    let n1 = metric.len();
    if n1 < 3 {
        return Err(Error::InvalidMetric(format!("need n+1 ≥ 3, got {n1}")));
    }
    validate_raised(n1, s)?;
    let idx = OrthogonalBasisIndex::new(n1);
    let m = idx.so_dim();
    expect_len(g_elem, m)?;
    let last = n1 - 1;
    let g = |k: usize| scalar::add(&idx.lambda_vec(0, k, m), &idx.lambda_vec(k, last, m));
    let n_span = Subspace::new(m, (1..last).map(g).collect())?;
    if !n_span.contains(g_elem) {
        return Err(Error::BadParams("g must lie in the span of Λ_1k + Λ_k,n+1".into()));
    }
    let iso = build_iso(metric);
    let mut f_bar = idx.e_vec(0);
    scalar::add_scaled(&mut f_bar, lambda, &idx.so_in_iso(&idx.lambda_vec(0, last, m)));
    scalar::add_scaled(&mut f_bar, &int(1), &idx.so_in_iso(&so_element_from_raised(metric, s)));
    scalar::add_scaled(&mut f_bar, &int(1), &idx.so_in_iso(g_elem));
    let w = scalar::sub(&idx.e_vec(0), &idx.e_vec(last));
    let mut generators = vec![f_bar, w];
    for k in 1..last {
        let mut xk = idx.e_vec(k);
        if choice == Remark1Choice::Shifted {
            scalar::add_scaled(&mut xk, lambda, &idx.so_in_iso(&g(k)));
        }
        generators.push(xk);
    }
    let span = Subspace::new(iso.dim(), generators.clone())?;
    if let Some((a, b)) = liecore::closure_witness(&iso, &generators, &span) {
        return Err(Error::NotClosed { witness: format!("bracket of generators {} and {} leaves the span", a + 1, b + 1) });
    }
    let so_part = Subspace::new(iso.dim(), (0..m).map(|a| scalar::unit(iso.dim(), a)).collect())?;
    let mut report = Report::new();
    report.push(Check::pass("subalgebra"));
    report.push(if span.dim() == n1 {
        Check::pass("dimension")
    } else {
        Check::fail("dimension", format!("span has dimension {}, expected {n1}", span.dim()))
    });
    report.push(if so_part.sum_dim(&span) == iso.dim() {
        Check::pass("complement_so")
    } else {
        Check::fail("complement_so", "span meets so(p,q)")
    });
    Ok(Remark1Subalgebra { generators, span, report })
}
