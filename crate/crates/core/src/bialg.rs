//! Bivectors, trivectors and cobrackets; the coboundary map, the cocycle and
//! co-Jacobi conditions, the Yang-Baxter trivector `[r,r]` and the linear
//! coboundary solver.
//!
//! Wedges carry no ½: `x∧y = x⊗y − y⊗x`. A bivector is stored as the
//! antisymmetric matrix of its tensor components, so `X_a∧X_b` has
//! `r[a][b] = 1` and `r[b][a] = −1`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liecore::{LieAlgebra, RepKind};
use crate::linalg;
use crate::report::Check;
use crate::scalar::{self, frac, zeros, Scalar, Vector};

/// Ratio `λ / t` between the proportionality constant of `[r,r] = λΩ` and the
/// parameter `t` of `[b,b] = tΩ`, with `Ω` stored totally antisymmetrized.
/// Calibrated once on `b_{e1}` over iso(2,1) with signs (+,−,−).
pub fn kappa0() -> Scalar {
    frac(3, 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    r: Vec<Vector>,
}

impl Bivector {
    pub fn zero(dim: usize) -> Self {
        Bivector { r: vec![zeros(dim); dim] }
    }

    pub fn from_matrix(r: Vec<Vector>) -> Result<Self> {
        let n = r.len();
        if let Some(row) = r.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        for i in 0..n {
            for j in i..n {
                if r[i][j] != -r[j][i].clone() {
                    return Err(Error::ConstraintViolated(format!(
                        "bivector entry ({}, {}) is not antisymmetric",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Bivector { r })
    }

    /// `Σ c · X_a∧X_b` over the given entries.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
        let mut b = Bivector::zero(dim);
        for (i, j, v) in entries {
            for idx in [i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            b.add_entry(i, j, &v);
        }
        Ok(b)
    }

    /// `u∧v = u⊗v − v⊗u`.
    pub fn wedge(u: &[Scalar], v: &[Scalar]) -> Self {
        let n = u.len();
        let r = (0..n)
            .map(|i| (0..n).map(|j| &u[i] * &v[j] - &v[i] * &u[j]).collect())
            .collect();
        Bivector { r }
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.r[i][j]
    }

    /// Adds `c · X_i∧X_j`.
    pub fn add_entry(&mut self, i: usize, j: usize, c: &Scalar) {
        self.r[i][j] += c;
        self.r[j][i] -= c;
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().all(|row| scalar::is_zero_vec(row))
    }

    pub fn add(&self, other: &Bivector) -> Bivector {
        Bivector { r: self.r.iter().zip(&other.r).map(|(a, b)| scalar::add(a, b)).collect() }
    }

    pub fn sub(&self, other: &Bivector) -> Bivector {
        Bivector { r: self.r.iter().zip(&other.r).map(|(a, b)| scalar::sub(a, b)).collect() }
    }

    pub fn scaled(&self, c: &Scalar) -> Bivector {
        Bivector { r: self.r.iter().map(|row| scalar::scaled(c, row)).collect() }
    }

    /// Coordinates on the `X_a∧X_b`, `a < b`, basis in lexicographic order.
    pub fn upper_coords(&self) -> Vector {
        let n = self.dim();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.r[i][j].clone()).collect()
    }

    pub fn from_upper_coords(dim: usize, coords: &[Scalar]) -> Self {
        let mut b = Bivector::zero(dim);
        let pairs = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j)));
        for ((i, j), v) in pairs.zip(coords) {
            b.add_entry(i, j, v);
        }
        b
    }

    /// Keeps only the entries whose index pair satisfies `keep`.
    pub fn restricted(&self, keep: impl Fn(usize, usize) -> bool) -> Bivector {
        let n = self.dim();
        let mut out = Bivector::zero(n);
        for i in 0..n {
            for j in 0..n {
                if keep(i, j) {
                    out.r[i][j] = self.r[i][j].clone();
                }
            }
        }
        out
    }
}

impl Serialize for Bivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SparseTensor::from_bivector(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bivector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = SparseTensor::deserialize(d)?;
        t.into_bivector().map_err(serde::de::Error::custom)
    }
}

/// Sparse JSON form: 1-based strictly increasing indices with fraction strings.
#[derive(Serialize, Deserialize)]
struct SparseTensor {
    dim: usize,
    entries: Vec<(Vec<usize>, String)>,
}

impl SparseTensor {
    fn from_bivector(b: &Bivector) -> Self {
        let n = b.dim();
        let entries = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !b.r[i][j].is_zero())
            .map(|(i, j)| (vec![i + 1, j + 1], scalar::format(&b.r[i][j])))
            .collect();
        SparseTensor { dim: n, entries }
    }

    fn into_bivector(self) -> Result<Bivector> {
        let mut b = Bivector::zero(self.dim);
        for (idx, v) in self.entries {
            let [i, j] = idx[..] else {
                return Err(Error::Json(format!("bivector entry needs 2 indices, got {}", idx.len())));
            };
            if i == 0 || j == 0 || i > self.dim || j > self.dim {
                return Err(Error::IndexOutOfRange { index: i.max(j), dim: self.dim });
            }
            b.add_entry(i - 1, j - 1, &scalar::parse(&v)?);
        }
        Ok(b)
    }
}

/// Totally antisymmetric 3-tensor stored on `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivector {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

fn sort3(a: usize, b: usize, c: usize) -> Option<((usize, usize, usize), bool)> {
    if a == b || b == c || a == c {
        return None;
    }
    let mut v = [a, b, c];
    let mut odd = false;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    Some(((v[0], v[1], v[2]), odd))
}

impl Trivector {
    pub fn zero(dim: usize) -> Self {
        Trivector { dim, entries: BTreeMap::new() }
    }

    /// Total antisymmetrization `(1/6) Σ_σ sgn(σ) T^{σ(abc)}` of a full tensor
    /// given by a component function.
    pub fn antisymmetrize(dim: usize, t: impl Fn(usize, usize, usize) -> Scalar) -> Self {
        let sixth = frac(1, 6);
        let mut entries = BTreeMap::new();
        for a in 0..dim {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    let s = t(a, b, c) + t(b, c, a) + t(c, a, b) - t(b, a, c) - t(a, c, b) - t(c, b, a);
                    if !s.is_zero() {
                        entries.insert((a, b, c), s * &sixth);
                    }
                }
            }
        }
        Trivector { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Scalar {
        match sort3(a, b, c) {
            None => Scalar::zero(),
            Some((key, odd)) => {
                let v = self.entries.get(&key).cloned().unwrap_or_else(Scalar::zero);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Nonzero entries with `i < j < k`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, c: &Scalar) -> Trivector {
        if c.is_zero() {
            return Trivector::zero(self.dim);
        }
        Trivector { dim: self.dim, entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn sub(&self, other: &Trivector) -> Trivector {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let e = entries.entry(*k).or_insert_with(Scalar::zero);
            *e -= v;
        }
        entries.retain(|_, v| !v.is_zero());
        Trivector { dim: self.dim, entries }
    }

    /// The unique `λ` with `self = λ·other`, if one exists. `other` must be nonzero.
    pub fn ratio_to(&self, other: &Trivector) -> Option<Scalar> {
        let (key, base) = other.entries.iter().next()?;
        let lambda = self.entries.get(key).cloned().unwrap_or_else(Scalar::zero) / base;
        self.sub(&other.scaled(&lambda)).is_zero().then_some(lambda)
    }
}

impl Serialize for Trivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .entries
            .iter()
            .map(|((a, b, c), v)| (vec![a + 1, b + 1, c + 1], scalar::format(v)))
            .collect();
        SparseTensor { dim: self.dim, entries }.serialize(s)
    }
}

/// `δ(X_i) = Σ_{j,k} d[i][j][k] X_j⊗X_k`, antisymmetric in `(j, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cobracket {
    dim: usize,
    d: Vec<Scalar>,
}

impl Cobracket {
    pub fn zero(dim: usize) -> Self {
        Cobracket { dim, d: zeros(dim * dim * dim) }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> Scalar) -> Result<Self> {
        let mut c = Cobracket::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let at = c.at(i, j, k);
                    c.d[at] = f(i, j, k);
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in j..dim {
                    if c.get(i, j, k) != &-c.get(i, k, j).clone() {
                        return Err(Error::AntisymmetryViolation { i, j, k });
                    }
                }
            }
        }
        Ok(c)
    }

    fn at(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.d[self.at(i, j, k)]
    }

    /// Sets `d[i][j][k] = v` and `d[i][k][j] = −v`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let a = self.at(i, k, j);
        self.d[a] = -v.clone();
        let b = self.at(i, j, k);
        self.d[b] = v;
    }

    /// `δ(X_i)` as a bivector.
    pub fn image(&self, i: usize) -> Bivector {
        let n = self.dim;
        Bivector { r: (0..n).map(|j| (0..n).map(|k| self.get(i, j, k).clone()).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.d)
    }

    pub fn add(&self, other: &Cobracket) -> Cobracket {
        Cobracket { dim: self.dim, d: scalar::add(&self.d, &other.d) }
    }

    pub fn scaled(&self, c: &Scalar) -> Cobracket {
        Cobracket { dim: self.dim, d: scalar::scaled(c, &self.d) }
    }

    /// Flattened coordinates over `(i, j < k)`.
    fn upper_coords(&self) -> Vector {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n * (n.max(1) - 1) / 2);
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    out.push(self.get(i, j, k).clone());
                }
            }
        }
        out
    }

    /// First nonzero entry `(i, j, k)` with `j < k`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| !self.get(i, j, k).is_zero())
    }
}

impl Serialize for Cobracket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        entries.push((vec![i + 1, j + 1, k + 1], scalar::format(v)));
                    }
                }
            }
        }
        SparseTensor { dim: n, entries }.serialize(s)
    }
}

fn check_dim(alg: &LieAlgebra, found: usize) -> Result<()> {
    if alg.dim() != found {
        return Err(Error::DimensionMismatch { expected: alg.dim(), found });
    }
    Ok(())
}

/// `(ad_{X_i} ⊗ 1 + 1 ⊗ ad_{X_i}) t` for a 2-tensor given as a matrix.
fn ad_on_bivector(alg: &LieAlgebra, i: usize, t: &[Vector]) -> Vec<Vector> {
    let n = alg.dim();
    let mut out = vec![zeros(n); n];
    for a in 0..n {
        for (j, c) in alg.bracket_basis(i, a) {
            // c = c[i][a][j]
            for k in 0..n {
                if !t[a][k].is_zero() {
                    out[*j][k] += c * &t[a][k];
                }
                if !t[k][a].is_zero() {
                    out[k][*j] += c * &t[k][a];
                }
            }
        }
    }
    out
}

/// `δ(X_i) = ad_{X_i}(r)` with `ad` acting diagonally on `g∧g`.
pub fn coboundary_cobracket(alg: &LieAlgebra, r: &Bivector) -> Result<Cobracket> {
    check_dim(alg, r.dim())?;
    let n = alg.dim();
    let mut d = Cobracket::zero(n);
    for i in 0..n {
        let img = ad_on_bivector(alg, i, r.matrix());
        for (j, row) in img.into_iter().enumerate() {
            for (k, v) in row.into_iter().enumerate() {
                let at = d.at(i, j, k);
                d.d[at] = v;
            }
        }
    }
    Ok(d)
}

/// `δ([X_i, X_j]) = ad_{X_i} δ(X_j) − ad_{X_j} δ(X_i)` on all basis pairs.
pub fn verify_cocycle(alg: &LieAlgebra, delta: &Cobracket) -> Check {
    if alg.dim() != delta.dim() {
        return Check::fail("cocycle", format!("cobracket dimension {} vs algebra {}", delta.dim(), alg.dim()));
    }
    let n = alg.dim();
    let images: Vec<Bivector> = (0..n).map(|i| delta.image(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut lhs = vec![zeros(n); n];
            for (m, c) in alg.bracket_basis(i, j) {
                for (row, src) in lhs.iter_mut().zip(images[*m].matrix()) {
                    scalar::add_scaled(row, c, src);
                }
            }
            let a = ad_on_bivector(alg, i, images[j].matrix());
            let b = ad_on_bivector(alg, j, images[i].matrix());
            for p in 0..n {
                for q in p + 1..n {
                    let defect = &lhs[p][q] - &a[p][q] + &b[p][q];
                    if !defect.is_zero() {
                        return Check::fail(
                            "cocycle",
                            format!(
                                "pair ({}, {}): component {}∧{} off by {}",
                                alg.label(i),
                                alg.label(j),
                                alg.label(p),
                                alg.label(q),
                                scalar::format(&defect)
                            ),
                        );
                    }
                }
            }
        }
    }
    Check::pass("cocycle")
}

/// Dual bracket on `g*` from `f[j][k][i] = 2·d[i][j][k]`, with its Jacobi
/// (co-Jacobi) check. `labels` name the primal basis; duals get a `*`.
pub fn dual_algebra_from_cobracket(delta: &Cobracket, labels: &[String]) -> Result<(LieAlgebra, Check)> {
    let n = delta.dim();
    if labels.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: labels.len() });
    }
    let two = scalar::int(2);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                let v = delta.get(i, j, k);
                if !v.is_zero() {
                    entries.push((j, k, i, &two * v));
                }
            }
        }
    }
    let dual = LieAlgebra::new(labels.iter().map(|l| format!("{l}*")).collect(), entries)?;
    let check = dual.verify_jacobi().renamed("co_jacobi");
    Ok((dual, check))
}

/// `[r,r]^{abc} = c_{ik}^a r^{ib} r^{kc} + c_{ik}^b r^{ai} r^{kc} + c_{ik}^c r^{ai} r^{bk}`,
/// totally antisymmetrized.
pub fn cyb_trivector(alg: &LieAlgebra, r: &Bivector) -> Result<Trivector> {
    check_dim(alg, r.dim())?;
    let n = alg.dim();
    let rm = r.matrix();
    let mut full = vec![Scalar::zero(); n * n * n];
    let at = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    for (i, k, m, c) in alg.entries() {
        for x in 0..n {
            let rix = &rm[i][x];
            let rxi = &rm[x][i];
            for y in 0..n {
                let rky = &rm[k][y];
                if !rix.is_zero() && !rky.is_zero() {
                    full[at(m, x, y)] += c * rix * rky;
                }
                if !rxi.is_zero() && !rky.is_zero() {
                    full[at(x, m, y)] += c * rxi * rky;
                }
                let ryk = &rm[y][k];
                if !rxi.is_zero() && !ryk.is_zero() {
                    full[at(x, y, m)] += c * rxi * ryk;
                }
            }
        }
    }
    Ok(Trivector::antisymmetrize(n, |a, b, c| full[at(a, b, c)].clone()))
}

/// First basis element `X` and component `(a, b, c)` where
/// `(ad_X⊗1⊗1 + 1⊗ad_X⊗1 + 1⊗1⊗ad_X) T` is nonzero.
pub fn trivector_invariance_witness(alg: &LieAlgebra, t: &Trivector) -> Option<(usize, usize, usize, usize)> {
    let n = alg.dim();
    for x in 0..n {
        let ad = alg
            .rep_matrix(RepKind::Adjoint, &scalar::unit(n, x))
            .expect("unit vector has the algebra dimension");
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut s = Scalar::zero();
                    for m in 0..n {
                        if !ad[a][m].is_zero() {
                            s += &ad[a][m] * t.get(m, b, c);
                        }
                        if !ad[b][m].is_zero() {
                            s += &ad[b][m] * t.get(a, m, c);
                        }
                        if !ad[c][m].is_zero() {
                            s += &ad[c][m] * t.get(a, b, m);
                        }
                    }
                    if !s.is_zero() {
                        return Some((x, a, b, c));
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GcybeReport {
    pub invariant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance_witness: Option<String>,
    pub proportional_to_omega: bool,
    #[serde(with = "opt_frac", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Scalar>,
    #[serde(with = "opt_frac", skip_serializing_if = "Option::is_none")]
    pub t: Option<Scalar>,
}

impl GcybeReport {
    /// `t = λ/κ₀`, or `NotProportional` when `[r,r]` is not a multiple of `Ω`.
    pub fn t(&self) -> Result<Scalar> {
        self.t.clone().ok_or(Error::NotProportional { invariant: self.invariant })
    }
}

mod opt_frac {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&scalar::format(v)),
            None => s.serialize_none(),
        }
    }
}

pub fn gcybe_report(alg: &LieAlgebra, r: &Bivector, omega: &Trivector) -> Result<GcybeReport> {
    check_dim(alg, omega.dim())?;
    if omega.is_zero() {
        return Err(Error::ZeroTrivector);
    }
    let rr = cyb_trivector(alg, r)?;
    let invariance_witness = trivector_invariance_witness(alg, &rr).map(|(x, a, b, c)| {
        format!(
            "ad_{} [r,r] has nonzero {}∧{}∧{} component",
            alg.label(x),
            alg.label(a),
            alg.label(b),
            alg.label(c)
        )
    });
    let lambda = rr.ratio_to(omega);
    let t = lambda.as_ref().map(|l| l / kappa0());
    Ok(GcybeReport {
        invariant: invariance_witness.is_none(),
        invariance_witness,
        proportional_to_omega: lambda.is_some(),
        lambda,
        t,
    })
}

/// Solutions of `∂r = δ`: one particular bivector plus a basis of the
/// invariant bivectors (the kernel of `∂`).
#[derive(Debug, Clone, PartialEq)]
pub struct CoboundarySolution {
    pub particular: Bivector,
    pub kernel_basis: Vec<Bivector>,
}

pub fn solve_coboundary(alg: &LieAlgebra, delta: &Cobracket) -> Result<CoboundarySolution> {
    check_dim(alg, delta.dim())?;
    let n = alg.dim();
    let cols: Vec<Vector> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut e = Bivector::zero(n);
            e.add_entry(a, b, &scalar::one());
            coboundary_cobracket(alg, &e).map(|d| d.upper_coords())
        })
        .collect::<Result<_>>()?;
    let rows = linalg::transpose(&cols);
    let target = delta.upper_coords();
    let (x, kernel) = linalg::solve(&rows, cols.len(), &target).ok_or(Error::NoSolution)?;
    Ok(CoboundarySolution {
        particular: Bivector::from_upper_coords(n, &x),
        kernel_basis: kernel.iter().map(|k| Bivector::from_upper_coords(n, k)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("X{i}")).collect()
    }

    // e(1), e(2), h with [h, e1] = e1, [h, e2] = -e2: a small solvable algebra
    fn solvable() -> LieAlgebra {
        LieAlgebra::new(labels(3), vec![(2, 0, 0, int(1)), (2, 1, 1, int(-1))]).unwrap()
    }

    #[test]
    fn wedge_components() {
        let b = Bivector::wedge(&scalar::unit(3, 0), &scalar::unit(3, 2));
        assert_eq!(b.get(0, 2), &int(1));
        assert_eq!(b.get(2, 0), &int(-1));
        assert_eq!(b.upper_coords(), vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn zero_r_gives_zero_cobracket_and_trivector() {
        let g = solvable();
        let r = Bivector::zero(3);
        assert!(coboundary_cobracket(&g, &r).unwrap().is_zero());
        assert!(cyb_trivector(&g, &r).unwrap().is_zero());
    }

    #[test]
    fn abelian_trivector_vanishes() {
        let g = LieAlgebra::abelian(labels(4));
        let r = Bivector::from_entries(4, vec![(0, 1, int(2)), (2, 3, frac(1, 3)), (1, 3, int(-1))]).unwrap();
        assert!(cyb_trivector(&g, &r).unwrap().is_zero());
        assert!(verify_cocycle(&g, &Cobracket::from_fn(4, |_, j, k| int(j as i64 - k as i64)).unwrap()).pass);
    }

    #[test]
    fn coboundary_is_cocycle_and_solvable() {
        let g = solvable();
        let r = Bivector::from_entries(3, vec![(0, 2, int(1)), (0, 1, frac(2, 3))]).unwrap();
        let d = coboundary_cobracket(&g, &r).unwrap();
        assert!(verify_cocycle(&g, &d).pass);
        let sol = solve_coboundary(&g, &d).unwrap();
        assert_eq!(coboundary_cobracket(&g, &sol.particular).unwrap(), d);
        for k in &sol.kernel_basis {
            assert!(coboundary_cobracket(&g, k).unwrap().is_zero());
        }
    }

    #[test]
    fn cobracket_rejects_non_antisymmetric() {
        assert!(matches!(Cobracket::from_fn(2, |_, _, _| int(1)), Err(Error::AntisymmetryViolation { .. })));
    }

    #[test]
    fn trivector_antisymmetry() {
        let t = Trivector::antisymmetrize(4, |a, b, c| if (a, b, c) == (0, 1, 2) { int(6) } else { int(0) });
        assert_eq!(t.get(0, 1, 2), int(1));
        assert_eq!(t.get(1, 0, 2), int(-1));
        assert_eq!(t.get(2, 0, 1), int(1));
        assert_eq!(t.get(0, 0, 1), int(0));
        assert_eq!(t.scaled(&int(3)).ratio_to(&t), Some(int(3)));
    }

    #[test]
    fn dual_of_zero_is_abelian() {
        let (dual, check) = dual_algebra_from_cobracket(&Cobracket::zero(3), &labels(3)).unwrap();
        assert!(dual.is_abelian());
        assert!(check.pass);
    }

    #[test]
    fn json_forms() {
        let b = Bivector::from_entries(3, vec![(0, 2, frac(-1, 2))]).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"dim":3,"entries":[[[1,3],"-1/2"]]}"#);
        let back: Bivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
    }
}
