//! Finite-dimensional Lie algebras over the rationals: structure constants,
//! brackets, representations, subspaces, annihilators and bilinear forms.
//!
//! Basis elements are indexed from 0 in code. Labels (and the JSON
//! interchange) carry the human-facing names, with 1-based indices.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::report::{Check, Report};
use crate::scalar::{self, add_scaled, zeros, Scalar, Vector};

/// Diagonal metric η = diag(signs) on an (n+1)-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Metric {
    signs: Vec<i8>,
}

impl Metric {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidMetric("empty signature".into()));
        }
        if let Some(s) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::InvalidMetric(format!("entry {s} is not ±1")));
        }
        Ok(Metric { signs })
    }

    /// Parses a sign string such as `"+---"` (ASCII `-` or the minus sign `−`).
    pub fn parse(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::InvalidMetric(format!("unexpected character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Metric::new(signs)
    }

    /// Block metric with `p` plus signs followed by `q` minus signs.
    pub fn block(p: usize, q: usize) -> Self {
        let mut signs = vec![1; p];
        signs.extend(std::iter::repeat(-1).take(q));
        Metric { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn p(&self) -> usize {
        self.signs.iter().filter(|s| **s == 1).count()
    }

    pub fn q(&self) -> usize {
        self.signs.iter().filter(|s| **s == -1).count()
    }

    /// η_ii.
    pub fn sign(&self, i: usize) -> i64 {
        i64::from(self.signs[i])
    }

    /// η_ij.
    pub fn eta(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.sign(i)
        } else {
            0
        }
    }

    /// η(x, y) for coordinate vectors.
    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        x.iter()
            .zip(y)
            .enumerate()
            .fold(Scalar::zero(), |acc, (i, (a, b))| acc + scalar::int(self.sign(i)) * a * b)
    }

    /// Metric restricted to the given basis indices (in order).
    pub fn restrict(&self, indices: impl IntoIterator<Item = usize>) -> Metric {
        Metric { signs: indices.into_iter().map(|i| self.signs[i]).collect() }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Lie algebra given by structure constants `[X_i, X_j] = Σ_k c[i][j][k] X_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    // sparse rows of c, indexed by i * dim + j
    table: Vec<Vec<(usize, Scalar)>>,
}

/// First Jacobi violation: component `l` of the cyclic sum for `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobiWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    Adjoint,
    Coadjoint,
}

impl LieAlgebra {
    /// Builds an algebra from `(i, j, k, value)` entries. Entries may list
    /// both orderings of a pair; any disagreement with antisymmetry is an
    /// error. Pairs given only once are completed antisymmetrically.
    pub fn new(
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut dense: Vec<Option<Scalar>> = vec![None; dim * dim * dim];
        let at = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            let slot = &mut dense[at(i, j, k)];
            *slot = Some(slot.take().unwrap_or_else(Scalar::zero) + v);
        }
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = dense[at(i, j, k)].clone();
                    let b = dense[at(j, i, k)].clone();
                    let value = match (a, b) {
                        (Some(a), Some(b)) => {
                            if a != -b {
                                return Err(Error::AntisymmetryViolation { i, j, k });
                            }
                            a
                        }
                        (Some(a), None) => a,
                        (None, Some(b)) => -b,
                        (None, None) => continue,
                    };
                    if !value.is_zero() {
                        table[i * dim + j].push((k, value));
                    }
                }
            }
        }
        Ok(LieAlgebra { dim, labels, table })
    }

    pub fn abelian(labels: Vec<String>) -> Self {
        let dim = labels.len();
        LieAlgebra { dim, labels, table: vec![Vec::new(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nonzero entries of `[X_i, X_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket_basis(i, j)
            .iter()
            .find(|(m, _)| *m == k)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// All nonzero `(i, j, k, c)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        (0..self.dim).flat_map(move |i| {
            (0..self.dim).flat_map(move |j| self.bracket_basis(i, j).iter().map(move |(k, v)| (i, j, *k, v)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &xy * c;
                }
            }
        }
        out
    }

    /// Exhaustive Jacobi check over basis triples; `None` when it holds.
    pub fn jacobi_witness(&self) -> Option<JacobiWitness> {
        let n = self.dim;
        let mut acc = zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    acc.iter_mut().for_each(|x| x.set_zero());
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, cab) in self.bracket_basis(a, b) {
                            for (l, cmc) in self.bracket_basis(*m, c) {
                                acc[*l] += cab * cmc;
                            }
                        }
                    }
                    if let Some(l) = acc.iter().position(|x| !x.is_zero()) {
                        return Some(JacobiWitness { i, j, k, l });
                    }
                }
            }
        }
        None
    }

    pub fn verify_jacobi(&self) -> Check {
        let w = self.jacobi_witness().map(|w| {
            format!(
                "cyclic sum for ({}, {}, {}) has nonzero {} component",
                self.label(w.i),
                self.label(w.j),
                self.label(w.k),
                self.label(w.l)
            )
        });
        Check::from_witness("jacobi", w)
    }

    /// Matrix of `ad_x` (columns = images of basis vectors) or of the
    /// coadjoint action `-(ad_x)^T` in the coordinate dual basis.
    pub fn rep_matrix(&self, kind: RepKind, x: &[Scalar]) -> Result<Vec<Vector>> {
        self.check_len(x)?;
        let n = self.dim;
        let mut m = vec![zeros(n); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for l in 0..n {
                for (k, c) in self.bracket_basis(i, l) {
                    m[*k][l] += xi * c;
                }
            }
        }
        Ok(match kind {
            RepKind::Adjoint => m,
            RepKind::Coadjoint => linalg::transpose(&m)
                .into_iter()
                .map(|row| row.into_iter().map(|v| -v).collect())
                .collect(),
        })
    }

    /// The semidirect product `g ⋉ g*` for the coadjoint action, with
    /// basis `(X_1..X_n, X*_1..X*_n)` and the dual part an abelian ideal.
    pub fn semidirect_with_dual(&self) -> LieAlgebra {
        let n = self.dim;
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("{l}*")));
        let mut table = vec![Vec::new(); 4 * n * n];
        let d = 2 * n;
        for i in 0..n {
            for j in 0..n {
                table[i * d + j] = self.bracket_basis(i, j).to_vec();
            }
        }
        // [X_i, X*_j] = -Σ_k c[i][k][j] X*_k
        for i in 0..n {
            for k in 0..n {
                for (j, c) in self.bracket_basis(i, k) {
                    let v = -c.clone();
                    table[i * d + n + j].push((n + k, v.clone()));
                    table[(n + j) * d + i].push((n + k, -v));
                }
            }
        }
        for row in table.iter_mut() {
            row.sort_by_key(|(k, _)| *k);
        }
        LieAlgebra { dim: d, labels, table }
    }

    /// Parses a linear combination of basis labels such as `"e1+e3"`,
    /// `"2e2 - 1/2*L23"` or `"L12*"`.
    pub fn parse_element(&self, expr: &str) -> Result<Vector> {
        self.parse_element_with(expr, |label| self.index_of(label).map(|i| (i, scalar::one())))
    }

    /// As [`parse_element`](Self::parse_element), with a custom label resolver
    /// returning the basis index and a coefficient.
    pub fn parse_element_with(
        &self,
        expr: &str,
        resolve: impl Fn(&str) -> Option<(usize, Scalar)>,
    ) -> Result<Vector> {
        let bad = |msg: String| Error::BadParams(format!("{msg} in {expr:?}"));
        let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty expression".into()));
        }
        let mut out = zeros(self.dim);
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let split = body.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(body.len());
            let (num, rest) = body.split_at(split);
            let label = rest.strip_prefix('*').filter(|_| !num.is_empty()).unwrap_or(rest);
            if label.is_empty() {
                return Err(bad(format!("term {term:?} has no basis label")));
            }
            let mut coef = if num.is_empty() { scalar::one() } else { scalar::parse(num)? };
            if negative {
                coef = -coef;
            }
            let (idx, sign) = resolve(label).ok_or_else(|| bad(format!("unknown basis label {label:?}")))?;
            out[idx] += coef * sign;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let constants = self
            .entries()
            .filter(|(i, j, _, _)| i < j)
            .map(|(i, j, k, v)| (i + 1, j + 1, k + 1, scalar::format(v)))
            .collect();
        AlgebraJson { dim: self.dim, labels: self.labels.clone(), constants }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        if json.labels.len() != json.dim {
            return Err(Error::DimensionMismatch { expected: json.dim, found: json.labels.len() });
        }
        let mut entries = Vec::with_capacity(json.constants.len());
        for (i, j, k, v) in &json.constants {
            for idx in [*i, *j, *k] {
                if idx == 0 || idx > json.dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim: json.dim });
                }
            }
            entries.push((i - 1, j - 1, k - 1, scalar::parse(v)?));
        }
        LieAlgebra::new(json.labels.clone(), entries)
    }
}

/// JSON interchange: 1-based indices, `i < j` entries only, fraction strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub labels: Vec<String>,
    pub constants: Vec<(usize, usize, usize, String)>,
}

/// Subspace of a `parent_dim`-dimensional space, stored in reduced
/// row-echelon form so membership and equality are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    parent_dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(parent_dim: usize, generators: Vec<Vector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != parent_dim) {
            return Err(Error::DimensionMismatch { expected: parent_dim, found: g.len() });
        }
        let (rows, pivots) = linalg::rref(generators, parent_dim);
        Ok(Subspace { parent_dim, rows, pivots })
    }

    pub fn zero(parent_dim: usize) -> Self {
        Subspace { parent_dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(parent_dim: usize) -> Self {
        let rows = (0..parent_dim).map(|i| scalar::unit(parent_dim, i)).collect();
        Subspace { parent_dim, rows, pivots: (0..parent_dim).collect() }
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.parent_dim {
            return false;
        }
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                add_scaled(&mut r, &-f, row);
            }
        }
        scalar::is_zero_vec(&r)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Dimension of the sum `self + other`.
    pub fn sum_dim(&self, other: &Subspace) -> usize {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        linalg::rank(&rows, self.parent_dim)
    }
}

/// Annihilator `A⁰` in the coordinate dual basis.
pub fn annihilator(alg_dim: usize, a: &Subspace) -> Result<Subspace> {
    if a.parent_dim() != alg_dim {
        return Err(Error::DimensionMismatch { expected: alg_dim, found: a.parent_dim() });
    }
    Subspace::new(alg_dim, linalg::nullspace(a.basis(), alg_dim))
}

/// `[A, A] ⊆ A`, with the first escaping pair of echelon generators as witness.
pub fn is_subalgebra(alg: &LieAlgebra, a: &Subspace) -> Check {
    closure_witness(alg, a.basis(), a).map_or_else(
        || Check::pass("subalgebra"),
        |(x, y)| Check::fail("subalgebra", format!("bracket of generators {x} and {y} leaves the span")),
    )
}

pub(crate) fn closure_witness(alg: &LieAlgebra, gens: &[Vector], span: &Subspace) -> Option<(usize, usize)> {
    for (x, gx) in gens.iter().enumerate() {
        for (y, gy) in gens.iter().enumerate().skip(x + 1) {
            if !span.contains(&alg.bracket_unchecked(gx, gy)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Double Lie algebra test: both subalgebras and `g = A ⊕ B`.
pub fn verify_double_decomposition(alg: &LieAlgebra, a: &Subspace, b: &Subspace) -> Report {
    let mut r = Report::new();
    r.push(is_subalgebra(alg, a).renamed("a_subalgebra"));
    r.push(is_subalgebra(alg, b).renamed("b_subalgebra"));
    let n = alg.dim();
    let total = a.dim() + b.dim();
    r.push(if total == n {
        Check::pass("dimension_sum")
    } else {
        Check::fail("dimension_sum", format!("dim A + dim B = {total}, dim g = {n}"))
    });
    let sum = a.sum_dim(b);
    r.push(if sum == total {
        Check::pass("trivial_intersection")
    } else {
        Check::fail("trivial_intersection", format!("intersection has dimension {}", total - sum))
    });
    r
}

/// Bilinear form given by its Gram matrix in the algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    matrix: Vec<Vector>,
    symmetric: bool,
}

impl BilinearForm {
    pub fn new(matrix: Vec<Vector>, symmetric: bool) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        if symmetric {
            for i in 0..n {
                for j in 0..i {
                    if matrix[i][j] != matrix[j][i] {
                        return Err(Error::ConstraintViolated(format!(
                            "form flagged symmetric but entry ({}, {}) differs from its transpose",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(BilinearForm { matrix, symmetric })
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm { matrix: (0..n).map(|i| scalar::unit(n, i)).collect(), symmetric: true }
    }

    /// Canonical pairing `⟨X_i, X*_j⟩ = δ_ij` on `g ⊕ g*`, `g` of dimension `n`.
    pub fn canonical_pairing(n: usize) -> Self {
        let mut m = vec![zeros(2 * n); 2 * n];
        for i in 0..n {
            m[i][n + i] = scalar::one();
            m[n + i][i] = scalar::one();
        }
        BilinearForm { matrix: m, symmetric: true }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.matrix[i][j]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            acc += xi * scalar::dot(&self.matrix[i], y);
        }
        acc
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        BilinearForm {
            matrix: self.matrix.iter().map(|r| scalar::scaled(c, r)).collect(),
            symmetric: self.symmetric,
        }
    }
}

/// Invariance `⟨[z,x],y⟩ + ⟨x,[z,y]⟩ = 0` on all basis triples, plus nondegeneracy.
pub fn verify_invariant_form(alg: &LieAlgebra, form: &BilinearForm) -> Report {
    let n = alg.dim();
    let mut r = Report::new();
    if form.dim() != n {
        r.push(Check::fail("form_dimension", format!("form has dimension {}, algebra {n}", form.dim())));
        return r;
    }
    let g = form.matrix();
    let mut witness = None;
    'outer: for z in 0..n {
        for x in 0..n {
            // ⟨[z,x], y⟩ = Σ_k c[z][x][k] g[k][y]
            for y in 0..n {
                let mut s = Scalar::zero();
                for (k, c) in alg.bracket_basis(z, x) {
                    s += c * &g[*k][y];
                }
                for (k, c) in alg.bracket_basis(z, y) {
                    s += c * &g[x][*k];
                }
                if !s.is_zero() {
                    witness = Some(format!(
                        "z = {}, x = {}, y = {}: defect {}",
                        alg.label(z),
                        alg.label(x),
                        alg.label(y),
                        scalar::format(&s)
                    ));
                    break 'outer;
                }
            }
        }
    }
    r.push(Check::from_witness("invariant", witness));
    let det = linalg::determinant(g);
    r.push(if det.is_zero() {
        Check::fail("nondegenerate", "determinant is zero")
    } else {
        Check::pass("nondegenerate").with_value(scalar::format(&det))
    });
    r
}
