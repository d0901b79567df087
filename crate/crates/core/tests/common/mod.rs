#![allow(dead_code)]

use dlie::bialg::Bivector;
use dlie::liecore::Metric;
use dlie::linalg;
use dlie::scalar::{self, frac, int, zeros, Scalar, Vector};
use dlie::sofamilies::{self, BSolutionParams, OrthogonalBasisIndex, SubalgebraSpec};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn metric(s: &str) -> Metric {
    Metric::parse(s).unwrap()
}

/// Test vectors `e₁`, `e_{n+1}` and `e₁ + e_{n+1}`.
pub fn test_vectors(n1: usize) -> Vec<(&'static str, Vector)> {
    let first = scalar::unit(n1, 0);
    let last = scalar::unit(n1, n1 - 1);
    vec![("e1", first.clone()), ("e_last", last.clone()), ("e1+e_last", scalar::add(&first, &last))]
}

/// A nonzero `X ∈ so` with `Xx = 0`, from the exact kernel of `X ↦ Xx`.
pub fn stabilizer_element(met: &Metric, x: &[Scalar]) -> Vector {
    let idx = OrthogonalBasisIndex::new(met.len());
    let cols: Vec<Vector> = (0..idx.so_dim())
        .map(|a| sofamilies::act(met, &scalar::unit(idx.so_dim(), a), x))
        .collect();
    let rows = linalg::transpose(&cols);
    linalg::nullspace(&rows, idx.so_dim()).into_iter().next().expect("stabilizer is nontrivial for n+1 ≥ 3")
}

/// Valid parameters for the given family at `x`, when the construction applies:
/// family 3 needs `x = e₁ + e_{n+1}` null, family 4 needs a boost `Λ_ab`
/// orthogonal to `x = e_k`.
pub fn family_params(met: &Metric, family: u8, x: &[Scalar]) -> Option<BSolutionParams> {
    let n1 = met.len();
    let idx = OrthogonalBasisIndex::new(n1);
    let support: Vec<usize> = (0..n1).filter(|&i| !x[i].is_zero()).collect();
    match family {
        1 => Some(BSolutionParams::Family1 { x: x.to_vec() }),
        2 => Some(BSolutionParams::Family2 { x: x.to_vec(), big_x: stabilizer_element(met, x) }),
        3 => {
            if !met.inner(x, x).is_zero() || support != [0, n1 - 1] {
                return None;
            }
            let k = 1;
            let big_x = scalar::sub(&idx.lambda_vec(0, k, idx.so_dim()), &idx.lambda_vec(k, n1 - 1, idx.so_dim()));
            let mut v = zeros(n1);
            v[k] = int(-met.sign(k));
            Some(BSolutionParams::Family3 { x: x.to_vec(), v_list: vec![v], x_list: vec![big_x], alpha_list: vec![frac(3, 2)] })
        }
        4 => {
            if support.len() != 1 {
                return None;
            }
            let rest: Vec<usize> = (0..n1).filter(|i| !support.contains(i)).collect();
            let (a, b) = rest
                .iter()
                .flat_map(|&a| rest.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| a < b && met.sign(a) == -met.sign(b))?;
            let mut v = zeros(n1);
            v[a] = int(1);
            v[b] = int(met.sign(b));
            Some(BSolutionParams::Family4 { x: x.to_vec(), big_x: idx.lambda_vec(a, b, idx.so_dim()), v })
        }
        _ => None,
    }
}

/// Random `b ∈ h∧V` with small rational coefficients.
pub fn random_b(met: &Metric, rng: &mut ChaCha8Rng) -> Bivector {
    let idx = OrthogonalBasisIndex::new(met.len());
    let mut b = Bivector::zero(idx.iso_dim());
    for k in 0..met.len() {
        for a in 0..idx.so_dim() {
            if rng.gen_bool(0.4) {
                let c = frac(rng.gen_range(-6..=6), rng.gen_range(1..=4));
                b.add_entry(idx.e(k), a, &c);
            }
        }
    }
    b
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The six doubles (h₁/h₂ × u/ũ/Ũ) on the given metric. Nonzero `s` for ũ and
/// the single-pair `D` for Ũ.
pub struct DoubleCase {
    pub name: String,
    pub metric: Metric,
    pub side: sofamilies::Side,
    pub spec: SubalgebraSpec,
}

pub fn double_cases() -> Vec<DoubleCase> {
    use sofamilies::Side;
    let mut out = Vec::new();
    let sides = [(Side::H1, "h1"), (Side::H2, "h2")];
    // (+,+,−,−): D = {2,3}, s^{23} = ½ ; (+,+,−,+,−): D = {2,3}, s^{23} = ½, s^{24} = −s^{34} = 1
    let u_tilde = [
        ("+-+-", sofamilies::raised_matrix(4, [(1, 2, int(1))])),
        ("+-+--", sofamilies::raised_matrix(5, [(1, 2, frac(2, 3)), (2, 3, int(-1))])),
    ];
    let big = [
        ("++--", sofamilies::raised_matrix(4, [(1, 2, frac(1, 2))])),
        ("++-+-", sofamilies::raised_matrix(5, [(1, 2, frac(1, 2)), (1, 3, int(1)), (2, 3, int(-1))])),
    ];
    for (side, sname) in sides {
        for m in ["+--+-", "++--", "+---", "+-+--"] {
            let met = metric(m);
            out.push(DoubleCase { name: format!("{sname}/u/{m}"), spec: SubalgebraSpec::u(met.len()), metric: met, side });
        }
        for (m, s) in &u_tilde {
            out.push(DoubleCase {
                name: format!("{sname}/utilde/{m}"),
                metric: metric(m),
                side,
                spec: SubalgebraSpec::u_tilde(s.clone()),
            });
        }
        for (m, s) in &big {
            out.push(DoubleCase {
                name: format!("{sname}/Utilde/{m}"),
                metric: metric(m),
                side,
                spec: SubalgebraSpec::big_u_tilde(s.clone(), vec![(1, 2)]),
            });
        }
    }
    out
}
