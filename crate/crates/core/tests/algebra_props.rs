mod common;

use common::metric;
use dlie::bialg::{self, Bivector};
use dlie::liecore::{self, LieAlgebra, Metric, RepKind, Subspace};
use dlie::linalg;
use dlie::scalar::{self, frac, Scalar, Vector};
use dlie::sofamilies::{self, OrthogonalBasisIndex};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), dim)
}

fn signs(n1: usize) -> impl Strategy<Value = Metric> {
    prop::collection::vec(prop::bool::ANY, n1).prop_map(|v| Metric::new(v.into_iter().map(|b| if b { 1 } else { -1 }).collect()).unwrap())
}

fn commutator(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let ab = linalg::mat_mul(a, b);
    let ba = linalg::mat_mul(b, a);
    ab.iter().zip(&ba).map(|(x, y)| scalar::sub(x, y)).collect()
}

fn iso_case() -> impl Strategy<Value = (Metric, Vector, Vector)> {
    (3usize..=4).prop_flat_map(|n1| {
        let dim = OrthogonalBasisIndex::new(n1).iso_dim();
        (signs(n1), vector(dim), vector(dim))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn representations_are_homomorphisms((met, x, y) in iso_case()) {
        let iso = sofamilies::build_iso(&met);
        let xy = iso.bracket(&x, &y).unwrap();
        for kind in [RepKind::Adjoint, RepKind::Coadjoint] {
            let lhs = iso.rep_matrix(kind, &xy).unwrap();
            let rhs = commutator(&iso.rep_matrix(kind, &x).unwrap(), &iso.rep_matrix(kind, &y).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bracket_is_antisymmetric((met, x, y) in iso_case()) {
        let iso = sofamilies::build_iso(&met);
        let xy = iso.bracket(&x, &y).unwrap();
        let yx = iso.bracket(&y, &x).unwrap();
        prop_assert!(scalar::is_zero_vec(&scalar::add(&xy, &yx)));
    }

    #[test]
    fn annihilator_has_complementary_dimension(gens in prop::collection::vec(vector(6), 0..5)) {
        let a = Subspace::new(6, gens).unwrap();
        let ann = liecore::annihilator(6, &a).unwrap();
        prop_assert_eq!(a.dim() + ann.dim(), 6);
        for v in a.basis() {
            for w in ann.basis() {
                prop_assert_eq!(scalar::dot(v, w), scalar::zero());
            }
        }
    }

    #[test]
    fn coboundary_is_linear((met, x, y) in iso_case(), c in rational()) {
        let iso = sofamilies::build_iso(&met);
        let n = iso.dim();
        let r1 = Bivector::wedge(&x, &y);
        let r2 = Bivector::wedge(&y, &scalar::unit(n, 0));
        let lhs = bialg::coboundary_cobracket(&iso, &r1.add(&r2.scaled(&c))).unwrap();
        let rhs = bialg::coboundary_cobracket(&iso, &r1).unwrap()
            .add(&bialg::coboundary_cobracket(&iso, &r2).unwrap().scaled(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coboundaries_are_cocycles((met, x, y) in iso_case()) {
        let iso = sofamilies::build_iso(&met);
        let delta = bialg::coboundary_cobracket(&iso, &Bivector::wedge(&x, &y)).unwrap();
        prop_assert!(bialg::verify_cocycle(&iso, &delta).pass);
    }

    #[test]
    fn b_f_round_trip(met in signs(4), seed in any::<u64>()) {
        let b = common::random_b(&met, &mut common::rng(seed));
        let f = sofamilies::b_to_dual_structure(&met, &b).unwrap();
        prop_assert_eq!(sofamilies::dual_structure_to_b(&f), b);
    }

    #[test]
    fn semidirect_with_dual_satisfies_jacobi(met in signs(3)) {
        prop_assert!(sofamilies::build_iso(&met).semidirect_with_dual().verify_jacobi().pass);
    }
}

#[test]
fn json_round_trip() {
    let iso = sofamilies::build_iso(&metric("+-+"));
    let json = serde_json::to_string(&iso.to_json()).unwrap();
    let back = LieAlgebra::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, iso);
}

#[test]
fn corrupted_constant_breaks_jacobi() {
    let iso = sofamilies::build_iso(&metric("+--"));
    let mut json = iso.to_json();
    json.constants[0].3 = "7".into();
    let bad = LieAlgebra::from_json(&json).unwrap();
    let check = bad.verify_jacobi();
    assert!(!check.pass);
    assert!(check.witness.is_some());
}

#[test]
fn b_x_is_a_gcybe_solution_for_every_signature() {
    for s in ["+++", "++-", "+--", "---", "+-+-"] {
        let met = metric(s);
        let iso = sofamilies::build_iso(&met);
        let x = scalar::unit(met.len(), 0);
        let rep = bialg::gcybe_report(&iso, &sofamilies::b_x(&met, &x), &sofamilies::omega_element(&met)).unwrap();
        assert!(rep.invariant, "{s}");
        assert_eq!(rep.t().unwrap(), -met.inner(&x, &x), "{s}");
    }
}

#[test]
fn non_invariant_bivector_is_reported() {
    let met = metric("+--");
    let iso = sofamilies::build_iso(&met);
    let idx = OrthogonalBasisIndex::new(3);
    let r = Bivector::wedge(&idx.e_vec(0), &idx.e_vec(1));
    let r = r.add(&Bivector::wedge(&idx.e_vec(1), &idx.so_in_iso(&idx.lambda_vec(0, 1, 3))));
    let rep = bialg::gcybe_report(&iso, &r, &sofamilies::omega_element(&met)).unwrap();
    assert!(!rep.invariant || !rep.proportional_to_omega);
}
