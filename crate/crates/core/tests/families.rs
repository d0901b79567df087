mod common;

use common::{double_cases, family_params, metric};
use dlie::bialg;
use dlie::scalar::{self, frac, int};
use dlie::sofamilies::{self, BSolutionParams, OrthogonalBasisIndex, Remark1Choice, Side, SubalgebraSpec};
use dlie::Error;

#[test]
fn iwasawa_type_subalgebras_complement_both_sides() {
    for case in double_cases() {
        let u = sofamilies::iwasawa_type_subalgebra(&case.metric, &case.spec).unwrap();
        assert!(u.report.passed(), "{}: {:?}", case.name, u.report);
        assert!(u.report.get("complement_h1").unwrap().pass);
        assert!(u.report.get("complement_h2").unwrap().pass);
    }
}

#[test]
fn family_constraints_are_enforced() {
    let met = metric("++-");
    let idx = OrthogonalBasisIndex::new(3);
    let x = scalar::unit(3, 0);
    let bad_x = idx.lambda_vec(0, 1, 3);
    let err = sofamilies::b_solution(&met, &BSolutionParams::Family2 { x: x.clone(), big_x: bad_x.clone() }).unwrap_err();
    assert_eq!(err, Error::ConstraintViolated("Xx=0".into()));
    let err = sofamilies::b_solution(
        &met,
        &BSolutionParams::Family3 { x: x.clone(), v_list: vec![], x_list: vec![], alpha_list: vec![] },
    )
    .unwrap_err();
    assert_eq!(err, Error::ConstraintViolated("x null".into()));
    let v = scalar::sub(&scalar::unit(3, 1), &scalar::unit(3, 2));
    let boost = idx.lambda_vec(1, 2, 3);
    let err = sofamilies::b_solution(&met, &BSolutionParams::Family4 { x, big_x: boost, v: scalar::scaled(&int(-1), &scalar::add(&v, &scalar::unit(3, 2))) })
        .unwrap_err();
    assert_eq!(err, Error::ConstraintViolated("Xv=v".into()));
}

#[test]
fn family_three_and_four_values() {
    let met = metric("++-");
    let iso = sofamilies::build_iso(&met);
    let omega = sofamilies::omega_element(&met);
    let x4 = scalar::unit(3, 0);
    let b4 = sofamilies::b_solution(&met, &family_params(&met, 4, &x4).unwrap()).unwrap();
    let rep = bialg::gcybe_report(&iso, &b4, &omega).unwrap();
    assert_eq!(rep.t().unwrap(), int(-1));
    let x3 = scalar::add(&scalar::unit(3, 0), &scalar::unit(3, 2));
    for alpha in [int(0), int(1), frac(-7, 3)] {
        let Some(BSolutionParams::Family3 { x, v_list, x_list, .. }) = family_params(&met, 3, &x3) else { panic!() };
        let p = BSolutionParams::Family3 { x, v_list, x_list, alpha_list: vec![alpha] };
        let rep = bialg::gcybe_report(&iso, &sofamilies::b_solution(&met, &p).unwrap(), &omega).unwrap();
        assert!(rep.invariant);
        assert_eq!(rep.t().unwrap(), int(0));
    }
}

#[test]
fn params_round_trip_through_json() {
    let met = metric("++-");
    let p = family_params(&met, 4, &scalar::unit(3, 0)).unwrap();
    let json = serde_json::to_string(&p).unwrap();
    assert!(json.contains("\"family\":\"b4\""));
    let back: BSolutionParams = serde_json::from_str(&json).unwrap();
    assert_eq!(back, p);
}

#[test]
fn remark1_subalgebra_variants() {
    let met = metric("+-+-");
    let idx = OrthogonalBasisIndex::new(4);
    let s = sofamilies::raised_matrix(4, [(1, 2, int(1))]);
    let g = scalar::add(&idx.lambda_vec(0, 1, 6), &idx.lambda_vec(1, 3, 6));
    for choice in [Remark1Choice::Plain, Remark1Choice::Shifted] {
        match sofamilies::remark1_subalgebra(&met, &int(0), &s, &g, choice) {
            Ok(r) => assert!(r.report.get("dimension").unwrap().pass),
            Err(e) => assert!(matches!(e, Error::NotClosed { .. }), "{e}"),
        }
    }
}

#[test]
fn utilde_requires_matching_signs() {
    let met = metric("+-+-");
    let s = sofamilies::raised_matrix(4, [(1, 2, frac(1, 2))]);
    let err = sofamilies::iwasawa_type_subalgebra(&met, &SubalgebraSpec::big_u_tilde(s, vec![(1, 2)])).unwrap_err();
    assert!(matches!(err, Error::BadParams(_)));
}

#[test]
fn utilde_with_wrong_s_violates_eigenstructure() {
    let met = metric("++--");
    let s = sofamilies::raised_matrix(4, [(1, 2, int(1))]);
    let err = sofamilies::iwasawa_type_subalgebra(&met, &SubalgebraSpec::big_u_tilde(s, vec![(1, 2)])).unwrap_err();
    assert!(matches!(err, Error::EigenstructureViolated(_)));
}

#[test]
fn h_generators_have_so_of_one_less_dimension() {
    let met = metric("+-+--");
    for side in [Side::H1, Side::H2] {
        assert_eq!(sofamilies::h_generators(&met, side).len(), 6);
    }
}
