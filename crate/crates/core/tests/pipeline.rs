use std::f64::consts::FRAC_PI_4;

use proptest::prelude::*;
use sympl4::gaussian::{covariance, OscillatorConfig};
use sympl4::io::{CovarianceJson, LieJson, MatrixJson, PolymerJson};
use sympl4::polymer::{apply_point_transform, position_moments, Normalization};
use sympl4::special_forms::{squeeze_matrix_x, SqueezeParams};
use sympl4::symplectic::{exp_map, to_x_order, ExpMethod};
use sympl4::verify::{run_one, VerifyOptions};
use sympl4::{Lie, Polymer};

#[test]
fn every_criterion_passes_on_its_own_seed() {
    let opts = VerifyOptions::default();
    for id in 1..=13 {
        let o = run_one(id, &opts).unwrap();
        assert!(o.passed, "{}", o.line());
    }
    assert!(run_one(14, &opts).is_none());
}

#[test]
fn generator_to_covariance_through_json() {
    let l = Lie::from_entries(0.2, -0.1, 0.3, 0.05, 0.1, -0.2, 0.0, 0.4, 0.1, -0.3);
    let l: Lie = serde_json::from_str::<LieJson>(&serde_json::to_string(&LieJson::from(&l)).unwrap())
        .unwrap()
        .to_element()
        .unwrap();
    let e = exp_map(&l).unwrap();
    assert_eq!(e.method, ExpMethod::ClosedForm);
    let m = to_x_order(&e.matrix).unwrap();
    let m = MatrixJson::from(&m).to_matrix(1e-10).unwrap();
    let cfg = OscillatorConfig::new(0.8, 1.4, 0.6).unwrap();
    let v = covariance(&m, &cfg).unwrap();
    let back = CovarianceJson::from(&v).to_covariance().unwrap();
    assert_eq!(back.entries(), v.entries());
    for nu in back.williamson_eigenvalues() {
        assert!((nu - 1.0).abs() < 1e-12);
    }
}

#[test]
fn squeeze_matrix_is_not_a_point_transform() {
    let m = squeeze_matrix_x(&SqueezeParams::natural(0.3, FRAC_PI_4));
    let s: Polymer = serde_json::from_str::<PolymerJson>(r#"{"points":[[1,0]],"coeffs":[[1,0]]}"#)
        .unwrap()
        .to_state()
        .unwrap();
    assert_eq!(apply_point_transform(&s, &m).unwrap_err().code(), "NotPointTransform");
}

proptest! {
    #[test]
    fn polymer_json_round_trip(pts in prop::collection::vec((-4.0f64..4.0, -4.0f64..4.0, -1.0f64..1.0, -1.0f64..1.0), 1..8)) {
        let j = PolymerJson {
            points: pts.iter().map(|p| [p.0, p.1]).collect(),
            coeffs: pts.iter().map(|p| [p.2, p.3]).collect(),
            mu: None,
        };
        let s = j.to_state().unwrap();
        let text = serde_json::to_string(&PolymerJson::from(&s)).unwrap();
        let back = serde_json::from_str::<PolymerJson>(&text).unwrap().to_state().unwrap();
        prop_assert_eq!(back.points(), s.points());
        prop_assert_eq!(back.coeffs(), s.coeffs());
        if let Ok((n, _)) = s.normalized() {
            let m = position_moments(&n, Normalization::Strict).unwrap();
            prop_assert!(m.dispersion.iter().all(|d| d.is_finite() && *d >= 0.0));
        }
    }
}
