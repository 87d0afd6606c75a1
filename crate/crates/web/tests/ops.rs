use corrprop_web::ops;

const EX1: [u32; 4] = [20, 17, 10, 53];
const UNIFORM: [f64; 4] = [1.0; 4];

#[test]
fn evidence_for_first_example() {
    let r = ops::evidence(&ops::table(&EX1).unwrap(), &ops::hyper(&UNIFORM).unwrap(), 1.0).unwrap();
    assert_eq!(r.rows.len(), 3);
    assert!((r.rows[0].pr_h0 - 0.64).abs() < 0.005);
    assert_eq!(r.rows[1].size, Some(27));
    assert_eq!(r.rows[2].size, Some(100));
    assert!((r.mcnemar_p - 0.2478).abs() < 1e-4);
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"method\":\"ci_intrinsic\""));
}

#[test]
fn bad_input_is_an_error() {
    assert!(ops::table(&[1, 2, 3]).is_err());
    assert!(ops::table(&[0, 0, 0, 0]).is_err());
    assert!(ops::hyper(&[1.0, 0.0, 1.0, 1.0]).is_err());
    let t = ops::table(&EX1).unwrap();
    assert!(ops::evidence(&t, &ops::hyper(&UNIFORM).unwrap(), 1.5).is_err());
}

#[test]
fn sensitivity_layout() {
    let t = ops::table(&EX1).unwrap();
    let p = ops::sensitivity(&t, &ops::hyper(&UNIFORM).unwrap(), 21).unwrap();
    assert_eq!(p.len(), 42);
    assert_eq!(p[0], p[21]);
    assert!(p[20] < 0.5 && p[41] < 0.5);

    let no_swings = ops::table(&[4, 0, 0, 3]).unwrap();
    let p = ops::sensitivity(&no_swings, &ops::hyper(&UNIFORM).unwrap(), 5).unwrap();
    assert!(p[..5].iter().all(|v| v.is_nan()));
    assert!(p[5..].iter().all(|v| v.is_finite()));
}

#[test]
fn prior_curves_layout() {
    let c = ops::prior_curves(&ops::hyper(&UNIFORM).unwrap(), 0, 0, 50).unwrap();
    assert_eq!(c.len(), 150);
    assert!(c[..50].iter().all(|t| *t > 0.0 && *t < 1.0));
    assert!(c[50..].iter().all(|d| (d - 1.0).abs() < 1e-12));

    let peaked = ops::prior_curves(&ops::hyper(&UNIFORM).unwrap(), 20, 20, 51).unwrap();
    let mid = 25;
    assert!(peaked[51 + mid] > 1.0 && peaked[102 + mid] > 1.0);
}
