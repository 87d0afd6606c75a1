use corrprop::{
    ci_log_bf, ci_prior, default_log_bf, i_log_bf, i_prior_theta_marginal, mcnemar_test, sensitivity_curve, to_summary,
    ContingencyTable, DirichletHyper, Error, McNemarVariant, Method, Result, UnitGrid,
};
use serde::Serialize;

pub fn table(cells: &[u32]) -> Result<ContingencyTable> {
    match *cells {
        [n00, n01, n10, n11] => ContingencyTable::new(n00.into(), n01.into(), n10.into(), n11.into()),
        _ => Err(Error::InvalidTable(format!("expected 4 cells, got {}", cells.len()))),
    }
}

pub fn hyper(a: &[f64]) -> Result<DirichletHyper> {
    match *a {
        [a00, a01, a10, a11] => DirichletHyper::new(a00, a01, a10, a11),
        _ => Err(Error::InvalidHyper(format!("expected 4 hyperparameters, got {}", a.len()))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodRow {
    pub method: &'static str,
    pub size: Option<u64>,
    pub bf: f64,
    pub pr_h0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceReport {
    pub rows: Vec<MethodRow>,
    pub mcnemar_p: f64,
    pub mcnemar_p_cc: Option<f64>,
}

pub fn evidence(n: &ContingencyTable, a: &DirichletHyper, q: f64) -> Result<EvidenceReport> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidGrid(format!("q = {q} outside [0, 1]")));
    }
    let xt = (q * n.n_triangle() as f64).round() as u64;
    let xpp = (q * n.n_plus_plus() as f64).round() as u64;
    let row = |method: Method, size, lbf| {
        let s = to_summary(lbf, method, None);
        MethodRow { method: method.as_str(), size, bf: s.bayes_factor(), pr_h0: s.posterior_prob_h0 }
    };
    let rows = vec![
        row(Method::Default, None, default_log_bf(n, a)),
        row(Method::CiIntrinsic, Some(xt), ci_log_bf(n, a, xt)),
        row(Method::IIntrinsic, Some(xpp), i_log_bf(n, a, xpp)),
    ];
    Ok(EvidenceReport {
        rows,
        mcnemar_p: mcnemar_test(n, McNemarVariant::ExactBinomial)?.p_value,
        mcnemar_p_cc: mcnemar_test(n, McNemarVariant::ChiSquareCc).ok().map(|r| r.p_value),
    })
}

/// CI curve then I curve, `points` values each. Without swings the CI curve
/// is undefined and comes back as NaN.
pub fn sensitivity(n: &ContingencyTable, a: &DirichletHyper, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidGrid("need at least two q values".into()));
    }
    let q: Vec<f64> = (0..points).map(|i| i as f64 / (points - 1) as f64).collect();
    let mut out = match sensitivity_curve(n, a, Method::CiIntrinsic, &q) {
        Ok(c) => c.probabilities(),
        Err(_) if n.n_triangle() == 0 => vec![f64::NAN; points],
        Err(e) => return Err(e),
    };
    out.extend(sensitivity_curve(n, a, Method::IIntrinsic, &q)?.probabilities());
    Ok(out)
}

pub fn prior_curves(a: &DirichletHyper, x_triangle: u64, x_plus_plus: u64, points: usize) -> Result<Vec<f64>> {
    let theta = UnitGrid::interior(points)?.points();
    let ci = ci_prior(a, x_triangle);
    let marginal = i_prior_theta_marginal(a, x_plus_plus);
    let mut out = theta.clone();
    for t in &theta {
        out.push(ci.density(*t)?);
    }
    for t in &theta {
        out.push(marginal.density(*t)?);
    }
    Ok(out)
}
