//! Evaluation grids on the unit interval and the quadrature rules that go
//! with them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Equally spaced grid on `[0, 1]`.
///
/// `Interior` grids exclude both endpoints (`i / (n + 1)`, `i = 1..=n`) and
/// are safe for densities that diverge at the boundary. `Closed` grids
/// include them (`i / (n - 1)`, `i = 0..n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum UnitGrid {
    Interior(usize),
    Closed(usize),
}

impl UnitGrid {
    /// Default θ grid for likelihood curves: 513 interior points.
    pub const DEFAULT_THETA: UnitGrid = UnitGrid::Interior(513);

    pub fn interior(points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidGrid("interior grid needs at least one point".into()));
        }
        Ok(UnitGrid::Interior(points))
    }

    pub fn closed(points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidGrid("closed grid needs at least two points".into()));
        }
        Ok(UnitGrid::Closed(points))
    }

    pub fn len(&self) -> usize {
        match *self {
            UnitGrid::Interior(n) | UnitGrid::Closed(n) => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, UnitGrid::Closed(_))
    }

    pub fn points(&self) -> Vec<f64> {
        match *self {
            UnitGrid::Interior(n) => {
                let h = 1.0 / (n + 1) as f64;
                (1..=n).map(|i| i as f64 * h).collect()
            }
            UnitGrid::Closed(n) => {
                let last = (n - 1) as f64;
                (0..n).map(|i| i as f64 / last).collect()
            }
        }
    }
}

/// Checks that `xs` is strictly increasing inside `[0, 1]` (open interval
/// when `interior_only`).
pub fn validate_grid(xs: &[f64], interior_only: bool) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    for &x in xs {
        let ok = if interior_only { x > 0.0 && x < 1.0 } else { (0.0..=1.0).contains(&x) };
        if !ok {
            return Err(Error::InvalidGrid(format!("grid point {x} outside the unit interval")));
        }
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Trapezoid rule over the points of the grid.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    xs.windows(2).zip(ys.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum()
}

/// Tensor-product trapezoid rule; `values` is row-major with
/// `values[i * ys.len() + j] = f(xs[i], ys[j])`.
pub fn trapezoid_2d(xs: &[f64], ys: &[f64], values: &[f64]) -> f64 {
    assert_eq!(values.len(), xs.len() * ys.len());
    let rows: Vec<f64> = values.chunks(ys.len()).map(|row| trapezoid(ys, row)).collect();
    trapezoid(xs, &rows)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub(crate) fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule on `(0, 1)`: `panels` equal panels of
/// `order` nodes each. Returns `(nodes, weights)`; no node touches an
/// endpoint.
pub(crate) fn composite_unit_rule(panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (base_x, base_w) = gauss_legendre(order);
    let h = 1.0 / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let left = p as f64 * h;
        for (x, w) in base_x.iter().zip(&base_w) {
            nodes.push(left + 0.5 * h * (x + 1.0));
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}
