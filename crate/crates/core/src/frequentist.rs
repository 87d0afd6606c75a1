//! McNemar's test on the off-diagonal counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ContingencyTable;
use crate::special::{binomial_tail, chi_square_sf_1df, TailSide};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McNemarVariant {
    /// `(|n01 − n10| − 1)² / n△` against χ²₁.
    ChiSquareCc,
    /// `(n01 − n10)² / n△` against χ²₁.
    ChiSquarePlain,
    /// Two-sided exact Binomial(n△, 1/2) test, tail doubled and capped at 1.
    #[default]
    ExactBinomial,
}

impl McNemarVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            McNemarVariant::ChiSquareCc => "chi_square_cc",
            McNemarVariant::ChiSquarePlain => "chi_square_plain",
            McNemarVariant::ExactBinomial => "exact_binomial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequentistResult {
    /// χ² statistic, or `min(n01, n10)` for the exact variant.
    pub statistic: f64,
    pub p_value: f64,
    pub variant: McNemarVariant,
}

pub fn mcnemar_test(n: &ContingencyTable, variant: McNemarVariant) -> Result<FrequentistResult> {
    let nt = n.n_triangle();
    let diff = n.n01().abs_diff(n.n10()) as f64;
    let (statistic, p_value) = match variant {
        McNemarVariant::ChiSquareCc | McNemarVariant::ChiSquarePlain => {
            if nt == 0 {
                return Err(Error::InvalidTable("chi-square McNemar test needs at least one swing".into()));
            }
            let d = if variant == McNemarVariant::ChiSquareCc { diff - 1.0 } else { diff };
            let stat = d * d / nt as f64;
            (stat, chi_square_sf_1df(stat)?)
        }
        McNemarVariant::ExactBinomial => {
            let k = n.n01().min(n.n10());
            let p = if nt == 0 { 1.0 } else { (2.0 * binomial_tail(nt, k, 0.5, TailSide::Lower)?).min(1.0) };
            (k as f64, p)
        }
    };
    Ok(FrequentistResult { statistic, p_value, variant })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [McNemarVariant; 3] =
        [McNemarVariant::ChiSquareCc, McNemarVariant::ChiSquarePlain, McNemarVariant::ExactBinomial];

    fn table(n: [u64; 4]) -> ContingencyTable {
        ContingencyTable::new(n[0], n[1], n[2], n[3]).unwrap()
    }

    #[test]
    fn continuity_corrected_examples() {
        let p = |n| mcnemar_test(&table(n), McNemarVariant::ChiSquareCc).unwrap().p_value;
        assert!((p([20, 17, 10, 53]) - 0.25).abs() < 0.005);
        assert!((p([20, 21, 9, 50]) - 0.04).abs() < 0.005);
        // 25/8 on one degree of freedom
        assert!((p([1, 7, 1, 5]) - 0.077_099_871_743_542).abs() < 1e-10);
    }

    #[test]
    fn exact_examples() {
        let p = |n| mcnemar_test(&table(n), McNemarVariant::ExactBinomial).unwrap().p_value;
        assert!((p([20, 17, 10, 53]) - 0.25).abs() < 0.005);
        assert!((p([20, 21, 9, 50]) - 0.04).abs() < 0.005);
        // 2 · 9/256
        assert!((p([1, 7, 1, 5]) - 18.0 / 256.0).abs() < 1e-14);
    }

    #[test]
    fn balanced_swings() {
        let r = mcnemar_test(&table([3, 6, 6, 2]), McNemarVariant::ChiSquarePlain).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        let e = mcnemar_test(&table([3, 6, 6, 2]), McNemarVariant::ExactBinomial).unwrap();
        assert_eq!(e.p_value, 1.0);
    }

    #[test]
    fn no_swings() {
        let t = table([3, 0, 0, 2]);
        assert!(mcnemar_test(&t, McNemarVariant::ChiSquareCc).is_err());
        assert!(mcnemar_test(&t, McNemarVariant::ChiSquarePlain).is_err());
        assert_eq!(mcnemar_test(&t, McNemarVariant::ExactBinomial).unwrap().p_value, 1.0);
    }

    #[test]
    fn symmetric_and_diagonal_free() {
        for v in ALL {
            let base = mcnemar_test(&table([4, 9, 2, 7]), v).unwrap();
            let swapped = mcnemar_test(&table([4, 2, 9, 7]), v).unwrap();
            let other_diag = mcnemar_test(&table([40, 9, 2, 0]), v).unwrap();
            assert_eq!(base, swapped);
            assert_eq!(base.p_value.to_bits(), other_diag.p_value.to_bits());
            assert!((0.0..=1.0).contains(&base.p_value));
        }
    }

    #[test]
    fn exact_bounds() {
        for n01 in 0..=15u64 {
            for n10 in 0..=15u64 {
                if n01 + n10 == 0 {
                    continue;
                }
                let t = table([0, n01, n10, 0]);
                let p = mcnemar_test(&t, McNemarVariant::ExactBinomial).unwrap().p_value;
                let one_sided = binomial_tail(n01 + n10, n01.min(n10), 0.5, TailSide::Lower).unwrap();
                assert!(p >= one_sided && p <= 1.0);
            }
        }
    }
}
