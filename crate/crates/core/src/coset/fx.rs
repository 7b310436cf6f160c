use num_rational::Ratio;
use serde::Serialize;

use super::chain::SubgroupChain;
use super::table::CosetTable;
use super::CosetError;
use crate::group::{free_reduce, Word};

/// Fixed-point ratio of left translation by `gamma` on `G / H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FxReport {
    pub gamma: Word,
    pub index: usize,
    pub fixed: usize,
    pub value: Ratio<u64>,
}

#[derive(Serialize)]
struct FxRow<'a> {
    gamma: &'a Word,
    index: usize,
    fixed: usize,
    value: f64,
    exact: String,
}

impl Serialize for FxReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FxRow {
            gamma: &self.gamma,
            index: self.index,
            fixed: self.fixed,
            value: ratio_f64(&self.value),
            exact: ratio_string(&self.value),
        }
        .serialize(s)
    }
}

pub(crate) fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn ratio_string(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `fx(γ)` on the table's cosets.
///
/// The left coset `gH` corresponds to the right coset `Hg⁻¹`, and `γgH = gH`
/// exactly when `Hg⁻¹` is fixed by `γ⁻¹`; a permutation and its inverse have
/// the same fixed points, so this counts fixed points of `γ` in the table.
pub fn fx(gamma: &Word, t: &CosetTable) -> Result<FxReport, CosetError> {
    gamma.check_range(t.generator_count())?;
    let fixed = (0..t.index()).filter(|&c| t.apply_word(c, gamma) == c).count();
    Ok(FxReport { gamma: gamma.clone(), index: t.index(), fixed, value: Ratio::new(fixed as u64, t.index() as u64) })
}

#[derive(Clone, Debug, Serialize)]
pub struct FarberSeries {
    pub gamma: Word,
    pub values: Vec<FxReport>,
    pub final_value: f64,
    pub passes: bool,
    /// First level from which every value stays within `eps`, if any.
    pub tail_start: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FarberReport {
    pub eps: String,
    pub indices: Vec<usize>,
    pub series: Vec<FarberSeries>,
    pub passes: bool,
    pub scope: &'static str,
}

/// Check that `fx(γ)` has dropped to at most `eps` on the last level of the chain.
///
/// Only a finite prefix of the chain is inspected; nothing is claimed about the limit.
pub fn farber_prefix_check(
    chain: &SubgroupChain,
    gammas: &[Word],
    eps: Ratio<u64>,
) -> Result<FarberReport, CosetError> {
    let mut series = Vec::with_capacity(gammas.len());
    for gamma in gammas {
        if free_reduce(gamma).is_empty() {
            return Err(CosetError::Malformed("fixed-point ratios are only taken for nontrivial elements".into()));
        }
        let values = chain.levels().iter().map(|t| fx(gamma, t)).collect::<Result<Vec<_>, _>>()?;
        let within: Vec<bool> = values.iter().map(|r| r.value <= eps).collect();
        let tail_start =
            within.iter().rposition(|ok| !ok).map_or(
                Some(0),
                |k| {
                    if k + 1 < within.len() {
                        Some(k + 1)
                    } else {
                        None
                    }
                },
            );
        let last = values.last().map(|r| r.value).unwrap_or_else(|| Ratio::from_integer(1));
        series.push(FarberSeries {
            gamma: gamma.clone(),
            final_value: ratio_f64(&last),
            passes: within.last().copied().unwrap_or(false),
            tail_start,
            values,
        });
    }
    Ok(FarberReport {
        eps: ratio_string(&eps),
        indices: chain.indices(),
        passes: series.iter().all(|s| s.passes),
        series,
        scope: "finite-prefix",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::todd_coxeter;
    use crate::group::Presentation;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    #[test]
    fn two_z() {
        let t = todd_coxeter(&Presentation::free(1), &[w(&[1, 1])], 10).unwrap();
        assert_eq!(fx(&w(&[1]), &t).unwrap().value, Ratio::from_integer(0));
        assert_eq!(fx(&w(&[1, 1]), &t).unwrap().value, Ratio::from_integer(1));
        assert_eq!(fx(&Word::identity(), &t).unwrap().value, Ratio::from_integer(1));
        assert!(fx(&w(&[2]), &t).is_err());
    }

    #[test]
    fn depends_only_on_permutation() {
        let p = Presentation::with_default_names(2, vec![w(&[1, 1]), w(&[2, 2, 2]), w(&[1, 2, 1, 2])]).unwrap();
        let t = todd_coxeter(&p, &[], 100).unwrap();
        for u in [w(&[1]), w(&[2, -1]), w(&[1, 2]), Word::identity()] {
            for v in [w(&[1, 2, -1]), w(&[2]), w(&[1, 1])] {
                let x = u.concat(&v).concat(&u.inverse());
                // conjugates have equally many fixed points
                assert_eq!(fx(&x, &t).unwrap().fixed, fx(&v, &t).unwrap().fixed);
                let longer = x.concat(&w(&[1, 1]));
                assert_eq!(t.permutation(&longer), t.permutation(&x));
                assert_eq!(fx(&longer, &t).unwrap().value, fx(&x, &t).unwrap().value);
            }
        }
    }

    #[test]
    fn json_row_shape() {
        let t = todd_coxeter(&Presentation::free(1), &[w(&[1, 1, 1])], 10).unwrap();
        let v = serde_json::to_value(fx(&w(&[1, 1, 1]), &t).unwrap()).unwrap();
        assert_eq!(v["gamma"], serde_json::json!([1, 1, 1]));
        assert_eq!(v["index"], 3);
        assert_eq!(v["fixed"], 3);
        assert_eq!(v["value"], 1.0);
    }
}
