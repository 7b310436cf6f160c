use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::summary::{cover_homology, HomologySummary};
use super::HomologyError;
use crate::coset::{ratio_f64, ratio_string, SubgroupChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    BettiQ,
    BettiFp(u64),
    LogTorsion,
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantKind::BettiQ => write!(f, "betti_q"),
            InvariantKind::BettiFp(p) => write!(f, "betti_f{p}"),
            InvariantKind::LogTorsion => write!(f, "log_torsion"),
        }
    }
}

impl FromStr for InvariantKind {
    type Err = HomologyError;

    /// `betti_q`, `betti_f<p>` (e.g. `betti_f2`), or `log_torsion`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "betti_q" => Ok(InvariantKind::BettiQ),
            "log_torsion" => Ok(InvariantKind::LogTorsion),
            other => other
                .strip_prefix("betti_f")
                .and_then(|p| p.parse().ok())
                .map(InvariantKind::BettiFp)
                .ok_or_else(|| HomologyError::UnknownInvariant(s.to_string())),
        }
    }
}

impl Serialize for InvariantKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradientPoint {
    pub level: usize,
    pub index: usize,
    pub value: f64,
    pub ratio: f64,
    /// `value / index` as `p/q` for integer-valued invariants.
    pub exact_ratio: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradientSeries {
    pub invariant_kind: InvariantKind,
    pub primes: Vec<u64>,
    pub points: Vec<GradientPoint>,
    pub summaries: Vec<HomologySummary>,
    pub l2_reference: Option<f64>,
}

impl GradientSeries {
    pub fn ratios(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.ratio).collect()
    }

    /// Exact ratios, available for integer-valued invariants.
    pub fn exact_ratios(&self) -> Option<Vec<Ratio<u64>>> {
        match self.invariant_kind {
            InvariantKind::LogTorsion => None,
            _ => Some(self.points.iter().map(|p| Ratio::new(p.value as u64, p.index as u64)).collect()),
        }
    }
}

/// One homology computation per level, evaluated in parallel and reported in level order.
pub fn gradient_series(
    chain: &SubgroupChain,
    kind: InvariantKind,
    primes: &[u64],
    l2_reference: Option<f64>,
) -> Result<GradientSeries, HomologyError> {
    let mut primes = primes.to_vec();
    if let InvariantKind::BettiFp(p) = kind {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    let summaries = chain
        .levels()
        .par_iter()
        .map(|t| cover_homology(chain.presentation(), t, &primes))
        .collect::<Result<Vec<_>, _>>()?;
    let points = summaries
        .iter()
        .enumerate()
        .map(|(level, h)| {
            let index = h.subgroup_index;
            let integer = match kind {
                InvariantKind::BettiQ => Some(h.betti_q),
                InvariantKind::BettiFp(p) => Some(h.betti_fp[&p]),
                InvariantKind::LogTorsion => None,
            };
            match integer {
                Some(v) => {
                    let r = Ratio::new(v as u64, index as u64);
                    GradientPoint {
                        level: level + 1,
                        index,
                        value: v as f64,
                        ratio: ratio_f64(&r),
                        exact_ratio: Some(ratio_string(&r)),
                    }
                }
                None => GradientPoint {
                    level: level + 1,
                    index,
                    value: h.log_torsion,
                    ratio: h.log_torsion / index as f64,
                    exact_ratio: None,
                },
            }
        })
        .collect();
    Ok(GradientSeries { invariant_kind: kind, primes, points, summaries, l2_reference })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    StrictlyDecreasing,
    StrictlyIncreasing,
    Constant,
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrendReport {
    pub last_ratio: f64,
    /// Shape of the last `⌈len/2⌉` ratios (at least two).
    pub tail: Monotonicity,
    pub tail_start_level: usize,
    /// Least-squares fit `ratio ≈ intercept + slope / index`.
    pub slope: f64,
    pub intercept: f64,
    pub distance_to_reference: Option<f64>,
    pub evidence: &'static str,
}

pub fn estimate_trend(s: &GradientSeries) -> Result<TrendReport, HomologyError> {
    let n = s.points.len();
    if n < 2 {
        return Err(HomologyError::TooFewPoints(n));
    }
    let tail_len = n.div_ceil(2).max(2);
    let tail = &s.points[n - tail_len..];
    let diffs: Vec<f64> = tail.windows(2).map(|w| w[1].ratio - w[0].ratio).collect();
    let shape = if diffs.iter().all(|&d| d < 0.0) {
        Monotonicity::StrictlyDecreasing
    } else if diffs.iter().all(|&d| d > 0.0) {
        Monotonicity::StrictlyIncreasing
    } else if diffs.iter().all(|&d| d == 0.0) {
        Monotonicity::Constant
    } else {
        Monotonicity::Mixed
    };
    let xs: Vec<f64> = s.points.iter().map(|p| 1.0 / p.index as f64).collect();
    let ys = s.ratios();
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let last_ratio = *ys.last().expect("nonempty");
    Ok(TrendReport {
        last_ratio,
        tail: shape,
        tail_start_level: tail[0].level,
        slope,
        intercept: my - slope * mx,
        distance_to_reference: s.l2_reference.map(|r| (last_ratio - r).abs()),
        evidence: "finite evidence",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{build_abelian_chain, build_cyclic_chain};
    use crate::group::Presentation;

    fn series_from(ratios: &[(usize, usize)]) -> GradientSeries {
        GradientSeries {
            invariant_kind: InvariantKind::BettiQ,
            primes: vec![],
            points: ratios
                .iter()
                .enumerate()
                .map(|(k, &(v, i))| GradientPoint {
                    level: k + 1,
                    index: i,
                    value: v as f64,
                    ratio: v as f64 / i as f64,
                    exact_ratio: None,
                })
                .collect(),
            summaries: vec![],
            l2_reference: Some(1.0),
        }
    }

    #[test]
    fn z_chain() {
        let chain = build_abelian_chain(&Presentation::free(1), &[1, 2, 3, 4, 5], 100).unwrap();
        let s = gradient_series(&chain, InvariantKind::BettiQ, &[], None).unwrap();
        let expected: Vec<Ratio<u64>> = (1..=5).map(|n| Ratio::new(1, n)).collect();
        assert_eq!(s.exact_ratios().unwrap(), expected);
        let lt = gradient_series(&chain, InvariantKind::LogTorsion, &[], None).unwrap();
        assert!(lt.points.iter().all(|p| p.value == 0.0));
    }

    #[test]
    fn free_group_cyclic_covers() {
        let chain = build_cyclic_chain(&Presentation::free(2), &[1, 0], &[2, 3, 4], 100).unwrap();
        let s = gradient_series(&chain, InvariantKind::BettiFp(2), &[3], None).unwrap();
        let expected: Vec<Ratio<u64>> = (2..=4).map(|n| Ratio::new(1 + n, n)).collect();
        assert_eq!(s.exact_ratios().unwrap(), expected);
        assert_eq!(s.primes, vec![3, 2]);
    }

    #[test]
    fn trend_shapes() {
        let t = estimate_trend(&series_from(&[(1, 1), (1, 2), (1, 3)])).unwrap();
        assert_eq!(t.tail, Monotonicity::StrictlyDecreasing);
        assert!((t.last_ratio - 1.0 / 3.0).abs() < 1e-15);
        assert!((t.slope - 1.0).abs() < 1e-12 && t.intercept.abs() < 1e-12);

        let f = estimate_trend(&series_from(&[(3, 2), (4, 3), (5, 4)])).unwrap();
        assert_eq!(f.tail, Monotonicity::StrictlyDecreasing);
        assert!((f.last_ratio - 1.25).abs() < 1e-15);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.distance_to_reference.unwrap() - 0.25).abs() < 1e-15);

        assert!(matches!(estimate_trend(&series_from(&[(1, 1)])), Err(HomologyError::TooFewPoints(1))));
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("betti_q".parse::<InvariantKind>().unwrap(), InvariantKind::BettiQ);
        assert_eq!("betti_f3".parse::<InvariantKind>().unwrap(), InvariantKind::BettiFp(3));
        assert_eq!("log_torsion".parse::<InvariantKind>().unwrap(), InvariantKind::LogTorsion);
        assert!("euler".parse::<InvariantKind>().is_err());
        assert_eq!(InvariantKind::BettiFp(5).to_string(), "betti_f5");
    }
}
