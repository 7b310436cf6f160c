use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::fox::fox_boundary_matrices;
use super::matrix::{bigint_list, ln_bigint, IntegerMatrix};
use super::modp::{is_prime, rank_mod_p};
use super::snf::smith_normal_form;
use super::HomologyError;
use crate::coset::CosetTable;
use crate::group::Presentation;

/// First homology of one finite cover.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomologySummary {
    /// Number of 0-cells, i.e. the index of the subgroup for a cover.
    pub subgroup_index: usize,
    pub betti_q: usize,
    pub betti_fp: BTreeMap<u64, usize>,
    #[serde(with = "bigint_list")]
    pub invariant_factors_nontrivial: Vec<BigInt>,
    pub log_torsion: f64,
}

/// `H₁ = ker d1 / im d2` over ℤ, ℚ and the requested prime fields.
///
/// `C₁ / ker d1` embeds in the free module `C₀`, so `ker d1` is a direct
/// summand of `C₁` and the torsion of `H₁` equals the torsion of `coker d2`.
pub fn homology_summary(
    d2: &IntegerMatrix,
    d1: &IntegerMatrix,
    primes: &[u64],
) -> Result<HomologySummary, HomologyError> {
    if d1.cols() != d2.rows() {
        return Err(HomologyError::ShapeMismatch { d1_cols: d1.cols(), d2_rows: d2.rows() });
    }
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(HomologyError::NotPrime(p));
    }
    if !d1.checked_mul(d2).expect("shapes agree").is_zero() {
        return Err(HomologyError::CompositionNonzero);
    }
    let n1 = d1.cols();
    let snf1 = smith_normal_form(d1);
    let snf2 = smith_normal_form(d2);
    let betti_q = n1 - snf1.rank - snf2.rank;
    let one = BigInt::one();
    let factors: Vec<BigInt> = snf2.invariant_factors.into_iter().filter(|d| d > &one).collect();
    let mut betti_fp = BTreeMap::new();
    for &p in primes {
        let b = n1 - rank_mod_p(d1, p) - rank_mod_p(d2, p);
        let divisible = factors.iter().filter(|d| d.is_multiple_of(&BigInt::from(p))).count();
        assert_eq!(b, betti_q + divisible, "universal coefficients violated at p = {p}");
        betti_fp.insert(p, b);
    }
    let log_torsion = factors.iter().map(ln_bigint).fold(0.0, |a, b| a + b);
    Ok(HomologySummary {
        subgroup_index: d1.rows(),
        betti_q,
        betti_fp,
        invariant_factors_nontrivial: factors,
        log_torsion,
    })
}

/// Homology of the cover of the presentation complex given by `t`.
pub fn cover_homology(p: &Presentation, t: &CosetTable, primes: &[u64]) -> Result<HomologySummary, HomologyError> {
    let (d2, d1) = fox_boundary_matrices(p, t)?;
    homology_summary(&d2, &d1, primes)
}

impl HomologySummary {
    /// Exact torsion order `∏ factors`.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors_nontrivial.iter().product()
    }

    pub fn has_torsion(&self) -> bool {
        !self.invariant_factors_nontrivial.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::todd_coxeter;
    use crate::group::Word;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    fn whole(p: &Presentation) -> HomologySummary {
        let gens: Vec<Word> = (1..=p.generator_count() as u32).map(Word::generator).collect();
        let t = todd_coxeter(p, &gens, 10).unwrap();
        cover_homology(p, &t, &[2, 3, 5]).unwrap()
    }

    #[test]
    fn circle() {
        let h = whole(&Presentation::free(1));
        assert_eq!(h.betti_q, 1);
        assert!(h.invariant_factors_nontrivial.is_empty());
        assert_eq!(h.log_torsion, 0.0);
    }

    #[test]
    fn cyclic_five() {
        let h = whole(&Presentation::with_default_names(1, vec![w(&[1; 5])]).unwrap());
        assert_eq!(h.betti_q, 0);
        assert_eq!(h.invariant_factors_nontrivial, vec![BigInt::from(5)]);
        assert_eq!(h.log_torsion, 5f64.ln());
        assert_eq!(h.betti_fp[&5], 1);
        assert_eq!(h.betti_fp[&2], 0);
        assert!(h.has_torsion());
    }

    #[test]
    fn torus() {
        let h = whole(&Presentation::free_abelian(2));
        assert_eq!(h.betti_q, 2);
        assert!(!h.has_torsion());
    }

    #[test]
    fn free_group_double_cover() {
        let p = Presentation::free(2);
        let t = todd_coxeter(&p, &[w(&[1, 1]), w(&[2]), w(&[1, 2, -1])], 10).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(cover_homology(&p, &t, &[]).unwrap().betti_q, 3);
    }

    #[test]
    fn klein_bottle_has_two_torsion() {
        // ⟨a, b | a b a⁻¹ b⟩: H₁ = ℤ ⊕ ℤ/2
        let h = whole(&Presentation::with_default_names(2, vec![w(&[1, 2, -1, 2])]).unwrap());
        assert_eq!(h.betti_q, 1);
        assert_eq!(h.invariant_factors_nontrivial, vec![BigInt::from(2)]);
        assert_eq!(h.betti_fp[&2], 2);
        assert_eq!(h.betti_fp[&3], 1);
    }

    #[test]
    fn rejects_bad_input() {
        let d1 = IntegerMatrix::from_rows(2, &[vec![1i64, 0]]).unwrap();
        let d2 = IntegerMatrix::from_rows(1, &[vec![1i64], vec![0]]).unwrap();
        assert_eq!(homology_summary(&d2, &d1, &[]), Err(HomologyError::CompositionNonzero));
        let ok2 = IntegerMatrix::zeros(2, 1);
        assert_eq!(homology_summary(&ok2, &d1, &[4]), Err(HomologyError::NotPrime(4)));
        let wrong = IntegerMatrix::zeros(3, 1);
        assert!(matches!(homology_summary(&wrong, &d1, &[]), Err(HomologyError::ShapeMismatch { .. })));
    }
}
