use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::presentation::Presentation;
use super::word::Word;
use super::GroupError;
use crate::homology::{smith_normal_form_with_transforms, IntegerMatrix};

/// The abelianization `ℤ^n / ⟨relator exponent rows⟩`, diagonalized once.
#[derive(Clone, Debug)]
pub struct Abelianization {
    generators: usize,
    factors: Vec<BigInt>,
    // columns of V: coordinates in which the relator lattice is diagonal
    right: IntegerMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianImage {
    /// Raw exponent sums, one per generator.
    pub exponents: Vec<i64>,
    /// The exponent vector does not lie in the relator lattice.
    pub nonzero_mod_lattice: bool,
    /// The image has infinite order in the abelianization (nonzero in the free part).
    pub infinite_order: bool,
}

impl Abelianization {
    pub fn new(p: &Presentation) -> Self {
        let n = p.generator_count();
        let mut m = IntegerMatrix::zeros(p.relators().len(), n);
        for (r, rel) in p.relators().iter().enumerate() {
            for (g, e) in exponent_sums(rel, n).into_iter().enumerate() {
                m.set(r, g, BigInt::from(e));
            }
        }
        let (snf, t) = smith_normal_form_with_transforms(&m);
        Abelianization { generators: n, factors: snf.invariant_factors, right: t.right }
    }

    /// Rank of the free part.
    pub fn free_rank(&self) -> usize {
        self.generators - self.factors.len()
    }

    /// Torsion coefficients (> 1) of the abelianization.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| *d > &BigInt::from(1)).cloned().collect()
    }

    /// Coordinates of the exponent vector after the diagonalizing change of basis.
    fn coordinates(&self, exponents: &[i64]) -> Vec<BigInt> {
        (0..self.generators)
            .map(|j| {
                exponents
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
                    .map(|(i, e)| self.right.get(i, j) * BigInt::from(*e))
                    .sum()
            })
            .collect()
    }

    /// Projection onto the free part `ℤ^{free_rank}`; a well-defined homomorphism on the group.
    pub fn free_part(&self, exponents: &[i64]) -> Vec<BigInt> {
        self.coordinates(exponents).split_off(self.factors.len())
    }

    pub fn image(&self, w: &Word) -> Result<AbelianImage, GroupError> {
        w.check_range(self.generators)?;
        let exponents = exponent_sums(w, self.generators);
        let coords = self.coordinates(&exponents);
        let rank = self.factors.len();
        let infinite_order = coords[rank..].iter().any(|c| !c.is_zero());
        let torsion_part_outside = coords[..rank].iter().zip(&self.factors).any(|(c, d)| !c.is_multiple_of(d));
        Ok(AbelianImage { exponents, nonzero_mod_lattice: infinite_order || torsion_part_outside, infinite_order })
    }
}

pub(crate) fn exponent_sums(w: &Word, generators: usize) -> Vec<i64> {
    let mut v = vec![0i64; generators];
    for &l in w.letters() {
        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    v
}

/// Exponent-sum vector of `w` with lattice-membership flags.
pub fn abelianized_image(w: &Word, p: &Presentation) -> Result<AbelianImage, GroupError> {
    p.check_word(w)?;
    Abelianization::new(p).image(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    #[test]
    fn commutator_relator_gives_trivial_lattice() {
        let p = Presentation::free_abelian(2);
        let img = abelianized_image(&w(&[1, 1, -2]), &p).unwrap();
        assert_eq!(img.exponents, vec![2, -1]);
        assert!(img.nonzero_mod_lattice);
        assert!(img.infinite_order);
    }

    #[test]
    fn cyclic_of_order_five() {
        let p = Presentation::with_default_names(1, vec![w(&[1, 1, 1, 1, 1])]).unwrap();
        let img = abelianized_image(&w(&[1, 1, 1, 1, 1]), &p).unwrap();
        assert_eq!(img.exponents, vec![5]);
        assert!(!img.nonzero_mod_lattice);
        let a = abelianized_image(&w(&[1]), &p).unwrap();
        assert!(a.nonzero_mod_lattice);
        assert!(!a.infinite_order);
        assert_eq!(Abelianization::new(&p).torsion(), vec![BigInt::from(5)]);
    }

    #[test]
    fn empty_word_is_zero() {
        let p = Presentation::free(3);
        let img = abelianized_image(&Word::identity(), &p).unwrap();
        assert_eq!(img.exponents, vec![0, 0, 0]);
        assert!(!img.nonzero_mod_lattice && !img.infinite_order);
        assert!(abelianized_image(&w(&[4]), &p).is_err());
    }

    #[test]
    fn mixed_torsion_and_free() {
        // ⟨a, b | a^2 b^4⟩ ≅ ℤ ⊕ ℤ/2
        let p = Presentation::with_default_names(2, vec![w(&[1, 1, 2, 2, 2, 2])]).unwrap();
        let ab = Abelianization::new(&p);
        assert_eq!(ab.free_rank(), 1);
        assert_eq!(ab.torsion(), vec![BigInt::from(2)]);
        // a b^2 has order 2
        let x = ab.image(&w(&[1, 2, 2])).unwrap();
        assert!(x.nonzero_mod_lattice && !x.infinite_order);
        assert!(ab.image(&w(&[2])).unwrap().infinite_order);
    }
}
