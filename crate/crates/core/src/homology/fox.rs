use super::matrix::IntegerMatrix;
use super::HomologyError;
use crate::coset::CosetTable;
use crate::group::Presentation;

/// Boundary maps `(d2, d1)` of the finite cover of the presentation 2-complex
/// described by `t`.
///
/// Cells are ordered generator-major: 1-cell `(s, c)` has index
/// `(s - 1)·index + c`, and 2-cell `(r, c)` has index `r·index + c`. The
/// 2-cell `(r, c)` is the lift of relator `r` starting at coset `c`.
pub fn fox_boundary_matrices(
    p: &Presentation,
    t: &CosetTable,
) -> Result<(IntegerMatrix, IntegerMatrix), HomologyError> {
    if t.generator_count() != p.generator_count() {
        return Err(HomologyError::TableMismatch);
    }
    for r in p.relators() {
        if !t.acts_trivially(r) {
            return Err(HomologyError::TableMismatch);
        }
    }
    let n = t.index();
    let gens = p.generator_count();
    let mut d1 = IntegerMatrix::zeros(n, gens * n);
    for s in 1..=gens {
        for c in 0..n {
            let col = (s - 1) * n + c;
            let d = t.apply_letter(c, s as i32);
            if d != c {
                d1.add_to(d, col, 1);
                d1.add_to(c, col, -1);
            }
        }
    }
    let mut d2 = IntegerMatrix::zeros(gens * n, p.relators().len() * n);
    for (ri, r) in p.relators().iter().enumerate() {
        for c in 0..n {
            let col = ri * n + c;
            let mut cur = c;
            for &l in r.letters() {
                let s = l.unsigned_abs() as usize;
                if l > 0 {
                    d2.add_to((s - 1) * n + cur, col, 1);
                    cur = t.apply_letter(cur, l);
                } else {
                    cur = t.apply_letter(cur, l);
                    d2.add_to((s - 1) * n + cur, col, -1);
                }
            }
            debug_assert_eq!(cur, c);
        }
    }
    let product = d1.checked_mul(&d2).expect("shapes agree");
    assert!(product.is_zero(), "boundary of a boundary must vanish");
    Ok((d2, d1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::todd_coxeter;
    use crate::group::Word;
    use num_traits::Zero;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    #[test]
    fn circle() {
        let p = Presentation::free(1);
        let t = todd_coxeter(&p, &[w(&[1])], 10).unwrap();
        let (d2, d1) = fox_boundary_matrices(&p, &t).unwrap();
        assert_eq!(d1.shape(), (1, 1));
        assert!(d1.is_zero());
        assert_eq!(d2.shape(), (1, 0));
    }

    #[test]
    fn cyclic_five() {
        let p = Presentation::with_default_names(1, vec![w(&[1; 5])]).unwrap();
        let t = todd_coxeter(&p, &[w(&[1])], 10).unwrap();
        let (d2, _) = fox_boundary_matrices(&p, &t).unwrap();
        assert_eq!(d2, IntegerMatrix::from_rows(1, &[vec![5i64]]).unwrap());
    }

    #[test]
    fn commutator_cover_shapes() {
        let p = Presentation::free_abelian(2);
        let t = todd_coxeter(&p, &[w(&[1, 1]), w(&[2, 2, 2])], 100).unwrap();
        let (d2, d1) = fox_boundary_matrices(&p, &t).unwrap();
        assert_eq!(d1.shape(), (6, 12));
        assert_eq!(d2.shape(), (12, 6));
        // each lifted commutator square touches four 1-cells
        for c in 0..6 {
            let nz = (0..12).filter(|&r| !d2.get(r, c).is_zero()).count();
            assert_eq!(nz, 4);
        }
    }

    #[test]
    fn mismatched_table_rejected() {
        let t = todd_coxeter(&Presentation::free(1), &[w(&[1, 1])], 10).unwrap();
        assert!(fox_boundary_matrices(&Presentation::free(2), &t).is_err());
        let p = Presentation::with_default_names(1, vec![w(&[1, 1, 1])]).unwrap();
        assert!(fox_boundary_matrices(&p, &t).is_err());
    }
}
