use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::CosetTable;
use super::todd_coxeter::todd_coxeter;
use super::CosetError;
use crate::group::{Abelianization, Presentation, Word};

/// Finite-index subgroups of one group, listed level by level.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupChain {
    presentation: Presentation,
    levels: Vec<CosetTable>,
    labels: Vec<String>,
}

impl SubgroupChain {
    pub fn new(presentation: Presentation, levels: Vec<CosetTable>, labels: Vec<String>) -> Result<Self, CosetError> {
        if levels.len() != labels.len() {
            return Err(CosetError::Malformed(format!("{} levels but {} labels", levels.len(), labels.len())));
        }
        if levels.iter().any(|t| t.origin() != &presentation) {
            return Err(CosetError::MixedPresentations);
        }
        Ok(SubgroupChain { presentation, levels, labels })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn levels(&self) -> &[CosetTable] {
        &self.levels
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn indices(&self) -> Vec<usize> {
        self.levels.iter().map(CosetTable::index).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Table of the kernel of `Γ → ⊕ ℤ/n` given by integer images of each generator.
/// Cosets are the points of `(ℤ/n)^k`, enumerated in mixed-radix order.
fn quotient_table(p: &Presentation, images: &[Vec<i64>], n: u64) -> Result<CosetTable, CosetError> {
    let k = images.first().map_or(0, Vec::len);
    let index = n.checked_pow(k as u32).filter(|&i| i <= u32::MAX as u64).ok_or(CosetError::IndexOverflow)? as usize;
    let encode = |v: &[u64]| v.iter().fold(0u64, |acc, &x| acc * n + x) as usize;
    let mut forward = vec![vec![0u32; index]; p.generator_count()];
    let mut point = vec![0u64; k];
    for (row, img) in forward.iter_mut().zip(images) {
        for (c, target) in row.iter_mut().enumerate() {
            let mut rest = c as u64;
            for slot in point.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            let moved: Vec<u64> =
                point.iter().zip(img).map(|(&x, &d)| (x as i64 + d).rem_euclid(n as i64) as u64).collect();
            *target = encode(&moved) as u32;
        }
    }
    CosetTable::from_permutations(p.clone(), Vec::new(), forward).map_err(|e| match e {
        CosetError::NotTransitive => CosetError::NotSurjective,
        other => other,
    })
}

/// Give a kernel table its Schreier generators and confirm them by re-enumeration.
fn confirm_kernel(p: &Presentation, table: CosetTable, max_cosets: usize) -> Result<CosetTable, CosetError> {
    let gens = table.schreier_generators();
    let enumerated = todd_coxeter(p, &gens, max_cosets)?;
    if enumerated.index() != table.index() {
        return Err(CosetError::Malformed(format!(
            "Schreier generators enumerate index {} instead of {}",
            enumerated.index(),
            table.index()
        )));
    }
    let normal = is_normal(&enumerated);
    assert!(normal, "kernel of a homomorphism must be normal");
    Ok(enumerated)
}

fn check_moduli(moduli: &[u64]) -> Result<(), CosetError> {
    match moduli.iter().find(|&&n| n == 0) {
        Some(_) => Err(CosetError::InvalidModulus),
        None => Ok(()),
    }
}

/// Kernels of `Γ → H₁(Γ)/torsion → (ℤ/n)^k`, one level per modulus.
pub fn build_abelian_chain(p: &Presentation, moduli: &[u64], max_cosets: usize) -> Result<SubgroupChain, CosetError> {
    check_moduli(moduli)?;
    let ab = Abelianization::new(p);
    let images: Vec<Vec<i64>> = (1..=p.generator_count())
        .map(|g| {
            let mut e = vec![0i64; p.generator_count()];
            e[g - 1] = 1;
            ab.free_part(&e).iter().map(|x| x.to_i64().expect("free part coordinates fit in i64")).collect()
        })
        .collect();
    let levels = moduli
        .par_iter()
        .map(|&n| confirm_kernel(p, quotient_table(p, &images, n)?, max_cosets))
        .collect::<Result<Vec<_>, _>>()?;
    let k = ab.free_rank();
    let labels = moduli.iter().map(|n| format!("abelian n={n} (Z/{n})^{k}")).collect();
    SubgroupChain::new(p.clone(), levels, labels)
}

/// Kernels of `Γ → ℤ/n` sending generator `i` to `images[i]`.
pub fn build_cyclic_chain(
    p: &Presentation,
    images: &[i64],
    moduli: &[u64],
    max_cosets: usize,
) -> Result<SubgroupChain, CosetError> {
    check_moduli(moduli)?;
    if images.len() != p.generator_count() {
        return Err(CosetError::Malformed(format!("{} images for {} generators", images.len(), p.generator_count())));
    }
    for (i, r) in p.relators().iter().enumerate() {
        let sum: i64 = r.letters().iter().map(|&l| l.signum() as i64 * images[l.unsigned_abs() as usize - 1]).sum();
        for &n in moduli {
            if sum.rem_euclid(n as i64) != 0 {
                return Err(CosetError::RelatorNotInKernel { relator: i + 1, modulus: n });
            }
        }
    }
    let columns: Vec<Vec<i64>> = images.iter().map(|&x| vec![x]).collect();
    let levels = moduli
        .par_iter()
        .map(|&n| confirm_kernel(p, quotient_table(p, &columns, n)?, max_cosets))
        .collect::<Result<Vec<_>, _>>()?;
    let labels = moduli.iter().map(|n| format!("cyclic n={n}")).collect();
    SubgroupChain::new(p.clone(), levels, labels)
}

/// One level per explicit list of subgroup generators.
pub fn build_explicit_chain(
    p: &Presentation,
    levels: &[Vec<Word>],
    max_cosets: usize,
) -> Result<SubgroupChain, CosetError> {
    let tables = levels.par_iter().map(|gens| todd_coxeter(p, gens, max_cosets)).collect::<Result<Vec<_>, _>>()?;
    let labels = (1..=levels.len()).map(|k| format!("level {k}")).collect();
    SubgroupChain::new(p.clone(), tables, labels)
}

/// Parsed chain description: `abelian:n=2,4,8`, `abelian:n=1..10`,
/// `cyclic:images=1,0;n=2..8`, or JSON `{"levels":[{"subgroup_words":[[1,1]]}]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSpec {
    Abelian(Vec<u64>),
    Cyclic { images: Vec<i64>, moduli: Vec<u64> },
    Explicit(Vec<Vec<Word>>),
}

#[derive(Deserialize)]
struct ExplicitLevels {
    levels: Vec<ExplicitLevel>,
}

#[derive(Deserialize)]
struct ExplicitLevel {
    subgroup_words: Vec<Word>,
}

fn parse_moduli(text: &str) -> Result<Vec<u64>, CosetError> {
    let bad = || CosetError::ChainSpec(format!("bad modulus list `{text}`"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

impl FromStr for ChainSpec {
    type Err = CosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            let f: ExplicitLevels = serde_json::from_str(s).map_err(|e| CosetError::ChainSpec(e.to_string()))?;
            return Ok(ChainSpec::Explicit(f.levels.into_iter().map(|l| l.subgroup_words).collect()));
        }
        if let Some(rest) = s.strip_prefix("abelian:") {
            let list = rest
                .trim()
                .strip_prefix("n=")
                .ok_or_else(|| CosetError::ChainSpec("expected `abelian:n=...`".into()))?;
            return Ok(ChainSpec::Abelian(parse_moduli(list)?));
        }
        if let Some(rest) = s.strip_prefix("cyclic:") {
            let mut images = None;
            let mut moduli = None;
            for part in rest.split(';') {
                match part.trim().split_once('=') {
                    Some(("images", v)) => {
                        images = Some(
                            v.split(',')
                                .map(|x| x.trim().parse::<i64>())
                                .collect::<Result<Vec<_>, _>>()
                                .map_err(|_| CosetError::ChainSpec(format!("bad images `{v}`")))?,
                        )
                    }
                    Some(("n", v)) => moduli = Some(parse_moduli(v)?),
                    _ => return Err(CosetError::ChainSpec(format!("unknown field `{part}`"))),
                }
            }
            return match (images, moduli) {
                (Some(images), Some(moduli)) => Ok(ChainSpec::Cyclic { images, moduli }),
                _ => Err(CosetError::ChainSpec("cyclic chains need images=... and n=...".into())),
            };
        }
        Err(CosetError::ChainSpec(format!("unrecognised chain `{s}`")))
    }
}

impl ChainSpec {
    pub fn build(&self, p: &Presentation, max_cosets: usize) -> Result<SubgroupChain, CosetError> {
        match self {
            ChainSpec::Abelian(moduli) => build_abelian_chain(p, moduli, max_cosets),
            ChainSpec::Cyclic { images, moduli } => build_cyclic_chain(p, images, moduli, max_cosets),
            ChainSpec::Explicit(levels) => build_explicit_chain(p, levels, max_cosets),
        }
    }
}

fn is_normal(t: &CosetTable) -> bool {
    normality_failures(t).is_empty()
}

/// Subgroup generators `h` and letters `x` with `x h x⁻¹` outside the subgroup.
fn normality_failures(t: &CosetTable) -> Vec<(usize, i32)> {
    let mut out = Vec::new();
    for (i, h) in t.subgroup_generators().iter().enumerate() {
        for g in 1..=t.generator_count() as i32 {
            for x in [g, -g] {
                if !t.fixes_base(&Word::new(vec![x]).expect("nonzero").conjugate(h)) {
                    out.push((i + 1, x));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub passes: bool,
    pub indices: Vec<usize>,
    /// `indices[k] / indices[k-1]`, `None` when not an integer.
    pub index_growth: Vec<Option<usize>>,
    pub nested: Vec<bool>,
    pub normal: Vec<bool>,
    pub failures: Vec<String>,
}

/// Verify nestedness and normality level by level.
pub fn residual_chain_check(chain: &SubgroupChain) -> Result<ResidualReport, CosetError> {
    if chain.is_empty() {
        return Err(CosetError::EmptyChain);
    }
    let levels = chain.levels();
    let mut failures = Vec::new();
    let mut nested = vec![true];
    for k in 1..levels.len() {
        let outside: Vec<usize> = levels[k]
            .subgroup_generators()
            .iter()
            .enumerate()
            .filter(|(_, h)| !levels[k - 1].fixes_base(h))
            .map(|(i, _)| i + 1)
            .collect();
        if !outside.is_empty() {
            failures.push(format!(
                "nestedness: level {} generators {:?} do not fix coset 1 of level {}",
                k + 1,
                outside,
                k
            ));
        }
        nested.push(outside.is_empty());
    }
    let mut normal = Vec::with_capacity(levels.len());
    for (k, t) in levels.iter().enumerate() {
        let bad = normality_failures(t);
        if let Some((h, x)) = bad.first() {
            failures.push(format!(
                "normality: level {}: conjugate of generator {} by letter {} leaves the subgroup",
                k + 1,
                h,
                x
            ));
        }
        normal.push(bad.is_empty());
    }
    let indices = chain.indices();
    let index_growth = indices.windows(2).map(|w| if w[1] % w[0] == 0 { Some(w[1] / w[0]) } else { None }).collect();
    Ok(ResidualReport { passes: failures.is_empty(), indices, index_growth, nested, normal, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    fn z_times_f2() -> Presentation {
        Presentation::with_default_names(
            3,
            vec![Word::commutator(&w(&[1]), &w(&[2])), Word::commutator(&w(&[2]), &w(&[3]))],
        )
        .unwrap()
    }

    #[test]
    fn abelian_indices() {
        let z = Presentation::free(1);
        assert_eq!(build_abelian_chain(&z, &[1, 2, 3], 100).unwrap().indices(), vec![1, 2, 3]);
        let f2 = Presentation::free(2);
        assert_eq!(build_abelian_chain(&f2, &[2], 100).unwrap().indices(), vec![4]);
        let g = z_times_f2();
        assert_eq!(build_abelian_chain(&g, &[2, 3], 1000).unwrap().indices(), vec![8, 27]);
    }

    #[test]
    fn torsion_is_ignored() {
        // ℤ ⊕ ℤ/2: only the free part is used
        let p = Presentation::with_default_names(2, vec![w(&[2, 2]), Word::commutator(&w(&[1]), &w(&[2]))]).unwrap();
        assert_eq!(build_abelian_chain(&p, &[3], 100).unwrap().indices(), vec![3]);
    }

    #[test]
    fn doubling_moduli_are_residual() {
        let g = z_times_f2();
        let chain = build_abelian_chain(&g, &[1, 2, 4], 1000).unwrap();
        let r = residual_chain_check(&chain).unwrap();
        assert!(r.passes, "{:?}", r.failures);
        assert_eq!(r.index_growth, vec![Some(8), Some(8)]);
    }

    #[test]
    fn two_three_not_nested() {
        let chain =
            build_explicit_chain(&Presentation::free(1), &[vec![w(&[1, 1])], vec![w(&[1, 1, 1])]], 100).unwrap();
        let r = residual_chain_check(&chain).unwrap();
        assert!(!r.passes);
        assert_eq!(r.nested, vec![true, false]);
        assert_eq!(r.normal, vec![true, true]);
    }

    #[test]
    fn non_normal_detected() {
        // ⟨a⟩ has index 3 in S3 and is not normal
        let s3 = Presentation::with_default_names(2, vec![w(&[1, 1]), w(&[2, 2, 2]), w(&[1, 2, 1, 2])]).unwrap();
        let chain = build_explicit_chain(&s3, &[vec![w(&[1])]], 100).unwrap();
        let r = residual_chain_check(&chain).unwrap();
        assert_eq!(r.normal, vec![false]);
        let trivial = build_explicit_chain(&s3, &[vec![]], 100).unwrap();
        assert!(residual_chain_check(&trivial).unwrap().passes);
    }

    #[test]
    fn cyclic_covers_of_f2() {
        let f2 = Presentation::free(2);
        let chain = build_cyclic_chain(&f2, &[1, 0], &[2, 3, 4], 100).unwrap();
        assert_eq!(chain.indices(), vec![2, 3, 4]);
        assert!(chain.levels()[2].fixes_base(&w(&[2])));
        assert!(build_cyclic_chain(&f2, &[2, 0], &[4], 100).is_err());
        let zn = Presentation::with_default_names(1, vec![w(&[1, 1, 1])]).unwrap();
        assert!(matches!(
            build_cyclic_chain(&zn, &[1], &[2], 100),
            Err(CosetError::RelatorNotInKernel { relator: 1, modulus: 2 })
        ));
    }

    #[test]
    fn parses_specs() {
        assert_eq!("abelian:n=2,4,8".parse::<ChainSpec>().unwrap(), ChainSpec::Abelian(vec![2, 4, 8]));
        assert_eq!("abelian:n=1..4".parse::<ChainSpec>().unwrap(), ChainSpec::Abelian(vec![1, 2, 3, 4]));
        assert_eq!(
            "cyclic:images=1,0;n=2..3".parse::<ChainSpec>().unwrap(),
            ChainSpec::Cyclic { images: vec![1, 0], moduli: vec![2, 3] }
        );
        assert_eq!(
            r#"{"levels":[{"subgroup_words":[[1,1]]}]}"#.parse::<ChainSpec>().unwrap(),
            ChainSpec::Explicit(vec![vec![w(&[1, 1])]])
        );
        assert!("abelian:n=0".parse::<ChainSpec>().unwrap().build(&Presentation::free(1), 10).is_err());
        assert!("low-index:3".parse::<ChainSpec>().is_err());
        assert!("abelian:n=4..2".parse::<ChainSpec>().is_err());
    }
}
