//! Tanimoto similarity and the screening metric stack: the similarity of a
//! molecule to a drug set, the drug-like proportion of a candidate set, and
//! the drug index of a generator.

use crate::error::MetricsError;
use crate::fingerprint::Fingerprint;
use rayon::prelude::*;

/// A similarity value in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SimilarityScore(f64);

impl SimilarityScore {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Tanimoto similarity |a AND b| / |a OR b|; 1.0 when both are empty.
pub fn tanimoto(a: &Fingerprint, b: &Fingerprint) -> Result<SimilarityScore, MetricsError> {
    if a.width() != b.width() || a.radius() != b.radius() {
        return Err(MetricsError::FingerprintMismatch {
            width_a: a.width(),
            width_b: b.width(),
            radius_a: a.radius(),
            radius_b: b.radius(),
        });
    }
    let mut inter = 0u32;
    let mut union = 0u32;
    for (x, y) in a.blocks().iter().zip(b.blocks()) {
        inter += (x & y).count_ones();
        union += (x | y).count_ones();
    }
    if union == 0 {
        return Ok(SimilarityScore(1.0));
    }
    Ok(SimilarityScore(inter as f64 / union as f64))
}

/// Max Tanimoto similarity of `b` against the set `a_set`.
pub fn set_mol_sim(a_set: &[Fingerprint], b: &Fingerprint) -> Result<SimilarityScore, MetricsError> {
    if a_set.is_empty() {
        return Err(MetricsError::EmptySet("reference set"));
    }
    let mut best = 0.0f64;
    for a in a_set {
        let s = tanimoto(a, b)?.value();
        if s > best {
            best = s;
        }
    }
    Ok(SimilarityScore(best))
}

/// Proportion of candidates whose best similarity to the drug set strictly
/// exceeds `threshold`.
pub fn drug_like(
    drugs: &[Fingerprint],
    candidates: &[Fingerprint],
    threshold: f64,
) -> Result<f64, MetricsError> {
    if drugs.is_empty() {
        return Err(MetricsError::EmptySet("drug set"));
    }
    if candidates.is_empty() {
        return Err(MetricsError::EmptySet("candidate set"));
    }
    let hits = candidates
        .par_iter()
        .map(|b| set_mol_sim(drugs, b).map(|s| (s.value() > threshold) as usize))
        .try_reduce(|| 0usize, |a, b| Ok(a + b))?;
    Ok(hits as f64 / candidates.len() as f64)
}

pub const DRUG_LIKE_THRESHOLD: f64 = 0.5;

/// DrugIndex as a percentage: DrugLike(X,Z) / DrugLike(X,Y) * 100.
pub fn drug_index(
    drugs: &[Fingerprint],
    training: &[Fingerprint],
    generated: &[Fingerprint],
    threshold: f64,
) -> Result<f64, MetricsError> {
    let denom = drug_like(drugs, training, threshold)?;
    if denom == 0.0 {
        return Err(MetricsError::UndefinedDrugIndex);
    }
    let numer = drug_like(drugs, generated, threshold)?;
    Ok(numer / denom * 100.0)
}

/// Per-candidate best similarity values, input order preserved.
pub fn best_similarities(
    drugs: &[Fingerprint],
    candidates: &[Fingerprint],
) -> Result<Vec<f64>, MetricsError> {
    candidates
        .par_iter()
        .map(|b| set_mol_sim(drugs, b).map(SimilarityScore::value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp_with_bits(bits: &[usize]) -> Fingerprint {
        let mut fp = Fingerprint::empty(2, 64).unwrap();
        for &b in bits {
            fp.set(b);
        }
        fp
    }

    #[test]
    fn tanimoto_identity_is_one() {
        let f = fp_with_bits(&[3, 9, 17]);
        assert_eq!(tanimoto(&f, &f).unwrap().value(), 1.0);
    }

    #[test]
    fn tanimoto_disjoint_is_zero() {
        let a = fp_with_bits(&[1, 2]);
        let b = fp_with_bits(&[3, 4]);
        assert_eq!(tanimoto(&a, &b).unwrap().value(), 0.0);
    }

    #[test]
    fn tanimoto_fixture_half() {
        let a = fp_with_bits(&[1, 2, 3]);
        let b = fp_with_bits(&[2, 3, 4]);
        assert_eq!(tanimoto(&a, &b).unwrap().value(), 0.5);
    }

    #[test]
    fn tanimoto_empty_pair_is_one() {
        let a = Fingerprint::empty(2, 64).unwrap();
        let b = Fingerprint::empty(2, 64).unwrap();
        assert_eq!(tanimoto(&a, &b).unwrap().value(), 1.0);
    }

    #[test]
    fn tanimoto_mismatch_rejected() {
        let a = Fingerprint::empty(2, 64).unwrap();
        let b = Fingerprint::empty(2, 128).unwrap();
        assert!(tanimoto(&a, &b).is_err());
        let c = Fingerprint::empty(3, 64).unwrap();
        assert!(tanimoto(&a, &c).is_err());
    }

    #[test]
    fn set_mol_sim_member_is_one() {
        let set = vec![fp_with_bits(&[1]), fp_with_bits(&[5, 6])];
        assert_eq!(set_mol_sim(&set, &set[1]).unwrap().value(), 1.0);
    }

    #[test]
    fn set_mol_sim_singleton() {
        let set = vec![fp_with_bits(&[1, 2])];
        let b = fp_with_bits(&[2, 3]);
        let direct = tanimoto(&set[0], &b).unwrap().value();
        assert_eq!(set_mol_sim(&set, &b).unwrap().value(), direct);
    }

    #[test]
    fn set_mol_sim_is_max_over_pairs() {
        let set = vec![
            fp_with_bits(&[1, 2, 3, 4]),
            fp_with_bits(&[10, 11]),
            fp_with_bits(&[20, 21, 22]),
        ];
        let b = fp_with_bits(&[10, 11, 12]);
        let best = set
            .iter()
            .map(|a| tanimoto(a, &b).unwrap().value())
            .fold(0.0f64, f64::max);
        assert_eq!(set_mol_sim(&set, &b).unwrap().value(), best);
        assert!((set_mol_sim(&set, &b).unwrap().value() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn drug_like_fixture_three_of_ten() {
        // drugs share a large block; 3 candidates overlap enough to pass 0.5
        let drugs = vec![fp_with_bits(&[0, 1, 2, 3]), fp_with_bits(&[10, 11, 12, 13])];
        let mut candidates = Vec::new();
        for _ in 0..3 {
            candidates.push(fp_with_bits(&[0, 1, 2])); // 3/4 = 0.75 > 0.5
        }
        for k in 0..7 {
            candidates.push(fp_with_bits(&[30 + k])); // disjoint
        }
        assert_eq!(drug_like(&drugs, &candidates, 0.5).unwrap(), 0.3);
    }

    #[test]
    fn drug_like_strict_inequality() {
        // similarity exactly at the threshold must not count
        let drugs = vec![fp_with_bits(&[1, 2])];
        let candidates = vec![fp_with_bits(&[2, 3])]; // 1/3
        assert_eq!(drug_like(&drugs, &candidates, 1.0 / 3.0).unwrap(), 0.0);
        assert_eq!(drug_like(&drugs, &candidates, 0.33).unwrap(), 1.0);
    }

    #[test]
    fn drug_like_extremes() {
        let drugs = vec![fp_with_bits(&[1, 2, 3])];
        assert_eq!(drug_like(&drugs, &drugs, 0.5).unwrap(), 1.0);
        let disjoint = vec![fp_with_bits(&[9])];
        assert_eq!(drug_like(&drugs, &disjoint, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn drug_index_reference_equals_hundred() {
        let drugs = vec![fp_with_bits(&[1, 2, 3])];
        let train = vec![fp_with_bits(&[1, 2]), fp_with_bits(&[40])];
        let di = drug_index(&drugs, &train, &train, 0.5).unwrap();
        assert_eq!(di, 100.0);
    }

    #[test]
    fn drug_index_ratio() {
        let drugs = vec![fp_with_bits(&[0, 1, 2, 3])];
        let hit = fp_with_bits(&[0, 1, 2, 3]);
        let miss = fp_with_bits(&[50]);
        // train: 1 of 50 hits, generated: 2 of 50 hit -> 200%
        let mut train = vec![hit.clone()];
        train.extend((0..49).map(|_| miss.clone()));
        let mut generated = vec![hit.clone(), hit.clone()];
        generated.extend((0..48).map(|_| miss.clone()));
        let di = drug_index(&drugs, &train, &generated, 0.5).unwrap();
        assert!((di - 200.0).abs() < 1e-9);
    }

    #[test]
    fn drug_index_zero_denominator_is_error() {
        let drugs = vec![fp_with_bits(&[1])];
        let train = vec![fp_with_bits(&[9])];
        let generated = vec![fp_with_bits(&[1])];
        assert!(matches!(
            drug_index(&drugs, &train, &generated, 0.5),
            Err(MetricsError::UndefinedDrugIndex)
        ));
    }

    #[test]
    fn empty_sets_rejected() {
        let f = vec![fp_with_bits(&[1])];
        assert!(set_mol_sim(&[], &f[0]).is_err());
        assert!(drug_like(&f, &[], 0.5).is_err());
        assert!(drug_like(&[], &f, 0.5).is_err());
    }
}
