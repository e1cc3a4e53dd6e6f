//! Clustering-quality metrics over per-point label vectors.
//!
//! Labels are integers with -1 reserved for noise. For mutual
//! information, all noise points of a labeling count as one shared
//! pseudo-cluster; normalization is by the arithmetic mean of the two
//! entropies, computed in natural log (the ratio is base-invariant).

use crate::error::{Error, Result};
use std::collections::HashMap;

pub const NOISE: i64 = -1;

/// Normalized mutual information in [0, 1]:
/// `2 I(A;B) / (H(A) + H(B))` over the joint label histogram.
///
/// Degenerate entropies follow fixed conventions: if both labelings
/// have zero entropy they are identical as partitions and score 1; if
/// exactly one does, the partitions differ and score 0.
pub fn nmi(a: &[i64], b: &[i64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid_argument(format!(
            "labelings of different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::invalid_argument("empty labelings"));
    }
    let n = a.len() as f64;
    let mut joint: HashMap<(i64, i64), u64> = HashMap::new();
    let mut rows: HashMap<i64, u64> = HashMap::new();
    let mut cols: HashMap<i64, u64> = HashMap::new();
    for (&la, &lb) in a.iter().zip(b) {
        *joint.entry((la, lb)).or_insert(0) += 1;
        *rows.entry(la).or_insert(0) += 1;
        *cols.entry(lb).or_insert(0) += 1;
    }
    // Summation in sorted key order keeps the float result independent
    // of hash seeding.
    let h = |counts: &HashMap<i64, u64>| -> f64 {
        let mut entries: Vec<(i64, u64)> = counts.iter().map(|(&k, &v)| (k, v)).collect();
        entries.sort_unstable();
        entries
            .iter()
            .map(|&(_, c)| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let h_a = h(&rows);
    let h_b = h(&cols);
    if h_a == 0.0 && h_b == 0.0 {
        return Ok(1.0);
    }
    if h_a == 0.0 || h_b == 0.0 {
        return Ok(0.0);
    }
    let mut cells: Vec<((i64, i64), u64)> = joint.into_iter().collect();
    cells.sort_unstable();
    let mut mutual = 0.0;
    for &((la, lb), c) in &cells {
        let p = c as f64 / n;
        let pa = rows[&la] as f64 / n;
        let pb = cols[&lb] as f64 / n;
        mutual += p * (p / (pa * pb)).ln();
    }
    if mutual <= 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * mutual / (h_a + h_b))
}

/// Number of distinct non-noise labels.
pub fn cluster_count(labels: &[i64]) -> usize {
    let mut seen: Vec<i64> = labels.iter().copied().filter(|&l| l != NOISE).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Whether two labelings induce the same partition under some bijective
/// renaming (every label, including noise, treated as an opaque block
/// id).
pub fn same_partition(a: &[i64], b: &[i64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::invalid_argument(format!(
            "labelings of different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let mut forward: HashMap<i64, i64> = HashMap::new();
    let mut backward: HashMap<i64, i64> = HashMap::new();
    for (&la, &lb) in a.iter().zip(b) {
        if *forward.entry(la).or_insert(lb) != lb {
            return Ok(false);
        }
        if *backward.entry(lb).or_insert(la) != la {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_labelings_score_one() {
        let a = vec![0, 0, 1, 1, 2];
        let v = nmi(&a, &a).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn constant_against_split_scores_zero() {
        let a = vec![0, 0, 0, 0];
        let b = vec![0, 0, 1, 1];
        assert_eq!(nmi(&a, &b).unwrap(), 0.0);
        assert_eq!(nmi(&b, &a).unwrap(), 0.0);
    }

    #[test]
    fn both_constant_scores_one() {
        assert_eq!(nmi(&[5, 5, 5], &[2, 2, 2]).unwrap(), 1.0);
    }

    #[test]
    fn independent_partitions_score_zero() {
        // Marginals are uniform on two labels each; the joint factorizes.
        let a = vec![0, 0, 1, 1];
        let b = vec![0, 1, 0, 1];
        let v = nmi(&a, &b).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
    }

    #[test]
    fn length_mismatch_is_invalid() {
        assert!(nmi(&[0, 1], &[0]).is_err());
        assert!(same_partition(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn counts_ignore_noise() {
        assert_eq!(cluster_count(&[NOISE, NOISE]), 0);
        assert_eq!(cluster_count(&[0, 0, 5, 5, NOISE]), 2);
        assert_eq!(cluster_count(&[]), 0);
    }

    #[test]
    fn partition_equality_up_to_renaming() {
        assert!(same_partition(&[0, 0, 1], &[7, 7, 3]).unwrap());
        assert!(!same_partition(&[0, 0, 1], &[7, 3, 3]).unwrap());
        assert!(!same_partition(&[0, 1], &[4, 4]).unwrap());
        assert!(same_partition(&[NOISE, 2], &[0, 9]).unwrap());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn labelings() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
            (1usize..40).prop_flat_map(|n| {
                (
                    proptest::collection::vec(-1i64..4, n),
                    proptest::collection::vec(-1i64..4, n),
                )
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn nmi_is_symmetric_and_bounded((a, b) in labelings()) {
                let ab = nmi(&a, &b).unwrap();
                let ba = nmi(&b, &a).unwrap();
                prop_assert!((ab - ba).abs() < 1e-12);
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&ab));
            }

            #[test]
            fn nmi_invariant_under_bijective_renaming((a, b) in labelings()) {
                // Rename clusters of `a` by an affine bijection on ids.
                let renamed: Vec<i64> =
                    a.iter().map(|&l| if l == NOISE { NOISE } else { 3 * l + 7 }).collect();
                let before = nmi(&a, &b).unwrap();
                let after = nmi(&renamed, &b).unwrap();
                prop_assert!((before - after).abs() < 1e-12);
                prop_assert!(same_partition(&a, &renamed).unwrap());
            }
        }
    }
}
