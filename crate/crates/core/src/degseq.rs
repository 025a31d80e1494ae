//! Tree degree sequences, weak majorization, and the increment/decrement
//! chain between comparable sequences.

use alloc::vec::Vec;
use core::ops::AddAssign;

use num_traits::Zero;

use crate::{Error, Result};

/// A validated tree degree sequence: nonincreasing, every entry >= 1,
/// summing to 2n - 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
}

impl DegreeSequence {
    /// Validates `raw` as a tree degree sequence. Input order is irrelevant;
    /// the sequence is stored nonincreasing.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::TooSmall);
        }
        if raw.iter().any(|&d| d < 1) {
            return Err(Error::NonPositiveEntry);
        }
        let n = raw.len() as i64;
        let sum: i64 = raw.iter().sum();
        let expected = 2 * n - 2;
        if sum != expected {
            return Err(Error::SumMismatch { sum, expected });
        }
        let mut degrees: Vec<u32> = raw.iter().map(|&d| d as u32).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { degrees })
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees[0]
    }
}

/// See [`DegreeSequence::new`].
pub fn validate_tree_degseq(raw: &[i64]) -> Result<DegreeSequence> {
    DegreeSequence::new(raw)
}

/// How two sequences relate under (weak) majorization after sorting both
/// nonincreasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Identical once sorted.
    Equal,
    /// Weakly majorized, totals differ, no strict prefix inequality.
    Weak,
    /// Weakly majorized with at least one strict prefix inequality.
    WeakStrict,
    /// Majorized (totals equal), no strict prefix inequality.
    Majorized,
    /// Majorized (totals equal) with a strict prefix inequality.
    MajorizedStrict,
    /// Some prefix sum of alpha exceeds the matching prefix sum of beta.
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    /// First index with a strict prefix inequality, when one exists.
    pub first_strict_index: Option<usize>,
    /// First index where the weak-majorization inequality fails.
    pub first_violation_index: Option<usize>,
}

impl MajorizationVerdict {
    /// alpha is weakly majorized by beta (equality included).
    pub fn weak_or_better(&self) -> bool {
        self.relation != Relation::Incomparable
    }

    /// alpha is majorized by beta: weak majorization plus equal totals.
    pub fn majorized_or_equal(&self) -> bool {
        matches!(
            self.relation,
            Relation::Equal | Relation::Majorized | Relation::MajorizedStrict
        )
    }

    pub fn is_strict(&self) -> bool {
        self.first_strict_index.is_some()
    }
}

fn sorted_desc<T: Clone + Ord>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn compare_sorted<T>(a: &[T], b: &[T]) -> MajorizationVerdict
where
    T: Clone + Ord + Zero + for<'x> AddAssign<&'x T>,
{
    debug_assert_eq!(a.len(), b.len());
    let mut sa = T::zero();
    let mut sb = T::zero();
    let mut first_strict = None;
    let mut first_violation = None;
    for i in 0..a.len() {
        sa += &a[i];
        sb += &b[i];
        if sa > sb {
            first_violation = Some(i);
            break;
        }
        if sa < sb && first_strict.is_none() {
            first_strict = Some(i);
        }
    }
    if let Some(idx) = first_violation {
        return MajorizationVerdict {
            relation: Relation::Incomparable,
            first_strict_index: first_strict,
            first_violation_index: Some(idx),
        };
    }
    let totals_equal = sa == sb;
    let relation = match (totals_equal, first_strict.is_some()) {
        (true, false) => Relation::Equal,
        (true, true) => Relation::MajorizedStrict,
        (false, false) => Relation::Weak,
        (false, true) => Relation::WeakStrict,
    };
    MajorizationVerdict {
        relation,
        first_strict_index: first_strict,
        first_violation_index: None,
    }
}

/// Compares `alpha` against `beta` under weak majorization. Both sides are
/// sorted nonincreasing internally; the shorter is padded with zeros.
pub fn compare_majorization<T>(alpha: &[T], beta: &[T]) -> MajorizationVerdict
where
    T: Clone + Ord + Zero + for<'x> AddAssign<&'x T>,
{
    let len = alpha.len().max(beta.len());
    let mut a = sorted_desc(alpha);
    let mut b = sorted_desc(beta);
    a.resize(len, T::zero());
    b.resize(len, T::zero());
    compare_sorted(&a, &b)
}

/// Like [`compare_majorization`] but rejects unequal lengths instead of
/// padding.
pub fn compare_majorization_exact<T>(alpha: &[T], beta: &[T]) -> Result<MajorizationVerdict>
where
    T: Clone + Ord + Zero + for<'x> AddAssign<&'x T>,
{
    if alpha.len() != beta.len() {
        return Err(Error::LengthMismatch {
            left: alpha.len(),
            right: beta.len(),
        });
    }
    Ok(compare_majorization(alpha, beta))
}

/// Builds the chain pi = pi_0 < pi_1 < ... < pi_m = pi_prime where each step
/// increments the first differing entry and decrements the last one, then
/// re-sorts. Requires pi majorized by pi_prime (same n).
pub fn majorization_chain(
    pi: &DegreeSequence,
    pi_prime: &DegreeSequence,
) -> Result<Vec<DegreeSequence>> {
    if pi.n() != pi_prime.n() {
        return Err(Error::NotComparable);
    }
    let verdict = compare_majorization(pi.degrees(), pi_prime.degrees());
    if !verdict.majorized_or_equal() {
        return Err(Error::NotComparable);
    }
    let mut chain = alloc::vec![pi.clone()];
    let target = pi_prime.degrees();
    let mut cur: Vec<u32> = pi.degrees().to_vec();
    while cur != target {
        let l = (0..cur.len()).find(|&i| cur[i] != target[i]).unwrap();
        let big_l = (0..cur.len()).rfind(|&i| cur[i] != target[i]).unwrap();
        // pi < pi' forces cur[l] < target[l] and cur[L] > target[L] >= 1.
        debug_assert!(cur[l] < target[l] && cur[big_l] > target[big_l]);
        cur[l] += 1;
        if cur[big_l] <= 1 {
            return Err(Error::NotComparable);
        }
        cur[big_l] -= 1;
        let raw: Vec<i64> = cur.iter().map(|&d| d as i64).collect();
        let next = DegreeSequence::new(&raw)?;
        let step = compare_majorization(chain.last().unwrap().degrees(), next.degrees());
        if !step.majorized_or_equal() {
            return Err(Error::NotComparable);
        }
        cur = next.degrees().to_vec();
        chain.push(next);
    }
    Ok(chain)
}

/// Factory sequences for the extremal-family corollaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryKind {
    /// (n-1, 1, ..., 1). `parameter` ignored.
    Star,
    /// (D, ..., D, r, 1, ..., 1) with 1 <= r < D summing to 2n - 2.
    BoundedDegree,
    /// (s, 2, ..., 2, 1, ..., 1) with n - s - 1 twos and s ones.
    LeafCount,
    /// (a, 2, ..., 2, 1, ..., 1) with n - a - 1 twos and a ones; needs 2a >= n.
    Independence,
}

pub fn corollary_sequence(kind: CorollaryKind, n: usize, parameter: u32) -> Result<DegreeSequence> {
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let mut raw: Vec<i64> = Vec::with_capacity(n);
    match kind {
        CorollaryKind::Star => {
            raw.push((n - 1) as i64);
            raw.extend(core::iter::repeat_n(1, n - 1));
        }
        CorollaryKind::BoundedDegree => {
            let delta = parameter as usize;
            if n == 2 {
                if delta != 1 {
                    return Err(Error::InvalidParameter("n = 2 forces max degree 1"));
                }
                raw.extend([1, 1]);
            } else {
                if delta < 2 || delta > n - 1 {
                    return Err(Error::InvalidParameter("need 2 <= max degree <= n - 1"));
                }
                let copies = (n - 2) / (delta - 1);
                let r = (n - 2) % (delta - 1) + 1;
                raw.extend(core::iter::repeat_n(delta as i64, copies));
                raw.push(r as i64);
                raw.extend(core::iter::repeat_n(1, n - copies - 1));
            }
        }
        CorollaryKind::LeafCount => {
            let s = parameter as usize;
            if n == 2 {
                if s != 2 {
                    return Err(Error::InvalidParameter("n = 2 has exactly 2 leaves"));
                }
                raw.extend([1, 1]);
            } else {
                if s < 2 || s > n - 1 {
                    return Err(Error::InvalidParameter("need 2 <= leaves <= n - 1"));
                }
                raw.push(s as i64);
                raw.extend(core::iter::repeat_n(2, n - s - 1));
                raw.extend(core::iter::repeat_n(1, s));
            }
        }
        CorollaryKind::Independence => {
            let alpha = parameter as usize;
            if 2 * alpha < n || alpha > n - 1 {
                return Err(Error::InvalidParameter(
                    "need n/2 <= independence number <= n - 1",
                ));
            }
            raw.push(alpha as i64);
            raw.extend(core::iter::repeat_n(2, n - alpha - 1));
            raw.extend(core::iter::repeat_n(1, alpha));
        }
    }
    DegreeSequence::new(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validate_sorts_and_accepts_star() {
        let d = DegreeSequence::new(&[1, 1, 3, 1]).unwrap();
        assert_eq!(d.degrees(), &[3, 1, 1, 1]);
    }

    #[test]
    fn validate_rejects_bad_input() {
        assert_eq!(
            DegreeSequence::new(&[2, 2, 2]),
            Err(Error::SumMismatch {
                sum: 6,
                expected: 4
            })
        );
        assert_eq!(DegreeSequence::new(&[1]), Err(Error::TooSmall));
        assert_eq!(DegreeSequence::new(&[0]), Err(Error::TooSmall));
        assert_eq!(
            DegreeSequence::new(&[3, 0, 1, 2]),
            Err(Error::NonPositiveEntry)
        );
        DegreeSequence::new(&[1, 1]).unwrap();
    }

    #[test]
    fn majorization_basic_verdicts() {
        let v = compare_majorization(&[2u32, 2, 2], &[3, 2, 1]);
        assert_eq!(v.relation, Relation::MajorizedStrict);
        assert_eq!(v.first_strict_index, Some(0));

        let v = compare_majorization(&[3u32, 2, 1], &[1, 2, 3]);
        assert_eq!(v.relation, Relation::Equal);

        // prefixes 3,6 vs 4,5: fails at index 1
        let v = compare_majorization(&[3u32, 3], &[4, 1]);
        assert_eq!(v.relation, Relation::Incomparable);
        assert_eq!(v.first_violation_index, Some(1));
    }

    #[test]
    fn majorization_pads_or_rejects_lengths() {
        let v = compare_majorization(&[1u32, 1], &[3]);
        assert_eq!(v.relation, Relation::WeakStrict);
        assert!(compare_majorization_exact(&[1u32, 1], &[3]).is_err());
    }

    #[test]
    fn chain_matches_worked_example() {
        let pi = DegreeSequence::new(&[2, 2, 2, 1, 1]).unwrap();
        let pi_prime = DegreeSequence::new(&[4, 1, 1, 1, 1]).unwrap();
        let chain = majorization_chain(&pi, &pi_prime).unwrap();
        let steps: Vec<&[u32]> = chain.iter().map(|d| d.degrees()).collect();
        assert_eq!(
            steps,
            vec![
                &[2, 2, 2, 1, 1][..],
                &[3, 2, 1, 1, 1][..],
                &[4, 1, 1, 1, 1][..]
            ]
        );
    }

    #[test]
    fn chain_identity_and_single_step() {
        let pi = DegreeSequence::new(&[3, 1, 1, 1]).unwrap();
        assert_eq!(majorization_chain(&pi, &pi).unwrap().len(), 1);

        let a = DegreeSequence::new(&[2, 2, 1, 1]).unwrap();
        let b = DegreeSequence::new(&[3, 1, 1, 1]).unwrap();
        let chain = majorization_chain(&a, &b).unwrap();
        assert_eq!(chain.len(), 2);
    }

    #[test]
    fn chain_rejects_incomparable() {
        let a = DegreeSequence::new(&[3, 1, 1, 1]).unwrap();
        let b = DegreeSequence::new(&[2, 2, 1, 1]).unwrap();
        assert_eq!(majorization_chain(&a, &b), Err(Error::NotComparable));
    }

    #[test]
    fn corollary_sequences() {
        assert_eq!(
            corollary_sequence(CorollaryKind::Star, 5, 0)
                .unwrap()
                .degrees(),
            &[4, 1, 1, 1, 1]
        );
        assert_eq!(
            corollary_sequence(CorollaryKind::LeafCount, 6, 3)
                .unwrap()
                .degrees(),
            &[3, 2, 2, 1, 1, 1]
        );
        assert_eq!(
            corollary_sequence(CorollaryKind::Independence, 6, 4)
                .unwrap()
                .degrees(),
            &[4, 2, 1, 1, 1, 1]
        );
        assert!(corollary_sequence(CorollaryKind::Independence, 6, 2).is_err());
        // bounded degree: every output validates and caps at delta
        for n in 2..=12usize {
            for delta in 1..n as u32 {
                let r = corollary_sequence(CorollaryKind::BoundedDegree, n, delta);
                if n == 2 {
                    assert_eq!(r.is_ok(), delta == 1);
                } else if delta >= 2 {
                    let d = r.unwrap();
                    assert!(d.max_degree() <= delta);
                }
            }
        }
    }
}
