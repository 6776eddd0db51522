use crate::disktree::{DiSkTree, Sign};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Decomposes a separable permutation into its di-sk tree.
///
/// At each level the greatest split index `i` is taken where the prefix
/// `pi_1..pi_i` lies entirely above (skew, `-` root) or entirely below
/// (direct, `+` root) the suffix. A level without such an index means the
/// input contains 2413 or 3142.
pub fn eta(p: &Permutation) -> Result<DiSkTree> {
    split(p.values()).ok_or_else(|| Error::NotSeparable(p.to_string()))
}

fn split(values: &[usize]) -> Option<DiSkTree> {
    let n = values.len();
    if n == 1 {
        return Some(DiSkTree::empty());
    }
    // suffix extrema: suffix_min[i] = min(values[i..])
    let mut suffix_min = vec![usize::MAX; n + 1];
    let mut suffix_max = vec![0; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(values[i]);
        suffix_max[i] = suffix_max[i + 1].max(values[i]);
    }
    let mut best = None;
    let (mut lo, mut hi) = (usize::MAX, 0);
    for i in 1..n {
        lo = lo.min(values[i - 1]);
        hi = hi.max(values[i - 1]);
        if lo > suffix_max[i] {
            best = Some((i, Sign::Minus));
        } else if hi < suffix_min[i] {
            best = Some((i, Sign::Plus));
        }
    }
    let (i, sign) = best?;
    let left = split(&values[..i])?;
    let right = split(&values[i..])?;
    Some(DiSkTree::join(left, sign, right))
}

/// Reads the permutation back off a di-sk tree: every node gets leaves for
/// its missing children, and leaf values are assigned so that a `+` node's
/// left leaves are all smaller (a `-` node's all larger) than its right ones.
pub fn eta_inv(t: &DiSkTree) -> Permutation {
    fn go(t: &DiSkTree, id: Option<usize>) -> Vec<usize> {
        let Some(id) = id else {
            return vec![1];
        };
        let left = go(t, t.left_of(id));
        let right = go(t, t.right_of(id));
        let (k, l) = (left.len(), right.len());
        match t.sign_of(id) {
            Sign::Plus => left.into_iter().chain(right.into_iter().map(|v| v + k)).collect(),
            Sign::Minus => left.into_iter().map(|v| v + l).chain(right).collect(),
        }
    }
    Permutation::from_vec_unchecked(go(t, t.root))
}
