//! The bijection that trades one unit of `top` for one unit of `iop` on trees
//! whose spine carries a `-` node, and the involution on separable
//! permutations built from it.

use crate::bijections::eta::{eta, eta_inv};
use crate::bijections::left_move;
use crate::disktree::{DiSkTree, Sign};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `-` nodes on the downward path from `top` to `bottom`, in walking order.
fn minus_nodes_on_path(t: &DiSkTree, top: usize, bottom: usize, op: &'static str) -> Result<Vec<usize>> {
    let path = t
        .path_down(top, bottom)
        .ok_or_else(|| Error::not_applicable(op, "target is not below the topmost spine - node"))?;
    Ok(path.into_iter().filter(|&i| t.sign_of(i) == Sign::Minus).collect())
}

fn topmost_spine_minus(t: &DiSkTree, op: &'static str) -> Result<usize> {
    t.spine_ids()
        .into_iter()
        .find(|&i| t.sign_of(i) == Sign::Minus)
        .ok_or_else(|| Error::not_applicable(op, "spine has no - node"))
}

/// Groups the spine of the subtree at `root` into `(minus node, number of +
/// nodes below it up to the next minus node)`.
fn spine_groups(t: &DiSkTree, root: usize) -> Vec<(usize, usize)> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for i in t.left_chain(root) {
        match t.sign_of(i) {
            Sign::Minus => groups.push((i, 0)),
            Sign::Plus => {
                if let Some(last) = groups.last_mut() {
                    last.1 += 1;
                }
            }
        }
    }
    groups
}

/// Maps a tree with `top = k >= 1`, `iop = l` and a `-` node on its spine to
/// one with `top = k - 1`, `iop = l + 1`, still with a `-` node on the spine.
///
/// Swing down: apply the move at each `-` node on the path from the topmost
/// spine `-` node to the first `-` node by inorder. Backward shift: with `w`
/// the left child of that first `-` node, undo the move along the spine of
/// `w`'s right subtree once per `+` node sitting below each `-` node.
pub fn phi(t: &DiSkTree) -> Result<DiSkTree> {
    const OP: &str = "phi";
    if t.top() == 0 {
        return Err(Error::not_applicable(OP, "top is 0"));
    }
    let mut work = t.clone();
    let v1 = topmost_spine_minus(&work, OP)?;
    let v = *work
        .inorder_ids()
        .iter()
        .find(|&&i| work.sign_of(i) == Sign::Minus)
        .expect("spine holds a - node");
    for vi in minus_nodes_on_path(&work, v1, v, OP)? {
        left_move::apply(&mut work, vi)?;
    }

    let w = work.left_of(v).expect("swing down leaves a + node left of v");
    debug_assert_eq!(work.sign_of(w), Sign::Plus);
    if let Some(b) = work.right_of(w) {
        for (node, count) in spine_groups(&work, b) {
            for _ in 0..count {
                left_move::undo(&mut work, node)?;
            }
        }
    }
    work.finish(OP)
}

/// Inverse of [`phi`]: forward shift, then swing up.
pub fn phi_inv(t: &DiSkTree) -> Result<DiSkTree> {
    const OP: &str = "phi-inv";
    if t.iop() == 0 {
        return Err(Error::not_applicable(OP, "iop is 0"));
    }
    let mut work = t.clone();
    topmost_spine_minus(&work, OP)?;
    let inorder = work.inorder_ids();
    let first_minus = inorder
        .iter()
        .position(|&i| work.sign_of(i) == Sign::Minus)
        .expect("spine holds a - node");
    let w = inorder[first_minus - 1];
    // first - ancestor of w, and the + nodes strictly between
    let mut between = 0;
    let mut cur = w;
    let v = loop {
        let p = work
            .parent_of(cur)
            .ok_or_else(|| Error::not_applicable(OP, "no - ancestor above the last initial + node"))?;
        if work.sign_of(p) == Sign::Minus {
            break p;
        }
        between += 1;
        cur = p;
    };

    if let Some(b) = work.right_of(w) {
        let groups = spine_groups(&work, b);
        // shift counts: the + run above the first group, then each run
        // between consecutive groups
        let mut counts = vec![between];
        counts.extend(groups.iter().take(groups.len().saturating_sub(1)).map(|g| g.1));
        for ((node, _), count) in groups.iter().zip(counts) {
            for _ in 0..count {
                left_move::apply(&mut work, *node)?;
            }
        }
    }

    let v1 = topmost_spine_minus(&work, OP)?;
    for vi in minus_nodes_on_path(&work, v1, v, OP)?.into_iter().rev() {
        left_move::undo(&mut work, vi)?;
    }
    work.finish(OP)
}

/// Applies `phi` `k` times for `k > 0`, `phi_inv` `-k` times for `k < 0`.
pub fn phi_power(t: &DiSkTree, k: i64) -> Result<DiSkTree> {
    let step = if k >= 0 { phi } else { phi_inv };
    (0..k.unsigned_abs()).try_fold(t.clone(), |acc, _| step(&acc))
}

/// The involution on separable permutations that keeps the left-to-right
/// maxima, minima and descent bottoms and swaps `comp` with `iar`.
pub fn big_phi(p: &Permutation) -> Result<Permutation> {
    let tree = eta(p)?;
    if !tree.spine_has_minus() {
        // p = 1 (+) sigma
        if p.len() == 1 {
            return Ok(p.clone());
        }
        let sigma = Permutation::from_vec_unchecked(p.values()[1..].iter().map(|&v| v - 1).collect());
        let image = big_phi(&sigma)?;
        return Ok(Permutation::identity(1).direct_sum(&image));
    }
    let k = tree.top() as i64;
    let l = tree.iop() as i64;
    Ok(eta_inv(&phi_power(&tree, k - l)?))
}
