use crate::disktree::{DiSkTree, Sign};

/// Size-preserving bijection exchanging `pop` and `rpop`.
///
/// With `t = (l, r, rt)`: an empty right subtree keeps the root and maps the
/// left one; otherwise the images of the subtrees are swapped (an empty left
/// subtree stays empty on the left) and the root label is forced to differ
/// from the new right child's.
pub fn theta(t: &DiSkTree) -> DiSkTree {
    let Some((left, sign, right)) = t.split_root() else {
        return DiSkTree::empty();
    };
    if right.is_empty() {
        return DiSkTree::join(theta(&left), sign, DiSkTree::empty());
    }
    let (new_left, new_right) = if left.is_empty() {
        (DiSkTree::empty(), theta(&right))
    } else {
        (theta(&right), theta(&left))
    };
    let root = new_right.root_sign().expect("nonempty").flip();
    DiSkTree::join(new_left, root, new_right)
}

/// Inverse of [`theta`].
pub fn theta_inv(t: &DiSkTree) -> DiSkTree {
    let Some((left, sign, right)) = t.split_root() else {
        return DiSkTree::empty();
    };
    if right.is_empty() {
        return DiSkTree::join(theta_inv(&left), sign, DiSkTree::empty());
    }
    let (old_left, old_right) = if left.is_empty() {
        (DiSkTree::empty(), theta_inv(&right))
    } else {
        (theta_inv(&right), theta_inv(&left))
    };
    let root: Sign = old_right.root_sign().expect("nonempty").flip();
    DiSkTree::join(old_left, root, old_right)
}
