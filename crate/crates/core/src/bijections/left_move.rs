//! The elementary left-edge move used by the swing and shift steps.
//!
//! For a `-` node `v`, let `w` be a `+` node that is not a right child, with
//! either
//!
//! 1. `v` the left child of `w`, or
//! 2. `v` the right child of a `+` node `w'` that is the left child of `w`.
//!
//! The move cuts `w` (with its right subtree) and re-hangs it as the left
//! child of `v`; `v`'s old left subtree becomes `w`'s left subtree and the
//! parent that held `w` now holds `v` (case 1) or `w'` (case 2). Only left
//! edges change, so the result is again a di-sk tree.

use crate::disktree::{DiSkTree, NodeRef, Sign};
use crate::error::{Error, Result};

const OP: &str = "l";
const OP_INV: &str = "l-inv";

/// Applies the move at node `v` (arena id) in place.
pub(crate) fn apply(t: &mut DiSkTree, v: usize) -> Result<()> {
    if t.sign_of(v) != Sign::Minus {
        return Err(Error::not_applicable(OP, "v is not a - node"));
    }
    let Some(p) = t.parent_of(v) else {
        return Err(Error::not_applicable(OP, "v is the root"));
    };
    let eligible = |t: &DiSkTree, w: usize| t.sign_of(w) == Sign::Plus && !t.is_right_child(w);
    let d = t.left_of(v);
    if t.left_of(p) == Some(v) {
        let w = p;
        if !eligible(t, w) {
            return Err(Error::not_applicable(OP, "parent of v is not an eligible + node"));
        }
        t.replace_in_parent(w, v);
        t.set_left(v, Some(w));
        t.set_left(w, d);
        return Ok(());
    }
    let w_prime = p;
    let w = t
        .parent_of(w_prime)
        .filter(|&w| t.left_of(w) == Some(w_prime) && eligible(t, w))
        .ok_or_else(|| Error::not_applicable(OP, "no eligible + grandparent above v"))?;
    debug_assert_eq!(t.sign_of(w_prime), Sign::Plus);
    t.replace_in_parent(w, w_prime);
    t.set_left(v, Some(w));
    t.set_left(w, d);
    Ok(())
}

/// Undoes [`apply`] at node `v` in place. Which case is undone is read off
/// the position of `v`: a right child came from case 2, anything else from
/// case 1.
pub(crate) fn undo(t: &mut DiSkTree, v: usize) -> Result<()> {
    if t.sign_of(v) != Sign::Minus {
        return Err(Error::not_applicable(OP_INV, "v is not a - node"));
    }
    let w = t
        .left_of(v)
        .filter(|&w| t.sign_of(w) == Sign::Plus)
        .ok_or_else(|| Error::not_applicable(OP_INV, "left child of v is not a + node"))?;
    let d = t.left_of(w);
    if t.is_right_child(v) {
        let w_prime = t.parent_of(v).expect("right child has a parent");
        if t.is_right_child(w_prime) {
            return Err(Error::not_applicable(OP_INV, "parent of v is a right child"));
        }
        t.replace_in_parent(w_prime, w);
        t.set_left(w, Some(w_prime));
        t.set_left(v, d);
    } else {
        t.replace_in_parent(v, w);
        t.set_left(w, Some(v));
        t.set_left(v, d);
    }
    Ok(())
}

/// The move at inorder node `v`.
pub fn l_op(v: NodeRef, t: &DiSkTree) -> Result<DiSkTree> {
    let mut work = t.clone();
    apply(&mut work, t.id_of(v)?)?;
    work.finish(OP)
}

/// Inverse of [`l_op`]; `v` names the same `-` node, now by its inorder
/// position in the moved tree.
pub fn l_inv(v: NodeRef, t: &DiSkTree) -> Result<DiSkTree> {
    let mut work = t.clone();
    undo(&mut work, t.id_of(v)?)?;
    work.finish(OP_INV)
}

/// Inorder position of `v` after the move; `l_inv` takes this position.
pub fn l_op_tracked(v: NodeRef, t: &DiSkTree) -> Result<(DiSkTree, NodeRef)> {
    let mut work = t.clone();
    let id = t.id_of(v)?;
    apply(&mut work, id)?;
    let pos = work
        .inorder_ids()
        .iter()
        .position(|&i| i == id)
        .expect("v stays in the tree");
    Ok((work.finish(OP)?, NodeRef(pos + 1)))
}
