//! Cut-and-paste bijection trading one unit of `top` for one unit of `iom`.

use crate::disktree::{DiSkTree, Sign};
use crate::error::{Error, Result};

/// Maps a tree with `top = k >= 1`, `iom = l` to one with `top = k - 1`,
/// `iom = l + 1`.
///
/// Writing `t = (t1, v, t2)` with `v` a `+` root: the piece `(., v, t2)` has
/// the left subtree `t3` of the lowest `-` node on `t2`'s spine moved on top
/// of it (so `v` ends up left of `t3`'s iroot), and is then conjugated. The
/// result is inserted into `t1` just below the first `+` node of `t`.
pub fn psi(t: &DiSkTree) -> Result<DiSkTree> {
    const OP: &str = "psi";
    if t.top() == 0 {
        return Err(Error::not_applicable(OP, "top is 0"));
    }
    let mut work = t.clone();
    let v = work.root.expect("top >= 1 implies nonempty");
    let v1 = *work
        .inorder_ids()
        .iter()
        .find(|&&i| work.sign_of(i) == Sign::Plus)
        .expect("root is +");
    let u1 = work.left_of(v1);

    // cut t1 off the root
    let t1_root = work.left_of(v);
    work.set_left(v, None);
    if let Some(r) = t1_root {
        work.nodes[r].parent = None;
    }

    // piece rooted at v; hoist t3 above it
    let mut star_root = v;
    if let Some(t2_root) = work.right_of(v) {
        let v2 = *work
            .left_chain(t2_root)
            .iter()
            .rev()
            .find(|&&i| work.sign_of(i) == Sign::Minus)
            .expect("right child of a + node is -");
        if let Some(t3_root) = work.left_of(v2) {
            work.set_left(v2, None);
            let c3 = work.leftmost(t3_root);
            work.set_left(c3, Some(v));
            work.nodes[t3_root].parent = None;
            star_root = t3_root;
        }
    }
    work.nodes[star_root].parent = None;
    work.conjugate_piece(star_root);
    let star_iroot = work.leftmost(star_root);

    if v1 == v {
        // t1 is all -; it hangs below the piece
        work.attach_piece(star_root, star_iroot, t1_root, None);
    } else {
        work.root = t1_root;
        work.attach_piece(star_root, star_iroot, u1, Some(v1));
    }
    work.finish(OP)
}

/// Inverse of [`psi`], defined on trees with `iom >= 1`.
pub fn psi_inv(t: &DiSkTree) -> Result<DiSkTree> {
    const OP: &str = "psi-inv";
    let iom = t.iom();
    if iom == 0 {
        return Err(Error::not_applicable(OP, "iom is 0"));
    }
    let mut work = t.clone();
    let inorder = work.inorder_ids();
    let v = inorder[iom - 1];
    let v2 = inorder
        .get(iom)
        .copied()
        .filter(|&x| work.is_ancestor(v, x));

    // the piece to lift out: root w_m, iroot v
    let w_m = match v2 {
        None => v,
        Some(_) => {
            let mut top = v;
            while let Some(p) = work.parent_of(top) {
                if work.left_of(p) == Some(top) && work.sign_of(p) == Sign::Minus {
                    top = p;
                } else {
                    break;
                }
            }
            top
        }
    };
    debug_assert!(v2.is_some() || work.right_of(v).is_none());
    work.detach_piece(w_m, v);
    let rest_root = work.root;

    // rebuild the piece rooted at v: the chain above v moves below v2
    if let Some(v2) = v2 {
        if w_m != v {
            let w2 = work.parent_of(v).expect("chain has length >= 2");
            work.set_left(w2, None);
            work.nodes[v].parent = None;
            debug_assert!(work.left_of(v2).is_none());
            work.set_left(v2, Some(w_m));
        }
    }
    work.conjugate_piece(v);
    let tilde_iroot = work.leftmost(v);
    work.attach_piece(v, tilde_iroot, rest_root, None);
    work.finish(OP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DiSkTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_example() {
        let tree = t("((. - .) + ((. + .) - .))");
        assert_eq!((tree.top(), tree.iom()), (1, 1));
        let image = psi(&tree).unwrap();
        assert_eq!(image.to_string(), "(((. - .) - (. + .)) - .)");
        assert_eq!((image.top(), image.iom()), (0, 2));
        assert_eq!(psi_inv(&image).unwrap(), tree);
    }

    #[test]
    fn single_node() {
        let plus = t("(. + .)");
        assert_eq!(psi(&plus).unwrap(), t("(. - .)"));
        assert_eq!(psi_inv(&t("(. - .)")).unwrap(), plus);
    }

    #[test]
    fn preconditions() {
        assert!(psi(&t("(. - .)")).is_err());
        assert!(psi(&DiSkTree::empty()).is_err());
        assert!(psi_inv(&t("(. + .)")).is_err());
    }
}
