//! Di-sk trees: binary trees with `+`/`-` labels where no node shares its
//! label with its right child.
//!
//! A [`DiSkTree`] is an arena of nodes with parent links. Every tree handed
//! out by the public API is canonical: arena slot `i` holds the `(i+1)`-th
//! node in inorder, so a [`NodeRef`] is simply a 1-based inorder index and
//! structural equality is `==`. Surgery runs on a scratch copy where arena
//! ids stay stable across edits; the result is re-canonicalized at the end.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A node of a canonical tree, named by its 1-based inorder position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeRef(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraversalOrder {
    Inorder,
    RightInorder,
    Preorder,
    RightPreorder,
    Postorder,
    RightPostorder,
    Level,
    RightLevel,
}

impl TraversalOrder {
    pub const ALL: [TraversalOrder; 8] = [
        TraversalOrder::Inorder,
        TraversalOrder::RightInorder,
        TraversalOrder::Preorder,
        TraversalOrder::RightPreorder,
        TraversalOrder::Postorder,
        TraversalOrder::RightPostorder,
        TraversalOrder::Level,
        TraversalOrder::RightLevel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TraversalOrder::Inorder => "inorder",
            TraversalOrder::RightInorder => "right_inorder",
            TraversalOrder::Preorder => "preorder",
            TraversalOrder::RightPreorder => "right_preorder",
            TraversalOrder::Postorder => "postorder",
            TraversalOrder::RightPostorder => "right_postorder",
            TraversalOrder::Level => "level",
            TraversalOrder::RightLevel => "right_level",
        }
    }
}

/// The sixteen initial-run statistics: `(name, traversal, sign)`.
pub const TREE_STATS: [(&str, TraversalOrder, Sign); 16] = [
    ("iop", TraversalOrder::Inorder, Sign::Plus),
    ("riop", TraversalOrder::RightInorder, Sign::Plus),
    ("top", TraversalOrder::Preorder, Sign::Plus),
    ("rtop", TraversalOrder::RightPreorder, Sign::Plus),
    ("pop", TraversalOrder::Postorder, Sign::Plus),
    ("rpop", TraversalOrder::RightPostorder, Sign::Plus),
    ("lop", TraversalOrder::Level, Sign::Plus),
    ("rlop", TraversalOrder::RightLevel, Sign::Plus),
    ("iom", TraversalOrder::Inorder, Sign::Minus),
    ("riom", TraversalOrder::RightInorder, Sign::Minus),
    ("tom", TraversalOrder::Preorder, Sign::Minus),
    ("rtom", TraversalOrder::RightPreorder, Sign::Minus),
    ("pom", TraversalOrder::Postorder, Sign::Minus),
    ("rpom", TraversalOrder::RightPostorder, Sign::Minus),
    ("lom", TraversalOrder::Level, Sign::Minus),
    ("rlom", TraversalOrder::RightLevel, Sign::Minus),
];

/// Looks up a traversal statistic by name, e.g. `"rpop"`.
pub fn tree_stat(name: &str) -> Option<(TraversalOrder, Sign)> {
    TREE_STATS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, o, s)| (o, s))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Node {
    pub(crate) sign: Sign,
    pub(crate) left: Option<usize>,
    pub(crate) right: Option<usize>,
    pub(crate) parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiSkTree {
    pub(crate) nodes: Vec<Node>,
    pub(crate) root: Option<usize>,
}

impl Default for DiSkTree {
    fn default() -> Self {
        DiSkTree::empty()
    }
}

impl DiSkTree {
    pub fn empty() -> Self {
        DiSkTree {
            nodes: Vec::new(),
            root: None,
        }
    }

    pub fn leaf(sign: Sign) -> Self {
        DiSkTree::join(DiSkTree::empty(), sign, DiSkTree::empty())
    }

    /// Builds `(left sign right)` without checking the right-child rule.
    pub fn join(left: DiSkTree, sign: Sign, right: DiSkTree) -> Self {
        let mut nodes = Vec::with_capacity(left.size() + right.size() + 1);
        let left_root = left.root;
        nodes.extend(left.nodes);
        let me = nodes.len();
        nodes.push(Node {
            sign,
            left: left_root,
            right: None,
            parent: None,
        });
        let offset_right = nodes.len();
        let right_root = right.root.map(|r| r + offset_right);
        nodes.extend(right.nodes.into_iter().map(|mut n| {
            n.left = n.left.map(|c| c + offset_right);
            n.right = n.right.map(|c| c + offset_right);
            n.parent = n.parent.map(|c| c + offset_right);
            n
        }));
        nodes[me].right = right_root;
        if let Some(l) = left_root {
            nodes[l].parent = Some(me);
        }
        if let Some(r) = right_root {
            nodes[r].parent = Some(me);
        }
        let tree = DiSkTree {
            nodes,
            root: Some(me),
        };
        debug_assert!(tree.is_canonical());
        tree
    }

    /// Like [`DiSkTree::join`] but rejects a right child with the same label.
    pub fn try_join(left: DiSkTree, sign: Sign, right: DiSkTree) -> Result<Self> {
        if right.root_sign() == Some(sign) {
            return Err(Error::InvalidTree(format!(
                "root {} has a right child with the same label",
                sign.symbol()
            )));
        }
        Ok(DiSkTree::join(left, sign, right))
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn root_sign(&self) -> Option<Sign> {
        self.root.map(|r| self.nodes[r].sign)
    }

    /// Label of a node by inorder index.
    pub fn sign(&self, node: NodeRef) -> Result<Sign> {
        Ok(self.nodes[self.index(node)?].sign)
    }

    pub fn root(&self) -> Option<NodeRef> {
        self.root.map(|r| NodeRef(r + 1))
    }

    pub fn parent(&self, node: NodeRef) -> Result<Option<NodeRef>> {
        Ok(self.nodes[self.index(node)?].parent.map(|i| NodeRef(i + 1)))
    }

    pub fn left(&self, node: NodeRef) -> Result<Option<NodeRef>> {
        Ok(self.nodes[self.index(node)?].left.map(|i| NodeRef(i + 1)))
    }

    pub fn right(&self, node: NodeRef) -> Result<Option<NodeRef>> {
        Ok(self.nodes[self.index(node)?].right.map(|i| NodeRef(i + 1)))
    }

    /// The labels in inorder.
    pub fn inorder_signs(&self) -> Vec<Sign> {
        self.inorder_ids().into_iter().map(|i| self.nodes[i].sign).collect()
    }

    /// Left and right subtrees of the root.
    pub fn split_root(&self) -> Option<(DiSkTree, Sign, DiSkTree)> {
        let r = self.root?;
        let node = &self.nodes[r];
        Some((
            self.subtree_at(node.left),
            node.sign,
            self.subtree_at(node.right),
        ))
    }

    pub fn left_subtree(&self) -> DiSkTree {
        self.root
            .map(|r| self.subtree_at(self.nodes[r].left))
            .unwrap_or_default()
    }

    pub fn right_subtree(&self) -> DiSkTree {
        self.root
            .map(|r| self.subtree_at(self.nodes[r].right))
            .unwrap_or_default()
    }

    /// True iff no node has the same label as its right child.
    pub fn validate(&self) -> bool {
        self.nodes
            .iter()
            .all(|n| n.right.is_none_or(|r| self.nodes[r].sign != n.sign))
    }

    pub fn traverse(&self, order: TraversalOrder) -> Vec<NodeRef> {
        self.traverse_ids(order)
            .into_iter()
            .map(|i| NodeRef(i + 1))
            .collect()
    }

    /// Length of the longest prefix of `traverse(order)` labelled `sign`.
    pub fn initial_count(&self, order: TraversalOrder, sign: Sign) -> usize {
        self.traverse_ids(order)
            .into_iter()
            .take_while(|&i| self.nodes[i].sign == sign)
            .count()
    }

    /// Statistic by name: any of [`TREE_STATS`], `omi`, or `size`.
    pub fn stat(&self, name: &str) -> Option<usize> {
        match name {
            "omi" => Some(self.omi()),
            "size" => Some(self.size()),
            _ => tree_stat(name).map(|(o, s)| self.initial_count(o, s)),
        }
    }

    /// All sixteen traversal statistics plus `omi`, in [`TREE_STATS`] order.
    pub fn stat_profile(&self) -> Vec<(&'static str, usize)> {
        TREE_STATS
            .iter()
            .map(|&(name, o, s)| (name, self.initial_count(o, s)))
            .chain(std::iter::once(("omi", self.omi())))
            .collect()
    }

    pub fn iop(&self) -> usize {
        self.initial_count(TraversalOrder::Inorder, Sign::Plus)
    }

    pub fn riop(&self) -> usize {
        self.initial_count(TraversalOrder::RightInorder, Sign::Plus)
    }

    pub fn top(&self) -> usize {
        self.initial_count(TraversalOrder::Preorder, Sign::Plus)
    }

    pub fn rtop(&self) -> usize {
        self.initial_count(TraversalOrder::RightPreorder, Sign::Plus)
    }

    pub fn pop(&self) -> usize {
        self.initial_count(TraversalOrder::Postorder, Sign::Plus)
    }

    pub fn rpop(&self) -> usize {
        self.initial_count(TraversalOrder::RightPostorder, Sign::Plus)
    }

    pub fn lop(&self) -> usize {
        self.initial_count(TraversalOrder::Level, Sign::Plus)
    }

    pub fn rlop(&self) -> usize {
        self.initial_count(TraversalOrder::RightLevel, Sign::Plus)
    }

    pub fn iom(&self) -> usize {
        self.initial_count(TraversalOrder::Inorder, Sign::Minus)
    }

    pub fn tom(&self) -> usize {
        self.initial_count(TraversalOrder::Preorder, Sign::Minus)
    }

    /// Number of `-` nodes.
    pub fn omi(&self) -> usize {
        self.nodes.iter().filter(|n| n.sign == Sign::Minus).count()
    }

    /// First node in inorder.
    pub fn iroot(&self) -> Result<NodeRef> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        Ok(NodeRef(1))
    }

    /// Path from the root down to the iroot, root first.
    pub fn spine(&self) -> Result<Vec<NodeRef>> {
        if self.is_empty() {
            return Err(Error::EmptyTree);
        }
        Ok(self.spine_ids().into_iter().map(|i| NodeRef(i + 1)).collect())
    }

    /// Whether the spine contains a `-` node.
    pub fn spine_has_minus(&self) -> bool {
        self.spine_ids()
            .into_iter()
            .any(|i| self.nodes[i].sign == Sign::Minus)
    }

    pub fn conjugate(&self) -> DiSkTree {
        let mut out = self.clone();
        for n in &mut out.nodes {
            n.sign = n.sign.flip();
        }
        out
    }

    /// Inserts `t2` into `self` at `(a, b)`: the edge `a`-`b` is cut, the
    /// subtree at `a` hangs left of `t2`'s iroot and `t2`'s root hangs left
    /// of `b`. With `b = None`, `a` must be the root; with `a = None`, `b`
    /// must have no left child.
    pub fn insert(&self, t2: &DiSkTree, a: Option<NodeRef>, b: Option<NodeRef>) -> Result<DiSkTree> {
        if t2.is_empty() {
            return Err(Error::not_applicable("insert", "inserted tree is empty"));
        }
        let a_id = a.map(|n| self.index(n)).transpose()?;
        let b_id = b.map(|n| self.index(n)).transpose()?;
        match b_id {
            Some(b) if self.nodes[b].left != a_id => {
                return Err(Error::not_applicable(
                    "insert",
                    "a is not the left child of b",
                ));
            }
            None if a_id != self.root => {
                return Err(Error::not_applicable(
                    "insert",
                    "with no b, a must be the root",
                ));
            }
            _ => {}
        }
        let mut work = self.clone();
        let d = work.adopt(t2);
        let c = work.leftmost(d);
        work.attach_piece(d, c, a_id, b_id);
        work.finish("insert")
    }

    /// Extracts the piece with root `d` and iroot `c` (the left edges into
    /// `d` and out of `c` are its only outside links). Returns
    /// `(self \ piece, piece)`.
    pub fn extract(&self, d: NodeRef, c: NodeRef) -> Result<(DiSkTree, DiSkTree)> {
        let d_id = self.index(d)?;
        let c_id = self.index(c)?;
        if self.is_right_child(d_id) {
            return Err(Error::not_applicable("extract", "d is a right child"));
        }
        if !self.left_chain(d_id).contains(&c_id) {
            return Err(Error::not_applicable(
                "extract",
                "c is not reachable from d along left edges",
            ));
        }
        let mut work = self.clone();
        work.detach_piece(d_id, c_id);
        let piece = work.piece(d_id);
        let rest = work.finish("extract")?;
        Ok((rest, piece))
    }

    // ---- arena-level helpers; ids are raw arena indices ----

    fn index(&self, node: NodeRef) -> Result<usize> {
        if node.0 == 0 || node.0 > self.size() {
            return Err(Error::InvalidNodeRef {
                node: node.0,
                size: self.size(),
            });
        }
        Ok(node.0 - 1)
    }

    pub(crate) fn id_of(&self, node: NodeRef) -> Result<usize> {
        self.index(node)
    }

    fn subtree_at(&self, id: Option<usize>) -> DiSkTree {
        match id {
            None => DiSkTree::empty(),
            Some(i) => self.piece(i),
        }
    }

    /// Canonical copy of everything reachable from `id`.
    pub(crate) fn piece(&self, id: usize) -> DiSkTree {
        let mut nodes = Vec::new();
        let root = self.copy_inorder(Some(id), None, &mut nodes);
        DiSkTree { nodes, root }
    }

    fn copy_inorder(&self, id: Option<usize>, parent: Option<usize>, out: &mut Vec<Node>) -> Option<usize> {
        let id = id?;
        let src = &self.nodes[id];
        let left = self.copy_inorder(src.left, None, out);
        let me = out.len();
        out.push(Node {
            sign: src.sign,
            left,
            right: None,
            parent,
        });
        if let Some(l) = left {
            out[l].parent = Some(me);
        }
        let right = self.copy_inorder(src.right, Some(me), out);
        out[me].right = right;
        Some(me)
    }

    /// Rebuilds the reachable part in canonical layout.
    pub(crate) fn canonical(&self) -> DiSkTree {
        match self.root {
            None => DiSkTree::empty(),
            Some(r) => self.piece(r),
        }
    }

    /// Canonicalizes a scratch tree and enforces the right-child rule.
    pub(crate) fn finish(&self, op: &'static str) -> Result<DiSkTree> {
        let out = self.canonical();
        if !out.validate() {
            return Err(Error::not_applicable(
                op,
                "result violates the right-child rule",
            ));
        }
        Ok(out)
    }

    pub(crate) fn is_canonical(&self) -> bool {
        self.inorder_ids().into_iter().eq(0..self.size())
    }

    pub(crate) fn inorder_ids(&self) -> Vec<usize> {
        self.traverse_ids(TraversalOrder::Inorder)
    }

    pub(crate) fn sign_of(&self, id: usize) -> Sign {
        self.nodes[id].sign
    }

    pub(crate) fn left_of(&self, id: usize) -> Option<usize> {
        self.nodes[id].left
    }

    pub(crate) fn right_of(&self, id: usize) -> Option<usize> {
        self.nodes[id].right
    }

    pub(crate) fn parent_of(&self, id: usize) -> Option<usize> {
        self.nodes[id].parent
    }

    pub(crate) fn is_right_child(&self, id: usize) -> bool {
        self.nodes[id]
            .parent
            .is_some_and(|p| self.nodes[p].right == Some(id))
    }

    /// `id` followed by its left child, grandchild, ...
    pub(crate) fn left_chain(&self, id: usize) -> Vec<usize> {
        std::iter::successors(Some(id), |&i| self.nodes[i].left).collect()
    }

    pub(crate) fn leftmost(&self, id: usize) -> usize {
        *self.left_chain(id).last().expect("chain is nonempty")
    }

    pub(crate) fn spine_ids(&self) -> Vec<usize> {
        self.root.map(|r| self.left_chain(r)).unwrap_or_default()
    }

    pub(crate) fn is_ancestor(&self, anc: usize, mut id: usize) -> bool {
        loop {
            if id == anc {
                return true;
            }
            match self.nodes[id].parent {
                Some(p) => id = p,
                None => return false,
            }
        }
    }

    /// Nodes on the downward path from `top` to `bottom`, both included.
    pub(crate) fn path_down(&self, top: usize, bottom: usize) -> Option<Vec<usize>> {
        let mut path = vec![bottom];
        let mut cur = bottom;
        while cur != top {
            cur = self.nodes[cur].parent?;
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    pub(crate) fn set_left(&mut self, id: usize, child: Option<usize>) {
        self.nodes[id].left = child;
        if let Some(c) = child {
            self.nodes[c].parent = Some(id);
        }
    }

    /// Puts `new` where `old` hangs (or makes it the root).
    pub(crate) fn replace_in_parent(&mut self, old: usize, new: usize) {
        let g = self.nodes[old].parent;
        match g {
            None => self.root = Some(new),
            Some(g) => {
                if self.nodes[g].left == Some(old) {
                    self.nodes[g].left = Some(new);
                } else {
                    self.nodes[g].right = Some(new);
                }
            }
        }
        self.nodes[new].parent = g;
    }

    /// Copies `other` into this arena as a detached component; returns its root id.
    pub(crate) fn adopt(&mut self, other: &DiSkTree) -> usize {
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes.iter().map(|n| Node {
            sign: n.sign,
            left: n.left.map(|i| i + offset),
            right: n.right.map(|i| i + offset),
            parent: n.parent.map(|i| i + offset),
        }));
        other.root.expect("adopted tree is nonempty") + offset
    }

    /// Cuts the piece rooted at `d` with iroot `c` out of the tree; the old
    /// left child of `c` takes `d`'s place. Returns that child.
    pub(crate) fn detach_piece(&mut self, d: usize, c: usize) -> Option<usize> {
        let a = self.nodes[c].left;
        let b = self.nodes[d].parent;
        self.nodes[c].left = None;
        self.nodes[d].parent = None;
        match b {
            Some(b) => self.set_left(b, a),
            None => {
                self.root = a;
                if let Some(a) = a {
                    self.nodes[a].parent = None;
                }
            }
        }
        a
    }

    /// Inverse of [`Self::detach_piece`]: the subtree at `a` goes left of
    /// `c`, and `d` goes left of `b` (or becomes the root).
    pub(crate) fn attach_piece(&mut self, d: usize, c: usize, a: Option<usize>, b: Option<usize>) {
        self.set_left(c, a);
        match b {
            Some(b) => self.set_left(b, Some(d)),
            None => {
                self.root = Some(d);
                self.nodes[d].parent = None;
            }
        }
    }

    /// Flips every label reachable from `id`.
    pub(crate) fn conjugate_piece(&mut self, id: usize) {
        let mut stack = vec![id];
        while let Some(i) = stack.pop() {
            self.nodes[i].sign = self.nodes[i].sign.flip();
            stack.extend(self.nodes[i].left);
            stack.extend(self.nodes[i].right);
        }
    }

    pub(crate) fn traverse_ids(&self, order: TraversalOrder) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.size());
        let Some(root) = self.root else {
            return out;
        };
        match order {
            TraversalOrder::Level | TraversalOrder::RightLevel => {
                let mut queue = VecDeque::from([root]);
                while let Some(i) = queue.pop_front() {
                    out.push(i);
                    let n = &self.nodes[i];
                    let (first, second) = if order == TraversalOrder::Level {
                        (n.left, n.right)
                    } else {
                        (n.right, n.left)
                    };
                    queue.extend(first);
                    queue.extend(second);
                }
            }
            _ => self.depth_first(root, order, &mut out),
        }
        out
    }

    fn depth_first(&self, id: usize, order: TraversalOrder, out: &mut Vec<usize>) {
        let n = &self.nodes[id];
        let (first, second) = match order {
            TraversalOrder::Inorder | TraversalOrder::Preorder | TraversalOrder::Postorder => {
                (n.left, n.right)
            }
            _ => (n.right, n.left),
        };
        let visit_first = matches!(order, TraversalOrder::Preorder | TraversalOrder::RightPreorder);
        let visit_mid = matches!(order, TraversalOrder::Inorder | TraversalOrder::RightInorder);
        if visit_first {
            out.push(id);
        }
        if let Some(f) = first {
            self.depth_first(f, order, out);
        }
        if visit_mid {
            out.push(id);
        }
        if let Some(s) = second {
            self.depth_first(s, order, out);
        }
        if !visit_first && !visit_mid {
            out.push(id);
        }
    }

    /// Parses the canonical grammar without checking the right-child rule.
    pub fn parse_unvalidated(s: &str) -> Result<DiSkTree> {
        let bytes = s.trim().as_bytes();
        let mut pos = 0;
        let tree = parse_tree(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::InvalidTree(format!(
                "trailing input at byte {pos}"
            )));
        }
        Ok(tree)
    }
}

fn expect(bytes: &[u8], pos: &mut usize, want: u8) -> Result<()> {
    if bytes.get(*pos) == Some(&want) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::InvalidTree(format!(
            "expected `{}` at byte {}",
            want as char, *pos
        )))
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<DiSkTree> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(DiSkTree::empty())
        }
        Some(b'(') => {
            *pos += 1;
            let left = parse_tree(bytes, pos)?;
            expect(bytes, pos, b' ')?;
            let sign = match bytes.get(*pos) {
                Some(b'+') => Sign::Plus,
                Some(b'-') => Sign::Minus,
                _ => {
                    return Err(Error::InvalidTree(format!(
                        "expected sign at byte {}",
                        *pos
                    )))
                }
            };
            *pos += 1;
            expect(bytes, pos, b' ')?;
            let right = parse_tree(bytes, pos)?;
            expect(bytes, pos, b')')?;
            Ok(DiSkTree::join(left, sign, right))
        }
        _ => Err(Error::InvalidTree(format!(
            "expected `.` or `(` at byte {}",
            *pos
        ))),
    }
}

impl FromStr for DiSkTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tree = DiSkTree::parse_unvalidated(s)?;
        if !tree.validate() {
            return Err(Error::InvalidTree(format!(
                "`{}` has a node with the same label as its right child",
                s.trim()
            )));
        }
        Ok(tree)
    }
}

impl fmt::Display for DiSkTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &DiSkTree, id: Option<usize>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match id {
                None => f.write_str("."),
                Some(i) => {
                    let n = &t.nodes[i];
                    f.write_str("(")?;
                    go(t, n.left, f)?;
                    write!(f, " {} ", n.sign.symbol())?;
                    go(t, n.right, f)?;
                    f.write_str(")")
                }
            }
        }
        go(self, self.root, f)
    }
}

/// JSON shape: `{"label": "+", "left": ..., "right": ...}` with `null` for empty.
#[derive(Serialize, Deserialize)]
struct JsonNode {
    label: Sign,
    left: Option<Box<JsonNode>>,
    right: Option<Box<JsonNode>>,
}

impl DiSkTree {
    fn to_json_node(&self, id: Option<usize>) -> Option<Box<JsonNode>> {
        id.map(|i| {
            let n = &self.nodes[i];
            Box::new(JsonNode {
                label: n.sign,
                left: self.to_json_node(n.left),
                right: self.to_json_node(n.right),
            })
        })
    }

    fn from_json_node(node: Option<Box<JsonNode>>) -> DiSkTree {
        match node {
            None => DiSkTree::empty(),
            Some(n) => DiSkTree::join(
                DiSkTree::from_json_node(n.left),
                n.label,
                DiSkTree::from_json_node(n.right),
            ),
        }
    }
}

impl Serialize for DiSkTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_node(self.root).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiSkTree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let node = Option::<Box<JsonNode>>::deserialize(deserializer)?;
        let tree = DiSkTree::from_json_node(node);
        if !tree.validate() {
            return Err(serde::de::Error::custom(
                "node with the same label as its right child",
            ));
        }
        Ok(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> DiSkTree {
        s.parse().unwrap()
    }

    /// The nine-node tree whose eight `+` statistics are `(2,1,1,1,1,2,1,1)`.
    pub(crate) const TRAVERSAL_TREE: &str =
        "(((. + ((. + .) - .)) - .) + ((. - (. + .)) - (. + .)))";
    const EXAMPLE_TREE: &str = "(((. - ((. + .) + .)) - .) + ((. + (. - .)) - (. + (. - .))))";

    #[test]
    fn grammar_round_trip() {
        for s in [".", "(. + .)", "((. - .) + .)", EXAMPLE_TREE, TRAVERSAL_TREE] {
            assert_eq!(t(s).to_string(), s);
        }
        assert!(" (. + .) ".parse::<DiSkTree>().is_ok());
        assert!("(.  + .)".parse::<DiSkTree>().is_err());
        assert!("(. * .)".parse::<DiSkTree>().is_err());
        assert!("(. + .".parse::<DiSkTree>().is_err());
        assert!("(. + .))".parse::<DiSkTree>().is_err());
    }

    #[test]
    fn validation() {
        assert!(DiSkTree::parse_unvalidated("(. + (. - .))").unwrap().validate());
        assert!(!DiSkTree::parse_unvalidated("(. + (. + .))").unwrap().validate());
        assert!(DiSkTree::empty().validate());
        assert!("(. + (. + .))".parse::<DiSkTree>().is_err());
        assert!(DiSkTree::try_join(DiSkTree::empty(), Sign::Plus, t("(. + .)")).is_err());
    }

    #[test]
    fn traversals_small() {
        let single = t("(. - .)");
        for order in TraversalOrder::ALL {
            assert_eq!(single.traverse(order), vec![NodeRef(1)]);
        }
        let chain = t("((. - .) + .)");
        assert_eq!(chain.traverse(TraversalOrder::Inorder), vec![NodeRef(1), NodeRef(2)]);
        assert_eq!(chain.sign(NodeRef(1)).unwrap(), Sign::Minus);
        let right = t("(. + (. - .))");
        let pre = right.traverse(TraversalOrder::Preorder);
        assert_eq!(right.sign(pre[0]).unwrap(), Sign::Plus);
        assert_eq!(right.sign(pre[1]).unwrap(), Sign::Minus);
    }

    #[test]
    fn traversal_tree_statistics() {
        let tree = t(TRAVERSAL_TREE);
        let plus: Vec<usize> = TREE_STATS[..8]
            .iter()
            .map(|&(_, o, s)| tree.initial_count(o, s))
            .collect();
        assert_eq!(plus, vec![2, 1, 1, 1, 1, 2, 1, 1]);
        // visiting orders, by inorder index
        let pos = |order| {
            let seq = tree.traverse(order);
            (1..=9).map(|k| seq.iter().position(|n| n.0 == k).unwrap() + 1).collect::<Vec<_>>()
        };
        assert_eq!(pos(TraversalOrder::Preorder), vec![3, 5, 4, 2, 1, 7, 8, 6, 9]);
        assert_eq!(pos(TraversalOrder::RightPostorder), vec![7, 5, 6, 8, 9, 3, 2, 4, 1]);
        assert_eq!(pos(TraversalOrder::Level), vec![4, 9, 7, 2, 1, 5, 8, 3, 6]);
        assert_eq!(pos(TraversalOrder::RightLevel), vec![6, 9, 8, 3, 1, 5, 7, 2, 4]);
    }

    #[test]
    fn spine_and_counts() {
        let example = t(EXAMPLE_TREE);
        assert_eq!(example.top(), 1);
        assert_eq!(example.omi(), 5);
        let labels: Vec<Sign> = example
            .spine()
            .unwrap()
            .into_iter()
            .map(|n| example.sign(n).unwrap())
            .collect();
        assert_eq!(labels, vec![Sign::Plus, Sign::Minus, Sign::Minus]);
        assert_eq!(t("(. - .)").spine().unwrap(), vec![NodeRef(1)]);
        assert_eq!(t("(((. + .) + .) + .)").spine().unwrap().len(), 3);
        assert_eq!(t("(((. + .) + .) + .)").omi(), 0);
        assert_eq!(t("(. - .)").omi(), 1);
        assert!(DiSkTree::empty().spine().is_err());
        assert!(DiSkTree::empty().iroot().is_err());
        for order in TraversalOrder::ALL {
            assert_eq!(DiSkTree::empty().initial_count(order, Sign::Plus), 0);
            assert!(DiSkTree::empty().traverse(order).is_empty());
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(t("(. + (. - .))").conjugate(), t("(. - (. + .))"));
        let tree = t(TRAVERSAL_TREE);
        assert_eq!(tree.conjugate().conjugate(), tree);
        assert_eq!(tree.conjugate().omi(), tree.size() - tree.omi());
    }

    #[test]
    fn insert_with_empty_b() {
        let t1 = t("(. + .)");
        let t2 = t("(. - .)");
        let t3 = t1.insert(&t2, Some(NodeRef(1)), None).unwrap();
        assert_eq!(t3.to_string(), "((. + .) - .)");
        let (back, piece) = t3.extract(NodeRef(2), NodeRef(2)).unwrap();
        assert_eq!(back, t1);
        assert_eq!(piece, t2);
    }

    #[test]
    fn insert_both_ends() {
        // a and b are a left-chain pair of t1; t2 is a two-node left chain.
        let t1 = t("((. + .) - .)");
        let t2 = t("((. + .) - .)");
        let t3 = t1.insert(&t2, Some(NodeRef(1)), Some(NodeRef(2))).unwrap();
        assert_eq!(t3.to_string(), "((((. + .) + .) - .) - .)");
        // t2's root and iroot are inorder nodes 3 and 2 of t3
        let (back, piece) = t3.extract(NodeRef(3), NodeRef(2)).unwrap();
        assert_eq!(back, t1);
        assert_eq!(piece, t2);
    }

    #[test]
    fn insert_errors() {
        let t1 = t("((. + .) - .)");
        let t2 = t("(. - .)");
        assert!(t1.insert(&DiSkTree::empty(), None, None).is_err());
        assert!(t1.insert(&t2, Some(NodeRef(2)), Some(NodeRef(1))).is_err());
        assert!(t1.insert(&t2, Some(NodeRef(1)), None).is_err());
        assert!(t1.insert(&t2, None, Some(NodeRef(7))).is_err());
    }

    #[test]
    fn extract_whole_tree() {
        let tree = t(EXAMPLE_TREE);
        let (rest, piece) = tree.extract(tree.root().unwrap(), NodeRef(1)).unwrap();
        assert!(rest.is_empty());
        assert_eq!(piece, tree);
        // c must lie on the left chain of d
        assert!(tree.extract(tree.root().unwrap(), NodeRef(10)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let tree = t(EXAMPLE_TREE);
        let json = serde_json::to_string(&tree).unwrap();
        let back: DiSkTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tree);
        assert_eq!(serde_json::to_string(&DiSkTree::empty()).unwrap(), "null");
        let leaf = serde_json::to_string(&t("(. + .)")).unwrap();
        assert_eq!(leaf, r#"{"label":"+","left":null,"right":null}"#);
        let bad = r#"{"label":"+","left":null,"right":{"label":"+","left":null,"right":null}}"#;
        assert!(serde_json::from_str::<DiSkTree>(bad).is_err());
    }
}
