//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's algorithms; trees are rebuilt from their text.

#![allow(dead_code)]

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tr {
    Nil,
    Node(Box<Tr>, char, Box<Tr>),
}

impl Tr {
    pub fn parse(s: &str) -> Tr {
        fn go(b: &[u8], i: &mut usize) -> Tr {
            while b[*i] == b' ' {
                *i += 1;
            }
            if b[*i] == b'.' {
                *i += 1;
                return Tr::Nil;
            }
            assert_eq!(b[*i], b'(');
            *i += 1;
            let l = go(b, i);
            while b[*i] == b' ' {
                *i += 1;
            }
            let c = b[*i] as char;
            *i += 1;
            let r = go(b, i);
            while b[*i] == b' ' {
                *i += 1;
            }
            assert_eq!(b[*i], b')');
            *i += 1;
            Tr::Node(Box::new(l), c, Box::new(r))
        }
        let mut i = 0;
        go(s.as_bytes(), &mut i)
    }

    pub fn text(&self) -> String {
        match self {
            Tr::Nil => ".".into(),
            Tr::Node(l, c, r) => format!("({} {c} {})", l.text(), r.text()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tr::Nil => 0,
            Tr::Node(l, _, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn is_disk(&self) -> bool {
        match self {
            Tr::Nil => true,
            Tr::Node(l, c, r) => {
                let ok = match &**r {
                    Tr::Node(_, rc, _) => rc != c,
                    Tr::Nil => true,
                };
                ok && l.is_disk() && r.is_disk()
            }
        }
    }

    /// Labels in the named order; `right` mirrors left and right.
    pub fn labels(&self, order: &str) -> Vec<char> {
        let (kind, mirror) = match order.strip_prefix('r') {
            Some(k) if !k.is_empty() => (k, true),
            _ => (order, false),
        };
        let mut out = Vec::new();
        if kind == "l" {
            let mut level = vec![self];
            while !level.is_empty() {
                let mut next = Vec::new();
                for t in level {
                    if let Tr::Node(l, c, r) = t {
                        out.push(*c);
                        if mirror {
                            next.extend([&**r, &**l]);
                        } else {
                            next.extend([&**l, &**r]);
                        }
                    }
                }
                level = next;
            }
            return out;
        }
        fn dfs(t: &Tr, kind: &str, mirror: bool, out: &mut Vec<char>) {
            if let Tr::Node(l, c, r) = t {
                let (a, b) = if mirror { (r, l) } else { (l, r) };
                if kind == "t" {
                    out.push(*c);
                }
                dfs(a, kind, mirror, out);
                if kind == "i" {
                    out.push(*c);
                }
                dfs(b, kind, mirror, out);
                if kind == "p" {
                    out.push(*c);
                }
            }
        }
        dfs(self, kind, mirror, &mut out);
        out
    }

    /// A statistic such as "rpop": traversal letters, then "op"/"om".
    pub fn stat(&self, name: &str) -> usize {
        let (order, sign) = if let Some(o) = name.strip_suffix("op") {
            (o, '+')
        } else {
            (name.strip_suffix("om").expect("statistic name"), '-')
        };
        self.labels(order).iter().take_while(|&&c| c == sign).count()
    }

    pub fn omi(&self) -> usize {
        self.labels("i").iter().filter(|&&c| c == '-').count()
    }

    /// Every labelled binary tree with `m` nodes obeying the right-child rule,
    /// by filtering all labelled shapes.
    pub fn all_disk(m: usize) -> Vec<Tr> {
        fn shapes(m: usize) -> Vec<Tr> {
            if m == 0 {
                return vec![Tr::Nil];
            }
            let mut out = Vec::new();
            for k in 0..m {
                for l in shapes(k) {
                    for r in shapes(m - 1 - k) {
                        for c in ['+', '-'] {
                            out.push(Tr::Node(Box::new(l.clone()), c, Box::new(r.clone())));
                        }
                    }
                }
            }
            out
        }
        shapes(m).into_iter().filter(Tr::is_disk).collect()
    }
}

pub const ALL_STATS: [&str; 16] = [
    "iop", "riop", "top", "rtop", "pop", "rpop", "lop", "rlop", "iom", "riom", "tom", "rtom", "pom", "rpom", "lom",
    "rlom",
];

/// All permutations of `1..=n` by Heap's algorithm, sorted.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

/// Whether `p` contains `pattern`, by trying every index subset.
pub fn contains(p: &[usize], pattern: &[usize]) -> bool {
    fn go(p: &[usize], pat: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == pat.len() {
            let k = pat.len();
            return (0..k).all(|a| (0..k).all(|b| (pat[a] < pat[b]) == (chosen[a] < chosen[b])));
        }
        (start..p.len()).any(|i| {
            chosen.push(p[i]);
            let hit = go(p, pat, i + 1, chosen);
            chosen.pop();
            hit
        })
    }
    go(p, pattern, 0, &mut Vec::new())
}

pub fn avoiders(n: usize, patterns: &[&[usize]]) -> Vec<Vec<usize>> {
    all_perms(n)
        .into_iter()
        .filter(|p| patterns.iter().all(|q| !contains(p, q)))
        .collect()
}

pub fn separable_oracle(n: usize) -> Vec<Vec<usize>> {
    avoiders(n, &[&[2, 4, 1, 3], &[3, 1, 4, 2]])
}

pub fn des(p: &[usize]) -> Vec<usize> {
    (1..p.len()).filter(|&i| p[i - 1] > p[i]).collect()
}

pub fn desb(p: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = (1..p.len()).filter(|&i| p[i - 1] > p[i]).map(|i| p[i]).collect();
    v.sort();
    v
}

pub fn lmax(p: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..p.len()).filter(|&i| p[..i].iter().all(|&x| x < p[i])).map(|i| p[i]).collect();
    v.sort();
    v
}

pub fn lmin(p: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..p.len()).filter(|&i| p[..i].iter().all(|&x| x > p[i])).map(|i| p[i]).collect();
    v.sort();
    v
}

pub fn iar(p: &[usize]) -> usize {
    1 + (1..p.len()).take_while(|&i| p[i - 1] < p[i]).count()
}

pub fn idr(p: &[usize]) -> usize {
    1 + (1..p.len()).take_while(|&i| p[i - 1] > p[i]).count()
}

/// Number of blocks in the finest direct-sum decomposition.
pub fn comp(p: &[usize]) -> usize {
    (1..=p.len()).filter(|&i| *p[..i].iter().max().unwrap() == i).count()
}

/// `S_0..=S_k` by the convolution recurrence.
pub fn schroder_seq(k: usize) -> Vec<u64> {
    let mut s = vec![1u64];
    for j in 1..=k {
        let conv: u64 = (0..j).map(|i| s[i] * s[j - 1 - i]).sum();
        s.push(s[j - 1] + conv);
    }
    s
}

/// Multiset of statistic tuples, computed with the oracle.
pub fn oracle_table(trees: &[Tr], stats: &[&str]) -> BTreeMap<Vec<usize>, u64> {
    let mut out = BTreeMap::new();
    for t in trees {
        let key: Vec<usize> = stats
            .iter()
            .map(|&s| if s == "omi" { t.omi() } else { t.stat(s) })
            .collect();
        *out.entry(key).or_default() += 1;
    }
    out
}

/// Whether the tuples are symmetric under the given column permutation.
pub fn oracle_symmetric(trees: &[Tr], stats: &[&str], swap: &[usize]) -> bool {
    let t = oracle_table(trees, stats);
    let mut permuted = BTreeMap::new();
    for (k, c) in &t {
        let key: Vec<usize> = swap.iter().map(|&i| k[i]).collect();
        *permuted.entry(key).or_default() += *c;
    }
    t == permuted
}
