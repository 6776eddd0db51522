//! Named exhaustive checks over bounded sizes.
//!
//! Every check takes `max_n` and covers all sizes `1..=max_n` (series checks:
//! all degrees up to `max_n`). Tree checks at size `n` run over the trees
//! with `n - 1` nodes, the class paired with permutations of length `n`.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use crate::bijections::{big_phi, eta, eta_inv, l_inv, l_op_tracked, phi, phi_inv, psi, psi_inv, theta, theta_inv};
use crate::disktree::{DiSkTree, NodeRef, Sign};
use crate::enumeration::{
    avoiders_naive, catalan_triangle, distribution, gen_disk_trees, matrix_top_iom, schroder, separable,
    DistributionTable, StatSource,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// A proved statement; failure means the implementation is wrong.
    Theorem,
    /// A conjectured statement; reported but never gating.
    Conjecture,
    /// A property not claimed anywhere; informational.
    Exploratory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub scope: Scope,
    pub max_n: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let scope = match self.scope {
            Scope::Theorem => "theorem",
            Scope::Conjecture => "conjecture",
            Scope::Exploratory => "exploratory",
        };
        write!(
            f,
            "{status} {:<26} {scope:<11} n <= {:<2} {:>8.3}s",
            self.id,
            self.max_n,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n     witness: {w}")?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), Value>;

/// A registered check.
pub struct Check {
    pub id: &'static str,
    pub scope: Scope,
    pub summary: &'static str,
    pub default_n: usize,
    pub cap: usize,
    run: fn(usize) -> Outcome,
}

pub const CHECKS: &[Check] = &[
    Check {
        id: "involution-big-phi",
        scope: Scope::Theorem,
        summary: "big phi is an involution on separable permutations fixing lmax, lmin, desb, swapping comp and iar, and keeping 312-avoiders",
        default_n: 8,
        cap: 10,
        run: involution_big_phi,
    },
    Check {
        id: "catalan-triangle-321",
        scope: Scope::Theorem,
        summary: "iar and comp on 321-avoiders follow the Catalan triangle",
        default_n: 8,
        cap: 10,
        run: catalan_triangle_321,
    },
    Check {
        id: "top-iar-2413-4213",
        scope: Scope::Theorem,
        summary: "top on trees matches iar - 1 on (2413, 4213)-avoiders",
        default_n: 8,
        cap: 10,
        run: top_iar_2413_4213,
    },
    Check {
        id: "eta-descents",
        scope: Scope::Theorem,
        summary: "descent positions of p are the inorder positions of - nodes in eta(p)",
        default_n: 8,
        cap: 11,
        run: eta_descents,
    },
    Check {
        id: "eta-iar-iop",
        scope: Scope::Theorem,
        summary: "iar(p) - 1 = iop(eta(p))",
        default_n: 8,
        cap: 11,
        run: eta_iar_iop,
    },
    Check {
        id: "eta-comp-top",
        scope: Scope::Theorem,
        summary: "comp(p) - 1 = top(eta(p))",
        default_n: 8,
        cap: 11,
        run: eta_comp_top,
    },
    Check {
        id: "l-op-preserves-triple",
        scope: Scope::Theorem,
        summary: "the left-edge move keeps desb, lmax, lmin of the decoded permutation and is undone by its inverse",
        default_n: 8,
        cap: 10,
        run: l_op_preserves_triple,
    },
    Check {
        id: "phi-class-map",
        scope: Scope::Theorem,
        summary: "phi maps spine-minus trees with (top, iop) = (k, l) bijectively onto (k - 1, l + 1), keeping the triple",
        default_n: 9,
        cap: 11,
        run: phi_class_map,
    },
    Check {
        id: "traversal-classes",
        scope: Scope::Theorem,
        summary: "rtop = rlop; riop, iop, top, pop, rpop equidistributed; lop differs exactly from n = 5",
        default_n: 9,
        cap: 11,
        run: traversal_classes,
    },
    Check {
        id: "theta-swap",
        scope: Scope::Theorem,
        summary: "theta is a size-preserving bijection swapping pop and rpop",
        default_n: 9,
        cap: 11,
        run: theta_swap,
    },
    Check {
        id: "omi-rpop-top-symmetry",
        scope: Scope::Theorem,
        summary: "(omi, rpop, top) and (omi, top, rpop) are equidistributed",
        default_n: 9,
        cap: 11,
        run: omi_rpop_top_symmetry,
    },
    Check {
        id: "known-symmetries",
        scope: Scope::Theorem,
        summary: "(omi, top, iop), (pop, rpop) and (omi, top, riop) are symmetric",
        default_n: 9,
        cap: 11,
        run: known_symmetries,
    },
    Check {
        id: "conjectured-symmetries",
        scope: Scope::Conjecture,
        summary: "(omi, riop, rpop), (omi, iop, rpop) and (riop, pop) are symmetric",
        default_n: 8,
        cap: 11,
        run: conjectured_symmetries,
    },
    Check {
        id: "psi-class-map",
        scope: Scope::Theorem,
        summary: "psi maps (top, iom) = (k, l) bijectively onto (k - 1, l + 1); Hankel matrices; (comp, idr) symmetric",
        default_n: 9,
        cap: 11,
        run: psi_class_map,
    },
    Check {
        id: "sign-duality",
        scope: Scope::Theorem,
        summary: "conjugation turns each + statistic into its - counterpart; riom, iom, tom, pom, rpom equidistributed",
        default_n: 9,
        cap: 11,
        run: sign_duality,
    },
    Check {
        id: "series-cubic",
        scope: Scope::Theorem,
        summary: "S = t z^2 S^3 + t z^2 S^2 + (1 + t) z S + 1",
        default_n: 8,
        cap: series::MAX_SERIES_ORDER,
        run: series_cubic,
    },
    Check {
        id: "series-top-kernel",
        scope: Scope::Theorem,
        summary: "S(1, y) (1 + (1 - y) z S) = S",
        default_n: 8,
        cap: series::MAX_SERIES_ORDER,
        run: series_top_kernel,
    },
    Check {
        id: "series-rpop-kernel",
        scope: Scope::Theorem,
        summary: "S(x, 1) (1 + (1 - x) z S) = S",
        default_n: 8,
        cap: series::MAX_SERIES_ORDER,
        run: series_rpop_kernel,
    },
    Check {
        id: "series-symmetry",
        scope: Scope::Theorem,
        summary: "S(x, y) = S(y, x)",
        default_n: 8,
        cap: series::MAX_SERIES_ORDER,
        run: series_symmetry,
    },
    Check {
        id: "matrix-golden",
        scope: Scope::Theorem,
        summary: "the (top, iom) matrices for n = 2..6 match the golden tables",
        default_n: 6,
        cap: 6,
        run: matrix_golden,
    },
    Check {
        id: "schroder-count",
        scope: Scope::Theorem,
        summary: "trees paired with length n number S_(n-1)",
        default_n: 10,
        cap: 11,
        run: schroder_count,
    },
    Check {
        id: "round-trips",
        scope: Scope::Theorem,
        summary: "eta, phi, psi, theta and the left-edge move compose with their inverses to the identity",
        default_n: 8,
        cap: 10,
        run: round_trips,
    },
    Check {
        id: "theta-involution",
        scope: Scope::Exploratory,
        summary: "whether theta is its own inverse",
        default_n: 9,
        cap: 11,
        run: theta_involution,
    },
];

pub fn find_check(id: &str) -> Result<&'static Check> {
    CHECKS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Runs one check over sizes `1..=max_n` (its default when `None`).
pub fn check(id: &str, max_n: Option<usize>) -> Result<CheckResult> {
    let c = find_check(id)?;
    let max_n = max_n.unwrap_or(c.default_n);
    if max_n > c.cap {
        return Err(Error::OutOfRange {
            what: "max_n",
            detail: format!("check {id} is capped at {}, got {max_n}", c.cap),
        });
    }
    let start = Instant::now();
    let outcome = (c.run)(max_n);
    Ok(CheckResult {
        id: c.id.to_string(),
        scope: c.scope,
        max_n,
        status: if outcome.is_ok() { Status::Pass } else { Status::Fail },
        witness: outcome.err(),
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
    /// Checks not run because an earlier theorem check failed.
    pub skipped: Vec<String>,
}

impl SuiteReport {
    /// True iff every theorem-scoped check ran and passed.
    pub fn theorems_pass(&self) -> bool {
        self.skipped.is_empty()
            && self
                .results
                .iter()
                .filter(|r| r.scope == Scope::Theorem)
                .all(CheckResult::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.theorems_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for scope in [Scope::Theorem, Scope::Conjecture, Scope::Exploratory] {
            let rows: Vec<&CheckResult> = self.results.iter().filter(|r| r.scope == scope).collect();
            if rows.is_empty() {
                continue;
            }
            let title = match scope {
                Scope::Theorem => "theorem checks",
                Scope::Conjecture => "conjecture checks (non-gating)",
                Scope::Exploratory => "exploratory checks (non-gating)",
            };
            out.push_str(&format!("{title}:\n"));
            for r in rows {
                out.push_str(&format!("  {r}\n"));
            }
        }
        for s in &self.skipped {
            out.push_str(&format!("  SKIP {s}\n"));
        }
        let verdict = if self.theorems_pass() { "all theorem checks passed" } else { "theorem check failed" };
        out.push_str(&format!("{verdict}\n"));
        out
    }
}

/// Runs the given checks in order, each at `max_n` clamped to its cap (or
/// its default). With `jobs > 1` they run concurrently; the report is the
/// same either way and stops at the first failing theorem check.
pub fn run_suite(ids: &[&str], max_n: Option<usize>, jobs: usize) -> Result<SuiteReport> {
    let checks: Vec<&Check> = ids.iter().map(|id| find_check(id)).collect::<Result<_>>()?;
    let run_one = |c: &Check| check(c.id, Some(max_n.map_or(c.default_n, |n| n.min(c.cap))));
    let results: Vec<CheckResult> = if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::OutOfRange { what: "jobs", detail: e.to_string() })?;
        pool.install(|| checks.par_iter().map(|c| run_one(c)).collect::<Result<_>>())?
    } else {
        let mut done = Vec::new();
        for c in &checks {
            let r = run_one(c)?;
            let halt = r.scope == Scope::Theorem && !r.passed();
            done.push(r);
            if halt {
                break;
            }
        }
        done
    };
    let cut = results
        .iter()
        .position(|r| r.scope == Scope::Theorem && !r.passed())
        .map_or(results.len(), |i| i + 1);
    let skipped = checks[cut..].iter().map(|c| c.id.to_string()).collect();
    let mut results = results;
    results.truncate(cut);
    Ok(SuiteReport { results, skipped })
}

/// Every registered check id, in order.
pub fn all_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

fn tree_json(t: &DiSkTree) -> Value {
    Value::String(t.to_string())
}

fn perm_json(p: &Permutation) -> Value {
    Value::String(p.to_string())
}

fn ensure(cond: bool, witness: impl FnOnce() -> Value) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn trees(n: usize) -> impl Iterator<Item = DiSkTree> {
    gen_disk_trees(n - 1)
}

fn table<T: StatSource>(objects: impl IntoIterator<Item = T>, stats: &[&str]) -> DistributionTable {
    distribution(objects, stats).expect("registered statistic names")
}

fn same_table(n: usize, what: &str, a: &DistributionTable, b: &DistributionTable) -> Outcome {
    match a.first_difference(b) {
        None => Ok(()),
        Some((key, ca, cb)) => Err(json!({
            "n": n,
            "comparison": what,
            "tuple": key,
            "counts": [ca, cb],
        })),
    }
}

fn symmetric(n: usize, stats: &[&str], swap: &[usize]) -> Outcome {
    let t = table(trees(n), stats);
    same_table(n, &format!("{stats:?} vs permuted {swap:?}"), &t, &t.reorder(swap))
}

fn triple(p: &Permutation) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    (p.desb(), p.lmax(), p.lmin())
}

fn involution_big_phi(max_n: usize) -> Outcome {
    let p312: Permutation = "3 1 2".parse().expect("pattern");
    for n in 1..=max_n {
        for p in separable(n) {
            let bad = |what: &str, image: Option<&Permutation>| {
                json!({"n": n, "perm": perm_json(&p), "image": image.map(perm_json), "property": what})
            };
            let q = big_phi(&p).map_err(|e| bad(&e.to_string(), None))?;
            ensure(q.is_separable(), || bad("image is separable", Some(&q)))?;
            let back = big_phi(&q).map_err(|e| bad(&e.to_string(), Some(&q)))?;
            ensure(back == p, || bad("involution", Some(&q)))?;
            ensure(triple(&q) == triple(&p), || bad("lmax, lmin, desb fixed", Some(&q)))?;
            ensure((q.comp(), q.iar()) == (p.iar(), p.comp()), || bad("comp and iar swapped", Some(&q)))?;
            if !p.contains_pattern(&p312) {
                ensure(!q.contains_pattern(&p312), || bad("312-avoidance kept", Some(&q)))?;
            }
        }
    }
    Ok(())
}

fn catalan_triangle_321(max_n: usize) -> Outcome {
    let pattern = ["3 2 1".parse::<Permutation>().expect("pattern")];
    for n in 1..=max_n {
        let avoiders: Vec<Permutation> = avoiders_naive(n, &pattern, usize::MAX)
            .expect("n >= 1")
            .collect();
        for k in 1..=n {
            let expected = catalan_triangle(n as u64, (n - k) as u64).expect("k >= 1");
            let by_iar = avoiders.iter().filter(|p| p.iar() == k).count();
            let by_comp = avoiders.iter().filter(|p| p.comp() == k).count();
            ensure(
                expected == by_iar.into() && expected == by_comp.into(),
                || json!({"n": n, "k": k, "expected": expected.to_string(), "iar": by_iar, "comp": by_comp}),
            )?;
        }
    }
    Ok(())
}

fn top_iar_2413_4213(max_n: usize) -> Outcome {
    let patterns: Vec<Permutation> = ["2 4 1 3", "4 2 1 3"].iter().map(|s| s.parse().expect("pattern")).collect();
    for n in 1..=max_n {
        let mut by_top = vec![0u64; n + 1];
        for t in trees(n) {
            by_top[t.top() + 1] += 1;
        }
        let mut by_iar = vec![0u64; n + 1];
        for p in avoiders_naive(n, &patterns, usize::MAX).expect("n >= 1") {
            by_iar[p.iar()] += 1;
        }
        ensure(by_top == by_iar, || json!({"n": n, "top_plus_one": by_top, "iar": by_iar}))?;
    }
    Ok(())
}

fn over_separable(max_n: usize, test: impl Fn(&Permutation, &DiSkTree) -> bool, what: &str) -> Outcome {
    for n in 1..=max_n {
        for p in separable(n) {
            let t = eta(&p).map_err(|e| json!({"perm": perm_json(&p), "error": e.to_string()}))?;
            ensure(test(&p, &t), || json!({"perm": perm_json(&p), "tree": tree_json(&t), "property": what}))?;
        }
    }
    Ok(())
}

fn eta_descents(max_n: usize) -> Outcome {
    over_separable(
        max_n,
        |p, t| {
            let minus: Vec<usize> = t
                .inorder_signs()
                .iter()
                .enumerate()
                .filter(|(_, &s)| s == Sign::Minus)
                .map(|(i, _)| i + 1)
                .collect();
            minus == p.des()
        },
        "des = inorder - positions",
    )
}

fn eta_iar_iop(max_n: usize) -> Outcome {
    over_separable(max_n, |p, t| p.iar() - 1 == t.iop(), "iar - 1 = iop")
}

fn eta_comp_top(max_n: usize) -> Outcome {
    over_separable(max_n, |p, t| p.comp() - 1 == t.top(), "comp - 1 = top")
}

fn l_op_preserves_triple(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        for t in trees(n) {
            let before = triple(&eta_inv(&t));
            for v in 1..=t.size() {
                let Ok((moved, pos)) = l_op_tracked(NodeRef(v), &t) else {
                    continue;
                };
                let bad = |what: &str| json!({"tree": tree_json(&t), "node": v, "moved": tree_json(&moved), "property": what});
                ensure(triple(&eta_inv(&moved)) == before, || bad("desb, lmax, lmin kept"))?;
                ensure(l_inv(pos, &moved).ok() == Some(t.clone()), || bad("inverse restores"))?;
            }
        }
    }
    Ok(())
}

fn phi_class_map(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        let mut images = HashSet::new();
        let mut domain = 0usize;
        let mut codomain = 0usize;
        for t in trees(n) {
            if !t.spine_has_minus() {
                continue;
            }
            if t.iop() >= 1 {
                codomain += 1;
            }
            if t.top() == 0 {
                continue;
            }
            domain += 1;
            let bad = |what: &str, image: Option<&DiSkTree>| {
                json!({"tree": tree_json(&t), "image": image.map(tree_json), "property": what})
            };
            let image = phi(&t).map_err(|e| bad(&e.to_string(), None))?;
            ensure(image.validate() && image.spine_has_minus(), || bad("image is a spine-minus tree", Some(&image)))?;
            ensure((image.top(), image.iop()) == (t.top() - 1, t.iop() + 1), || bad("class shift", Some(&image)))?;
            ensure(triple(&eta_inv(&image)) == triple(&eta_inv(&t)), || bad("desb, lmax, lmin kept", Some(&image)))?;
            ensure(phi_inv(&image).ok().as_ref() == Some(&t), || bad("inverse restores", Some(&image)))?;
            ensure(images.insert(image.clone()), || bad("injective", Some(&image)))?;
        }
        ensure(domain == codomain, || json!({"n": n, "domain": domain, "codomain": codomain}))?;
    }
    Ok(())
}

fn traversal_classes(max_n: usize) -> Outcome {
    let five = ["riop", "iop", "top", "pop", "rpop"];
    for n in 1..=max_n {
        let all: Vec<DiSkTree> = trees(n).collect();
        if let Some(t) = all.iter().find(|t| t.rtop() != t.rlop()) {
            return Err(json!({"tree": tree_json(t), "property": "rtop = rlop"}));
        }
        let base = table(all.iter().cloned(), &[five[0]]);
        for s in &five[1..] {
            same_table(n, &format!("{} vs {s}", five[0]), &base, &table(all.iter().cloned(), &[s]))?;
        }
        let lop = table(all.iter().cloned(), &["lop"]);
        let lop_same = lop.same_distribution(&base);
        ensure(lop_same == (n <= 4), || {
            json!({"n": n, "property": "lop agrees with the five exactly when n <= 4", "lop_agrees": lop_same})
        })?;
    }
    Ok(())
}

fn theta_swap(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        let mut images = HashSet::new();
        for t in trees(n) {
            let image = theta(&t);
            let bad = |what: &str| json!({"tree": tree_json(&t), "image": tree_json(&image), "property": what});
            ensure(image.validate() && image.size() == t.size(), || bad("valid, same size"))?;
            ensure((image.pop(), image.rpop()) == (t.rpop(), t.pop()), || bad("pop and rpop swapped"))?;
            ensure(theta_inv(&image) == t, || bad("inverse restores"))?;
            ensure(images.insert(image.clone()), || bad("injective"))?;
        }
    }
    Ok(())
}

fn theta_involution(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        if let Some(t) = trees(n).find(|t| theta(&theta(t)) != *t) {
            return Err(json!({"tree": tree_json(&t), "theta_theta": tree_json(&theta(&theta(&t)))}));
        }
    }
    Ok(())
}

fn omi_rpop_top_symmetry(max_n: usize) -> Outcome {
    (1..=max_n).try_for_each(|n| symmetric(n, &["omi", "rpop", "top"], &[0, 2, 1]))
}

fn known_symmetries(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        symmetric(n, &["omi", "top", "iop"], &[0, 2, 1])?;
        symmetric(n, &["pop", "rpop"], &[1, 0])?;
        symmetric(n, &["omi", "top", "riop"], &[0, 2, 1])?;
    }
    Ok(())
}

fn conjectured_symmetries(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        symmetric(n, &["omi", "riop", "rpop"], &[0, 2, 1])?;
        symmetric(n, &["omi", "iop", "rpop"], &[0, 2, 1])?;
        symmetric(n, &["riop", "pop"], &[1, 0])?;
    }
    Ok(())
}

fn psi_class_map(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        let mut images = HashSet::new();
        let mut domain = 0usize;
        let mut codomain = 0usize;
        for t in trees(n) {
            if t.iom() >= 1 {
                codomain += 1;
                let back = psi_inv(&t).map_err(|e| json!({"tree": tree_json(&t), "error": e.to_string()}))?;
                ensure(psi(&back).ok().as_ref() == Some(&t), || {
                    json!({"tree": tree_json(&t), "preimage": tree_json(&back), "property": "psi after psi-inv"})
                })?;
            }
            if t.top() == 0 {
                continue;
            }
            domain += 1;
            let bad = |what: &str, image: Option<&DiSkTree>| {
                json!({"tree": tree_json(&t), "image": image.map(tree_json), "property": what})
            };
            let image = psi(&t).map_err(|e| bad(&e.to_string(), None))?;
            ensure(image.validate() && image.size() == t.size(), || bad("valid, same size", Some(&image)))?;
            ensure((image.top(), image.iom()) == (t.top() - 1, t.iom() + 1), || bad("class shift", Some(&image)))?;
            ensure(psi_inv(&image).ok().as_ref() == Some(&t), || bad("inverse restores", Some(&image)))?;
            ensure(images.insert(image.clone()), || bad("injective", Some(&image)))?;
        }
        ensure(domain == codomain, || json!({"n": n, "domain": domain, "codomain": codomain}))?;

        let m = matrix_top_iom(n);
        ensure(m.is_hankel() && m.is_upper_anti_triangular(), || json!({"n": n, "matrix": m.entries}))?;
        let t = table(separable(n), &["comp", "idr"]);
        same_table(n, "(comp, idr) vs (idr, comp)", &t, &t.reorder(&[1, 0]))?;
    }
    Ok(())
}

const SIGN_PAIRS: [(&str, &str); 8] = [
    ("iop", "iom"),
    ("riop", "riom"),
    ("top", "tom"),
    ("rtop", "rtom"),
    ("pop", "pom"),
    ("rpop", "rpom"),
    ("lop", "lom"),
    ("rlop", "rlom"),
];

fn sign_duality(max_n: usize) -> Outcome {
    let five = ["riom", "iom", "tom", "pom", "rpom"];
    for n in 1..=max_n {
        let all: Vec<DiSkTree> = trees(n).collect();
        for t in &all {
            let c = t.conjugate();
            for (plus, minus) in SIGN_PAIRS {
                ensure(t.stat(plus) == c.stat(minus), || {
                    json!({"tree": tree_json(t), "property": format!("{plus} = {minus} of conjugate")})
                })?;
            }
            ensure(c.omi() == t.size() - t.omi() && c.conjugate() == *t, || {
                json!({"tree": tree_json(t), "property": "conjugation flips omi and is an involution"})
            })?;
        }
        let base = table(all.iter().cloned(), &[five[0]]);
        for s in &five[1..] {
            same_table(n, &format!("{} vs {s}", five[0]), &base, &table(all.iter().cloned(), &[s]))?;
        }
    }
    Ok(())
}

fn series_check(order: usize, holds: fn(&series::TruncatedSeries) -> bool, what: &str) -> Outcome {
    let s = series::build_series(order).map_err(|e| json!({"error": e.to_string()}))?;
    ensure(holds(&s), || json!({"identity": what, "series": s.to_json()}))
}

fn series_cubic(order: usize) -> Outcome {
    series_check(order, series::cubic_holds, "cubic")
}

fn series_top_kernel(order: usize) -> Outcome {
    series_check(order, |s| series::kernel_holds(s, series::Marker::Y), "top kernel")
}

fn series_rpop_kernel(order: usize) -> Outcome {
    series_check(order, |s| series::kernel_holds(s, series::Marker::X), "rpop kernel")
}

fn series_symmetry(order: usize) -> Outcome {
    series_check(order, series::symmetry_holds, "x <-> y symmetry")
}

/// Golden matrices for n = 2..6, rows indexed by `top`.
pub fn golden_matrix(n: usize) -> Option<Vec<Vec<u64>>> {
    let hankel = |seq: &[u64]| -> Vec<Vec<u64>> {
        let n = seq.len();
        (0..n)
            .map(|i| (0..n).map(|j| seq.get(i + j).copied().unwrap_or(0)).collect())
            .collect()
    };
    match n {
        2 => Some(hankel(&[0, 1])),
        3 => Some(hankel(&[1, 1, 1])),
        4 => Some(hankel(&[4, 4, 2, 1])),
        5 => Some(hankel(&[17, 16, 8, 3, 1])),
        6 => Some(hankel(&[76, 69, 34, 13, 4, 1])),
        _ => None,
    }
}

fn matrix_golden(max_n: usize) -> Outcome {
    for n in 2..=max_n {
        let expected = golden_matrix(n).expect("n <= 6");
        let got = matrix_top_iom(n).entries;
        ensure(got == expected, || json!({"n": n, "expected": expected, "got": got}))?;
    }
    Ok(())
}

fn schroder_count(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        let count = trees(n).count();
        let expected = schroder((n - 1) as u64);
        ensure(expected == count.into(), || json!({"n": n, "trees": count, "schroder": expected.to_string()}))?;
    }
    Ok(())
}

fn round_trips(max_n: usize) -> Outcome {
    for n in 1..=max_n {
        for p in separable(n) {
            let back = eta(&p).map(|t| eta_inv(&t));
            ensure(back.as_ref().ok() == Some(&p), || json!({"perm": perm_json(&p), "map": "eta"}))?;
            let text: Permutation = p.to_string().parse().map_err(|_| json!({"perm": perm_json(&p), "map": "parse"}))?;
            ensure(text == p, || json!({"perm": perm_json(&p), "map": "text"}))?;
        }
        for t in trees(n) {
            let bad = |map: &str| json!({"tree": tree_json(&t), "map": map});
            ensure(eta(&eta_inv(&t)).ok().as_ref() == Some(&t), || bad("eta after eta-inv"))?;
            ensure(t.to_string().parse::<DiSkTree>().ok().as_ref() == Some(&t), || bad("text"))?;
            let js = serde_json::to_value(&t).map_err(|_| bad("json"))?;
            ensure(serde_json::from_value::<DiSkTree>(js).ok().as_ref() == Some(&t), || bad("json"))?;
            if let Ok(image) = phi(&t) {
                ensure(phi_inv(&image).ok().as_ref() == Some(&t), || bad("phi-inv after phi"))?;
            }
            if let Ok(image) = psi(&t) {
                ensure(psi_inv(&image).ok().as_ref() == Some(&t), || bad("psi-inv after psi"))?;
            }
            ensure(theta_inv(&theta(&t)) == t && theta(&theta_inv(&t)) == t, || bad("theta"))?;
        }
    }
    Ok(())
}
