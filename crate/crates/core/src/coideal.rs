//! Parameter triples `(x, u, J)` and pairs `(v, w)`.
//!
//! A triple is valid when `J ⊆ Π ∩ xΠ` and `u⁻¹ ≤_R x`. It maps to the pair
//! `(u w_J, u w_J x)`; [`pair_to_triple`] inverts this map and fails exactly on
//! pairs outside its image. Membership of a pair in `A(W)` is decided by that
//! inverse map.

use std::fmt;

use serde::Serialize;

use crate::bits::SimpleSet;
use crate::error::{Error, Result};
use crate::weylgroup::{Elem, GroupTable};
use crate::word::{format_simple_set, format_word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub x: Elem,
    pub u: Elem,
    pub j: SimpleSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub v: Elem,
    pub w: Elem,
}

/// Newline-delimited JSON record for one triple and its pair.
/// Words use 1-based letters; `J` lists 1-based simple indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    pub x: Vec<usize>,
    pub u: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

fn check_j(t: &GroupTable, j: SimpleSet) -> Result<()> {
    if j.is_subset(SimpleSet::full(t.rank())) {
        Ok(())
    } else {
        Err(Error::InvalidTriple(format!("J = {j:?} is not a subset of the simple roots")))
    }
}

/// `J ⊆ Π ∩ xΠ` and `u⁻¹ ≤_R x`.
pub fn is_triple_valid(t: &GroupTable, tr: Triple) -> Result<bool> {
    check_j(t, tr.j)?;
    Ok(tr.j.is_subset(t.pi_cap_xpi(tr.x)) && t.leq_weak(t.inverse(tr.u), tr.x))
}

/// `(x, u, J) ↦ (u w_J, u w_J x)`, checking `ℓ(v) = ℓ(u) + ℓ(w_J)` and
/// `ℓ(w) = ℓ(x) + ℓ(w_J) - ℓ(u)` on the way out.
pub fn triple_to_pair(t: &GroupTable, tr: Triple) -> Result<Pair> {
    if !is_triple_valid(t, tr)? {
        return Err(Error::InvalidTriple(describe_triple(t, tr)));
    }
    let wj = t.longest_parabolic(tr.j);
    let v = t.multiply(tr.u, wj);
    let w = t.multiply(v, tr.x);
    let (lu, lj, lx) = (t.length(tr.u), t.length(wj), t.length(tr.x));
    if t.length(v) != lu + lj {
        return Err(Error::LengthIdentity(format!(
            "ℓ(v) = {} but ℓ(u) + ℓ(w_J) = {} for {}",
            t.length(v),
            lu + lj,
            describe_triple(t, tr)
        )));
    }
    if t.length(w) + lu != lx + lj {
        return Err(Error::LengthIdentity(format!(
            "ℓ(w) = {} but ℓ(x) + ℓ(w_J) - ℓ(u) = {} for {}",
            t.length(w),
            (lx + lj) as isize - lu as isize,
            describe_triple(t, tr)
        )));
    }
    Ok(Pair { v, w })
}

/// Recovers the unique triple mapping to `(v, w)`, or `None` when the pair is
/// not in the image.
///
/// `x = v⁻¹w`; with `M = Π ∩ xΠ`, split `v = u·m` where `u` is minimal in
/// `vW_M`; then `J` is the left descent set of `m`, and the pair is accepted
/// iff `m = w_J` and `u⁻¹ ≤_R x`.
pub fn pair_to_triple(t: &GroupTable, p: Pair) -> Option<Triple> {
    let x = t.multiply(t.inverse(p.v), p.w);
    let m_set = t.pi_cap_xpi(x);
    let (u, m) = t.min_coset_rep(p.v, m_set);
    let j = t.left_descents(m);
    if t.longest_parabolic(j) != m || !t.leq_weak(t.inverse(u), x) {
        return None;
    }
    Some(Triple { x, u, j })
}

/// All valid triples with first component `x`, ordered by `u` index then `J` mask.
pub fn triples_for_x(t: &GroupTable, x: Elem) -> impl Iterator<Item = Triple> + '_ {
    let m = t.pi_cap_xpi(x);
    let candidates = t.up_to_length(t.length(x));
    candidates
        .map(|k| Elem(k as u32))
        .filter(move |&u| t.leq_weak(t.inverse(u), x))
        .flat_map(move |u| m.subsets().map(move |j| Triple { x, u, j }))
}

/// Every valid triple exactly once, in `(x, u, J)` lexicographic order.
pub fn enumerate_triples(t: &GroupTable) -> impl Iterator<Item = Triple> + '_ {
    t.elements().flat_map(move |x| triples_for_x(t, x))
}

pub fn triple_record(t: &GroupTable, tr: Triple) -> Result<TripleRecord> {
    let p = triple_to_pair(t, tr)?;
    let word = |e: Elem| t.word(e).iter().map(|&i| i as usize + 1).collect::<Vec<_>>();
    Ok(TripleRecord {
        x: word(tr.x),
        u: word(tr.u),
        j: tr.j.iter().map(|i| i + 1).collect(),
        v: word(p.v),
        w: word(p.w),
    })
}

pub fn describe_triple(t: &GroupTable, tr: Triple) -> String {
    format!(
        "x={}, u={}, J={}",
        format_word(t.word(tr.x), t.rank()),
        format_word(t.word(tr.u), t.rank()),
        format_simple_set(tr.j)
    )
}

pub fn describe_pair(t: &GroupTable, p: Pair) -> String {
    format!("v={}, w={}", format_word(t.word(p.v), t.rank()), format_word(t.word(p.w), t.rank()))
}

/// `success[v * |W| + w]` is true iff `pair_to_triple(v, w)` succeeds.
pub fn membership_table(t: &GroupTable) -> Vec<bool> {
    let n = t.order();
    let mut table = vec![false; n * n];
    for v in t.elements() {
        for w in t.elements() {
            table[v.index() * n + w.index()] = pair_to_triple(t, Pair { v, w }).is_some();
        }
    }
    table
}

/// One checked property: how many instances were examined, and the
/// counterexamples found (the first few verbatim, plus a total).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    pub examples: Vec<String>,
}

const MAX_EXAMPLES: usize = 10;

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult { name: name.into(), ..Default::default() }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} instances, {} counterexamples",
            self.name, self.instances, self.failures
        )?;
        for ex in &self.examples {
            write!(f, "\n    counterexample: {ex}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub symmetry: CheckResult,
    pub transfer: CheckResult,
    pub descent_restriction: CheckResult,
    pub parabolic_longest: CheckResult,
}

impl LemmaReport {
    pub fn checks(&self) -> [&CheckResult; 4] {
        [&self.symmetry, &self.transfer, &self.descent_restriction, &self.parabolic_longest]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }
}

/// Exhaustive check, over all pairs, of:
/// (a) `(v,w) ∈ A ⟺ (w,v) ∈ A`;
/// (b) `(s_α v, w) ∈ A ⟺ (v, s_α w) ∈ A` when both `s_α` lengthen;
/// (c) `(s_α v, s_α w) ∈ A ⟹ α ∈ vΠ ∩ wΠ` under the same hypothesis;
/// (d) if every `α ∈ J_v` has some `β ∈ Π` with `v s_β = s_α v`, then `v = w_{J_v}`.
///
/// Quadratic in `|W|`; meant for rank at most 3.
pub fn check_lemma_suite(t: &GroupTable) -> LemmaReport {
    let n = t.order();
    let member = membership_table(t);
    let a = |v: Elem, w: Elem| member[v.index() * n + w.index()];
    let rank = t.rank();

    let mut symmetry = CheckResult::new("symmetry (v,w) <-> (w,v)");
    let mut transfer = CheckResult::new("transfer (s_a v, w) <-> (v, s_a w)");
    let mut descent = CheckResult::new("descent restriction a in vPi cap wPi");
    let mut vvj = CheckResult::new("v = w_J for J = J_v");

    for v in t.elements() {
        for w in t.elements() {
            let p = Pair { v, w };
            symmetry.record(a(v, w) == a(w, v), || describe_pair(t, p));
            for al in 0..rank {
                let sv = t.left_mul(al, v);
                let sw = t.left_mul(al, w);
                if t.length(sv) != t.length(v) + 1 || t.length(sw) != t.length(w) + 1 {
                    continue;
                }
                transfer.record(a(sv, w) == a(v, sw), || format!("{}, alpha={}", describe_pair(t, p), al + 1));
                if a(sv, sw) {
                    let ok = t.pi_cap_xpi(v).contains(al) && t.pi_cap_xpi(w).contains(al);
                    descent.record(ok, || format!("{}, alpha={}", describe_pair(t, p), al + 1));
                }
            }
        }
    }

    for v in t.elements() {
        let j = t.left_descents(v);
        let hypothesis = j.iter().all(|al| (0..rank).any(|b| t.right_mul(v, b) == t.left_mul(al, v)));
        if hypothesis {
            vvj.record(t.longest_parabolic(j) == v, || {
                format!("v={}, J={}", format_word(t.word(v), rank), format_simple_set(j))
            });
        }
    }

    LemmaReport { symmetry, transfer, descent_restriction: descent, parabolic_longest: vvj }
}
