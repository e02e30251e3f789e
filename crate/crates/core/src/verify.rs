//! Invariant suites over a whole group table. Each suite returns
//! [`CheckResult`]s; nothing here panics on a failed property.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bits::SimpleSet;
use crate::census::{self, Backend, DownsetVector};
use crate::coideal::{self, describe_pair, describe_triple, CheckResult, Pair, Triple};
use crate::error::Error;
use crate::weylgroup::{Elem, GroupTable};
use crate::word::format_word;

/// Definitional, prefix-BFS and inversion-containment weak order agree on every ordered pair.
pub fn weak_order_backends(t: &GroupTable) -> CheckResult {
    let mut check = CheckResult::new("weak order: definitional = prefix BFS = inversion containment");
    let mut in_prefix = vec![false; t.order()];
    for x in t.elements() {
        let prefixes = t.prefix_downset(x);
        for &p in &prefixes {
            in_prefix[p.index()] = true;
        }
        for u in t.elements() {
            let by_def = t.leq_weak_definitional(u, x);
            let by_bfs = in_prefix[u.index()];
            let by_bits = t.leq_weak(u, x);
            check.record(by_def == by_bfs && by_bfs == by_bits, || {
                format!(
                    "u={}, x={}: definitional={by_def} bfs={by_bfs} containment={by_bits}",
                    format_word(t.word(u), t.rank()),
                    format_word(t.word(x), t.rank())
                )
            });
        }
        for &p in &prefixes {
            in_prefix[p.index()] = false;
        }
    }
    check
}

/// Per-element identities: inversion-set routes, `Π∩xΠ` routes, descent
/// characterizations, and `w_J` properties.
pub fn element_identities(t: &GroupTable) -> CheckResult {
    let mut check = CheckResult::new("element identities (Phi+(w) routes, Pi cap xPi routes, descents)");
    let rank = t.rank();
    for e in t.elements() {
        let name = || format_word(t.word(e), rank);
        let inv = t.inv(e);
        check.record(inv.len() == t.length(e) && t.word(e).len() == t.length(e), || format!("{}: length", name()));
        check.record(t.phi_plus_by_definition(e) == inv, || format!("{}: Phi+ by definition", name()));
        check.record(t.phi_plus_from_word(t.word(e)) == inv, || format!("{}: Phi+ from word", name()));
        check.record(t.pi_cap_xpi(e) == t.pi_cap_xpi_by_conjugation(e), || format!("{}: Pi cap xPi", name()));
        check.record(t.right_descents(e) == t.left_descents(t.inverse(e)), || format!("{}: descents", name()));
        for a in 0..rank {
            let sw = t.left_mul(a, e);
            check.record((t.length(sw) + 1 == t.length(e)) == inv.contains(a), || {
                format!("{}: left descent {}", name(), a + 1)
            });
            if t.length(sw) == t.length(e) + 1 {
                let commutes = (0..rank).any(|b| t.right_mul(e, b) == sw);
                check.record(t.pi_cap_xpi(e).contains(a) == commutes, || {
                    format!("{}: commutation for {}", name(), a + 1)
                });
            }
        }
    }
    for j in SimpleSet::full(rank).subsets() {
        let wj = t.longest_parabolic(j);
        check.record(t.inverse(wj) == wj && t.left_descents(wj) == j, || format!("w_J for J={j:?}"));
    }
    check
}

/// Scan backend against the other downset backends.
pub fn downset_backends(t: &GroupTable, include_quadratic: bool) -> CheckResult {
    let mut check = CheckResult::new(if include_quadratic {
        "downset sizes: scan = covers = prefix BFS = definitional"
    } else {
        "downset sizes: scan = covers"
    });
    let scan = census::downset_sizes_with(t, Backend::Scan, None);
    let mut others: Vec<(&str, DownsetVector)> = vec![("covers", census::downset_sizes_with(t, Backend::Covers, None))];
    if include_quadratic {
        others.push(("prefix-bfs", census::downset_sizes_with(t, Backend::PrefixBfs, None)));
        others.push(("definitional", census::downset_sizes_with(t, Backend::Definitional, None)));
        let inverse = census::inverse_downset_sizes(t);
        others.push(("inverse", inverse));
    }
    for (name, d) in &others {
        for x in t.elements() {
            check.record(d.get(x) == scan.get(x), || {
                format!("{name}: d({}) = {} vs scan {}", format_word(t.word(x), t.rank()), d.get(x), scan.get(x))
            });
        }
    }
    check
}

#[derive(Debug, Clone)]
pub struct RoundTripReport {
    pub triple_first: CheckResult,
    pub pair_first: CheckResult,
    pub length_identities: CheckResult,
    /// Number of pairs accepted by `pair_to_triple` (exhaustive runs only).
    pub accepted_pairs: Option<u64>,
    pub triples: u64,
}

impl RoundTripReport {
    pub fn checks(&self) -> [&CheckResult; 3] {
        [&self.triple_first, &self.pair_first, &self.length_identities]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }
}

fn check_triple(t: &GroupTable, tr: Triple, a: &mut CheckResult, lengths: &mut CheckResult) {
    match coideal::triple_to_pair(t, tr) {
        Ok(p) => {
            lengths.record(true, String::new);
            let back = coideal::pair_to_triple(t, p);
            a.record(back == Some(tr), || format!("{} -> {} -> {:?}", describe_triple(t, tr), describe_pair(t, p), back));
        }
        Err(Error::LengthIdentity(msg)) => {
            lengths.record(false, || msg);
            a.record(false, || describe_triple(t, tr));
        }
        Err(e) => a.record(false, || format!("{}: {e}", describe_triple(t, tr))),
    }
}

fn check_pair(t: &GroupTable, p: Pair, b: &mut CheckResult, lengths: &mut CheckResult) -> bool {
    let Some(tr) = coideal::pair_to_triple(t, p) else { return false };
    let valid = coideal::is_triple_valid(t, tr).unwrap_or(false);
    match coideal::triple_to_pair(t, tr) {
        Ok(back) => {
            lengths.record(true, String::new);
            b.record(valid && back == p, || format!("{} -> {}", describe_pair(t, p), describe_triple(t, tr)));
        }
        Err(Error::LengthIdentity(msg)) => {
            lengths.record(false, || msg);
            b.record(false, || describe_pair(t, p));
        }
        Err(e) => b.record(false, || format!("{}: {e}", describe_pair(t, p))),
    }
    true
}

fn new_report() -> RoundTripReport {
    RoundTripReport {
        triple_first: CheckResult::new("pair_to_triple(triple_to_pair(tr)) = tr"),
        pair_first: CheckResult::new("triple_to_pair(pair_to_triple(p)) = p"),
        length_identities: CheckResult::new("length identities l(v)=l(u)+l(w_J), l(w)=l(x)+l(w_J)-l(u)"),
        accepted_pairs: None,
        triples: 0,
    }
}

/// Both round trips over all of `B(W)` and all of `W × W`.
pub fn round_trips_exhaustive(t: &GroupTable) -> RoundTripReport {
    let mut r = new_report();
    for tr in coideal::enumerate_triples(t) {
        r.triples += 1;
        check_triple(t, tr, &mut r.triple_first, &mut r.length_identities);
    }
    let mut accepted = 0;
    for v in t.elements() {
        for w in t.elements() {
            if check_pair(t, Pair { v, w }, &mut r.pair_first, &mut r.length_identities) {
                accepted += 1;
            }
        }
    }
    r.accepted_pairs = Some(accepted);
    r
}

/// A uniformly random `u` with `u⁻¹ ≤_R x` and a uniformly random `J ⊆ Π∩xΠ`.
pub fn random_triple(t: &GroupTable, rng: &mut impl Rng) -> Triple {
    let x = Elem(rng.gen_range(0..t.order() as u32));
    let below: Vec<usize> = t.up_to_length(t.length(x)).filter(|&k| t.leq_weak(Elem(k as u32), x)).collect();
    let u = t.inverse(Elem(below[rng.gen_range(0..below.len())] as u32));
    let m = t.pi_cap_xpi(x);
    let j = SimpleSet(rng.gen::<u32>() & m.mask());
    Triple { x, u, j }
}

/// Round trips on `samples` random triples and `samples` random pairs.
pub fn round_trips_sampled(t: &GroupTable, samples: usize, seed: u64) -> RoundTripReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut r = new_report();
    for _ in 0..samples {
        let tr = random_triple(t, &mut rng);
        r.triples += 1;
        check_triple(t, tr, &mut r.triple_first, &mut r.length_identities);
    }
    // Random pairs mostly miss A(W); also push each sampled triple's image back.
    let n = t.order() as u32;
    for _ in 0..samples {
        let p = Pair { v: Elem(rng.gen_range(0..n)), w: Elem(rng.gen_range(0..n)) };
        check_pair(t, p, &mut r.pair_first, &mut r.length_identities);
        let tr = random_triple(t, &mut rng);
        if let Ok(p) = coideal::triple_to_pair(t, tr) {
            check_pair(t, p, &mut r.pair_first, &mut r.length_identities);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_b3() {
        let t = GroupTable::builtin("B3").unwrap();
        assert!(weak_order_backends(&t).passed());
        assert!(element_identities(&t).passed());
        assert!(downset_backends(&t, true).passed());
        let r = round_trips_exhaustive(&t);
        assert!(r.passed());
        assert_eq!(r.triples, 664);
        assert_eq!(r.accepted_pairs, Some(664));
    }

    #[test]
    fn sampled_round_trips_d4() {
        let t = GroupTable::builtin("D4").unwrap();
        let r = round_trips_sampled(&t, 2000, 7);
        assert!(r.passed(), "{:?}", r);
        assert_eq!(r.triples, 2000);
        assert!(r.pair_first.instances >= 2000);
    }

    #[test]
    fn random_triples_are_valid() {
        let t = GroupTable::builtin("A4").unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..500 {
            let tr = random_triple(&t, &mut rng);
            assert!(coideal::is_triple_valid(&t, tr).unwrap());
        }
    }
}
