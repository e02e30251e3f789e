//! Full enumeration of a finite Weyl group.
//!
//! Every element is identified by its inversion set
//! `Φ⁺(w) = {α ∈ Φ⁺ : w⁻¹α < 0}`, stored as a bitset over positive-root
//! indices. Elements are indexed in order of length and then canonical word,
//! where the canonical word is the lexicographically smallest reduced word
//! (obtained by repeatedly stripping the smallest left descent).

use std::collections::{HashMap, VecDeque};
use std::ops::Range;

use serde::Serialize;

use crate::bits::{InvSet, SimpleSet};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem, SignedRoot};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ORDER_CAP: usize = 10_000_000;

/// Index of an element in a [`GroupTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A materialized view of one group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// `perm[k]` is the image of positive root `k` under the element.
    pub perm: Vec<SignedRoot>,
    pub inv: InvSet,
    pub length: usize,
    /// Canonical reduced word, 0-based simple indices.
    pub word: Vec<u8>,
}

/// JSON export of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub word: Vec<usize>,
    pub length: usize,
    pub inversions: Vec<usize>,
}

/// The fully enumerated group with multiplication tables.
#[derive(Debug)]
pub struct GroupTable {
    rs: RootSystem,
    rank: usize,
    inv: Vec<InvSet>,
    length: Vec<u16>,
    level_start: Vec<usize>,
    word_start: Vec<u32>,
    words: Vec<u8>,
    /// `simple_images[x * rank + i]` encodes `x(α_i)` as `±(k + 1)`.
    simple_images: Vec<i16>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    lookup: HashMap<InvSet, u32>,
}

#[inline]
fn encode(r: SignedRoot) -> i16 {
    let v = r.index as i16 + 1;
    if r.positive {
        v
    } else {
        -v
    }
}

#[inline]
fn decode(v: i16) -> SignedRoot {
    SignedRoot { index: (v.unsigned_abs() - 1) as usize, positive: v > 0 }
}

impl GroupTable {
    pub fn enumerate(rs: RootSystem) -> Result<Self> {
        Self::enumerate_with_cap(rs, DEFAULT_ORDER_CAP)
    }

    /// Breadth-first enumeration by length. An element `y` of length `l + 1`
    /// is produced exactly once, as `s_i x` where `i` is its smallest left
    /// descent, so no deduplication is needed and the output comes out sorted.
    pub fn enumerate_with_cap(rs: RootSystem, cap: usize) -> Result<Self> {
        let rank = rs.rank();
        let npos = rs.num_positive();
        if npos > 128 {
            return Err(Error::TooManyRoots(npos));
        }
        // s_i on positive roots other than α_i, as positive indices.
        let refl_pos: Vec<Vec<u8>> = (0..rank)
            .map(|i| {
                (0..npos)
                    .map(|k| if k == i { u8::MAX } else { rs.reflect_index(i, SignedRoot::pos(k)).index as u8 })
                    .collect()
            })
            .collect();

        let mut inv = vec![InvSet::EMPTY];
        let mut length = vec![0u16];
        let mut word_start = vec![0u32, 0];
        let mut words: Vec<u8> = Vec::new();
        let mut simple_images: Vec<i16> = (0..rank).map(|j| encode(SignedRoot::pos(j))).collect();
        let mut level_start = vec![0usize];

        let (mut lo, mut hi) = (0usize, 1usize);
        loop {
            level_start.push(hi);
            for i in 0..rank {
                let lower_mask: u128 = (1u128 << i) - 1;
                for x in lo..hi {
                    let xi = inv[x];
                    if xi.contains(i) {
                        continue;
                    }
                    let mut y = InvSet::EMPTY.with(i);
                    for k in xi.iter() {
                        y = y.with(refl_pos[i][k] as usize);
                    }
                    if y.0 & lower_mask != 0 {
                        continue;
                    }
                    if inv.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    inv.push(y);
                    length.push(length[x] + 1);
                    words.push(i as u8);
                    let (ws, we) = (word_start[x] as usize, word_start[x + 1] as usize);
                    words.extend_from_within(ws..we);
                    word_start.push(words.len() as u32);
                    for j in 0..rank {
                        let img = decode(simple_images[x * rank + j]);
                        simple_images.push(encode(rs.reflect_index(i, img)));
                    }
                }
            }
            if inv.len() == hi {
                break;
            }
            lo = hi;
            hi = inv.len();
        }

        let n = inv.len();
        let lookup: HashMap<InvSet, u32> = inv.iter().enumerate().map(|(k, &s)| (s, k as u32)).collect();
        let mut right = Vec::with_capacity(n * rank);
        for x in 0..n {
            for i in 0..rank {
                let img = decode(simple_images[x * rank + i]);
                let target = if img.positive { inv[x].with(img.index) } else { inv[x].without(img.index) };
                right.push(lookup[&target]);
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let mut cur = 0usize;
            for &a in words[word_start[x] as usize..word_start[x + 1] as usize].iter().rev() {
                cur = right[cur * rank + a as usize] as usize;
            }
            inverse.push(cur as u32);
        }
        let mut left = Vec::with_capacity(n * rank);
        for x in 0..n {
            let xinv = inverse[x] as usize;
            for i in 0..rank {
                left.push(inverse[right[xinv * rank + i] as usize]);
            }
        }

        Ok(GroupTable {
            rs,
            rank,
            inv,
            length,
            level_start,
            word_start,
            words,
            simple_images,
            right,
            left,
            inverse,
            lookup,
        })
    }

    /// Shorthand for building the root system of a built-in type and enumerating it.
    pub fn builtin(label: &str) -> Result<Self> {
        Self::enumerate(RootSystem::builtin(label)?)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn label(&self) -> &str {
        self.rs.label()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.inv.len() as u32).map(Elem)
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    /// The longest element `w₀`.
    pub fn longest(&self) -> Elem {
        Elem(self.inv.len() as u32 - 1)
    }

    pub fn max_length(&self) -> usize {
        self.level_start.len() - 2
    }

    /// Index range of the elements of length `l`.
    pub fn level(&self, l: usize) -> Range<usize> {
        if l > self.max_length() {
            return self.inv.len()..self.inv.len();
        }
        self.level_start[l]..self.level_start[l + 1]
    }

    /// Elements of length at most `l`, as an index range starting at 0.
    pub fn up_to_length(&self, l: usize) -> Range<usize> {
        0..self.level(l.min(self.max_length())).end
    }

    #[inline]
    pub fn inv(&self, e: Elem) -> InvSet {
        self.inv[e.index()]
    }

    pub fn inv_sets(&self) -> &[InvSet] {
        &self.inv
    }

    #[inline]
    pub fn length(&self, e: Elem) -> usize {
        self.length[e.index()] as usize
    }

    /// Canonical reduced word, 0-based simple indices.
    pub fn word(&self, e: Elem) -> &[u8] {
        let x = e.index();
        &self.words[self.word_start[x] as usize..self.word_start[x + 1] as usize]
    }

    /// `e(α_i)`.
    #[inline]
    pub fn simple_image(&self, e: Elem, i: usize) -> SignedRoot {
        decode(self.simple_images[e.index() * self.rank + i])
    }

    /// `e · s_i`.
    #[inline]
    pub fn right_mul(&self, e: Elem, i: usize) -> Elem {
        Elem(self.right[e.index() * self.rank + i])
    }

    /// `s_i · e`.
    #[inline]
    pub fn left_mul(&self, i: usize, e: Elem) -> Elem {
        Elem(self.left[e.index() * self.rank + i])
    }

    pub fn multiply(&self, a: Elem, b: Elem) -> Elem {
        self.word(b).iter().fold(a, |cur, &i| self.right_mul(cur, i as usize))
    }

    #[inline]
    pub fn inverse(&self, a: Elem) -> Elem {
        Elem(self.inverse[a.index()])
    }

    /// Multiplies out an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, letters: &[usize]) -> Result<Elem> {
        let mut cur = Elem::IDENTITY;
        for &i in letters {
            self.rs.check_simple(i)?;
            cur = self.right_mul(cur, i);
        }
        Ok(cur)
    }

    pub fn lookup(&self, inv: InvSet) -> Option<Elem> {
        self.lookup.get(&inv).map(|&k| Elem(k))
    }

    /// `{α_i : ℓ(s_i a) < ℓ(a)}`, which is `Π ∩ Φ⁺(a)`.
    pub fn left_descents(&self, a: Elem) -> SimpleSet {
        SimpleSet((self.inv(a).0 & ((1u128 << self.rank) - 1)) as u32)
    }

    /// `{α_i : ℓ(a s_i) < ℓ(a)}`, read off from `a(α_i) < 0`.
    pub fn right_descents(&self, a: Elem) -> SimpleSet {
        SimpleSet::from_indices((0..self.rank).filter(|&i| !self.simple_image(a, i).positive))
    }

    /// `w(r)` for an arbitrary root.
    pub fn act(&self, w: Elem, r: SignedRoot) -> SignedRoot {
        self.word(w).iter().rev().fold(r, |cur, &i| self.rs.reflect_index(i as usize, cur))
    }

    /// `Φ⁺(w)` as a list of roots, in positive-root order.
    pub fn phi_plus(&self, w: Elem) -> Vec<Root> {
        self.inv(w).iter().map(|k| self.rs.positive_roots()[k].clone()).collect()
    }

    /// `Φ⁺(w)` straight from the definition: positive roots whose image under
    /// `w⁻¹` is negative.
    pub fn phi_plus_by_definition(&self, w: Elem) -> InvSet {
        let winv = self.inverse(w);
        (0..self.rs.num_positive())
            .filter(|&k| !self.act(winv, SignedRoot::pos(k)).positive)
            .fold(InvSet::EMPTY, InvSet::with)
    }

    /// `{β_t = s_{a_1} ⋯ s_{a_{t-1}} α_{a_t}}` for a reduced word `a`.
    pub fn phi_plus_from_word(&self, word: &[u8]) -> InvSet {
        let mut out = InvSet::EMPTY;
        for t in 0..word.len() {
            let beta = word[..t]
                .iter()
                .rev()
                .fold(SignedRoot::pos(word[t] as usize), |cur, &i| self.rs.reflect_index(i as usize, cur));
            debug_assert!(beta.positive);
            out = out.with(beta.index);
        }
        out
    }

    pub fn element(&self, w: Elem) -> WeylElement {
        WeylElement {
            perm: (0..self.rs.num_positive()).map(|k| self.act(w, SignedRoot::pos(k))).collect(),
            inv: self.inv(w),
            length: self.length(w),
            word: self.word(w).to_vec(),
        }
    }

    /// `{"word":[..],"length":..,"inversions":[..]}` with 1-based word letters
    /// and 0-based positive-root indices.
    pub fn element_record(&self, w: Elem) -> ElementRecord {
        ElementRecord {
            word: self.word(w).iter().map(|&i| i as usize + 1).collect(),
            length: self.length(w),
            inversions: self.inv(w).iter().collect(),
        }
    }

    /// Right weak order `u ≤_R x`, tested as `Φ⁺(u) ⊆ Φ⁺(x)`.
    #[inline]
    pub fn leq_weak(&self, u: Elem, x: Elem) -> bool {
        self.inv(u).is_subset(self.inv(x))
    }

    /// Right weak order from its definition: `x = u·y` with `ℓ(x) = ℓ(u) + ℓ(y)`.
    pub fn leq_weak_definitional(&self, u: Elem, x: Elem) -> bool {
        let y = self.multiply(self.inverse(u), x);
        self.length(x) == self.length(u) + self.length(y)
    }

    /// All prefixes of `x`, found by walking down from `x` along
    /// `y ↦ y s_i` whenever that shortens `y`.
    pub fn prefix_downset(&self, x: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![x];
        seen[x.index()] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for i in self.right_descents(y).iter() {
                let z = self.right_mul(y, i);
                if !seen[z.index()] {
                    seen[z.index()] = true;
                    out.push(z);
                    queue.push_back(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Longest element `w_J` of the parabolic subgroup `W_J`.
    pub fn longest_parabolic(&self, j: SimpleSet) -> Elem {
        let mut cur = Elem::IDENTITY;
        'grow: loop {
            for i in j.iter() {
                let next = self.right_mul(cur, i);
                if self.length(next) > self.length(cur) {
                    cur = next;
                    continue 'grow;
                }
            }
            return cur;
        }
    }

    /// `Π ∩ xΠ`: simple roots that are images of simple roots under `x`.
    pub fn pi_cap_xpi(&self, x: Elem) -> SimpleSet {
        SimpleSet::from_indices((0..self.rank).filter_map(|i| {
            let img = self.simple_image(x, i);
            (img.positive && img.index < self.rank).then_some(img.index)
        }))
    }

    /// `Π ∩ xΠ` via `{β ∈ Π : s_β = x s_α x⁻¹ for some α ∈ Π with ℓ(x s_α) = ℓ(x) + 1}`.
    pub fn pi_cap_xpi_by_conjugation(&self, x: Elem) -> SimpleSet {
        let xinv = self.inverse(x);
        let mut out = SimpleSet::EMPTY;
        for a in 0..self.rank {
            let xs = self.right_mul(x, a);
            if self.length(xs) != self.length(x) + 1 {
                continue;
            }
            let c = self.multiply(xs, xinv);
            if self.length(c) == 1 {
                out = out.with(self.word(c)[0] as usize);
            }
        }
        out
    }

    /// Splits `v = u·m` with `m ∈ W_M` and `u` the minimal-length element of `vW_M`.
    pub fn min_coset_rep(&self, v: Elem, m: SimpleSet) -> (Elem, Elem) {
        let mut u = v;
        'shrink: loop {
            for i in m.iter() {
                let next = self.right_mul(u, i);
                if self.length(next) < self.length(u) {
                    u = next;
                    continue 'shrink;
                }
            }
            break;
        }
        (u, self.multiply(self.inverse(u), v))
    }
}
