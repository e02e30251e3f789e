//! Finite root systems built from Cartan matrices.
//!
//! Roots are integer coordinate vectors over the simple roots. The convention
//! for the Cartan matrix `a` is `s_i(α_j) = α_j - a(i,j) α_i`, so in type `B_n`
//! the entry `a(n, n-1)` is `-2` (the last simple root is short).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Rational numbers used for the invariant form.
pub type Rational = Ratio<i64>;

/// An integer Cartan matrix of finite type together with a label such as `"B7"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    label: String,
    rank: usize,
    entries: Vec<i32>,
}

impl CartanMatrix {
    /// Validates the local Cartan axioms. Finite type is checked later, when
    /// the root system is generated.
    pub fn new(label: impl Into<String>, rows: Vec<Vec<i32>>) -> Result<Self> {
        let label = label.into();
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if rank > 32 {
            return Err(Error::InvalidCartan(format!("rank {rank} exceeds 32")));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let m = CartanMatrix { label, rank, entries };
        for i in 0..rank {
            if m.entry(i, i) != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({0},{0}) is not 2", i + 1)));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if m.entry(i, j) > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (m.entry(i, j) == 0) != (m.entry(j, i) == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({0},{1}) and ({1},{0}) disagree on being zero",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Built-in matrix for a label like `"A3"`, `"B7"`, `"E6"` (Bourbaki numbering).
    pub fn builtin(label: &str) -> Result<Self> {
        let unknown = || Error::UnknownType(label.to_string());
        let label = label.trim();
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;

        let mut a = vec![vec![0i32; n]; n];
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match (family, n) {
            ('A', 1..=32) => (0..n - 1).for_each(|i| link(i, i + 1)),
            ('B', 2..=32) | ('C', 2..=32) => (0..n - 1).for_each(|i| link(i, i + 1)),
            ('D', 4..=32) => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            ('E', 6..=8) => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            ('F', 4) => (0..3).for_each(|i| link(i, i + 1)),
            ('G', 2) => link(0, 1),
            _ => return Err(unknown()),
        }
        for i in 0..n {
            a[i][i] = 2;
        }
        match family {
            'B' => a[n - 1][n - 2] = -2,
            'C' => a[n - 2][n - 1] = -2,
            'F' => a[2][1] = -2,
            'G' => a[0][1] = -3,
            _ => {}
        }
        CartanMatrix::new(format!("{family}{n}"), a)
    }

    /// Parses either a bare JSON matrix `[[2,-1],[-1,2]]` or an object
    /// `{"label": "...", "matrix": [[...]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Input {
            Bare(Vec<Vec<i32>>),
            Labelled { label: Option<String>, matrix: Vec<Vec<i32>> },
        }
        match serde_json::from_str::<Input>(text)? {
            Input::Bare(rows) => CartanMatrix::new("custom", rows),
            Input::Labelled { label, matrix } => {
                CartanMatrix::new(label.unwrap_or_else(|| "custom".into()), matrix)
            }
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.entries.chunks(self.rank).map(<[i32]>::to_vec).collect()
    }
}

impl FromStr for CartanMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CartanMatrix::builtin(s)
    }
}

/// A root as coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A positive root index with a sign, i.e. an arbitrary root of the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub positive: bool,
}

impl SignedRoot {
    pub fn pos(index: usize) -> Self {
        SignedRoot { index, positive: true }
    }

    pub fn negated(self) -> Self {
        SignedRoot { index: self.index, positive: !self.positive }
    }
}

/// The positive roots of a finite root system, in a fixed order, together
/// with the simple reflection action and the invariant form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanMatrix,
    positive_roots: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    /// `reflection[i * npos + k]` is `s_i` applied to positive root `k`.
    reflection: Vec<SignedRoot>,
    /// `(α_i, α_j)` on simple roots; shortest roots of each component have length² 2.
    form: Vec<Rational>,
}

impl RootSystem {
    /// Generates the positive roots by closing the simple roots under simple
    /// reflections. Ordering: by height, then coordinates in descending
    /// lexicographic order (so `α_1, …, α_n` come first, in index order).
    pub fn new(cartan: CartanMatrix) -> Result<Self> {
        let rank = cartan.rank();
        let height_bound = 2 * rank as i32 + 30;
        let not_finite = || Error::NotFiniteType(cartan.label().to_string());

        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue: Vec<Vec<i32>> = (0..rank).map(|i| Root::simple(rank, i).0).collect();
        for r in &queue {
            seen.insert(r.clone(), ());
        }
        let mut head = 0;
        while head < queue.len() {
            let r = queue[head].clone();
            head += 1;
            for i in 0..rank {
                let is_simple_i = r.iter().enumerate().all(|(k, &c)| c == i32::from(k == i));
                if is_simple_i {
                    continue;
                }
                let img = reflect_coords(&cartan, i, &r);
                if img.iter().any(|&c| c < 0) {
                    // s_i permutes the positive roots other than α_i.
                    return Err(not_finite());
                }
                if img.iter().sum::<i32>() > height_bound {
                    return Err(not_finite());
                }
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push(img);
                }
            }
        }

        let mut positive_roots: Vec<Root> = queue.into_iter().map(Root).collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        let index: HashMap<Vec<i32>, usize> =
            positive_roots.iter().enumerate().map(|(k, r)| (r.0.clone(), k)).collect();

        let npos = positive_roots.len();
        let mut reflection = Vec::with_capacity(rank * npos);
        for i in 0..rank {
            for r in &positive_roots {
                let img = reflect_coords(&cartan, i, &r.0);
                let signed = if let Some(&k) = index.get(&img) {
                    SignedRoot::pos(k)
                } else {
                    let neg: Vec<i32> = img.iter().map(|c| -c).collect();
                    let k = *index.get(&neg).ok_or_else(not_finite)?;
                    SignedRoot { index: k, positive: false }
                };
                reflection.push(signed);
            }
        }

        let form = symmetrized_form(&cartan)?;
        Ok(RootSystem { cartan, positive_roots, index, reflection, form })
    }

    /// Shorthand for `RootSystem::new(CartanMatrix::builtin(label)?)`.
    pub fn builtin(label: &str) -> Result<Self> {
        RootSystem::new(CartanMatrix::builtin(label)?)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn label(&self) -> &str {
        self.cartan.label()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, r: SignedRoot) -> Root {
        let root = &self.positive_roots[r.index];
        if r.positive {
            root.clone()
        } else {
            root.neg()
        }
    }

    /// Locates a root (positive or negative) in the system.
    pub fn find(&self, r: &Root) -> Option<SignedRoot> {
        if let Some(&k) = self.index.get(&r.0) {
            return Some(SignedRoot::pos(k));
        }
        let neg: Vec<i32> = r.0.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&k| SignedRoot { index: k, positive: false })
    }

    /// `s_i` on a root given by index.
    #[inline]
    pub fn reflect_index(&self, i: usize, r: SignedRoot) -> SignedRoot {
        let img = self.reflection[i * self.positive_roots.len() + r.index];
        if r.positive {
            img
        } else {
            img.negated()
        }
    }

    /// `s_i(r)` for a root `r` given by coordinates.
    pub fn reflect(&self, i: usize, r: &Root) -> Result<Root> {
        self.check_simple(i)?;
        let signed = self.find(r).ok_or_else(|| Error::NotARoot(r.0.clone()))?;
        Ok(self.root(self.reflect_index(i, signed)))
    }

    /// The invariant form `(β, γ)`.
    pub fn pairing(&self, beta: &Root, gamma: &Root) -> Result<Rational> {
        for r in [beta, gamma] {
            if self.find(r).is_none() {
                return Err(Error::NotARoot(r.0.clone()));
            }
        }
        let n = self.rank();
        let mut acc = Rational::from_integer(0);
        for i in 0..n {
            for j in 0..n {
                let c = i64::from(beta.0[i]) * i64::from(gamma.0[j]);
                if c != 0 {
                    acc += self.form[i * n + j] * c;
                }
            }
        }
        Ok(acc)
    }

    pub fn simple_form(&self, i: usize, j: usize) -> Rational {
        self.form[i * self.rank() + j]
    }

    /// The positive roots as a JSON array of coordinate vectors.
    pub fn roots_json(&self) -> String {
        let coords: Vec<&Vec<i32>> = self.positive_roots.iter().map(|r| &r.0).collect();
        serde_json::to_string(&coords).expect("integer vectors always serialize")
    }

    pub(crate) fn check_simple(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::SimpleIndexOutOfRange { index: i, rank: self.rank() })
        }
    }
}

fn reflect_coords(cartan: &CartanMatrix, i: usize, r: &[i32]) -> Vec<i32> {
    let coroot: i32 = r.iter().enumerate().map(|(j, &c)| c * cartan.entry(i, j)).sum();
    let mut img = r.to_vec();
    img[i] -= coroot;
    img
}

/// Finds `d_i > 0` with `d_i a(i,j) = d_j a(j,i)` and returns `(α_i, α_j) = d_i a(i,j)`,
/// scaled so the smallest `d_i` on every connected component is 1.
fn symmetrized_form(cartan: &CartanMatrix) -> Result<Vec<Rational>> {
    let n = cartan.rank();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::from_integer(1));
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if j == i || cartan.entry(i, j) == 0 {
                    continue;
                }
                let dj = di * Rational::new(cartan.entry(i, j).into(), cartan.entry(j, i).into());
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::NotFiniteType(cartan.label().to_string()));
                    }
                    Some(_) => {}
                }
            }
        }
        let min = component.iter().map(|&k| d[k].unwrap()).min().unwrap();
        for &k in &component {
            d[k] = Some(d[k].unwrap() / min);
        }
    }
    let mut form = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            form.push(d[i].unwrap() * Rational::from_integer(cartan.entry(i, j).into()));
        }
    }
    Ok(form)
}
