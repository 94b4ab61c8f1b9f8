//! Persistent homology over Z/2.
//!
//! [`reduce`] runs the standard left-to-right column reduction on the
//! boundary matrix of a filtration. Diagrams use reduced homology: the
//! essential 0-class of the oldest vertex is the augmentation class and is
//! kept aside, so a connected complex has β₀ = 0. Unreduced counts are
//! available through [`PersistenceDiagram::unreduced`]; on a non-empty
//! complex unreduced β₀ = reduced β₀ + 1.
//!
//! Persistent counts use a strict death convention: a class alive at `s`
//! persists to `t` iff its death is strictly greater than `t`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplicial::{Filtration, Simplex};
use crate::RADIUS_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    /// `f64::INFINITY` for essential classes; serialized as `null`.
    #[serde(serialize_with = "death_as_json", deserialize_with = "death_from_json")]
    pub death: f64,
}

fn death_as_json<S: Serializer>(death: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if death.is_finite() {
        s.serialize_f64(*death)
    } else {
        s.serialize_none()
    }
}

fn death_from_json<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl PersistencePair {
    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    fn alive_at(&self, r: f64) -> bool {
        self.birth <= r + RADIUS_TOL && self.death > r + RADIUS_TOL
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub pairs: Vec<PersistencePair>,
    /// Whether the augmentation class has been removed.
    pub reduced: bool,
    /// Birth of the augmentation class, if the filtration was non-empty.
    pub augmentation: Option<f64>,
}

impl PersistenceDiagram {
    /// The same diagram with the augmentation class restored.
    pub fn unreduced(&self) -> PersistenceDiagram {
        let mut out = self.clone();
        if self.reduced {
            if let Some(birth) = self.augmentation {
                out.pairs.push(PersistencePair {
                    dim: 0,
                    birth,
                    death: f64::INFINITY,
                });
                sort_pairs(&mut out.pairs);
            }
            out.reduced = false;
        }
        out
    }

    pub fn pairs_of_dim(&self, p: usize) -> impl Iterator<Item = &PersistencePair> + '_ {
        self.pairs.iter().filter(move |pair| pair.dim == p)
    }

    /// β_p of the sublevel complex at `r`.
    pub fn betti(&self, p: usize, r: f64) -> usize {
        self.pairs_of_dim(p).filter(|pair| pair.alive_at(r)).count()
    }

    /// Rank of the map H_p(K_s) → H_p(K_t).
    pub fn persistent_betti(&self, p: usize, s: f64, t: f64) -> Result<usize> {
        if s > t {
            return Err(Error::InvalidParameter(format!("s = {s} exceeds t = {t}")));
        }
        Ok(self
            .pairs_of_dim(p)
            .filter(|pair| pair.birth <= s + RADIUS_TOL && pair.death > t + RADIUS_TOL)
            .count())
    }
}

pub fn betti(dgm: &PersistenceDiagram, p: usize, r: f64) -> usize {
    dgm.betti(p, r)
}

pub fn persistent_betti(dgm: &PersistenceDiagram, p: usize, s: f64, t: f64) -> Result<usize> {
    dgm.persistent_betti(p, s, t)
}

fn sort_pairs(pairs: &mut [PersistencePair]) {
    pairs.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then(a.death.total_cmp(&b.death))
    });
}

/// Z/2 sum of two sorted index lists.
fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Standard persistence pairing of a filtration, in reduced homology.
pub fn reduce(f: &Filtration) -> PersistenceDiagram {
    let entries = f.entries();
    let m = entries.len();
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut col_with_low: Vec<Option<usize>> = vec![None; m];
    let mut is_negative_row = vec![false; m];
    let mut pairs = Vec::new();

    for (j, e) in entries.iter().enumerate() {
        let mut col: Vec<usize> = e
            .simplex
            .facets()
            .map(|face| f.index_of(&face).expect("filtration is face-closed"))
            .collect();
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match col_with_low[low] {
                Some(k) => col = add_columns(&col, &reduced[k]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            col_with_low[low] = Some(j);
            is_negative_row[low] = true;
            pairs.push(PersistencePair {
                dim: entries[low].simplex.dim(),
                birth: entries[low].value,
                death: e.value,
            });
        }
        reduced.push(col);
    }

    let mut augmentation = None;
    for (j, e) in entries.iter().enumerate() {
        if reduced[j].is_empty() && !is_negative_row[j] {
            if e.simplex.dim() == 0 && augmentation.is_none() {
                augmentation = Some(e.value);
                continue;
            }
            pairs.push(PersistencePair {
                dim: e.simplex.dim(),
                birth: e.value,
                death: f64::INFINITY,
            });
        }
    }
    sort_pairs(&mut pairs);
    PersistenceDiagram {
        pairs,
        reduced: true,
        augmentation,
    }
}

/// A face-closed simplicial complex without filtration values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct StaticComplex {
    simplices: BTreeSet<Simplex>,
}

impl StaticComplex {
    /// Rejects collections that are not closed under taking faces.
    pub fn new<I: IntoIterator<Item = Simplex>>(simplices: I) -> Result<Self> {
        let simplices: BTreeSet<Simplex> = simplices.into_iter().collect();
        for s in &simplices {
            if let Some(missing) = s.facets().find(|f| !simplices.contains(f)) {
                return Err(Error::NotFaceClosed(missing.to_string()));
            }
        }
        Ok(StaticComplex { simplices })
    }

    /// The smallest complex containing the given simplices.
    pub fn closure<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut all = BTreeSet::new();
        let mut stack: Vec<Simplex> = simplices.into_iter().collect();
        while let Some(s) = stack.pop() {
            if all.contains(&s) {
                continue;
            }
            stack.extend(s.facets());
            all.insert(s);
        }
        StaticComplex { simplices: all }
    }

    /// The closed sublevel complex of a filtration at `r`.
    pub fn sublevel(f: &Filtration, r: f64) -> Self {
        StaticComplex {
            simplices: f.sublevel(r).map(|e| e.simplex.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, p: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter().filter(move |s| s.dim() == p)
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices_of_dim(p).count()
    }

    /// Number of simplices per dimension, up to the top dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.simplices.iter().map(Simplex::dim).max();
        match top {
            None => Vec::new(),
            Some(top) => (0..=top).map(|p| self.count(p)).collect(),
        }
    }
}

/// Dense bit column over GF(2).
#[derive(Clone)]
struct BitColumn(Vec<u64>);

impl BitColumn {
    fn zeros(len: usize) -> Self {
        BitColumn(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
    }

    fn xor(&mut self, other: &BitColumn) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

/// Rank over Z/2 of the boundary map from p-simplices to (p−1)-simplices,
/// by Gaussian elimination on dense bit columns.
fn boundary_rank(k: &StaticComplex, p: usize) -> usize {
    if p == 0 {
        // augmentation map to the empty simplex
        return usize::from(k.count(0) > 0);
    }
    let rows: HashMap<&Simplex, usize> = k
        .simplices_of_dim(p - 1)
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut basis: HashMap<usize, BitColumn> = HashMap::new();
    for s in k.simplices_of_dim(p) {
        let mut col = BitColumn::zeros(rows.len());
        for f in s.facets() {
            col.set(rows[&f]);
        }
        while let Some(top) = col.highest() {
            match basis.get(&top) {
                Some(b) => col.xor(b),
                None => {
                    basis.insert(top, col);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Reduced Z/2 Betti number: dim ker ∂_p − rank ∂_{p+1}.
pub fn betti_of_static(k: &StaticComplex, p: usize) -> usize {
    let cp = k.count(p);
    if cp == 0 {
        return 0;
    }
    cp - boundary_rank(k, p) - boundary_rank(k, p + 1)
}
