//! Z/2 chains: sets of equal-dimensional simplices under symmetric difference.
//!
//! Gluing identifies two vertices `x`, `y` of a cycle with a fresh vertex `z`.
//! Simplices holding both collapse and drop out; images that coincide cancel
//! in pairs. The sweep is the cone from `z` over the stars of `x` and `y`,
//! and its boundary is the sum of the cycle and its glued image.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::simplicial::{Simplex, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    simplices: BTreeSet<Simplex>,
}

impl Chain {
    pub fn empty(dim: usize) -> Self {
        Chain {
            dim,
            simplices: BTreeSet::new(),
        }
    }

    /// Builds a chain, cancelling repeated simplices mod 2.
    pub fn new<I: IntoIterator<Item = Simplex>>(dim: usize, simplices: I) -> Result<Self> {
        let mut chain = Chain::empty(dim);
        for s in simplices {
            if s.dim() != dim {
                return Err(Error::ChainDimension {
                    left: dim,
                    right: s.dim(),
                });
            }
            chain.toggle(s);
        }
        Ok(chain)
    }

    /// Convenience constructor from vertex lists.
    pub fn from_vertex_lists(dim: usize, lists: &[&[Vertex]]) -> Result<Self> {
        let simplices = lists
            .iter()
            .map(|l| Simplex::new(l.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Chain::new(dim, simplices)
    }

    fn toggle(&mut self, s: Simplex) {
        if !self.simplices.remove(&s) {
            self.simplices.insert(s);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.simplices
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect()
    }

    /// Symmetric difference.
    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.dim != other.dim {
            return Err(Error::ChainDimension {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Chain {
            dim: self.dim,
            simplices: self
                .simplices
                .symmetric_difference(&other.simplices)
                .cloned()
                .collect(),
        })
    }

    pub fn boundary(&self) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::ZeroChainBoundary);
        }
        let mut out = Chain::empty(self.dim - 1);
        for s in &self.simplices {
            for f in s.facets() {
                out.toggle(f);
            }
        }
        Ok(out)
    }

    /// True iff the boundary is empty. 0-chains are cycles only when empty,
    /// matching reduced homology.
    pub fn is_cycle(&self) -> bool {
        match self.boundary() {
            Ok(b) => b.is_empty(),
            Err(_) => self.simplices.len().is_multiple_of(2),
        }
    }

    /// The simplices of the chain that contain `x`.
    pub fn star(&self, x: Vertex) -> Chain {
        Chain {
            dim: self.dim,
            simplices: self.simplices.iter().filter(|s| s.contains(x)).cloned().collect(),
        }
    }

    fn check_glue(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<()> {
        if x == y {
            return Err(Error::InvalidGlue(format!("cannot glue vertex {x} to itself")));
        }
        let vertices = self.vertices();
        for v in [x, y] {
            if !vertices.contains(&v) {
                return Err(Error::InvalidGlue(format!("{v} is not a vertex of the chain")));
            }
        }
        if vertices.contains(&z) {
            return Err(Error::InvalidGlue(format!("{z} is not a fresh vertex")));
        }
        if !self.is_cycle() {
            return Err(Error::InvalidGlue("chain is not a cycle".into()));
        }
        Ok(())
    }

    /// Substitutes `z` for `x` and `y` in every simplex.
    pub fn glue(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<Chain> {
        self.check_glue(x, y, z)?;
        let mut out = Chain::empty(self.dim);
        for s in &self.simplices {
            match (s.contains(x), s.contains(y)) {
                (true, true) => {}
                (false, false) => out.toggle(s.clone()),
                _ => out.toggle(substitute(s, x, y, z)),
            }
        }
        Ok(out)
    }

    /// Cone with apex `z` over the union of the stars of `x` and `y`.
    pub fn sweep(&self, x: Vertex, y: Vertex, z: Vertex) -> Result<Chain> {
        self.check_glue(x, y, z)?;
        let mut out = Chain::empty(self.dim + 1);
        for s in self.simplices.iter().filter(|s| s.contains(x) || s.contains(y)) {
            out.toggle(s.join(z)?);
        }
        Ok(out)
    }
}

fn substitute(s: &Simplex, x: Vertex, y: Vertex, z: Vertex) -> Simplex {
    let mut vs: Vec<Vertex> = s
        .vertices()
        .iter()
        .map(|&v| if v == x || v == y { z } else { v })
        .collect();
    vs.sort_unstable();
    Simplex::from_sorted(vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(dim: usize, lists: &[&[Vertex]]) -> Chain {
        Chain::from_vertex_lists(dim, lists).unwrap()
    }

    fn square() -> Chain {
        chain(1, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
    }

    /// Boundary of the octahedron: poles 0 and 5, equator 1-2-3-4.
    fn octahedron() -> Chain {
        let mut lists: Vec<Vec<Vertex>> = Vec::new();
        for i in 0..4 {
            let a = 1 + i;
            let b = 1 + (i + 1) % 4;
            lists.push(vec![0, a, b]);
            lists.push(vec![5, a, b]);
        }
        let refs: Vec<&[Vertex]> = lists.iter().map(Vec::as_slice).collect();
        chain(2, &refs)
    }

    #[test]
    fn addition_is_symmetric_difference() {
        let s = chain(1, &[&[0, 1]]);
        let t = chain(1, &[&[1, 2]]);
        assert!(s.add(&s).unwrap().is_empty());
        assert_eq!(s.add(&t).unwrap(), chain(1, &[&[0, 1], &[1, 2]]));
        let st = chain(1, &[&[0, 1], &[1, 2]]);
        let tu = chain(1, &[&[1, 2], &[2, 3]]);
        assert_eq!(st.add(&tu).unwrap(), chain(1, &[&[0, 1], &[2, 3]]));
        assert!(s.add(&chain(2, &[&[0, 1, 2]])).is_err());
        // duplicates cancel on construction
        assert!(chain(1, &[&[0, 1], &[1, 0]]).is_empty());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(chain(1, &[&[0, 1]]).boundary().unwrap(), chain(0, &[&[0], &[1]]));
        assert!(chain(1, &[&[0, 1], &[1, 2], &[0, 2]]).boundary().unwrap().is_empty());
        assert_eq!(
            chain(2, &[&[0, 1, 2]]).boundary().unwrap(),
            chain(1, &[&[0, 1], &[0, 2], &[1, 2]])
        );
        assert_eq!(chain(0, &[&[0]]).boundary(), Err(Error::ZeroChainBoundary));
    }

    #[test]
    fn cycles_and_stars() {
        assert!(square().is_cycle());
        assert!(!chain(1, &[&[0, 1]]).is_cycle());
        let oct = octahedron();
        assert_eq!(oct.len(), 8);
        assert!(oct.is_cycle());
        assert_eq!(square().star(0), chain(1, &[&[0, 1], &[0, 3]]));
        assert!(square().star(9).is_empty());
        let apex = oct.star(0);
        assert_eq!(apex.len(), 4);
        assert!(apex.iter().all(|s| s.contains(0)));
    }

    #[test]
    fn glue_adjacent_square_vertices() {
        let g = square().glue(0, 1, 4).unwrap();
        assert_eq!(g, chain(1, &[&[2, 4], &[2, 3], &[3, 4]]));
        assert!(g.is_cycle());
    }

    #[test]
    fn glue_opposite_square_vertices_cancels() {
        let g = square().glue(0, 2, 4).unwrap();
        assert!(g.is_empty());
        assert!(g.is_cycle());
    }

    #[test]
    fn glue_errors() {
        let sq = square();
        assert!(matches!(sq.glue(0, 0, 4), Err(Error::InvalidGlue(_))));
        assert!(matches!(sq.glue(0, 7, 4), Err(Error::InvalidGlue(_))));
        assert!(matches!(sq.glue(0, 1, 2), Err(Error::InvalidGlue(_))));
        let path = chain(1, &[&[0, 1], &[1, 2]]);
        assert!(matches!(path.glue(0, 2, 5), Err(Error::InvalidGlue(_))));
        assert!(matches!(sq.sweep(1, 1, 4), Err(Error::InvalidGlue(_))));
    }

    #[test]
    fn sweep_fills_square_gluing() {
        let sq = square();
        let sw = sq.sweep(0, 1, 4).unwrap();
        assert_eq!(sw, chain(2, &[&[0, 1, 4], &[1, 2, 4], &[0, 3, 4]]));
        let glued = sq.glue(0, 1, 4).unwrap();
        assert_eq!(sw.boundary().unwrap(), sq.add(&glued).unwrap());
    }

    #[test]
    fn sweep_over_disjoint_stars() {
        // hexagon; 0 and 3 share no edge
        let hex = chain(1, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]]);
        let sw = hex.sweep(0, 3, 9).unwrap();
        assert_eq!(sw.len(), hex.star(0).len() + hex.star(3).len());
        let glued = hex.glue(0, 3, 9).unwrap();
        assert_eq!(sw.boundary().unwrap(), hex.add(&glued).unwrap());
    }

    #[test]
    fn octahedron_antipodal_gluing() {
        let oct = octahedron();
        let glued = oct.glue(0, 5, 6).unwrap();
        assert!(glued.is_empty());
        let sw = oct.sweep(0, 5, 6).unwrap();
        assert_eq!(sw.len(), 8);
        assert_eq!(sw.boundary().unwrap(), oct.add(&glued).unwrap());
    }

    /// A 2-sphere in which x, y span an edge, lie on the two triangles xya and
    /// xyb, and also see the edge cd through xcd and ycd. Gluing x and y
    /// collapses the two triangles on xy and cancels the two copies of zcd.
    #[test]
    fn gluing_two_stars_ten_to_six() {
        let (x, y, c, d, a, q, b, t) = (0, 1, 2, 3, 4, 5, 6, 7);
        let sphere = chain(
            2,
            &[
                &[x, c, d],
                &[y, c, d],
                &[x, y, a],
                &[x, a, c],
                &[y, a, q],
                &[y, q, c],
                &[a, c, q],
                &[x, y, b],
                &[x, b, d],
                &[y, b, t],
                &[y, t, d],
                &[b, d, t],
            ],
        );
        assert!(sphere.is_cycle());
        let stars = sphere.star(x).add(&sphere.star(y)).unwrap();
        let union_len = sphere.star(x).len() + sphere.star(y).len() - sphere.star(x).star(y).len();
        assert_eq!(union_len, 10);
        assert_eq!(stars.len(), 8);

        let z = 8;
        let glued = sphere.glue(x, y, z).unwrap();
        assert!(glued.is_cycle());
        assert_eq!(glued.star(z).len(), 6);
        assert!(!glued.contains(&Simplex::new(vec![z, c, d]).unwrap()));
        assert_eq!(sphere.len() - glued.len(), 4);

        let sw = sphere.sweep(x, y, z).unwrap();
        assert_eq!(sw.len(), 10);
        let bd = sw.boundary().unwrap();
        assert_eq!(bd, sphere.add(&glued).unwrap());
        assert_eq!(bd.len(), 16);
    }
}
