//! Polytopes inside a probability simplex, held in both representations.
//!
//! Vertices are enumerated with the double-description method: start from
//! the simplex vertices and cut by one halfspace at a time, creating a new
//! vertex on every edge that crosses the cutting hyperplane. Edges are
//! recognized combinatorially: two vertices are adjacent exactly when no
//! third vertex is tight on every constraint they share.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::rational::{self, Rational};

/// `normal · x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Halfspace {
    pub fn ge(normal: Vec<Rational>, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// `normal · x <= offset`, stored as `-normal · x >= -offset`.
    pub fn le(normal: Vec<Rational>, offset: Rational) -> Self {
        Self {
            normal: normal.into_iter().map(|v| -v).collect(),
            offset: -offset,
        }
    }

    pub fn slack(&self, x: &[Rational]) -> Rational {
        rational::dot(&self.normal, x) - &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Incidence(Vec<u64>);

impl Incidence {
    fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    fn intersect(&self, other: &Incidence) -> Incidence {
        Incidence(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Incidence) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(k, w)| w & !self.0.get(k).copied().unwrap_or(0) == 0)
    }
}

/// `{x in S_d : h · x >= offset for every h}` with its vertex list.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rational>>,
    inequalities: Vec<Halfspace>,
    // per vertex: tight constraints; 0..d are the coordinate facets x_i >= 0,
    // d + k is inequality k
    incidence: Vec<Incidence>,
}

impl Polytope {
    /// The whole simplex `S_dim`.
    pub fn simplex(dim: usize) -> Self {
        Self::in_simplex(dim, Vec::new())
    }

    pub fn in_simplex(dim: usize, inequalities: Vec<Halfspace>) -> Self {
        assert!(dim >= 1, "simplex dimension must be positive");
        assert!(inequalities.iter().all(|h| h.normal.len() == dim));
        let mut vertices: Vec<Vec<Rational>> = (0..dim).map(|i| unit(dim, i)).collect();
        let mut incidence: Vec<Incidence> = (0..dim)
            .map(|i| {
                let mut inc = Incidence::default();
                (0..dim).filter(|&j| j != i).for_each(|j| inc.insert(j));
                inc
            })
            .collect();

        for (k, h) in inequalities.iter().enumerate() {
            let cidx = dim + k;
            let slacks: Vec<Rational> = vertices.iter().map(|v| h.slack(v)).collect();
            let plus: Vec<usize> = (0..vertices.len()).filter(|&i| slacks[i].is_positive()).collect();
            let minus: Vec<usize> = (0..vertices.len()).filter(|&i| slacks[i].is_negative()).collect();
            if minus.is_empty() {
                for (i, s) in slacks.iter().enumerate() {
                    if s.is_zero() {
                        incidence[i].insert(cidx);
                    }
                }
                continue;
            }

            let mut new_vertices = Vec::new();
            let mut new_incidence = Vec::new();
            for &p in &plus {
                for &q in &minus {
                    let common = incidence[p].intersect(&incidence[q]);
                    let adjacent = (0..vertices.len())
                        .all(|r| r == p || r == q || !incidence[r].is_superset(&common));
                    if !adjacent {
                        continue;
                    }
                    let (sp, sq) = (&slacks[p], &slacks[q]);
                    let denom = sp - sq;
                    let z: Vec<Rational> = vertices[p]
                        .iter()
                        .zip(&vertices[q])
                        .map(|(vp, vq)| (sp * vq - sq * vp) / &denom)
                        .collect();
                    let mut inc = common;
                    inc.insert(cidx);
                    new_vertices.push(z);
                    new_incidence.push(inc);
                }
            }

            let mut kept_v = Vec::new();
            let mut kept_i = Vec::new();
            for i in 0..vertices.len() {
                if slacks[i].is_negative() {
                    continue;
                }
                let mut inc = incidence[i].clone();
                if slacks[i].is_zero() {
                    inc.insert(cidx);
                }
                kept_v.push(vertices[i].clone());
                kept_i.push(inc);
            }
            kept_v.extend(new_vertices);
            kept_i.extend(new_incidence);
            vertices = kept_v;
            incidence = kept_i;
        }

        Self {
            ambient_dim: dim,
            vertices,
            inequalities,
            incidence,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Vertices in lexicographic order.
    pub fn sorted_vertices(&self) -> Vec<Vec<Rational>> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.inequalities
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn affine_dim(&self) -> Option<usize> {
        linalg::affine_dimension(&self.vertices)
    }

    /// Full-dimensional inside `aff(S_d)`, i.e. positive measure.
    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.ambient_dim - 1)
    }

    /// Every point has all coordinates strictly positive (checked on vertices).
    pub fn is_fully_mixed(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.iter().all(Signed::is_positive))
    }

    /// A coordinate that vanishes on the whole polytope, i.e. the polytope
    /// lies inside one facet of the simplex.
    pub fn common_zero_coordinate(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        (0..self.ambient_dim).find(|&i| self.vertices.iter().all(|v| v[i].is_zero()))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.ambient_dim
            && x.iter().all(|c| !c.is_negative())
            && x.iter().sum::<Rational>().is_one()
            && self.inequalities.iter().all(|h| !h.slack(x).is_negative())
    }

    /// Indices (into `inequalities`) tight at vertex `v`.
    pub fn tight_inequalities(&self, v: usize) -> Vec<usize> {
        (0..self.inequalities.len())
            .filter(|k| self.incidence[v].contains(self.ambient_dim + k))
            .collect()
    }

    /// Every nonempty face as a sorted list of vertex indices, the polytope
    /// itself included. Faces are the intersections of constraint-tight
    /// vertex sets.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let nv = self.vertices.len();
        if nv == 0 {
            return Vec::new();
        }
        let n_constraints = self.ambient_dim + self.inequalities.len();
        let generators: Vec<Vec<usize>> = (0..n_constraints)
            .map(|c| (0..nv).filter(|&v| self.incidence[v].contains(c)).collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        let all: Vec<usize> = (0..nv).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut queue = vec![all];
        while let Some(face) = queue.pop() {
            for g in &generators {
                let meet: Vec<usize> = face.iter().copied().filter(|v| g.binary_search(v).is_ok()).collect();
                if !meet.is_empty() && seen.insert(meet.clone()) {
                    queue.push(meet);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Nearest point and squared Euclidean distance, exactly.
    ///
    /// The nearest point lies in the relative interior of some face and is
    /// the orthogonal projection onto that face's affine hull, so projecting
    /// onto every face and keeping the feasible candidates finds it.
    pub fn project(&self, x: &[Rational]) -> Option<(Vec<Rational>, Rational)> {
        assert_eq!(x.len(), self.ambient_dim);
        let mut best: Option<(Vec<Rational>, Rational)> = None;
        for face in self.faces() {
            let pts: Vec<Vec<Rational>> = face.iter().map(|&v| self.vertices[v].clone()).collect();
            let z = linalg::project_affine(x, &pts);
            if !self.contains(&z) {
                continue;
            }
            let d2 = linalg::norm_sq(&linalg::sub(x, &z));
            if best.as_ref().is_none_or(|(_, b)| d2 < *b) {
                let zero = d2.is_zero();
                best = Some((z, d2));
                if zero {
                    break;
                }
            }
        }
        best
    }

    /// Euclidean distance; `f64::INFINITY` for the empty polytope.
    pub fn distance(&self, x: &[Rational]) -> f64 {
        self.project(x)
            .map_or(f64::INFINITY, |(_, d2)| rational::to_f64(&d2).sqrt())
    }

    pub fn distance_sq(&self, x: &[Rational]) -> Option<Rational> {
        self.project(x).map(|(_, d2)| d2)
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim)
        .map(|k| if k == i { Rational::one() } else { Rational::zero() })
        .collect()
}
