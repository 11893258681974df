//! Rational polytopes in H-representation, their faces, and inside-out
//! polytopes (a polytope paired with a hyperplane arrangement to avoid).
//!
//! Vertex enumeration works by exhaustive tight-subset solving: pick as many
//! inequalities as the dimension of the affine span, solve the resulting
//! square system exactly, and keep feasible unique solutions.  This is
//! quadratic-exponential in general but these polytopes live in dimension
//! at most five.

use crate::linalg;
use crate::rational::{point_denominator, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

pub type Point = Vec<Rat>;

/// An affine hyperplane `normal . x = offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        assert!(
            normal.iter().any(|c| !c.is_zero()),
            "hyperplane normal must be nonzero"
        );
        Hyperplane { normal, offset }
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(normal: &[i64], num: i64, den: i64) -> Self {
        Self::new(
            normal.iter().map(|&c| crate::rational::rat_int(c)).collect(),
            crate::rational::rat(num, den),
        )
    }

    pub fn eval(&self, p: &[Rat]) -> Rat {
        self.normal
            .iter()
            .zip(p)
            .map(|(a, x)| a * x)
            .fold(Rat::zero(), |acc, v| acc + v)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.eval(p) == self.offset
    }
}

/// A bounded rational polyhedron `{ x : E x = f, A x <= b }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub ambient_dim: usize,
    pub equalities: Vec<Hyperplane>,
    pub inequalities: Vec<Hyperplane>,
}

impl HPolytope {
    pub fn new(ambient_dim: usize) -> Self {
        HPolytope {
            ambient_dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn push_equality(&mut self, h: Hyperplane) {
        assert_eq!(h.normal.len(), self.ambient_dim);
        self.equalities.push(h);
    }

    /// Adds `normal . x <= offset`.
    pub fn push_inequality(&mut self, h: Hyperplane) {
        assert_eq!(h.normal.len(), self.ambient_dim);
        self.inequalities.push(h);
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.equalities.iter().all(|h| h.eval(p) == h.offset)
            && self.inequalities.iter().all(|h| h.eval(p) <= h.offset)
    }

    /// The polytope with extra equality constraints appended.
    pub fn with_equalities(&self, extra: &[Hyperplane]) -> HPolytope {
        let mut p = self.clone();
        for h in extra {
            p.push_equality(h.clone());
        }
        p
    }

    fn equality_rows(&self) -> Vec<Vec<Rat>> {
        self.equalities.iter().map(|h| h.normal.clone()).collect()
    }

    /// Exact vertex set, deduplicated, in lexicographic order.
    ///
    /// Returns `Err(Unbounded)` when the feasible region recedes to infinity
    /// and an empty list when it is empty.
    pub fn vertices(&self) -> Result<Vec<Point>> {
        let span_dim = self.ambient_dim - linalg::rank(&self.equality_rows());

        let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for subset in combinations(self.inequalities.len(), span_dim) {
            let mut rows = self.equality_rows();
            let mut rhs: Vec<Rat> = self.equalities.iter().map(|h| h.offset.clone()).collect();
            for &i in &subset {
                rows.push(self.inequalities[i].normal.clone());
                rhs.push(self.inequalities[i].offset.clone());
            }
            if let Some(x) = linalg::solve_unique(&rows, &rhs) {
                if self.contains(&x) {
                    found.insert(x);
                }
            }
        }

        if found.is_empty() {
            // A nonempty pointed polyhedron has a vertex, so either the region
            // is empty or it contains a line.
            let all_rows: Vec<Vec<Rat>> = self
                .equality_rows()
                .into_iter()
                .chain(self.inequalities.iter().map(|h| h.normal.clone()))
                .collect();
            let lineality = linalg::null_space(&all_rows);
            if !lineality.is_empty() && self.feasible() {
                return Err(Error::Unbounded);
            }
            return Ok(vec![]);
        }

        if span_dim > 0 && self.has_recession_ray(span_dim) {
            return Err(Error::Unbounded);
        }
        Ok(found.into_iter().collect())
    }

    /// Looks for a nonzero recession direction `d` with `E d = 0, A d <= 0`.
    /// Any extreme ray is cut out by span_dim - 1 tight inequalities, so the
    /// subset search is exhaustive for pointed regions.
    fn has_recession_ray(&self, span_dim: usize) -> bool {
        for subset in combinations(self.inequalities.len(), span_dim - 1) {
            let mut rows = self.equality_rows();
            for &i in &subset {
                rows.push(self.inequalities[i].normal.clone());
            }
            let ns = linalg::null_space(&rows);
            if ns.len() != 1 {
                continue;
            }
            let d = &ns[0];
            for cand in [d.clone(), d.iter().map(|c| -c).collect::<Vec<_>>()] {
                let recedes = self
                    .inequalities
                    .iter()
                    .all(|h| h.eval(&cand) <= Rat::zero());
                if recedes {
                    return true;
                }
            }
        }
        false
    }

    /// Exact feasibility by Fourier-Motzkin elimination.  Only used in the
    /// degenerate no-vertex case; sizes stay tiny there.
    fn feasible(&self) -> bool {
        let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for h in &self.inequalities {
            ineqs.push((h.normal.clone(), h.offset.clone()));
        }
        for h in &self.equalities {
            ineqs.push((h.normal.clone(), h.offset.clone()));
            ineqs.push((
                h.normal.iter().map(|c| -c).collect(),
                -h.offset.clone(),
            ));
        }
        for v in 0..self.ambient_dim {
            let (mut pos, mut neg, mut rest) = (vec![], vec![], vec![]);
            for (n, b) in ineqs {
                if n[v].is_zero() {
                    rest.push((n, b));
                } else if n[v] > Rat::zero() {
                    pos.push((n, b));
                } else {
                    neg.push((n, b));
                }
            }
            for (pn, pb) in &pos {
                for (nn, nb) in &neg {
                    // scale so the v-coefficients cancel
                    let a = pn[v].clone();
                    let c = -nn[v].clone();
                    let n: Vec<Rat> = pn
                        .iter()
                        .zip(nn)
                        .map(|(p, q)| p * &c + q * &a)
                        .collect();
                    let b = pb * &c + nb * &a;
                    rest.push((n, b));
                }
            }
            ineqs = rest;
            ineqs.dedup();
        }
        ineqs.iter().all(|(_, b)| b >= &Rat::zero())
    }

    /// For each inequality, whether it is tight on the whole polytope
    /// (equivalently at every vertex).  Such constraints are implicit
    /// equalities and stay equalities in the relative interior.
    pub fn implicit_equalities_given(&self, vertices: &[Point]) -> Vec<bool> {
        self.inequalities
            .iter()
            .map(|h| vertices.iter().all(|v| h.eval(v) == h.offset))
            .collect()
    }

    /// Dimension of the affine span, from the vertex set.
    pub fn dim_given(&self, vertices: &[Point]) -> usize {
        linalg::affine_dim(vertices).max(0) as usize
    }
}

/// A face of a polytope, named by the set of inequalities made tight.
#[derive(Debug, Clone)]
pub struct Face {
    pub parent: HPolytope,
    pub tight: BTreeSet<usize>,
}

impl Face {
    pub fn new(parent: HPolytope, tight: impl IntoIterator<Item = usize>) -> Self {
        let tight: BTreeSet<usize> = tight.into_iter().collect();
        assert!(tight.iter().all(|&i| i < parent.inequalities.len()));
        Face { parent, tight }
    }

    /// The face as its own polytope: tight inequalities become equalities.
    pub fn as_polytope(&self) -> HPolytope {
        let mut p = HPolytope::new(self.parent.ambient_dim);
        p.equalities = self.parent.equalities.clone();
        for (i, h) in self.parent.inequalities.iter().enumerate() {
            if self.tight.contains(&i) {
                p.equalities.push(h.clone());
            } else {
                p.inequalities.push(h.clone());
            }
        }
        p
    }
}

/// A polytope together with the hyperplanes its open interior must avoid.
#[derive(Debug, Clone)]
pub struct InsideOutPolytope {
    pub polytope: HPolytope,
    pub arrangement: Vec<Hyperplane>,
}

impl InsideOutPolytope {
    pub fn new(polytope: HPolytope, arrangement: Vec<Hyperplane>) -> Self {
        InsideOutPolytope {
            polytope,
            arrangement,
        }
    }

    /// Vertices of the inside-out polytope: vertices of `P` itself, plus every
    /// point where facets of `P` and arrangement hyperplanes intersect inside
    /// `P`, plus arrangement-only intersection points lying in `P`.
    pub fn inside_out_vertices(&self) -> Result<Vec<Point>> {
        let mut all: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for subset in powerset(self.arrangement.len()) {
            let extra: Vec<Hyperplane> = subset
                .iter()
                .map(|&i| self.arrangement[i].clone())
                .collect();
            let cut = self.polytope.with_equalities(&extra);
            for v in cut.vertices()? {
                all.insert(v);
            }
        }
        Ok(all.into_iter().collect())
    }

    /// Least common denominator of all inside-out vertex coordinates.  The
    /// period of the counting quasipolynomial divides this number.
    pub fn denominator(&self) -> Result<BigInt> {
        denominator(&self.inside_out_vertices()?)
    }
}

/// Least common multiple of all coordinate denominators of `points`.
pub fn denominator(points: &[Point]) -> Result<BigInt> {
    if points.is_empty() {
        return Err(Error::NoVertices);
    }
    Ok(points
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&point_denominator(p))))
}

/// Arithmetic mean of a nonempty point set; lands in the relative interior
/// when the points are the vertices of a polytope.
pub fn centroid(points: &[Point]) -> Point {
    let n = Rat::from_integer(BigInt::from(points.len() as i64));
    let dim = points[0].len();
    (0..dim)
        .map(|j| {
            points
                .iter()
                .map(|p| p[j].clone())
                .fold(Rat::zero(), |a, b| a + b)
                / n.clone()
        })
        .collect()
}

/// All k-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All subsets of `0..n`, smallest first.
pub(crate) fn powerset(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(coords: &[(i64, i64)]) -> Point {
        coords.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    /// 0 <= x <= 1, 0 <= y <= 1.
    fn unit_square() -> HPolytope {
        let mut p = HPolytope::new(2);
        p.push_inequality(Hyperplane::from_ints(&[-1, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, 0], 1, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, -1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, 1], 1, 1));
        p
    }

    /// Magic cubic polytope: 0 <= y <= x, x + y <= z, x + y + z <= 1.
    pub(crate) fn magic_cubic() -> InsideOutPolytope {
        let mut p = HPolytope::new(3);
        p.push_inequality(Hyperplane::from_ints(&[0, -1, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[-1, 1, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, 1, -1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, 1, 1], 1, 1));
        InsideOutPolytope::new(p, vec![Hyperplane::from_ints(&[1, -2, 0], 0, 1)])
    }

    /// Reduced semimagic polytope, affine normalization:
    /// x, z >= 0, z <= y, x + y <= 1/2.
    fn semimagic_affine_reduced() -> HPolytope {
        let mut p = HPolytope::new(3);
        p.push_inequality(Hyperplane::from_ints(&[-1, 0, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, 0, -1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, -1, 1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, 1, 0], 1, 2));
        p
    }

    #[test]
    fn unit_square_vertices() {
        let vs = unit_square().vertices().unwrap();
        assert_eq!(
            vs,
            vec![
                pt(&[(0, 1), (0, 1)]),
                pt(&[(0, 1), (1, 1)]),
                pt(&[(1, 1), (0, 1)]),
                pt(&[(1, 1), (1, 1)]),
            ]
        );
    }

    #[test]
    fn magic_cubic_polytope_vertices() {
        // O, C, D, F from the cubic magic-square analysis
        let vs = magic_cubic().polytope.vertices().unwrap();
        let expected = vec![
            pt(&[(0, 1), (0, 1), (0, 1)]),
            pt(&[(0, 1), (0, 1), (1, 1)]),
            pt(&[(1, 4), (1, 4), (1, 2)]),
            pt(&[(1, 2), (0, 1), (1, 2)]),
        ];
        assert_eq!(vs.len(), 4);
        for v in expected {
            assert!(vs.contains(&v), "missing {:?}", v);
        }
    }

    #[test]
    fn semimagic_affine_reduced_vertices() {
        let vs = semimagic_affine_reduced().vertices().unwrap();
        let expected = vec![
            pt(&[(0, 1), (0, 1), (0, 1)]),
            pt(&[(1, 2), (0, 1), (0, 1)]),
            pt(&[(0, 1), (1, 2), (0, 1)]),
            pt(&[(0, 1), (1, 2), (1, 2)]),
        ];
        assert_eq!(vs.len(), 4);
        for v in expected {
            assert!(vs.contains(&v), "missing {:?}", v);
        }
    }

    #[test]
    fn magic_cubic_inside_out_vertices_and_denominator() {
        let iop = magic_cubic();
        let vs = iop.inside_out_vertices().unwrap();
        let e = pt(&[(1, 3), (1, 6), (1, 2)]);
        assert_eq!(vs.len(), 5);
        assert!(vs.contains(&e));
        assert_eq!(iop.denominator().unwrap(), BigInt::from(12));
    }

    #[test]
    fn empty_arrangement_gives_plain_vertices() {
        let p = unit_square();
        let iop = InsideOutPolytope::new(p.clone(), vec![]);
        assert_eq!(iop.inside_out_vertices().unwrap(), p.vertices().unwrap());
    }

    #[test]
    fn vertices_satisfy_constraints_exactly() {
        let iop = magic_cubic();
        for v in iop.inside_out_vertices().unwrap() {
            assert!(iop.polytope.contains(&v));
        }
    }

    #[test]
    fn unbounded_is_an_error() {
        let mut p = HPolytope::new(2);
        p.push_inequality(Hyperplane::from_ints(&[-1, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, -1], 0, 1));
        assert_eq!(p.vertices(), Err(Error::Unbounded));

        // a line: x free, y = 0 twice over
        let mut l = HPolytope::new(2);
        l.push_equality(Hyperplane::from_ints(&[0, 1], 0, 1));
        assert_eq!(l.vertices(), Err(Error::Unbounded));
    }

    #[test]
    fn empty_polytope_gives_empty_list() {
        let mut p = unit_square();
        p.push_inequality(Hyperplane::from_ints(&[1, 0], -1, 1)); // x <= -1
        assert_eq!(p.vertices(), Ok(vec![]));
        assert_eq!(denominator(&[]), Err(Error::NoVertices));
    }

    #[test]
    fn vertex_set_ignores_constraint_order() {
        let p = unit_square();
        let mut q = HPolytope::new(2);
        for i in [3, 1, 0, 2] {
            q.push_inequality(p.inequalities[i].clone());
        }
        assert_eq!(p.vertices().unwrap(), q.vertices().unwrap());
    }

    #[test]
    fn face_promotes_tight_inequalities() {
        let p = unit_square();
        let f = Face::new(p, [0]); // x = 0 edge
        let fp = f.as_polytope();
        assert_eq!(fp.equalities.len(), 1);
        let vs = fp.vertices().unwrap();
        assert_eq!(vs, vec![pt(&[(0, 1), (0, 1)]), pt(&[(0, 1), (1, 1)])]);
    }
}
