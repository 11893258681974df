//! Exact counting of `(1/t)`-lattice points in closed faces and relative
//! interiors of rational polytopes.
//!
//! Counting a dilate `t` means counting integer points of the scaled system:
//! constraints are cleared to integer coefficients once, and a recursive
//! interval scan assigns one coordinate at a time, propagating exact bounds.
//! Points are ambient fractional points restricted to the face's affine span;
//! a face embedded with equality constraints (say `3z = 1`) therefore counts
//! nothing at dilates where the span misses the lattice.

use crate::polytope::{HPolytope, InsideOutPolytope};
use crate::rational::{ceil_times, clear_denominators, floor_times};
use crate::Result;
use num_integer::Integer;

/// Closed and open point counts of one dilate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DilateCount {
    pub t: u64,
    pub closed_count: u64,
    pub open_count: u64,
}

/// Number of `(1/t)`-points satisfying every constraint weakly.
pub fn count_closed(p: &HPolytope, t: u64) -> Result<u64> {
    Ok(Counter::new(p)?.count(t, Strictness::Closed))
}

/// Number of `(1/t)`-points in the relative interior: inequalities that are
/// not tight on the whole face are strict, implicit equalities stay tight.
pub fn count_open(p: &HPolytope, t: u64) -> Result<u64> {
    Ok(Counter::new(p)?.count(t, Strictness::Open))
}

/// Open-polytope points avoiding every arrangement hyperplane.  This is the
/// inside-out count by direct scanning, independent of the Ehrhart-series
/// pipeline, and serves as its oracle.
pub fn count_open_off_arrangement(iop: &InsideOutPolytope, t: u64) -> Result<u64> {
    Ok(Counter::with_arrangement(&iop.polytope, &iop.arrangement)?.count(t, Strictness::Open))
}

/// Both counts of one dilate.
pub fn dilate_count(p: &HPolytope, t: u64) -> Result<DilateCount> {
    let c = Counter::new(p)?;
    let closed = c.count(t, Strictness::Closed);
    let open = c.count(t, Strictness::Open);
    debug_assert!(open <= closed);
    Ok(DilateCount {
        t,
        closed_count: closed,
        open_count: open,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Strictness {
    Closed,
    Open,
}

struct IntConstraint {
    normal: Vec<i64>,
    offset: i64,
    /// index of the last nonzero coefficient; the constraint binds there
    last_var: usize,
    /// tight on the whole polytope, so an equality even in the open count
    implicit: bool,
}

/// Scaled-integer view of a polytope, reusable across dilates `t`.
pub struct Counter {
    dim: usize,
    empty: bool,
    equalities: Vec<IntConstraint>,
    inequalities: Vec<IntConstraint>,
    /// per-coordinate rational bounds from the vertex set
    bounds: Vec<(crate::Rat, crate::Rat)>,
    /// scaled arrangement hyperplanes checked at leaves
    arrangement: Vec<(Vec<i64>, i64)>,
}

impl Counter {
    pub fn new(p: &HPolytope) -> Result<Self> {
        Self::with_arrangement(p, &[])
    }

    pub fn with_arrangement(
        p: &HPolytope,
        arrangement: &[crate::polytope::Hyperplane],
    ) -> Result<Self> {
        let vertices = p.vertices()?;
        if vertices.is_empty() {
            return Ok(Counter {
                dim: p.ambient_dim,
                empty: true,
                equalities: vec![],
                inequalities: vec![],
                bounds: vec![],
                arrangement: vec![],
            });
        }
        let implicit = p.implicit_equalities_given(&vertices);
        let make = |h: &crate::polytope::Hyperplane, implicit: bool| {
            let (normal, offset) = clear_denominators(&h.normal, &h.offset);
            let last_var = normal.iter().rposition(|&c| c != 0).expect("zero normal");
            IntConstraint {
                normal,
                offset,
                last_var,
                implicit,
            }
        };
        let equalities = p.equalities.iter().map(|h| make(h, true)).collect();
        let inequalities = p
            .inequalities
            .iter()
            .zip(&implicit)
            .map(|(h, &im)| make(h, im))
            .collect();
        let bounds = (0..p.ambient_dim)
            .map(|j| {
                let lo = vertices.iter().map(|v| v[j].clone()).min().unwrap();
                let hi = vertices.iter().map(|v| v[j].clone()).max().unwrap();
                (lo, hi)
            })
            .collect();
        let arrangement = arrangement
            .iter()
            .map(|h| clear_denominators(&h.normal, &h.offset))
            .collect();
        Ok(Counter {
            dim: p.ambient_dim,
            empty: false,
            equalities,
            inequalities,
            bounds,
            arrangement,
        })
    }

    pub fn closed(&self, t: u64) -> u64 {
        self.count(t, Strictness::Closed)
    }

    pub fn open(&self, t: u64) -> u64 {
        self.count(t, Strictness::Open)
    }

    fn count(&self, t: u64, strictness: Strictness) -> u64 {
        if self.empty {
            return 0;
        }
        let t = t as i64;
        let mut point = vec![0i64; self.dim];
        self.scan(t, strictness, 0, &mut point)
    }

    fn scan(&self, t: i64, strictness: Strictness, depth: usize, point: &mut Vec<i64>) -> u64 {
        if depth == self.dim {
            for (normal, offset) in &self.arrangement {
                let v: i64 = normal.iter().zip(point.iter()).map(|(a, x)| a * x).sum();
                if v == offset * t {
                    return 0;
                }
            }
            return 1;
        }
        let mut lo = ceil_times(&self.bounds[depth].0, t);
        let mut hi = floor_times(&self.bounds[depth].1, t);
        let mut pinned: Option<i64> = None;

        for c in self.equalities.iter().filter(|c| c.last_var == depth) {
            let rest: i64 = c.normal[..depth]
                .iter()
                .zip(point.iter())
                .map(|(a, x)| a * x)
                .sum();
            let num = c.offset * t - rest;
            let a = c.normal[depth];
            if num % a != 0 {
                return 0;
            }
            let v = num / a;
            match pinned {
                Some(w) if w != v => return 0,
                _ => pinned = Some(v),
            }
        }
        for c in self.inequalities.iter().filter(|c| c.last_var == depth) {
            let rest: i64 = c.normal[..depth]
                .iter()
                .zip(point.iter())
                .map(|(a, x)| a * x)
                .sum();
            let mut num = c.offset * t - rest;
            let a = c.normal[depth];
            if c.implicit {
                // equality on the face regardless of strictness
                if num % a != 0 {
                    return 0;
                }
                let v = num / a;
                match pinned {
                    Some(w) if w != v => return 0,
                    _ => pinned = Some(v),
                }
                continue;
            }
            if strictness == Strictness::Open {
                num -= 1;
            }
            if a > 0 {
                hi = hi.min(Integer::div_floor(&num, &a));
            } else {
                lo = lo.max(Integer::div_ceil(&num, &a));
            }
        }

        if let Some(v) = pinned {
            if v < lo || v > hi {
                return 0;
            }
            lo = v;
            hi = v;
        }

        let mut total = 0;
        for v in lo..=hi {
            point[depth] = v;
            total += self.scan(t, strictness, depth + 1, point);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{HPolytope, Hyperplane, InsideOutPolytope};

    fn interval01() -> HPolytope {
        let mut p = HPolytope::new(1);
        p.push_inequality(Hyperplane::from_ints(&[-1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1], 1, 1));
        p
    }

    fn unit_square() -> HPolytope {
        let mut p = HPolytope::new(2);
        p.push_inequality(Hyperplane::from_ints(&[-1, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, 0], 1, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, -1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, 1], 1, 1));
        p
    }

    /// Q_a for reduced normalized semimagic squares by magic sum.
    fn semimagic_affine_reduced() -> HPolytope {
        let mut p = HPolytope::new(3);
        p.push_inequality(Hyperplane::from_ints(&[-1, 0, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, 0, -1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[0, -1, 1], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, 1, 0], 1, 2));
        p
    }

    /// Doubly stochastic 3x3 matrices in coordinates (x11, x12, x21, x22).
    fn birkhoff() -> HPolytope {
        let mut p = HPolytope::new(4);
        let rows: [(&[i64; 4], i64); 9] = [
            (&[-1, 0, 0, 0], 0),
            (&[0, -1, 0, 0], 0),
            (&[0, 0, -1, 0], 0),
            (&[0, 0, 0, -1], 0),
            (&[1, 1, 0, 0], 1),      // x13 >= 0
            (&[0, 0, 1, 1], 1),      // x23 >= 0
            (&[1, 0, 1, 0], 1),      // x31 >= 0
            (&[0, 1, 0, 1], 1),      // x32 >= 0
            (&[-1, -1, -1, -1], -1), // x33 >= 0
        ];
        for (n, b) in rows {
            p.push_inequality(Hyperplane::from_ints(n, b, 1));
        }
        p
    }

    #[test]
    fn square_grid() {
        assert_eq!(count_closed(&unit_square(), 2).unwrap(), 9);
        assert_eq!(count_open(&unit_square(), 2).unwrap(), 1);
    }

    #[test]
    fn open_interval() {
        assert_eq!(count_open(&interval01(), 5).unwrap(), 4);
        assert_eq!(count_closed(&interval01(), 5).unwrap(), 6);
    }

    #[test]
    fn birkhoff_weak_counts() {
        // MacMahon's polynomial (t^4 - 6t^3 + 15t^2 - 18t + 8)/8 counts the
        // positive squares, i.e. the open count; at t = 3 only all-ones.
        assert_eq!(count_open(&birkhoff(), 3).unwrap(), 1);
        for t in 1..=8u64 {
            let ti = t as i64;
            let expected = (ti.pow(4) - 6 * ti.pow(3) + 15 * ti * ti - 18 * ti + 8) / 8;
            assert_eq!(count_open(&birkhoff(), t).unwrap() as i64, expected);
        }
        // closed count at 3 via reciprocity: E(3) = E_open(6) = 55
        assert_eq!(count_closed(&birkhoff(), 3).unwrap(), 55);
    }

    #[test]
    fn zero_when_lattice_misses() {
        // segment z = 1/3, 0 <= x <= z in the plane: empty unless 3 | t
        let mut p = HPolytope::new(2);
        p.push_equality(Hyperplane::from_ints(&[0, 3], 1, 1));
        p.push_inequality(Hyperplane::from_ints(&[-1, 0], 0, 1));
        p.push_inequality(Hyperplane::from_ints(&[1, -1], 0, 1));
        assert_eq!(count_closed(&p, 4).unwrap(), 0);
        assert_eq!(count_closed(&p, 6).unwrap(), 3);
    }

    #[test]
    fn reduced_normal_affine_interior_counts() {
        // binom(floor((s-1)/2), 3) from the direct summation formula
        let q = semimagic_affine_reduced();
        let expected = |s: i64| {
            let m = (s - 1).div_euclid(2);
            (m * (m - 1) * (m - 2) / 6).max(0)
        };
        for s in 1..=30u64 {
            assert_eq!(count_open(&q, s).unwrap() as i64, expected(s as i64), "s = {s}");
        }
        assert_eq!(count_open(&q, 7).unwrap(), 1);
        assert_eq!(count_open(&q, 6).unwrap(), 0);
    }

    #[test]
    fn open_never_exceeds_closed() {
        let q = semimagic_affine_reduced();
        for t in 1..=20 {
            let d = dilate_count(&q, t).unwrap();
            assert!(d.open_count <= d.closed_count);
        }
    }

    #[test]
    fn closed_counts_monotone_along_denominator_multiples() {
        let q = semimagic_affine_reduced(); // vertex denominator 2
        let mut prev = 0;
        for k in 1..=12 {
            let c = count_closed(&q, 2 * k).unwrap();
            assert!(c >= prev, "k = {k}");
            prev = c;
        }
    }

    #[test]
    fn off_arrangement_counts() {
        let iop = crate::polytope::tests::magic_cubic();
        assert_eq!(count_open_off_arrangement(&iop, 10).unwrap(), 1);
        // empty arrangement degenerates to the plain open count
        let plain = InsideOutPolytope::new(iop.polytope.clone(), vec![]);
        for t in 1..=15 {
            assert_eq!(
                count_open_off_arrangement(&plain, t).unwrap(),
                count_open(&iop.polytope, t).unwrap()
            );
        }
    }

    #[test]
    fn face_relative_interior() {
        // the x = 0 edge of the unit square, via an implicit equality
        let mut p = unit_square();
        p.push_inequality(Hyperplane::from_ints(&[1, 0], 0, 1)); // x <= 0
        assert_eq!(count_open(&p, 4).unwrap(), 3); // (0, 1/4..3/4)
        assert_eq!(count_closed(&p, 4).unwrap(), 5);
    }
}
