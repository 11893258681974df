//! Ehrhart series of faces, intersection posets with Möbius functions, and
//! the two Möbius-inversion routes for open inside-out series.
//!
//! Series are computed by count-and-solve: pick a denominator that theory
//! guarantees (vertex denominators for a simplex, `(1-x^p)^{dim+1}` with `p`
//! the face denominator otherwise), multiply the counted series by it to get
//! the numerator, and then verify several extra counts against the fitted
//! series.  Exact counting is cheap at these dimensions, and the extra counts
//! guard against an underestimated denominator.

use crate::lattice::Counter;
use crate::linalg;
use crate::polytope::{centroid, denominator, powerset, HPolytope, InsideOutPolytope, Point};
use crate::ratfunc::RationalGF;
use crate::rational::{int_to_json, point_denominator, rat_to_json};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// One element of an intersection poset: a flat `P° ∩ ⋂S` keyed by its
/// closed face, with its codimension and Möbius value `μ(0̂, u)`.
#[derive(Debug, Clone)]
pub struct Flat {
    pub face: HPolytope,
    pub vertices: Vec<Point>,
    pub dim: usize,
    pub codim: usize,
    pub moebius: i64,
}

/// Flats of `(P°, H)` ordered by reverse inclusion; element 0 is the bottom
/// `P°` itself.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    pub flats: Vec<Flat>,
    /// `below[i][j]`: flat i contains flat j, i.e. i <= j in the poset.
    pub below: Vec<Vec<bool>>,
}

impl IntersectionPoset {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn bottom(&self) -> &Flat {
        &self.flats[0]
    }

    /// Möbius recursion sanity: sums to zero over every proper lower interval.
    pub fn moebius_sums_vanish(&self) -> bool {
        (1..self.len()).all(|u| {
            let s: i64 = (0..self.len())
                .filter(|&v| self.below[v][u])
                .map(|v| self.flats[v].moebius)
                .sum();
            s == 0
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .flats
            .iter()
            .map(|f| serde_json::json!({
                "codim": f.codim,
                "dim": f.dim,
                "moebius": f.moebius,
                "vertices": f
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(rat_to_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>())
    }
}

/// All distinct nonempty flats `P° ∩ ⋂S` over subsets `S` of the arrangement,
/// ordered by reverse inclusion, with Möbius values from the recursion
/// `μ(0̂,u) = -Σ_{v<u} μ(0̂,v)`.
///
/// Flats are deduplicated by their closed face (equivalently their affine
/// span), since several subsets can cut out the same flat.  Subsets whose
/// intersection misses the open polytope are discarded.
pub fn intersection_poset(iop: &InsideOutPolytope) -> Result<IntersectionPoset> {
    let p = &iop.polytope;
    let base_vertices = p.vertices()?;
    if base_vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let implicit = p.implicit_equalities_given(&base_vertices);
    let p_dim = p.dim_given(&base_vertices);

    let mut flats: Vec<Flat> = Vec::new();
    for subset in powerset(iop.arrangement.len()) {
        let extra: Vec<_> = subset.iter().map(|&i| iop.arrangement[i].clone()).collect();
        let cut = p.with_equalities(&extra);
        let vertices = cut.vertices()?;
        if vertices.is_empty() {
            continue;
        }
        // the flat must meet the relative interior of P
        let c = centroid(&vertices);
        let in_relint = p
            .inequalities
            .iter()
            .zip(&implicit)
            .all(|(h, &im)| im || h.eval(&c) < h.offset);
        if !in_relint {
            continue;
        }
        if flats.iter().any(|f| f.vertices == vertices) {
            continue;
        }
        let dim = linalg::affine_dim(&vertices).max(0) as usize;
        flats.push(Flat {
            face: cut,
            vertices,
            dim,
            codim: p_dim - dim,
            moebius: 0,
        });
    }
    flats.sort_by(|a, b| a.codim.cmp(&b.codim).then_with(|| a.vertices.cmp(&b.vertices)));
    if flats[0].codim != 0 {
        return Err(Error::Internal("poset bottom missing"));
    }

    let n = flats.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            // i <= j in reverse inclusion: flat j inside flat i
            below[i][j] = flats[j]
                .vertices
                .iter()
                .all(|v| linalg::affine_hull_contains(&flats[i].vertices, v));
        }
    }
    flats[0].moebius = 1;
    for u in 1..n {
        let s: i64 = (0..n)
            .filter(|&v| v != u && below[v][u])
            .map(|v| flats[v].moebius)
            .sum();
        flats[u].moebius = -s;
    }
    let poset = IntersectionPoset { flats, below };
    debug_assert!(poset.moebius_sums_vanish());
    Ok(poset)
}

/// Closed Ehrhart series `E_F(x) = 1 + Σ_{t>=1} E_F(t) x^t` of a nonempty
/// bounded face, as an exact rational function.
pub fn ehrhart_series(face: &HPolytope) -> Result<RationalGF> {
    let vertices = face.vertices()?;
    if vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let dim = face.dim_given(&vertices);
    let to_u64 = |b: &BigInt| b.to_u64().expect("denominator fits u64");
    let denom: Vec<u64> = if vertices.len() == dim + 1 {
        vertices.iter().map(|v| to_u64(&point_denominator(v))).collect()
    } else {
        let p = to_u64(&denominator(&vertices)?);
        vec![p; dim + 1]
    };
    let deg: u64 = denom.iter().sum();
    let extra = dim as u64 + 2;

    let counter = Counter::new(face)?;
    let counts: Vec<BigInt> = (0..=deg + extra)
        .map(|t| BigInt::from(counter.closed(t)))
        .collect();
    let den_poly = crate::ratfunc::den_to_poly(&denom);
    // numerator = denominator polynomial * series, which must terminate at deg
    let mut numer = vec![BigInt::zero(); (deg + 1) as usize];
    for j in 0..=(deg + extra) as usize {
        let mut acc = BigInt::zero();
        for (k, dk) in den_poly.iter().enumerate() {
            if k > j {
                break;
            }
            acc += dk * &counts[j - k];
        }
        if j <= deg as usize {
            numer[j] = acc;
        } else if !acc.is_zero() {
            return Err(Error::PeriodHint);
        }
    }
    Ok(RationalGF::new(numer, denom))
}

/// Ehrhart reciprocity on series: `E_{F°}(x) = (-1)^{1+dim} E_F(1/x)`,
/// normalized back to numerator-over-`(1-x^a)` form.  An involution.
pub fn open_series_via_reciprocity(f: &RationalGF, dim: usize) -> RationalGF {
    if f.is_zero() {
        return RationalGF::zero();
    }
    let factors = f.denom_factors().to_vec();
    let total: u64 = factors.iter().sum();
    let numer = f.numerator();
    let deg = numer.len() as u64 - 1;
    assert!(total >= deg, "series must be proper");
    let shift = (total - deg) as usize;
    let mut out = vec![BigInt::zero(); shift + numer.len()];
    for (i, c) in numer.iter().enumerate() {
        out[shift + numer.len() - 1 - i] = c.clone();
    }
    let sign = if (1 + dim + factors.len()) % 2 == 1 {
        -1
    } else {
        1
    };
    RationalGF::new(out, factors).scale_int(sign)
}

/// Closed inside-out series `Σ_u |μ(0̂,u)| E_u(x)`, the intermediate of the
/// reciprocity-last route.
pub fn closed_inside_out_series(iop: &InsideOutPolytope) -> Result<RationalGF> {
    let poset = intersection_poset(iop)?;
    closed_series_over_poset(&poset)
}

fn closed_series_over_poset(poset: &IntersectionPoset) -> Result<RationalGF> {
    let mut sum = RationalGF::zero();
    for flat in &poset.flats {
        let e = ehrhart_series(&flat.face)?;
        sum = sum.add(&e.scale_int(flat.moebius.abs()));
    }
    Ok(sum)
}

/// Open inside-out series `E°_{P°,H}(x) = Σ_u μ(0̂,u) E_{u°}(x)`.
///
/// Computed by both routes -- reciprocity per flat then Möbius sum, and
/// Möbius sum of closed series then one reciprocity -- which must agree.
pub fn open_inside_out_series(iop: &InsideOutPolytope) -> Result<RationalGF> {
    let poset = intersection_poset(iop)?;
    let mut by_flat = RationalGF::zero();
    for flat in &poset.flats {
        let closed = ehrhart_series(&flat.face)?;
        let open = open_series_via_reciprocity(&closed, flat.dim);
        by_flat = by_flat.add(&open.scale_int(flat.moebius));
    }
    let closed_sum = closed_series_over_poset(&poset)?;
    let by_reciprocity = open_series_via_reciprocity(&closed_sum, poset.bottom().dim);
    if !by_flat.equivalent(&by_reciprocity) {
        return Err(Error::RouteMismatch);
    }
    Ok(by_flat)
}

/// Geometry summary used by the CLI: vertices, denominator, poset.
pub fn geometry_json(iop: &InsideOutPolytope) -> Result<serde_json::Value> {
    let vertices = iop.inside_out_vertices()?;
    let poset = intersection_poset(iop)?;
    Ok(serde_json::json!({
        "vertices": vertices
            .iter()
            .map(|v| v.iter().map(rat_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "denominator": int_to_json(&denominator(&vertices)?),
        "poset": poset.to_json(),
    }))
}
