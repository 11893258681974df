//! The six built-in counting problems: 3x3 magic, semimagic, and magilatin
//! squares, each counted cubically (strict upper bound t on the entries) or
//! affinely (magic sum t).
//!
//! Magic squares are handled directly on their inside-out polytope with the
//! 8-fold dihedral symmetry factored out.  Semimagic and magilatin squares go
//! through the reduced normal form: a 3-dimensional polytope Q with seven
//! excluded planes, whose open inside-out series is reassembled into the full
//! count by a convolution (`x^2/(1-x)^2` for cubic counts, `x^3/(1-x^3)` for
//! affine ones).  Magilatin squares additionally count three facets and one
//! edge of Q with their induced arrangements and smaller symmetry weights.

use crate::ehrhart::{ehrhart_series, open_inside_out_series, open_series_via_reciprocity};
use crate::linalg;
use crate::polytope::{centroid, Face, HPolytope, Hyperplane, InsideOutPolytope};
use crate::ratfunc::{Quasipolynomial, RationalGF};
use crate::rational::{format_rat, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Magic,
    Semimagic,
    Magilatin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    /// strict upper bound on the entries
    Cubic,
    /// prescribed magic sum
    Affine,
}

/// One of the six problems, addressable by keys like `semimagic-cubic`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemId {
    pub family: Family,
    pub parameter: Parameter,
}

impl ProblemId {
    pub const ALL: [ProblemId; 6] = [
        ProblemId::new(Family::Magic, Parameter::Cubic),
        ProblemId::new(Family::Magic, Parameter::Affine),
        ProblemId::new(Family::Semimagic, Parameter::Cubic),
        ProblemId::new(Family::Semimagic, Parameter::Affine),
        ProblemId::new(Family::Magilatin, Parameter::Cubic),
        ProblemId::new(Family::Magilatin, Parameter::Affine),
    ];

    pub const fn new(family: Family, parameter: Parameter) -> Self {
        ProblemId { family, parameter }
    }

    pub fn key(&self) -> &'static str {
        match (self.family, self.parameter) {
            (Family::Magic, Parameter::Cubic) => "magic-cubic",
            (Family::Magic, Parameter::Affine) => "magic-affine",
            (Family::Semimagic, Parameter::Cubic) => "semimagic-cubic",
            (Family::Semimagic, Parameter::Affine) => "semimagic-affine",
            (Family::Magilatin, Parameter::Cubic) => "magilatin-cubic",
            (Family::Magilatin, Parameter::Affine) => "magilatin-affine",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for ProblemId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ProblemId::ALL
            .into_iter()
            .find(|id| id.key() == s)
            .ok_or_else(|| format!("unknown problem `{s}`"))
    }
}

/// Which quantity to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    /// all squares
    All,
    /// symmetry classes of squares
    SymmetryTypes,
    /// reduced squares (minimum entry zero), by maximum entry or magic sum
    Reduced,
    /// symmetry classes of reduced squares
    ReducedSymmetryTypes,
}

impl CountMode {
    pub const ALL: [CountMode; 4] = [
        CountMode::All,
        CountMode::SymmetryTypes,
        CountMode::Reduced,
        CountMode::ReducedSymmetryTypes,
    ];

    pub fn key(&self) -> &'static str {
        match self {
            CountMode::All => "all",
            CountMode::SymmetryTypes => "sym",
            CountMode::Reduced => "reduced",
            CountMode::ReducedSymmetryTypes => "reduced-sym",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for CountMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CountMode::ALL
            .into_iter()
            .find(|m| m.key() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (use all, sym, reduced, reduced-sym)"))
    }
}

/// A piece of geometry contributing to a problem, with the number of squares
/// each of its counted points stands for (72/|stabilizer| for magilatin).
#[derive(Debug, Clone)]
pub struct WeightedPart {
    pub label: &'static str,
    pub iop: InsideOutPolytope,
    pub weight: i64,
}

/// A fully assembled problem: geometry parts, symmetry weights, and the
/// convolution that turns reduced counts into full counts.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub id: ProblemId,
    pub parts: Vec<WeightedPart>,
    /// order of the symmetry group acting on the squares
    pub group_order: i64,
    /// whether `parts` describe the reduced problem (semimagic, magilatin)
    /// or the full problem directly (magic)
    pub reduced_geometry: bool,
}

fn h(normal: &[i64], num: i64, den: i64) -> Hyperplane {
    Hyperplane::from_ints(normal, num, den)
}

/// Magic squares in normalized coordinates (x, y, z) = (alpha, beta, gamma)/t:
/// 0 <= y <= x, x + y <= z, and cubically x + y + z <= 1; affinely the magic
/// sum pins 3z = 1.  Distinctness leaves the single excluded plane x = 2y.
fn magic_geometry(parameter: Parameter) -> InsideOutPolytope {
    let mut p = HPolytope::new(3);
    p.push_inequality(h(&[0, -1, 0], 0, 1)); // y >= 0
    p.push_inequality(h(&[-1, 1, 0], 0, 1)); // y <= x
    p.push_inequality(h(&[1, 1, -1], 0, 1)); // x + y <= z
    match parameter {
        Parameter::Cubic => p.push_inequality(h(&[1, 1, 1], 1, 1)),
        Parameter::Affine => p.push_equality(h(&[0, 0, 3], 1, 1)),
    }
    InsideOutPolytope::new(p, vec![h(&[1, -2, 0], 0, 1)])
}

/// Reduced normalized semimagic squares in coordinates (x, y, z) =
/// (alpha, beta, delta) over the largest entry (cubic) or the magic sum
/// (affine).  The seven planes exclude the entry coincidences.
fn semimagic_reduced_geometry(parameter: Parameter) -> InsideOutPolytope {
    let mut q = HPolytope::new(3);
    q.push_inequality(h(&[-1, 0, 0], 0, 1)); // x >= 0
    q.push_inequality(h(&[0, 0, -1], 0, 1)); // z >= 0
    q.push_inequality(h(&[0, -1, 1], 0, 1)); // z <= y
    let planes = match parameter {
        Parameter::Cubic => {
            q.push_inequality(h(&[2, 1, 0], 1, 1)); // gamma >= 0
            vec![
                h(&[1, -1, 2], 0, 1),
                h(&[0, 1, -2], 0, 1),
                h(&[2, 0, 2], 1, 1),
                h(&[1, 0, 2], 1, 1),
                h(&[1, -1, 1], 0, 1),
                h(&[1, 1, 1], 1, 1),
                h(&[2, 1, 1], 1, 1),
            ]
        }
        Parameter::Affine => {
            q.push_inequality(h(&[2, 2, 0], 1, 1)); // gamma >= 0
            vec![
                h(&[1, -1, 2], 0, 1),
                h(&[0, 1, -2], 0, 1),
                h(&[2, 1, 2], 1, 1),
                h(&[1, 1, 2], 1, 1),
                h(&[1, -1, 1], 0, 1),
                h(&[1, 2, 1], 1, 1),
                h(&[2, 2, 1], 1, 1),
            ]
        }
    };
    InsideOutPolytope::new(q, planes)
}

/// Restricts the arrangement to a face of Q: keeps one representative per
/// distinct trace that meets the face's relative interior and cuts it
/// properly.  This reproduces the case analysis of the magilatin stabilizers
/// without hand-copying line equations.
fn induced_arrangement(face: &HPolytope, planes: &[Hyperplane]) -> Result<Vec<Hyperplane>> {
    let vertices = face.vertices()?;
    if vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let implicit = face.implicit_equalities_given(&vertices);
    let face_dim = face.dim_given(&vertices);
    let mut traces: Vec<Vec<crate::polytope::Point>> = Vec::new();
    let mut out = Vec::new();
    for plane in planes {
        let cut = face.with_equalities(std::slice::from_ref(plane));
        let cut_vertices = cut.vertices()?;
        if cut_vertices.is_empty() {
            continue;
        }
        if linalg::affine_dim(&cut_vertices).max(0) as usize == face_dim {
            continue; // contains the face, cuts nothing
        }
        let c = centroid(&cut_vertices);
        let meets_interior = face
            .inequalities
            .iter()
            .zip(&implicit)
            .all(|(g, &im)| im || g.eval(&c) < g.offset);
        if !meets_interior {
            continue;
        }
        if traces.contains(&cut_vertices) {
            continue;
        }
        traces.push(cut_vertices);
        out.push(plane.clone());
    }
    Ok(out)
}

/// The problem instance: exact constraint systems, arrangement hyperplanes,
/// symmetry weights, and reduction convolution.
pub fn instance(id: ProblemId) -> Result<ProblemInstance> {
    match id.family {
        Family::Magic => Ok(ProblemInstance {
            id,
            parts: vec![WeightedPart {
                label: "interior",
                iop: magic_geometry(id.parameter),
                weight: 8,
            }],
            group_order: 8,
            reduced_geometry: false,
        }),
        Family::Semimagic => Ok(ProblemInstance {
            id,
            parts: vec![WeightedPart {
                label: "interior",
                iop: semimagic_reduced_geometry(id.parameter),
                weight: 72,
            }],
            group_order: 72,
            reduced_geometry: true,
        }),
        Family::Magilatin => {
            let base = semimagic_reduced_geometry(id.parameter);
            // inequality indices in Q: 0 is x >= 0, 1 is z >= 0, 2 is z <= y
            let faces: [(&'static str, &[usize], i64); 4] = [
                ("facet-oab", &[1], 36),    // delta = 0 < alpha
                ("facet-oac", &[2], 36),    // delta = beta
                ("facet-obc", &[0], 36),    // alpha = 0 < delta
                ("edge-ob", &[0, 1], 12),   // alpha = delta = 0, cyclic latin squares
            ];
            let mut parts = vec![WeightedPart {
                label: "interior",
                iop: base.clone(),
                weight: 72,
            }];
            for (label, tight, weight) in faces {
                let poly = Face::new(base.polytope.clone(), tight.iter().copied()).as_polytope();
                let arrangement = induced_arrangement(&poly, &base.arrangement)?;
                parts.push(WeightedPart {
                    label,
                    iop: InsideOutPolytope::new(poly, arrangement),
                    weight,
                });
            }
            Ok(ProblemInstance {
                id,
                parts,
                group_order: 72,
                reduced_geometry: true,
            })
        }
    }
}

fn convolve(f: &RationalGF, parameter: Parameter) -> RationalGF {
    match parameter {
        Parameter::Cubic => f.convolve_upper_bound(),
        Parameter::Affine => f.convolve_magic_sum(),
    }
}

fn deconvolve(f: &RationalGF, parameter: Parameter) -> Result<RationalGF> {
    match parameter {
        Parameter::Cubic => f.deconvolve_upper_bound(),
        Parameter::Affine => f.deconvolve_magic_sum(),
    }
}

/// Generating function `sum_{t>0} N(t) x^t` of the requested count.
pub fn count_gf(id: ProblemId, mode: CountMode) -> Result<RationalGF> {
    let inst = instance(id)?;
    let mut weighted = RationalGF::zero();
    let mut unweighted = RationalGF::zero();
    for part in &inst.parts {
        let open = open_inside_out_series(&part.iop)?;
        weighted = weighted.add(&open.scale_int(part.weight));
        unweighted = unweighted.add(&open);
    }
    let gf = if inst.reduced_geometry {
        match mode {
            CountMode::All => convolve(&weighted, id.parameter),
            CountMode::SymmetryTypes => convolve(&unweighted, id.parameter),
            CountMode::Reduced => weighted,
            CountMode::ReducedSymmetryTypes => unweighted,
        }
    } else {
        match mode {
            CountMode::All => weighted,
            CountMode::SymmetryTypes => unweighted,
            CountMode::Reduced => deconvolve(&weighted, id.parameter)?,
            CountMode::ReducedSymmetryTypes => deconvolve(&unweighted, id.parameter)?,
        }
    };
    Ok(gf.reduced())
}

/// The counting quasipolynomial at its minimal period.
pub fn quasipolynomial(id: ProblemId, mode: CountMode) -> Result<Quasipolynomial> {
    count_gf(id, mode)?.to_quasipolynomial()
}

/// `|N_0(0)|`: the unsigned constant term of the principal constituent of the
/// all-squares count.  For magic and semimagic squares this is the number of
/// order types.
pub fn principal_constant(id: ProblemId) -> Result<BigInt> {
    let q = quasipolynomial(id, CountMode::All)?;
    let c = &q.principal()[0];
    if !c.denom().is_one() {
        return Err(Error::Internal("principal constant not an integer"));
    }
    Ok(c.numer().abs())
}

/// The correction term `S_7(t) = floor((t-1)/21) + [t = 10,13,16,17,19,20
/// (mod 21)]` used by the truncated presentation of the affine semimagic and
/// magilatin constituents.
pub fn s7_correction(t: i64) -> i64 {
    let indicator = matches!(t.rem_euclid(21), 10 | 13 | 16 | 17 | 19 | 20);
    (t - 1).div_euclid(21) + i64::from(indicator)
}

/// Weak-count polytope: same geometry with the distinctness arrangement
/// dropped, in the natural parametrization of all weak squares.
pub fn weak_polytope(id: ProblemId) -> HPolytope {
    match (id.family, id.parameter) {
        (Family::Magic, parameter) => {
            // coordinates (x, y, z) = (alpha, beta, gamma)/t; all nine entries
            // of the standard form lie in [0, 1]
            let entries: [[i64; 3]; 9] = [
                [1, 0, 1],
                [-1, -1, 1],
                [0, 1, 1],
                [-1, 1, 1],
                [0, 0, 1],
                [1, -1, 1],
                [0, -1, 1],
                [1, 1, 1],
                [-1, 0, 1],
            ];
            let mut p = HPolytope::new(3);
            for e in entries {
                let neg: Vec<i64> = e.iter().map(|c| -c).collect();
                p.push_inequality(h(&neg, 0, 1)); // entry >= 0
                if parameter == Parameter::Cubic {
                    p.push_inequality(h(&e, 1, 1)); // entry <= 1
                }
            }
            if parameter == Parameter::Affine {
                p.push_equality(h(&[0, 0, 3], 1, 1));
            }
            p
        }
        (_, parameter) => {
            // semimagic and magilatin weak squares coincide; coordinates are
            // (x11, x12, x21, x22, magic sum)/t, the remaining entries derived
            let entries: [[i64; 5]; 9] = [
                [1, 0, 0, 0, 0],
                [0, 1, 0, 0, 0],
                [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0],
                [-1, -1, 0, 0, 1],
                [0, 0, -1, -1, 1],
                [-1, 0, -1, 0, 1],
                [0, -1, 0, -1, 1],
                [1, 1, 1, 1, -1],
            ];
            match parameter {
                Parameter::Cubic => {
                    let mut p = HPolytope::new(5);
                    for e in entries {
                        let neg: Vec<i64> = e.iter().map(|c| -c).collect();
                        p.push_inequality(h(&neg, 0, 1));
                        p.push_inequality(h(&e, 1, 1));
                    }
                    p
                }
                Parameter::Affine => {
                    // magic sum pinned to 1, so work in the four free entries
                    let mut p = HPolytope::new(4);
                    for e in entries {
                        let n: Vec<i64> = e[..4].iter().map(|c| -c).collect();
                        p.push_inequality(h(&n, e[4], 1));
                    }
                    p
                }
            }
        }
    }
}

/// Quasipolynomial counting weak squares (entries positive, coincidences
/// allowed): the open Ehrhart quasipolynomial of the weak polytope.
pub fn weak_quasipolynomial(id: ProblemId) -> Result<Quasipolynomial> {
    let p = weak_polytope(id);
    let closed = ehrhart_series(&p)?;
    let dim = p.dim_given(&p.vertices()?);
    open_series_via_reciprocity(&closed, dim).to_quasipolynomial()
}

/// Least common denominator of the inside-out vertices over all parts.
pub fn instance_denominator(id: ProblemId) -> Result<BigInt> {
    let inst = instance(id)?;
    let mut l = BigInt::one();
    for part in &inst.parts {
        l = l.lcm(&part.iop.denominator()?);
    }
    Ok(l)
}

/// Per-coefficient period data for the strong and weak quasipolynomials of
/// one problem.  Exploration aid only; asserts nothing about the conjectured
/// divisibility relations.
#[derive(Debug, Clone)]
pub struct PeriodReport {
    pub problem: ProblemId,
    pub mode: CountMode,
    pub denominator: BigInt,
    pub degree: usize,
    pub period: u64,
    pub weak_period: u64,
    /// minimal period of each coefficient, constant term first
    pub coefficient_periods: Vec<u64>,
    pub weak_coefficient_periods: Vec<u64>,
    pub leading_coefficient: Rat,
}

impl PeriodReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "problem": self.problem.key(),
            "mode": self.mode.key(),
            "denominator": crate::rational::int_to_json(&self.denominator),
            "degree": self.degree,
            "period": self.period,
            "weak_period": self.weak_period,
            "coefficient_periods": self.coefficient_periods,
            "weak_coefficient_periods": self.weak_coefficient_periods,
            "period_ratios": self
                .coefficient_periods
                .iter()
                .zip(&self.weak_coefficient_periods)
                .map(|(&p, &w)| format!("{p}/{w}"))
                .collect::<Vec<_>>(),
            "leading_coefficient": format_rat(&self.leading_coefficient),
        })
    }
}

impl fmt::Display for PeriodReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "problem: {} mode: {}", self.problem, self.mode)?;
        writeln!(f, "denominator: {}", self.denominator)?;
        writeln!(
            f,
            "degree: {}  period: {}  weak period: {}",
            self.degree, self.period, self.weak_period
        )?;
        writeln!(
            f,
            "leading coefficient: {}",
            format_rat(&self.leading_coefficient)
        )?;
        writeln!(f, "coefficient periods (t^0 first):")?;
        for (k, (p, w)) in self
            .coefficient_periods
            .iter()
            .zip(&self.weak_coefficient_periods)
            .enumerate()
        {
            writeln!(f, "  t^{k}: strong {p}, weak {w}, ratio {p}/{w}")?;
        }
        Ok(())
    }
}

/// Per-coefficient periods of the strong and weak quasipolynomials.
pub fn period_report(id: ProblemId, mode: CountMode) -> Result<PeriodReport> {
    let q = quasipolynomial(id, mode)?;
    let weak = weak_quasipolynomial(id)?;
    let degree = q.degree();
    let coefficient_periods = (0..=degree).map(|k| q.coefficient_period(k)).collect();
    let weak_coefficient_periods = (0..=degree)
        .map(|k| {
            if k <= weak.degree() {
                weak.coefficient_period(k)
            } else {
                1
            }
        })
        .collect();
    let leading_coefficient = q
        .uniform_coefficient(degree)
        .cloned()
        .unwrap_or_else(|| q.principal()[degree].clone());
    Ok(PeriodReport {
        problem: id,
        mode,
        denominator: instance_denominator(id)?,
        degree,
        period: q.period(),
        weak_period: weak.period(),
        coefficient_periods,
        weak_coefficient_periods,
        leading_coefficient,
    })
}

/// OEIS sequence id for a problem/mode pair, where one is known.
pub fn oeis_id(id: ProblemId, mode: CountMode) -> Option<&'static str> {
    use CountMode::*;
    use Family::*;
    use Parameter::*;
    Some(match (id.family, id.parameter, mode) {
        (Magic, Cubic, All) => "A108576",
        (Magic, Cubic, SymmetryTypes) => "A108577",
        (Magic, Affine, All) => "A108578",
        (Magic, Affine, SymmetryTypes) => "A108579",
        (Magic, _, Reduced) => "A174256",
        (Magic, _, ReducedSymmetryTypes) => "A174257",
        (Semimagic, Cubic, All) => "A173546",
        (Semimagic, Affine, All) => "A173547",
        (Semimagic, Cubic, SymmetryTypes) => "A173723",
        (Semimagic, Affine, SymmetryTypes) => "A173725",
        (Semimagic, Cubic, Reduced) => "A173727",
        (Semimagic, Affine, Reduced) => "A173728",
        (Semimagic, Cubic, ReducedSymmetryTypes) => "A173724",
        (Semimagic, Affine, ReducedSymmetryTypes) => "A173726",
        (Magilatin, Cubic, All) => "A173548",
        (Magilatin, Affine, All) => "A173549",
        (Magilatin, Cubic, SymmetryTypes) => "A173729",
        (Magilatin, Affine, SymmetryTypes) => "A173730",
        (Magilatin, Cubic, Reduced) => "A174018",
        (Magilatin, Affine, Reduced) => "A174020",
        (Magilatin, Cubic, ReducedSymmetryTypes) => "A174019",
        (Magilatin, Affine, ReducedSymmetryTypes) => "A174021",
    })
}
