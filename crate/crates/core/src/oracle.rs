//! Independent brute-force enumeration of actual 3x3 squares, used to verify
//! every generating function and quasipolynomial at desk scale.
//!
//! Two engines: a fast one iterating the free parameters of each family's
//! reduced normal form (weighted by orbit size), and a slow full-matrix
//! scanner kept as a third opinion for small t.  They share nothing with the
//! polytope pipeline.

use crate::squares::{CountMode, Family, Parameter, ProblemId};
use crate::{Error, Result};
use num_bigint::BigInt;

/// A 3x3 square of nonnegative integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Square3 {
    pub cells: [[i64; 3]; 3],
}

impl Square3 {
    pub fn new(cells: [[i64; 3]; 3]) -> Self {
        Square3 { cells }
    }

    fn row_sums(&self) -> [i64; 3] {
        [0, 1, 2].map(|i| self.cells[i].iter().sum())
    }

    fn col_sums(&self) -> [i64; 3] {
        [0, 1, 2].map(|j| (0..3).map(|i| self.cells[i][j]).sum())
    }

    pub fn is_weak_semimagic(&self) -> bool {
        let s = self.row_sums()[0];
        self.row_sums().iter().all(|&v| v == s) && self.col_sums().iter().all(|&v| v == s)
    }

    pub fn is_weak_magic(&self) -> bool {
        let s = self.row_sums()[0];
        self.is_weak_semimagic()
            && self.cells[0][0] + self.cells[1][1] + self.cells[2][2] == s
            && self.cells[0][2] + self.cells[1][1] + self.cells[2][0] == s
    }

    pub fn all_distinct(&self) -> bool {
        let mut v: Vec<i64> = self.cells.iter().flatten().copied().collect();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn rows_cols_distinct(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                for k in j + 1..3 {
                    if self.cells[i][j] == self.cells[i][k] || self.cells[j][i] == self.cells[k][i]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Strong predicate of the family: magic and semimagic squares need all
    /// entries distinct, magilatin only within each row and column.
    pub fn satisfies(&self, family: Family) -> bool {
        match family {
            Family::Magic => self.is_weak_magic() && self.all_distinct(),
            Family::Semimagic => self.is_weak_semimagic() && self.all_distinct(),
            Family::Magilatin => self.is_weak_semimagic() && self.rows_cols_distinct(),
        }
    }

    /// Weak predicate: line sums only.
    pub fn satisfies_weak(&self, family: Family) -> bool {
        match family {
            Family::Magic => self.is_weak_magic(),
            _ => self.is_weak_semimagic(),
        }
    }

    fn transpose(&self) -> Square3 {
        let mut c = [[0; 3]; 3];
        for (i, row) in self.cells.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                c[j][i] = v;
            }
        }
        Square3 { cells: c }
    }

    fn permuted(&self, rows: &[usize; 3], cols: &[usize; 3]) -> Square3 {
        let mut c = [[0; 3]; 3];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.cells[rows[i]][cols[j]];
            }
        }
        Square3 { cells: c }
    }

    fn rotated(&self) -> Square3 {
        let mut c = [[0; 3]; 3];
        for (i, row) in self.cells.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                c[j][2 - i] = v;
            }
        }
        Square3 { cells: c }
    }
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The symmetry group acting on squares of one family: the dihedral group of
/// the square (order 8) for magic squares, row and column permutations
/// together with the main-diagonal transpose (order 72) otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryGroupSpec {
    pub family: Family,
}

impl SymmetryGroupSpec {
    pub fn for_family(family: Family) -> Self {
        SymmetryGroupSpec { family }
    }

    pub fn order(&self) -> usize {
        match self.family {
            Family::Magic => 8,
            _ => 72,
        }
    }

    /// Images of a square under every group element, in a fixed order, with
    /// one entry per element (duplicates appear when the stabilizer is
    /// nontrivial).
    pub fn images(&self, sq: &Square3) -> Vec<Square3> {
        match self.family {
            Family::Magic => {
                let mut out = Vec::with_capacity(8);
                let mut cur = *sq;
                for _ in 0..4 {
                    out.push(cur);
                    out.push(cur.transpose());
                    cur = cur.rotated();
                }
                out
            }
            _ => {
                let mut out = Vec::with_capacity(72);
                for rows in &PERMS {
                    for cols in &PERMS {
                        let p = sq.permuted(rows, cols);
                        out.push(p);
                        out.push(p.transpose());
                    }
                }
                out
            }
        }
    }
}

/// All images of a square under the family's symmetry group.
pub fn group_images(sq: &Square3, family: Family) -> Vec<Square3> {
    SymmetryGroupSpec::for_family(family).images(sq)
}

/// Lexicographically least representative of the orbit; deterministic.
pub fn canonicalize(sq: &Square3, family: Family) -> Result<Square3> {
    if !sq.satisfies_weak(family) {
        return Err(Error::InvalidSquare);
    }
    Ok(group_images(sq, family).into_iter().min().unwrap())
}

/// Number of distinct squares in the orbit.
pub fn orbit_size(sq: &Square3, family: Family) -> usize {
    let mut images = group_images(sq, family);
    images.sort_unstable();
    images.dedup();
    images.len()
}

/// Enumeration budgets; requests beyond them are refused rather than left to
/// run unboundedly.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    /// largest t accepted by the normal-form engine
    pub budget: u64,
    /// largest t accepted by the full-matrix scanner
    pub scan_budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: 60,
            scan_budget: 16,
        }
    }
}

/// The seven excluded coincidences of the reduced normal form, shared by
/// semimagic (where 0 < delta < beta) and magilatin squares.
fn coincidence_free(alpha: i64, beta: i64, gamma: i64, delta: i64) -> bool {
    2 * delta != beta - alpha
        && 2 * delta != beta
        && 2 * delta != beta + gamma
        && 2 * delta != alpha + beta + gamma
        && delta != beta - alpha
        && delta != alpha + gamma
        && delta != gamma
}

/// Reduced counts at exactly parameter `t`: (number of reduced squares,
/// number of reduced symmetry types).
fn reduced_counts(family: Family, parameter: Parameter, t: u64) -> (u64, u64) {
    let t = t as i64;
    match family {
        Family::Magic => {
            // reduced magic squares have center alpha + beta and maximum
            // 2(alpha + beta); each normal form stands for 8 squares
            let target = match parameter {
                Parameter::Cubic => {
                    if t % 2 != 0 {
                        return (0, 0);
                    }
                    t / 2
                }
                Parameter::Affine => {
                    if t % 3 != 0 {
                        return (0, 0);
                    }
                    t / 3
                }
            };
            let mut types = 0;
            for beta in 1..target {
                let alpha = target - beta;
                if alpha > beta && alpha != 2 * beta {
                    types += 1;
                }
            }
            (8 * types, types)
        }
        Family::Semimagic => {
            let mut types = 0u64;
            // cubic: 2a + b + g = t; affine: 2a + 2b + g = t
            for alpha in 1..t {
                for beta in 1..t {
                    let gamma = match parameter {
                        Parameter::Cubic => t - 2 * alpha - beta,
                        Parameter::Affine => t - 2 * alpha - 2 * beta,
                    };
                    if gamma < 1 {
                        break;
                    }
                    for delta in 1..beta {
                        if coincidence_free(alpha, beta, gamma, delta) {
                            types += 1;
                        }
                    }
                }
            }
            (72 * types, types)
        }
        Family::Magilatin => {
            let mut squares = 0u64;
            let mut types = 0u64;
            for alpha in 0..t {
                for beta in 1..t {
                    let gamma = match parameter {
                        Parameter::Cubic => t - 2 * alpha - beta,
                        Parameter::Affine => t - 2 * alpha - 2 * beta,
                    };
                    if gamma < 1 {
                        break;
                    }
                    for delta in 0..=beta {
                        if !coincidence_free(alpha, beta, gamma, delta) {
                            continue;
                        }
                        let stabilizer = if alpha == 0 && delta == 0 {
                            6
                        } else if alpha == 0 || delta == 0 || delta == beta {
                            2
                        } else {
                            1
                        };
                        squares += 72 / stabilizer;
                        types += 1;
                    }
                }
            }
            (squares, types)
        }
    }
}

impl Oracle {
    /// Exact count of squares by direct enumeration of reduced normal forms.
    ///
    /// Cubic counts take all entries in the open range (0, t); affine counts
    /// fix the magic sum to t.  Reduced modes count squares with minimum
    /// entry 0 and maximum entry t (cubic) or magic sum t (affine).
    pub fn enumerate(
        &self,
        family: Family,
        parameter: Parameter,
        t: u64,
        mode: CountMode,
    ) -> Result<u64> {
        if t > self.budget {
            return Err(Error::Budget);
        }
        Ok(match mode {
            CountMode::Reduced => reduced_counts(family, parameter, t).0,
            CountMode::ReducedSymmetryTypes => reduced_counts(family, parameter, t).1,
            CountMode::All | CountMode::SymmetryTypes => {
                let pick = |w: u64| {
                    let (squares, types) = reduced_counts(family, parameter, w);
                    if mode == CountMode::All {
                        squares
                    } else {
                        types
                    }
                };
                match parameter {
                    // each reduced square with maximum w lifts to t-1-w squares
                    Parameter::Cubic => (0..t).map(|w| (t - 1 - w) * pick(w)).sum(),
                    // each reduced square with sum s = t (mod 3) lifts once
                    Parameter::Affine => (1..=t.saturating_sub(3))
                        .filter(|s| s % 3 == t % 3)
                        .map(pick)
                        .sum(),
                }
            }
        })
    }

    /// Reduced and reduced-symmetry-type counts for t = 1..=t_max.
    pub fn reduced_counts_table(
        &self,
        family: Family,
        parameter: Parameter,
        t_max: u64,
    ) -> Result<Vec<(u64, u64, u64)>> {
        if t_max > self.budget {
            return Err(Error::Budget);
        }
        Ok((1..=t_max)
            .map(|t| {
                let (r, rt) = reduced_counts(family, parameter, t);
                (t, r, rt)
            })
            .collect())
    }

    /// Weak squares (positive entries, coincidences allowed) by brute force.
    /// Magilatin weak squares are semimagic weak squares.
    pub fn weak_count(&self, family: Family, parameter: Parameter, t: u64) -> Result<u64> {
        if t > self.budget {
            return Err(Error::Budget);
        }
        let t = t as i64;
        match family {
            Family::Magic => {
                let mut count = 0;
                let gammas: Vec<i64> = match parameter {
                    Parameter::Affine => {
                        if t % 3 != 0 {
                            return Ok(0);
                        }
                        vec![t / 3]
                    }
                    Parameter::Cubic => (1..t).collect(),
                };
                for gamma in gammas {
                    for alpha in -t..=t {
                        for beta in -t..=t {
                            let entries = [
                                gamma + alpha,
                                gamma - alpha - beta,
                                gamma + beta,
                                gamma - alpha + beta,
                                gamma,
                                gamma + alpha - beta,
                                gamma - beta,
                                gamma + alpha + beta,
                                gamma - alpha,
                            ];
                            let ok = match parameter {
                                Parameter::Cubic => entries.iter().all(|&e| e > 0 && e < t),
                                Parameter::Affine => entries.iter().all(|&e| e > 0),
                            };
                            if ok {
                                count += 1;
                            }
                        }
                    }
                }
                Ok(count as u64)
            }
            _ => {
                let mut count = 0u64;
                let hi = t - 1;
                for a in 1..=hi {
                    for b in 1..=hi {
                        for c in 1..=hi {
                            for d in 1..=hi {
                                let sums: Vec<i64> = match parameter {
                                    Parameter::Affine => vec![t],
                                    Parameter::Cubic => {
                                        ((a + b + 1).max(c + d + 1)..=a + b + c + d - 1).collect()
                                    }
                                };
                                for m in sums {
                                    let entries = [
                                        a,
                                        b,
                                        m - a - b,
                                        c,
                                        d,
                                        m - c - d,
                                        m - a - c,
                                        m - b - d,
                                        a + b + c + d - m,
                                    ];
                                    let ok = match parameter {
                                        Parameter::Cubic => {
                                            entries.iter().all(|&e| e > 0 && e < t)
                                        }
                                        Parameter::Affine => entries.iter().all(|&e| e > 0),
                                    };
                                    if ok {
                                        count += 1;
                                    }
                                }
                            }
                        }
                    }
                }
                Ok(count)
            }
        }
    }

    /// Full-matrix scanner, the slow third opinion: builds actual squares row
    /// by row and applies the predicates directly.
    pub fn scan_count(
        &self,
        family: Family,
        parameter: Parameter,
        t: u64,
        mode: CountMode,
    ) -> Result<u64> {
        if t > self.scan_budget {
            return Err(Error::Budget);
        }
        let t = t as i64;
        let reduced = matches!(
            mode,
            CountMode::Reduced | CountMode::ReducedSymmetryTypes
        );
        let (lo, hi) = if reduced { (0, t) } else { (1, t - 1) };
        let mut count = 0u64;
        for a in lo..=hi {
            for b in lo..=hi {
                for c in lo..=hi {
                    let r1 = [a, b, c];
                    let s1: i64 = r1.iter().sum();
                    for d in lo..=hi {
                        for e in lo..=hi {
                            let f = s1 - d - e;
                            if f < lo || f > hi {
                                continue;
                            }
                            let r3 = [s1 - a - d, s1 - b - e, s1 - c - f];
                            if r3.iter().any(|&v| v < lo || v > hi) {
                                continue;
                            }
                            let sq = Square3::new([r1, [d, e, f], r3]);
                            if !sq.satisfies(family) {
                                continue;
                            }
                            if reduced {
                                let flat: Vec<i64> =
                                    sq.cells.iter().flatten().copied().collect();
                                let (min, max) =
                                    (*flat.iter().min().unwrap(), *flat.iter().max().unwrap());
                                if min != 0 {
                                    continue;
                                }
                                match parameter {
                                    Parameter::Cubic => {
                                        if max != t {
                                            continue;
                                        }
                                    }
                                    Parameter::Affine => {
                                        if s1 != t {
                                            continue;
                                        }
                                    }
                                }
                            } else if parameter == Parameter::Affine && s1 != t {
                                continue;
                            }
                            match mode {
                                CountMode::All | CountMode::Reduced => count += 1,
                                CountMode::SymmetryTypes | CountMode::ReducedSymmetryTypes => {
                                    // count orbits by their least representative
                                    if canonicalize(&sq, family)? == sq {
                                        count += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(count)
    }
}

/// One row of a verification table: the series coefficient against the
/// brute-force count.
#[derive(Debug, Clone)]
pub struct VerifyRow {
    pub t: u64,
    pub from_gf: BigInt,
    pub from_oracle: u64,
}

impl VerifyRow {
    pub fn matches(&self) -> bool {
        self.from_gf == BigInt::from(self.from_oracle)
    }
}

/// Side-by-side comparison of the generating function for `(id, mode)` with
/// direct enumeration for t = 1..=t_max.
pub fn verification_table(
    id: ProblemId,
    mode: CountMode,
    t_max: u64,
    oracle: &Oracle,
) -> Result<Vec<VerifyRow>> {
    let gf = crate::squares::count_gf(id, mode)?;
    let coeffs = gf.coefficients(t_max);
    (1..=t_max)
        .map(|t| {
            Ok(VerifyRow {
                t,
                from_gf: coeffs[t as usize].clone(),
                from_oracle: oracle.enumerate(id.family, id.parameter, t, mode)?,
            })
        })
        .collect()
}

/// OEIS b-file lines: `n value`, one per row.
pub fn bfile(rows: &[(u64, BigInt)]) -> String {
    let mut out = String::new();
    for (n, v) in rows {
        out.push_str(&format!("{n} {v}\n"));
    }
    out
}

/// CSV with the given header.
pub fn csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
