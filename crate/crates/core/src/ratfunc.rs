//! Rational generating functions with `(1 - x^a)` denominator factors, and
//! extraction of quasipolynomial constituents.
//!
//! A [`RationalGF`] is `N(x) / prod_i (1 - x^{a_i})` with an integer-coefficient
//! numerator.  Denominators stay factored; they are only expanded for series
//! coefficients, cross-multiplied equality tests, and constituent extraction.
//!
//! Extraction rewrites the function over `(1 - x^p)^{d+1}` where `p` is the
//! lcm of the factor exponents, then reads off the residue-`r` constituent
//!
//! ```text
//! q_r(t) = sum_j a_{pj+r} * binom(d + (t-r)/p - j, d),    r = 1..p,
//! ```
//!
//! with `r = p` serving the residue-0 (principal) constituent.  The reported
//! period is afterwards minimized by comparing constituents across divisors.

use crate::rational::{int_to_json, rat_to_json, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

// ---------- dense integer polynomials ----------

pub(crate) fn poly_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(out)
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    poly_trim(out)
}

/// `1 - x^a` as a coefficient list.
pub(crate) fn one_minus(a: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); a as usize + 1];
    p[0] = BigInt::one();
    p[a as usize] = -BigInt::one();
    p
}

pub(crate) fn den_to_poly(den: &[u64]) -> Vec<BigInt> {
    den.iter()
        .fold(vec![BigInt::one()], |acc, &a| poly_mul(&acc, &one_minus(a)))
}

/// Exact polynomial division; `None` unless every step divides and the
/// remainder vanishes.
fn poly_div_exact(n: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = poly_trim(d.to_vec());
    let mut r = poly_trim(n.to_vec());
    if d.is_empty() {
        return None;
    }
    if r.is_empty() {
        return Some(vec![]);
    }
    if r.len() < d.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - d.len() + 1];
    let lead = d.last().unwrap().clone();
    loop {
        let (step, rem) = r.last().unwrap().div_rem(&lead);
        if !rem.is_zero() {
            return None;
        }
        let pos = r.len() - d.len();
        q[pos] = step.clone();
        for (i, c) in d.iter().enumerate() {
            let sub = c * &step;
            r[pos + i] -= sub;
        }
        r = poly_trim(r);
        if r.is_empty() {
            return Some(poly_trim(q));
        }
        if r.len() < d.len() {
            return None;
        }
    }
}

// ---------- dense rational polynomials (constituents) ----------

fn fpoly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn fpoly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn fpoly_pad(mut p: Vec<Rat>, n: usize) -> Vec<Rat> {
    p.resize(n, Rat::zero());
    p
}

/// Substitute `k = m*t + c` into a polynomial in `k`.
fn fpoly_compose_affine(poly: &[Rat], m: &Rat, c: &Rat) -> Vec<Rat> {
    let mut out: Vec<Rat> = vec![];
    let mut power = vec![Rat::one()]; // (m t + c)^i
    for coef in poly {
        out = fpoly_pad(out, power.len());
        for (o, p) in out.iter_mut().zip(&power) {
            *o += p * coef;
        }
        power = fpoly_mul(&power, &[c.clone(), m.clone()]);
    }
    out
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

// ---------- RationalGF ----------

/// `numerator / prod (1 - x^a)` with the factor multiset kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numer: Vec<BigInt>,
    denom: Vec<u64>,
}

impl RationalGF {
    pub fn new(numer: Vec<BigInt>, denom: Vec<u64>) -> Self {
        assert!(denom.iter().all(|&a| a > 0));
        let mut denom = denom;
        denom.sort_unstable();
        let numer = poly_trim(numer);
        let denom = if numer.is_empty() { vec![] } else { denom };
        RationalGF { numer, denom }
    }

    /// Build from i64 numerator coefficients, lowest degree first.
    pub fn from_ints(numer: &[i64], denom: &[u64]) -> Self {
        Self::new(
            numer.iter().map(|&c| BigInt::from(c)).collect(),
            denom.to_vec(),
        )
    }

    pub fn zero() -> Self {
        RationalGF {
            numer: vec![],
            denom: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numer
    }

    pub fn denom_factors(&self) -> &[u64] {
        &self.denom
    }

    pub fn add(&self, other: &RationalGF) -> RationalGF {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // common denominator: per exponent, the max multiplicity
        let mut union: Vec<u64> = vec![];
        let (mut i, mut j) = (0, 0);
        while i < self.denom.len() || j < other.denom.len() {
            match (self.denom.get(i), other.denom.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    union.push(a);
                    i += 1;
                    j += 1;
                }
                (Some(&a), Some(&b)) if a < b => {
                    union.push(a);
                    i += 1;
                }
                (Some(_), Some(&b)) => {
                    union.push(b);
                    j += 1;
                }
                (Some(&a), None) => {
                    union.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    union.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let missing = |own: &[u64]| {
            let mut rest = union.clone();
            for &a in own {
                let pos = rest.iter().position(|&b| b == a).expect("union covers");
                rest.remove(pos);
            }
            rest
        };
        let n1 = poly_mul(&self.numer, &den_to_poly(&missing(&self.denom)));
        let n2 = poly_mul(&other.numer, &den_to_poly(&missing(&other.denom)));
        RationalGF::new(poly_add(&n1, &n2), union)
    }

    pub fn sub(&self, other: &RationalGF) -> RationalGF {
        self.add(&other.scale_int(-1))
    }

    pub fn scale_int(&self, c: i64) -> RationalGF {
        self.scale(&BigInt::from(c))
    }

    pub fn scale(&self, c: &BigInt) -> RationalGF {
        if c.is_zero() {
            return RationalGF::zero();
        }
        RationalGF {
            numer: self.numer.iter().map(|x| x * c).collect(),
            denom: self.denom.clone(),
        }
    }

    /// Divides every numerator coefficient by `c`, which must divide exactly.
    pub fn div_int_exact(&self, c: i64) -> Result<RationalGF> {
        let c = BigInt::from(c);
        let numer = self
            .numer
            .iter()
            .map(|x| {
                let (q, r) = x.div_rem(&c);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(Error::InexactDivision("numerator not divisible by scalar"))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalGF::new(numer, self.denom.clone()))
    }

    pub fn mul(&self, other: &RationalGF) -> RationalGF {
        let mut denom = self.denom.clone();
        denom.extend_from_slice(&other.denom);
        RationalGF::new(poly_mul(&self.numer, &other.numer), denom)
    }

    pub fn mul_poly(&self, poly: &[BigInt]) -> RationalGF {
        RationalGF::new(poly_mul(&self.numer, poly), self.denom.clone())
    }

    pub fn shift_up(&self, k: usize) -> RationalGF {
        if self.is_zero() {
            return RationalGF::zero();
        }
        let mut numer = vec![BigInt::zero(); k];
        numer.extend_from_slice(&self.numer);
        RationalGF {
            numer,
            denom: self.denom.clone(),
        }
    }

    /// Divides by `x^k`; errors if the numerator valuation is smaller.
    pub fn shift_down_exact(&self, k: usize) -> Result<RationalGF> {
        if self.is_zero() {
            return Ok(RationalGF::zero());
        }
        if self.numer.len() <= k || self.numer[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision("numerator valuation too small"));
        }
        Ok(RationalGF {
            numer: self.numer[k..].to_vec(),
            denom: self.denom.clone(),
        })
    }

    /// First `n + 1` series coefficients (exponents 0..=n).
    pub fn coefficients(&self, n: u64) -> Vec<BigInt> {
        let n = n as usize;
        let mut s = vec![BigInt::zero(); n + 1];
        for (i, c) in self.numer.iter().enumerate() {
            if i <= n {
                s[i] = c.clone();
            }
        }
        for &a in &self.denom {
            let a = a as usize;
            for i in a..=n {
                let prev = s[i - a].clone();
                s[i] += prev;
            }
        }
        s
    }

    pub fn coefficient(&self, t: u64) -> BigInt {
        self.coefficients(t).pop().unwrap()
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn equivalent(&self, other: &RationalGF) -> bool {
        let lhs = poly_mul(&self.numer, &den_to_poly(&other.denom));
        let rhs = poly_mul(&other.numer, &den_to_poly(&self.denom));
        lhs == rhs
    }

    /// Cancels denominator factors `(1 - x^a)` that divide the numerator.
    pub fn reduce(&mut self) {
        if self.is_zero() {
            self.denom.clear();
            return;
        }
        loop {
            let mut cancelled = false;
            for idx in 0..self.denom.len() {
                let a = self.denom[idx];
                if let Some(q) = poly_div_exact(&self.numer, &one_minus(a)) {
                    self.numer = q;
                    self.denom.remove(idx);
                    cancelled = true;
                    break;
                }
            }
            if !cancelled || self.denom.is_empty() {
                return;
            }
        }
    }

    pub fn reduced(&self) -> RationalGF {
        let mut f = self.clone();
        f.reduce();
        f
    }

    /// Multiplication by `x^2 / (1-x)^2`: turns a reduced-count series indexed
    /// by maximum entry into the cubic count with strict upper bound t.
    pub fn convolve_upper_bound(&self) -> RationalGF {
        if self.is_zero() {
            return RationalGF::zero();
        }
        let mut denom = self.denom.clone();
        denom.extend_from_slice(&[1, 1]);
        RationalGF::new(self.shift_up(2).numer, denom)
    }

    /// Multiplication by `x^3 / (1-x^3)`: turns a reduced-count series indexed
    /// by magic sum into the affine count over s = t mod 3.
    pub fn convolve_magic_sum(&self) -> RationalGF {
        if self.is_zero() {
            return RationalGF::zero();
        }
        let mut denom = self.denom.clone();
        denom.push(3);
        RationalGF::new(self.shift_up(3).numer, denom)
    }

    /// Inverse of [`Self::convolve_upper_bound`]; exact or an error.
    pub fn deconvolve_upper_bound(&self) -> Result<RationalGF> {
        self.mul_poly(&den_to_poly(&[1, 1])).shift_down_exact(2)
    }

    /// Inverse of [`Self::convolve_magic_sum`]; exact or an error.
    pub fn deconvolve_magic_sum(&self) -> Result<RationalGF> {
        self.mul_poly(&den_to_poly(&[3])).shift_down_exact(3)
    }

    /// Quasipolynomial whose values are the series coefficients for t >= 1.
    pub fn to_quasipolynomial(&self) -> Result<Quasipolynomial> {
        let f = self.reduced();
        if f.is_zero() {
            return Ok(Quasipolynomial {
                period: 1,
                degree: 0,
                constituents: vec![vec![Rat::zero()]],
            });
        }
        if f.denom.is_empty() {
            // a polynomial series; only a constant can be a valid count series
            // (zero for every t >= 1)
            if f.numer.len() == 1 {
                return Ok(Quasipolynomial {
                    period: 1,
                    degree: 0,
                    constituents: vec![vec![Rat::zero()]],
                });
            }
            return Err(Error::Internal("series is a polynomial, not quasipolynomial"));
        }
        let p = f.denom.iter().fold(1u64, |acc, &a| acc.lcm(&a));
        let d = f.denom.len() - 1;
        // inflate to the standard denominator (1 - x^p)^{d+1}
        let mut n = f.numer.clone();
        for &a in &f.denom {
            let mut m = vec![BigInt::zero(); (p - a + 1) as usize];
            let mut j = 0;
            while j < p {
                if j % a == 0 {
                    m[j as usize] = BigInt::one();
                }
                j += a;
            }
            n = poly_mul(&n, &m);
        }
        if n.len() as u64 > p * (d as u64 + 1) + 1 {
            return Err(Error::Internal("inflated numerator degree out of range"));
        }
        let pu = p as usize;
        let dfact = Rat::from_integer((1..=d.max(1) as i64).product::<i64>().into());
        let mut constituents: Vec<Vec<Rat>> = Vec::with_capacity(pu);
        for r0 in 0..pu {
            // residue 0 owns the extra a_0 slot (indices 0, p, .., p(d+1))
            let j_max = if r0 == 0 { d + 1 } else { d };
            let mut poly = vec![Rat::zero(); d + 1];
            for j in 0..=j_max {
                let idx = pu * j + r0;
                if idx >= n.len() || n[idx].is_zero() {
                    continue;
                }
                // binom(d + k - j, d) as a polynomial in k
                let mut kp = vec![Rat::one()];
                for i in 1..=d {
                    kp = fpoly_mul(
                        &kp,
                        &[
                            Rat::from_integer((i as i64 - j as i64).into()),
                            Rat::one(),
                        ],
                    );
                }
                for c in kp.iter_mut() {
                    *c /= &dfact;
                }
                // substitute k = (t - r)/p
                let tp = fpoly_compose_affine(
                    &kp,
                    &Rat::new(BigInt::one(), BigInt::from(p)),
                    &Rat::new(BigInt::from(-(r0 as i64)), BigInt::from(p)),
                );
                let w = Rat::from_integer(n[idx].clone());
                let tp = fpoly_pad(tp, d + 1);
                for (pc, tc) in poly.iter_mut().zip(tp) {
                    *pc += tc * &w;
                }
            }
            constituents.push(poly);
        }
        // true degree, then minimal period among divisors of p
        let degree = constituents
            .iter()
            .map(|c| fpoly_trim(c.clone()).len())
            .max()
            .unwrap_or(1)
            .max(1)
            - 1;
        let constituents: Vec<Vec<Rat>> = constituents
            .into_iter()
            .map(|c| fpoly_pad(fpoly_trim(c), degree + 1))
            .collect();
        for q in divisors(p) {
            let qu = q as usize;
            if (0..pu).all(|i| constituents[i] == constituents[(i + qu) % pu]) {
                return Ok(Quasipolynomial {
                    period: q,
                    degree,
                    constituents: constituents[..qu].to_vec(),
                });
            }
        }
        unreachable!("p divides p");
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "numerator": self.numer.iter().map(int_to_json).collect::<Vec<_>>(),
            "denom_factors": self.denom,
        })
    }
}

// ---------- Quasipolynomial ----------

/// Periodic polynomial: `N(t) = constituents[t mod period](t)`.
///
/// Residue 0 holds the principal constituent.  Coefficients are exact
/// rationals, constant term first, all padded to `degree + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    period: u64,
    degree: usize,
    constituents: Vec<Vec<Rat>>,
}

impl Quasipolynomial {
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constituents(&self) -> &[Vec<Rat>] {
        &self.constituents
    }

    /// Coefficients of the constituent selected by `t = residue (mod period)`.
    pub fn constituent(&self, residue: u64) -> &[Rat] {
        &self.constituents[(residue % self.period) as usize]
    }

    /// The principal constituent, for t = 0 (mod period).
    pub fn principal(&self) -> &[Rat] {
        &self.constituents[0]
    }

    /// Exact evaluation; a non-integral value means the quasipolynomial does
    /// not represent an integer sequence and is reported as a bug.
    pub fn eval(&self, t: u64) -> Result<BigInt> {
        let poly = self.constituent(t);
        let tr = Rat::from_integer(BigInt::from(t));
        let mut v = Rat::zero();
        for c in poly.iter().rev() {
            v = v * &tr + c;
        }
        if !v.denom().is_one() {
            return Err(Error::ConstituentMismatch(t));
        }
        Ok(v.numer().clone())
    }

    /// Minimal q dividing the period such that the degree-k coefficient is
    /// q-periodic across constituents.
    pub fn coefficient_period(&self, k: usize) -> u64 {
        let p = self.period as usize;
        for q in divisors(self.period) {
            let qu = q as usize;
            if (0..p)
                .all(|i| self.constituents[i].get(k) == self.constituents[(i + qu) % p].get(k))
            {
                return q;
            }
        }
        self.period
    }

    /// The degree-k coefficient when it is the same in every constituent.
    pub fn uniform_coefficient(&self, k: usize) -> Option<&Rat> {
        let first = self.constituents[0].get(k)?;
        self.constituents
            .iter()
            .all(|c| c.get(k) == Some(first))
            .then_some(first)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "period": self.period,
            "degree": self.degree,
            "constituents": self
                .constituents
                .iter()
                .map(|poly| poly.iter().map(rat_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}
