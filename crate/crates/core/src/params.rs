//! Parameter tuples and exact spectral feasibility arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(v, k, λ1, λ2, m, n)` of a divisible design graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DdgParams {
    pub v: u64,
    pub k: u64,
    pub lambda1: u64,
    pub lambda2: u64,
    pub m: u64,
    pub n: u64,
}

/// `(v, k, b, a)` of a Deza graph, `b ≥ a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DezaParams {
    pub v: u64,
    pub k: u64,
    pub b: u64,
    pub a: u64,
}

/// The two parameter families studied here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `(4n, n+2, n-2, 2, 4, n)`, the parameters of the 4×n lattice.
    A,
    /// `(4n, 3n-2, 3n-6, 2n-2, 4, n)`.
    B,
}

impl Family {
    pub fn params(self, n: u64) -> Result<DdgParams> {
        match self {
            Family::A => family_a(n),
            Family::B => family_b(n),
        }
    }

    /// Recognizes a family from `v = 4n` and `k`.
    pub fn detect(v: u64, k: u64) -> Option<(Family, u64)> {
        if !v.is_multiple_of(4) || v < 8 {
            return None;
        }
        let n = v / 4;
        if k == n + 2 {
            Some((Family::A, n))
        } else if k == 3 * n - 2 {
            Some((Family::B, n))
        } else {
            None
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

pub fn family_a(n: u64) -> Result<DdgParams> {
    if n < 2 {
        return Err(Error::Infeasible(format!("class size n = {n} < 2")));
    }
    DdgParams::new(4 * n, n + 2, n - 2, 2, 4, n)
}

pub fn family_b(n: u64) -> Result<DdgParams> {
    if n < 2 {
        return Err(Error::Infeasible(format!("class size n = {n} < 2")));
    }
    DdgParams::new(4 * n, 3 * n - 2, 3 * n - 6, 2 * n - 2, 4, n)
}

impl DdgParams {
    pub fn new(v: u64, k: u64, lambda1: u64, lambda2: u64, m: u64, n: u64) -> Result<DdgParams> {
        let p = DdgParams { v, k, lambda1, lambda2, m, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.v != self.m * self.n {
            return Err(Error::Infeasible(format!("v = {} but m·n = {}", self.v, self.m * self.n)));
        }
        if self.k >= self.v {
            return Err(Error::Infeasible(format!("k = {} not below v = {}", self.k, self.v)));
        }
        if self.lambda1 > self.k {
            return Err(Error::Infeasible(format!("k - λ1 = {} - {} is negative", self.k, self.lambda1)));
        }
        if self.k * self.k < self.lambda2 * self.v {
            return Err(Error::Infeasible(format!("k² - λ2·v = {} - {} is negative", self.k * self.k, self.lambda2 * self.v)));
        }
        Ok(())
    }

    pub fn is_proper(&self) -> bool {
        self.m > 1 && self.n > 1 && self.lambda1 != self.lambda2
    }

    /// `k - λ1`.
    pub fn class_radicand(&self) -> u64 {
        self.k - self.lambda1
    }

    /// `k² - λ2·v`.
    pub fn quotient_radicand(&self) -> u64 {
        self.k * self.k - self.lambda2 * self.v
    }

    /// The Deza parameters every DDG with these parameters has.
    pub fn deza_shadow(&self) -> DezaParams {
        DezaParams {
            v: self.v,
            k: self.k,
            b: self.lambda1.max(self.lambda2),
            a: self.lambda1.min(self.lambda2),
        }
    }

    pub fn family(&self) -> Option<(Family, u64)> {
        Family::detect(self.v, self.k).filter(|&(f, n)| f.params(n).ok() == Some(*self))
    }
}

impl fmt::Display for DdgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.v, self.k, self.lambda1, self.lambda2, self.m, self.n)
    }
}

impl DezaParams {
    pub fn new(v: u64, k: u64, b: u64, a: u64) -> Result<DezaParams> {
        if b < a {
            return Err(Error::Infeasible(format!("b = {b} < a = {a}")));
        }
        if k >= v {
            return Err(Error::Infeasible(format!("k = {k} not below v = {v}")));
        }
        Ok(DezaParams { v, k, b, a })
    }
}

impl fmt::Display for DezaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.b, self.a)
    }
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `sign · √radicand`, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SqrtValue {
    pub negative: bool,
    pub radicand: u64,
}

impl SqrtValue {
    pub fn new(negative: bool, radicand: u64) -> Self {
        SqrtValue { negative: negative && radicand != 0, radicand }
    }

    pub fn integer(value: i64) -> Self {
        SqrtValue::new(value < 0, value.unsigned_abs() * value.unsigned_abs())
    }

    /// The integer value when the radicand is a perfect square.
    pub fn as_integer(&self) -> Option<i64> {
        let r = isqrt(self.radicand);
        (r * r == self.radicand).then(|| if self.negative { -(r as i64) } else { r as i64 })
    }
}

impl fmt::Display for SqrtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}√{}", if self.negative { "-" } else { "" }, self.radicand),
        }
    }
}

/// `{k, ±√(k-λ1), ±√(k²-λ2·v)}` in that order.
pub fn ddg_eigenvalues(p: &DdgParams) -> Result<Vec<SqrtValue>> {
    if p.lambda1 > p.k || p.k * p.k < p.lambda2 * p.v {
        return Err(Error::Infeasible(format!("negative radicand for {p}")));
    }
    let (r1, r2) = (p.class_radicand(), p.quotient_radicand());
    Ok(vec![
        SqrtValue::integer(p.k as i64),
        SqrtValue::new(false, r1),
        SqrtValue::new(true, r1),
        SqrtValue::new(false, r2),
        SqrtValue::new(true, r2),
    ])
}

/// Eigenvalue multiplicities of `√(k-λ1)`, `-√(k-λ1)`, `√(k²-λ2v)`,
/// `-√(k²-λ2v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumSolution {
    pub f1: u64,
    pub f2: u64,
    pub g1: u64,
    pub g2: u64,
    /// `k + (g1-g2)·√(k²-λ2v)`, the trace of the quotient matrix.
    pub quotient_trace: i64,
}

/// Decides `k + c1·√r1 + c2·√r2 = 0` exactly.
fn trace_vanishes(k: i64, c1: i64, r1: u64, c2: i64, r2: u64) -> bool {
    let s1 = SqrtValue::new(false, r1).as_integer();
    let s2 = SqrtValue::new(false, r2).as_integer();
    match (s1, s2) {
        (Some(a), Some(b)) => k + c1 * a + c2 * b == 0,
        (Some(a), None) => c2 == 0 && k + c1 * a == 0,
        (None, Some(b)) => c1 == 0 && k + c2 * b == 0,
        (None, None) => {
            // √r1 and √r2 are rationally dependent iff r1·r2 is a square;
            // either way a nonzero rational multiple of an irrational is
            // never the integer -k unless both vanish.
            let q = isqrt(r1 * r2);
            if q * q == r1 * r2 {
                // c1√r1 + c2√r2 = (c1·r1 + c2·q)/√r1
                k == 0 && c1 * r1 as i64 + c2 * q as i64 == 0
            } else {
                k == 0 && c1 == 0 && c2 == 0
            }
        }
    }
}

/// One row of the `(g1, g2, tr R)` table: every split of `m-1` into
/// `g1 + g2` with the implied quotient trace, and whether the trace bound
/// `0 ≤ tr R ≤ m(n-1)` rules it out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub g1: u64,
    pub g2: u64,
    /// `None` when `tr R` would be irrational.
    pub quotient_trace: Option<i64>,
    pub excluded: bool,
}

pub fn trace_table(p: &DdgParams) -> Result<Vec<TraceRow>> {
    ddg_eigenvalues(p)?;
    let s2 = SqrtValue::new(false, p.quotient_radicand()).as_integer();
    let max_trace = (p.m * (p.n - 1)) as i64;
    Ok((0..p.m)
        .rev()
        .map(|g1| {
            let g2 = p.m - 1 - g1;
            let tr = s2.map(|s| p.k as i64 + (g1 as i64 - g2 as i64) * s);
            let tr = if g1 == g2 { Some(p.k as i64) } else { tr };
            let excluded = tr.is_none_or(|t| t < 0 || t > max_trace);
            TraceRow { g1, g2, quotient_trace: tr, excluded }
        })
        .collect())
}

/// All nonnegative integer multiplicities satisfying the dimension counts,
/// the vanishing trace of `A`, and the quotient trace bound.
pub fn multiplicity_solutions(p: &DdgParams) -> Result<Vec<SpectrumSolution>> {
    ddg_eigenvalues(p)?;
    if !p.is_proper() {
        return Err(Error::Unsupported(format!("improper parameters {p}")));
    }
    let (r1, r2) = (p.class_radicand(), p.quotient_radicand());
    let fsum = p.m * (p.n - 1);
    let mut out = Vec::new();
    for row in trace_table(p)? {
        let Some(tr) = row.quotient_trace else { continue };
        if row.excluded {
            continue;
        }
        for f1 in 0..=fsum {
            let f2 = fsum - f1;
            let c1 = f1 as i64 - f2 as i64;
            let c2 = row.g1 as i64 - row.g2 as i64;
            if trace_vanishes(p.k as i64, c1, r1, c2, r2) {
                out.push(SpectrumSolution { f1, f2, g1: row.g1, g2: row.g2, quotient_trace: tr });
            }
        }
    }
    Ok(out)
}

/// True iff a Deza graph with these parameters is not forced to be a DDG
/// by the `a < 2b - k` criterion, i.e. iff `a ≥ 2b - k`.
pub fn non_ddg_bound(p: &DezaParams) -> bool {
    p.a as i64 >= 2 * p.b as i64 - p.k as i64
}
