//! Continued fractions, zones, the mn-system and its Cartan-like matrix.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pathmodel::ModelParams;

/// Digits `(c_0, ..., c_n)` of `p'/p` with `c_n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    pub digits: Vec<i64>,
}

impl ContinuedFraction {
    pub fn n(&self) -> usize {
        self.digits.len() - 1
    }

    /// `(numerator, denominator)` of the fraction the digits spell.
    pub fn value(&self) -> (i64, i64) {
        let (mut num, mut den) = (1, 0);
        for &c in self.digits.iter().rev() {
            (num, den) = (c * num + den, num);
        }
        (num, den)
    }
}

pub fn continued_fraction(p_prime: i64, p: i64) -> Result<ContinuedFraction> {
    ModelParams::new(p, p_prime)?;
    let (mut num, mut den) = (p_prime, p);
    let mut digits = Vec::new();
    while den != 0 {
        digits.push(num / den);
        (num, den) = (den, num % den);
    }
    Ok(ContinuedFraction { digits })
}

/// `t_μ = -1 - δ_{μ,n+1} + Σ_{i<μ} c_i` for `μ = 0..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZoneData {
    pub t_mu: Vec<i64>,
}

impl ZoneData {
    pub fn n(&self) -> usize {
        self.t_mu.len() - 2
    }

    pub fn rank(&self) -> usize {
        *self.t_mu.last().unwrap() as usize
    }

    /// Zone boundaries `t_1..t_n`.
    pub fn boundaries(&self) -> &[i64] {
        &self.t_mu[1..=self.n()]
    }

    pub fn is_boundary(&self, j: i64) -> bool {
        self.boundaries().contains(&j)
    }
}

pub fn zones(cf: &ContinuedFraction) -> ZoneData {
    let n = cf.n();
    let mut t_mu = Vec::with_capacity(n + 2);
    let mut partial = 0;
    for mu in 0..=n + 1 {
        let delta = if mu == n + 1 { 1 } else { 0 };
        t_mu.push(-1 - delta + partial);
        if mu <= n {
            partial += cf.digits[mu];
        }
    }
    ZoneData { t_mu }
}

/// Zone data straight from a model.
pub fn model_zones(params: &ModelParams) -> ZoneData {
    zones(&continued_fraction(params.p_prime(), params.p()).expect("valid model"))
}

/// Tridiagonal `t × t` matrix, rows and columns indexed `0..t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanLike {
    pub entries: Vec<Vec<i64>>,
}

impl CartanLike {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ C v`.
    pub fn quadratic_form(&self, v: &[i64]) -> i64 {
        self.apply(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

pub fn cartan_like(z: &ZoneData) -> CartanLike {
    let t = z.rank();
    let mut entries = vec![vec![0; t]; t];
    for (j, out) in entries.iter_mut().enumerate() {
        let row = if z.is_boundary(j as i64) { [-1, 1, 1] } else { [-1, 2, -1] };
        for (offset, v) in row.into_iter().enumerate() {
            let k = j as i64 + offset as i64 - 1;
            if (0..t as i64).contains(&k) {
                out[k as usize] = v;
            }
        }
    }
    CartanLike { entries }
}

/// A solved mn-system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MnVectors {
    /// `n_1..n_t`.
    pub n_hat: Vec<i64>,
    /// `m_0..m_{t-1}`; `m_t = m_{t+1} = 0` are implied.
    pub m: Vec<i64>,
    /// From the `j = 0` equation with `m_{-1} = 0`.
    pub n0: i64,
}

impl MnVectors {
    /// `m_j` for any `j >= -1`, zero outside `0..t`.
    pub fn m_at(&self, j: i64) -> i64 {
        if j < 0 {
            0
        } else {
            self.m.get(j as usize).copied().unwrap_or(0)
        }
    }

    pub fn length(&self) -> i64 {
        self.m_at(0)
    }

    /// `(n_0, n_1, ..., n_{t-1})`.
    pub fn n_vector(&self) -> Vec<i64> {
        let t = self.m.len();
        std::iter::once(self.n0).chain(self.n_hat[..t.saturating_sub(1)].iter().copied()).collect()
    }
}

/// Back-substitutes the mn-system from `m_t = m_{t+1} = 0`.
pub fn solve_m(z: &ZoneData, n_hat: &[i64]) -> Result<MnVectors> {
    let t = z.rank();
    if n_hat.len() != t {
        return Err(Error::Domain(format!("n̂ needs {t} entries, got {}", n_hat.len())));
    }
    // m[k] holds m_{k-1}, so m[0] is m_{-1}
    let mut m = vec![0i64; t + 3];
    for j in (1..=t).rev() {
        let (here, above) = (m[j + 1], m[j + 2]);
        m[j] = if z.is_boundary(j as i64) {
            above + here + 2 * n_hat[j - 1]
        } else {
            2 * here + 2 * n_hat[j - 1] - above
        };
    }
    let (m0, m1) = (m[1], m[2]);
    let twice_n0 = if z.is_boundary(0) { -m1 - m0 } else { m1 - 2 * m0 };
    Ok(MnVectors {
        n_hat: n_hat.to_vec(),
        m: m[1..=t].to_vec(),
        n0: twice_n0 / 2,
    })
}

/// True iff `2n = -Cm`.
pub fn verify_cartan(c: &CartanLike, m: &[i64], n: &[i64]) -> bool {
    m.len() == c.size()
        && n.len() == c.size()
        && c.apply(m).iter().zip(n).all(|(cm, nj)| -cm == 2 * nj)
}

/// Coefficients `l` with `m_0 = Σ l_i n_i`, one per `n_1..n_t`.
pub fn m0_coefficients(z: &ZoneData) -> Vec<i64> {
    coefficient_rows(z).into_iter().next().unwrap_or_default()
}

/// Row `j` holds the coefficients of `m_j` in terms of `n_1..n_t`.
pub fn coefficient_rows(z: &ZoneData) -> Vec<Vec<i64>> {
    let t = z.rank();
    let columns: Vec<Vec<i64>> = (0..t)
        .map(|i| {
            let mut unit = vec![0; t];
            unit[i] = 1;
            solve_m(z, &unit).expect("unit vector has the right length").m
        })
        .collect();
    (0..t).map(|j| columns.iter().map(|col| col[j]).collect()).collect()
}

/// The solved system laid out one `m_j` per line, from `m_t` down to `L = m_0`.
pub fn format_mnsystem(z: &ZoneData) -> String {
    let t = z.rank();
    let rows = coefficient_rows(z);
    let mut out = String::new();
    writeln!(out, "m_{t} = 0;").unwrap();
    for j in (0..t).rev() {
        let rhs: Vec<String> = rows[j]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| if c == 1 { format!("n_{}", i + 1) } else { format!("{c}n_{}", i + 1) })
            .collect();
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join("+") };
        if j == 0 {
            writeln!(out, "L = m_0 = {rhs}.").unwrap();
        } else {
            writeln!(out, "m_{j} = {rhs};").unwrap();
        }
    }
    out
}

/// Every `n̂ >= 0` with `m_0(n̂) = len`, in lexicographic order.
pub fn n_vectors_with_length(z: &ZoneData, len: i64) -> Vec<Vec<i64>> {
    fn rec(coeffs: &[i64], i: usize, rem: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == coeffs.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=rem / coeffs[i] {
            cur.push(x);
            rec(coeffs, i + 1, rem - x * coeffs[i], cur, out);
            cur.pop();
        }
    }
    let coeffs = m0_coefficients(z);
    let mut out = Vec::new();
    if len >= 0 {
        rec(&coeffs, 0, len, &mut Vec::new(), &mut out);
    }
    out
}
