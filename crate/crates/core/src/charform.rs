//! Generating functions: recurrences, bosonic and fermionic forms, sector
//! sums, `D_{K,i}`, and truncated `L -> ∞` limits.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::bijection::HookConstraints;
use crate::cfmn::{cartan_like, continued_fraction, model_zones, n_vectors_with_length, solve_m};
use crate::error::{Error, Result};
use crate::pathmodel::{enumerate_paths, ModelParams};
use crate::qseries::{
    pochhammer_trunc, GaussianTable, QPolynomial, QSeriesTruncated, QuarterPolynomial,
};

/// Labels `(p, p', a, b, c, L)` of a finitized character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharLabels {
    pub params: ModelParams,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub len: usize,
}

impl CharLabels {
    pub fn new(params: ModelParams, a: i64, b: i64, c: i64, len: usize) -> Result<Self> {
        let max = params.max_height();
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if v < 1 || v > max {
                return Err(Error::Domain(format!("{name}={v} is outside [1, {max}]")));
            }
        }
        if (c - b).abs() != 1 {
            return Err(Error::InvalidPostEndpoint { b, c });
        }
        if (len as i64 + a - b) % 2 != 0 {
            return Err(Error::ParityMismatch { len, a, b });
        }
        Ok(Self { params, a, b, c, len })
    }

    /// `(s0, s0, s0 + 1)` at length `len`.
    pub fn ground_state(params: ModelParams, len: usize) -> Result<Self> {
        let s0 = params.s0();
        Self::new(params, s0, s0, s0 + 1, len)
    }

    /// `⌊p c / p'⌋ + (b - c + 1)/2`.
    pub fn r(&self) -> i64 {
        self.params.r(self.c) + (self.b - self.c + 1) / 2
    }
}

/// `Σ_h q^{wt(h)}` by enumeration.
pub fn chi_bruteforce(labels: &CharLabels) -> QPolynomial {
    let CharLabels { params, a, b, c, len } = *labels;
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for h in enumerate_paths(params, a, b, c, len) {
        *hist.entry(h.wt()).or_default() += 1;
    }
    QPolynomial::from_terms(hist)
}

/// `Σ_h q^{wt_FB(h)}` by enumeration, in quarter powers.
pub fn phi_bruteforce(labels: &CharLabels) -> QuarterPolynomial {
    let CharLabels { params, a, b, c, len } = *labels;
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for h in enumerate_paths(params, a, b, c, len) {
        *hist.entry(h.wt_fb()).or_default() += 1;
    }
    QuarterPolynomial(QPolynomial::from_terms(hist))
}

/// Values `X(b', c', L')` of a last-vertex recurrence for one start height,
/// for every `b'`, `c' = b' ± 1` and `L' <= L`.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    params: ModelParams,
    a: i64,
    // layers[L'][slot(b', c')]
    layers: Vec<Vec<QPolynomial>>,
}

impl RecurrenceTable {
    fn slot(b: i64, c: i64) -> usize {
        (2 * (b - 1) + if c > b { 1 } else { 0 }) as usize
    }

    /// `shift(L', b', c', b'')` is the exponent attached to `X(b'', b', L'-1)`.
    fn build(params: ModelParams, a: i64, len: usize, shift: impl Fn(i64, i64, i64, i64) -> i64) -> Self {
        let max = params.max_height();
        let width = 2 * max as usize;
        let mut first = vec![QPolynomial::zero(); width];
        for c in [a - 1, a + 1] {
            if (1..=max).contains(&c) {
                first[Self::slot(a, c)] = QPolynomial::one();
            }
        }
        let mut layers = vec![first];
        for l in 1..=len as i64 {
            let prev = layers.last().unwrap();
            let mut next = vec![QPolynomial::zero(); width];
            for b in 1..=max {
                for c in [b - 1, b + 1] {
                    if !(1..=max).contains(&c) {
                        continue;
                    }
                    let mut acc = QPolynomial::zero();
                    for from in [b + 1, b - 1] {
                        if !(1..=max).contains(&from) {
                            continue;
                        }
                        let src = &prev[Self::slot(from, b)];
                        if !src.is_zero() {
                            acc += &src.shift(shift(l, b, c, from));
                        }
                    }
                    next[Self::slot(b, c)] = acc;
                }
            }
            layers.push(next);
        }
        Self { params, a, layers }
    }

    pub fn get(&self, b: i64, c: i64, len: usize) -> QPolynomial {
        let max = self.params.max_height();
        if !(1..=max).contains(&b) || !(1..=max).contains(&c) || (b - c).abs() != 1 {
            return QPolynomial::zero();
        }
        self.layers
            .get(len)
            .map(|layer| layer[Self::slot(b, c)].clone())
            .unwrap_or_default()
    }

    /// The `χ` recurrence table for start height `a` up to length `len`.
    pub fn chi(params: ModelParams, a: i64, len: usize) -> Self {
        Self::build(params, a, len, |l, b, c, from| {
            let same = params.r_hat(b) == params.r_hat(c);
            let up = from > b;
            let rising_end = c > b;
            // which of the two terms carries a power of q
            let shifted_up = if rising_end { !same } else { same };
            match (up, shifted_up) {
                (true, true) => (l - a + b) / 2,
                (false, false) => (l + a - b) / 2,
                _ => 0,
            }
        })
    }

    /// The `φ` recurrence table (quarter powers) for start height `a`.
    pub fn phi(params: ModelParams, a: i64, len: usize) -> Self {
        Self::build(params, a, len, |l, b, c, from| {
            let quarter = if from != c {
                2
            } else if from < b {
                -4 * params.r_hat(from)
            } else {
                4 * params.r_hat(from)
            };
            l * quarter
        })
    }

    pub fn start(&self) -> i64 {
        self.a
    }
}

/// `φ^{p,p'}_{a,b,c}(L)` from its last-vertex recurrence.
pub fn phi_recurrence(labels: &CharLabels) -> QuarterPolynomial {
    let t = RecurrenceTable::phi(labels.params, labels.a, labels.len);
    QuarterPolynomial(t.get(labels.b, labels.c, labels.len))
}

/// `χ^{p,p'}_{a,b,c}(L)` from its recurrence.
pub fn chi_recurrence(labels: &CharLabels) -> QPolynomial {
    RecurrenceTable::chi(labels.params, labels.a, labels.len).get(labels.b, labels.c, labels.len)
}

/// `q^{-r̂(c)(a-b±L)/2 - (a-b)(a-c)/4} φ`, sign `+` when `c = b + 1`.
pub fn chi_normalize(phi: &QuarterPolynomial, labels: &CharLabels) -> Result<QPolynomial> {
    let CharLabels { params, a, b, c, len } = *labels;
    let sign = if c == b + 1 { 1 } else { -1 };
    let shift = -2 * params.r_hat(c) * (a - b + sign * len as i64) - (a - b) * (a - c);
    let chi = phi.shift_quarters(shift).to_qpolynomial()?;
    if chi.min_exp().is_some_and(|e| e < 0) {
        return Err(Error::Internal("normalized character has a negative power".into()));
    }
    Ok(chi)
}

/// The finitized Rocha-Caridi sum.
pub fn chi_bosonic(labels: &CharLabels) -> QPolynomial {
    let mut table = GaussianTable::new();
    chi_bosonic_with(labels, &mut table)
}

pub fn chi_bosonic_with(labels: &CharLabels, table: &mut GaussianTable) -> QPolynomial {
    let CharLabels { params, a, b, len, .. } = *labels;
    let (p, pp) = (params.p(), params.p_prime());
    let l = len as i64;
    let r = labels.r();
    let half = (l + a - b) / 2;
    let mut out = QPolynomial::zero();
    // both Gaussian indices leave [0, L] once |λ| p' > L + a
    let reach = (l + a) / pp + 1;
    for lambda in -reach..=reach {
        let g = table.get(l, half - pp * lambda);
        if !g.is_zero() {
            out += &g.shift(lambda * lambda * p * pp + lambda * (pp * r - p * a));
        }
        let g = table.get(l, half - pp * lambda - a);
        if !g.is_zero() {
            out += &(-&g.shift((lambda * p + r) * (lambda * pp + a)));
        }
    }
    out
}

/// `S^{p,p'}(n̂)`: generating function of one sector.
pub fn sector_genfun(params: &ModelParams, n_hat: &[i64]) -> Result<QPolynomial> {
    let mut table = GaussianTable::new();
    sector_genfun_with(params, n_hat, &mut table)
}

fn sector_genfun_with(params: &ModelParams, n_hat: &[i64], table: &mut GaussianTable) -> Result<QPolynomial> {
    let z = model_zones(params);
    let t = z.rank();
    let sol = solve_m(&z, n_hat)?;
    let l = sol.length();
    let m1 = sol.m_at(1);
    let paired: i64 = (1..=t).map(|j| sol.m_at(j as i64) * n_hat[j - 1]).sum();
    let quarter = if params.p_prime() > 2 * params.p() {
        l * (l - m1) - 2 * paired
    } else {
        l * m1 - 2 * paired
    };
    if quarter % 4 != 0 {
        return Err(Error::Internal(format!("sector exponent {quarter}/4 is fractional")));
    }
    let mut out = QPolynomial::monomial(quarter / 4, 1);
    for j in 1..t {
        let (m, n) = (sol.m_at(j as i64), n_hat[j - 1]);
        out = &out * &table.get(m + n, n);
    }
    Ok(out)
}

fn require_even(len: usize) -> Result<()> {
    if !len.is_multiple_of(2) {
        return Err(Error::Domain(format!("L={len} must be even")));
    }
    Ok(())
}

/// `Σ_m q^{(mᵀCm - L²)/4} ∏_j [m_j + n_j over m_j]` over sectors with `m_0 = L`.
pub fn chi_fermionic_m(params: &ModelParams, len: usize) -> Result<QPolynomial> {
    require_even(len)?;
    let z = model_zones(params);
    let cartan = cartan_like(&z);
    let t = z.rank();
    let l = len as i64;
    let mut table = GaussianTable::new();
    let mut out = QPolynomial::zero();
    for n_hat in n_vectors_with_length(&z, l) {
        let sol = solve_m(&z, &n_hat)?;
        if sol.m.iter().any(|&m| m < 0 || m % 2 != 0) {
            return Err(Error::Internal(format!("m = {:?} is not even and non-negative", sol.m)));
        }
        let cm = cartan.apply(&sol.m);
        let quarter = cartan.quadratic_form(&sol.m) - l * l;
        if quarter % 4 != 0 {
            return Err(Error::Internal("quadratic form is not divisible by 4".into()));
        }
        let mut term = QPolynomial::monomial(quarter / 4, 1);
        for j in 1..t {
            let n = -cm[j] / 2;
            if n != n_hat[j - 1] {
                return Err(Error::Internal(format!("2n = -Cm fails at row {j}")));
            }
            term = &term * &table.get(sol.m[j] + n, sol.m[j]);
        }
        out += &term;
    }
    Ok(out)
}

/// `Σ_{n̂ : m_0 = L} S^{p,p'}(n̂)`.
pub fn sector_sum(params: &ModelParams, len: usize) -> Result<QPolynomial> {
    require_even(len)?;
    let z = model_zones(params);
    let mut table = GaussianTable::new();
    let mut out = QPolynomial::zero();
    for n_hat in n_vectors_with_length(&z, len as i64) {
        out += &sector_genfun_with(params, &n_hat, &mut table)?;
    }
    Ok(out)
}

/// `(e_0, ..., e_n) = (c_0, ..., c_{n-1}, c_n - 2)`.
pub fn lambda_exponents(params: &ModelParams) -> Vec<i64> {
    let mut e = continued_fraction(params.p_prime(), params.p())
        .expect("valid model")
        .digits;
    *e.last_mut().unwrap() -= 2;
    e
}

/// Partitions `λ^(0..n)` read off an even solution `m` via
/// `λ^(μ)_i = (m_{t_μ+i} - m_{t_μ+i+1})/2`, with `λ^(μ)_{e_μ} = m_{t_{μ+1}+1}/2`
/// for `μ < n` and `λ^(n)_{e_n} = m_{t_{n+1}-1}/2`.
pub fn lambda_variables(params: &ModelParams, m: &[i64]) -> Vec<Vec<i64>> {
    let z = model_zones(params);
    let e = lambda_exponents(params);
    let n = e.len() - 1;
    let at = |j: i64| if j < 0 { 0 } else { m.get(j as usize).copied().unwrap_or(0) };
    (0..=n)
        .map(|mu| {
            let t = z.t_mu[mu];
            (1..=e[mu])
                .map(|i| {
                    if i < e[mu] {
                        (at(t + i) - at(t + i + 1)) / 2
                    } else if mu < n {
                        at(z.t_mu[mu + 1] + 1) / 2
                    } else {
                        at(z.t_mu[n + 1] - 1) / 2
                    }
                })
                .collect()
        })
        .collect()
}

/// Partitions with exactly `slots` parts (zeros allowed), each at most `cap`,
/// total at most `budget`.
fn bounded_sequences(slots: usize, cap: i64, budget: i64) -> Vec<Vec<i64>> {
    fn rec(slots: usize, cap: i64, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (0..=cap.min(budget)).rev() {
            cur.push(x);
            rec(slots - 1, x, budget - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if cap >= 0 && budget >= 0 {
        rec(slots, cap, budget, &mut Vec::new(), &mut out);
    }
    out
}

/// The partition-sequence form of the ground-state character.
pub fn chi_fermionic_lambda(params: &ModelParams, len: usize) -> Result<QPolynomial> {
    require_even(len)?;
    let e = lambda_exponents(params);
    let mut table = GaussianTable::new();
    let mut out = QPolynomial::zero();
    let w0 = len as i64 / 2;
    lambda_level(&e, 0, w0, None, 0, QPolynomial::one(), &mut table, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn lambda_level(
    e: &[i64],
    mu: usize,
    w: i64,
    lambda0: Option<i64>,
    exponent: i64,
    acc: QPolynomial,
    table: &mut GaussianTable,
    out: &mut QPolynomial,
) {
    let n = e.len() - 1;
    let slots = e[mu] as usize;
    for lam in bounded_sequences(slots, lambda0.unwrap_or(w), w) {
        let weight: i64 = lam.iter().sum();
        if mu == n && weight != w {
            continue;
        }
        let exp = exponent + lam.iter().map(|x| x * x).sum::<i64>();
        let mut poly = acc.clone();
        // full[i] = λ_i with full[0] = λ_0
        let full: Vec<i64> = std::iter::once(lambda0.unwrap_or(0)).chain(lam.iter().copied()).collect();
        let first = if mu == 0 { 2 } else { 1 };
        let mut running: i64 = lam.iter().take(first - 1).sum();
        for i in first..=slots {
            running += full[i];
            let top = 2 * (w - running) + full[i - 1] + full[i];
            poly = &poly * &table.get(top, full[i - 1] - full[i]);
            if poly.is_zero() {
                break;
            }
        }
        if poly.is_zero() {
            continue;
        }
        if mu == n {
            *out += &poly.shift(exp);
        } else {
            let next_w = lam.last().copied().unwrap_or(0);
            lambda_level(e, mu + 1, next_w, Some(w - weight), exp, poly, table, out);
        }
    }
}

fn gaussian_sign_window(k: i64, i: i64, n: i64, m: i64, alpha: i64, beta: i64) -> Result<HookConstraints> {
    HookConstraints::new(k, i, n, m, alpha, beta)
}

/// Closed form of `D_{K,i}(N,M;α,β)`.
pub fn dki_closed(k: i64, i: i64, n: i64, m: i64, alpha: i64, beta: i64) -> Result<QPolynomial> {
    gaussian_sign_window(k, i, n, m, alpha, beta)?;
    let mut table = GaussianTable::new();
    let total = n + m;
    let ab = alpha + beta;
    let reach = total / k + 2;
    let mut out = QPolynomial::zero();
    for lambda in -reach..=reach {
        let g = table.get(total, m - k * lambda);
        if !g.is_zero() {
            out += &g.shift(lambda * (k * lambda - i) * ab + k * beta * lambda);
        }
        let g = table.get(total, m - k * lambda - i);
        if !g.is_zero() {
            out += &(-&g.shift(lambda * (k * lambda + i) * ab + k * beta * lambda + beta * i));
        }
    }
    Ok(out)
}

/// `D_{K,i}(N,M;α,β)` by peeling a row or a column; `α = β = 0` is not reducible.
pub fn dki_recurrence(k: i64, i: i64, n: i64, m: i64, alpha: i64, beta: i64) -> Result<QPolynomial> {
    gaussian_sign_window(k, i, n, m, alpha, beta)?;
    let mut memo = HashMap::new();
    dki_step(k, i, n, m, alpha, beta, &mut memo)
}

type DkiMemo = HashMap<(i64, i64, i64, i64), QPolynomial>;

fn dki_step(k: i64, i: i64, n: i64, m: i64, alpha: i64, beta: i64, memo: &mut DkiMemo) -> Result<QPolynomial> {
    if n < 0 || m < 0 {
        return Ok(QPolynomial::zero());
    }
    if n == 0 && m == 0 {
        return Ok(QPolynomial::one());
    }
    if (alpha == 0 && n - m == k - i) || (beta == 0 && n - m == -i) {
        return Ok(QPolynomial::zero());
    }
    let key = (n, m, alpha, beta);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let window = |n: i64, m: i64| beta - i <= n - m && n - m <= k - alpha - i;
    if !window(n, m) {
        return Err(Error::Internal(format!("recursion left the window at ({n},{m},{alpha},{beta})")));
    }
    let value = if n == 0 || m == 0 {
        // only the empty partition fits a degenerate box
        QPolynomial::one()
    } else if (beta >= 1) && window(n, m - 1) {
        let rest = dki_step(k, i, n, m - 1, alpha, beta, memo)?;
        &rest + &dki_step(k, i, n - 1, m, alpha + 1, beta - 1, memo)?.shift(m)
    } else if (alpha >= 1) && window(n - 1, m) {
        let rest = dki_step(k, i, n - 1, m, alpha, beta, memo)?;
        &rest + &dki_step(k, i, n, m - 1, alpha - 1, beta + 1, memo)?.shift(n)
    } else {
        return Err(Error::Unsupported(format!(
            "D_{{{k},{i}}}({n},{m};{alpha},{beta}) has no reducing recurrence"
        )));
    };
    memo.insert(key, value.clone());
    Ok(value)
}

/// Rocha-Caridi character `χ^{p,p'}_{r,s}` up to degree `degree`.
pub fn rocha_caridi_trunc(p: i64, p_prime: i64, r: i64, s: i64, degree: usize) -> Result<QSeriesTruncated> {
    ModelParams::new(p, p_prime)?;
    if !(0 < r && r < p && 0 < s && s < p_prime) {
        return Err(Error::Domain(format!("(r,s)=({r},{s}) outside 0<r<{p}, 0<s<{p_prime}")));
    }
    let d = degree as i64;
    let mut numerator = QPolynomial::zero();
    let mut add_lambda = |lambda: i64| -> bool {
        let e1 = lambda * lambda * p * p_prime + lambda * (p_prime * r - p * s);
        let e2 = (lambda * p + r) * (lambda * p_prime + s);
        if e1 <= d {
            numerator.add_term(e1, BigInt::one());
        }
        if e2 <= d {
            numerator.add_term(e2, -BigInt::one());
        }
        e1 <= d || e2 <= d
    };
    add_lambda(0);
    // |λ| >= 1 makes both exponents increase with |λ|
    let mut lambda = 1;
    while add_lambda(lambda) {
        lambda += 1;
    }
    lambda = -1;
    while add_lambda(lambda) {
        lambda -= 1;
    }
    let numerator = QSeriesTruncated::from_polynomial(&numerator, degree)?;
    Ok(numerator.mul(&pochhammer_trunc(degree, degree).inverse()?))
}

fn inverse_pochhammer(n: i64, degree: usize) -> QSeriesTruncated {
    pochhammer_trunc(n as usize, degree).inverse().expect("(q)_n has unit constant term")
}

/// The `L -> ∞` fermionic sum for `p > 2`, truncated at `degree`.
pub fn chi_fermionic_infinite_trunc(p: i64, p_prime: i64, degree: usize) -> Result<QSeriesTruncated> {
    let params = ModelParams::new(p, p_prime)?;
    if p <= 2 {
        return Err(Error::Unsupported(format!(
            "the p={p} limit is {}",
            if p == 1 { "divergent" } else { "Gordon's sum" }
        )));
    }
    let e = lambda_exponents(&params);
    let d = degree as i64;
    let cap = (d as f64).sqrt() as i64 + 1;
    let mut table = GaussianTable::new();
    let mut out = QSeriesTruncated::zero(degree);
    for lam0 in bounded_sequences(e[0] as usize, cap, i64::MAX / 4) {
        let exp0: i64 = lam0.iter().map(|x| x * x).sum();
        if exp0 > d {
            continue;
        }
        let mut factor = inverse_pochhammer(2 * lam0.last().copied().unwrap_or(0), degree);
        for i in 1..lam0.len() {
            factor = factor.mul(&inverse_pochhammer(lam0[i - 1] - lam0[i], degree));
        }
        let w1 = lam0.last().copied().unwrap_or(0);
        let mut inner = QPolynomial::zero();
        infinite_level(&e, 1, w1, None, exp0, QPolynomial::one(), d, &mut table, &mut inner);
        let inner = QSeriesTruncated::from_polynomial(&inner, degree)?;
        out = out.add(&inner.mul(&factor));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn infinite_level(
    e: &[i64],
    mu: usize,
    w: i64,
    lambda0: Option<i64>,
    exponent: i64,
    acc: QPolynomial,
    degree: i64,
    table: &mut GaussianTable,
    out: &mut QPolynomial,
) {
    let n = e.len() - 1;
    let slots = e[mu] as usize;
    for lam in bounded_sequences(slots, lambda0.unwrap_or(w), w) {
        let weight: i64 = lam.iter().sum();
        if mu == n && weight != w {
            continue;
        }
        let exp = exponent + lam.iter().map(|x| x * x).sum::<i64>();
        if exp > degree {
            continue;
        }
        let mut poly = acc.clone();
        let full: Vec<i64> = std::iter::once(lambda0.unwrap_or(0)).chain(lam.iter().copied()).collect();
        // the μ = 1, i = 1 factor became 1/(q)_{2λ^(0)_{e_0}}
        let first = if mu == 1 { 2 } else { 1 };
        let mut running: i64 = lam.iter().take(first - 1).sum();
        for i in first..=slots {
            running += full[i];
            let top = 2 * (w - running) + full[i - 1] + full[i];
            poly = &poly * &table.get(top, full[i - 1] - full[i]);
            if poly.is_zero() {
                break;
            }
        }
        if poly.is_zero() {
            continue;
        }
        if mu == n {
            *out += &poly.shift(exp);
        } else {
            let next_w = lam.last().copied().unwrap_or(0);
            infinite_level(e, mu + 1, next_w, Some(w - weight), exp, poly, degree, table, out);
        }
    }
}

/// Gordon's sum for `χ^{2,2e_0+1}_{1,e_0}` truncated at `degree`.
pub fn gordon_trunc(e0: usize, degree: usize) -> Result<QSeriesTruncated> {
    if e0 < 2 {
        return Err(Error::Domain(format!("e0={e0} must be at least 2")));
    }
    let d = degree as i64;
    let cap = (d as f64).sqrt() as i64 + 1;
    let mut out = QSeriesTruncated::zero(degree);
    for lam in bounded_sequences(e0 - 1, cap, i64::MAX / 4) {
        let exp: i64 = lam.iter().map(|x| x * x).sum();
        if exp > d {
            continue;
        }
        let mut term = QSeriesTruncated::monomial(exp as usize, BigInt::one(), degree);
        for i in 0..lam.len() {
            let next = lam.get(i + 1).copied().unwrap_or(0);
            term = term.mul(&inverse_pochhammer(lam[i] - next, degree));
        }
        out = out.add(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(p: i64, pp: i64, a: i64, b: i64, c: i64, len: usize) -> CharLabels {
        CharLabels::new(ModelParams::new(p, pp).unwrap(), a, b, c, len).unwrap()
    }

    #[test]
    fn zero_length() {
        for (a, b) in [(2, 2), (2, 3), (3, 2)] {
            let Ok(l) = CharLabels::new(ModelParams::new(2, 5).unwrap(), a, b, b + 1, 0) else {
                continue;
            };
            let want = if a == b { QPolynomial::one() } else { QPolynomial::zero() };
            assert_eq!(chi_recurrence(&l), want);
            assert_eq!(chi_bosonic(&l), want);
            assert_eq!(phi_recurrence(&l).to_qpolynomial().unwrap(), want);
        }
    }

    #[test]
    fn label_validation() {
        let m = ModelParams::new(2, 5).unwrap();
        assert!(CharLabels::new(m, 2, 2, 4, 2).is_err());
        assert!(CharLabels::new(m, 2, 3, 4, 2).is_err());
        assert!(CharLabels::new(m, 2, 4, 5, 2).is_err());
    }

    #[test]
    fn bottom_boundary_drops_a_term() {
        // b = 1, c = 2: only the step down from 2 survives
        let l = labels(2, 5, 1, 1, 2, 4);
        assert_eq!(chi_recurrence(&l), chi_bruteforce(&l));
    }

    #[test]
    fn shift_sign_branches() {
        for (b, c) in [(3, 4), (3, 2)] {
            let l = labels(3, 8, 3, b, c, 6);
            let chi = chi_normalize(&phi_recurrence(&l), &l).unwrap();
            assert_eq!(chi, chi_bruteforce(&l), "c = {c}");
        }
    }

    #[test]
    fn unique_path_model() {
        for len in (0..12).step_by(2) {
            let l = labels(1, 3, 1, 1, 2, len);
            let chi = chi_bosonic(&l);
            assert_eq!(chi.len(), 1);
            assert_eq!(chi, QPolynomial::monomial((len * len / 4) as i64, 1));
        }
    }

    #[test]
    fn fermionic_needs_even_length() {
        let m = ModelParams::new(2, 5).unwrap();
        assert!(chi_fermionic_m(&m, 3).is_err());
        assert_eq!(chi_fermionic_m(&m, 0).unwrap(), QPolynomial::one());
        assert_eq!(chi_fermionic_lambda(&m, 0).unwrap(), QPolynomial::one());
    }

    #[test]
    fn seed_sector_weight() {
        let m = ModelParams::new(1, 3).unwrap();
        for n in 0..5 {
            assert_eq!(sector_genfun(&m, &[n]).unwrap(), QPolynomial::monomial(n * n, 1));
        }
    }

    #[test]
    fn dki_base_cases() {
        assert_eq!(dki_closed(7, 2, 0, 0, 1, 2).unwrap(), QPolynomial::one());
        assert_eq!(dki_recurrence(7, 2, 0, 0, 1, 2).unwrap(), QPolynomial::one());
        assert!(dki_closed(7, 4, 0, 0, 1, 1).is_err());
        assert!(matches!(dki_recurrence(6, 2, 2, 2, 0, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn infinite_limit_rejections() {
        assert!(chi_fermionic_infinite_trunc(1, 4, 10).is_err());
        assert!(chi_fermionic_infinite_trunc(2, 5, 10).is_err());
        assert!(rocha_caridi_trunc(3, 8, 0, 3, 10).is_err());
        assert!(gordon_trunc(1, 10).is_err());
    }

    #[test]
    fn gordon_empty_partition_term() {
        assert_eq!(*gordon_trunc(3, 0).unwrap().coeff(0), BigInt::one());
    }
}
