//! Partitions, hook differences, the `D_{K,i}` class and the path/partition bijection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pathmodel::{scores, ModelParams, Path};

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Zero parts are dropped; anything else out of order is an error.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&x| x < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Self {
            parts: parts.into_iter().filter(|&x| x > 0).collect(),
        })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> i64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `μ_r`, 1-based, zero beyond the last part.
    pub fn part(&self, r: usize) -> i64 {
        if r == 0 {
            return 0;
        }
        self.parts.get(r - 1).copied().unwrap_or(0)
    }

    pub fn wt(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        // column j has as many cells as parts reaching it
        let mut conj = vec![0i64; self.largest() as usize];
        for &x in &self.parts {
            for slot in conj.iter_mut().take(x as usize) {
                *slot += 1;
            }
        }
        Partition { parts: conj }
    }

    pub fn fits_box(&self, max_parts: usize, max_part: i64) -> bool {
        self.parts.len() <= max_parts && self.largest() <= max_part
    }

    /// Every partition with at most `max_parts` parts, none above `max_part`.
    /// Parts are generated largest-first in decreasing lexicographic order.
    pub fn in_box(max_parts: usize, max_part: i64) -> Vec<Partition> {
        fn rec(slots: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if slots == 0 {
                return;
            }
            for x in (1..=cap).rev() {
                cur.push(x);
                rec(slots - 1, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_parts, max_part.max(0), &mut Vec::new(), &mut out);
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "parts": self.parts })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parts = v
            .get("parts")
            .and_then(|p| p.as_array())
            .ok_or_else(|| Error::Parse(format!("expected {{\"parts\": [...]}}, got {v}")))?;
        let parts = parts
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::Parse(format!("bad part {x}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// `μ_i - μ'_j` at cell `(i, j)`, both 1-based.
pub fn hook_difference(mu: &Partition, i: usize, j: usize) -> Result<i64> {
    if i == 0 || j == 0 || (j as i64) > mu.part(i) {
        return Err(Error::Domain(format!("cell ({i},{j}) is outside the diagram")));
    }
    Ok(mu.part(i) - mu.conjugate().part(j))
}

/// Parameters of `D_{K,i}(N,M;α,β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HookConstraints {
    pub k: i64,
    pub i: i64,
    pub n: i64,
    pub m: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl HookConstraints {
    pub fn new(k: i64, i: i64, n: i64, m: i64, alpha: i64, beta: i64) -> Result<Self> {
        let hc = Self { k, i, n, m, alpha, beta };
        if !hc.in_window() {
            return Err(Error::Domain(format!("{hc:?} violates the constraint window")));
        }
        Ok(hc)
    }

    /// `1 <= i <= K/2`, `α + β < K`, `β - i <= N - M <= K - α - i`, all non-negative.
    pub fn in_window(&self) -> bool {
        let Self { k, i, n, m, alpha, beta } = *self;
        n >= 0
            && m >= 0
            && alpha >= 0
            && beta >= 0
            && 1 <= i
            && 2 * i <= k
            && alpha + beta < k
            && beta - i <= n - m
            && n - m <= k - alpha - i
    }

    fn require_positive_diagonals(&self) -> Result<()> {
        if self.alpha == 0 || self.beta == 0 {
            return Err(Error::Unsupported(
                "D_{K,i} membership with α = 0 or β = 0".into(),
            ));
        }
        Ok(())
    }
}

/// Box and hook-difference membership test; `α, β >= 1` only.
pub fn satisfies_dki(mu: &Partition, hc: &HookConstraints) -> Result<bool> {
    hc.require_positive_diagonals()?;
    Ok(fits_dki(mu, hc))
}

fn fits_dki(mu: &Partition, hc: &HookConstraints) -> bool {
    if !mu.fits_box(hc.m as usize, hc.n) {
        return false;
    }
    let conj = mu.conjugate();
    let low = 1 - hc.beta;
    let high = hc.alpha - 1;
    for r in 1..=mu.num_parts() {
        for col in 1..=mu.part(r) as usize {
            let diagonal = r as i64 - col as i64;
            let hd = mu.part(r) - conj.part(col);
            if diagonal == low && hd < hc.beta - hc.i + 1 {
                return false;
            }
            if diagonal == high && hd > hc.k - hc.i - hc.alpha - 1 {
                return false;
            }
        }
    }
    true
}

pub fn enumerate_dki(hc: &HookConstraints) -> Result<Vec<Partition>> {
    hc.require_positive_diagonals()?;
    if !hc.in_window() {
        return Err(Error::Domain(format!("{hc:?} violates the constraint window")));
    }
    Ok(Partition::in_box(hc.m as usize, hc.n)
        .into_iter()
        .filter(|mu| fits_dki(mu, hc))
        .collect())
}

/// Result of scanning a path into its profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub partition: Partition,
    /// NE segments seen.
    pub n: i64,
    /// SE segments seen.
    pub m: i64,
}

/// Builds the partition vertex by vertex: an up segment into a scoring vertex
/// adds a column, a down segment into a scoring vertex adds a row.
pub fn path_profile(h: &Path) -> Profile {
    let flags = h.scoring_flags();
    let heights = h.heights();
    let (mut n, mut m) = (0i64, 0i64);
    // column-major would need transposes; keep rows, padded to m when a column lands
    let mut rows: Vec<i64> = Vec::new();
    for i in 1..=h.len() {
        let up = heights[i] > heights[i - 1];
        if up {
            if flags[i] {
                rows.resize(m as usize, 0);
                for r in rows.iter_mut() {
                    *r += 1;
                }
            }
            n += 1;
        } else {
            if flags[i] {
                rows.insert(0, n);
            }
            m += 1;
        }
        rows.retain(|&x| x > 0);
    }
    Profile {
        partition: Partition { parts: rows },
        n,
        m,
    }
}

pub fn path_to_partition(h: &Path) -> Partition {
    path_profile(h).partition
}

/// Labels `(p, p', a, b, c, L)` for the inverse map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathLabels {
    pub params: ModelParams,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub len: usize,
}

/// Peels the partition right to left, one vertex at a time; exactly one left
/// edge is admissible at every step.
pub fn partition_to_path(mu: &Partition, labels: &PathLabels) -> Result<Path> {
    let PathLabels { params, a, b, c, len } = *labels;
    let l = len as i64;
    if (l + a - b) % 2 != 0 || (a - b).abs() > l {
        return Err(Error::ParityMismatch { len, a, b });
    }
    let (mut n, mut m) = ((l - a + b) / 2, (l + a - b) / 2);
    if !mu.fits_box(m as usize, n) {
        return Err(Error::Domain(format!(
            "{:?} does not fit in {m} parts of size at most {n}",
            mu.parts()
        )));
    }
    let mut rows = mu.parts().to_vec();
    let mut heights = vec![b];
    let (mut h, mut d_out) = (b, c - b);
    for _ in 0..len {
        let mut options: Vec<(i64, Vec<i64>, i64, i64)> = Vec::new();
        for d_in in [1i64, -1] {
            let scoring = scores(&params, h, d_in, d_out);
            if d_in == 1 {
                if n == 0 {
                    continue;
                }
                if scoring {
                    if m > 0 && (rows.len() as i64) < m {
                        continue;
                    }
                    let peeled: Vec<i64> = rows.iter().map(|x| x - 1).filter(|&x| x > 0).collect();
                    if peeled.iter().any(|&x| x > n - 1) {
                        continue;
                    }
                    options.push((d_in, peeled, n - 1, m));
                } else {
                    if rows.first().is_some_and(|&x| x > n - 1) {
                        continue;
                    }
                    options.push((d_in, rows.clone(), n - 1, m));
                }
            } else {
                if m == 0 {
                    continue;
                }
                if scoring {
                    if n > 0 && rows.first() != Some(&n) {
                        continue;
                    }
                    let peeled = if n > 0 { rows[1..].to_vec() } else { rows.clone() };
                    if peeled.len() as i64 > m - 1 {
                        continue;
                    }
                    options.push((d_in, peeled, n, m - 1));
                } else {
                    if rows.len() as i64 > m - 1 {
                        continue;
                    }
                    options.push((d_in, rows.clone(), n, m - 1));
                }
            }
        }
        if options.len() != 1 {
            return Err(Error::Internal(format!(
                "{} admissible left edges at height {h}",
                options.len()
            )));
        }
        let (d_in, next_rows, next_n, next_m) = options.pop().unwrap();
        rows = next_rows;
        n = next_n;
        m = next_m;
        h -= d_in;
        d_out = d_in;
        heights.push(h);
    }
    heights.reverse();
    Path::new(params, a, b, c, heights)
}
