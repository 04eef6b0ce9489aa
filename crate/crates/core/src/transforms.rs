//! B- and D-transforms, particle moves and the sector chain.

use crate::bijection::Partition;
use crate::cfmn::{model_zones, solve_m};
use crate::error::{Error, Result};
use crate::pathmodel::{ModelParams, Path};

/// `k` particles moved by `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransformRecord {
    pub k: usize,
    pub lambda: Partition,
}

/// Particle counts `n_1..n_t` and motions `λ^(1)..λ^(t-1)` naming one sector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorLabel {
    pub n_hat: Vec<i64>,
    pub lambdas: Vec<Partition>,
}

fn require_ground_state(h: &Path) -> Result<()> {
    if h.is_ground_state() {
        Ok(())
    } else {
        Err(Error::NotGroundState)
    }
}

fn require_moves(params: &ModelParams) -> Result<()> {
    if params.p_prime() > 2 * params.p() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "particle moves need p' > 2p, got ({}, {})",
            params.p(),
            params.p_prime()
        )))
    }
}

fn model(p: i64, p_prime: i64) -> ModelParams {
    ModelParams::new(p, p_prime).expect("transform targets are valid models")
}

/// Doubles the incoming segment of every scoring vertex; lands in `(p, p'+p)`.
pub fn b1(h: &Path) -> Result<Path> {
    require_ground_state(h)?;
    let params = h.params();
    let target = model(params.p(), params.p_prime() + params.p());
    let start = params.s0() + params.r0();
    let steps = h.steps();
    let flags = h.scoring_flags();
    let mut dilated = Vec::with_capacity(2 * h.len());
    for i in 1..=h.len() {
        if flags[i] {
            dilated.push(steps[i - 1]);
        }
        dilated.push(steps[i - 1]);
    }
    let out = Path::from_steps(target, start, &dilated, start + 1)?;
    if !out.is_ground_state() {
        return Err(Error::Internal("B1 image left the ground state".into()));
    }
    Ok(out)
}

/// Prepends `k` peaks in the even band next to the ground line.
pub fn b2(h0: &Path, k: usize) -> Result<Path> {
    require_ground_state(h0)?;
    let params = h0.params();
    require_moves(params)?;
    let s0 = params.s0();
    let pair = if s0 > 1 && !params.is_odd_band(s0 - 1) {
        [-1, 1]
    } else if !params.is_odd_band(s0) {
        [1, -1]
    } else {
        return Err(Error::Internal("no even band next to the ground line".into()));
    };
    let mut steps: Vec<i64> = pair.iter().copied().cycle().take(2 * k).collect();
    let mut rest = h0.steps();
    rest.pop();
    steps.extend(rest);
    Path::from_steps(*params, s0, &steps, h0.c())
}

fn rewrite(h: &Path, j: usize, want: [bool; 3]) -> Result<Path> {
    // callers guarantee j + 2 <= L, so only h_j..h_{j+2} change
    let (from, to) = (h.height(j - 1), h.height(j + 3));
    let wt = h.wt();
    let mut found: Option<Path> = None;
    for word in 0..16u32 {
        let steps: Vec<i64> = (0..4).map(|bit| if word >> bit & 1 == 1 { 1 } else { -1 }).collect();
        if steps.iter().sum::<i64>() != to - from {
            continue;
        }
        let mut cand = h.heights().to_vec();
        let mut level = from;
        for (off, &s) in steps.iter().take(3).enumerate() {
            level += s;
            cand[j + off] = level;
        }
        if cand[h.len()] != h.b() {
            continue;
        }
        let Ok(cand) = Path::from_heights(*h.params(), cand, h.c()) else {
            continue;
        };
        let flags = cand.scoring_flags();
        if (0..3).all(|off| flags[j + off] == want[off]) {
            if found.is_some() {
                return Err(Error::Internal(format!("move at {j} is not unique")));
            }
            found = Some(cand);
        }
    }
    let out = found.ok_or_else(|| Error::Domain(format!("no legal move at vertex {j}")))?;
    let expected = if want[0] { wt - 1 } else { wt + 1 };
    if out.wt() != expected {
        return Err(Error::Internal(format!("move at {j} changed wt by {}", out.wt() - wt)));
    }
    Ok(out)
}

/// Moves the particle at vertices `(j, j+1)` one step right.
pub fn particle_move(h: &Path, j: usize) -> Result<Path> {
    require_moves(h.params())?;
    let flags = h.scoring_flags();
    if j == 0 || j + 2 > h.len() || !flags[j] || !flags[j + 1] || flags[j + 2] {
        return Err(Error::Domain(format!("no movable particle at vertex {j}")));
    }
    rewrite(h, j, [false, true, true])
}

/// Inverse of [`particle_move`]: the particle at `(j+1, j+2)` moves to `(j, j+1)`.
pub fn particle_move_back(h: &Path, j: usize) -> Result<Path> {
    require_moves(h.params())?;
    let flags = h.scoring_flags();
    if j == 0 || j + 2 > h.len() || flags[j] || !flags[j + 1] || !flags[j + 2] {
        return Err(Error::Domain(format!("no particle to pull back at vertex {j}")));
    }
    rewrite(h, j, [true, true, false])
}

/// Moves the `i`-th rightmost of the `k` leading particles `λ_i` steps right.
pub fn b3(hk: &Path, k: usize, lambda: &Partition) -> Result<Path> {
    if lambda.num_parts() > k {
        return Err(Error::Domain(format!("λ has more than {k} parts")));
    }
    let bound = hk.m();
    if lambda.largest() > bound {
        return Err(Error::Domain(format!("λ has a part above m = {bound}")));
    }
    let mut h = hk.clone();
    for idx in 0..k {
        let mut j = 2 * (k - idx) - 1;
        for _ in 0..lambda.part(idx + 1) {
            let flags = h.scoring_flags();
            if flags.get(j + 2).copied().unwrap_or(false) {
                if flags.get(j + 3).copied().unwrap_or(true) {
                    return Err(Error::Internal(format!("particle at {j} is blocked")));
                }
                j += 1;
            }
            h = particle_move(&h, j)?;
            j += 1;
        }
    }
    Ok(h)
}

/// `B(k, λ) = B3(λ) ∘ B2(k) ∘ B1`.
pub fn b_transform(h: &Path, k: usize, lambda: &Partition) -> Result<Path> {
    let h0 = b1(h)?;
    let hk = b2(&h0, k)?;
    b3(&hk, k, lambda)
}

/// Same heights in `(p' - p, p')`.
pub fn d_transform(h: &Path) -> Result<Path> {
    require_ground_state(h)?;
    h.with_params(h.params().dual())
}

/// The unique `(h, k, λ)` with `B(k, λ)(h) = h'`. Paths with `p' < 2p` are
/// D-transformed first.
pub fn particle_content(h_prime: &Path) -> Result<(Path, TransformRecord)> {
    require_ground_state(h_prime)?;
    let params = h_prime.params();
    if params.p_prime() < 2 * params.p() {
        return particle_content_direct(&d_transform(h_prime)?);
    }
    particle_content_direct(h_prime)
}

fn particle_content_direct(h_prime: &Path) -> Result<(Path, TransformRecord)> {
    let params = *h_prime.params();
    require_moves(&params)?;
    if params.p_prime() - params.p() < 3 {
        return Err(Error::Unsupported("no path model below (1,3)".into()));
    }
    let mut h = h_prime.clone();
    let mut counts = Vec::new();
    loop {
        let flags = h.scoring_flags();
        let target = 2 * counts.len() + 1;
        let Some(mut j) = (target..h.len()).find(|&j| flags[j] && flags[j + 1]) else {
            break;
        };
        let mut moved = 0;
        while j > target {
            h = particle_move_back(&h, j - 1)?;
            j -= 1;
            moved += 1;
            // a third scoring vertex right behind: the latter two form the particle
            if j > target && h.scoring_flags()[j - 1] {
                j -= 1;
            }
        }
        counts.push(moved);
    }
    let k = counts.len();
    counts.reverse();
    let lambda = Partition::new(counts.into_iter().filter(|&x| x > 0).collect())?;

    let mut steps = h.steps();
    steps.pop();
    let h0 = Path::from_steps(params, params.s0(), &steps[2 * k..], h.c())?;
    let flags = h0.scoring_flags();
    let steps0 = h0.steps();
    let mut shrunk = Vec::with_capacity(h0.len());
    for i in 1..=h0.len() {
        if i < h0.len() && flags[i + 1] {
            if steps0[i - 1] != steps0[i] {
                return Err(Error::Internal("scoring vertex without a doubled segment".into()));
            }
            continue;
        }
        shrunk.push(steps0[i - 1]);
    }
    let below = model(params.p(), params.p_prime() - params.p());
    let start = params.s0() - params.r0();
    let h = Path::from_steps(below, start, &shrunk, start + 1)?;
    Ok((h, TransformRecord { k, lambda }))
}

/// The path `1,2,1,...,1` of length `2n` in `(1,3)`.
fn seed_path(n: i64) -> Path {
    let heights = (0..=2 * n).map(|i| 1 + i % 2).collect();
    Path::from_heights(model(1, 3), heights, 2).expect("zigzag is a valid (1,3) path")
}

/// Builds the path of a sector by running the transform chain up from `(1,3)`.
pub fn sector_construct(params: &ModelParams, label: &SectorLabel) -> Result<Path> {
    let z = model_zones(params);
    let t = z.rank();
    if label.n_hat.len() != t || label.lambdas.len() + 1 != t {
        return Err(Error::Domain(format!(
            "a rank-{t} sector needs {t} counts and {} partitions",
            t - 1
        )));
    }
    if label.n_hat.iter().any(|&n| n < 0) {
        return Err(Error::Domain("negative particle count".into()));
    }
    let sol = solve_m(&z, &label.n_hat)?;
    for j in 1..t {
        let lambda = &label.lambdas[j - 1];
        if !lambda.fits_box(label.n_hat[j - 1] as usize, sol.m_at(j as i64)) {
            return Err(Error::Domain(format!(
                "λ^({j}) must have at most {} parts of size at most {}",
                label.n_hat[j - 1],
                sol.m_at(j as i64)
            )));
        }
    }
    let mut h = seed_path(label.n_hat[t - 1]);
    for j in (1..t).rev() {
        if z.is_boundary(j as i64) {
            h = d_transform(&h)?;
        }
        h = b_transform(&h, label.n_hat[j - 1] as usize, &label.lambdas[j - 1])?;
    }
    if z.is_boundary(0) {
        h = d_transform(&h)?;
    }
    if h.params() != params || h.len() as i64 != sol.length() {
        return Err(Error::Internal("transform chain missed its target".into()));
    }
    Ok(h)
}

/// Reads off the sector of a ground-state path by repeated particle content.
pub fn sector_decompose(h: &Path) -> Result<SectorLabel> {
    require_ground_state(h)?;
    let z = model_zones(h.params());
    let t = z.rank();
    let mut cur = if z.is_boundary(0) { d_transform(h)? } else { h.clone() };
    let mut n_hat = Vec::with_capacity(t);
    let mut lambdas = Vec::with_capacity(t.saturating_sub(1));
    for j in 1..t {
        let (below, record) = particle_content_direct(&cur)?;
        n_hat.push(record.k as i64);
        lambdas.push(record.lambda);
        cur = if z.is_boundary(j as i64) { d_transform(&below)? } else { below };
    }
    if (cur.params().p(), cur.params().p_prime()) != (1, 3) {
        return Err(Error::Internal("decomposition did not reach (1,3)".into()));
    }
    n_hat.push(cur.len() as i64 / 2);
    Ok(SectorLabel { n_hat, lambdas })
}

/// All sector labels whose paths have length `len`.
pub fn sector_labels(params: &ModelParams, len: i64) -> Vec<SectorLabel> {
    let z = model_zones(params);
    let t = z.rank();
    let mut out = Vec::new();
    for n_hat in crate::cfmn::n_vectors_with_length(&z, len) {
        let sol = solve_m(&z, &n_hat).expect("length matches rank");
        let boxes: Vec<Vec<Partition>> = (1..t)
            .map(|j| Partition::in_box(n_hat[j - 1] as usize, sol.m_at(j as i64)))
            .collect();
        let mut idx = vec![0usize; boxes.len()];
        loop {
            out.push(SectorLabel {
                n_hat: n_hat.clone(),
                lambdas: idx.iter().zip(&boxes).map(|(&i, b)| b[i].clone()).collect(),
            });
            // odometer over the boxes
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < boxes[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    out
}
