//! Forrester–Baxter paths, bands, weights and striking sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// A coprime pair `0 < p < p'` together with its ground-line data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelParams {
    p: i64,
    p_prime: i64,
    s0: i64,
    r0: i64,
}

impl ModelParams {
    pub fn new(p: i64, p_prime: i64) -> Result<Self> {
        if p <= 0 || p >= p_prime || gcd(p, p_prime) != 1 {
            return Err(Error::InvalidModel { p, p_prime });
        }
        let (s0, r0) = ground_line(p, p_prime);
        Ok(Self { p, p_prime, s0, r0 })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn p_prime(&self) -> i64 {
        self.p_prime
    }

    /// Smallest `s0 >= 1` with `|p s0 - p' r0| = 1` for some `r0 >= 0`.
    pub fn s0(&self) -> i64 {
        self.s0
    }

    pub fn r0(&self) -> i64 {
        self.r0
    }

    /// Highest legal height, `p' - 1`.
    pub fn max_height(&self) -> i64 {
        self.p_prime - 1
    }

    /// `⌊p h / p'⌋`.
    pub fn r(&self, h: i64) -> i64 {
        (self.p * h).div_euclid(self.p_prime)
    }

    /// `⌊(p' - p) h / p'⌋`.
    pub fn r_hat(&self, h: i64) -> i64 {
        ((self.p_prime - self.p) * h).div_euclid(self.p_prime)
    }

    /// Parity of the band between heights `h` and `h+1`, with no range check.
    pub fn is_odd_band(&self, h: i64) -> bool {
        self.r(h) != self.r(h + 1)
    }

    pub fn band_parity(&self, h: i64) -> Result<Parity> {
        if h < 1 || h > self.p_prime - 2 {
            return Err(Error::BandOutOfRange(h));
        }
        Ok(if self.is_odd_band(h) { Parity::Odd } else { Parity::Even })
    }

    /// Lower edges of the odd bands, bottom to top.
    pub fn odd_bands(&self) -> Vec<i64> {
        (1..=self.p_prime - 2).filter(|&h| self.is_odd_band(h)).collect()
    }

    /// The model `(p' - p, p')` with every band parity swapped.
    pub fn dual(&self) -> Self {
        Self::new(self.p_prime - self.p, self.p_prime).expect("dual of a valid model")
    }
}

fn ground_line(p: i64, p_prime: i64) -> (i64, i64) {
    for s in 1..=p_prime {
        // the only candidates for r are the neighbours of p s / p'
        let base = (p * s).div_euclid(p_prime);
        for r in [base, base + 1] {
            if (p * s - p_prime * r).abs() == 1 {
                return (s, r);
            }
        }
    }
    unreachable!("coprime pairs always have a ground line")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// NE, height increases.
    Up,
    /// SE, height decreases.
    Down,
}

impl Direction {
    pub fn from_step(step: i64) -> Self {
        if step > 0 {
            Direction::Up
        } else {
            Direction::Down
        }
    }

    pub fn step(self) -> i64 {
        match self {
            Direction::Up => 1,
            Direction::Down => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexShape {
    StraightUp,
    StraightDown,
    /// Local maximum: up then down.
    PeakUp,
    /// Local minimum: down then up.
    PeakDown,
}

impl VertexShape {
    fn from_steps(d_in: i64, d_out: i64) -> Self {
        match (d_in > 0, d_out > 0) {
            (true, true) => VertexShape::StraightUp,
            (false, false) => VertexShape::StraightDown,
            (true, false) => VertexShape::PeakUp,
            (false, true) => VertexShape::PeakDown,
        }
    }

    pub fn is_peak(self) -> bool {
        matches!(self, VertexShape::PeakUp | VertexShape::PeakDown)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexInfo {
    pub index: usize,
    pub shape: VertexShape,
    /// Parity of the band directly below or above the vertex's right edge.
    pub parity: Parity,
    pub x: i64,
    pub y: i64,
}

impl VertexInfo {
    pub fn is_scoring(&self) -> bool {
        self.contribution().is_some()
    }

    /// Local weight `c_i`, or `None` for a non-scoring vertex.
    pub fn contribution(&self) -> Option<i64> {
        use Parity::*;
        use VertexShape::*;
        match (self.shape, self.parity) {
            (StraightUp, Odd) | (PeakUp, Even) => Some(self.x),
            (StraightDown, Odd) | (PeakDown, Even) => Some(self.y),
            _ => None,
        }
    }
}

/// Scoring test from the two steps at a vertex and the band parity of its right edge.
pub(crate) fn scores(params: &ModelParams, h: i64, d_in: i64, d_out: i64) -> bool {
    let odd = params.is_odd_band(h.min(h + d_out));
    (d_in == d_out) == odd
}

/// A validated path `h_0..h_L` with post-endpoint `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    params: ModelParams,
    c: i64,
    heights: Vec<i64>,
}

impl Path {
    /// Validates raw data; `a` and `b` must match the first and last heights.
    pub fn new(params: ModelParams, a: i64, b: i64, c: i64, heights: Vec<i64>) -> Result<Self> {
        let (first, last) = match (heights.first(), heights.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::EndpointMismatch("empty height sequence".into())),
        };
        if first != a || last != b {
            return Err(Error::EndpointMismatch(format!(
                "path runs {first}..{last}, labels say {a}..{b}"
            )));
        }
        Self::from_heights(params, heights, c)
    }

    /// Validates a height sequence; `a` and `b` are read off its ends.
    pub fn from_heights(params: ModelParams, heights: Vec<i64>, c: i64) -> Result<Self> {
        let max = params.max_height();
        let Some(&b) = heights.last() else {
            return Err(Error::EndpointMismatch("empty height sequence".into()));
        };
        for (index, &height) in heights.iter().enumerate() {
            if height < 1 || height > max {
                return Err(Error::HeightOutOfRange { index, height, max });
            }
        }
        if let Some(index) = heights.windows(2).position(|w| (w[1] - w[0]).abs() != 1) {
            return Err(Error::NonUnitStep { index });
        }
        if (c - b).abs() != 1 || c < 1 || c > max {
            return Err(Error::InvalidPostEndpoint { b, c });
        }
        Ok(Self { params, c, heights })
    }

    /// Builds a path from a start height and the steps `d_1..d_L`.
    pub fn from_steps(params: ModelParams, start: i64, steps: &[i64], c: i64) -> Result<Self> {
        let mut heights = Vec::with_capacity(steps.len() + 1);
        heights.push(start);
        let mut h = start;
        for &d in steps {
            h += d;
            heights.push(h);
        }
        Self::from_heights(params, heights, c)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn a(&self) -> i64 {
        self.heights[0]
    }

    pub fn b(&self) -> i64 {
        *self.heights.last().unwrap()
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    /// `h_i` for `0 <= i <= L + 1`, where `h_{L+1} = c`.
    pub fn height(&self, i: usize) -> i64 {
        if i == self.heights.len() {
            self.c
        } else {
            self.heights[i]
        }
    }

    /// Steps `d_1..d_{L+1}`; the last one is `c - b`. Index `i-1` holds `d_i`.
    pub fn steps(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.heights.windows(2).map(|w| w[1] - w[0]).collect();
        s.push(self.c - self.b());
        s
    }

    /// True for paths in `P^{p,p'}_{s0,s0,s0+1}`.
    pub fn is_ground_state(&self) -> bool {
        let s0 = self.params.s0();
        self.a() == s0 && self.b() == s0 && self.c == s0 + 1
    }

    /// Same heights read in another model; used by the D-transform.
    pub fn with_params(&self, params: ModelParams) -> Result<Self> {
        Self::from_heights(params, self.heights.clone(), self.c)
    }

    /// Vertex `i`, `1 <= i <= L`.
    pub fn vertex(&self, i: usize) -> VertexInfo {
        assert!(i >= 1 && i <= self.len(), "vertex index {i} out of range");
        let (prev, h, next) = (self.heights[i - 1], self.heights[i], self.height(i + 1));
        let rise = h - self.a();
        VertexInfo {
            index: i,
            shape: VertexShape::from_steps(h - prev, next - h),
            parity: if self.params.is_odd_band(h.min(next)) { Parity::Odd } else { Parity::Even },
            x: (i as i64 - rise) / 2,
            y: (i as i64 + rise) / 2,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexInfo> + '_ {
        (1..=self.len()).map(|i| self.vertex(i))
    }

    /// `flags[i]` tells whether vertex `i` scores; `flags[0]` is unused.
    pub fn scoring_flags(&self) -> Vec<bool> {
        std::iter::once(false)
            .chain((1..=self.len()).map(|i| {
                let h = self.heights[i];
                scores(&self.params, h, h - self.heights[i - 1], self.height(i + 1) - h)
            }))
            .collect()
    }

    pub fn scoring_positions(&self) -> Vec<usize> {
        let flags = self.scoring_flags();
        (1..flags.len()).filter(|&i| flags[i]).collect()
    }

    /// `(i, c_i)` for every scoring vertex, left to right.
    pub fn contributions(&self) -> Vec<(usize, i64)> {
        self.vertices()
            .filter_map(|v| v.contribution().map(|c| (v.index, c)))
            .collect()
    }

    /// `wt(h) = Σ c_i`.
    pub fn wt(&self) -> i64 {
        self.vertices().filter_map(|v| v.contribution()).sum()
    }

    /// `Σ i c_FB(h_{i-1}, h_i, h_{i+1})` in quarter units.
    pub fn wt_fb(&self) -> i64 {
        let mut total = 0;
        for i in 1..=self.len() {
            let (prev, next) = (self.heights[i - 1], self.height(i + 1));
            let i = i as i64;
            total += if prev != next {
                2 * i
            } else if self.heights[i as usize] > prev {
                -4 * i * self.params.r_hat(prev)
            } else {
                4 * i * self.params.r_hat(prev)
            };
        }
        total
    }

    pub fn striking_sequence(&self) -> StrikingSequence {
        let len = self.len();
        if len == 0 {
            return StrikingSequence { first_direction: None, pairs: vec![] };
        }
        let steps = self.steps();
        let flags = self.scoring_flags();
        let mut pairs = Vec::new();
        let (mut run, mut scored) = (0u64, 0u64);
        for i in 1..=len {
            run += 1;
            scored += flags[i] as u64;
            if i == len || steps[i] != steps[i - 1] {
                pairs.push((run - scored, scored));
                run = 0;
                scored = 0;
            }
        }
        StrikingSequence {
            first_direction: Some(Direction::from_step(steps[0])),
            pairs,
        }
    }

    pub fn m(&self) -> i64 {
        self.striking_sequence().m()
    }

    pub fn beta(&self) -> i64 {
        self.striking_sequence().beta()
    }

    /// Exchanges the two segments meeting at peak `i`, `1 <= i < L`.
    pub fn flip(&self, i: usize) -> Result<Path> {
        if i == 0 || i >= self.len() {
            return Err(Error::NotAPeak(i));
        }
        let (prev, h, next) = (self.heights[i - 1], self.heights[i], self.heights[i + 1]);
        if prev != next {
            return Err(Error::NotAPeak(i));
        }
        let flipped = 2 * prev - h;
        if flipped < 1 || flipped > self.params.max_height() {
            return Err(Error::FlipOutOfRange(i));
        }
        let mut heights = self.heights.clone();
        heights[i] = flipped;
        Ok(Path { heights, ..*self })
    }

    pub fn to_json(&self) -> PathJson {
        PathJson {
            p: self.params.p(),
            p_prime: self.params.p_prime(),
            a: self.a(),
            b: self.b(),
            c: self.c,
            length: self.len(),
            heights: self.heights.clone(),
        }
    }
}

/// Wire format `{p, p', a, b, c, L, heights}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub p: i64,
    #[serde(rename = "p'")]
    pub p_prime: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    #[serde(rename = "L")]
    pub length: usize,
    pub heights: Vec<i64>,
}

impl PathJson {
    pub fn to_path(&self) -> Result<Path> {
        if self.heights.len() != self.length + 1 {
            return Err(Error::EndpointMismatch(format!(
                "L={} but {} heights given",
                self.length,
                self.heights.len()
            )));
        }
        let params = ModelParams::new(self.p, self.p_prime)?;
        Path::new(params, self.a, self.b, self.c, self.heights.clone())
    }
}

/// Run-length view of a path: one `(a_i, b_i)` per maximal straight line,
/// `b_i` counting its scoring vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrikingSequence {
    pub first_direction: Option<Direction>,
    pub pairs: Vec<(u64, u64)>,
}

impl StrikingSequence {
    pub fn m(&self) -> i64 {
        self.pairs.iter().map(|&(a, _)| a as i64).sum()
    }

    /// `(b_1 + b_3 + ...) - (b_2 + b_4 + ...)`.
    pub fn beta(&self) -> i64 {
        self.pairs
            .iter()
            .enumerate()
            .map(|(k, &(_, b))| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn length(&self) -> usize {
        self.pairs.iter().map(|&(a, b)| (a + b) as usize).sum()
    }

    /// `Σ_i b_i (w_{i-1} + w_{i-3} + ...)`.
    pub fn wt(&self) -> i64 {
        let w: Vec<i64> = self.pairs.iter().map(|&(a, b)| (a + b) as i64).collect();
        let mut total = 0;
        for (i, &(_, b)) in self.pairs.iter().enumerate() {
            let reach: i64 = (0..i).rev().step_by(2).map(|k| w[k]).sum();
            total += b as i64 * reach;
        }
        total
    }

    /// Heights traced from `start`.
    pub fn heights_from(&self, start: i64) -> Vec<i64> {
        let mut heights = vec![start];
        let Some(first) = self.first_direction else {
            return heights;
        };
        let mut step = first.step();
        let mut h = start;
        for &(a, b) in &self.pairs {
            for _ in 0..a + b {
                h += step;
                heights.push(h);
            }
            step = -step;
        }
        heights
    }
}

/// Depth-first enumeration of `P^{p,p'}_{a,b,c}(L)`, up-steps tried first.
pub struct PathIter {
    params: ModelParams,
    b: i64,
    c: i64,
    len: usize,
    heights: Vec<i64>,
    // tried[k]: how many of the two children of heights[k] were tried
    tried: Vec<u8>,
    state: IterState,
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

pub fn enumerate_paths(params: ModelParams, a: i64, b: i64, c: i64, len: usize) -> PathIter {
    let max = params.max_height();
    let compatible = (1..=max).contains(&a)
        && (1..=max).contains(&b)
        && (1..=max).contains(&c)
        && (c - b).abs() == 1
        && (a - b).abs() <= len as i64
        && (len as i64 + a - b) % 2 == 0;
    PathIter {
        params,
        b,
        c,
        len,
        heights: vec![a],
        tried: vec![0],
        state: if compatible { IterState::Fresh } else { IterState::Done },
    }
}

impl PathIter {
    fn descend(&mut self) -> bool {
        let depth = self.heights.len() - 1;
        let remaining = (self.len - depth - 1) as i64;
        let last = self.heights[depth];
        while self.tried[depth] < 2 {
            let step = if self.tried[depth] == 0 { 1 } else { -1 };
            self.tried[depth] += 1;
            let h = last + step;
            if h >= 1 && h <= self.params.max_height() && (h - self.b).abs() <= remaining {
                self.heights.push(h);
                self.tried.push(0);
                return true;
            }
        }
        false
    }

    fn backtrack(&mut self) -> bool {
        self.heights.pop();
        self.tried.pop();
        !self.heights.is_empty()
    }

    fn leaf(&self) -> Path {
        Path { params: self.params, c: self.c, heights: self.heights.clone() }
    }
}

impl Iterator for PathIter {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => self.state = IterState::Running,
            IterState::Running => {
                if !self.backtrack() {
                    self.state = IterState::Done;
                    return None;
                }
            }
        }
        loop {
            if self.heights.len() == self.len + 1 {
                return Some(self.leaf());
            }
            if !self.descend() && !self.backtrack() {
                self.state = IterState::Done;
                return None;
            }
        }
    }
}
