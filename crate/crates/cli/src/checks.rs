//! Agreement sweeps shared by `fbpath verify` and the acceptance target.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use fbpaths::bijection::{
    enumerate_dki, partition_to_path, path_profile, satisfies_dki, HookConstraints, PathLabels,
};
use fbpaths::cfmn::{continued_fraction, format_mnsystem, model_zones, ContinuedFraction};
use fbpaths::charform::{
    chi_bosonic, chi_bruteforce, chi_fermionic_infinite_trunc, chi_fermionic_lambda,
    chi_fermionic_m, chi_normalize, dki_closed, dki_recurrence, gordon_trunc, phi_bruteforce,
    rocha_caridi_trunc, sector_genfun, sector_sum, CharLabels, RecurrenceTable,
};
use fbpaths::pathmodel::{enumerate_paths, PathJson};
use fbpaths::qseries::QSeriesTruncated;
use fbpaths::transforms::{
    b1, b2, b3, d_transform, particle_content, particle_move, particle_move_back,
    sector_construct, sector_decompose, sector_labels, TransformRecord,
};
use fbpaths::{ModelParams, Partition, Path, QPolynomial};
use rayon::prelude::*;
use serde_json::Value;

pub const GOLDEN_PATH: &str = include_str!("../../../fixtures/golden_path_3_11.json");
pub const GOLDEN_BIJECTION: &str = include_str!("../../../fixtures/bijection_3_8.json");
pub const GOLDEN_MNSYSTEM: &str = include_str!("../../../fixtures/mnsystem_9_31.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Golden,
    MnSystem,
    Bijection,
    Characters,
    Transforms,
    Sectors,
    Dki,
    Limits,
    Gordon,
    ContinuedFractions,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Golden,
        CheckId::MnSystem,
        CheckId::Bijection,
        CheckId::Characters,
        CheckId::Transforms,
        CheckId::Sectors,
        CheckId::Dki,
        CheckId::Limits,
        CheckId::Gordon,
        CheckId::ContinuedFractions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Golden => "golden",
            CheckId::MnSystem => "mnsystem",
            CheckId::Bijection => "bijection",
            CheckId::Characters => "characters",
            CheckId::Transforms => "transforms",
            CheckId::Sectors => "sectors",
            CheckId::Dki => "dki",
            CheckId::Limits => "limits",
            CheckId::Gordon => "gordon",
            CheckId::ContinuedFractions => "cf",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub char_max_p_prime: i64,
    pub char_max_len: usize,
    pub transform_max_p_prime: i64,
    pub transform_max_len: usize,
    /// Largest `k` fed to `B_2` in the transform suite.
    pub max_particles: usize,
    pub sector_models: Vec<(i64, i64)>,
    pub sector_max_len: usize,
    pub dki_max_k: i64,
    pub dki_max_size: i64,
    pub degree: usize,
    pub limit_models: Vec<(i64, i64)>,
    pub bosonic_len: usize,
    pub gordon_max_e0: usize,
    pub cf_max_p_prime: i64,
    /// Perturbs one bosonic polynomial so the harness has something to catch.
    pub inject_fault: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            char_max_p_prime: 10,
            char_max_len: 12,
            transform_max_p_prime: 8,
            transform_max_len: 10,
            max_particles: 2,
            sector_models: vec![(2, 5), (3, 8), (3, 11), (5, 8)],
            sector_max_len: 10,
            dki_max_k: 8,
            dki_max_size: 10,
            degree: 20,
            limit_models: vec![(3, 7), (3, 8), (4, 7), (5, 8)],
            bosonic_len: 60,
            gordon_max_e0: 5,
            cf_max_p_prime: 60,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub id: CheckId,
    pub cases: usize,
    pub notes: Vec<String>,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "check": self.id.name(),
            "status": if self.passed() { "pass" } else { "fail" },
            "cases": self.cases,
            "notes": self.notes,
            "failure": self.failure,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{:<12} {status}  cases={}", self.id.name(), self.cases)?;
        for note in &self.notes {
            write!(f, "\n    note: {note}")?;
        }
        if let Some(failure) = &self.failure {
            write!(f, "\n    counterexample: {failure}")?;
        }
        Ok(())
    }
}

/// Running tally of one check; `Err` carries the first counterexample.
#[derive(Default)]
struct Tally {
    cases: usize,
    notes: Vec<String>,
}

type Outcome = std::result::Result<usize, String>;

fn expect_eq<T: PartialEq + fmt::Display>(what: &str, labels: impl fmt::Display, lhs: &T, rhs: &T) -> Outcome {
    if lhs == rhs {
        Ok(1)
    } else {
        Err(format!("{what} at {labels}: {lhs} != {rhs}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(1)
    } else {
        Err(msg())
    }
}

fn lift<T, E: fmt::Display>(r: std::result::Result<T, E>, ctx: impl fmt::Display) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

/// Runs `f` over `items` in parallel and keeps the first failure in input order.
fn sweep<I: Sync, F: Fn(&I) -> Outcome + Sync + Send>(items: &[I], f: F) -> Outcome {
    let results: Vec<Outcome> = items.par_iter().map(f).collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}

fn models_up_to(max_p_prime: i64) -> Vec<ModelParams> {
    (2..=max_p_prime)
        .flat_map(|pp| (1..pp).filter_map(move |p| ModelParams::new(p, pp).ok()))
        .collect()
}

fn model(p: i64, pp: i64) -> std::result::Result<ModelParams, String> {
    lift(ModelParams::new(p, pp), format!("({p},{pp})"))
}

fn show_labels(l: &CharLabels) -> String {
    format!(
        "(p,p',a,b,c,L)=({},{},{},{},{},{})",
        l.params.p(),
        l.params.p_prime(),
        l.a,
        l.b,
        l.c,
        l.len
    )
}

pub fn run_check(id: CheckId, cfg: &SweepConfig) -> CheckReport {
    let mut tally = Tally::default();
    let result = match id {
        CheckId::Golden => check_golden(),
        CheckId::MnSystem => check_mnsystem(),
        CheckId::Bijection => check_bijection(cfg),
        CheckId::Characters => check_characters(cfg, &mut tally),
        CheckId::Transforms => check_transforms(cfg),
        CheckId::Sectors => check_sectors(cfg),
        CheckId::Dki => check_dki(cfg, &mut tally),
        CheckId::Limits => check_limits(cfg),
        CheckId::Gordon => check_gordon(cfg),
        CheckId::ContinuedFractions => check_cf(cfg),
    };
    match result {
        Ok(cases) => tally.cases += cases,
        Err(e) => {
            return CheckReport { id, cases: tally.cases, notes: tally.notes, failure: Some(e) };
        }
    }
    CheckReport { id, cases: tally.cases, notes: tally.notes, failure: None }
}

pub fn run_checks(ids: &[CheckId], cfg: &SweepConfig) -> Vec<CheckReport> {
    ids.iter().map(|&id| run_check(id, cfg)).collect()
}

fn json_i64s(v: &Value, key: &str) -> std::result::Result<Vec<i64>, String> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("fixture lacks {key}"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| format!("non-integer in {key}")))
        .collect()
}

fn json_i64(v: &Value, key: &str) -> std::result::Result<i64, String> {
    v.get(key).and_then(Value::as_i64).ok_or_else(|| format!("fixture lacks {key}"))
}

fn check_golden() -> Outcome {
    let doc: Value = lift(serde_json::from_str(GOLDEN_PATH), "golden fixture")?;
    let pj: PathJson = lift(serde_json::from_value(doc.clone()), "golden fixture")?;
    let h = lift(pj.to_path(), "golden path")?;
    let want = &doc["expected"];
    let mut n = 0;
    n += expect_eq("wt", "golden", &h.wt(), &json_i64(want, "wt")?)?;
    let positions: Vec<i64> = h.scoring_positions().iter().map(|&i| i as i64).collect();
    n += ensure(positions == json_i64s(want, "scoring_positions")?, || {
        format!("scoring positions {positions:?}")
    })?;
    let contributions: Vec<i64> = h.contributions().iter().map(|&(_, c)| c).collect();
    n += ensure(contributions == json_i64s(want, "contributions")?, || {
        format!("contributions {contributions:?}")
    })?;
    let ss = h.striking_sequence();
    let a: Vec<i64> = ss.pairs.iter().map(|&(a, _)| a as i64).collect();
    let b: Vec<i64> = ss.pairs.iter().map(|&(_, b)| b as i64).collect();
    n += ensure(a == json_i64s(want, "striking_a")? && b == json_i64s(want, "striking_b")?, || {
        format!("striking sequence a={a:?} b={b:?}")
    })?;
    n += expect_eq("m", "golden", &h.m(), &json_i64(want, "m")?)?;
    n += expect_eq("β", "golden", &h.beta(), &json_i64(want, "beta")?)?;
    n += expect_eq("striking-sequence weight", "golden", &ss.wt(), &h.wt())?;
    Ok(n)
}

fn check_mnsystem() -> Outcome {
    let text = format_mnsystem(&model_zones(&model(9, 31)?));
    let got: Vec<&str> = text.lines().collect();
    let want: Vec<&str> = GOLDEN_MNSYSTEM.lines().collect();
    ensure(got.len() == want.len(), || format!("{} lines, expected {}", got.len(), want.len()))?;
    for (k, (g, w)) in got.iter().zip(&want).enumerate() {
        ensure(g == w, || format!("line {}: {g:?} != {w:?}", k + 1))?;
    }
    Ok(got.len())
}

fn check_bijection(cfg: &SweepConfig) -> Outcome {
    let doc: Value = lift(serde_json::from_str(GOLDEN_BIJECTION), "bijection fixture")?;
    let pj: PathJson = lift(serde_json::from_value(doc["path"].clone()), "bijection fixture")?;
    let h = lift(pj.to_path(), "bijection path")?;
    let mu = lift(Partition::from_json(&doc["partition"]), "bijection partition")?;
    let mut n = 0;
    let profile = path_profile(&h);
    n += ensure(profile.partition == mu, || format!("path maps to {:?}", profile.partition.parts()))?;
    n += expect_eq("N", "golden bijection", &profile.n, &json_i64(&doc, "N")?)?;
    n += expect_eq("M", "golden bijection", &profile.m, &json_i64(&doc, "M")?)?;
    let labels = PathLabels { params: *h.params(), a: h.a(), b: h.b(), c: h.c(), len: h.len() };
    let back = lift(partition_to_path(&mu, &labels), "inverse map")?;
    n += ensure(back == h, || format!("partition maps back to {:?}", back.heights()))?;
    n += expect_eq("wt", "golden bijection", &h.wt(), &json_i64(&doc, "wt")?)?;
    n += expect_eq("partition weight", "golden bijection", &mu.wt(), &h.wt())?;
    let d = &doc["dki"];
    let hc = lift(
        HookConstraints::new(
            json_i64(d, "K")?,
            json_i64(d, "i")?,
            json_i64(d, "N")?,
            json_i64(d, "M")?,
            json_i64(d, "alpha")?,
            json_i64(d, "beta")?,
        ),
        "golden D_{K,i}",
    )?;
    n += ensure(lift(satisfies_dki(&mu, &hc), "golden D_{K,i}")?, || "partition outside D_{K,i}".into())?;

    // every path of the small models round-trips with its weight
    let models = models_up_to(cfg.transform_max_p_prime);
    n += sweep(&models, |&params| {
        let mut n = 0;
        let max = params.max_height();
        for len in 0..=cfg.transform_max_len {
            for a in 1..=max {
                for b in 1..=max {
                    for c in [b - 1, b + 1] {
                        let Ok(cl) = CharLabels::new(params, a, b, c, len) else { continue };
                        let labels = PathLabels { params, a, b, c, len };
                        let r = cl.r();
                        let window = HookConstraints::new(
                            params.p_prime(),
                            a,
                            ((len as i64) - a + b) / 2,
                            ((len as i64) + a - b) / 2,
                            params.p() - r,
                            r,
                        )
                        .ok()
                        .filter(|hc| hc.alpha >= 1 && hc.beta >= 1);
                        for h in enumerate_paths(params, a, b, c, len) {
                            let mu = path_profile(&h).partition;
                            let back = lift(partition_to_path(&mu, &labels), show_labels(&cl))?;
                            n += ensure(back == h, || {
                                format!("{} path {:?} returns as {:?}", show_labels(&cl), h.heights(), back.heights())
                            })?;
                            n += ensure(mu.wt() == h.wt(), || {
                                format!("{} path {:?}: |μ|={} but wt={}", show_labels(&cl), h.heights(), mu.wt(), h.wt())
                            })?;
                            if let Some(hc) = &window {
                                n += ensure(satisfies_dki(&mu, hc).unwrap_or(false), || {
                                    format!("{} path {:?} gives μ={:?} outside {hc:?}", show_labels(&cl), h.heights(), mu.parts())
                                })?;
                            }
                        }
                    }
                }
            }
        }
        Ok(n)
    })?;
    Ok(n)
}

fn check_characters(cfg: &SweepConfig, tally: &mut Tally) -> Outcome {
    let models = models_up_to(cfg.char_max_p_prime);
    for params in &models {
        if CharLabels::ground_state(*params, 0).is_err() {
            tally.notes.push(format!(
                "({},{}) has no valid labels (heights confined to 1..{})",
                params.p(),
                params.p_prime(),
                params.max_height()
            ));
        }
    }
    let fault = cfg.inject_fault;
    sweep(&models, |&params| {
        let mut n = 0;
        let max = params.max_height();
        // five ways on the ground state
        if let Ok(base) = CharLabels::ground_state(params, 0) {
            let table = RecurrenceTable::chi(params, base.a, cfg.char_max_len);
            for len in (0..=cfg.char_max_len).step_by(2) {
                let l = CharLabels { len, ..base };
                let who = show_labels(&l);
                let brute = chi_bruteforce(&l);
                let mut bos = chi_bosonic(&l);
                if fault && len == cfg.char_max_len.min(4) / 2 * 2 {
                    bos += &QPolynomial::monomial(0, 1);
                }
                n += expect_eq("chi_recurrence vs brute force", &who, &table.get(l.b, l.c, len), &brute)?;
                n += expect_eq("chi_bosonic vs brute force", &who, &bos, &brute)?;
                let fm = lift(chi_fermionic_m(&params, len), &who)?;
                n += expect_eq("chi_fermionic_m vs brute force", &who, &fm, &brute)?;
                let fl = lift(chi_fermionic_lambda(&params, len), &who)?;
                n += expect_eq("chi_fermionic_lambda vs brute force", &who, &fl, &brute)?;
            }
        }
        // three ways (plus the normalized φ) on every label
        for a in 1..=max {
            let table = RecurrenceTable::chi(params, a, cfg.char_max_len);
            let phi_table = RecurrenceTable::phi(params, a, cfg.char_max_len);
            for len in 0..=cfg.char_max_len {
                for b in 1..=max {
                    for c in [b - 1, b + 1] {
                        let Ok(l) = CharLabels::new(params, a, b, c, len) else { continue };
                        let who = show_labels(&l);
                        let brute = chi_bruteforce(&l);
                        let bos = chi_bosonic(&l);
                        n += expect_eq("chi_recurrence vs brute force", &who, &table.get(b, c, len), &brute)?;
                        n += expect_eq("chi_bosonic vs brute force", &who, &bos, &brute)?;
                        n += ensure(bos.all_coefficients_nonnegative(), || format!("negative coefficient at {who}"))?;
                        let phi = fbpaths::QuarterPolynomial(phi_table.get(b, c, len));
                        n += expect_eq("phi_recurrence vs brute force", &who, phi.inner(), phi_bruteforce(&l).inner())?;
                        let chi = lift(chi_normalize(&phi, &l), &who)?;
                        n += expect_eq("normalized phi vs brute force", &who, &chi, &brute)?;
                    }
                }
            }
        }
        Ok(n)
    })
}

fn striking_pairs(h: &Path) -> Vec<(u64, u64)> {
    h.striking_sequence().pairs
}

fn check_transforms(cfg: &SweepConfig) -> Outcome {
    let models: Vec<ModelParams> = models_up_to(cfg.transform_max_p_prime)
        .into_iter()
        .filter(|m| CharLabels::ground_state(*m, 0).is_ok())
        .collect();
    let mut jobs = Vec::new();
    for params in models {
        for len in (0..=cfg.transform_max_len).step_by(2) {
            jobs.push((params, len));
        }
    }
    sweep(&jobs, |&(params, len)| {
        let mut n = 0;
        let s0 = params.s0();
        for h in enumerate_paths(params, s0, s0, s0 + 1, len) {
            let who = format!("({},{}) path {:?}", params.p(), params.p_prime(), h.heights());
            let l = len as i64;
            let m = h.m();
            // β = 0 on the ground state
            n += expect_eq("β", &who, &h.beta(), &0)?;

            let d = lift(d_transform(&h), &who)?;
            let swapped: Vec<(u64, u64)> = striking_pairs(&h).into_iter().map(|(a, b)| (b, a)).collect();
            n += ensure(striking_pairs(&d) == swapped, || format!("D does not swap the striking sequence of {who}"))?;
            n += expect_eq("m after D", &who, &d.m(), &(l - m))?;
            n += expect_eq("L after D", &who, &d.len(), &len)?;
            n += expect_eq("4(wt + wt after D)", &who, &(4 * (h.wt() + d.wt())), &(l * l))?;

            let h0 = lift(b1(&h), &who)?;
            n += expect_eq("4(wt after B1 - wt)", &who, &(4 * (h0.wt() - h.wt())), &((l - m) * (l - m)))?;
            for k in 0..=cfg.max_particles {
                let hk = lift(b2(&h0, k), &who)?;
                let (lk, mk) = (hk.len() as i64, hk.m());
                n += expect_eq("L after B2", &who, &lk, &(h0.len() as i64 + 2 * k as i64))?;
                n += expect_eq("m after B2", &who, &mk, &h0.m())?;
                n += expect_eq("4(wt after B2 - wt)", &who, &(4 * (hk.wt() - h.wt())), &((lk - mk) * (lk - mk)))?;

                let mut seen = HashSet::new();
                for lambda in Partition::in_box(k, mk) {
                    let ctx = format!("{who} k={k} λ={:?}", lambda.parts());
                    let hl = lift(b3(&hk, k, &lambda), &ctx)?;
                    n += expect_eq("wt after B3", &ctx, &hl.wt(), &(hk.wt() + lambda.wt()))?;
                    n += expect_eq("L after B3", &ctx, &hl.len(), &hk.len())?;
                    n += expect_eq("m after B3", &ctx, &hl.m(), &mk)?;
                    n += ensure(seen.insert(hl.heights().to_vec()), || format!("{ctx}: B3 image repeats"))?;
                    let (back, record) = lift(particle_content(&hl), &ctx)?;
                    n += ensure(back == h && record == TransformRecord { k, lambda: lambda.clone() }, || {
                        format!("{ctx}: particle content gives {:?}, k={}, λ={:?}", back.heights(), record.k, record.lambda.parts())
                    })?;
                    for j in 1..hl.len() {
                        let Ok(moved) = particle_move(&hl, j) else { continue };
                        let mctx = format!("{ctx} move at {j}");
                        n += expect_eq("wt after a move", &mctx, &moved.wt(), &(hl.wt() + 1))?;
                        n += expect_eq("L after a move", &mctx, &moved.len(), &hl.len())?;
                        n += expect_eq("m after a move", &mctx, &moved.m(), &hl.m())?;
                        let undone = lift(particle_move_back(&moved, j), &mctx)?;
                        n += ensure(undone == hl, || format!("{mctx}: move back does not undo"))?;
                    }
                }
            }
        }
        Ok(n)
    })
}

fn check_sectors(cfg: &SweepConfig) -> Outcome {
    let mut jobs = Vec::new();
    for &(p, pp) in &cfg.sector_models {
        let params = model(p, pp)?;
        for len in (0..=cfg.sector_max_len).step_by(2) {
            jobs.push((params, len));
        }
    }
    sweep(&jobs, |&(params, len)| {
        let mut n = 0;
        let who = format!("({},{}) L={len}", params.p(), params.p_prime());
        let s0 = params.s0();
        let mut by_sector: BTreeMap<Vec<i64>, QPolynomial> = BTreeMap::new();
        let mut built = HashSet::new();
        for label in sector_labels(&params, len as i64) {
            let ctx = format!("{who} sector {:?}", label.n_hat);
            let h = lift(sector_construct(&params, &label), &ctx)?;
            n += ensure(built.insert(h.heights().to_vec()), || format!("{ctx}: path {:?} built twice", h.heights()))?;
            let back = lift(sector_decompose(&h), &ctx)?;
            n += ensure(back == label, || format!("{ctx}: decomposes to {:?}", back.n_hat))?;
            *by_sector.entry(label.n_hat.clone()).or_default() += &QPolynomial::monomial(h.wt(), 1);
        }
        let all: HashSet<Vec<i64>> = enumerate_paths(params, s0, s0, s0 + 1, len)
            .map(|h| h.heights().to_vec())
            .collect();
        n += ensure(all == built, || format!("{who}: sectors cover {} of {} paths", built.len(), all.len()))?;
        for (n_hat, poly) in &by_sector {
            let g = lift(sector_genfun(&params, n_hat), &who)?;
            n += expect_eq("sector generating function", format!("{who} n̂={n_hat:?}"), &g, poly)?;
        }
        let total = lift(sector_sum(&params, len), &who)?;
        let ferm = lift(chi_fermionic_m(&params, len), &who)?;
        let bos = chi_bosonic(&lift(CharLabels::ground_state(params, len), &who)?);
        n += expect_eq("sector sum vs fermionic", &who, &total, &ferm)?;
        n += expect_eq("sector sum vs bosonic", &who, &total, &bos)?;
        Ok(n)
    })
}

fn check_dki(cfg: &SweepConfig, tally: &mut Tally) -> Outcome {
    let mut jobs = Vec::new();
    for k in 3..=cfg.dki_max_k {
        for i in 1..=k / 2 {
            for alpha in 1..k {
                for beta in 1..k - alpha {
                    for size in 0..=cfg.dki_max_size {
                        for n in 0..=size {
                            if let Ok(hc) = HookConstraints::new(k, i, n, size - n, alpha, beta) {
                                jobs.push(hc);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut total = sweep(&jobs, |hc| {
        let who = format!("{hc:?}");
        let closed = lift(dki_closed(hc.k, hc.i, hc.n, hc.m, hc.alpha, hc.beta), &who)?;
        let rec = lift(dki_recurrence(hc.k, hc.i, hc.n, hc.m, hc.alpha, hc.beta), &who)?;
        let mut counted = QPolynomial::zero();
        for mu in lift(enumerate_dki(hc), &who)? {
            counted += &QPolynomial::monomial(mu.wt(), 1);
        }
        Ok(expect_eq("dki_closed vs enumeration", &who, &closed, &counted)?
            + expect_eq("dki_recurrence vs enumeration", &who, &rec, &counted)?)
    })?;

    // χ^{p,p'}_{a,b,c}(L) = D_{p',a}((L-a+b)/2, (L+a-b)/2; p-r, r)
    let models = models_up_to(cfg.dki_max_k);
    let compared = sweep(&models, |&params| {
        let mut n = 0;
        let max = params.max_height();
        for a in 1..=max {
            let table = RecurrenceTable::chi(params, a, cfg.dki_max_size as usize);
            for len in 0..=cfg.dki_max_size as usize {
                for b in 1..=max {
                    for c in [b - 1, b + 1] {
                        let Ok(l) = CharLabels::new(params, a, b, c, len) else { continue };
                        let r = l.r();
                        let (nn, mm) = ((len as i64 - a + b) / 2, (len as i64 + a - b) / 2);
                        let Ok(hc) = HookConstraints::new(params.p_prime(), a, nn, mm, params.p() - r, r) else {
                            continue;
                        };
                        if hc.alpha < 1 || hc.beta < 1 {
                            continue;
                        }
                        let who = show_labels(&l);
                        let d = lift(dki_closed(hc.k, hc.i, hc.n, hc.m, hc.alpha, hc.beta), &who)?;
                        n += expect_eq("χ vs D_{K,i}", &who, &table.get(b, c, len), &d)?;
                    }
                }
            }
        }
        Ok(n)
    })?;
    if compared == 0 {
        return Err("no labels fell inside the D_{K,i} window".into());
    }
    tally.notes.push(format!("{compared} character labels matched against D_{{K,i}}"));
    total += compared;
    Ok(total)
}

fn truncate(poly: &QPolynomial, degree: usize) -> std::result::Result<QSeriesTruncated, String> {
    let low = QPolynomial::from_terms(poly.terms().filter(|&(e, _)| e <= degree as i64).map(|(e, c)| (e, c.clone())));
    lift(QSeriesTruncated::from_polynomial(&low, degree), "truncation")
}

fn series_eq(what: &str, who: &str, lhs: &QSeriesTruncated, rhs: &QSeriesTruncated) -> Outcome {
    ensure(lhs == rhs, || {
        format!("{what} at {who}: {} != {}", lhs.to_polynomial(), rhs.to_polynomial())
    })
}

fn check_limits(cfg: &SweepConfig) -> Outcome {
    let d = cfg.degree;
    let mut models: Vec<(i64, i64)> = cfg.limit_models.clone();
    models.push((2, 5));
    sweep(&models, |&(p, pp)| {
        let params = model(p, pp)?;
        let who = format!("({p},{pp}) to degree {d}");
        let rocha = lift(rocha_caridi_trunc(p, pp, params.r0(), params.s0(), d), &who)?;
        let mut n = 0;
        if p > 2 {
            let ferm = lift(chi_fermionic_infinite_trunc(p, pp, d), &who)?;
            n += series_eq("Rocha-Caridi vs fermionic limit", &who, &rocha, &ferm)?;
        }
        let labels = lift(CharLabels::ground_state(params, cfg.bosonic_len), &who)?;
        let finite = truncate(&chi_bosonic(&labels), d)?;
        n += series_eq(&format!("bosonic L={} vs Rocha-Caridi", cfg.bosonic_len), &who, &finite, &rocha)?;
        Ok(n)
    })
}

fn check_gordon(cfg: &SweepConfig) -> Outcome {
    let d = cfg.degree;
    let e0s: Vec<usize> = (2..=cfg.gordon_max_e0).collect();
    sweep(&e0s, |&e0| {
        let pp = 2 * e0 as i64 + 1;
        let who = format!("(2,{pp}) to degree {d}");
        let rocha = lift(rocha_caridi_trunc(2, pp, 1, e0 as i64, d), &who)?;
        let gordon = lift(gordon_trunc(e0, d), &who)?;
        series_eq("Rocha-Caridi vs Gordon", &who, &rocha, &gordon)
    })
}

fn cf(pp: i64, p: i64) -> std::result::Result<ContinuedFraction, String> {
    lift(continued_fraction(pp, p), format!("{pp}/{p}"))
}

fn check_cf(cfg: &SweepConfig) -> Outcome {
    let mut n = 0;
    for params in models_up_to(cfg.cf_max_p_prime) {
        let (p, pp) = (params.p(), params.p_prime());
        let digits = cf(pp, p)?.digits;
        let who = format!("{pp}/{p}");
        n += ensure(cf(pp, p)?.value() == (pp, p), || format!("{who} does not evaluate back"))?;

        let mut shifted = digits.clone();
        shifted[0] += 1;
        n += ensure(cf(pp + p, p)?.digits == shifted, || format!("({pp}+{p})/{p} digits"))?;

        if pp > 2 * p {
            let mut dual = vec![1, digits[0] - 1];
            dual.extend_from_slice(&digits[1..]);
            n += ensure(cf(pp, pp - p)?.digits == dual, || format!("{pp}/({pp}-{p}) digits"))?;
        }

        let (s0, r0) = (params.s0(), params.r0());
        n += ensure((p * s0 - pp * r0).abs() == 1, || format!("{who}: |p s0 - p' r0| != 1"))?;
        if digits.len() > 1 {
            let head = ContinuedFraction { digits: digits[..digits.len() - 1].to_vec() };
            n += ensure(head.value() == (s0, r0), || {
                format!("{who}: s0/r0 = {s0}/{r0} but the leading digits give {:?}", head.value())
            })?;
        }
    }
    Ok(n)
}
