use std::collections::HashSet;

use fbpaths::pathmodel::{enumerate_paths, Direction, PathJson, VertexShape};
use fbpaths::transforms::{
    b1, b2, b_transform, d_transform, particle_content, particle_move, TransformRecord,
};
use fbpaths::{Error, ModelParams, Partition, Path};
use proptest::prelude::*;

fn model(p: i64, pp: i64) -> ModelParams {
    ModelParams::new(p, pp).unwrap()
}

const MODELS: &[(i64, i64)] = &[(1, 3), (1, 4), (2, 5), (3, 5), (2, 7), (3, 7), (4, 7), (3, 8), (5, 8), (4, 9)];

fn ground_paths(params: ModelParams, len: usize) -> Vec<Path> {
    let s0 = params.s0();
    enumerate_paths(params, s0, s0, s0 + 1, len).collect()
}

fn all_label_paths(params: ModelParams, len: usize) -> impl Iterator<Item = Path> {
    let max = params.max_height();
    (1..=max).flat_map(move |a| {
        (1..=max).flat_map(move |b| {
            [b - 1, b + 1]
                .into_iter()
                .filter(move |&c| (1..=max).contains(&c))
                .flat_map(move |c| enumerate_paths(params, a, b, c, len))
        })
    })
}

#[test]
fn striking_sequence_weight_up_to_fourteen() {
    for &(p, pp) in &[(2, 5), (3, 8), (3, 7)] {
        let params = model(p, pp);
        for len in 0..=14 {
            for h in all_label_paths(params, len) {
                let ss = h.striking_sequence();
                assert_eq!(ss.wt(), h.wt(), "{:?}", h.heights());
                assert_eq!(ss.length(), len);
                assert_eq!(ss.heights_from(h.a()), h.heights());
            }
        }
    }
}

#[test]
fn vertex_coordinates_and_scoring_count() {
    for &(p, pp) in MODELS {
        let params = model(p, pp);
        for len in 0..=8 {
            for h in all_label_paths(params, len) {
                let mut downs = 0;
                for i in 1..=len {
                    if h.height(i) < h.height(i - 1) {
                        downs += 1;
                    }
                    let v = h.vertex(i);
                    assert_eq!(v.x + v.y, i as i64);
                    assert!(v.x >= 0 && v.y >= 0);
                    // x counts SE segments so far, y the NE ones
                    assert_eq!(v.x, downs);
                }
                assert_eq!(h.scoring_positions().len() as i64, len as i64 - h.m());
            }
        }
    }
}

#[test]
fn dual_swaps_band_parities() {
    for pp in 3..=13 {
        for p in 1..pp {
            let Ok(params) = ModelParams::new(p, pp) else { continue };
            let dual = params.dual();
            assert_eq!((dual.p(), dual.p_prime()), (pp - p, pp));
            for h in 1..pp - 1 {
                assert_ne!(params.is_odd_band(h), dual.is_odd_band(h), "({p},{pp}) band {h}");
            }
        }
    }
}

#[test]
fn unique_path_in_the_trivial_model() {
    for len in (0..=12).step_by(2) {
        let paths = ground_paths(model(1, 3), len);
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].wt() as usize, len * len / 4);
    }
}

#[test]
fn flips_keep_beta() {
    for &(p, pp) in MODELS {
        let params = model(p, pp);
        for len in (2..=8).step_by(2) {
            for h in ground_paths(params, len) {
                for i in 1..len {
                    if let Ok(f) = h.flip(i) {
                        assert_eq!(f.beta(), h.beta());
                    }
                }
            }
        }
    }
}

#[test]
fn flip_below_one_is_refused() {
    let h = Path::new(model(2, 5), 1, 1, 2, vec![1, 2, 1]).unwrap();
    assert!(matches!(h.flip(1), Err(Error::FlipOutOfRange(1))));
    let valley = Path::new(model(2, 5), 2, 2, 3, vec![2, 1, 2]).unwrap();
    assert_eq!(valley.flip(1).unwrap().heights(), &[2, 3, 2]);
}

#[test]
fn b1_preserves_scoring_shapes_and_parities() {
    for &(p, pp) in MODELS {
        let params = model(p, pp);
        for len in (0..=10).step_by(2) {
            for h in ground_paths(params, len) {
                let h0 = b1(&h).unwrap();
                assert_eq!(h0.params(), &model(p, pp + p));
                assert_eq!(h0.a(), params.s0() + params.r0());
                let labels = |g: &Path| -> Vec<_> {
                    g.vertices().filter(|v| v.is_scoring()).map(|v| (v.shape, v.parity)).collect()
                };
                assert_eq!(labels(&h0), labels(&h));
                let flags = h0.scoring_flags();
                assert!(h0.is_empty() || !flags[1], "vertex 1 scores after B1");
                assert!((1..h0.len()).all(|i| !(flags[i] && flags[i + 1])));
            }
        }
    }
}

#[test]
fn b1_lands_in_the_larger_model() {
    // paths of P^{3,8}_3(16) with eight scoring vertices go to P^{3,11}_4(24)
    let mut hits = 0;
    for h in ground_paths(model(3, 8), 16) {
        if h.m() != 8 {
            continue;
        }
        let h0 = b1(&h).unwrap();
        assert_eq!((h0.params().p_prime(), h0.a(), h0.len()), (11, 4, 24));
        assert!(h0.is_ground_state());
        hits += 1;
    }
    assert!(hits > 0);
}

#[test]
fn b2_on_the_empty_trivial_path() {
    let seed = Path::new(model(1, 3), 1, 1, 2, vec![1]).unwrap();
    for k in 0..6 {
        let hk = b2(&seed, k).unwrap();
        assert_eq!(hk.len(), 2 * k);
        assert_eq!(hk.wt(), (k * k) as i64);
    }
}

#[test]
fn adjacent_particles_block_each_other() {
    // two particles packed at the start: the rear one has nowhere to go
    let h = b2(&Path::new(model(1, 3), 1, 1, 2, vec![1]).unwrap(), 2).unwrap();
    assert!(particle_move(&h, 1).is_err());
}

#[test]
fn moves_on_every_two_five_path() {
    let params = model(2, 5);
    for len in 0..=10 {
        for h in all_label_paths(params, len) {
            for j in 1..len {
                if let Ok(moved) = particle_move(&h, j) {
                    assert_eq!(moved.wt(), h.wt() + 1);
                    assert_eq!(moved.m(), h.m());
                    assert_eq!(moved.len(), h.len());
                }
            }
        }
    }
}

#[test]
fn b_transform_mn_relation() {
    for &(p, pp) in &[(1, 3), (1, 4), (2, 5), (2, 7), (3, 7)] {
        let params = model(p, pp);
        for len in (0..=8).step_by(2) {
            for h in ground_paths(params, len) {
                for k in 0..3 {
                    let h0 = b2(&b1(&h).unwrap(), k).unwrap();
                    for lambda in Partition::in_box(k, h0.m()) {
                        let hp = b_transform(&h, k, &lambda).unwrap();
                        assert_eq!(hp.m(), len as i64);
                        assert_eq!(hp.len() as i64 + h.m(), 2 * hp.m() + 2 * k as i64);
                    }
                }
            }
        }
    }
}

#[test]
fn b_transform_is_injective() {
    let params = model(2, 5);
    let mut seen = HashSet::new();
    for len in (0..=6).step_by(2) {
        for h in ground_paths(params, len) {
            for k in 0..3 {
                let m = b2(&b1(&h).unwrap(), k).unwrap().m();
                for lambda in Partition::in_box(k, m) {
                    let hp = b_transform(&h, k, &lambda).unwrap();
                    assert!(seen.insert(hp.heights().to_vec()), "{:?} hit twice", hp.heights());
                }
            }
        }
    }
}

#[test]
fn particle_content_descends_a_model() {
    let params = model(3, 11);
    for h in ground_paths(params, 8) {
        let (below, _) = particle_content(&h).unwrap();
        assert_eq!(below.params(), &model(3, 8));
        assert_eq!(below.a(), params.s0() - params.r0());
    }
}

#[test]
fn content_below_twice_p_goes_through_the_dual() {
    let params = model(5, 8);
    for len in (0..=8).step_by(2) {
        for h in ground_paths(params, len) {
            let direct = particle_content(&h).unwrap();
            let via = particle_content(&d_transform(&h).unwrap()).unwrap();
            assert_eq!(direct, via);
            assert_eq!(d_transform(&d_transform(&h).unwrap()).unwrap(), h);
        }
    }
}

#[test]
fn transforms_refuse_non_ground_paths() {
    let h = Path::new(model(2, 5), 1, 1, 2, vec![1, 2, 1]).unwrap();
    assert!(!h.is_ground_state());
    assert!(matches!(b1(&h), Err(Error::NotGroundState)));
    assert!(matches!(d_transform(&h), Err(Error::NotGroundState)));
}

fn labelled_path() -> impl Strategy<Value = Path> {
    (0..MODELS.len(), 0usize..14, prop::collection::vec(any::<bool>(), 14), any::<u8>(), any::<bool>()).prop_map(
        |(mi, len, ups, start, c_up)| {
            let (p, pp) = MODELS[mi];
            let params = model(p, pp);
            let max = params.max_height();
            let mut h = 1 + start as i64 % max;
            let mut heights = vec![h];
            for &up in &ups[..len] {
                let mut step = if up { 1 } else { -1 };
                if !(1..=max).contains(&(h + step)) {
                    step = -step;
                }
                h += step;
                heights.push(h);
            }
            let mut c = if c_up { h + 1 } else { h - 1 };
            if !(1..=max).contains(&c) {
                c = 2 * h - c;
            }
            Path::from_heights(params, heights, c).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn path_json_roundtrip(h in labelled_path()) {
        let text = serde_json::to_string(&h.to_json()).unwrap();
        let back: PathJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_path().unwrap(), h);
    }

    #[test]
    fn steps_roundtrip(h in labelled_path()) {
        let mut steps = h.steps();
        prop_assert_eq!(steps.pop(), Some(h.c() - h.b()));
        let rebuilt = Path::from_steps(*h.params(), h.a(), &steps, h.c()).unwrap();
        prop_assert_eq!(rebuilt, h);
    }

    #[test]
    fn peaks_have_opposite_steps(h in labelled_path()) {
        let steps = h.steps();
        for i in 1..=h.len() {
            let v = h.vertex(i);
            prop_assert_eq!(v.shape.is_peak(), steps[i - 1] != steps[i]);
            if v.shape == VertexShape::PeakUp {
                prop_assert_eq!(Direction::from_step(steps[i - 1]), Direction::Up);
            }
        }
    }

    #[test]
    fn weight_is_sum_of_contributions(h in labelled_path()) {
        let total: i64 = h.contributions().iter().map(|&(_, c)| c).sum();
        prop_assert_eq!(total, h.wt());
        prop_assert_eq!(h.striking_sequence().wt(), h.wt());
    }

    #[test]
    fn content_undoes_b(mi in 0..MODELS.len(), len in (0usize..5).prop_map(|x| 2 * x), pick in any::<usize>(), k in 0usize..4, seed in any::<u64>()) {
        let (p, pp) = MODELS[mi];
        let params = model(p, pp);
        let paths = ground_paths(params, len);
        prop_assume!(!paths.is_empty());
        let h = &paths[pick % paths.len()];
        let m = b2(&b1(h).unwrap(), k).unwrap().m();
        let boxed = Partition::in_box(k, m);
        let lambda = boxed[(seed as usize) % boxed.len()].clone();
        let hp = b_transform(h, k, &lambda).unwrap();
        let (back, record) = particle_content(&hp).unwrap();
        prop_assert_eq!(&back, h);
        prop_assert_eq!(record, TransformRecord { k, lambda: lambda.clone() });
        prop_assert_eq!(hp.wt(), h.wt() + ((hp.len() as i64 - m).pow(2)) / 4 + lambda.wt());
    }
}
