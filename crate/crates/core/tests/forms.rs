use std::collections::{BTreeSet, HashSet};

use fbpaths::bijection::{enumerate_dki, path_to_partition, HookConstraints};
use fbpaths::cfmn::{
    cartan_like, continued_fraction, m0_coefficients, model_zones, n_vectors_with_length, solve_m,
    verify_cartan, zones,
};
use fbpaths::charform::{
    chi_bosonic, chi_fermionic_m, chi_normalize, chi_recurrence, dki_closed, dki_recurrence,
    lambda_exponents, lambda_variables, phi_recurrence, rocha_caridi_trunc, sector_genfun,
    CharLabels,
};
use fbpaths::pathmodel::enumerate_paths;
use fbpaths::qseries::gaussian;
use fbpaths::{ModelParams, Partition, QPolynomial, QSeriesTruncated};
use proptest::prelude::*;

fn models(max_p_prime: i64) -> Vec<ModelParams> {
    (3..=max_p_prime)
        .flat_map(|pp| (1..pp).filter_map(move |p| ModelParams::new(p, pp).ok()))
        .collect()
}

#[test]
fn m_vectors_even_and_non_negative() {
    for params in models(20) {
        let z = model_zones(&params);
        let c = cartan_like(&z);
        for len in (0..=12).step_by(2) {
            for n_hat in n_vectors_with_length(&z, len) {
                let sol = solve_m(&z, &n_hat).unwrap();
                assert!(sol.m.iter().all(|&m| m >= 0 && m % 2 == 0), "{params:?} {n_hat:?}");
                assert_eq!(sol.length(), len);
                assert!(verify_cartan(&c, &sol.m, &sol.n_vector()));
            }
        }
    }
}

#[test]
fn m0_coefficients_positive() {
    for params in models(30) {
        assert!(m0_coefficients(&model_zones(&params)).iter().all(|&l| l > 0));
    }
}

#[test]
fn quadratic_form_identity() {
    for params in models(16) {
        let z = model_zones(&params);
        let c = cartan_like(&z);
        let t = z.rank();
        for len in (0..=12).step_by(2) {
            for n_hat in n_vectors_with_length(&z, len) {
                let sol = solve_m(&z, &n_hat).unwrap();
                let m1 = sol.m_at(1);
                let paired: i64 = (1..t).map(|j| sol.m_at(j as i64) * n_hat[j - 1]).sum();
                let qf = c.quadratic_form(&sol.m);
                // doubled to stay in integers
                let rhs = if z.t_mu[1] == 0 { -qf + len * m1 + len * len } else { -qf - len * m1 + 2 * len * len };
                assert_eq!(2 * paired, rhs, "{params:?} {n_hat:?}");
            }
        }
    }
}

#[test]
fn rank_and_zone_counts_under_transforms() {
    for params in models(30) {
        let (p, pp) = (params.p(), params.p_prime());
        let z = model_zones(&params);
        let up = zones(&continued_fraction(pp + p, p).unwrap());
        assert_eq!(up.rank(), z.rank() + 1);
        assert_eq!(up.n(), z.n());
        if pp > 2 * p {
            let dual = zones(&continued_fraction(pp, pp - p).unwrap());
            assert_eq!(dual.rank(), z.rank());
            assert_eq!(dual.n(), z.n() + 1);
        }
    }
}

#[test]
fn step_factorization() {
    let mut checked = 0;
    for params in models(14) {
        let (p, pp) = (params.p(), params.p_prime());
        if pp <= 2 * p || pp - p <= 2 * p {
            continue;
        }
        let below = ModelParams::new(p, pp - p).unwrap();
        let z = model_zones(&params);
        for len in (0..=12).step_by(2) {
            for n_hat in n_vectors_with_length(&z, len) {
                let sol = solve_m(&z, &n_hat).unwrap();
                let (m1, n1) = (sol.m_at(1), n_hat[0]);
                let rest = sector_genfun(&below, &n_hat[1..]).unwrap();
                let want = &(&gaussian(m1 + n1, n1) * &rest).shift((len - m1).pow(2) / 4);
                assert_eq!(&sector_genfun(&params, &n_hat).unwrap(), want, "{params:?} {n_hat:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn trivial_sector() {
    let params = ModelParams::new(1, 3).unwrap();
    assert_eq!(cartan_like(&model_zones(&params)).entries, vec![vec![2]]);
    for n in 0..6 {
        assert_eq!(sector_genfun(&params, &[n]).unwrap(), QPolynomial::monomial(n * n, 1));
    }
}

#[test]
fn lambda_variables_meet_their_bounds() {
    for params in models(13) {
        let z = model_zones(&params);
        let e = lambda_exponents(&params);
        let n = e.len() - 1;
        for len in (0..=12).step_by(2) {
            let mut seen = HashSet::new();
            for n_hat in n_vectors_with_length(&z, len) {
                let sol = solve_m(&z, &n_hat).unwrap();
                let lam = lambda_variables(&params, &sol.m);
                assert!(seen.insert(lam.clone()), "{params:?}: two sectors share λ");
                let mut w = len / 2;
                let mut lambda0: Option<i64> = None;
                for mu in 0..=n {
                    let l = &lam[mu];
                    assert_eq!(l.len() as i64, e[mu]);
                    assert!(l.windows(2).all(|x| x[0] >= x[1]) && l.iter().all(|&x| x >= 0));
                    if let (Some(l0), Some(&first)) = (lambda0, l.first()) {
                        assert!(first <= l0, "{params:?} {n_hat:?} μ={mu}");
                    }
                    let weight: i64 = l.iter().sum();
                    assert!(weight <= w, "{params:?} {n_hat:?} μ={mu}");
                    if mu == n {
                        assert_eq!(weight, w, "{params:?} {n_hat:?}");
                    } else {
                        lambda0 = Some(w - weight);
                        w = *l.last().unwrap();
                    }
                }
                let quarter = cartan_like(&z).quadratic_form(&sol.m) - len * len;
                let squares: i64 = lam.iter().flatten().map(|x| x * x).sum();
                assert_eq!(quarter, 4 * squares, "{params:?} {n_hat:?}");
            }
        }
    }
}

#[test]
fn normalization_with_a_equal_b() {
    for params in models(9) {
        let max = params.max_height();
        for b in 1..max {
            let c = b + 1;
            for len in (0..=8).step_by(2) {
                let l = CharLabels::new(params, b, b, c, len).unwrap();
                let phi = phi_recurrence(&l);
                let shift = -2 * params.r_hat(c) * len as i64;
                assert_eq!(chi_normalize(&phi, &l).unwrap(), phi.shift_quarters(shift).to_qpolynomial().unwrap());
            }
        }
    }
}

#[test]
fn fermionic_terms_are_positive() {
    for params in models(10) {
        for len in (0..=10).step_by(2) {
            let z = model_zones(&params);
            for n_hat in n_vectors_with_length(&z, len as i64) {
                assert!(sector_genfun(&params, &n_hat).unwrap().all_coefficients_nonnegative());
            }
            assert!(chi_fermionic_m(&params, len).unwrap().all_coefficients_nonnegative());
        }
    }
}

#[test]
fn finite_characters_approach_rocha_caridi() {
    let degree = 10;
    for &(p, pp) in &[(3, 8), (2, 7), (4, 7)] {
        let params = ModelParams::new(p, pp).unwrap();
        let max = params.max_height();
        for a in 1..=max {
            for b in 1..=max {
                for c in [b - 1, b + 1] {
                    for len in [40, 41] {
                        let Ok(l) = CharLabels::new(params, a, b, c, len) else { continue };
                        let r = l.r();
                        if !(0 < r && r < p) {
                            continue;
                        }
                        let chi = chi_bosonic(&l);
                        let low = QPolynomial::from_terms(
                            chi.terms().filter(|&(e, _)| e <= degree as i64).map(|(e, k)| (e, k.clone())),
                        );
                        let finite = QSeriesTruncated::from_polynomial(&low, degree).unwrap();
                        assert_eq!(finite, rocha_caridi_trunc(p, pp, r, a, degree).unwrap(), "{l:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn dki_initial_and_boundary_values() {
    for k in 3..8 {
        for i in 1..=k / 2 {
            for alpha in 1..k {
                for beta in 1..k - alpha {
                    if HookConstraints::new(k, i, 0, 0, alpha, beta).is_ok() {
                        assert_eq!(dki_closed(k, i, 0, 0, alpha, beta).unwrap(), QPolynomial::one());
                        assert_eq!(dki_recurrence(k, i, 0, 0, alpha, beta).unwrap(), QPolynomial::one());
                        let hc = HookConstraints::new(k, i, 0, 0, alpha, beta).unwrap();
                        assert_eq!(enumerate_dki(&hc).unwrap(), vec![Partition::empty()]);
                    }
                }
            }
        }
    }
}

#[test]
fn bijection_image_is_the_dki_class() {
    let mut compared = 0;
    for params in models(8) {
        let max = params.max_height();
        for len in 0..=10usize {
            for a in 1..=max {
                for b in 1..=max {
                    for c in [b - 1, b + 1] {
                        let Ok(l) = CharLabels::new(params, a, b, c, len) else { continue };
                        let r = l.r();
                        let (n, m) = ((len as i64 - a + b) / 2, (len as i64 + a - b) / 2);
                        let Ok(hc) = HookConstraints::new(params.p_prime(), a, n, m, params.p() - r, r) else {
                            continue;
                        };
                        if hc.alpha < 1 || hc.beta < 1 {
                            continue;
                        }
                        let image: Vec<Partition> =
                            enumerate_paths(params, a, b, c, len).map(|h| path_to_partition(&h)).collect();
                        let as_set: BTreeSet<Partition> = image.iter().cloned().collect();
                        assert_eq!(as_set.len(), image.len(), "{l:?}: not injective");
                        let class: BTreeSet<Partition> = enumerate_dki(&hc).unwrap().into_iter().collect();
                        assert_eq!(as_set, class, "{l:?}");
                        compared += 1;
                    }
                }
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn empty_path_gives_empty_partition() {
    for params in models(8) {
        let max = params.max_height();
        for a in 1..max {
            for h in enumerate_paths(params, a, a, a + 1, 0) {
                assert!(path_to_partition(&h).is_empty());
            }
        }
    }
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(parts in prop::collection::vec(1i64..9, 0..8)) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Partition::new(parts).unwrap();
        let conj = mu.conjugate();
        prop_assert_eq!(conj.wt(), mu.wt());
        prop_assert_eq!(conj.conjugate(), mu.clone());
        prop_assert_eq!(conj.num_parts() as i64, mu.largest());
        prop_assert_eq!(Partition::from_json(&mu.to_json()).unwrap(), mu);
    }

    #[test]
    fn recurrence_matches_bosonic(pi in 0usize..20, a in 1i64..12, b in 1i64..12, up in any::<bool>(), len in 0usize..16) {
        let all = models(12);
        let params = all[pi % all.len()];
        let c = if up { b + 1 } else { b - 1 };
        let Ok(l) = CharLabels::new(params, a, b, c, len) else { return Ok(()) };
        prop_assert_eq!(chi_recurrence(&l), chi_bosonic(&l));
    }
}
