use fhca::adversary::{AttackConfig, SpatialMode};
use fhca::analysis::{
    cdf_received_energy, closed_form_pcross, lln_check, multi_eve_product_cdf, mutual_information_sweep,
    product_channel_samples, received_energy_samples, solve_alpha_half, surrogate_pcross, ExperimentSpec,
};
use fhca::modem::Scheme;
use fhca::{Experiment, Link};

fn eta_spec(eta: f64) -> Experiment {
    ExperimentSpec::new(Link::new(Scheme::Ook), AttackConfig::none(), vec![0.0], 100_000, 9).with_eta(eta)
}

#[test]
fn clean_energy_is_exponential() {
    let t = cdf_received_energy(&eta_spec(0.0), 1, 1, SpatialMode::Single, &[0.693]).unwrap();
    assert!((t.rows()[0].estimate - 0.5).abs() < 0.01);
}

#[test]
fn average_energy_is_conserved() {
    for (eta, n_rx) in [(0.0, 1), (30.0, 2), (90.0, 10), (100.0, 4)] {
        let m = received_energy_samples(&eta_spec(eta), n_rx, 1, SpatialMode::Single)
            .unwrap()
            .mean();
        assert!((m - 1.0).abs() < 0.01, "eta={eta} N_r={n_rx}: {m}");
    }
}

#[test]
fn many_randomized_eve_antennas_thin_the_low_tail() {
    let s = eta_spec(90.0);
    let single = received_energy_samples(&s, 10, 1, SpatialMode::Single).unwrap();
    let many = received_energy_samples(&s, 10, 20, SpatialMode::Randomized).unwrap();
    let x = single.quantile(0.05);
    assert!(single.eval(x) >= many.eval(x));
}

#[test]
fn product_channel_statistics() {
    for n in [1, 4] {
        let m = product_channel_samples::<f64>(n, 1_000_000, 3).unwrap().mean();
        assert!((m - 1.0).abs() < 0.01, "N_e={n}: {m}");
    }
    let t = multi_eve_product_cdf(&[1, 4], 1_000_000, 3, &[0.01f64]).unwrap();
    assert!(t[0].rows()[0].estimate >= t[1].rows()[0].estimate);
}

#[test]
fn lln_probability_rises_with_antennas() {
    let r = lln_check(&[1, 4, 16, 64, 256], 0.1, 10_000, 1.0, 1.0, 4).unwrap();
    assert!(r.points.last().unwrap().1 >= 0.9);
    assert!(r.max_decrease() <= 0.02);
    assert!(r.implied_n_rx.is_some());
    let loose = lln_check(&[1], 100.0, 10_000, 1.0, 1.0, 4).unwrap();
    assert!(loose.points[0].1 > 0.999);
}

#[test]
fn surrogate_monte_carlo_matches_closed_form() {
    for theta in [5.0, 9.0, 15.0] {
        for alpha in [0.0, 0.25, 0.5, 1.0] {
            let r = surrogate_pcross(alpha, theta, 200_000, 11).unwrap();
            let p = closed_form_pcross(alpha, theta).unwrap();
            assert!(
                (r.estimate - p).abs() < 0.005,
                "({alpha}, {theta}): {} vs {p}",
                r.estimate
            );
        }
    }
}

#[test]
fn half_crossing_root() {
    let s = solve_alpha_half(9.0).unwrap();
    let r = surrogate_pcross(s.root, 9.0, 400_000, 12).unwrap();
    assert!((r.estimate - 0.5).abs() < 0.005);
    let stated = surrogate_pcross(s.stated, 9.0, 400_000, 12).unwrap();
    assert!((stated.estimate - s.stated_pcross).abs() < 0.005);
}

#[test]
fn full_model_minimum_moves_up_with_theta() {
    let alphas: Vec<f64> = (1..=10).map(|i| i as f64 * 0.05).collect();
    let curves = mutual_information_sweep(&[5.0, 9.0, 15.0], &alphas, 200_000, 5).unwrap();
    let argmins: Vec<f64> = curves
        .iter()
        .map(|c| c.mutual_information.argmin().unwrap().x)
        .collect();
    assert!(argmins.windows(2).all(|w| w[0] <= w[1]), "{argmins:?}");
    for c in &curves {
        assert!(c
            .mutual_information
            .rows()
            .iter()
            .all(|r| (0.0..=1.0).contains(&r.estimate)));
    }
}
