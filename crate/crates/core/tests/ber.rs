use fhca::adversary::{AttackConfig, SpatialMode};
use fhca::analysis::{run_ber, ExperimentSpec, ResultTable};
use fhca::modem::{EnergyNormalization, LinkConfig, Scheme, ThresholdMethod};
use fhca::{Error, Experiment, Link};

/// Rayleigh-fading BPSK with L-branch maximal-ratio combining, average branch SNR γ̄.
fn mrc_bpsk_ber(gamma: f64, branches: u32) -> f64 {
    let mu = (gamma / (1.0 + gamma)).sqrt();
    let lo = (1.0 - mu) / 2.0;
    let hi = (1.0 + mu) / 2.0;
    let mut binom = 1.0;
    let mut sum = 0.0;
    for k in 0..branches {
        if k > 0 {
            binom *= (branches - 1 + k) as f64 / k as f64;
        }
        sum += binom * hi.powi(k as i32);
    }
    lo.powi(branches as i32) * sum
}

fn spec(link: Link, attack: AttackConfig<f64>, grid: Vec<f64>, trials: u64) -> Experiment {
    ExperimentSpec::new(link, attack, grid, trials, 2024)
}

fn run(s: &Experiment) -> ResultTable {
    run_ber(s).unwrap()
}

#[test]
fn mrc_oracle_sanity() {
    let g = 20.0;
    assert!((mrc_bpsk_ber(g, 1) - 0.5 * (1.0 - (g / (1.0 + g)).sqrt())).abs() < 1e-15);
    assert!(mrc_bpsk_ber(g, 2) < mrc_bpsk_ber(g, 1));
}

#[test]
fn coherent_bpsk_matches_rayleigh_mrc() {
    for n_rx in [1usize, 2] {
        let mut link = Link::new(Scheme::BpskCoherent);
        link.n_rx = n_rx;
        let t = run(&spec(link, AttackConfig::none(), vec![0.0, 10.0], 300_000));
        for r in t.rows() {
            let gamma = link.alice_energy(r.x) / link.sigma2_bob;
            let p = mrc_bpsk_ber(gamma, n_rx as u32);
            assert!(
                (r.estimate - p).abs() <= 3.0 * r.stderr,
                "N_r={n_rx} x={}: {} vs {p}",
                r.x,
                r.estimate
            );
        }
    }
}

#[test]
fn noiseless_links_never_err() {
    for scheme in [Scheme::BpskCoherent, Scheme::Ook, Scheme::Bfsk, Scheme::Ebfsk] {
        let mut link = Link::new(scheme);
        link.n_carriers = 16;
        let t = run(&spec(link, AttackConfig::none(), vec![150.0], 20_000));
        assert_eq!(t.rows()[0].estimate, 0.0, "{scheme}");
    }
}

#[test]
fn identical_across_thread_counts() {
    let mut link = Link::new(Scheme::Ook);
    link.n_carriers = 128;
    let s = spec(
        link,
        AttackConfig::convolution(1.0, 9.0).unwrap(),
        vec![0.0, 10.0],
        20_000,
    );
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let a = pool(1).install(|| run(&s));
    let b = pool(4).install(|| run(&s));
    assert_eq!(a, b);
}

#[test]
fn incompatible_pairs_rejected() {
    let ook = Link::new(Scheme::Ook);
    let s = spec(ook, AttackConfig::convolution_bfsk(0.2, 9.0).unwrap(), vec![0.0], 10);
    assert!(matches!(run_ber(&s), Err(Error::IncompatibleAttack { .. })));
    let bfsk = Link::new(Scheme::Bfsk);
    let s = spec(bfsk, AttackConfig::convolution(0.2, 9.0).unwrap(), vec![0.0], 10);
    assert!(run_ber(&s).is_err());
    let mut analytic = Link::new(Scheme::Ook);
    analytic.threshold = ThresholdMethod::AnalyticApproximate;
    let s = spec(analytic, AttackConfig::wideband(9.0).unwrap(), vec![0.0], 10);
    assert!(run_ber(&s).is_err());
}

#[test]
fn traditional_bfsk_collapses_under_ca() {
    let t = run(&spec(
        Link::new(Scheme::Bfsk),
        AttackConfig::convolution_bfsk(0.15, 9.0).unwrap(),
        vec![0.0, 15.0, 30.0],
        100_000,
    ));
    for r in t.rows() {
        assert!((r.estimate - 0.5).abs() < 0.1, "{}: {}", r.x, r.estimate);
    }
}

#[test]
fn ca_floors_coherent_bpsk() {
    let t = run(&spec(
        Link::new(Scheme::BpskCoherent),
        AttackConfig::convolution(1.0, 9.0).unwrap(),
        vec![20.0, 30.0],
        100_000,
    ));
    assert!(t.rows().iter().all(|r| r.estimate > 0.1));
    assert_eq!(fhca::analysis::has_error_floor(&t, 20.0, 30.0), Some(true));
}

#[test]
fn ook_threshold_methods_rank() {
    let mut link = Link::new(Scheme::Ook);
    link.n_carriers = 128;
    let ca = AttackConfig::convolution(1.0, 9.0).unwrap();
    let ber = |method, attack: AttackConfig<f64>| {
        let mut l = link;
        l.threshold = method;
        run(&spec(l, attack, vec![10.0], 200_000)).rows()[0]
    };
    let emp = ber(ThresholdMethod::EmpiricalOptimal, ca);
    let ana = ber(ThresholdMethod::AnalyticApproximate, ca);
    let ign = ber(ThresholdMethod::AttackIgnorant, ca);
    let mismatched = ber(ThresholdMethod::EmpiricalOptimal, ca.with_attacks_pilots(false));
    assert!(ana.estimate <= 1.5 * emp.estimate, "{ana:?} {emp:?}");
    assert!(ign.estimate > emp.estimate);
    assert!(mismatched.estimate > emp.estimate + 3.0 * emp.stderr);
}

#[test]
fn multi_antenna_eve_and_hop_length() {
    let mut link = Link::new(Scheme::Ook);
    link.n_carriers = 64;
    link.hop_length = 4;
    let a = AttackConfig::convolution(1.0, 9.0)
        .unwrap()
        .with_eve_antennas(4, SpatialMode::Randomized)
        .unwrap();
    let t = run(&spec(link, a, vec![10.0], 5_000));
    assert_eq!(t.rows()[0].trials, 20_000);
    assert!(t.rows()[0].estimate < 0.5);
}

#[test]
fn equal_energy_normalization_runs() {
    let mut link = Link::new(Scheme::Ebfsk);
    link.normalization = EnergyNormalization::EqualEnergyPerBit;
    link.n_carriers = 64;
    let t = run(&spec(
        link,
        AttackConfig::wideband(9.0).unwrap(),
        vec![10.0, 20.0],
        20_000,
    ));
    assert!(t.rows()[1].estimate < t.rows()[0].estimate);
}

#[test]
fn single_precision_link() {
    let mut link = LinkConfig::<f32>::new(Scheme::BpskCoherent);
    link.n_rx = 1;
    let s = ExperimentSpec::new(link, AttackConfig::none(), vec![10.0f32], 100_000, 5);
    let r = run_ber(&s).unwrap().rows()[0];
    let p = mrc_bpsk_ber(20.0, 1);
    assert!((r.estimate - p).abs() <= 4.0 * r.stderr, "{} vs {p}", r.estimate);
}
