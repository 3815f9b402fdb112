use realga::bench::{emit_report, run_single};
use realga::ceraf::sade_ceraf_run_observed;
use realga::{
    run_campaign, AlgorithmId, AlgorithmParams, BenchmarkConfig, CerafParams, FunctionId, RandomSource, ReportFormat,
    SadeParams, ZoneEventKind,
};

fn csv(config: &BenchmarkConfig) -> Vec<u8> {
    let mut out = Vec::new();
    emit_report(&run_campaign(config).unwrap(), ReportFormat::Csv, &mut out).unwrap();
    out
}

fn small_campaign(alg: AlgorithmId, jobs: usize) -> BenchmarkConfig {
    BenchmarkConfig {
        runs: 6,
        max_generations: 60,
        base_seed: 42,
        jobs,
        ..BenchmarkConfig::new(alg, FunctionId::ALL.to_vec())
    }
}

#[test]
fn repeated_runs_are_identical() {
    let params = AlgorithmParams::default();
    for alg in AlgorithmId::ALL {
        for id in [FunctionId::F1, FunctionId::Shekel2, FunctionId::Hartman2] {
            let f = id.instance::<f64>();
            let a = run_single(alg, &f, &params, 80, 9, |_| {}).unwrap();
            let b = run_single(alg, &f, &params, 80, 9, |_| {}).unwrap();
            assert_eq!(a, b, "{alg} on {id}");
        }
    }
}

#[test]
fn campaign_csv_is_byte_identical() {
    for alg in AlgorithmId::ALL {
        let first = csv(&small_campaign(alg, 0));
        let second = csv(&small_campaign(alg, 0));
        assert_eq!(first, second, "{alg}");
        assert_eq!(String::from_utf8(first).unwrap().lines().count(), 21);
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let serial = csv(&small_campaign(AlgorithmId::SadeCeraf, 1));
    let parallel = csv(&small_campaign(AlgorithmId::SadeCeraf, 4));
    assert_eq!(serial, parallel);
}

#[test]
fn rows_respect_their_bounds() {
    let config = small_campaign(AlgorithmId::Sade, 0);
    for row in run_campaign(&config).unwrap() {
        assert!((0.0..=100.0).contains(&row.success_rate));
        assert_eq!(row.runs, 6);
        let pop = 10.0 * row.dimension as f64;
        match row.avg_nfc_success {
            Some(nfc) => {
                assert!(row.successes > 0);
                assert!(nfc <= (config.max_generations as f64 + 1.0) * pop, "{row:?}");
            }
            None => assert_eq!(row.successes, 0),
        }
    }
}

#[test]
fn ceraf_best_is_monotone_and_zones_accumulate() {
    let f = FunctionId::Shubert.instance::<f64>();
    let ceraf = CerafParams {
        stagnation_limit: Some(3),
        ..CerafParams::default()
    };
    for seed in 0..5 {
        let mut last = f64::INFINITY;
        let mut zones = 0;
        let (result, state) = sade_ceraf_run_observed(
            &f,
            &SadeParams::default(),
            &ceraf,
            120,
            &mut RandomSource::new(seed),
            |r| {
                assert!(r.best_value <= last);
                last = r.best_value;
                for e in &r.events {
                    if e.kind == ZoneEventKind::ZoneCreated {
                        assert_eq!(e.zone, Some(zones));
                        zones += 1;
                    }
                }
            },
        )
        .unwrap();
        assert_eq!(state.zones.len(), zones);
        assert_eq!(result.best_value, state.best_value().unwrap());
    }
}

#[test]
fn stagnating_run_declares_zones() {
    // Hartman2 from seed 3 stalls long enough for at least one zone.
    let f = FunctionId::Hartman2.instance::<f64>();
    let ceraf = CerafParams {
        stagnation_limit: Some(5),
        ..CerafParams::default()
    };
    let (_, state) = sade_ceraf_run_observed(
        &f,
        &SadeParams::default(),
        &ceraf,
        200,
        &mut RandomSource::new(3),
        |_| {},
    )
    .unwrap();
    assert!(!state.zones.is_empty());
    for zone in &state.zones {
        assert!(zone.semi_axes().iter().all(|&r| r > 0.0));
    }
}

#[test]
fn sade_examples() {
    let camel = FunctionId::Camelback.instance::<f64>();
    let f3 = FunctionId::F3.instance::<f64>();
    let params = SadeParams::default();
    let mut f3_nfc = 0;
    for seed in 0..100 {
        assert!(
            realga::sade_run(&camel, &params, 500, &mut RandomSource::new(seed))
                .unwrap()
                .success
        );
        let r = realga::sade_run(&f3, &params, 500, &mut RandomSource::new(seed)).unwrap();
        assert!(r.success, "F3 seed {seed}");
        f3_nfc += r.nfc;
    }
    let mean = f3_nfc as f64 / 100.0;
    assert!((10.0..1000.0).contains(&mean), "F3 mean nfc {mean}");
}

#[test]
fn zero_generation_budget_is_rejected() {
    let f = FunctionId::F1.instance::<f64>();
    for alg in AlgorithmId::ALL {
        let err = run_single(alg, &f, &AlgorithmParams::default(), 0, 1, |_| {}).unwrap_err();
        assert!(!err.is_config_error(), "{alg}: {err}");
    }
}
