use qsl_shor::engine::{
    sample, BitOrder, Circuit, EngineError, Executor, OutcomeAssembler, Program, SampleOptions,
    ViolationKind,
};
use qsl_shor::oracle::circuit_distribution;
use qsl_shor::shor::{build_subroutine, ShorParams};

fn bell() -> Circuit {
    let mut c = Circuit::new(2, 2);
    c.prepare(0, false).prepare(1, false).h(0).cnot(0, 1);
    c.measure(0, 0).measure(1, 1);
    c
}

fn bell_x_basis() -> Circuit {
    let mut c = Circuit::new(2, 2);
    c.prepare(0, false).prepare(1, false).h(0).cnot(0, 1).h(0).h(1);
    c.measure(0, 0).measure(1, 1);
    c
}

fn kickback() -> Circuit {
    let mut c = Circuit::new(2, 1);
    c.prepare(0, false).prepare(1, true).h(0).h(1).cnot(0, 1).h(0);
    c.measure(0, 0);
    c
}

fn ghz_with_flips() -> Circuit {
    let mut c = Circuit::new(3, 3);
    c.prepare(0, false).prepare(1, true).prepare(2, false);
    c.h(0).cnot(0, 1).cnot(1, 2).z(0).x(2);
    c.measure(0, 0).measure(1, 1).measure(2, 2);
    c
}

fn clifford_sanity_circuits() -> Vec<(&'static str, Circuit)> {
    vec![
        ("bell", bell()),
        ("bell in x basis", bell_x_basis()),
        ("phase kickback", kickback()),
        ("ghz with flips", ghz_with_flips()),
    ]
}

#[test]
fn scalar_and_bit_sliced_agree() {
    let mut circuits = clifford_sanity_circuits();
    for a in [7, 13] {
        let sub = build_subroutine(&ShorParams::new(a).unwrap()).unwrap();
        circuits.push(("shor", sub.circuit().clone()));
    }
    for (name, c) in circuits {
        let asm = OutcomeAssembler::slot_order(&c);
        for shots in [1, 63, 10_000, 10_001] {
            let base = SampleOptions::new(shots, 99);
            let sliced = sample(&c, &asm, &base.executor(Executor::BitSliced)).unwrap();
            let scalar = sample(&c, &asm, &base.executor(Executor::Scalar)).unwrap();
            assert_eq!(sliced, scalar, "{name}, {shots} shots");
            assert_eq!(sliced.counts().values().sum::<u64>(), shots);
        }
    }
}

/// Each outcome frequency within three multinomial standard deviations of
/// the exact quantum probability.
#[test]
fn qsl_matches_oracle_on_clifford_circuits() {
    let shots = 100_000u64;
    for (name, c) in clifford_sanity_circuits() {
        let asm = OutcomeAssembler::slot_order(&c);
        let exact = circuit_distribution(&c, &asm).unwrap();
        let h = sample(&c, &asm, &SampleOptions::new(shots, 5)).unwrap();
        for m in 0..h.outcome_space() {
            let p = exact.prob(m).clamp(0.0, 1.0);
            let sigma = (p * (1.0 - p) / shots as f64).sqrt();
            let f = h.frequency(m);
            assert!(
                (f - p).abs() <= 3.0 * sigma + 1e-12,
                "{name}: m={m} observed {f}, expected {p}"
            );
        }
    }
}

#[test]
fn kickback_is_deterministic() {
    let h = sample(&kickback(), &OutcomeAssembler::slot_order(&kickback()), &SampleOptions::new(5000, 1)).unwrap();
    assert_eq!(h.count(1), 5000);
}

#[test]
fn hadamard_outcome_frequency() {
    let mut c = Circuit::new(1, 1);
    c.prepare(0, false).h(0).measure(0, 0);
    let h = Program::new(c.clone())
        .unwrap()
        .sample(&OutcomeAssembler::slot_order(&c), &SampleOptions::new(100_000, 2016))
        .unwrap();
    assert!((h.frequency(1) - 0.5).abs() < 0.005, "{}", h.frequency(1));

    let mut hh = Circuit::new(1, 1);
    hh.prepare(0, false).h(0).h(0).measure(0, 0);
    let h = sample(&hh, &OutcomeAssembler::slot_order(&hh), &SampleOptions::new(100_000, 2016)).unwrap();
    assert_eq!(h.count(0), 100_000);
}

#[test]
fn merged_halves_match_single_run() {
    let sub = build_subroutine(&ShorParams::new(7).unwrap()).unwrap();
    let first = sub.sample(&SampleOptions::new(500_000, 1)).unwrap();
    let second = sub.sample(&SampleOptions::new(500_000, 2)).unwrap();
    let merged = first.merge(&second).unwrap();
    assert_eq!(merged.shots(), 1_000_000);
    assert_eq!(merged.seed(), None);

    let single = sub.sample(&SampleOptions::new(1_000_000, 3)).unwrap();
    // difference of two independent frequencies over 1e6 shots each
    for m in 0..256 {
        let p = single.frequency(m);
        let sigma = (2.0 * p * (1.0 - p) / 1e6).sqrt();
        assert!(
            (merged.frequency(m) - p).abs() <= 4.0 * sigma + 1e-12,
            "m={m}: {} vs {p}",
            merged.frequency(m)
        );
    }
}

#[test]
fn thread_count_does_not_change_result() {
    let sub = build_subroutine(&ShorParams::new(13).unwrap()).unwrap();
    let reference = sub.sample(&SampleOptions::new(200_000, 8)).unwrap();
    for threads in [1, 2, 3, 4, 7] {
        let h = sub.sample(&SampleOptions::new(200_000, 8).threads(threads)).unwrap();
        assert_eq!(h.to_json(), reference.to_json(), "threads={threads}");
        assert_eq!(h.to_csv(), reference.to_csv(), "threads={threads}");
    }
}

#[test]
fn zero_shots_is_an_error() {
    let c = bell();
    let err = sample(&c, &OutcomeAssembler::slot_order(&c), &SampleOptions::new(0, 0)).unwrap_err();
    assert!(matches!(err, EngineError::EmptySample));
    assert!(err.to_string().contains("empty sample"));
}

#[test]
fn invalid_circuits_are_rejected_before_sampling() {
    let mut c = Circuit::new(2, 2);
    c.prepare(0, false).prepare(1, false).cnot(1, 1).cr2(1, 0).measure(0, 0).measure(1, 1);
    let errs = c.validate().unwrap_err();
    let kinds: Vec<_> = errs.0.iter().map(|v| v.kind.clone()).collect();
    assert!(kinds.iter().any(|k| matches!(k, ViolationKind::DuplicateWire(_))), "{kinds:?}");
    assert!(
        kinds.iter().any(|k| matches!(k, ViolationKind::ClassicalDependencyOrder(_))),
        "{kinds:?}"
    );
    let msg = errs.to_string();
    assert!(msg.contains("duplicate wire") && msg.contains("classical dependency order"), "{msg}");
    assert!(matches!(Program::new(c), Err(EngineError::Invalid(_))));
}

#[test]
fn assembler_bit_order_is_recorded() {
    let sub = build_subroutine(&ShorParams::new(2).unwrap()).unwrap();
    assert_eq!(sub.assembler().bit_order(), BitOrder::MsbFirstByPower);
    let h = sub.sample(&SampleOptions::new(1000, 0)).unwrap();
    assert_eq!(h.bit_order(), BitOrder::MsbFirstByPower);
    assert_eq!((h.modulus(), h.base(), h.seed()), (Some(15), Some(2), Some(0)));
}
