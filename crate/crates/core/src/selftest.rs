//! Exhaustive invariant checks: gate tables, multiplier networks, oracle
//! unitarity. The gate-table suite takes any [`GateTable`] so a corrupted
//! table can be shown to fail.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::engine::WireId;
use crate::oracle::{
    circuit_distribution, gate_unitary, ideal_distribution, ideal_state,
};
use crate::qsl::{GateTable, PhasedBit, Qsl};
use crate::shor::{build_subroutine, multiplier_circuit, ShorParams, MODULUS, VALID_BASES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn cases(&self, prefix: &str) -> u64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with(prefix))
            .map(|c| c.cases)
            .sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS {:<40} {:>5} cases", c.name, c.cases)?,
                Some(why) => writeln!(f, "FAIL {:<40} {:>5} cases: {why}", c.name, c.cases)?,
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} failed, {} cases",
            self.checks.len(),
            failed,
            self.checks.iter().map(|c| c.cases).sum::<u64>()
        )
    }
}

/// Accumulates cases for one named check, keeping the first failure.
struct Probe {
    name: String,
    cases: u64,
    failure: Option<String>,
}

impl Probe {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    fn expect(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(why());
        }
    }

    fn done(self) -> Check {
        Check {
            name: self.name,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

fn states() -> Vec<PhasedBit> {
    PhasedBit::all().collect()
}

fn pairs() -> Vec<(PhasedBit, PhasedBit)> {
    states()
        .into_iter()
        .flat_map(|a| states().into_iter().map(move |b| (a, b)))
        .collect()
}

fn triples() -> Vec<(PhasedBit, PhasedBit, PhasedBit)> {
    pairs()
        .into_iter()
        .flat_map(|(a, b)| states().into_iter().map(move |c| (a, b, c)))
        .collect()
}

fn single_gate_checks(name: &str, g: impl Fn(PhasedBit) -> PhasedBit, involution: bool) -> Check {
    let mut p = Probe::new(format!("gate {name}: bijection"));
    let image: HashSet<_> = states().into_iter().map(&g).collect();
    p.expect(image.len() == 4, || format!("{name} maps 4 states onto {}", image.len()));
    if involution {
        for q in states() {
            p.expect(g(g(q)) == q, || format!("{name}·{name} moves {q:?}"));
        }
    }
    p.done()
}

/// Gate-table identities over every input state.
pub fn gate_suite(t: &dyn GateTable) -> Vec<Check> {
    let mut out = vec![
        single_gate_checks("X", |q| t.x(q), true),
        single_gate_checks("Z", |q| t.z(q), true),
        single_gate_checks("H", |q| t.h(q), true),
        single_gate_checks("S", |q| t.s(q), false),
        single_gate_checks("CR2(0)", |q| t.cr2(false, q), true),
        single_gate_checks("CR2(1)", |q| t.cr2(true, q), false),
    ];

    let mut p = Probe::new("gate H: conjugation H·X·H = Z, H·Z·H = X");
    for q in states() {
        p.expect(t.h(t.x(t.h(q))) == t.z(q), || format!("H·X·H ≠ Z at {q:?}"));
        p.expect(t.h(t.z(t.h(q))) == t.x(q), || format!("H·Z·H ≠ X at {q:?}"));
    }
    out.push(p.done());

    let mut p = Probe::new("gate X/Z/S/CR2: table rows");
    let pb = PhasedBit::new;
    p.expect(t.x(pb(false, true)) == pb(true, true), || "X(0,1) ≠ (1,1)".into());
    p.expect(t.z(pb(false, true)) == pb(false, false), || "Z(0,1) ≠ (0,0)".into());
    p.expect(t.s(pb(true, false)) == pb(true, true), || "S(1,0) ≠ (1,1)".into());
    p.expect(t.cr2(true, pb(true, false)) == pb(false, true), || "CR2 on (1,0) ≠ (0,1)".into());
    p.expect(t.cr2(true, pb(false, false)) == pb(true, false), || "CR2 on (0,0) ≠ (1,0)".into());
    out.push(p.done());

    let mut p = Probe::new("gate CNOT: bijection, involution");
    let image: HashSet<_> = pairs().into_iter().map(|(a, b)| t.cnot(a, b)).collect();
    p.expect(image.len() == 16, || format!("CNOT image has {} states", image.len()));
    for (a, b) in pairs() {
        let (a1, b1) = t.cnot(a, b);
        p.expect(t.cnot(a1, b1) == (a, b), || format!("CNOT² moves {a:?},{b:?}"));
        p.expect(b1.c == b.c ^ a.c, || format!("CNOT target at {a:?},{b:?}"));
    }
    out.push(p.done());

    let mut p = Probe::new("gate CNOT: H conjugation exchanges wires");
    for (a, b) in pairs() {
        let (a1, b1) = t.cnot(t.h(a), t.h(b));
        let (b2, a2) = t.cnot(b, a);
        p.expect((t.h(a1), t.h(b1)) == (a2, b2), || format!("CNOT at {a:?},{b:?}"));
    }
    out.push(p.done());

    let mut p = Probe::new("gate Toffoli: bijection, involution");
    let image: HashSet<_> = triples().into_iter().map(|(a, b, c)| t.toffoli(a, b, c)).collect();
    p.expect(image.len() == 64, || format!("Toffoli image has {} states", image.len()));
    for (a, b, c) in triples() {
        let (a1, b1, c1) = t.toffoli(a, b, c);
        p.expect(t.toffoli(a1, b1, c1) == (a, b, c), || format!("Toffoli² moves {a:?},{b:?},{c:?}"));
        p.expect(
            (a1.c, b1.c, c1.c) == (a.c, b.c, c.c ^ (a.c & b.c)),
            || format!("Toffoli truth table at {a:?},{b:?},{c:?}"),
        );
    }
    out.push(p.done());

    let mut p = Probe::new("gate Toffoli: target H conjugation");
    for (a, b, c) in triples() {
        let (a1, b1, c1) = t.toffoli(a, b, t.h(c));
        let expect = (
            PhasedBit::new(a.c, a.p ^ (b.c & c.c)),
            PhasedBit::new(b.c, b.p ^ (a.c & c.c)),
            PhasedBit::new(c.c, c.p ^ (a.c & b.c)),
        );
        p.expect((a1, b1, t.h(c1)) == expect, || format!("Toffoli at {a:?},{b:?},{c:?}"));
    }
    out.push(p.done());

    let mut p = Probe::new("gate Fredkin: composition, controlled swap");
    let image: HashSet<_> = triples().into_iter().map(|(a, b, c)| t.fredkin(a, b, c)).collect();
    p.expect(image.len() == 64, || format!("Fredkin image has {} states", image.len()));
    for (k, x, y) in triples() {
        let (y1, x1) = t.cnot(y, x);
        let (k2, x2, y2) = t.toffoli(k, x1, y1);
        let (y3, x3) = t.cnot(y2, x2);
        let got = t.fredkin(k, x, y);
        p.expect(got == (k2, x3, y3), || format!("Fredkin ≠ composition at {k:?},{x:?},{y:?}"));
        let (xc, yc) = if k.c { (y.c, x.c) } else { (x.c, y.c) };
        p.expect((got.1.c, got.2.c) == (xc, yc), || format!("Fredkin swap at {k:?},{x:?},{y:?}"));
    }
    out.push(p.done());
    out
}

/// Every base, register value and control value against `x ↦ a·x mod 15`.
pub fn multiplier_suite() -> Vec<Check> {
    let mut p = Probe::new("multiplier: brute force x -> a*x mod 15");
    for a in VALID_BASES {
        let spec = match multiplier_circuit(a, WireId(0), crate::shor::output_wires()) {
            Ok(s) => s,
            Err(e) => {
                p.expect(false, || format!("×{a}: {e}"));
                continue;
            }
        };
        for x in 0..16u64 {
            for control in [false, true] {
                let y = spec.apply_classical(control, x);
                let ok = if control { y % MODULUS == a * x % MODULUS } else { y == x };
                p.expect(ok, || format!("×{a} control={control} x={x} gave {y}"));
            }
        }
    }
    vec![p.done()]
}

/// Norm preservation, multiplier unitaries as permutations, and agreement of
/// the semiclassical and full-transform reference distributions.
pub fn oracle_suite() -> Vec<Check> {
    let mut norm = Probe::new("oracle: unitarity of order-finding states");
    let mut agree = Probe::new("oracle: semiclassical = full transform");
    for p in ShorParams::all() {
        let a = p.base();
        match ideal_state(&p) {
            Ok(s) => norm.expect(s.max_norm_drift < 1e-10, || {
                format!("a={a}: norm drift {}", s.max_norm_drift)
            }),
            Err(e) => norm.expect(false, || format!("a={a}: {e}")),
        }
        let diff = build_subroutine(&p)
            .map_err(|e| e.to_string())
            .and_then(|s| {
                circuit_distribution(s.circuit(), s.assembler()).map_err(|e| e.to_string())
            })
            .and_then(|semi| {
                ideal_distribution(&p)
                    .map(|d| d.max_abs_diff(&semi))
                    .map_err(|e| e.to_string())
            });
        agree.expect(matches!(diff, Ok(d) if d < 1e-10), || format!("a={a}: {diff:?}"));
    }

    let mut perm = Probe::new("oracle: multiplier unitaries are permutations");
    let out: [WireId; 4] = std::array::from_fn(|j| WireId(j + 1));
    for a in VALID_BASES {
        let spec = multiplier_circuit(a, WireId(0), out).expect("valid multiplier");
        let u = match gate_unitary(spec.ops(), 5) {
            Ok(u) => u,
            Err(e) => {
                perm.expect(false, || format!("×{a}: {e}"));
                continue;
            }
        };
        for (j, col) in u.iter().enumerate() {
            let hot: Vec<usize> = (0..col.len()).filter(|&i| col[i].norm() > 1e-12).collect();
            let is_basis = hot.len() == 1 && (col[hot[0]] - C64::new(1.0, 0.0)).norm() < 1e-12;
            let (control, x) = (j & 1 == 1, (j >> 1) as u64);
            let ok = is_basis && {
                let i = hot[0];
                let y = (i >> 1) as u64;
                (i & 1 == 1) == control
                    && if control { y % MODULUS == a * x % MODULUS } else { y == x }
            };
            perm.expect(ok, || format!("×{a}: column {j} is {hot:?}"));
        }
    }
    vec![norm.done(), perm.done(), agree.done()]
}

pub fn run_with(table: &dyn GateTable) -> Report {
    let mut checks = gate_suite(table);
    checks.extend(multiplier_suite());
    checks.extend(oracle_suite());
    Report { checks }
}

/// All suites against the adopted gate tables.
pub fn run() -> Report {
    run_with(&Qsl)
}
