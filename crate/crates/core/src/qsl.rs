//! Quantum simulation logic primitives.
//!
//! A simulated qubit is a pair of classical bits: the computational bit `c`
//! and the phase bit `p`. Sources set `c` and randomize `p`, measurements read
//! `c` and randomize `p`, and every gate is a reversible boolean map on the
//! bit pairs of the wires it touches.
//!
//! Gate tables:
//!
//! | gate    | action                                                        |
//! |---------|---------------------------------------------------------------|
//! | X       | `c ^= 1`                                                      |
//! | Z       | `p ^= 1`                                                      |
//! | H       | `(c, p) -> (p, c)`                                            |
//! | S       | `p ^= c`                                                      |
//! | CNOT    | `t.c ^= k.c`, `k.p ^= t.p`                                    |
//! | Toffoli | `t.c ^= a.c & b.c`, `a.p ^= b.c & t.p`, `b.p ^= a.c & t.p`    |
//! | Fredkin | `CNOT(y->x) ; Toffoli(k, x -> y) ; CNOT(y->x)`                |
//! | CR2     | if the classical control is set: `p ^= c`, then `c ^= 1`      |
//!
//! Note that S applied twice is the identity here, unlike the quantum S
//! whose square is Z.

use crate::rng::RandomSource;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasedBit {
    /// Computational bit.
    pub c: bool,
    /// Phase bit.
    pub p: bool,
}

impl PhasedBit {
    pub const fn new(c: bool, p: bool) -> Self {
        Self { c, p }
    }

    /// Packs the pair as `2·c + p`.
    pub const fn index(self) -> usize {
        (self.c as usize) << 1 | self.p as usize
    }

    pub const fn from_index(i: usize) -> Self {
        Self::new(i & 2 != 0, i & 1 != 0)
    }

    /// All four bit-pair states in index order.
    pub fn all() -> impl Iterator<Item = PhasedBit> + Clone {
        (0..4).map(Self::from_index)
    }
}

/// A source of `|value>`: sets the computational bit, randomizes the phase.
pub fn prepare(value: bool, rng: &mut RandomSource) -> PhasedBit {
    PhasedBit::new(value, rng.next_bit())
}

/// Reads the computational bit and re-randomizes the phase bit.
pub fn measure(q: &mut PhasedBit, rng: &mut RandomSource) -> bool {
    q.p = rng.next_bit();
    q.c
}

pub fn gate_x(q: PhasedBit) -> PhasedBit {
    PhasedBit::new(!q.c, q.p)
}

pub fn gate_z(q: PhasedBit) -> PhasedBit {
    PhasedBit::new(q.c, !q.p)
}

pub fn gate_h(q: PhasedBit) -> PhasedBit {
    PhasedBit::new(q.p, q.c)
}

pub fn gate_s(q: PhasedBit) -> PhasedBit {
    PhasedBit::new(q.c, q.p ^ q.c)
}

/// Forward action on the computational bits, phase kickback onto the control.
pub fn gate_cnot(control: PhasedBit, target: PhasedBit) -> (PhasedBit, PhasedBit) {
    (
        PhasedBit::new(control.c, control.p ^ target.p),
        PhasedBit::new(target.c ^ control.c, target.p),
    )
}

pub fn gate_toffoli(
    a: PhasedBit,
    b: PhasedBit,
    t: PhasedBit,
) -> (PhasedBit, PhasedBit, PhasedBit) {
    (
        PhasedBit::new(a.c, a.p ^ (b.c & t.p)),
        PhasedBit::new(b.c, b.p ^ (a.c & t.p)),
        PhasedBit::new(t.c ^ (a.c & b.c), t.p),
    )
}

/// Controlled swap. Expanding the three-gate composition gives: both bits of
/// `x` and `y` swap when `ctl.c` is set, and the control's phase bit picks up
/// `(x.c ^ y.c) & (x.p ^ y.p)` regardless of `ctl.c`.
pub fn gate_fredkin(
    ctl: PhasedBit,
    x: PhasedBit,
    y: PhasedBit,
) -> (PhasedBit, PhasedBit, PhasedBit) {
    let dc = x.c ^ y.c;
    let dp = x.p ^ y.p;
    let swap_c = ctl.c & dc;
    let swap_p = ctl.c & dp;
    (
        PhasedBit::new(ctl.c, ctl.p ^ (dc & dp)),
        PhasedBit::new(x.c ^ swap_c, x.p ^ swap_p),
        PhasedBit::new(y.c ^ swap_c, y.p ^ swap_p),
    )
}

/// Classically controlled R2 rotation.
pub fn gate_cr2(classical_control: bool, q: PhasedBit) -> PhasedBit {
    if classical_control {
        PhasedBit::new(!q.c, q.p ^ q.c)
    } else {
        q
    }
}

/// The gate family as a value, so checks can run against alternative tables.
pub trait GateTable {
    fn x(&self, q: PhasedBit) -> PhasedBit;
    fn z(&self, q: PhasedBit) -> PhasedBit;
    fn h(&self, q: PhasedBit) -> PhasedBit;
    fn s(&self, q: PhasedBit) -> PhasedBit;
    fn cnot(&self, control: PhasedBit, target: PhasedBit) -> (PhasedBit, PhasedBit);
    fn toffoli(&self, a: PhasedBit, b: PhasedBit, t: PhasedBit)
        -> (PhasedBit, PhasedBit, PhasedBit);
    fn fredkin(&self, ctl: PhasedBit, x: PhasedBit, y: PhasedBit)
        -> (PhasedBit, PhasedBit, PhasedBit);
    fn cr2(&self, classical_control: bool, q: PhasedBit) -> PhasedBit;
}

/// The adopted QSL gate tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct Qsl;

impl GateTable for Qsl {
    fn x(&self, q: PhasedBit) -> PhasedBit {
        gate_x(q)
    }
    fn z(&self, q: PhasedBit) -> PhasedBit {
        gate_z(q)
    }
    fn h(&self, q: PhasedBit) -> PhasedBit {
        gate_h(q)
    }
    fn s(&self, q: PhasedBit) -> PhasedBit {
        gate_s(q)
    }
    fn cnot(&self, control: PhasedBit, target: PhasedBit) -> (PhasedBit, PhasedBit) {
        gate_cnot(control, target)
    }
    fn toffoli(
        &self,
        a: PhasedBit,
        b: PhasedBit,
        t: PhasedBit,
    ) -> (PhasedBit, PhasedBit, PhasedBit) {
        gate_toffoli(a, b, t)
    }
    fn fredkin(
        &self,
        ctl: PhasedBit,
        x: PhasedBit,
        y: PhasedBit,
    ) -> (PhasedBit, PhasedBit, PhasedBit) {
        gate_fredkin(ctl, x, y)
    }
    fn cr2(&self, classical_control: bool, q: PhasedBit) -> PhasedBit {
        gate_cr2(classical_control, q)
    }
}

/// Fixed-length collection of simulated qubits indexed by wire.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QslRegister {
    bits: Vec<PhasedBit>,
}

impl QslRegister {
    pub fn new(len: usize) -> Self {
        Self {
            bits: vec![PhasedBit::default(); len],
        }
    }

    pub fn from_bits(bits: Vec<PhasedBit>) -> Self {
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[PhasedBit] {
        &self.bits
    }

    pub fn get(&self, wire: usize) -> PhasedBit {
        self.bits[wire]
    }

    pub fn set(&mut self, wire: usize, q: PhasedBit) {
        self.bits[wire] = q;
    }

    pub fn map1(&mut self, w: usize, f: impl FnOnce(PhasedBit) -> PhasedBit) {
        self.bits[w] = f(self.bits[w]);
    }

    pub fn map2(
        &mut self,
        w0: usize,
        w1: usize,
        f: impl FnOnce(PhasedBit, PhasedBit) -> (PhasedBit, PhasedBit),
    ) {
        debug_assert_ne!(w0, w1);
        let (a, b) = f(self.bits[w0], self.bits[w1]);
        self.bits[w0] = a;
        self.bits[w1] = b;
    }

    pub fn map3(
        &mut self,
        w0: usize,
        w1: usize,
        w2: usize,
        f: impl FnOnce(PhasedBit, PhasedBit, PhasedBit) -> (PhasedBit, PhasedBit, PhasedBit),
    ) {
        debug_assert!(w0 != w1 && w1 != w2 && w0 != w2);
        let (a, b, c) = f(self.bits[w0], self.bits[w1], self.bits[w2]);
        self.bits[w0] = a;
        self.bits[w1] = b;
        self.bits[w2] = c;
    }

    /// Computational bits of `wires` read as an integer, `wires[0]` least significant.
    pub fn computational_value(&self, wires: &[usize]) -> u64 {
        wires
            .iter()
            .enumerate()
            .map(|(i, &w)| (self.bits[w].c as u64) << i)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn pb(c: u8, p: u8) -> PhasedBit {
        PhasedBit::new(c == 1, p == 1)
    }

    fn pairs() -> impl Iterator<Item = (PhasedBit, PhasedBit)> {
        PhasedBit::all().flat_map(|a| PhasedBit::all().map(move |b| (a, b)))
    }

    fn triples() -> impl Iterator<Item = (PhasedBit, PhasedBit, PhasedBit)> {
        pairs().flat_map(|(a, b)| PhasedBit::all().map(move |c| (a, b, c)))
    }

    #[test]
    fn prepare_sets_computational_bit() {
        let mut rng = RandomSource::for_shot(1, 0);
        let mut ones = 0;
        for _ in 0..1000 {
            assert!(prepare(true, &mut rng).c);
            let q = prepare(false, &mut rng);
            assert!(!q.c);
            ones += q.p as u32;
        }
        assert!((400..600).contains(&ones), "phase bits not random: {ones}");
    }

    #[test]
    fn prepare_is_deterministic_per_seed() {
        let draw = || {
            let mut rng = RandomSource::for_shot(99, 5);
            (0..64).map(|_| prepare(false, &mut rng).p).collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn measure_reads_c_and_keeps_it() {
        let mut rng = RandomSource::for_shot(3, 0);
        let mut q = pb(1, 0);
        for _ in 0..50 {
            assert!(measure(&mut q, &mut rng));
            assert!(q.c);
        }
        let mut q = prepare(false, &mut rng);
        assert!(!measure(&mut q, &mut rng));
    }

    #[test]
    fn single_bit_tables() {
        assert_eq!(gate_x(pb(0, 1)), pb(1, 1));
        assert_eq!(gate_z(pb(0, 1)), pb(0, 0));
        assert_eq!(gate_h(pb(0, 1)), pb(1, 0));
        assert_eq!(gate_s(pb(1, 0)), pb(1, 1));
        for p in [0, 1] {
            assert_eq!(gate_s(pb(0, p)), pb(0, p));
        }
        for q in PhasedBit::all() {
            assert_eq!(gate_x(gate_x(q)), q);
            assert_eq!(gate_z(gate_z(q)), q);
            assert_eq!(gate_h(gate_h(q)), q);
            assert_eq!(gate_s(gate_s(q)), q);
            assert_eq!(gate_h(gate_x(gate_h(q))), gate_z(q));
            assert_eq!(gate_h(gate_z(gate_h(q))), gate_x(q));
        }
    }

    #[test]
    fn cnot_table() {
        assert_eq!(gate_cnot(pb(1, 0), pb(0, 1)), (pb(1, 1), pb(1, 1)));
        for (cp, tc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let (k, t) = (pb(0, cp), pb(tc, 0));
            assert_eq!(gate_cnot(k, t), (k, t));
        }
    }

    #[test]
    fn cnot_h_conjugation_exchanges_wires() {
        for (k, t) in pairs() {
            let (k2, t2) = gate_cnot(gate_h(k), gate_h(t));
            let lhs = (gate_h(k2), gate_h(t2));
            let (t3, k3) = gate_cnot(t, k);
            assert_eq!(lhs, (k3, t3));
        }
    }

    #[test]
    fn toffoli_tables() {
        assert_eq!(
            gate_toffoli(pb(1, 0), pb(1, 0), pb(0, 1)),
            (pb(1, 1), pb(1, 1), pb(1, 1))
        );
        for (a, b, t) in triples().filter(|(a, _, _)| !a.c) {
            let (_, b2, t2) = gate_toffoli(a, b, t);
            assert_eq!(t2.c, t.c);
            assert_eq!(b2.p, b.p);
        }
        for (a, b, t) in triples() {
            let (a2, b2, t2) = gate_toffoli(a, b, t);
            assert_eq!((a2.c, b2.c, t2.c), (a.c, b.c, t.c ^ (a.c && b.c)));
        }
    }

    #[test]
    fn toffoli_target_h_conjugation_is_symmetric() {
        for (a, b, t) in triples() {
            let (a2, b2, t2) = gate_toffoli(a, b, gate_h(t));
            let got = (a2, b2, gate_h(t2));
            let expect = (
                PhasedBit::new(a.c, a.p ^ (b.c & t.c)),
                PhasedBit::new(b.c, b.p ^ (a.c & t.c)),
                PhasedBit::new(t.c, t.p ^ (a.c & b.c)),
            );
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn fredkin_matches_composition() {
        for (k, x, y) in triples() {
            let (y1, x1) = gate_cnot(y, x);
            let (k2, x2, y2) = gate_toffoli(k, x1, y1);
            let (y3, x3) = gate_cnot(y2, x2);
            assert_eq!(gate_fredkin(k, x, y), (k2, x3, y3), "{k:?} {x:?} {y:?}");
        }
        let (_, x, y) = gate_fredkin(pb(1, 0), pb(1, 0), pb(0, 0));
        assert_eq!((x.c, y.c), (false, true));
        for (k, x, y) in triples().filter(|(k, _, _)| !k.c) {
            let (_, x2, y2) = gate_fredkin(k, x, y);
            assert_eq!((x2.c, y2.c), (x.c, y.c));
        }
    }

    #[test]
    fn cr2_table() {
        assert_eq!(gate_cr2(true, pb(1, 0)), pb(0, 1));
        assert_eq!(gate_cr2(true, pb(0, 0)), pb(1, 0));
        for q in PhasedBit::all() {
            assert_eq!(gate_cr2(false, q), q);
        }
    }

    #[test]
    fn every_gate_is_a_bijection() {
        let one: Vec<fn(PhasedBit) -> PhasedBit> = vec![gate_x, gate_z, gate_h, gate_s];
        for g in one {
            assert_eq!(PhasedBit::all().map(g).collect::<HashSet<_>>().len(), 4);
        }
        for ctl in [false, true] {
            let img: HashSet<_> = PhasedBit::all().map(|q| gate_cr2(ctl, q)).collect();
            assert_eq!(img.len(), 4);
        }
        assert_eq!(pairs().map(|(a, b)| gate_cnot(a, b)).collect::<HashSet<_>>().len(), 16);
        let tof: HashSet<_> = triples().map(|(a, b, t)| gate_toffoli(a, b, t)).collect();
        let fre: HashSet<_> = triples().map(|(a, b, t)| gate_fredkin(a, b, t)).collect();
        assert_eq!((tof.len(), fre.len()), (64, 64));
    }

    #[test]
    fn register_value() {
        let mut r = QslRegister::new(4);
        r.set(0, pb(1, 0));
        r.set(3, pb(1, 1));
        assert_eq!(r.computational_value(&[0, 1, 2, 3]), 9);
        r.map2(0, 1, gate_cnot);
        assert_eq!(r.computational_value(&[0, 1, 2, 3]), 11);
        assert_eq!(r.len(), 4);
    }
}
