use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// How outcome bits are assembled into the integer `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BitOrder {
    /// The input qubit controlling `×a^(2^k)` lands at bit `n_input_bits − 1 − k`.
    #[serde(rename = "msb-first-by-power")]
    MsbFirstByPower,
    /// Slot `i` lands at bit `i`.
    #[serde(rename = "slot-order")]
    SlotOrder,
}

impl BitOrder {
    pub fn tag(self) -> &'static str {
        match self {
            BitOrder::MsbFirstByPower => "msb-first-by-power",
            BitOrder::SlotOrder => "slot-order",
        }
    }
}

impl FromStr for BitOrder {
    type Err = HistogramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "msb-first-by-power" => Ok(BitOrder::MsbFirstByPower),
            "slot-order" => Ok(BitOrder::SlotOrder),
            other => Err(HistogramError::Malformed(format!("unknown bit order {other:?}"))),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HistogramError {
    #[error("histogram metadata mismatch: {0}")]
    Mismatch(String),
    #[error("malformed histogram: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Outcome counts over `m ∈ [0, 2^n_input_bits)` plus run metadata.
///
/// Only nonzero counts are stored. Deserialization re-checks the invariants
/// (counts sum to `shots`, keys in range).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHistogram")]
pub struct Histogram {
    #[serde(rename = "N")]
    modulus: Option<u64>,
    #[serde(rename = "a")]
    base: Option<u64>,
    shots: u64,
    n_input_bits: u32,
    seed: Option<u64>,
    bit_order: BitOrder,
    counts: BTreeMap<u64, u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHistogram {
    #[serde(rename = "N")]
    modulus: Option<u64>,
    #[serde(rename = "a")]
    base: Option<u64>,
    shots: u64,
    n_input_bits: u32,
    seed: Option<u64>,
    bit_order: BitOrder,
    counts: BTreeMap<u64, u64>,
}

impl TryFrom<RawHistogram> for Histogram {
    type Error = HistogramError;

    fn try_from(r: RawHistogram) -> Result<Self, Self::Error> {
        let mut h = Histogram::empty(r.n_input_bits, r.bit_order)?;
        h.modulus = r.modulus;
        h.base = r.base;
        h.seed = r.seed;
        for (m, n) in r.counts {
            h.add(m, n)?;
        }
        if h.shots != r.shots {
            return Err(HistogramError::Malformed(format!(
                "counts sum to {} but shots = {}",
                h.shots, r.shots
            )));
        }
        Ok(h)
    }
}

pub(crate) const MAX_OUTCOME_BITS: u32 = 24;

impl Histogram {
    pub fn empty(n_input_bits: u32, bit_order: BitOrder) -> Result<Self, HistogramError> {
        if n_input_bits > MAX_OUTCOME_BITS {
            return Err(HistogramError::Malformed(format!(
                "{n_input_bits} outcome bits exceeds the limit of {MAX_OUTCOME_BITS}"
            )));
        }
        Ok(Self {
            modulus: None,
            base: None,
            shots: 0,
            n_input_bits,
            seed: None,
            bit_order,
            counts: BTreeMap::new(),
        })
    }

    /// Builds a histogram from dense counts indexed by `m`.
    pub fn from_dense(
        dense: &[u64],
        n_input_bits: u32,
        bit_order: BitOrder,
    ) -> Result<Self, HistogramError> {
        let mut h = Self::empty(n_input_bits, bit_order)?;
        for (m, &n) in dense.iter().enumerate() {
            h.add(m as u64, n)?;
        }
        Ok(h)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_problem(mut self, modulus: u64, base: u64) -> Self {
        self.modulus = Some(modulus);
        self.base = Some(base);
        self
    }

    /// Records `count` more shots with outcome `m`.
    pub fn add(&mut self, m: u64, count: u64) -> Result<(), HistogramError> {
        if m >= self.outcome_space() {
            return Err(HistogramError::Malformed(format!(
                "outcome {m} outside [0, 2^{})",
                self.n_input_bits
            )));
        }
        if count > 0 {
            *self.counts.entry(m).or_default() += count;
            self.shots += count;
        }
        Ok(())
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn base(&self) -> Option<u64> {
        self.base
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn n_input_bits(&self) -> u32 {
        self.n_input_bits
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn bit_order(&self) -> BitOrder {
        self.bit_order
    }

    /// Nonzero counts keyed by `m`.
    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, m: u64) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    pub fn outcome_space(&self) -> u64 {
        1 << self.n_input_bits
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    pub fn frequency(&self, m: u64) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count(m) as f64 / self.shots as f64
        }
    }

    /// Dense frequency vector of length `2^n_input_bits`.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut f = vec![0.0; self.outcome_space() as usize];
        for &m in self.counts.keys() {
            f[m as usize] = self.frequency(m);
        }
        f
    }

    /// Pointwise sum. Both sides must describe the same experiment
    /// (modulus, base, register width, bit order); the seed survives only when
    /// the two agree or one side is empty.
    pub fn merge(&self, other: &Histogram) -> Result<Histogram, HistogramError> {
        let key = |h: &Histogram| (h.modulus, h.base, h.n_input_bits, h.bit_order);
        if key(self) != key(other) {
            return Err(HistogramError::Mismatch(format!(
                "{:?} vs {:?}",
                key(self),
                key(other)
            )));
        }
        let mut out = self.clone();
        for (&m, &n) in &other.counts {
            out.add(m, n)?;
        }
        out.seed = match (self.shots, other.shots) {
            (0, _) => other.seed,
            (_, 0) => self.seed,
            _ if self.seed == other.seed => self.seed,
            _ => None,
        };
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("histogram serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, HistogramError> {
        Ok(serde_json::from_str(s)?)
    }

    /// CSV with `#`-prefixed metadata lines followed by one row per outcome
    /// in `[0, 2^n_input_bits)`: `m,phase,count,frequency`, where `phase` is
    /// the binary fraction `m / 2^n_input_bits`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), HistogramError> {
        let mut header = String::new();
        let opt = |v: Option<u64>| v.map_or_else(|| "null".to_string(), |v| v.to_string());
        writeln!(header, "# N={}", opt(self.modulus)).unwrap();
        writeln!(header, "# a={}", opt(self.base)).unwrap();
        writeln!(header, "# shots={}", self.shots).unwrap();
        writeln!(header, "# n_input_bits={}", self.n_input_bits).unwrap();
        writeln!(header, "# seed={}", opt(self.seed)).unwrap();
        writeln!(header, "# bit_order={}", self.bit_order.tag()).unwrap();
        let mut out = out;
        out.write_all(header.as_bytes())?;

        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "phase", "count", "frequency"])?;
        let space = self.outcome_space();
        for m in 0..space {
            let phase = m as f64 / space as f64;
            w.write_record([
                m.to_string(),
                phase.to_string(),
                self.count(m).to_string(),
                self.frequency(m).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self, HistogramError> {
        let mut meta = BTreeMap::new();
        let mut body = String::new();
        for line in input.lines() {
            let line = line?;
            if let Some(kv) = line.strip_prefix('#') {
                let (k, v) = kv
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| HistogramError::Malformed(format!("bad metadata {line:?}")))?;
                meta.insert(k.trim().to_string(), v.trim().to_string());
            } else {
                body.push_str(&line);
                body.push('\n');
            }
        }
        let get = |k: &str| {
            meta.get(k)
                .ok_or_else(|| HistogramError::Malformed(format!("missing metadata {k}")))
        };
        let num = |k: &str| -> Result<Option<u64>, HistogramError> {
            let v = get(k)?;
            if v == "null" {
                return Ok(None);
            }
            v.parse()
                .map(Some)
                .map_err(|_| HistogramError::Malformed(format!("bad {k} {v:?}")))
        };
        let shots = num("shots")?.ok_or_else(|| HistogramError::Malformed("shots".into()))?;
        let bits = num("n_input_bits")?
            .ok_or_else(|| HistogramError::Malformed("n_input_bits".into()))?;
        let mut counts = BTreeMap::new();
        let mut rdr = csv::Reader::from_reader(body.as_bytes());
        for rec in rdr.deserialize::<(u64, f64, u64, f64)>() {
            let (m, _, n, _) = rec?;
            if n > 0 {
                counts.insert(m, n);
            }
        }
        Histogram::try_from(RawHistogram {
            modulus: num("N")?,
            base: num("a")?,
            shots,
            n_input_bits: bits as u32,
            seed: num("seed")?,
            bit_order: get("bit_order")?.parse()?,
            counts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_hist() -> Histogram {
        Histogram::from_dense(
            &[5, 0, 3, 0, 0, 0, 0, 1],
            3,
            BitOrder::MsbFirstByPower,
        )
        .unwrap()
        .with_problem(15, 7)
        .with_seed(42)
    }

    #[test]
    fn json_layout() {
        let h = sample_hist();
        let v: serde_json::Value = serde_json::from_str(&h.to_json()).unwrap();
        assert_eq!(v["N"], 15);
        assert_eq!(v["a"], 7);
        assert_eq!(v["shots"], 9);
        assert_eq!(v["n_input_bits"], 3);
        assert_eq!(v["seed"], 42);
        assert_eq!(v["bit_order"], "msb-first-by-power");
        assert_eq!(v["counts"]["2"], 3);
        assert!(v["counts"].get("1").is_none());
    }

    #[test]
    fn json_rejects_inconsistent_shots() {
        let bad = r#"{"N":15,"a":7,"shots":10,"n_input_bits":3,"seed":1,
            "bit_order":"msb-first-by-power","counts":{"0":4}}"#;
        assert!(Histogram::from_json(bad).is_err());
        let out_of_range = r#"{"N":15,"a":7,"shots":4,"n_input_bits":3,"seed":1,
            "bit_order":"msb-first-by-power","counts":{"8":4}}"#;
        assert!(Histogram::from_json(out_of_range).is_err());
    }

    #[test]
    fn csv_has_phase_column() {
        let csv = sample_hist().to_csv();
        assert!(csv.contains("m,phase,count,frequency\n"));
        assert!(csv.contains("\n2,0.25,3,0.3333333333333333\n"));
        assert!(csv.contains("# bit_order=msb-first-by-power\n"));
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 9);
    }

    #[test]
    fn merge_rules() {
        let h = sample_hist();
        let empty = Histogram::empty(3, BitOrder::MsbFirstByPower)
            .unwrap()
            .with_problem(15, 7);
        assert_eq!(h.merge(&empty).unwrap(), h);
        assert_eq!(empty.merge(&h).unwrap(), h);
        let twice = h.merge(&h).unwrap();
        assert_eq!(twice.shots(), 18);
        assert_eq!(twice.count(0), 10);

        let other = Histogram::empty(3, BitOrder::MsbFirstByPower)
            .unwrap()
            .with_problem(15, 8);
        assert!(matches!(h.merge(&other), Err(HistogramError::Mismatch(_))));
    }

    fn arb_hist() -> impl Strategy<Value = Histogram> {
        (prop::collection::vec(0u64..1000, 16), any::<u64>()).prop_map(|(d, seed)| {
            Histogram::from_dense(&d, 4, BitOrder::MsbFirstByPower)
                .unwrap()
                .with_problem(15, 2)
                .with_seed(seed)
        })
    }

    proptest! {
        #[test]
        fn serialization_round_trips_bit_exactly(h in arb_hist()) {
            let json = h.to_json();
            let back = Histogram::from_json(&json).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(back.to_json(), json);

            let csv = h.to_csv();
            let back = Histogram::read_csv(csv.as_bytes()).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(back.to_csv(), csv);
        }

        #[test]
        fn merge_commutes_and_associates(a in arb_hist(), b in arb_hist(), c in arb_hist()) {
            let ab = a.merge(&b).unwrap();
            let ba = b.merge(&a).unwrap();
            prop_assert_eq!(ab.counts(), ba.counts());
            prop_assert_eq!(ab.shots(), a.shots() + b.shots());
            let left = ab.merge(&c).unwrap();
            let right = a.merge(&b.merge(&c).unwrap()).unwrap();
            prop_assert_eq!(left.counts(), right.counts());
            prop_assert_eq!(left.counts().values().sum::<u64>(), left.shots());
        }
    }
}
