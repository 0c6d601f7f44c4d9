//! Output records. Field order here is the field order on the wire.

use serde::{Serialize, Serializer};

use tropirange::{Interval, Spectrum};

/// Rounds to 12 significant digits.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// A float written with 12 significant digits, and without a fractional
/// part when it is integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = round12(self.0);
        if r.fract() == 0.0 && r.abs() < 1e15 {
            s.serialize_i64(r as i64)
        } else {
            s.serialize_f64(r)
        }
    }
}

pub fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

#[derive(Serialize)]
pub struct Hull {
    pub lo: Num,
    pub hi: Num,
}

impl From<Interval<f64>> for Hull {
    fn from(i: Interval<f64>) -> Self {
        Hull { lo: Num(i.lo()), hi: Num(i.hi()) }
    }
}

#[derive(Serialize)]
pub struct KRange {
    pub k: usize,
    pub lo: Num,
    pub hi: Num,
}

#[derive(Serialize)]
pub struct Root {
    pub value: Num,
    pub multiplicity: usize,
}

pub fn roots(s: &Spectrum<f64>) -> Vec<Root> {
    s.entries()
        .iter()
        .map(|&(v, m)| Root { value: Num(v), multiplicity: m })
        .collect()
}

#[derive(Serialize)]
pub struct KSpectrum {
    pub kind: &'static str,
    pub k: usize,
    pub values: Vec<Num>,
    pub hull: Hull,
}

#[derive(Serialize)]
pub struct WitnessOut {
    pub k: usize,
    pub z: Num,
    pub value: Num,
    pub case: &'static str,
    pub matrix: Vec<Vec<Num>>,
}

#[derive(Serialize)]
pub struct CharpolyOut {
    pub deltas: Vec<Num>,
    pub essential: Vec<usize>,
    pub roots: Vec<Root>,
    pub zero_mult: usize,
}

#[derive(Serialize)]
pub struct CRangeOut {
    pub values: Vec<Num>,
    pub hull: Hull,
}

#[derive(Serialize)]
pub struct IsometryOut {
    pub n: usize,
    pub k: usize,
    /// 1-based rows holding a 1, per column.
    pub anchors: Vec<Vec<usize>>,
    pub permutation_rows: Vec<usize>,
}

#[derive(Serialize)]
pub struct OracleOut {
    pub oracle: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ProbeOut {
    pub n: usize,
    pub k: usize,
    pub grid: usize,
    pub step: usize,
    pub states: usize,
    pub components: usize,
    pub sizes: Vec<usize>,
    pub evidence: &'static str,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Serialize)]
pub struct ErrorOut {
    pub error: ErrorBody,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits_and_integers() {
        assert_eq!(serde_json::to_string(&Num(9.0)).unwrap(), "9");
        assert_eq!(serde_json::to_string(&Num(6.2)).unwrap(), "6.2");
        assert_eq!(serde_json::to_string(&Num(0.1 + 0.2)).unwrap(), "0.3");
        assert_eq!(serde_json::to_string(&Num(1.0 / 3.0)).unwrap(), "0.333333333333");
        assert_eq!(serde_json::to_string(&Num(0.0)).unwrap(), "0");
    }
}
