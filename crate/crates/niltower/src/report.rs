//! Deterministic JSON reports.

use niltower_core::matrix::AbelianInvariants;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "niltower-report/1";

/// Integers up to 53 bits are JSON numbers; larger ones are decimal strings.
pub fn big(x: &BigInt) -> Value {
    if x.bits() <= 53 {
        let v = i64::try_from(x).expect("fits in 53 bits");
        Value::from(v)
    } else {
        Value::String(x.to_string())
    }
}

pub fn int(x: i64) -> Value {
    big(&BigInt::from(x))
}

pub fn invariants(a: &AbelianInvariants) -> Value {
    json!({ "rank": a.rank, "torsion": a.torsion.iter().map(big).collect::<Vec<_>>() })
}

/// Hash of everything a result depends on: the verb, its options, and the
/// bytes of its input files (never their paths).
#[derive(Clone)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new(verb: &str) -> Self {
        let mut h = Sha256::new();
        h.update(verb.as_bytes());
        InputDigest(h)
    }

    pub fn option(&mut self, key: &str, value: &str) {
        for part in [key, value] {
            self.0.update((part.len() as u64).to_le_bytes());
            self.0.update(part.as_bytes());
        }
    }

    pub fn file(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn hex(&self) -> String {
        self.0.clone().finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A finished report. Keys serialize in sorted order.
pub struct Report {
    pub verb: String,
    pub inputs: String,
    pub outcome: Result<Value, Value>,
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn render(&self) -> String {
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("verb".into(), self.verb.clone().into());
        m.insert("inputs".into(), self.inputs.clone().into());
        match &self.outcome {
            Ok(v) => m.insert("result".into(), v.clone()),
            Err(e) => m.insert("error".into(), e.clone()),
        };
        if let Some(t) = self.elapsed_ms {
            m.insert("elapsed_ms".into(), Value::from(t as u64));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(big(&BigInt::from(1i64 << 52)), json!(4503599627370496i64));
        assert_eq!(big(&BigInt::from(-(1i64 << 52))), json!(-4503599627370496i64));
        assert_eq!(big(&BigInt::from(1i64 << 53)), json!("9007199254740992"));
    }

    #[test]
    fn keys_are_sorted() {
        let r = Report { verb: "witt".into(), inputs: "00".into(), outcome: Ok(json!({"z": 1, "a": 2})), elapsed_ms: None };
        let s = r.render();
        let keys: Vec<usize> = ["\"inputs\"", "\"result\"", "\"schema\"", "\"verb\""].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
    }
}
