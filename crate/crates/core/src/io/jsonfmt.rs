//! Deterministic JSON output: fixed field order (struct order / BTree maps)
//! and floats printed with 17 significant digits, so identical inputs yield
//! byte-identical reports.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Compact JSON formatter printing every f64 with 17 significant digits.
pub struct SigDigits17;

impl Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serialize with the 17-significant-digit float policy.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits17);
    value.serialize(&mut ser).expect("report types serialize without error");
    String::from_utf8(out).expect("serde_json emits utf-8")
}

/// 16-hex-character content hash of the canonical JSON form.
pub fn hash_json<T: Serialize>(value: &T) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(to_json_string(value).as_bytes());
    let digest = hasher.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// One float at CSV precision (9 significant digits).
pub fn csv_float(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.8e}")
    } else {
        String::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_width() {
        #[derive(Serialize)]
        struct S {
            a: f64,
            b: f64,
        }
        let s = to_json_string(&S { a: 0.5, b: 1.0 / 3.0 });
        assert_eq!(s, r#"{"a":5.0000000000000000e-1,"b":3.3333333333333331e-1}"#);
    }

    #[test]
    fn seventeen_digits_round_trip() {
        let vals = [std::f64::consts::PI, 1e-300, -2.5e17, 0.1 + 0.2];
        for v in vals {
            let s = to_json_string(&v);
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(v, back, "{s}");
        }
    }

    #[test]
    fn hashes_are_stable() {
        let h1 = hash_json(&vec![1.0, 2.0]);
        let h2 = hash_json(&vec![1.0, 2.0]);
        assert_eq!(h1, h2);
        assert_eq!(h1.len(), 16);
        assert_ne!(h1, hash_json(&vec![1.0, 2.1]));
    }

    #[test]
    fn csv_floats_have_nine_digits() {
        assert_eq!(csv_float(0.5), "5.00000000e-1");
    }
}
