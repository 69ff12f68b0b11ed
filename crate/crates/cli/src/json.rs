//! Deterministic JSON emission: fixed key order (insertion order), floats
//! at 17 significant digits, no whitespace variation. Identical inputs
//! produce byte-identical artifacts.

/// Render a float with 17 significant digits (exact f64 round trip).
/// Non-finite values have no JSON number form and are emitted as strings
/// by [`JsonValue::num`].
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A rendered JSON value (already serialized).
#[derive(Debug, Clone)]
pub struct JsonValue(pub String);

impl JsonValue {
    pub fn num(x: f64) -> JsonValue {
        if x.is_finite() {
            JsonValue(fmt_f64(x))
        } else if x.is_nan() {
            JsonValue(String::from("\"nan\""))
        } else if x > 0.0 {
            JsonValue(String::from("\"inf\""))
        } else {
            JsonValue(String::from("\"-inf\""))
        }
    }

    pub fn int(x: i64) -> JsonValue {
        JsonValue(x.to_string())
    }

    pub fn uint(x: u64) -> JsonValue {
        JsonValue(x.to_string())
    }

    pub fn bool(x: bool) -> JsonValue {
        JsonValue(if x { "true" } else { "false" }.to_string())
    }

    pub fn str(s: &str) -> JsonValue {
        let mut out = String::with_capacity(s.len() + 2);
        out.push('"');
        for ch in s.chars() {
            match ch {
                '"' => out.push_str("\\\""),
                '\\' => out.push_str("\\\\"),
                '\n' => out.push_str("\\n"),
                '\r' => out.push_str("\\r"),
                '\t' => out.push_str("\\t"),
                c if (c as u32) < 0x20 => {
                    out.push_str(&format!("\\u{:04x}", c as u32));
                }
                c => out.push(c),
            }
        }
        out.push('"');
        JsonValue(out)
    }

    pub fn null() -> JsonValue {
        JsonValue(String::from("null"))
    }

    pub fn array(items: impl IntoIterator<Item = JsonValue>) -> JsonValue {
        let parts: Vec<String> = items.into_iter().map(|v| v.0).collect();
        JsonValue(format!("[{}]", parts.join(",")))
    }

    pub fn num_array(items: impl IntoIterator<Item = f64>) -> JsonValue {
        JsonValue::array(items.into_iter().map(JsonValue::num))
    }
}

/// Ordered JSON object builder.
#[derive(Debug, Default)]
pub struct JsonObject {
    fields: Vec<(String, JsonValue)>,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject::default()
    }

    pub fn field(mut self, key: &str, value: JsonValue) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn num(self, key: &str, x: f64) -> Self {
        self.field(key, JsonValue::num(x))
    }

    pub fn uint(self, key: &str, x: u64) -> Self {
        self.field(key, JsonValue::uint(x))
    }

    pub fn bool(self, key: &str, x: bool) -> Self {
        self.field(key, JsonValue::bool(x))
    }

    pub fn str(self, key: &str, s: &str) -> Self {
        self.field(key, JsonValue::str(s))
    }

    pub fn build(self) -> JsonValue {
        let parts: Vec<String> = self
            .fields
            .into_iter()
            .map(|(k, v)| format!("{}:{}", JsonValue::str(&k).0, v.0))
            .collect();
        JsonValue(format!("{{{}}}", parts.join(",")))
    }
}

/// Serialize with a trailing newline (canonical artifact form).
pub fn to_artifact(value: JsonValue) -> String {
    let mut s = value.0;
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_significant_digits_and_round_trip() {
        let x = core::f64::consts::PI;
        let s = fmt_f64(x);
        assert_eq!(s, "3.1415926535897931e0");
        let back: f64 = s.parse().unwrap();
        assert_eq!(back, x);
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn objects_preserve_insertion_order() {
        let v = JsonObject::new()
            .uint("b", 2)
            .num("a", 0.5)
            .bool("flag", true)
            .build();
        assert_eq!(v.0, "{\"b\":2,\"a\":5.0000000000000000e-1,\"flag\":true}");
    }

    #[test]
    fn strings_are_escaped() {
        assert_eq!(JsonValue::str("a\"b\\c\n").0, "\"a\\\"b\\\\c\\n\"");
    }

    #[test]
    fn non_finite_values_become_strings() {
        assert_eq!(JsonValue::num(f64::INFINITY).0, "\"inf\"");
        assert_eq!(JsonValue::num(f64::NAN).0, "\"nan\"");
    }
}
