//! Stable JSON output: keys sorted, pretty-printed.

use serde::Serialize;

use crate::exactalg::Rational;

/// Round-trips through [`serde_json::Value`], whose maps are ordered, so
/// every object comes out with sorted keys regardless of field order.
pub fn to_stable_string<T: Serialize + ?Sized>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    serde_json::to_string_pretty(&v).expect("serializable value")
}

/// Rationals go over the wire as strings: `"4"`, `"-1/2"`.
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) mod rational_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactalg::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rational_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Rational>().map_err(serde::de::Error::custom)
    }
}
