//! Fixed-precision float serialization for canonical JSON.

use serde::Serializer;

use crate::lexicon::VadVector;

/// Rounds to 6 decimal places. The nearest `f64` to a 6-decimal value prints
/// back as exactly that value with shortest-representation formatting.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub(crate) fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round6(*x))
}

pub(crate) fn ser_vad<S: Serializer>(vad: &VadVector, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&vad.to_array().map(round6), s)
}

pub(crate) fn ser_opt_vad<S: Serializer>(vad: &Option<VadVector>, s: S) -> Result<S::Ok, S::Error> {
    match vad {
        Some(v) => ser_vad(v, s),
        None => s.serialize_none(),
    }
}
