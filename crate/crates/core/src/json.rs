//! Serialization helpers shared by the report types.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Writes a big natural as a JSON number when it fits in `u64`, else as a decimal string.
pub fn big<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(v) => serializer.serialize_u64(v),
        None => serializer.collect_str(value),
    }
}
