//! Canonical JSON certificates.
//!
//! Integers are decimal strings and rationals are `{"num", "den"}` objects in
//! lowest terms. Field order is fixed by the struct definitions and no
//! timestamps appear anywhere, so identical runs produce identical bytes.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "chatelet-certificate/1";

/// Run metadata, kept apart from the certificate body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub arguments: Vec<String>,
}

/// A versioned certificate document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema_version: String,
    pub header: Header,
    pub body: T,
}

impl<T> Document<T> {
    pub fn new(command: &str, arguments: Vec<String>, body: T) -> Self {
        Document {
            schema_version: SCHEMA_VERSION.to_string(),
            header: Header {
                tool: "chatelet".to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                command: command.to_string(),
                arguments,
            },
            body,
        }
    }
}

impl<T: Serialize> Document<T> {
    /// Pretty-printed, with a stable key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }
}

impl<T: DeserializeOwned> Document<T> {
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema version {}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }
}

pub(crate) mod bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        use serde::de::Error as _;
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub(crate) mod bigint_pairs {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct PrimePower {
        prime: String,
        exponent: u32,
    }

    pub fn serialize<S: Serializer>(v: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|(p, e)| PrimePower {
                prime: p.to_string(),
                exponent: *e,
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigInt, u32)>, D::Error> {
        use serde::de::Error as _;
        Vec::<PrimePower>::deserialize(d)?
            .into_iter()
            .map(|pp| Ok((pp.prime.parse().map_err(D::Error::custom)?, pp.exponent)))
            .collect()
    }
}
