//! Exact encodings shared by the CLI's JSON output and the service.
//!
//! Rationals travel as decimal strings `"p/q"` (or `"p"` when integral),
//! never as floats. Prime factors are JSON integers while they are exactly
//! representable in an IEEE double (≤ 2⁵³) and decimal strings beyond.

use std::fmt;

use dimerlab::analytics::FactorList;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use dimerlab::error::Error;

/// Failure of a request, with the exit code the CLI uses for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApiError {
    /// 2 for malformed requests, 3 for computations that cannot be done.
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn parse(message: impl Into<String>) -> Self {
        ApiError { code: 2, kind: "parse", message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        ApiError { code: 3, kind: "domain", message: message.into() }
    }

    /// Structured error payload.
    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "kind": self.kind, "message": self.message } })
    }

    /// HTTP status for the service.
    pub fn http_status(&self) -> u16 {
        if self.code == 2 {
            400
        } else {
            422
        }
    }
}

impl fmt::Display for ApiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.kind, self.message)
    }
}

impl std::error::Error for ApiError {}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let (code, kind, message) = match e {
            Error::Parse(m) => (2, "parse", m),
            Error::Parameter(m) => (2, "parameter", m),
            Error::Domain(m) => (3, "domain", m),
            e @ Error::Embedding(..) => (3, "embedding", e.to_string()),
            Error::Limit(m) => (3, "limit", m),
        };
        ApiError { code, kind, message }
    }
}

pub type ApiResult<T> = std::result::Result<T, ApiError>;

/// `"p/q"`, or `"p"` for integers.
pub fn rational_to_wire(x: &BigRational) -> String {
    x.to_string()
}

/// Inverse of [`rational_to_wire`]; also accepts surrounding whitespace
/// and unreduced fractions.
pub fn rational_from_wire(s: &str) -> ApiResult<BigRational> {
    let s = s.trim();
    let bad = || ApiError::parse(format!("'{s}' is not an exact rational"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().map_err(|_| bad())?, d.parse::<BigInt>().map_err(|_| bad())?),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if d.is_zero() {
        return Err(ApiError::parse(format!("'{s}' has a zero denominator")));
    }
    Ok(BigRational::new(n, d))
}

const SAFE_INTEGER: u64 = 1 << 53;

/// A big integer as a JSON integer when exactly representable everywhere,
/// else as a decimal string.
pub fn int_to_wire(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) if v <= SAFE_INTEGER => json!(v),
        _ => json!(x.to_string()),
    }
}

/// `[[p, e], …]`, ascending primes.
pub fn factors_to_wire(f: &FactorList) -> Value {
    Value::Array(f.factors.iter().map(|(p, e)| json!([int_to_wire(p), e])).collect())
}

/// Writes a JSON value as one compact line; used by both front ends so
/// their payloads are byte-identical.
pub fn to_line(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}
