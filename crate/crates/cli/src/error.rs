use serde_json::{json, Value};

use seedmat::cluster_matroid::ClusterMatroidError;
use seedmat::enumeration::EnumerationError;
use seedmat::matroid::MatroidError;
use seedmat::poly::PolyError;
use seedmat::polygon::PolygonError;
use seedmat::seed::SeedError;

/// Failure of a subcommand. Usage errors exit with 2, everything else with 1
/// and a JSON description on stdout.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain {
        kind: &'static str,
        message: String,
        details: Option<Value>,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn domain(kind: &'static str, message: impl Into<String>, details: Option<Value>) -> Self {
        CliError::Domain {
            kind,
            message: message.into(),
            details,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(msg) => json!({ "error": { "kind": "usage", "message": msg } }),
            CliError::Domain { kind, message, details } => {
                let mut e = json!({ "kind": kind, "message": message });
                if let Some(d) = details {
                    e["details"] = d.clone();
                }
                json!({ "error": e })
            }
        }
    }
}

macro_rules! domain_from {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::domain($kind, e.to_string(), None)
            }
        })*
    };
}

domain_from! {
    SeedError => "seed",
    PolyError => "poly",
    EnumerationError => "enumeration",
    MatroidError => "matroid",
    ClusterMatroidError => "cluster_matroid",
    PolygonError => "polygon",
    std::io::Error => "io",
    serde_json::Error => "json",
}
