use serde::{Deserialize, Serialize};

use super::{AlgebraKind, FiniteAlgebra, NamedOp};
use crate::config::checked_pow;
use crate::error::{HullError, Result};

/// On-disk form of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub size: usize,
    #[serde(default)]
    pub ops: Vec<OpFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpFile {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> HullError {
    HullError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

/// Maps a serde_json error to a line/column diagnostic.
pub(crate) fn json_error(e: &serde_json::Error) -> HullError {
    let msg = e.to_string();
    // serde_json appends " at line L column C"; keep only the description
    let message = msg.split(" at line ").next().unwrap_or(&msg).to_string();
    parse_err(format!("line {}, column {}", e.line(), e.column()), message)
}

impl AlgebraFile {
    pub fn into_algebra(self) -> Result<FiniteAlgebra> {
        if self.size == 0 {
            return Err(parse_err("size", "must be at least 1"));
        }
        let kind = match &self.kind {
            None => None,
            Some(k) => Some(AlgebraKind::parse(k).ok_or_else(|| {
                parse_err("kind", format!("unknown kind `{k}`"))
            })?),
        };
        let n = self.size;
        let mut ops = Vec::with_capacity(self.ops.len());
        for (i, op) in self.ops.into_iter().enumerate() {
            let expected = checked_pow(n, op.arity)
                .ok_or_else(|| parse_err(format!("ops[{i}].arity"), "table size overflows"))?;
            if op.table.len() != expected {
                return Err(parse_err(
                    format!("ops[{i}].table"),
                    format!("arity {} needs {expected} entries, found {}", op.arity, op.table.len()),
                ));
            }
            if let Some(pos) = op.table.iter().position(|&v| v >= n) {
                return Err(parse_err(
                    format!("ops[{i}].table[{pos}]"),
                    format!("value {} is outside 0..{n}", op.table[pos]),
                ));
            }
            ops.push(NamedOp::new(op.name, op.arity, op.table));
        }
        FiniteAlgebra::new(n, ops, kind)
    }

    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        AlgebraFile {
            size: alg.size(),
            ops: alg
                .ops()
                .iter()
                .map(|o| OpFile {
                    name: o.name.clone(),
                    arity: o.arity,
                    table: o.table.clone(),
                })
                .collect(),
            kind: alg.kind().map(|k| k.as_str().to_string()),
        }
    }
}

pub fn algebra_from_json(text: &str) -> Result<FiniteAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    file.into_algebra()
}

pub fn algebra_to_json(alg: &FiniteAlgebra) -> String {
    serde_json::to_string(&AlgebraFile::from_algebra(alg)).expect("algebra serialises")
}
