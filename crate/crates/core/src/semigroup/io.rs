use serde::{Deserialize, Serialize};

use super::FinSemigroup;
use crate::algebra::json_error;
use crate::algebra::Transf;
use crate::config::RunConfig;
use crate::error::{HullError, Result};

/// On-disk form of a semigroup: either `{"table": [[..], ..]}` with rows of
/// the multiplication table, or `{"carrier": n, "elements": [[..], ..]}`
/// listing maps on `0..n` closed under composition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> HullError {
    HullError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

impl SemigroupFile {
    pub fn into_semigroup(self, cfg: &RunConfig) -> Result<FinSemigroup> {
        let s = match (self.table, self.carrier, self.elements) {
            (Some(rows), None, None) => {
                let m = rows.len();
                if m == 0 {
                    return Err(parse_err("table", "must have at least one row"));
                }
                if m > cfg.max_table_order {
                    return Err(HullError::size("semigroup order", m, cfg.max_table_order));
                }
                let mut mul = Vec::with_capacity(m * m);
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != m {
                        return Err(parse_err(format!("table[{i}]"), format!("expected {m} entries, found {}", row.len())));
                    }
                    if let Some(j) = row.iter().position(|&v| v >= m) {
                        return Err(parse_err(format!("table[{i}][{j}]"), format!("value {} is outside 0..{m}", row[j])));
                    }
                    mul.extend_from_slice(row);
                }
                FinSemigroup::from_table(m, mul, cfg.seed)?
            }
            (None, Some(n), Some(elements)) => {
                if n == 0 {
                    return Err(parse_err("carrier", "must be at least 1"));
                }
                let mut maps = Vec::with_capacity(elements.len());
                for (i, e) in elements.into_iter().enumerate() {
                    if e.len() != n {
                        return Err(parse_err(format!("elements[{i}]"), format!("expected {n} values, found {}", e.len())));
                    }
                    if let Some(j) = e.iter().position(|&v| v >= n) {
                        return Err(parse_err(format!("elements[{i}][{j}]"), format!("value {} is outside 0..{n}", e[j])));
                    }
                    maps.push(Transf::new(e));
                }
                FinSemigroup::from_maps(n, maps, cfg.max_table_order)?
            }
            _ => {
                return Err(parse_err(
                    "top level",
                    "give either `table`, or both `carrier` and `elements`",
                ))
            }
        };
        match self.names {
            Some(names) => s.with_names(names),
            None => Ok(s),
        }
    }

    /// Maps form when the semigroup has a representation, table form otherwise.
    pub fn from_semigroup(s: &FinSemigroup) -> Self {
        let names = s.names().map(<[String]>::to_vec);
        match s.repr() {
            Some(maps) => SemigroupFile {
                carrier: s.carrier(),
                elements: Some(maps.iter().map(|f| f.values().to_vec()).collect()),
                names,
                ..Default::default()
            },
            None => SemigroupFile {
                table: Some(s.table().chunks(s.order()).map(<[usize]>::to_vec).collect()),
                names,
                ..Default::default()
            },
        }
    }
}

pub fn semigroup_from_json(text: &str, cfg: &RunConfig) -> Result<FinSemigroup> {
    let file: SemigroupFile = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    file.into_semigroup(cfg)
}

pub fn semigroup_to_json(s: &FinSemigroup) -> String {
    serde_json::to_string(&SemigroupFile::from_semigroup(s)).expect("semigroup serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{full_transformation_monoid, right_zero};

    #[test]
    fn round_trip_both_forms() {
        let cfg = RunConfig::default();
        for s in [right_zero(3).unwrap(), full_transformation_monoid(2, &cfg).unwrap()] {
            let back = semigroup_from_json(&semigroup_to_json(&s), &cfg).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn diagnostics() {
        let cfg = RunConfig::default();
        let e = semigroup_from_json(r#"{"table": [[0, 1], [1]]}"#, &cfg).unwrap_err();
        assert!(matches!(e, HullError::Parse { location, .. } if location == "table[1]"));
        let e = semigroup_from_json(r#"{"carrier": 2, "elements": [[0, 2]]}"#, &cfg).unwrap_err();
        assert!(matches!(e, HullError::Parse { location, .. } if location == "elements[0][1]"));
        assert!(semigroup_from_json(r#"{"carrier": 2}"#, &cfg).is_err());
        assert!(semigroup_from_json(r#"{"table": [[1, 1], [0, 0]]}"#, &cfg).is_err());
    }
}
