//! JSON encoding of instances.
//!
//! ```json
//! {"variables": 2, "algebra": "sq3", "domains": [[0,1,2],[0,1,2]],
//!  "constraints": [{"scope": [0,1], "tuples": [[0,0],[1,1],[2,2]]}]}
//! ```
//!
//! `algebra` is either an inline algebra object or a reference string that the
//! caller resolves. Instances whose domains live in different algebras use
//! `"algebras"`, one entry per variable, instead. `domains` defaults to full
//! universes.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relation::Relation;

use super::{Constraint, CspInstance, Domain};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn usize_array(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| malformed(format!("{what} must contain non-negative integers")))
        })
        .collect()
}

fn algebra_value(v: &Value, resolve: &dyn Fn(&str) -> Result<FiniteAlgebra>) -> Result<FiniteAlgebra> {
    match v {
        Value::String(s) => resolve(s),
        Value::Object(_) => FiniteAlgebra::from_json_value(v),
        _ => Err(malformed("algebra must be a reference string or an object")),
    }
}

impl CspInstance {
    /// Parses an instance; `resolve` turns algebra reference strings into algebras.
    pub fn from_json_value(v: &Value, resolve: &dyn Fn(&str) -> Result<FiniteAlgebra>) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| malformed("instance must be an object"))?;
        let n = obj
            .get("variables")
            .and_then(Value::as_u64)
            .ok_or_else(|| malformed("missing integer field `variables`"))? as usize;
        let algebras: Vec<Arc<FiniteAlgebra>> = match (obj.get("algebra"), obj.get("algebras")) {
            (Some(a), None) => vec![Arc::new(algebra_value(a, resolve)?); n],
            (None, Some(list)) => {
                let list = list.as_array().ok_or_else(|| malformed("`algebras` must be an array"))?;
                if list.len() != n {
                    return Err(malformed(format!("{} algebras for {n} variables", list.len())));
                }
                list.iter()
                    .map(|a| algebra_value(a, resolve).map(Arc::new))
                    .collect::<Result<_>>()?
            }
            _ => return Err(malformed("exactly one of `algebra` and `algebras` is required")),
        };
        let domains: Vec<Domain> = match obj.get("domains") {
            None => algebras.into_iter().map(Domain::full).collect(),
            Some(ds) => {
                let ds = ds.as_array().ok_or_else(|| malformed("`domains` must be an array"))?;
                if ds.len() != n {
                    return Err(malformed(format!("{} domains for {n} variables", ds.len())));
                }
                ds.iter()
                    .zip(algebras)
                    .map(|(d, a)| Domain::new(a, &usize_array(d, "domain")?))
                    .collect::<Result<_>>()?
            }
        };
        let mut constraints = Vec::new();
        if let Some(cs) = obj.get("constraints") {
            for c in cs.as_array().ok_or_else(|| malformed("`constraints` must be an array"))? {
                let scope = usize_array(c.get("scope").ok_or_else(|| malformed("constraint without scope"))?, "scope")?;
                let tuples = c
                    .get("tuples")
                    .and_then(Value::as_array)
                    .ok_or_else(|| malformed("constraint without a `tuples` array"))?
                    .iter()
                    .map(|t| usize_array(t, "tuple"))
                    .collect::<Result<Vec<_>>>()?;
                constraints.push(Constraint::new(scope.clone(), Relation::new(scope.len(), tuples)?)?);
            }
        }
        CspInstance::new(domains, constraints)
    }

    pub fn from_json_str(s: &str, resolve: &dyn Fn(&str) -> Result<FiniteAlgebra>) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?, resolve)
    }

    /// Serializes with inline algebras.
    pub fn to_json_value(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("variables".into(), json!(self.variable_count()));
        match self.shared_algebra() {
            Some(a) => {
                obj.insert("algebra".into(), a.to_json_value());
            }
            None => {
                let list: Vec<Value> = self.domains.iter().map(|d| d.algebra().to_json_value()).collect();
                obj.insert("algebras".into(), Value::Array(list));
            }
        }
        let domains: Vec<&[usize]> = self.domains.iter().map(Domain::elements).collect();
        obj.insert("domains".into(), json!(domains));
        let cs: Vec<Value> = self
            .constraints
            .iter()
            .map(|c| json!({"scope": c.scope(), "tuples": c.relation().tuples()}))
            .collect();
        obj.insert("constraints".into(), Value::Array(cs));
        Value::Object(obj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn resolve(name: &str) -> Result<FiniteAlgebra> {
        catalog::by_name(name).ok_or_else(|| malformed(format!("unknown algebra {name}")))
    }

    #[test]
    fn round_trip() {
        let text = r#"{"variables": 2, "algebra": "mass_products_3",
            "constraints": [{"scope": [0, 1], "tuples": [[0,0],[1,1],[2,2]]}]}"#;
        let inst = CspInstance::from_json_str(text, &resolve).unwrap();
        assert_eq!(inst.domain(1).elements(), &[0, 1, 2]);
        let back = CspInstance::from_json_value(&inst.to_json_value(), &resolve).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn mixed_algebras_round_trip() {
        let inst = CspInstance::new(
            vec![Domain::full(Arc::new(catalog::sq3())), Domain::full(Arc::new(catalog::s2()))],
            vec![],
        )
        .unwrap();
        let v = inst.to_json_value();
        assert!(v.get("algebras").is_some());
        assert_eq!(CspInstance::from_json_value(&v, &resolve).unwrap(), inst);
    }

    #[test]
    fn malformed_inputs() {
        for text in [
            r#"[]"#,
            r#"{"algebra": "sq3"}"#,
            r#"{"variables": 1}"#,
            r#"{"variables": 1, "algebra": "nope"}"#,
            r#"{"variables": 1, "algebra": "sq3", "domains": [[5]]}"#,
            r#"{"variables": 1, "algebra": "sq3", "constraints": [{"scope": [0,0], "tuples": []}]}"#,
            r#"{"variables": 1, "algebra": "sq3", "constraints": [{"scope": [0], "tuples": [[0,1]]}]}"#,
        ] {
            assert!(CspInstance::from_json_str(text, &resolve).is_err(), "{text}");
        }
    }
}
