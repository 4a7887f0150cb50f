//! Parsing of command line literals and input files.

use std::path::Path;

use serde_json::Value;

use sflat::abelian::standardize;
use sflat::{Int, Matrix, Module};

use crate::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("`{text}`: {e}")))
}

fn int(v: &Value) -> Result<Int, CliError> {
    v.as_i64()
        .map(Int::from)
        .ok_or_else(|| CliError::Input(format!("expected an integer, got {v}")))
}

/// Integers as `2,3,5` or a JSON list.
pub fn int_list(text: &str) -> Result<Vec<Int>, CliError> {
    let text = text.trim();
    if text.starts_with('[') {
        return match json(text)? {
            Value::Array(items) => items.iter().map(int).collect(),
            v => Err(CliError::Input(format!("expected a list, got {v}"))),
        };
    }
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<Int>().map_err(|e| CliError::Input(format!("`{t}`: {e}"))))
        .collect()
}

/// Lists of integer lists, as JSON.
pub fn int_lists(text: &str) -> Result<Vec<Vec<Int>>, CliError> {
    match json(text.trim())? {
        Value::Array(rows) => rows
            .iter()
            .map(|r| match r {
                Value::Array(items) => items.iter().map(int).collect(),
                v => Err(CliError::Input(format!("expected a list, got {v}"))),
            })
            .collect(),
        v => Err(CliError::Input(format!("expected a list of lists, got {v}"))),
    }
}

/// A module as invariant factors (`12,0` or `[12, 0]`, where `0` is a free
/// summand) or as a relation matrix `[[2, 0], [0, 3]]` with relations as
/// rows.
pub fn module(text: &str) -> Result<Module, CliError> {
    if text.trim_start().starts_with("[[") {
        let rows = int_lists(text)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(CliError::Input("relation rows have different lengths".into()));
        }
        return Ok(standardize(&Matrix::from_rows(cols, rows)).module);
    }
    let orders = int_list(text)?;
    if orders.iter().any(|&d| d < 0) {
        return Err(CliError::Input("cyclic orders must be nonnegative".into()));
    }
    Ok(Module::new(orders))
}

/// Test modules for the orthogonality battery: a JSON list of
/// invariant-factor lists.
pub fn test_modules(text: &str) -> Result<Vec<Module>, CliError> {
    Ok(int_lists(text)?.into_iter().map(Module::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_specs() {
        assert_eq!(module("12,0").unwrap().invariant_factors(), vec![12, 0]);
        assert_eq!(module("[4]").unwrap().invariant_factors(), vec![4]);
        assert_eq!(module("[[2,0],[0,3]]").unwrap().invariant_factors(), vec![6]);
        assert_eq!(module("[[2,4]]").unwrap().invariant_factors(), vec![2, 0]);
        assert!(module("-3").is_err());
        assert!(module("[[1],[1,2]]").is_err());
    }

    #[test]
    fn int_lists_parse() {
        assert_eq!(int_list(" 2, 3 ").unwrap(), vec![2, 3]);
        assert_eq!(int_list("[5]").unwrap(), vec![5]);
        assert_eq!(int_lists("[[1],[0,2]]").unwrap(), vec![vec![1], vec![0, 2]]);
        assert!(int_list("x").is_err());
    }
}
