use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::exponents::ExponentEntry;
use crate::foundation::BoundedReal;

/// A bound evaluation with every intermediate value it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub theorem: String,
    pub inputs: BTreeMap<String, String>,
    pub intermediates: Vec<(String, BoundedReal)>,
    pub final_bound: BoundedReal,
    pub exponents: Vec<ExponentEntry>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(theorem: &str, final_bound: BoundedReal) -> Self {
        BoundReport {
            theorem: theorem.to_string(),
            inputs: BTreeMap::new(),
            intermediates: Vec::new(),
            final_bound,
            exponents: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<String>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn step(mut self, name: &str, value: BoundedReal) -> Self {
        self.intermediates.push((name.to_string(), value));
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn intermediate(&self, name: &str) -> Option<&BoundedReal> {
        self.intermediates.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .intermediates
            .iter()
            .map(|(name, v)| {
                let mut j = v.to_json();
                j["name"] = Value::String(name.clone());
                j
            })
            .collect();
        json!({
            "theorem": self.theorem,
            "inputs": self.inputs,
            "intermediates": steps,
            "final_bound": self.final_bound.to_json(),
            "exponents": self.exponents.iter().map(ExponentEntry::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}
