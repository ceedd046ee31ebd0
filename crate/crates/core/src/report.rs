//! Named inequality checks shared by certificates and construction reports.

use serde::Serialize;

use crate::error::{Error, Result};

/// One verified inequality: `observed <= bound` (or `>=`, see `relation`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub bound: f64,
    pub observed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    Holds,
}

impl Check {
    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            relation: Relation::AtMost,
            bound,
            observed,
            pass: observed <= bound,
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            relation: Relation::AtLeast,
            bound,
            observed,
            pass: observed >= bound,
        }
    }

    /// A boolean property; `observed` is 1 when it holds.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            relation: Relation::Holds,
            bound: 1.0,
            observed: if ok { 1.0 } else { 0.0 },
            pass: ok,
        }
    }
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) -> &Check {
        self.checks.push(c);
        self.checks.last().unwrap()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `Err(CheckFailed)` naming the first failing check.
    pub fn into_result(self) -> Result<Self> {
        if let Some(c) = self.failures().next() {
            return Err(Error::check(
                c.name.clone(),
                format!("observed {:e}, bound {:e}", c.observed, c.bound),
            ));
        }
        Ok(self)
    }
}
