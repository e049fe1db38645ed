//! Variable names and fresh-name generation.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

/// An interned-by-sharing variable name.
///
/// r-variables / μ-variables are stored without their `@` sigil; the sigil
/// is a property of the variable kind and is added back when printing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Free variables of a term, split by kind: λ-variables (`x`) and
/// μ-variables (`@a`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub lvars: BTreeSet<Name>,
    pub rvars: BTreeSet<Name>,
}

impl FreeVars {
    pub fn is_subset(&self, other: &FreeVars) -> bool {
        self.lvars.is_subset(&other.lvars) && self.rvars.is_subset(&other.rvars)
    }

    pub fn union(mut self, other: FreeVars) -> FreeVars {
        self.lvars.extend(other.lvars);
        self.rvars.extend(other.rvars);
        self
    }
}

/// Generates names that avoid a fixed set, suffixing a counter to the
/// original name with its trailing digits stripped (`x` → `x1`, `x2`, …).
///
/// Every name handed out is added to the avoid set, so one supply never
/// returns the same name twice.
#[derive(Debug, Default, Clone)]
pub struct FreshSupply {
    avoid: HashSet<Name>,
    counter: usize,
}

impl FreshSupply {
    pub fn new(avoid: HashSet<Name>) -> Self {
        FreshSupply { avoid, counter: 0 }
    }

    pub fn avoid(&mut self, name: Name) {
        self.avoid.insert(name);
    }

    pub fn fresh(&mut self, base: &Name) -> Name {
        let stem = base.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "v" } else { stem };
        loop {
            self.counter += 1;
            let candidate = Name::from(format!("{stem}{}", self.counter));
            if !self.avoid.contains(&candidate) {
                self.avoid.insert(candidate.clone());
                return candidate;
            }
        }
    }
}
