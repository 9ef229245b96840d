//! Sign conventions: the two isomorphisms between T-terms and signed vectors.
//!
//! Each convention is a strategy behind [`SignConvention`]. A
//! [`ConventionRegistry`] holds them by name so callers (the signed
//! single-sided view, the CLI) can pick one at runtime.

use std::collections::BTreeMap;

use crate::algebra::{IntVec, TTerm};

pub trait SignConvention: Send + Sync {
    fn name(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    /// T-term to signed vector.
    fn to_signed(&self, term: &TTerm) -> IntVec;

    /// Signed vector to its reduced T-term; inverse of [`Self::to_signed`].
    fn to_term(&self, value: &IntVec) -> TTerm;
}

/// `[x // y] -> x - y`
#[derive(Debug, Clone, Copy, Default)]
pub struct DebitConvention;

/// `[x // y] -> y - x`
#[derive(Debug, Clone, Copy, Default)]
pub struct CreditConvention;

impl SignConvention for DebitConvention {
    fn name(&self) -> &'static str {
        "debit"
    }

    fn describe(&self) -> &'static str {
        "debit isomorphism, [x // y] maps to x - y"
    }

    fn to_signed(&self, term: &TTerm) -> IntVec {
        term.debit_iso()
    }

    fn to_term(&self, value: &IntVec) -> TTerm {
        TTerm::encode_debit(value)
    }
}

impl SignConvention for CreditConvention {
    fn name(&self) -> &'static str {
        "credit"
    }

    fn describe(&self) -> &'static str {
        "credit isomorphism, [x // y] maps to y - x"
    }

    fn to_signed(&self, term: &TTerm) -> IntVec {
        term.credit_iso()
    }

    fn to_term(&self, value: &IntVec) -> TTerm {
        TTerm::encode_credit(value)
    }
}

pub struct ConventionRegistry {
    entries: BTreeMap<&'static str, Box<dyn SignConvention>>,
}

impl ConventionRegistry {
    pub fn empty() -> Self {
        ConventionRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Registers a convention, replacing any previous one with the same name.
    pub fn register(&mut self, convention: Box<dyn SignConvention>) {
        self.entries.insert(convention.name(), convention);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SignConvention> {
        self.entries.get(name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for ConventionRegistry {
    fn default() -> Self {
        let mut registry = ConventionRegistry::empty();
        registry.register(Box::new(DebitConvention));
        registry.register(Box::new(CreditConvention));
        registry
    }
}
