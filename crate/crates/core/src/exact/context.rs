use std::fmt;
use std::sync::Arc;

use super::error::{ExactError, Result};

/// An ordered list of distinct variable names.
///
/// The order is fixed at creation; it determines the exponent layout of
/// every [`Monomial`](super::Monomial) over the context and the term order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Arc<[String]>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(ExactError::Context(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(ExactError::Context(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarContext {
            names: names.into(),
        })
    }

    /// `prefix1, ..., prefix{count}`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        Self::new((1..=count).map(|i| format!("{prefix}{i}"))).expect("indexed names are valid")
    }

    pub fn empty() -> Self {
        VarContext {
            names: Arc::from(Vec::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| ExactError::Context(format!("unknown variable `{name}`")))
    }

    pub fn same(&self, other: &VarContext) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    /// Name-union: this context's names in order, then the other's new names.
    pub fn union(&self, other: &VarContext) -> VarContext {
        if self.same(other) {
            return self.clone();
        }
        let mut names: Vec<String> = self.names.to_vec();
        let mut grew = false;
        for n in other.names.iter() {
            if !names.contains(n) {
                names.push(n.clone());
                grew = true;
            }
        }
        if !grew && names.len() == self.names.len() {
            return self.clone();
        }
        VarContext {
            names: names.into(),
        }
    }

    /// Position of each of this context's variables inside `target`.
    pub fn embedding_into(&self, target: &VarContext) -> Result<Vec<usize>> {
        self.names.iter().map(|n| target.require(n)).collect()
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// `[a-z][a-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_keeps_order() {
        let a = VarContext::new(["y1", "y2"]).unwrap();
        let b = VarContext::new(["s", "y2"]).unwrap();
        let u = a.union(&b);
        assert_eq!(u.names(), &["y1", "y2", "s"]);
        assert!(a.union(&a).same(&a));
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(VarContext::new(["x", "x"]).is_err());
        assert!(VarContext::new(["X1"]).is_err());
        assert!(VarContext::new(["1x"]).is_err());
        assert!(VarContext::new(["y1_d"]).is_ok());
    }
}
