use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Prefix reserved for auxiliary elements introduced by constructions
/// (contraction sets, copies, projection elements). User-supplied ground
/// labels may not start with it.
pub const AUX_PREFIX: &str = "__aux";

/// An ordered list of distinct element names. The order is the ambient
/// total order used for Pfaffian signs and greedy bases.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

impl Labels {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels = Labels::default();
        for name in names {
            labels.push(name.into())?;
        }
        Ok(labels)
    }

    /// `prefix0, prefix1, ...`
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Labels::new((0..n).map(|i| format!("{prefix}{i}"))).expect("numbered labels are distinct")
    }

    /// Fresh auxiliary labels `__aux{start}`, `__aux{start+1}`, ...
    pub fn aux(start: usize, n: usize) -> Vec<String> {
        (start..start + n).map(|i| format!("{AUX_PREFIX}{i}")).collect()
    }

    pub fn push(&mut self, name: String) -> Result<usize> {
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateLabel(name));
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        Ok(i)
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

    pub fn get(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Positions of `names`, failing on the first unknown one.
    pub fn positions<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.position(n.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(n.as_ref().to_string()))
            })
            .collect()
    }

    /// Names at the given positions, sorted by position.
    pub fn select(&self, idx: &[usize]) -> Vec<String> {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.names[i].clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

impl<'a> IntoIterator for &'a Labels {
    type Item = &'a String;
    type IntoIter = std::slice::Iter<'a, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.names.iter()
    }
}

/// Sorted, deduplicated positions.
pub(crate) fn normalize(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Symmetric difference of two position sets, sorted.
pub fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let a = normalize(a);
    let b = normalize(b);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
