use std::fmt;
use std::sync::Arc;

use super::TreeOracle;
use crate::cantor::Word;

/// A tree known only through a membership oracle.
///
/// The oracle must be pure and downward closed; nothing here checks that.
#[derive(Clone)]
pub struct LazyTree {
    label: String,
    oracle: Arc<dyn Fn(&Word) -> bool + Send + Sync>,
}

impl LazyTree {
    pub fn new(label: impl Into<String>, oracle: impl Fn(&Word) -> bool + Send + Sync + 'static) -> Self {
        LazyTree { label: label.into(), oracle: Arc::new(oracle) }
    }

    /// A lazy view of any tree.
    pub fn of<T: TreeOracle + Send + Sync + 'static>(label: impl Into<String>, tree: T) -> Self {
        Self::new(label, move |s| tree.contains(s))
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl TreeOracle for LazyTree {
    fn contains(&self, s: &Word) -> bool {
        (self.oracle)(s)
    }
}

impl fmt::Debug for LazyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyTree({})", self.label)
    }
}
