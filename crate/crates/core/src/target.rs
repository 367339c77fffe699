//! Target set of a some-or-none model.

use crate::error::{Result, SnlError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The set of failure types targeted by a g-or-none intervention.
///
/// Indices are 1-based over the failure types (1..=J), matching the CSV
/// columns `cat1..catJ`. Any strict non-empty subset is accepted; results
/// are always reported in the original category order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpec {
    targets: BTreeSet<usize>,
    num_types: usize,
}

impl TargetSpec {
    pub fn new(targets: impl IntoIterator<Item = usize>, num_types: usize) -> Result<Self> {
        let targets: BTreeSet<usize> = targets.into_iter().collect();
        if targets.is_empty() {
            return Err(SnlError::InvalidTarget("target set is empty".into()));
        }
        if let Some(&bad) = targets.iter().find(|&&t| t == 0 || t > num_types) {
            return Err(SnlError::InvalidTarget(format!(
                "index {bad} outside 1..={num_types}"
            )));
        }
        if targets.len() >= num_types {
            return Err(SnlError::InvalidTarget(
                "g-or-none requires a strict subset of the failure types (g < J)".into(),
            ));
        }
        Ok(TargetSpec { targets, num_types })
    }

    /// One-or-none model targeting a single type.
    pub fn single(target: usize, num_types: usize) -> Result<Self> {
        Self::new([target], num_types)
    }

    /// Number of targeted types g.
    pub fn g(&self) -> usize {
        self.targets.len()
    }

    /// Total number of failure types J.
    pub fn num_types(&self) -> usize {
        self.num_types
    }

    /// Is 1-based failure type `j` targeted?
    pub fn is_targeted(&self, j: usize) -> bool {
        self.targets.contains(&j)
    }

    /// Targeted indices in ascending order (1-based).
    pub fn targeted(&self) -> impl Iterator<Item = usize> + '_ {
        self.targets.iter().copied()
    }

    /// Non-targeted indices in ascending order (1-based).
    pub fn non_targeted(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.num_types).filter(move |j| !self.targets.contains(j))
    }

    /// Sum of `values` (0-based over failure types) on the targeted set.
    pub fn targeted_sum<S: Copy + std::iter::Sum>(&self, values: &[S]) -> S {
        self.targets.iter().map(|&j| values[j - 1]).sum()
    }
}
