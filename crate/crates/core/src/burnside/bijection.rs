use serde::{Deserialize, Serialize};

use super::Correspondence;
use crate::error::BurnsideError;

/// An equivariant bijection `from.arrows -> to.arrows` over the identity of
/// source and target. `mapping[i]` is the position in `to` of the image of
/// arrow `i` of `from`; matching labels is what equivariance and commuting with
/// `s` and `t` amount to in the orbit presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrewiseBijection {
    from: Correspondence,
    to: Correspondence,
    mapping: Vec<usize>,
}

impl FibrewiseBijection {
    pub fn new(from: Correspondence, to: Correspondence, mapping: Vec<usize>) -> Result<Self, BurnsideError> {
        check_mapping(&from, &to, &mapping)?;
        Ok(Self { from, to, mapping })
    }

    pub fn identity(c: &Correspondence) -> Self {
        Self { from: c.clone(), to: c.clone(), mapping: (0..c.len()).collect() }
    }

    /// Maps each arrow of `from` to the first unused equal arrow of `to`.
    pub fn matching(from: &Correspondence, to: &Correspondence) -> Result<Self, BurnsideError> {
        if from.source() != to.source() || from.target() != to.target() {
            return Err(BurnsideError::MismatchedBoundary);
        }
        let mut used = vec![false; to.len()];
        let mut mapping = Vec::with_capacity(from.len());
        for (i, a) in from.arrows().iter().enumerate() {
            let j = (0..to.len())
                .find(|&j| !used[j] && to.arrows()[j] == *a)
                .ok_or_else(|| BurnsideError::NotABijection(format!("arrow {i} has no partner")))?;
            used[j] = true;
            mapping.push(j);
        }
        if mapping.len() != to.len() {
            return Err(BurnsideError::NotABijection("arrow counts differ".into()));
        }
        Ok(Self { from: from.clone(), to: to.clone(), mapping })
    }

    pub fn from(&self) -> &Correspondence {
        &self.from
    }

    pub fn to(&self) -> &Correspondence {
        &self.to
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        Self { from: self.to.clone(), to: self.from.clone(), mapping: inv }
    }

    /// Vertical composite: first `self`, then `next`.
    pub fn then(&self, next: &Self) -> Result<Self, BurnsideError> {
        if self.to.arrows() != next.from.arrows() {
            return Err(BurnsideError::MismatchedBoundary);
        }
        let mapping = self.mapping.iter().map(|&j| next.mapping[j]).collect();
        Ok(Self { from: self.from.clone(), to: next.to.clone(), mapping })
    }
}

/// Checks that `mapping` is a label-preserving bijection between the arrow lists.
pub(crate) fn check_mapping(
    from: &Correspondence,
    to: &Correspondence,
    mapping: &[usize],
) -> Result<(), BurnsideError> {
    if from.source() != to.source() || from.target() != to.target() {
        return Err(BurnsideError::MismatchedBoundary);
    }
    if mapping.len() != from.len() || from.len() != to.len() {
        return Err(BurnsideError::NotABijection(format!(
            "{} arrows mapped onto {} with {} images",
            from.len(),
            to.len(),
            mapping.len()
        )));
    }
    let mut hit = vec![false; to.len()];
    for (i, &j) in mapping.iter().enumerate() {
        if j >= to.len() || hit[j] {
            return Err(BurnsideError::NotABijection(format!("image {j} of arrow {i} is invalid or repeated")));
        }
        hit[j] = true;
        if from.arrows()[i] != to.arrows()[j] {
            return Err(BurnsideError::NotABijection(format!("arrow {i} and its image {j} carry different labels")));
        }
    }
    Ok(())
}
