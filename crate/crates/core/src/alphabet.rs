//! Action alphabets partitioned into covariant, contravariant and bivariant
//! classes.

use thiserror::Error;

/// Matching obligation attached to an action.
///
/// Covariant actions must be matched left-to-right (whatever the left state
/// offers, the right state must offer too), contravariant actions
/// right-to-left, and bivariant actions in both directions at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
    Bivariant,
}

/// Index of an action in its [`Alphabet`]; ids follow lexicographic name
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("duplicate action name `{0}`")]
    DuplicateAction(String),
    #[error("action names must be nonempty")]
    EmptyActionName,
}

/// A finite action set with a total variance assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    variances: Vec<Variance>,
}

impl Alphabet {
    /// Builds an alphabet from `(name, variance)` pairs. Input order is
    /// irrelevant: actions are stored in lexicographic order.
    pub fn new<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, Variance)>,
    ) -> Result<Self, AlphabetError> {
        let mut entries: Vec<(String, Variance)> =
            entries.into_iter().map(|(n, v)| (n.into(), v)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut names = Vec::with_capacity(entries.len());
        let mut variances = Vec::with_capacity(entries.len());
        for (name, variance) in entries {
            if name.is_empty() {
                return Err(AlphabetError::EmptyActionName);
            }
            if names.last() == Some(&name) {
                return Err(AlphabetError::DuplicateAction(name));
            }
            names.push(name);
            variances.push(variance);
        }
        Ok(Alphabet { names, variances })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn actions(&self) -> impl Iterator<Item = ActionId> {
        (0..self.names.len() as u32).map(ActionId)
    }

    pub fn action(&self, name: &str) -> Option<ActionId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| ActionId(i as u32))
    }

    pub fn name(&self, action: ActionId) -> &str {
        &self.names[action.0 as usize]
    }

    pub fn variance(&self, action: ActionId) -> Variance {
        self.variances[action.0 as usize]
    }

    /// Whether moves on `action` carry the left-to-right obligation.
    pub fn requires_covariant(&self, action: ActionId) -> bool {
        matches!(
            self.variance(action),
            Variance::Covariant | Variance::Bivariant
        )
    }

    /// Whether moves on `action` carry the right-to-left obligation.
    pub fn requires_contravariant(&self, action: ActionId) -> bool {
        matches!(
            self.variance(action),
            Variance::Contravariant | Variance::Bivariant
        )
    }

    /// Same action set with every variance replaced by `variance`.
    pub fn uniform(&self, variance: Variance) -> Alphabet {
        Alphabet {
            names: self.names.clone(),
            variances: vec![variance; self.variances.len()],
        }
    }

    /// Action names in canonical order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }
}
