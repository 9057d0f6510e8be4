use serde::Serialize;

use crate::polyring::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    True,
    False,
    Undetermined,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::True => "TRUE",
            Status::False => "FALSE",
            Status::Undetermined => "UNDETERMINED",
        }
    }
}

/// Evidence attached to a definitive verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `element ∉ n^[q]` at level `e`; `element` is `multiplier * alpha`
    /// with `alpha` in the Frobenius colon ideal of that level.
    Witness {
        e: u32,
        q: u64,
        alpha: Polynomial,
        multiplier: Polynomial,
        element: Polynomial,
    },
    /// All `generators` of the tested ideal (after the multiplier) lie in n^[q].
    Containment { e: u32, q: u64, generators: usize },
    /// Failure of F-purity, which rules out every stronger splitting property.
    NotFPure { generators: usize },
    /// I + (c x c Jacobian minors) is the unit ideal.
    Smooth { codim: usize, minors: usize },
    /// I + (c x c Jacobian minors) is proper; `singular_locus` is its reduced basis.
    Singular {
        codim: usize,
        singular_locus: Vec<Polynomial>,
        at_origin: bool,
    },
}

/// One level of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub e: u32,
    pub q: u64,
    /// True when every tested element lay in n^[q].
    pub contained: bool,
    pub generators: usize,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub log: Vec<SearchRecord>,
}

impl Verdict {
    pub fn is_true(&self) -> bool {
        self.status == Status::True
    }

    pub fn is_false(&self) -> bool {
        self.status == Status::False
    }

    pub fn witness_level(&self) -> Option<u32> {
        match &self.certificate {
            Some(Certificate::Witness { e, .. }) => Some(*e),
            _ => None,
        }
    }
}
