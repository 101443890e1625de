//! Latent concept extraction from the SVD factors.
//!
//! Concept j collects every term whose loading U[i,j] * S[j] clears the
//! membership threshold; the concept is named by hyphenating its strongest
//! terms.

use crate::corpus::Vocabulary;
use crate::error::{Error, Result};
use crate::svd::SvdFactors;

/// Default membership threshold on |loading|.
pub const DEFAULT_TAU: f64 = 0.05;

/// One latent concept: member terms sorted by |loading| descending (ties
/// broken lexicographically) and the singular value it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Concept {
    pub id: usize,
    pub name: String,
    pub members: Vec<(String, f64)>,
    pub singular_value: f64,
    /// Set when no term cleared the threshold; an empty concept is kept so
    /// the requested concept count stays predictable.
    pub empty_warning: bool,
}

/// Extracts `k` concepts from the factors; a term belongs to concept j when
/// |U[i,j] * S[j]| >= tau.
pub fn extract_concepts(
    factors: &SvdFactors,
    vocab: &Vocabulary,
    k: usize,
    tau: f64,
) -> Result<Vec<Concept>> {
    let r = factors.rank();
    if k == 0 || k > r {
        return Err(Error::BadRank { k, r });
    }
    if tau <= 0.0 || tau.is_nan() {
        return Err(Error::BadHyperparam(format!(
            "membership threshold must be positive, got {tau}"
        )));
    }
    if factors.u.rows() != vocab.len() {
        return Err(Error::Shape(format!(
            "factor rows {} do not match vocabulary size {}",
            factors.u.rows(),
            vocab.len()
        )));
    }

    let mut concepts = Vec::with_capacity(k);
    for j in 0..k {
        let s = factors.s[j];
        let mut members: Vec<(String, f64)> = (0..vocab.len())
            .filter_map(|i| {
                let loading = factors.u.get(i, j) * s;
                (loading.abs() >= tau).then(|| (vocab.term(i).to_owned(), loading))
            })
            .collect();
        members.sort_by(|(ta, la), (tb, lb)| {
            lb.abs()
                .partial_cmp(&la.abs())
                .unwrap()
                .then_with(|| ta.cmp(tb))
        });
        let mut concept = Concept {
            id: j,
            name: String::new(),
            empty_warning: members.is_empty(),
            members,
            singular_value: s,
        };
        concept.name = name_concept(&concept);
        concepts.push(concept);
    }
    Ok(concepts)
}

/// Hyphen-joins up to five member terms, strongest first, behind a leading
/// hyphen; a memberless concept is named "-unnamed".
pub fn name_concept(concept: &Concept) -> String {
    if concept.members.is_empty() {
        return "-unnamed".to_owned();
    }
    let mut name = String::new();
    for (term, _) in concept.members.iter().take(5) {
        name.push('-');
        name.push_str(term);
    }
    name
}
