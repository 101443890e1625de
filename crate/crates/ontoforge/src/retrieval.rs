//! Query answering over a learned ontology: synonym expansion with fuzzy
//! memberships, topic/word detection, an edge-count path similarity, and
//! the fuzzy answer score.
//!
//! A synonym of rank r carries membership mu = 0.5 + 0.01 * r; a direct
//! match carries 1.0. No other membership values ever appear.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{tokenize, StopwordSet};
use crate::error::{Error, Result};
use crate::ontology::{NodeId, OntologyGraph};

pub const DEFAULT_X: f64 = 0.2;
pub const DEFAULT_Y: f64 = 0.6;

/// Membership degree of a synonym at 1-based rank `rank`.
pub fn membership(rank: usize) -> f64 {
    0.5 + 0.01 * rank as f64
}

/// Ranked synonyms per term, at most nine per entry.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    entries: HashMap<String, Vec<String>>,
}

impl SynonymLexicon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `term<TAB>synonym<TAB>rank` lines; `#` lines are comments.
    /// Ranks per term must be contiguous from 1 and at most 9.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ranked: HashMap<String, Vec<(usize, String)>> = HashMap::new();
        for (line_no, line) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::parse(
                    line_no,
                    1,
                    format!("expected 3 tab-separated fields, found {}", fields.len()),
                ));
            }
            let rank: usize = fields[2].trim().parse().map_err(|_| {
                Error::parse(line_no, 3, format!("rank {:?} is not an integer", fields[2]))
            })?;
            if !(1..=9).contains(&rank) {
                return Err(Error::parse(
                    line_no,
                    3,
                    format!("rank {rank} outside 1..=9"),
                ));
            }
            ranked
                .entry(fields[0].trim().to_lowercase())
                .or_default()
                .push((rank, fields[1].trim().to_lowercase()));
        }
        let mut entries = HashMap::new();
        for (term, mut synonyms) in ranked {
            synonyms.sort_by_key(|&(rank, _)| rank);
            for (expected, &(rank, _)) in synonyms.iter().enumerate() {
                if rank != expected + 1 {
                    return Err(Error::parse(
                        0,
                        0,
                        format!("ranks of {term:?} are not contiguous from 1"),
                    ));
                }
            }
            entries.insert(term, synonyms.into_iter().map(|(_, s)| s).collect());
        }
        Ok(SynonymLexicon { entries })
    }

    pub fn synonyms(&self, term: &str) -> &[String] {
        self.entries.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The term itself (membership 1.0) followed by its lexicon synonyms in
/// rank order.
pub fn expand_synonyms(term: &str, lexicon: &SynonymLexicon) -> Vec<(String, f64)> {
    let mut out = vec![(term.to_owned(), 1.0)];
    for (i, synonym) in lexicon.synonyms(term).iter().enumerate() {
        out.push((synonym.clone(), membership(i + 1)));
    }
    out
}

/// A matched term node: which graph term answered the query token, the
/// membership of the matching expansion candidate, and the owning concepts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermHit {
    pub term: String,
    pub mu: f64,
    pub concepts: Vec<ConceptHit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptHit {
    pub concept_id: usize,
    pub label: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermMatch {
    pub query_term: String,
    /// `None` when no expansion candidate exists in the graph.
    pub hit: Option<TermHit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    pub terms: Vec<TermMatch>,
    /// Mean over retained query tokens of (1 + mu) / 2 for matches and 0
    /// for misses.
    pub score: f64,
}

/// Detects the topics owning each retained query token. Per token, the
/// first expansion candidate present as a term node wins.
pub fn detect_topics(
    query: &str,
    graph: &OntologyGraph,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordSet,
) -> Result<QueryResult> {
    let tokens: Vec<String> = tokenize(query)
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect();
    if tokens.is_empty() {
        return Err(Error::QueryEmpty);
    }

    let mut matches = Vec::with_capacity(tokens.len());
    let mut score_sum = 0.0;
    for token in tokens {
        let hit = expand_synonyms(&token, lexicon)
            .into_iter()
            .find(|(candidate, _)| graph.has_term(candidate))
            .map(|(candidate, mu)| {
                let mut concepts: Vec<ConceptHit> = graph
                    .term_owners(&candidate)
                    .into_iter()
                    .map(|(concept_id, weight)| ConceptHit {
                        concept_id,
                        label: graph.concept_label(concept_id).unwrap_or("").to_owned(),
                        weight,
                    })
                    .collect();
                concepts.sort_by(|a, b| {
                    b.weight
                        .partial_cmp(&a.weight)
                        .unwrap()
                        .then_with(|| a.concept_id.cmp(&b.concept_id))
                });
                TermHit {
                    term: candidate,
                    mu,
                    concepts,
                }
            });
        if let Some(hit) = &hit {
            score_sum += fuzzy_score(1.0, hit.mu, 2)?;
        }
        matches.push(TermMatch {
            query_term: token,
            hit,
        });
    }
    let score = score_sum / matches.len() as f64;
    Ok(QueryResult {
        terms: matches,
        score,
    })
}

/// Edge-count similarity for tree depth `d` and path length `s`:
/// (e^(x*d) - 1) / (e^(x*d) + e^(y*s) - 2). At s = 0 the numerator equals
/// the denominator, so the value is defined as 1.0 (covering the d = 0
/// case, where the ratio degenerates to 0/0).
pub fn edge_count_similarity(d: usize, s: usize, x: f64, y: f64) -> Result<f64> {
    if x <= 0.0 || y <= 0.0 || x.is_nan() || y.is_nan() {
        return Err(Error::BadHyperparam(format!(
            "smoothing factors must be positive, got x={x}, y={y}"
        )));
    }
    if s == 0 {
        return Ok(1.0);
    }
    let exd = (x * d as f64).exp();
    let eys = (y * s as f64).exp();
    Ok((exd - 1.0) / (exd + eys - 2.0))
}

/// Edge-count similarity between two graph nodes, with `d` the eccentricity
/// of the root and `s` the unweighted shortest-path length between the
/// nodes. Identical nodes score 1.0.
pub fn path_similarity(
    graph: &OntologyGraph,
    t1: NodeId,
    t2: NodeId,
    x: f64,
    y: f64,
) -> Result<f64> {
    if t1 == t2 {
        // Still validate the smoothing factors before short-circuiting.
        return edge_count_similarity(0, 0, x, y);
    }
    let s = graph.distance(t1, t2).ok_or(Error::NoPath)?;
    edge_count_similarity(graph.depth(), s, x, y)
}

/// Fuzzy answer score (A + A_n) / N for document membership A and matched
/// synonym membership A_n.
pub fn fuzzy_score(a: f64, a_n: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) || !a.is_finite() {
        return Err(Error::BadMembership(format!("document membership {a}")));
    }
    if !(0.0..=1.0).contains(&a_n) || !a_n.is_finite() {
        return Err(Error::BadMembership(format!("synonym membership {a_n}")));
    }
    if n < 1 {
        return Err(Error::BadMembership("divisor must be at least 1".into()));
    }
    Ok((a + a_n) / n as f64)
}
