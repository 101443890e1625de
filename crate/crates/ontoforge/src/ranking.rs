//! Ontology ranking: four per-graph measures combined into a weighted score.
//!
//! * class match (cmm) — query coverage by exact and partial label matches,
//! * density (dem) — attached terms plus siblings, relative to the densest
//!   concept,
//! * semantic similarity (ssm) — mean 1 / (1 + shortest path) over matched
//!   concept pairs,
//! * betweenness (bem) — mean normalized betweenness centrality of matched
//!   nodes.
//!
//! The default score is the plain weighted sum
//! 0.3*cmm + 0.2*dem + 0.4*ssm + 0.1*bem; an optional mode first divides
//! each measure by its cross-ontology maximum.

use std::collections::VecDeque;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ontology::{NodeId, OntologyGraph};

const EXACT_SCORE: f64 = 0.6;
const PARTIAL_SCORE: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureVector {
    pub cmm: f64,
    pub dem: f64,
    pub ssm: f64,
    pub bem: f64,
}

/// Per-measure weights applied in the rank score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    pub cmm: f64,
    pub dem: f64,
    pub ssm: f64,
    pub bem: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            cmm: 0.3,
            dem: 0.2,
            ssm: 0.4,
            bem: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub name: String,
    pub measures: MeasureVector,
    pub score: f64,
    /// 1 is best; ties are broken by name.
    pub rank: usize,
}

/// Coverage of the query terms by graph labels. A term matching a concept
/// or term label exactly scores 0.6, a substring (partial) match scores
/// 0.4; the sum is normalized by the all-exact total.
pub fn cmm(graph: &OntologyGraph, query_terms: &[String]) -> f64 {
    if query_terms.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for term in query_terms {
        let mut best = 0.0f64;
        for label in graph
            .concepts()
            .iter()
            .map(|c| c.label.as_str())
            .chain(graph.terms().iter().map(String::as_str))
        {
            if label == term {
                best = EXACT_SCORE;
                break;
            }
            if label.contains(term.as_str()) || term.contains(label) {
                best = best.max(PARTIAL_SCORE);
            }
        }
        total += best;
    }
    (total / (EXACT_SCORE * query_terms.len() as f64)).clamp(0.0, 1.0)
}

/// Knowledge density of the matched concepts: attached terms plus sibling
/// concepts, scaled by the densest concept in the graph.
pub fn dem(graph: &OntologyGraph, matched: &[NodeId]) -> f64 {
    let concepts = matched_concepts(graph, matched);
    if concepts.is_empty() {
        return 0.0;
    }
    let siblings = graph.concepts().len().saturating_sub(1);
    let density = |id: usize| {
        let terms = graph.edges().iter().filter(|e| e.concept == id).count();
        (terms + siblings) as f64
    };
    let max_density = graph
        .concepts()
        .iter()
        .map(|c| density(c.id))
        .fold(0.0f64, f64::max);
    if max_density == 0.0 {
        return 0.0;
    }
    concepts.iter().map(|&id| density(id) / max_density).sum::<f64>() / concepts.len() as f64
}

/// Mean taxonomic closeness 1 / (1 + distance) over unordered pairs of
/// matched concepts; a single matched concept scores 1.0 and disconnected
/// pairs contribute 0.
pub fn ssm(graph: &OntologyGraph, matched: &[NodeId]) -> f64 {
    let concepts = matched_concepts(graph, matched);
    if concepts.is_empty() {
        return 0.0;
    }
    if concepts.len() == 1 {
        return 1.0;
    }
    let mut total = 0.0;
    let mut pairs = 0usize;
    for (i, &a) in concepts.iter().enumerate() {
        for &b in &concepts[i + 1..] {
            let na = graph.concept_node(a).expect("matched concept exists");
            let nb = graph.concept_node(b).expect("matched concept exists");
            if let Some(dist) = graph.distance(na, nb) {
                total += 1.0 / (1.0 + dist as f64);
            }
            pairs += 1;
        }
    }
    total / pairs as f64
}

/// Mean normalized betweenness centrality of the matched nodes; graphs with
/// fewer than three nodes score 0.
pub fn bem(graph: &OntologyGraph, matched: &[NodeId]) -> f64 {
    let mut unique: Vec<NodeId> = matched.to_vec();
    unique.sort();
    unique.dedup();
    if unique.is_empty() {
        return 0.0;
    }
    let n = graph.node_count();
    if n < 3 {
        return 0.0;
    }
    let centrality = betweenness(&graph.adjacency());
    let norm = (n - 1) as f64 * (n - 2) as f64 / 2.0;
    unique
        .iter()
        .map(|node| centrality[node.0] / norm)
        .sum::<f64>()
        / unique.len() as f64
}

pub fn measure(graph: &OntologyGraph, query_terms: &[String], matched: &[NodeId]) -> MeasureVector {
    MeasureVector {
        cmm: cmm(graph, query_terms),
        dem: dem(graph, matched),
        ssm: ssm(graph, matched),
        bem: bem(graph, matched),
    }
}

/// Scores and ranks measure vectors. With `normalize` off the score is the
/// plain weighted sum; with it on, each measure is first divided by its
/// maximum across the input.
pub fn rank_ontologies(
    rows: &[(String, MeasureVector)],
    weights: &Weights,
    normalize: bool,
) -> Result<Vec<RankEntry>> {
    let weight_values = [weights.cmm, weights.dem, weights.ssm, weights.bem];
    if weight_values.iter().any(|w| *w < 0.0 || !w.is_finite()) {
        return Err(Error::BadWeights);
    }
    let maxima = MeasureVector {
        cmm: rows.iter().map(|(_, m)| m.cmm).fold(0.0, f64::max),
        dem: rows.iter().map(|(_, m)| m.dem).fold(0.0, f64::max),
        ssm: rows.iter().map(|(_, m)| m.ssm).fold(0.0, f64::max),
        bem: rows.iter().map(|(_, m)| m.bem).fold(0.0, f64::max),
    };
    let over = |value: f64, max: f64| {
        if !normalize {
            value
        } else if max > 0.0 {
            value / max
        } else {
            0.0
        }
    };
    let mut entries: Vec<RankEntry> = rows
        .iter()
        .map(|(name, m)| {
            let score = weights.cmm * over(m.cmm, maxima.cmm)
                + weights.dem * over(m.dem, maxima.dem)
                + weights.ssm * over(m.ssm, maxima.ssm)
                + weights.bem * over(m.bem, maxima.bem);
            RankEntry {
                name: name.clone(),
                measures: *m,
                score,
                rank: 0,
            }
        })
        .collect();
    entries.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap()
            .then_with(|| a.name.cmp(&b.name))
    });
    for (i, entry) in entries.iter_mut().enumerate() {
        entry.rank = i + 1;
    }
    Ok(entries)
}

/// Reads a `name,cmm,dem,ssm,bem` CSV of measure fixtures.
pub fn load_measures_csv(path: &Path) -> Result<Vec<(String, MeasureVector)>> {
    #[derive(Deserialize)]
    struct Row {
        name: String,
        cmm: f64,
        dem: f64,
        ssm: f64,
        bem: f64,
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(csv_error)?;
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        let row: Row = record.map_err(csv_error)?;
        for (field, value) in [
            ("cmm", row.cmm),
            ("dem", row.dem),
            ("ssm", row.ssm),
            ("bem", row.bem),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::parse(
                    0,
                    0,
                    format!("{field} of {:?} must lie in [0, 1], got {value}", row.name),
                ));
            }
        }
        rows.push((
            row.name,
            MeasureVector {
                cmm: row.cmm,
                dem: row.dem,
                ssm: row.ssm,
                bem: row.bem,
            },
        ));
    }
    Ok(rows)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or_default();
    Error::parse(line, 0, e.to_string())
}

fn matched_concepts(graph: &OntologyGraph, matched: &[NodeId]) -> Vec<usize> {
    let mut ids: Vec<usize> = graph
        .concepts()
        .iter()
        .filter_map(|c| {
            let node = graph.concept_node(c.id)?;
            matched.contains(&node).then_some(c.id)
        })
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// Brandes betweenness centrality for an undirected, unweighted graph.
/// Each value counts unordered source-target pairs once.
fn betweenness(adj: &[Vec<usize>]) -> Vec<f64> {
    let n = adj.len();
    let mut centrality = vec![0.0; n];
    for source in 0..n {
        let mut stack = Vec::with_capacity(n);
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![usize::MAX; n];
        sigma[source] = 1.0;
        dist[source] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0f64; n];
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != source {
                centrality[w] += delta[w];
            }
        }
    }
    // Undirected traversal counts every pair from both endpoints.
    centrality.iter_mut().for_each(|c| *c /= 2.0);
    centrality
}
