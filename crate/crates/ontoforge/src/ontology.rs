//! The terminology ontology graph.
//!
//! A single root node links to every concept (or topic) node via `hasTopic`
//! edges; concepts link to term nodes via weighted `hasWord` edges. The
//! graph is strictly bipartite between the concept and term layers and
//! immutable after construction. Graphs persist to a versioned JSON model
//! file and export to a small Turtle vocabulary.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{self, Vocabulary};
use crate::error::{Error, Result};
use crate::lda::{self, LdaModel};
use crate::lsi_concepts::{self, Concept};
use crate::svd;
use crate::weights;

pub const SCHEMA_PREFIX: &str = "http://ontoforge.local/schema#";
const MODEL_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Lsi,
    Lda,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Lsi => write!(f, "lsi"),
            Backend::Lda => write!(f, "lda"),
        }
    }
}

/// Hyperparameters of a build, stored in provenance so a rebuild can repeat
/// the run on a changed corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
pub enum LearnParams {
    Lsi {
        /// Concept count; `None` extracts one concept per document.
        concepts: Option<usize>,
        /// Membership threshold on |loading|.
        tau: f64,
    },
    Lda {
        topics: usize,
        /// Symmetric Dirichlet prior; `None` uses 50 / topics.
        alpha: Option<f64>,
        seed: u64,
        shards: usize,
        max_iters: usize,
        tol: f64,
        /// Words attached per topic.
        n_words: usize,
        /// Minimum topic-word probability for an edge.
        min_prob: f64,
    },
}

impl LearnParams {
    pub fn lsi_defaults() -> Self {
        LearnParams::Lsi {
            concepts: None,
            tau: lsi_concepts::DEFAULT_TAU,
        }
    }

    pub fn lda_defaults(topics: usize, seed: u64) -> Self {
        LearnParams::Lda {
            topics,
            alpha: None,
            seed,
            shards: 1,
            max_iters: lda::DEFAULT_MAX_ITERS,
            tol: lda::DEFAULT_TOL,
            n_words: 20,
            min_prob: 0.001,
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            LearnParams::Lsi { .. } => Backend::Lsi,
            LearnParams::Lda { .. } => Backend::Lda,
        }
    }
}

/// Where a graph came from: digest of the corpus it was built from, corpus
/// shape, hyperparameters, and build time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub corpus_digest: String,
    pub n_documents: usize,
    pub n_vocabulary: usize,
    pub built_at: String,
    pub params: LearnParams,
}

impl Provenance {
    fn unspecified(params: LearnParams) -> Self {
        Provenance {
            corpus_digest: String::new(),
            n_documents: 0,
            n_vocabulary: 0,
            built_at: String::new(),
            params,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptNode {
    pub id: usize,
    pub label: String,
}

/// Weighted concept-to-term edge; indices point into the graph's concept
/// and term lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordEdge {
    pub concept: usize,
    pub term: usize,
    pub weight: f64,
}

/// Handle into the unified node indexing used by the graph algorithms:
/// node 0 is the root, nodes 1..=C are concepts, the rest are terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) usize);

#[derive(Debug, Clone, PartialEq)]
pub struct OntologyGraph {
    backend: Backend,
    provenance: Provenance,
    concepts: Vec<ConceptNode>,
    terms: Vec<String>,
    term_lookup: HashMap<String, usize>,
    edges: Vec<WordEdge>,
}

impl OntologyGraph {
    pub(crate) fn new(
        backend: Backend,
        concepts: Vec<ConceptNode>,
        terms: Vec<String>,
        edges: Vec<WordEdge>,
        provenance: Provenance,
    ) -> Self {
        let term_lookup = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        OntologyGraph {
            backend,
            provenance,
            concepts,
            terms,
            term_lookup,
            edges,
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn concepts(&self) -> &[ConceptNode] {
        &self.concepts
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn edges(&self) -> &[WordEdge] {
        &self.edges
    }

    pub fn concept_label(&self, id: usize) -> Option<&str> {
        self.concepts.get(id).map(|c| c.label.as_str())
    }

    /// Term indices and weights attached to a concept, in stored edge order.
    pub fn concept_words(&self, concept_id: usize) -> impl Iterator<Item = (&str, f64)> {
        self.edges
            .iter()
            .filter(move |e| e.concept == concept_id)
            .map(|e| (self.terms[e.term].as_str(), e.weight))
    }

    /// Concept ids owning a term, with edge weights.
    pub fn term_owners(&self, term: &str) -> Vec<(usize, f64)> {
        match self.term_lookup.get(term) {
            None => Vec::new(),
            Some(&idx) => self
                .edges
                .iter()
                .filter(|e| e.term == idx)
                .map(|e| (e.concept, e.weight))
                .collect(),
        }
    }

    pub fn has_term(&self, term: &str) -> bool {
        self.term_lookup.contains_key(term)
    }

    // ----- unified node indexing -------------------------------------

    pub fn node_count(&self) -> usize {
        1 + self.concepts.len() + self.terms.len()
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn concept_node(&self, id: usize) -> Option<NodeId> {
        (id < self.concepts.len()).then_some(NodeId(1 + id))
    }

    pub fn term_node(&self, term: &str) -> Option<NodeId> {
        self.term_lookup
            .get(term)
            .map(|&i| NodeId(1 + self.concepts.len() + i))
    }

    pub fn node_label(&self, node: NodeId) -> &str {
        let c = self.concepts.len();
        match node.0 {
            0 => "root",
            i if i <= c => &self.concepts[i - 1].label,
            i => &self.terms[i - 1 - c],
        }
    }

    /// Undirected adjacency over the unified indexing.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let c = self.concepts.len();
        let mut adj = vec![Vec::new(); self.node_count()];
        for concept in 0..c {
            adj[0].push(1 + concept);
            adj[1 + concept].push(0);
        }
        for edge in &self.edges {
            let concept_node = 1 + edge.concept;
            let term_node = 1 + c + edge.term;
            adj[concept_node].push(term_node);
            adj[term_node].push(concept_node);
        }
        adj
    }

    /// Unweighted shortest-path length between two nodes.
    pub fn distance(&self, a: NodeId, b: NodeId) -> Option<usize> {
        bfs_distances(&self.adjacency(), a.0)[b.0]
    }

    /// Eccentricity of the root: the depth of the tree.
    pub fn depth(&self) -> usize {
        bfs_distances(&self.adjacency(), 0)
            .iter()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Checks the structural invariants: bipartite concept/term layers (true
    /// by representation, re-checked over the edge lists), every node
    /// reachable from the root, and finite weights.
    pub fn validate(&self) -> Result<()> {
        if self.concepts.is_empty() {
            return Err(Error::EmptyOntology);
        }
        for (i, c) in self.concepts.iter().enumerate() {
            if c.id != i {
                return Err(Error::Shape(format!(
                    "concept ids must be contiguous from 0; found {} at position {i}",
                    c.id
                )));
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            if e.concept >= self.concepts.len() || e.term >= self.terms.len() {
                return Err(Error::Shape("edge endpoint out of range".into()));
            }
            if !e.weight.is_finite() {
                return Err(Error::Numeric(format!(
                    "weight of edge {} -> {}",
                    self.concepts[e.concept].label, self.terms[e.term]
                )));
            }
            if !seen.insert((e.concept, e.term)) {
                return Err(Error::Shape(format!(
                    "duplicate edge {} -> {}",
                    self.concepts[e.concept].label, self.terms[e.term]
                )));
            }
        }
        let distances = bfs_distances(&self.adjacency(), 0);
        if distances.iter().any(Option::is_none) {
            return Err(Error::Shape("node unreachable from the root".into()));
        }
        Ok(())
    }

    // ----- construction ------------------------------------------------

    /// Builds the graph from extracted concepts; term nodes are shared
    /// across concepts and edge weights are |loading|.
    pub fn build_from_concepts(concepts: &[Concept]) -> Result<Self> {
        if concepts.iter().all(|c| c.members.is_empty()) {
            return Err(Error::EmptyOntology);
        }
        let mut terms: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut nodes = Vec::with_capacity(concepts.len());
        for (position, concept) in concepts.iter().enumerate() {
            nodes.push(ConceptNode {
                id: position,
                label: concept.name.clone(),
            });
            for (term, loading) in &concept.members {
                let term_idx = *lookup.entry(term.clone()).or_insert_with(|| {
                    terms.push(term.clone());
                    terms.len() - 1
                });
                edges.push(WordEdge {
                    concept: position,
                    term: term_idx,
                    weight: loading.abs(),
                });
            }
        }
        Ok(OntologyGraph::new(
            Backend::Lsi,
            nodes,
            terms,
            edges,
            Provenance::unspecified(LearnParams::lsi_defaults()),
        ))
    }

    /// Builds a `topic-k` node per topic with edges to its top words at or
    /// above `min_prob`.
    pub fn build_from_lda(
        model: &LdaModel,
        vocab: &Vocabulary,
        n_words: usize,
        min_prob: f64,
    ) -> Result<Self> {
        if model.iterations_run == 0 {
            return Err(Error::ModelUntrained);
        }
        if n_words < 1 {
            return Err(Error::BadHyperparam("n_words must be at least 1".into()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut nodes = Vec::with_capacity(model.k);
        for topic in 0..model.k {
            nodes.push(ConceptNode {
                id: topic,
                label: format!("topic-{topic}"),
            });
            for (term, prob) in lda::top_words(model, topic, n_words, vocab)? {
                if prob < min_prob {
                    continue;
                }
                let term_idx = *lookup.entry(term.clone()).or_insert_with(|| {
                    terms.push(term.clone());
                    terms.len() - 1
                });
                edges.push(WordEdge {
                    concept: topic,
                    term: term_idx,
                    weight: prob,
                });
            }
        }
        if edges.is_empty() {
            return Err(Error::EmptyOntology);
        }
        Ok(OntologyGraph::new(
            Backend::Lda,
            nodes,
            terms,
            edges,
            Provenance::unspecified(LearnParams::lda_defaults(model.k, model.seed)),
        ))
    }

    // ----- persistence ---------------------------------------------------

    /// Serializes to the versioned JSON model format.
    pub fn to_json(&self) -> String {
        let file = ModelFile::from_graph(self);
        serde_json::to_string_pretty(&file).expect("model serialization cannot fail")
    }

    pub fn save_json(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        // Check the version first so a format bump fails clearly.
        #[derive(Deserialize)]
        struct VersionProbe {
            version: u32,
        }
        let probe: VersionProbe = serde_json::from_str(text).map_err(json_error)?;
        if probe.version != MODEL_FILE_VERSION {
            return Err(Error::Version {
                found: probe.version,
                expected: MODEL_FILE_VERSION,
            });
        }
        let file: ModelFile = serde_json::from_str(text).map_err(json_error)?;
        let graph = file.into_graph()?;
        graph.validate()?;
        Ok(graph)
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Renders the Turtle export: concepts ascending by id, each with its
    /// type, label, and root link, followed by its word edges sorted by
    /// weight descending then term.
    pub fn to_turtle(&self) -> String {
        let mut identifiers: HashMap<usize, String> = HashMap::new();
        let mut used: HashSet<String> = HashSet::new();
        for (i, term) in self.terms.iter().enumerate() {
            let mut ident = sanitize_term(term);
            if !used.insert(ident.clone()) {
                let mut n = 2usize;
                loop {
                    let candidate = format!("{ident}_{n}");
                    if used.insert(candidate.clone()) {
                        ident = candidate;
                        break;
                    }
                    n += 1;
                }
            }
            identifiers.insert(i, ident);
        }

        let mut out = String::new();
        let _ = writeln!(out, "@prefix of: <{SCHEMA_PREFIX}> .");
        let mut labeled_terms: HashSet<usize> = HashSet::new();
        for concept in &self.concepts {
            let _ = writeln!(out, "of:c{} a of:Topic .", concept.id);
            let _ = writeln!(
                out,
                "of:c{} of:label \"{}\" .",
                concept.id,
                escape_label(&concept.label)
            );
            let _ = writeln!(out, "of:root of:hasTopic of:c{} .", concept.id);
            let mut words: Vec<&WordEdge> =
                self.edges.iter().filter(|e| e.concept == concept.id).collect();
            words.sort_by(|a, b| {
                b.weight
                    .partial_cmp(&a.weight)
                    .unwrap()
                    .then_with(|| self.terms[a.term].cmp(&self.terms[b.term]))
            });
            for edge in words {
                let ident = &identifiers[&edge.term];
                let _ = writeln!(out, "of:c{} of:hasWord of:t_{} .", concept.id, ident);
                if labeled_terms.insert(edge.term) {
                    let _ = writeln!(
                        out,
                        "of:t_{} of:label \"{}\" .",
                        ident,
                        escape_label(&self.terms[edge.term])
                    );
                }
                let _ = writeln!(
                    out,
                    "of:c{}_t_{} of:weight \"{:.6}\" .",
                    concept.id, ident, edge.weight
                );
            }
        }
        out
    }

    pub fn export_turtle(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_turtle()).map_err(|e| Error::io(path, e))
    }
}

fn bfs_distances(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[start] = Some(0);
    queue.push_back(start);
    while let Some(node) = queue.pop_front() {
        let d = dist[node].unwrap();
        for &next in &adj[node] {
            if dist[next].is_none() {
                dist[next] = Some(d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

fn sanitize_term(term: &str) -> String {
    let mut out: String = term
        .chars()
        .map(|c| match c {
            'a'..='z' | '0'..='9' | '_' => c,
            _ => '_',
        })
        .collect();
    if out.is_empty() {
        out.push('_');
    }
    out
}

fn escape_label(label: &str) -> String {
    label
        .replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

// ----- model file ---------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NodeRecord {
    Root,
    Concept { id: usize, label: String },
    Term { label: String },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum EdgeRecord {
    HasTopic {
        concept: usize,
    },
    HasWord {
        concept: usize,
        term: String,
        weight: f64,
    },
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    backend: Backend,
    provenance: Provenance,
    nodes: Vec<NodeRecord>,
    edges: Vec<EdgeRecord>,
}

impl ModelFile {
    fn from_graph(g: &OntologyGraph) -> Self {
        let mut nodes = vec![NodeRecord::Root];
        nodes.extend(g.concepts.iter().map(|c| NodeRecord::Concept {
            id: c.id,
            label: c.label.clone(),
        }));
        nodes.extend(g.terms.iter().map(|t| NodeRecord::Term { label: t.clone() }));
        let mut edges: Vec<EdgeRecord> = g
            .concepts
            .iter()
            .map(|c| EdgeRecord::HasTopic { concept: c.id })
            .collect();
        edges.extend(g.edges.iter().map(|e| EdgeRecord::HasWord {
            concept: e.concept,
            term: g.terms[e.term].clone(),
            weight: e.weight,
        }));
        ModelFile {
            version: MODEL_FILE_VERSION,
            backend: g.backend,
            provenance: g.provenance.clone(),
            nodes,
            edges,
        }
    }

    fn into_graph(self) -> Result<OntologyGraph> {
        let invalid = |msg: String| Error::parse(0, 0, msg);
        let mut concepts = Vec::new();
        let mut terms = Vec::new();
        let mut roots = 0usize;
        for node in self.nodes {
            match node {
                NodeRecord::Root => roots += 1,
                NodeRecord::Concept { id, label } => concepts.push(ConceptNode { id, label }),
                NodeRecord::Term { label } => terms.push(label),
            }
        }
        if roots != 1 {
            return Err(invalid(format!("model must contain exactly 1 root, found {roots}")));
        }
        let term_lookup: HashMap<&String, usize> =
            terms.iter().enumerate().map(|(i, t)| (t, i)).collect();
        if term_lookup.len() != terms.len() {
            return Err(invalid("duplicate term node".into()));
        }

        let mut rooted = vec![false; concepts.len()];
        let mut word_edges = Vec::new();
        for edge in self.edges {
            match edge {
                EdgeRecord::HasTopic { concept } => {
                    let slot = rooted
                        .get_mut(concept)
                        .ok_or_else(|| invalid(format!("hasTopic references unknown concept {concept}")))?;
                    *slot = true;
                }
                EdgeRecord::HasWord {
                    concept,
                    term,
                    weight,
                } => {
                    if concept >= concepts.len() {
                        return Err(invalid(format!("hasWord references unknown concept {concept}")));
                    }
                    let term_idx = *term_lookup
                        .get(&term)
                        .ok_or_else(|| invalid(format!("hasWord references unknown term {term:?}")))?;
                    word_edges.push(WordEdge {
                        concept,
                        term: term_idx,
                        weight,
                    });
                }
            }
        }
        if let Some(missing) = rooted.iter().position(|&r| !r) {
            return Err(invalid(format!("concept {missing} has no hasTopic edge")));
        }
        Ok(OntologyGraph::new(
            self.backend,
            concepts,
            terms,
            word_edges,
            self.provenance,
        ))
    }
}

// ----- full pipeline -------------------------------------------------------

/// Runs the whole pipeline on a corpus directory: ingest, learn with the
/// requested backend, and assemble the graph with full provenance.
pub fn learn(dir: &Path, stopwords: &Path, params: &LearnParams) -> Result<OntologyGraph> {
    let stops = corpus::StopwordSet::load(stopwords)?;
    learn_with(dir, &stops, params)
}

/// Same as [`learn`] but with an in-memory stop-word set.
pub fn learn_with(
    dir: &Path,
    stopwords: &corpus::StopwordSet,
    params: &LearnParams,
) -> Result<OntologyGraph> {
    let (docs, vocab, matrix) = corpus::load_corpus_with(dir, stopwords)?;
    let graph = match params {
        LearnParams::Lsi { concepts, tau } => {
            let weighted = weights::term_weight_matrix(&matrix)?;
            let normalized = weights::normalize_weights(&weighted);
            let factors = svd::decompose(&normalized)?;
            // The default of one concept per document is capped by the
            // rank; an explicit request out of range is the caller's error.
            let k = match concepts {
                Some(k) => *k,
                None => docs.len().min(factors.rank()),
            };
            let extracted = lsi_concepts::extract_concepts(&factors, &vocab, k, *tau)?;
            OntologyGraph::build_from_concepts(&extracted)?
        }
        LearnParams::Lda {
            topics,
            alpha,
            seed,
            shards,
            max_iters,
            tol,
            n_words,
            min_prob,
        } => {
            let alpha = alpha.unwrap_or_else(|| lda::default_alpha(*topics));
            let (model, _) =
                lda::train(&matrix, *topics, alpha, *seed, *shards, *max_iters, *tol)?;
            OntologyGraph::build_from_lda(&model, &vocab, *n_words, *min_prob)?
        }
    };
    Ok(graph.with_provenance(Provenance {
        corpus_digest: corpus::corpus_digest(dir)?,
        n_documents: docs.len(),
        n_vocabulary: vocab.len(),
        built_at: chrono::Utc::now().to_rfc3339(),
        params: params.clone(),
    }))
}

/// Re-runs the full pipeline on `dir` with the hyperparameters recorded in
/// `previous`. The previous graph is left untouched.
pub fn rebuild(dir: &Path, previous: &OntologyGraph, stopwords: &Path) -> Result<OntologyGraph> {
    learn(dir, stopwords, &previous.provenance.params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lda::DEFAULT_SMOOTHING;
    use std::io::Write as _;

    fn concept(id: usize, name: &str, members: &[(&str, f64)]) -> Concept {
        Concept {
            id,
            name: name.to_owned(),
            members: members.iter().map(|(t, l)| (t.to_string(), *l)).collect(),
            singular_value: 1.0,
            empty_warning: members.is_empty(),
        }
    }

    fn two_concept_graph() -> OntologyGraph {
        OntologyGraph::build_from_concepts(&[
            concept(0, "-law-crime", &[("law", 0.9), ("crime", 0.4)]),
            concept(1, "-law-court", &[("law", 0.7), ("court", 0.5)]),
        ])
        .unwrap()
    }

    fn corpus_dir(files: &[(&str, &str)]) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for (name, body) in files {
            let mut f = fs::File::create(dir.path().join(name)).unwrap();
            f.write_all(body.as_bytes()).unwrap();
        }
        dir
    }

    fn stopword_file() -> tempfile::NamedTempFile {
        tempfile::NamedTempFile::new().unwrap()
    }

    #[test]
    fn minimal_graph_structure() {
        let g = OntologyGraph::build_from_concepts(&[concept(
            0,
            "-alpha-beta",
            &[("alpha", 0.9), ("beta", 0.4)],
        )])
        .unwrap();
        assert_eq!(g.concepts().len(), 1);
        assert_eq!(g.terms().len(), 2);
        assert_eq!(g.edges().len(), 2);
        assert!((g.edges()[0].weight - 0.9).abs() < 1e-12);
        g.validate().unwrap();
    }

    #[test]
    fn shared_terms_are_deduplicated() {
        let g = two_concept_graph();
        assert_eq!(g.terms().len(), 3);
        let owners = g.term_owners("law");
        assert_eq!(owners.len(), 2);
        g.validate().unwrap();
    }

    #[test]
    fn negative_loadings_become_positive_weights() {
        let g = OntologyGraph::build_from_concepts(&[concept(
            0,
            "-up-down",
            &[("up", 0.8), ("down", -0.6)],
        )])
        .unwrap();
        let weights: Vec<f64> = g.edges().iter().map(|e| e.weight).collect();
        assert_eq!(weights, vec![0.8, 0.6]);
    }

    #[test]
    fn all_empty_concepts_is_an_error() {
        assert!(matches!(
            OntologyGraph::build_from_concepts(&[concept(0, "-unnamed", &[])]),
            Err(Error::EmptyOntology)
        ));
    }

    #[test]
    fn overlapping_concept_labels_from_extraction() {
        let g = OntologyGraph::build_from_concepts(&[
            concept(
                0,
                "-federal-classes-law-laws-oppose",
                &[("federal", 0.9), ("law", 0.5)],
            ),
            concept(
                1,
                "-mail-merrimack-address-hill-organization",
                &[("mail", 0.8)],
            ),
            concept(
                2,
                "-energy-population-radford-toronto-technet",
                &[("energy", 0.7)],
            ),
            concept(3, "-rutgers-kaldis-ferigner-mcgill-ca", &[("rutgers", 0.6)]),
        ])
        .unwrap();
        let labels: Vec<&str> = g.concepts().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(
            labels,
            [
                "-federal-classes-law-laws-oppose",
                "-mail-merrimack-address-hill-organization",
                "-energy-population-radford-toronto-technet",
                "-rutgers-kaldis-ferigner-mcgill-ca",
            ]
        );
    }

    #[test]
    fn lda_graph_requires_training() {
        let model = crate::lda::init_model(2, 1.0, 3, 1).unwrap();
        let dir = corpus_dir(&[("v.txt", "aa bb cc")]);
        let (_, vocab, _) =
            corpus::load_corpus_with(dir.path(), &Default::default()).unwrap();
        assert!(matches!(
            OntologyGraph::build_from_lda(&model, &vocab, 5, 0.0),
            Err(Error::ModelUntrained)
        ));
    }

    #[test]
    fn lda_graph_attaches_words_under_topics() {
        let dir = corpus_dir(&[
            ("a.txt", "apple apple banana according"),
            ("b.txt", "zebra zebra yak according"),
        ]);
        let (_, vocab, matrix) =
            corpus::load_corpus_with(dir.path(), &Default::default()).unwrap();
        let (model, _) = crate::lda::train(&matrix, 2, 0.5, 7, 1, 30, 1e-6).unwrap();
        let g = OntologyGraph::build_from_lda(&model, &vocab, 10, 1e-4).unwrap();
        g.validate().unwrap();
        assert_eq!(g.concepts()[0].label, "topic-0");
        assert_eq!(g.concepts()[1].label, "topic-1");
        // The shared word sits under both topics.
        assert_eq!(g.term_owners("according").len(), 2);
    }

    #[test]
    fn min_prob_of_one_empties_the_graph() {
        let dir = corpus_dir(&[("a.txt", "aa bb"), ("b.txt", "cc dd")]);
        let (_, vocab, matrix) =
            corpus::load_corpus_with(dir.path(), &Default::default()).unwrap();
        let (model, _) = crate::lda::train(&matrix, 2, 0.5, 7, 1, 10, 1e-6).unwrap();
        assert!(matches!(
            OntologyGraph::build_from_lda(&model, &vocab, 10, 1.0),
            Err(Error::EmptyOntology)
        ));
        let _ = DEFAULT_SMOOTHING;
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let g = two_concept_graph().with_provenance(Provenance {
            corpus_digest: "abc123".into(),
            n_documents: 2,
            n_vocabulary: 3,
            built_at: "2026-01-01T00:00:00+00:00".into(),
            params: LearnParams::lsi_defaults(),
        });
        let loaded = OntologyGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, loaded);
        loaded.validate().unwrap();
    }

    #[test]
    fn json_export_is_deterministic() {
        let g = two_concept_graph();
        assert_eq!(g.to_json(), g.to_json());
    }

    #[test]
    fn truncated_json_is_a_parse_error() {
        let g = two_concept_graph();
        let json = g.to_json();
        let truncated = &json[..json.len() / 2];
        match OntologyGraph::from_json(truncated) {
            Err(Error::Parse { line, .. }) => assert!(line > 0),
            other => panic!("expected Parse, got {other:?}"),
        }
    }

    #[test]
    fn version_mismatch_is_reported() {
        let g = two_concept_graph();
        let json = g.to_json().replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(
            OntologyGraph::from_json(&json),
            Err(Error::Version {
                found: 2,
                expected: 1
            })
        ));
    }

    #[test]
    fn missing_root_edge_is_rejected() {
        let g = two_concept_graph();
        let json = g.to_json().replacen(
            "{\n      \"kind\": \"has_topic\",\n      \"concept\": 0\n    },",
            "",
            1,
        );
        assert!(OntologyGraph::from_json(&json).is_err());
    }

    #[test]
    fn turtle_minimal_graph_contains_the_structural_triples() {
        let g = OntologyGraph::build_from_concepts(&[concept(0, "-alpha", &[("alpha", 1.0)])])
            .unwrap();
        let ttl = g.to_turtle();
        let lines: Vec<&str> = ttl.lines().collect();
        assert_eq!(lines[0], format!("@prefix of: <{SCHEMA_PREFIX}> ."));
        assert!(lines.contains(&"of:c0 a of:Topic ."));
        assert!(lines.contains(&"of:c0 of:label \"-alpha\" ."));
        assert!(lines.contains(&"of:root of:hasTopic of:c0 ."));
        assert!(lines.contains(&"of:c0 of:hasWord of:t_alpha ."));
        assert!(lines.contains(&"of:t_alpha of:label \"alpha\" ."));
        assert!(lines.contains(&"of:c0_t_alpha of:weight \"1.000000\" ."));
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn turtle_is_deterministic_and_sorted() {
        let g = two_concept_graph();
        assert_eq!(g.to_turtle(), g.to_turtle());
        let ttl = g.to_turtle();
        // Within concept 0 the heavier word comes first.
        let law = ttl.find("of:c0 of:hasWord of:t_law .").unwrap();
        let crime = ttl.find("of:c0 of:hasWord of:t_crime .").unwrap();
        assert!(law < crime);
    }

    #[test]
    fn turtle_sanitizes_identifiers_and_keeps_labels() {
        let g = OntologyGraph::build_from_concepts(&[concept(
            0,
            "-café-cafe",
            &[("café", 0.9), ("cafe", 0.8)],
        )])
        .unwrap();
        let ttl = g.to_turtle();
        assert!(ttl.contains("of:t_caf_ of:label \"café\" ."));
        assert!(ttl.contains("of:t_cafe of:label \"cafe\" ."));
    }

    #[test]
    fn turtle_round_trip_recovers_nodes_and_edges() {
        let g = two_concept_graph();
        let ttl = g.to_turtle();
        // Test-side parser for the emitted subset.
        let mut concepts = HashSet::new();
        let mut term_labels = HashMap::new();
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for line in ttl.lines().skip(1) {
            let fields: Vec<&str> = line.trim_end_matches(" .").splitn(3, ' ').collect();
            let (s, p, o) = (fields[0], fields[1], fields[2]);
            match p {
                "a" => {
                    concepts.insert(s.to_owned());
                }
                "of:label" if s.starts_with("of:t_") => {
                    term_labels.insert(s.to_owned(), o.trim_matches('"').to_owned());
                }
                "of:hasWord" => edges.push((s.to_owned(), o.to_owned())),
                "of:weight" => weights.push(o.trim_matches('"').parse::<f64>().unwrap()),
                _ => {}
            }
        }
        assert_eq!(concepts.len(), g.concepts().len());
        let mut recovered: Vec<String> = term_labels.values().cloned().collect();
        recovered.sort();
        let mut expected: Vec<String> = g.terms().to_vec();
        expected.sort();
        assert_eq!(recovered, expected);
        assert_eq!(edges.len(), g.edges().len());
        assert_eq!(weights.len(), g.edges().len());
    }

    #[test]
    fn rebuild_unchanged_directory_matches_previous() {
        let dir = corpus_dir(&[
            ("a.txt", "law crime courts"),
            ("b.txt", "law courts judges"),
            ("c.txt", "crime judges police"),
        ]);
        let sw = stopword_file();
        let params = LearnParams::Lsi {
            concepts: None,
            tau: 1e-6,
        };
        let first = learn(dir.path(), sw.path(), &params).unwrap();
        let second = rebuild(dir.path(), &first, sw.path()).unwrap();
        let mut aligned = second.clone();
        aligned.provenance.built_at = first.provenance.built_at.clone();
        assert_eq!(first, aligned);
    }

    #[test]
    fn rebuild_with_reused_vocabulary_keeps_term_nodes() {
        let dir = corpus_dir(&[
            ("a.txt", "law crime courts"),
            ("b.txt", "law courts judges"),
            ("c.txt", "crime judges police"),
        ]);
        let sw = stopword_file();
        let params = LearnParams::Lsi {
            concepts: None,
            tau: 1e-9,
        };
        let first = learn(dir.path(), sw.path(), &params).unwrap();
        fs::write(dir.path().join("d.txt"), "law police judges").unwrap();
        let second = rebuild(dir.path(), &first, sw.path()).unwrap();
        let mut before: Vec<String> = first.terms().to_vec();
        let mut after: Vec<String> = second.terms().to_vec();
        before.sort();
        after.sort();
        assert_eq!(before, after);
        assert_ne!(first.provenance().corpus_digest, second.provenance().corpus_digest);
        // The decomposition shifts with the extra document, so edge
        // weights move even though the term set does not.
        let weights_of = |g: &OntologyGraph| -> Vec<f64> {
            g.edges().iter().map(|e| e.weight).collect()
        };
        assert_ne!(weights_of(&first), weights_of(&second));
    }

    #[test]
    fn rebuild_with_new_terms_grows_the_term_set() {
        let dir = corpus_dir(&[
            ("a.txt", "law crime courts"),
            ("b.txt", "law courts judges"),
        ]);
        let sw = stopword_file();
        let params = LearnParams::Lsi {
            concepts: None,
            tau: 1e-9,
        };
        let first = learn(dir.path(), sw.path(), &params).unwrap();
        fs::write(dir.path().join("c.txt"), "quantum entanglement law").unwrap();
        let second = rebuild(dir.path(), &first, sw.path()).unwrap();
        let before: HashSet<String> = first.terms().iter().cloned().collect();
        let after: HashSet<String> = second.terms().iter().cloned().collect();
        assert!(before.is_subset(&after));
        assert!(after.len() > before.len());
    }
}
