//! Corpus ingestion: read a directory of plain-text documents, tokenize,
//! prune stop words, and assemble a vocabulary plus a sparse term-document
//! count matrix.
//!
//! Ingestion is deterministic: documents are ordered by file name and the
//! vocabulary by first occurrence, so identical inputs always produce
//! identical indices.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Lowercases, splits on any non-alphabetic character, and drops tokens
/// shorter than two characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphabetic())
        .filter(|t| t.chars().count() >= 2)
        .map(str::to_owned)
        .collect()
}

/// Stop words pruned after tokenization.
#[derive(Debug, Clone, Default)]
pub struct StopwordSet {
    words: HashSet<String>,
}

impl StopwordSet {
    /// Loads one word per line; blank lines and lines starting with `#` are
    /// ignored.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_words(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_owned),
        ))
    }

    pub fn from_words(words: impl IntoIterator<Item = String>) -> Self {
        Self {
            words: words.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One ingested document: a dense id, its source path, and the retained
/// (stop-word-free) token stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: usize,
    pub source_path: PathBuf,
    pub tokens: Vec<String>,
}

/// Bijection between terms and dense indices, in first-occurrence order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    fn intern(&mut self, term: &str) -> usize {
        if let Some(&i) = self.index.get(term) {
            return i;
        }
        let i = self.terms.len();
        self.terms.push(term.to_owned());
        self.index.insert(term.to_owned(), i);
        i
    }
}

/// Sparse term-document frequency counts. Column k holds the counts of
/// document k as (term index, count) pairs sorted by term index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDocMatrix {
    n_terms: usize,
    columns: Vec<Vec<(usize, u32)>>,
}

impl TermDocMatrix {
    /// Builds directly from per-document count columns. Term indices must be
    /// in range; each column is re-sorted by term index.
    pub fn from_columns(n_terms: usize, columns: Vec<Vec<(usize, u32)>>) -> Result<Self> {
        let mut columns = columns;
        for col in &mut columns {
            col.sort_by_key(|&(t, _)| t);
            for win in col.windows(2) {
                if win[0].0 == win[1].0 {
                    return Err(Error::Shape(format!(
                        "duplicate term index {} in a column",
                        win[0].0
                    )));
                }
            }
            if let Some(&(t, _)) = col.last() {
                if t >= n_terms {
                    return Err(Error::Shape(format!(
                        "term index {t} out of range for {n_terms} terms"
                    )));
                }
            }
        }
        Ok(Self { n_terms, columns })
    }

    fn from_documents(docs: &[Document], vocab: &Vocabulary) -> Self {
        let columns = docs
            .iter()
            .map(|doc| {
                let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
                for token in &doc.tokens {
                    let idx = vocab
                        .index_of(token)
                        .expect("document token missing from vocabulary");
                    *counts.entry(idx).or_insert(0) += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        Self {
            n_terms: vocab.len(),
            columns,
        }
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn n_docs(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, doc: usize) -> &[(usize, u32)] {
        &self.columns[doc]
    }

    /// Total token count of document `doc`.
    pub fn column_sum(&self, doc: usize) -> u64 {
        self.columns[doc].iter().map(|&(_, c)| c as u64).sum()
    }
}

/// Lists the `*.txt` files of `dir` sorted by file name.
fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "txt") {
            files.push(path);
        }
    }
    files.sort_by_key(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()));
    if files.is_empty() {
        return Err(Error::CorpusEmpty(dir.to_path_buf()));
    }
    Ok(files)
}

/// SHA-256 over the sorted (file name, content) pairs of the corpus
/// directory; used as build provenance.
pub fn corpus_digest(dir: &Path) -> Result<String> {
    let mut hasher = Sha256::new();
    for path in corpus_files(dir)? {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned());
        hasher.update(name.unwrap_or_default().as_bytes());
        hasher.update([0u8]);
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        hasher.update(&bytes);
        hasher.update([0u8]);
    }
    let digest = hasher.finalize();
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Ingests every `*.txt` file under `dir` with the stop words read from
/// `stopwords`.
pub fn load_corpus(
    dir: &Path,
    stopwords: &Path,
) -> Result<(Vec<Document>, Vocabulary, TermDocMatrix)> {
    let stops = StopwordSet::load(stopwords)?;
    load_corpus_with(dir, &stops)
}

/// Same as [`load_corpus`] but with an in-memory stop-word set.
pub fn load_corpus_with(
    dir: &Path,
    stopwords: &StopwordSet,
) -> Result<(Vec<Document>, Vocabulary, TermDocMatrix)> {
    let files = corpus_files(dir)?;
    let mut documents = Vec::with_capacity(files.len());
    let mut vocab = Vocabulary::default();

    for (id, path) in files.into_iter().enumerate() {
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let text = String::from_utf8(bytes).map_err(|e| Error::Ingest {
            path: path.clone(),
            reason: format!("invalid UTF-8: {e}"),
        })?;
        let tokens: Vec<String> = tokenize(&text)
            .into_iter()
            .filter(|t| !stopwords.contains(t))
            .collect();
        if tokens.is_empty() {
            return Err(Error::DocumentEmpty(path.display().to_string()));
        }
        for token in &tokens {
            vocab.intern(token);
        }
        documents.push(Document {
            id,
            source_path: path,
            tokens,
        });
    }

    let matrix = TermDocMatrix::from_documents(&documents, &vocab);
    Ok((documents, vocab, matrix))
}
