//! Incremental maintenance: when a document is added to the corpus, the
//! whole pipeline re-runs with the hyperparameters recorded in the previous
//! graph's provenance.
//!
//! ```bash
//! cargo run --example rebuild_on_new_document
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use ontoforge::ontology::{self, LearnParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");

    // Work on a scratch copy so the bundled corpus stays untouched.
    let scratch = tempfile::tempdir()?;
    for entry in fs::read_dir(data.join("corpus"))? {
        let entry = entry?;
        fs::copy(entry.path(), scratch.path().join(entry.file_name()))?;
    }
    let stopwords = data.join("stopwords.txt");

    let params = LearnParams::Lsi {
        concepts: Some(5),
        tau: 0.02,
    };
    let first = ontology::learn(scratch.path(), &stopwords, &params)?;
    println!(
        "initial build: {} docs, {} terms, digest {}",
        first.provenance().n_documents,
        first.terms().len(),
        &first.provenance().corpus_digest[..12]
    );

    fs::write(
        scratch.path().join("10_hockey_report.txt"),
        "The hockey season opened with the goalie trade everyone expected. \
         Hockey writers graded the trade harshly, but the goalie himself \
         called the move energizing for the team and its fans.",
    )?;

    let second = ontology::rebuild(scratch.path(), &first, &stopwords)?;
    println!(
        "rebuild:       {} docs, {} terms, digest {}",
        second.provenance().n_documents,
        second.terms().len(),
        &second.provenance().corpus_digest[..12]
    );

    let before: HashSet<&String> = first.terms().iter().collect();
    let after: HashSet<&String> = second.terms().iter().collect();
    let mut new_terms: Vec<&&String> = after.difference(&before).collect();
    new_terms.sort();
    println!("new term nodes: {new_terms:?}");
    assert!(before.is_subset(&after) || !new_terms.is_empty());

    // The previous graph is untouched by the rebuild.
    println!("previous graph still has {} terms", first.terms().len());
    Ok(())
}
