//! Learn an ontology from the bundled corpus with the LSI backend and
//! print the extracted concepts.
//!
//! ```bash
//! cargo run --example build_lsi
//! ```

use std::path::Path;

use ontoforge::corpus;
use ontoforge::lsi_concepts;
use ontoforge::ontology::OntologyGraph;
use ontoforge::svd;
use ontoforge::weights;

fn main() -> ontoforge::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let (docs, vocab, counts) =
        corpus::load_corpus(&data.join("corpus"), &data.join("stopwords.txt"))?;
    println!(
        "loaded {} documents, vocabulary of {} terms",
        docs.len(),
        vocab.len()
    );

    let weighted = weights::term_weight_matrix(&counts)?;
    let normalized = weights::normalize_weights(&weighted);
    let factors = svd::decompose(&normalized)?;
    println!("\nleading singular values:");
    for (i, s) in factors.s.iter().take(5).enumerate() {
        println!("  s[{i}] = {s:.4}");
    }

    let concepts = lsi_concepts::extract_concepts(&factors, &vocab, docs.len(), 0.05)?;
    println!("\nconcepts (threshold 0.05):");
    for concept in &concepts {
        println!("  {}", concept.name);
        for (term, loading) in concept.members.iter().take(8) {
            println!("    {term:<14} loading {loading:+.4}");
        }
    }

    let graph = OntologyGraph::build_from_concepts(&concepts)?;
    graph.validate()?;
    println!(
        "\nontology: {} concepts, {} terms, {} edges",
        graph.concepts().len(),
        graph.terms().len(),
        graph.edges().len()
    );
    Ok(())
}
