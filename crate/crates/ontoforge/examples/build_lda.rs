//! Train the variational LDA backend on the bundled corpus and print each
//! topic's top words and the ELBO trace.
//!
//! ```bash
//! cargo run --example build_lda
//! ```

use std::path::Path;

use ontoforge::corpus;
use ontoforge::lda;
use ontoforge::ontology::OntologyGraph;

fn main() -> ontoforge::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let (docs, vocab, counts) =
        corpus::load_corpus(&data.join("corpus"), &data.join("stopwords.txt"))?;
    println!(
        "loaded {} documents, vocabulary of {} terms",
        docs.len(),
        vocab.len()
    );

    let topics = 4;
    let (model, posteriors) = lda::train(
        &counts,
        topics,
        lda::default_alpha(topics),
        42,   // seed
        2,    // shards
        60,   // max iterations
        1e-5, // relative ELBO tolerance
    )?;
    println!(
        "trained {} topics in {} iterations",
        model.k, model.iterations_run
    );

    println!("\nELBO trace (first and last values):");
    let trace = &model.elbo_trace;
    for (i, value) in trace.iter().take(3).enumerate() {
        println!("  iter {:>2}  {value:.3}", i + 1);
    }
    if trace.len() > 3 {
        println!("  ...");
        println!("  iter {:>2}  {:.3}", trace.len(), trace.last().unwrap());
    }

    println!("\ntop words per topic:");
    for topic in 0..model.k {
        let words = lda::top_words(&model, topic, 6, &vocab)?;
        let rendered: Vec<String> = words
            .iter()
            .map(|(term, p)| format!("{term} ({p:.3})"))
            .collect();
        println!("  topic-{topic}: {}", rendered.join(", "));
    }

    println!("\nmost concentrated document posteriors:");
    for posterior in posteriors.iter().take(3) {
        let total: f64 = posterior.gamma.iter().sum();
        let shares: Vec<String> = posterior
            .gamma
            .iter()
            .map(|g| format!("{:.2}", g / total))
            .collect();
        println!("  doc {}  theta ~ [{}]", posterior.doc_id, shares.join(", "));
    }

    let graph = OntologyGraph::build_from_lda(&model, &vocab, 10, 0.001)?;
    graph.validate()?;
    println!(
        "\nontology: {} topics, {} terms, {} edges",
        graph.concepts().len(),
        graph.terms().len(),
        graph.edges().len()
    );
    Ok(())
}
