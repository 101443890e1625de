//! Answer queries against a learned ontology, including matches that only
//! succeed through the synonym lexicon.
//!
//! ```bash
//! cargo run --example query_ontology
//! ```

use std::path::Path;

use ontoforge::corpus::StopwordSet;
use ontoforge::ontology::{self, LearnParams};
use ontoforge::retrieval::{self, SynonymLexicon};

fn main() -> ontoforge::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let stopwords_path = data.join("stopwords.txt");
    let graph = ontology::learn(
        &data.join("corpus"),
        &stopwords_path,
        &LearnParams::lsi_defaults(),
    )?;
    let lexicon = SynonymLexicon::load(&data.join("synonyms.tsv"))?;
    let stopwords = StopwordSet::load(&stopwords_path)?;

    // "cinema" is not in the corpus; it matches through its synonyms.
    for query in ["law and energy", "the cinema of errol flynn", "university mail"] {
        let result = retrieval::detect_topics(query, &graph, &lexicon, &stopwords)?;
        println!("query: {query}");
        for term in &result.terms {
            match &term.hit {
                None => println!("  {:<10} no match", term.query_term),
                Some(hit) => {
                    let how = if hit.mu == 1.0 {
                        "direct".to_owned()
                    } else {
                        format!("via \"{}\"", hit.term)
                    };
                    println!("  {:<10} {how} (mu = {:.2})", term.query_term, hit.mu);
                    for concept in hit.concepts.iter().take(2) {
                        println!("    {:<44} weight {:.4}", concept.label, concept.weight);
                    }
                }
            }
        }
        println!("  fuzzy score: {:.4}\n", result.score);
    }

    // The ranked expansion itself, with memberships.
    let expansion = retrieval::expand_synonyms("claim", &lexicon);
    println!("expansion of \"claim\":");
    for (candidate, mu) in expansion {
        println!("  {candidate:<10} mu = {mu:.2}");
    }
    Ok(())
}
