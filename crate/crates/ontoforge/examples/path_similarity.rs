//! Edge-count semantic similarity between ontology nodes:
//! (e^(x*d) - 1) / (e^(x*d) + e^(y*s) - 2) for tree depth d and
//! shortest-path length s.
//!
//! ```bash
//! cargo run --example path_similarity
//! ```

use std::path::Path;

use ontoforge::ontology::{self, LearnParams};
use ontoforge::retrieval::{edge_count_similarity, path_similarity, DEFAULT_X, DEFAULT_Y};

fn main() -> ontoforge::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let graph = ontology::learn(
        &data.join("corpus"),
        &data.join("stopwords.txt"),
        &LearnParams::lsi_defaults(),
    )?;
    println!("tree depth d = {}", graph.depth());

    let pairs = [
        ("law", "laws"),
        ("law", "energy"),
        ("mail", "address"),
        ("rutgers", "mcgill"),
        ("flynn", "flynn"),
    ];
    println!("\nterm pair similarities (x = {DEFAULT_X}, y = {DEFAULT_Y}):");
    for (a, b) in pairs {
        let (Some(na), Some(nb)) = (graph.term_node(a), graph.term_node(b)) else {
            println!("  {a:<10} {b:<10} (missing term)");
            continue;
        };
        let s = path_similarity(&graph, na, nb, DEFAULT_X, DEFAULT_Y)?;
        let dist = graph.distance(na, nb).unwrap();
        println!("  {a:<10} {b:<10} distance {dist}  similarity {s:.4}");
    }

    println!("\nsimilarity falls with path length (d = 3):");
    for s in 0..6 {
        let value = edge_count_similarity(3, s, DEFAULT_X, DEFAULT_Y)?;
        println!("  s = {s}  similarity {value:.4}");
    }
    Ok(())
}
