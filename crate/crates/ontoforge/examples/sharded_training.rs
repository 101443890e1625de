//! The shard contract of the LDA trainer: per-shard E-steps plus a
//! fixed-order merge give the same model for any shard count.
//!
//! ```bash
//! cargo run --example sharded_training
//! ```

use std::path::Path;

use ontoforge::corpus;
use ontoforge::lda;

fn main() -> ontoforge::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let (docs, vocab, counts) =
        corpus::load_corpus(&data.join("corpus"), &data.join("stopwords.txt"))?;
    println!("corpus: {} documents, {} terms", docs.len(), vocab.len());

    let topics = 3;
    let alpha = lda::default_alpha(topics);
    let mut models = Vec::new();
    for shards in [1usize, 2, 4] {
        let (model, _) = lda::train(&counts, topics, alpha, 11, shards, 30, 0.0)?;
        println!(
            "shards = {shards}: {} iterations, final ELBO {:.4}",
            model.iterations_run,
            model.elbo_trace.last().unwrap()
        );
        models.push(model);
    }

    let reference = &models[0];
    for (model, shards) in models[1..].iter().zip([2usize, 4]) {
        let mut max_diff = 0.0f64;
        for topic in 0..reference.k {
            for (a, b) in reference.beta.row(topic).iter().zip(model.beta.row(topic)) {
                max_diff = max_diff.max((a - b).abs());
            }
        }
        println!("max |beta diff| between 1 shard and {shards} shards: {max_diff:.2e}");
        assert!(max_diff <= 1e-6);
    }
    println!("shard count does not change the learned model");
    Ok(())
}
