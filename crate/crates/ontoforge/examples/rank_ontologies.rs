//! Rank competing ontologies from a measures fixture with the weighted
//! four-measure score, in both scoring modes.
//!
//! ```bash
//! cargo run --example rank_ontologies
//! ```

use std::path::Path;

use ontoforge::ranking::{self, Weights};

fn main() -> ontoforge::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let rows = ranking::load_measures_csv(&data.join("measures.csv"))?;

    println!("plain weighted sum (0.3*cmm + 0.2*dem + 0.4*ssm + 0.1*bem):");
    print_table(&ranking::rank_ontologies(&rows, &Weights::default(), false)?);

    println!("\nmax-normalized mode:");
    print_table(&ranking::rank_ontologies(&rows, &Weights::default(), true)?);

    println!("\nequal weights:");
    let equal = Weights {
        cmm: 0.25,
        dem: 0.25,
        ssm: 0.25,
        bem: 0.25,
    };
    print_table(&ranking::rank_ontologies(&rows, &equal, false)?);
    Ok(())
}

fn print_table(entries: &[ontoforge::ranking::RankEntry]) {
    println!(
        "  {:<16} {:>6} {:>6} {:>6} {:>6} {:>8} {:>5}",
        "name", "cmm", "dem", "ssm", "bem", "score", "rank"
    );
    for e in entries {
        println!(
            "  {:<16} {:>6.3} {:>6.3} {:>6.3} {:>6.3} {:>8.4} {:>5}",
            e.name, e.measures.cmm, e.measures.dem, e.measures.ssm, e.measures.bem, e.score, e.rank
        );
    }
}
