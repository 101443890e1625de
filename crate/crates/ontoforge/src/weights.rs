//! Term weighting: raw counts are scaled by document length, then each
//! document column is L2-normalized. Within a column the normalized values
//! keep the original count ratios, so a term occurring five times weighs
//! exactly five times a term occurring once.

use crate::corpus::TermDocMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Sparse real matrix with the shape of the count matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    n_terms: usize,
    columns: Vec<Vec<(usize, f64)>>,
}

/// Weight matrix whose non-zero columns have unit L2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedWeightMatrix {
    n_terms: usize,
    columns: Vec<Vec<(usize, f64)>>,
}

macro_rules! weight_accessors {
    ($ty:ident) => {
        impl $ty {
            pub fn n_terms(&self) -> usize {
                self.n_terms
            }

            pub fn n_docs(&self) -> usize {
                self.columns.len()
            }

            pub fn column(&self, doc: usize) -> &[(usize, f64)] {
                &self.columns[doc]
            }

            /// Expands to a dense terms x docs matrix.
            pub fn to_dense(&self) -> DenseMatrix {
                let mut m = DenseMatrix::zeros(self.n_terms, self.columns.len());
                for (k, col) in self.columns.iter().enumerate() {
                    for &(i, w) in col {
                        m.set(i, k, w);
                    }
                }
                m
            }
        }
    };
}

weight_accessors!(WeightMatrix);
weight_accessors!(NormalizedWeightMatrix);

/// Divides each count by the total token count of its document.
pub fn term_weight_matrix(counts: &TermDocMatrix) -> Result<WeightMatrix> {
    let mut columns = Vec::with_capacity(counts.n_docs());
    for k in 0..counts.n_docs() {
        let total = counts.column_sum(k);
        if total == 0 {
            return Err(Error::DegenerateDocument(k));
        }
        let total = total as f64;
        columns.push(
            counts
                .column(k)
                .iter()
                .map(|&(i, c)| (i, c as f64 / total))
                .collect(),
        );
    }
    Ok(WeightMatrix {
        n_terms: counts.n_terms(),
        columns,
    })
}

/// Scales each column to unit L2 norm.
pub fn normalize_weights(w: &WeightMatrix) -> NormalizedWeightMatrix {
    let columns = w
        .columns
        .iter()
        .map(|col| {
            let norm = col.iter().map(|&(_, v)| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                return col.clone();
            }
            col.iter().map(|&(i, v)| (i, v / norm)).collect()
        })
        .collect();
    NormalizedWeightMatrix {
        n_terms: w.n_terms,
        columns,
    }
}
