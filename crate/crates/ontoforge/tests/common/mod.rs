//! Shared oracles for the integration suites. Everything here is computed
//! independently of the library code paths it checks.

#![allow(dead_code)]

use std::fs;
use std::path::Path;

use ontoforge::matrix::DenseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalues of a symmetric matrix by classical two-sided Jacobi
/// iteration, descending. Independent of the one-sided SVD implementation.
pub fn symmetric_eigenvalues(matrix: &DenseMatrix) -> Vec<f64> {
    assert_eq!(matrix.rows(), matrix.cols(), "oracle needs a square matrix");
    let n = matrix.rows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|c| matrix.get(r, c)).collect())
        .collect();

    for _sweep in 0..200 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p][q].abs());
            }
        }
        if off < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-18 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // Rotate rows and columns p, q of the symmetric matrix.
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigenvalues
}

/// Gram matrix A^T A.
pub fn gram(a: &DenseMatrix) -> DenseMatrix {
    a.transpose().matmul(a)
}

pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// Largest |U^T U - I| entry.
pub fn orthonormality_residual(m: &DenseMatrix) -> f64 {
    let g = m.transpose().matmul(m);
    let mut max = 0.0f64;
    for r in 0..g.rows() {
        for c in 0..g.cols() {
            let expect = if r == c { 1.0 } else { 0.0 };
            max = max.max((g.get(r, c) - expect).abs());
        }
    }
    max
}

/// A synthetic corpus with `topics` disjoint vocabularies of
/// `words_per_topic` words and `docs_per_topic` documents each. When
/// `shared_word` is set, that word is additionally planted (three times per
/// document) in the documents of the first two topic blocks.
pub struct PlantedCorpus {
    pub topics: usize,
    pub words_per_topic: usize,
    pub docs: Vec<String>,
    pub shared_word: Option<String>,
}

impl PlantedCorpus {
    pub fn generate(
        topics: usize,
        words_per_topic: usize,
        docs_per_topic: usize,
        tokens_per_doc: usize,
        seed: u64,
        shared_word: Option<&str>,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut docs = Vec::new();
        for topic in 0..topics {
            for _ in 0..docs_per_topic {
                let mut tokens: Vec<String> = (0..tokens_per_doc)
                    .map(|_| {
                        let w = rng.gen_range(0..words_per_topic);
                        planted_word(topic, w)
                    })
                    .collect();
                if let Some(shared) = shared_word {
                    if topic < 2 {
                        for _ in 0..3 {
                            tokens.push(shared.to_owned());
                        }
                    }
                }
                docs.push(tokens.join(" "));
            }
        }
        PlantedCorpus {
            topics,
            words_per_topic,
            docs,
            shared_word: shared_word.map(str::to_owned),
        }
    }

    /// The vocabulary planted for one topic block.
    pub fn planted_vocabulary(&self, topic: usize) -> Vec<String> {
        (0..self.words_per_topic)
            .map(|w| planted_word(topic, w))
            .collect()
    }

    /// Writes the documents as .txt files under `dir`.
    pub fn write_to(&self, dir: &Path) {
        for (i, doc) in self.docs.iter().enumerate() {
            fs::write(dir.join(format!("doc_{i:03}.txt")), doc).unwrap();
        }
    }
}

/// Purely alphabetic planted words (the tokenizer splits on digits).
pub fn planted_word(topic: usize, word: usize) -> String {
    const TOPIC_NAMES: [&str; 8] = [
        "alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel",
    ];
    let suffix = (b'a' + word as u8) as char;
    format!("{}{}{}", TOPIC_NAMES[topic], suffix, suffix)
}

/// Purity of learned topics against planted vocabularies under the best
/// one-to-one assignment: the assignment maximizing overlap is found by
/// brute force over permutations, and purity is (matched top words) /
/// (total top words).
pub fn planted_purity(top_words: &[Vec<String>], planted: &[Vec<String>]) -> f64 {
    assert_eq!(top_words.len(), planted.len());
    let k = planted.len();
    let overlap = |learned: &[String], truth: &[String]| -> usize {
        learned.iter().filter(|w| truth.contains(w)).count()
    };
    let mut best = 0usize;
    let mut order: Vec<usize> = (0..k).collect();
    permute(&mut order, 0, &mut |perm| {
        let total: usize = (0..k)
            .map(|i| overlap(&top_words[i], &planted[perm[i]]))
            .sum();
        best = best.max(total);
    });
    let denominator: usize = top_words.iter().map(Vec::len).sum();
    best as f64 / denominator as f64
}

fn permute(values: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == values.len() {
        visit(values);
        return;
    }
    for i in start..values.len() {
        values.swap(start, i);
        permute(values, start + 1, visit);
        values.swap(start, i);
    }
}

#[cfg(test)]
mod oracle_tests {
    use super::*;

    #[test]
    fn eigen_oracle_matches_hand_values() {
        // [[2, 1], [1, 2]] has eigenvalues 3 and 1.
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let eig = symmetric_eigenvalues(&m);
        assert!((eig[0] - 3.0).abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn purity_of_perfect_match_is_one() {
        let planted = vec![
            vec!["a".to_owned(), "b".to_owned()],
            vec!["c".to_owned(), "d".to_owned()],
        ];
        // Swapped order still matches under the best assignment.
        let learned = vec![planted[1].clone(), planted[0].clone()];
        assert_eq!(planted_purity(&learned, &planted), 1.0);
    }
}
