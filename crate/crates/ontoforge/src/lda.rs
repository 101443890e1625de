//! Shard-parallel variational LDA.
//!
//! Training is an EM loop over the whole corpus: documents are partitioned
//! round-robin into shards, each shard runs independent per-document
//! variational E-steps, the shard sufficient statistics are merged in
//! ascending shard order (a fixed fold order keeps the result reproducible
//! under any shard count), and a single M-step refreshes the topic-word
//! matrix. The evidence lower bound is evaluated once per iteration and
//! must never decrease beyond floating-point slack.
//!
//! Per-document inference follows the classic fixed point
//! `phi[w][k] ~ beta[k][w] * exp(digamma(gamma[k]))`,
//! `gamma[k] = alpha + sum_w count[w] * phi[w][k]`.

use rayon::prelude::*;

use crate::corpus::TermDocMatrix;
use crate::error::{Error, Result};
use crate::math::{digamma, ln_gamma};
use crate::matrix::DenseMatrix;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Inner fixed-point stop: max |delta gamma| below this, or
/// [`MAX_INNER_ITERS`] rounds.
const GAMMA_TOL: f64 = 1e-5;
const MAX_INNER_ITERS: usize = 100;
/// Pseudo-count added to every topic-word cell in the M-step.
pub const DEFAULT_SMOOTHING: f64 = 0.01;
/// Relative ELBO change below which training stops.
pub const DEFAULT_TOL: f64 = 1e-4;
pub const DEFAULT_MAX_ITERS: usize = 100;

/// Conventional symmetric prior when none is given.
pub fn default_alpha(k: usize) -> f64 {
    50.0 / k as f64
}

/// Topic model state: `beta` is K x V, each row a distribution over the
/// vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct LdaModel {
    pub k: usize,
    pub alpha: f64,
    pub beta: DenseMatrix,
    pub seed: u64,
    pub iterations_run: usize,
    pub elbo_trace: Vec<f64>,
}

impl LdaModel {
    pub fn vocab_size(&self) -> usize {
        self.beta.cols()
    }
}

/// Variational Dirichlet parameters of one document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocPosterior {
    pub doc_id: usize,
    pub gamma: Vec<f64>,
}

/// Expected topic-word counts accumulated across documents.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficientStats {
    pub lambda_acc: DenseMatrix,
    pub doc_count: usize,
}

impl SufficientStats {
    pub fn zeros(k: usize, vocab_size: usize) -> Self {
        Self {
            lambda_acc: DenseMatrix::zeros(k, vocab_size),
            doc_count: 0,
        }
    }
}

/// Draws each topic row from a flat Dirichlet, deterministically per seed.
pub fn init_model(k: usize, alpha: f64, vocab_size: usize, seed: u64) -> Result<LdaModel> {
    if k < 1 {
        return Err(Error::BadHyperparam("topic count must be at least 1".into()));
    }
    if alpha <= 0.0 || alpha.is_nan() {
        return Err(Error::BadHyperparam(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if vocab_size < 1 {
        return Err(Error::BadHyperparam("vocabulary must be non-empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut beta = DenseMatrix::zeros(k, vocab_size);
    for topic in 0..k {
        let row = beta.row_mut(topic);
        let mut sum = 0.0;
        for cell in row.iter_mut() {
            // Exponential draws normalized over the row sample a flat
            // Dirichlet; the floor keeps every entry strictly positive.
            let u: f64 = rng.gen();
            *cell = -(1.0 - u).ln() + 1e-12;
            sum += *cell;
        }
        for cell in row.iter_mut() {
            *cell /= sum;
        }
    }
    Ok(LdaModel {
        k,
        alpha,
        beta,
        seed,
        iterations_run: 0,
        elbo_trace: Vec::new(),
    })
}

/// Runs the per-document fixed point and returns the posterior plus this
/// document's contribution to the sufficient statistics.
pub fn e_step_doc(
    model: &LdaModel,
    doc_counts: &[(usize, u32)],
    doc_id: usize,
) -> Result<(DocPosterior, SufficientStats)> {
    let mut stats = SufficientStats::zeros(model.k, model.vocab_size());
    let posterior = e_step_doc_into(model, doc_counts, doc_id, &mut stats)?;
    stats.doc_count = 1;
    Ok((posterior, stats))
}

fn e_step_doc_into(
    model: &LdaModel,
    doc_counts: &[(usize, u32)],
    doc_id: usize,
    stats: &mut SufficientStats,
) -> Result<DocPosterior> {
    if doc_counts.is_empty() {
        return Err(Error::DocumentEmpty(format!("document {doc_id}")));
    }
    let k = model.k;
    let n_tokens: f64 = doc_counts.iter().map(|&(_, c)| c as f64).sum();

    let mut gamma = vec![model.alpha + n_tokens / k as f64; k];
    let mut exp_digamma = vec![0.0; k];
    // phi rows per distinct word, laid out contiguously.
    let mut phi = vec![0.0; doc_counts.len() * k];

    for _ in 0..MAX_INNER_ITERS {
        for (topic, eg) in exp_digamma.iter_mut().enumerate() {
            *eg = digamma(gamma[topic]).exp();
        }
        let mut new_gamma = vec![model.alpha; k];
        for (w_idx, &(word, count)) in doc_counts.iter().enumerate() {
            let row = &mut phi[w_idx * k..(w_idx + 1) * k];
            let mut norm = 0.0;
            for topic in 0..k {
                let value = model.beta.get(topic, word) * exp_digamma[topic];
                row[topic] = value;
                norm += value;
            }
            if norm <= 0.0 || !norm.is_finite() {
                return Err(Error::Numeric(format!(
                    "responsibility normalizer for word {word} in document {doc_id}"
                )));
            }
            for topic in 0..k {
                row[topic] /= norm;
                new_gamma[topic] += count as f64 * row[topic];
            }
        }
        let max_delta = gamma
            .iter()
            .zip(&new_gamma)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        gamma = new_gamma;
        if max_delta < GAMMA_TOL {
            break;
        }
    }

    for (w_idx, &(word, count)) in doc_counts.iter().enumerate() {
        let row = &phi[w_idx * k..(w_idx + 1) * k];
        for (topic, &responsibility) in row.iter().enumerate() {
            let cell = stats.lambda_acc.get(topic, word) + count as f64 * responsibility;
            stats.lambda_acc.set(topic, word, cell);
        }
    }
    Ok(DocPosterior { doc_id, gamma })
}

/// Elementwise sum of two statistic accumulators.
pub fn merge_stats(a: &SufficientStats, b: &SufficientStats) -> Result<SufficientStats> {
    if a.lambda_acc.rows() != b.lambda_acc.rows() || a.lambda_acc.cols() != b.lambda_acc.cols() {
        return Err(Error::Shape(format!(
            "cannot merge {}x{} stats into {}x{}",
            b.lambda_acc.rows(),
            b.lambda_acc.cols(),
            a.lambda_acc.rows(),
            a.lambda_acc.cols()
        )));
    }
    let mut merged = a.clone();
    for topic in 0..merged.lambda_acc.rows() {
        let dst = merged.lambda_acc.row_mut(topic);
        for (d, s) in dst.iter_mut().zip(b.lambda_acc.row(topic)) {
            *d += s;
        }
    }
    merged.doc_count += b.doc_count;
    Ok(merged)
}

/// Renormalizes each topic row from the accumulated statistics plus a
/// smoothing pseudo-count.
pub fn m_step(model: &LdaModel, stats: &SufficientStats, smoothing: f64) -> Result<LdaModel> {
    if stats.lambda_acc.rows() != model.k || stats.lambda_acc.cols() != model.vocab_size() {
        return Err(Error::Shape("statistics do not match the model".into()));
    }
    if smoothing < 0.0 {
        return Err(Error::BadHyperparam("smoothing must be non-negative".into()));
    }
    let vocab_size = model.vocab_size();
    let mut beta = DenseMatrix::zeros(model.k, vocab_size);
    for topic in 0..model.k {
        let row_sum: f64 = stats.lambda_acc.row(topic).iter().sum::<f64>()
            + smoothing * vocab_size as f64;
        if row_sum <= 0.0 {
            return Err(Error::Numeric(format!(
                "topic {topic} has no mass and no smoothing"
            )));
        }
        for word in 0..vocab_size {
            beta.set(
                topic,
                word,
                (stats.lambda_acc.get(topic, word) + smoothing) / row_sum,
            );
        }
    }
    Ok(LdaModel {
        beta,
        ..model.clone()
    })
}

/// Evidence lower bound of the corpus under the model and per-document
/// posteriors. Word responsibilities are recomputed from gamma, making the
/// value a pure function of its arguments.
pub fn elbo(model: &LdaModel, posteriors: &[DocPosterior], corpus: &TermDocMatrix) -> Result<f64> {
    let k = model.k;
    let kf = k as f64;
    let alpha = model.alpha;
    let prior_const = ln_gamma(kf * alpha) - kf * ln_gamma(alpha);

    let mut bound = 0.0;
    for posterior in posteriors {
        let doc = corpus.column(posterior.doc_id);
        let gamma = &posterior.gamma;
        let gamma_sum: f64 = gamma.iter().sum();
        let dg_sum = digamma(gamma_sum);
        let elog_theta: Vec<f64> = gamma.iter().map(|&g| digamma(g) - dg_sum).collect();

        // E[log p(theta | alpha)] and the q(theta) entropy.
        bound += prior_const;
        bound -= ln_gamma(gamma_sum);
        for topic in 0..k {
            bound += (alpha - 1.0) * elog_theta[topic];
            bound += ln_gamma(gamma[topic]);
            bound -= (gamma[topic] - 1.0) * elog_theta[topic];
        }

        // Word terms under the recomputed responsibilities.
        for &(word, count) in doc {
            let mut phi: Vec<f64> = (0..k)
                .map(|topic| model.beta.get(topic, word) * elog_theta[topic].exp())
                .collect();
            let norm: f64 = phi.iter().sum();
            if norm <= 0.0 || !norm.is_finite() {
                return Err(Error::Numeric(format!("responsibilities of word {word}")));
            }
            phi.iter_mut().for_each(|p| *p /= norm);
            for topic in 0..k {
                let p = phi[topic];
                if p == 0.0 {
                    continue;
                }
                let beta_kw = model.beta.get(topic, word);
                if beta_kw <= 0.0 {
                    return Err(Error::Numeric(format!(
                        "log of empty topic-word cell ({topic}, {word})"
                    )));
                }
                bound += count as f64 * p * (elog_theta[topic] + beta_kw.ln() - p.ln());
            }
        }
    }
    if !bound.is_finite() {
        return Err(Error::Numeric("evidence lower bound".into()));
    }
    Ok(bound)
}

/// Full EM training loop.
///
/// Documents are assigned round-robin to `shards`; shard E-steps may run in
/// parallel and their statistics are merged left-to-right in shard order,
/// so the learned model is independent of the shard count up to
/// floating-point reordering (and bit-identical for `shards = 1`).
#[allow(clippy::too_many_arguments)]
pub fn train(
    corpus: &TermDocMatrix,
    k: usize,
    alpha: f64,
    seed: u64,
    shards: usize,
    max_iters: usize,
    tol: f64,
) -> Result<(LdaModel, Vec<DocPosterior>)> {
    if shards < 1 {
        return Err(Error::BadHyperparam("shard count must be at least 1".into()));
    }
    if corpus.n_docs() == 0 || corpus.n_terms() == 0 {
        return Err(Error::Shape("corpus is empty".into()));
    }
    let mut model = init_model(k, alpha, corpus.n_terms(), seed)?;
    let mut posteriors = Vec::new();

    for _iter in 0..max_iters {
        let shard_results: Vec<Result<(SufficientStats, Vec<DocPosterior>)>> = (0..shards)
            .into_par_iter()
            .map(|shard| {
                let mut stats = SufficientStats::zeros(model.k, model.vocab_size());
                let mut shard_posteriors = Vec::new();
                let mut doc = shard;
                while doc < corpus.n_docs() {
                    let posterior = e_step_doc_into(&model, corpus.column(doc), doc, &mut stats)?;
                    shard_posteriors.push(posterior);
                    stats.doc_count += 1;
                    doc += shards;
                }
                Ok((stats, shard_posteriors))
            })
            .collect();

        // Canonical merge: ascending shard index, pairwise left fold.
        let mut merged = SufficientStats::zeros(model.k, model.vocab_size());
        let mut iter_posteriors = Vec::with_capacity(corpus.n_docs());
        for result in shard_results {
            let (stats, shard_posteriors) = result?;
            merged = merge_stats(&merged, &stats)?;
            iter_posteriors.extend(shard_posteriors);
        }
        iter_posteriors.sort_by_key(|p| p.doc_id);

        model = m_step(&model, &merged, DEFAULT_SMOOTHING)?;
        model.iterations_run += 1;
        let bound = elbo(&model, &iter_posteriors, corpus)?;
        model.elbo_trace.push(bound);
        posteriors = iter_posteriors;

        let trace = &model.elbo_trace;
        if trace.len() >= 2 {
            let prev = trace[trace.len() - 2];
            let rel = (bound - prev).abs() / prev.abs().max(f64::MIN_POSITIVE);
            if rel < tol {
                break;
            }
        }
    }
    Ok((model, posteriors))
}

/// The `n` most probable words of a topic, ties broken lexicographically.
pub fn top_words(
    model: &LdaModel,
    topic: usize,
    n: usize,
    vocab: &crate::corpus::Vocabulary,
) -> Result<Vec<(String, f64)>> {
    if topic >= model.k {
        return Err(Error::BadTopic { topic, k: model.k });
    }
    if vocab.len() != model.vocab_size() {
        return Err(Error::Shape(format!(
            "vocabulary size {} does not match the model ({})",
            vocab.len(),
            model.vocab_size()
        )));
    }
    let row = model.beta.row(topic);
    let mut words: Vec<(String, f64)> = row
        .iter()
        .enumerate()
        .map(|(i, &p)| (vocab.term(i).to_owned(), p))
        .collect();
    words.sort_by(|(ta, pa), (tb, pb)| pb.partial_cmp(pa).unwrap().then_with(|| ta.cmp(tb)));
    words.truncate(n);
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::TermDocMatrix;

    fn vocab_of(terms: &[&str]) -> crate::corpus::Vocabulary {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("v.txt"), terms.join(" ")).unwrap();
        let (_, vocab, _) =
            crate::corpus::load_corpus_with(dir.path(), &Default::default()).unwrap();
        vocab
    }

    fn row_sums(beta: &DenseMatrix) -> Vec<f64> {
        (0..beta.rows()).map(|r| beta.row(r).iter().sum()).collect()
    }

    #[test]
    fn init_is_normalized_and_seeded() {
        let a = init_model(3, 1.0, 10, 7).unwrap();
        let b = init_model(3, 1.0, 10, 7).unwrap();
        let c = init_model(3, 1.0, 10, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.beta, c.beta);
        for sum in row_sums(&a.beta) {
            assert!((sum - 1.0).abs() < 1e-9);
        }
        assert!(a.beta.values().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn single_topic_row_is_normalized() {
        let m = init_model(1, 1.0, 5, 1).unwrap();
        assert!((m.beta.row(0).iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn init_rejects_bad_hyperparameters() {
        assert!(matches!(init_model(0, 1.0, 5, 1), Err(Error::BadHyperparam(_))));
        assert!(matches!(init_model(2, 0.0, 5, 1), Err(Error::BadHyperparam(_))));
        assert!(matches!(init_model(2, -1.0, 5, 1), Err(Error::BadHyperparam(_))));
        assert!(matches!(init_model(2, 1.0, 0, 1), Err(Error::BadHyperparam(_))));
    }

    #[test]
    fn single_topic_gamma_is_exact() {
        let model = init_model(1, 0.7, 4, 3).unwrap();
        let (posterior, _) = e_step_doc(&model, &[(0, 3), (2, 2)], 0).unwrap();
        assert!((posterior.gamma[0] - (0.7 + 5.0)).abs() < 1e-12);
    }

    #[test]
    fn concentrated_beta_concentrates_gamma() {
        // Both words carry their mass in topic 1, so nearly the whole token
        // count lands there.
        let mut model = init_model(2, 0.5, 2, 1).unwrap();
        model.beta = DenseMatrix::from_rows(&[
            vec![0.999999, 0.000001],
            vec![0.000001, 0.999999],
        ]);
        let (posterior, _) = e_step_doc(&model, &[(1, 10)], 0).unwrap();
        assert!(posterior.gamma[1] - 0.5 >= 0.99 * 10.0);
    }

    #[test]
    fn symmetric_beta_gives_uniform_gamma() {
        let mut model = init_model(3, 1.0, 4, 1).unwrap();
        model.beta = DenseMatrix::from_rows(&[vec![0.25; 4], vec![0.25; 4], vec![0.25; 4]]);
        let (posterior, _) = e_step_doc(&model, &[(0, 2), (3, 5)], 0).unwrap();
        for pair in posterior.gamma.windows(2) {
            assert!((pair[0] - pair[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn gamma_mass_is_conserved() {
        let model = init_model(4, 0.3, 6, 9).unwrap();
        let doc = [(0, 2), (1, 1), (4, 7), (5, 3)];
        let (posterior, stats) = e_step_doc(&model, &doc, 0).unwrap();
        let tokens: f64 = doc.iter().map(|&(_, c)| c as f64).sum();
        let gamma_sum: f64 = posterior.gamma.iter().sum();
        assert!((gamma_sum - (0.3 * 4.0 + tokens)).abs() < 1e-6);
        assert!(posterior.gamma.iter().all(|&g| g >= 0.3));
        // The statistics hold exactly the token mass.
        let stat_sum: f64 = stats.lambda_acc.values().iter().sum();
        assert!((stat_sum - tokens).abs() < 1e-9);
    }

    #[test]
    fn empty_document_is_rejected() {
        let model = init_model(2, 1.0, 3, 1).unwrap();
        assert!(matches!(
            e_step_doc(&model, &[], 0),
            Err(Error::DocumentEmpty(_))
        ));
    }

    #[test]
    fn merge_identity_and_commutativity() {
        let model = init_model(2, 1.0, 3, 5).unwrap();
        let (_, a) = e_step_doc(&model, &[(0, 2), (1, 1)], 0).unwrap();
        let (_, b) = e_step_doc(&model, &[(2, 4)], 1).unwrap();
        let zero = SufficientStats::zeros(2, 3);
        assert_eq!(merge_stats(&a, &zero).unwrap(), a);
        assert_eq!(merge_stats(&a, &b).unwrap(), merge_stats(&b, &a).unwrap());
    }

    #[test]
    fn merge_rejects_shape_mismatch() {
        let a = SufficientStats::zeros(2, 3);
        let b = SufficientStats::zeros(2, 4);
        assert!(matches!(merge_stats(&a, &b), Err(Error::Shape(_))));
    }

    #[test]
    fn merging_singletons_matches_single_pass() {
        let model = init_model(3, 0.8, 5, 2).unwrap();
        let docs: Vec<Vec<(usize, u32)>> = vec![
            vec![(0, 1), (1, 2)],
            vec![(2, 3)],
            vec![(3, 1), (4, 1)],
            vec![(0, 2), (4, 2)],
        ];
        // Single-pass accumulation oracle.
        let mut single = SufficientStats::zeros(3, 5);
        for (id, doc) in docs.iter().enumerate() {
            let (_, stats) = e_step_doc(&model, doc, id).unwrap();
            for topic in 0..3 {
                for word in 0..5 {
                    let v = single.lambda_acc.get(topic, word) + stats.lambda_acc.get(topic, word);
                    single.lambda_acc.set(topic, word, v);
                }
            }
            single.doc_count += 1;
        }
        // Pairwise merge of the same four singletons.
        let mut merged = SufficientStats::zeros(3, 5);
        for (id, doc) in docs.iter().enumerate() {
            let (_, stats) = e_step_doc(&model, doc, id).unwrap();
            merged = merge_stats(&merged, &stats).unwrap();
        }
        assert_eq!(merged.doc_count, single.doc_count);
        for topic in 0..3 {
            for word in 0..5 {
                let diff =
                    (merged.lambda_acc.get(topic, word) - single.lambda_acc.get(topic, word)).abs();
                assert!(diff < 1e-12);
            }
        }
    }

    #[test]
    fn m_step_hand_cases() {
        let model = init_model(1, 1.0, 4, 1).unwrap();
        let mut stats = SufficientStats::zeros(1, 4);
        for w in 0..4 {
            stats.lambda_acc.set(0, w, 1.0);
        }
        let updated = m_step(&model, &stats, 0.0).unwrap();
        for w in 0..4 {
            assert!((updated.beta.get(0, w) - 0.25).abs() < 1e-12);
        }

        let model2 = init_model(1, 1.0, 2, 1).unwrap();
        let zero = SufficientStats::zeros(1, 2);
        let smoothed = m_step(&model2, &zero, 0.01).unwrap();
        assert!((smoothed.beta.get(0, 0) - 0.5).abs() < 1e-12);
        assert!((smoothed.beta.get(0, 1) - 0.5).abs() < 1e-12);
        assert!(matches!(
            m_step(&model2, &zero, 0.0),
            Err(Error::Numeric(_))
        ));

        let model3 = init_model(2, 1.0, 2, 1).unwrap();
        let mut cross = SufficientStats::zeros(2, 2);
        cross.lambda_acc.set(0, 0, 3.0);
        cross.lambda_acc.set(0, 1, 1.0);
        cross.lambda_acc.set(1, 0, 1.0);
        cross.lambda_acc.set(1, 1, 3.0);
        let updated = m_step(&model3, &cross, 0.0).unwrap();
        assert!((updated.beta.get(0, 0) - 0.75).abs() < 1e-12);
        assert!((updated.beta.get(0, 1) - 0.25).abs() < 1e-12);
        assert!((updated.beta.get(1, 0) - 0.25).abs() < 1e-12);
        assert!((updated.beta.get(1, 1) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn elbo_matches_closed_form_single_topic() {
        // One topic, one single-token document: every theta/entropy term
        // cancels and the bound is exactly log beta[0][w].
        let model = init_model(1, 0.6, 3, 4).unwrap();
        let corpus = TermDocMatrix::from_columns(3, vec![vec![(2, 1)]]).unwrap();
        let (posterior, _) = e_step_doc(&model, corpus.column(0), 0).unwrap();
        let bound = elbo(&model, &[posterior], &corpus).unwrap();
        assert!((bound - model.beta.get(0, 2).ln()).abs() < 1e-9);
    }

    #[test]
    fn elbo_is_pure() {
        let corpus =
            TermDocMatrix::from_columns(4, vec![vec![(0, 2), (1, 1)], vec![(2, 3), (3, 1)]])
                .unwrap();
        let (model, posteriors) = train(&corpus, 2, 0.5, 3, 1, 5, 0.0).unwrap();
        let a = elbo(&model, &posteriors, &corpus).unwrap();
        let b = elbo(&model, &posteriors, &corpus).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn train_zero_iterations_returns_initial_model() {
        let corpus = TermDocMatrix::from_columns(3, vec![vec![(0, 1)], vec![(1, 2)]]).unwrap();
        let (model, posteriors) = train(&corpus, 2, 1.0, 11, 1, 0, 1e-4).unwrap();
        assert_eq!(model.iterations_run, 0);
        assert!(model.elbo_trace.is_empty());
        assert!(posteriors.is_empty());
        assert_eq!(model, init_model(2, 1.0, 3, 11).unwrap());
    }

    #[test]
    fn train_is_deterministic_for_one_shard() {
        let corpus = TermDocMatrix::from_columns(
            4,
            vec![
                vec![(0, 3), (1, 1)],
                vec![(1, 2), (2, 2)],
                vec![(2, 1), (3, 4)],
            ],
        )
        .unwrap();
        let (a, pa) = train(&corpus, 2, 0.5, 21, 1, 10, 0.0).unwrap();
        let (b, pb) = train(&corpus, 2, 0.5, 21, 1, 10, 0.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(pa, pb);
    }

    #[test]
    fn beta_rows_stay_normalized_through_training() {
        let corpus = TermDocMatrix::from_columns(
            5,
            vec![
                vec![(0, 2), (1, 2)],
                vec![(2, 3), (3, 1)],
                vec![(3, 2), (4, 2)],
            ],
        )
        .unwrap();
        let (model, _) = train(&corpus, 3, 0.4, 2, 1, 15, 0.0).unwrap();
        for sum in row_sums(&model.beta) {
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn top_words_orders_by_probability_then_term() {
        let mut model = init_model(1, 1.0, 3, 1).unwrap();
        model.beta = DenseMatrix::from_rows(&[vec![0.7, 0.2, 0.1]]);
        let vocab = vocab_of(&["aa", "bb", "cc"]);
        let words = top_words(&model, 0, 2, &vocab).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0], ("aa".to_owned(), 0.7));
        assert_eq!(words[1], ("bb".to_owned(), 0.2));

        // n larger than the vocabulary clamps to the full sorted row.
        let all = top_words(&model, 0, 10, &vocab).unwrap();
        assert_eq!(all.len(), 3);

        // Ties fall back to lexicographic order.
        model.beta = DenseMatrix::from_rows(&[vec![0.4, 0.4, 0.2]]);
        let tied = top_words(&model, 0, 2, &vocab).unwrap();
        assert_eq!(tied[0].0, "aa");
        assert_eq!(tied[1].0, "bb");

        assert!(matches!(
            top_words(&model, 1, 2, &vocab),
            Err(Error::BadTopic { .. })
        ));
    }
}
