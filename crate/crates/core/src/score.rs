//! Mixed-language error rates: character error rate over the Mandarin
//! part, word error rate over the English part, and a pooled mixed error
//! rate over all units.
//!
//! A transcript is first broken into scoring units: Mandarin tokens
//! explode into single characters, English tokens stay whole and are
//! case-folded. Units are aligned by minimum edit distance and each error
//! is attributed to a language: substitutions and deletions to the
//! reference unit, insertions to the hypothesis unit (they have no
//! reference counterpart). Reference and hypothesis roles are not
//! symmetric: an insertion against one direction is a deletion against
//! the other, and the denominators differ.

use thiserror::Error;

use crate::corpus::{Token, Utterance};
use crate::langtag::Lang;

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("utterance {utt}: empty reference, rates are undefined")]
    EmptyReference { utt: String },
}

/// One unit of the error-rate computation: a Mandarin character or a
/// case-folded English word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringUnit {
    pub text: String,
    pub lang: Lang,
}

pub fn tokenize_for_scoring(transcript: &[Token]) -> Vec<ScoringUnit> {
    let mut units = Vec::new();
    for tok in transcript {
        match tok.lang {
            Lang::Cn => units.extend(tok.text.chars().map(|c| ScoringUnit {
                text: c.to_string(),
                lang: Lang::Cn,
            })),
            Lang::En => units.push(ScoringUnit {
                text: tok.text.to_lowercase(),
                lang: Lang::En,
            }),
        }
    }
    units
}

/// One step of an edit alignment; indices point into the reference and
/// hypothesis unit lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditOp {
    Match { r: usize, h: usize },
    Substitute { r: usize, h: usize },
    Insert { h: usize },
    Delete { r: usize },
}

/// Minimum-edit-distance alignment with uniform costs. Where several
/// alignments tie, the backtrace prefers match, then substitution, then
/// insertion, then deletion.
pub fn align_edit(reference: &[ScoringUnit], hypothesis: &[ScoringUnit]) -> Vec<EditOp> {
    let m = reference.len();
    let n = hypothesis.len();
    let mut dist = vec![vec![0usize; n + 1]; m + 1];
    for (i, row) in dist.iter_mut().enumerate() {
        row[0] = i;
    }
    for (j, cell) in dist[0].iter_mut().enumerate() {
        *cell = j;
    }
    for i in 1..=m {
        for j in 1..=n {
            let sub = dist[i - 1][j - 1] + usize::from(reference[i - 1] != hypothesis[j - 1]);
            let ins = dist[i][j - 1] + 1;
            let del = dist[i - 1][j] + 1;
            dist[i][j] = sub.min(ins).min(del);
        }
    }

    let mut ops = Vec::with_capacity(m.max(n));
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        let here = dist[i][j];
        if i > 0 && j > 0 && reference[i - 1] == hypothesis[j - 1] && here == dist[i - 1][j - 1] {
            ops.push(EditOp::Match { r: i - 1, h: j - 1 });
            i -= 1;
            j -= 1;
        } else if i > 0 && j > 0 && here == dist[i - 1][j - 1] + 1 {
            ops.push(EditOp::Substitute { r: i - 1, h: j - 1 });
            i -= 1;
            j -= 1;
        } else if j > 0 && here == dist[i][j - 1] + 1 {
            ops.push(EditOp::Insert { h: j - 1 });
            j -= 1;
        } else {
            ops.push(EditOp::Delete { r: i - 1 });
            i -= 1;
        }
    }
    ops.reverse();
    ops
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreReport {
    pub cn_errors: usize,
    pub cn_refs: usize,
    pub en_errors: usize,
    pub en_refs: usize,
    pub cer: f64,
    pub wer: f64,
    pub mer: f64,
}

impl ScoreReport {
    pub fn from_counts(cn_errors: usize, cn_refs: usize, en_errors: usize, en_refs: usize) -> Self {
        let rate = |e: usize, r: usize| {
            if r > 0 {
                e as f64 / r as f64
            } else if e == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        };
        Self {
            cn_errors,
            cn_refs,
            en_errors,
            en_refs,
            cer: rate(cn_errors, cn_refs),
            wer: rate(en_errors, en_refs),
            mer: rate(cn_errors + en_errors, cn_refs + en_refs),
        }
    }
}

pub fn score_pair(reference: &Utterance, hypothesis: &[Token]) -> Result<ScoreReport, ScoreError> {
    score_tokens(&reference.id, &reference.transcript, hypothesis)
}

/// Score a hypothesis token sequence against a reference one. `utt_id`
/// only labels the error when the reference is empty.
pub fn score_tokens(
    utt_id: &str,
    reference: &[Token],
    hypothesis: &[Token],
) -> Result<ScoreReport, ScoreError> {
    let ref_units = tokenize_for_scoring(reference);
    if ref_units.is_empty() {
        return Err(ScoreError::EmptyReference { utt: utt_id.to_string() });
    }
    let hyp_units = tokenize_for_scoring(hypothesis);

    let cn_refs = ref_units.iter().filter(|u| u.lang == Lang::Cn).count();
    let en_refs = ref_units.len() - cn_refs;
    let (mut cn_errors, mut en_errors) = (0, 0);
    for op in align_edit(&ref_units, &hyp_units) {
        let lang = match op {
            EditOp::Match { .. } => continue,
            EditOp::Substitute { r, .. } | EditOp::Delete { r } => ref_units[r].lang,
            EditOp::Insert { h } => hyp_units[h].lang,
        };
        match lang {
            Lang::Cn => cn_errors += 1,
            Lang::En => en_errors += 1,
        }
    }
    Ok(ScoreReport::from_counts(cn_errors, cn_refs, en_errors, en_refs))
}

/// Pool per-utterance reports by summing error and reference counts; the
/// aggregate rates come from the summed counts, not from averaging rates.
pub fn aggregate(reports: &[ScoreReport]) -> ScoreReport {
    let mut sums = (0, 0, 0, 0);
    for r in reports {
        sums.0 += r.cn_errors;
        sums.1 += r.cn_refs;
        sums.2 += r.en_errors;
        sums.3 += r.en_refs;
    }
    ScoreReport::from_counts(sums.0, sums.1, sums.2, sums.3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{AudioSource, Provenance};
    use std::collections::HashMap;

    fn toks(words: &[&str]) -> Vec<Token> {
        words.iter().map(|w| Token::new(w).unwrap()).collect()
    }

    fn units(words: &[&str]) -> Vec<ScoringUnit> {
        tokenize_for_scoring(&toks(words))
    }

    fn ref_utt(words: &[&str]) -> Utterance {
        Utterance {
            id: "ref".into(),
            speaker: "s".into(),
            audio: AudioSource::Path("/x.wav".into()),
            transcript: toks(words),
            provenance: Provenance::Original,
        }
    }

    #[test]
    fn cn_tokens_explode_and_en_tokens_fold() {
        let got = units(&["你好", "hello"]);
        let texts: Vec<&str> = got.iter().map(|u| u.text.as_str()).collect();
        assert_eq!(texts, vec!["你", "好", "hello"]);
        assert_eq!(
            got.iter().map(|u| u.lang).collect::<Vec<_>>(),
            vec![Lang::Cn, Lang::Cn, Lang::En]
        );
        assert_eq!(units(&["ABC"]), units(&["abc"]));
        assert!(units(&[]).is_empty());
    }

    #[test]
    fn identical_sequences_align_as_matches() {
        let r = units(&["你好", "world"]);
        let ops = align_edit(&r, &r);
        assert_eq!(
            ops,
            vec![
                EditOp::Match { r: 0, h: 0 },
                EditOp::Match { r: 1, h: 1 },
                EditOp::Match { r: 2, h: 2 },
            ]
        );
    }

    #[test]
    fn missing_hypothesis_unit_is_a_deletion() {
        let ops = align_edit(&units(&["你好"]), &units(&["你"]));
        assert_eq!(ops, vec![EditOp::Match { r: 0, h: 0 }, EditOp::Delete { r: 1 }]);
    }

    /// Edit distance stated directly as its recursive definition,
    /// memoized so exhaustive small cases stay cheap.
    fn oracle(r: &[ScoringUnit], h: &[ScoringUnit]) -> usize {
        fn go(
            r: &[ScoringUnit],
            h: &[ScoringUnit],
            memo: &mut HashMap<(usize, usize), usize>,
        ) -> usize {
            if r.is_empty() {
                return h.len();
            }
            if h.is_empty() {
                return r.len();
            }
            let key = (r.len(), h.len());
            if let Some(&d) = memo.get(&key) {
                return d;
            }
            let sub = go(&r[1..], &h[1..], memo) + usize::from(r[0] != h[0]);
            let del = go(&r[1..], h, memo) + 1;
            let ins = go(r, &h[1..], memo) + 1;
            let d = sub.min(del).min(ins);
            memo.insert(key, d);
            d
        }
        go(r, h, &mut HashMap::new())
    }

    fn distance(ops: &[EditOp]) -> usize {
        ops.iter().filter(|op| !matches!(op, EditOp::Match { .. })).count()
    }

    fn replay(ops: &[EditOp], r: &[ScoringUnit], h: &[ScoringUnit]) -> Vec<ScoringUnit> {
        let mut out = Vec::new();
        for op in ops {
            match op {
                EditOp::Match { r: i, h: j } => {
                    assert_eq!(r[*i], h[*j]);
                    out.push(r[*i].clone());
                }
                EditOp::Substitute { r: i, h: j } => {
                    assert_ne!(r[*i], h[*j]);
                    out.push(h[*j].clone());
                }
                EditOp::Insert { h: j } => out.push(h[*j].clone()),
                EditOp::Delete { .. } => {}
            }
        }
        out
    }

    #[test]
    fn alignment_matches_recursive_oracle_exhaustively() {
        let alphabet = ["a", "b"];
        let mut seqs: Vec<Vec<ScoringUnit>> = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for s in &frontier {
                for sym in alphabet {
                    let mut t: Vec<ScoringUnit> = s.clone();
                    t.push(ScoringUnit { text: sym.into(), lang: Lang::En });
                    next.push(t);
                }
            }
            seqs.extend(next.iter().cloned());
            frontier = next;
        }
        for r in &seqs {
            for h in &seqs {
                let ops = align_edit(r, h);
                assert_eq!(distance(&ops), oracle(r, h), "ref {r:?} hyp {h:?}");
                assert_eq!(&replay(&ops, r, h), h);
            }
        }
    }

    #[test]
    fn worked_example_gives_half_cer_third_mer() {
        let report = score_pair(&ref_utt(&["你", "好", "hello"]), &toks(&["你", "坏", "hello"]))
            .unwrap();
        assert_eq!(report.cn_errors, 1);
        assert_eq!(report.cn_refs, 2);
        assert_eq!(report.en_errors, 0);
        assert_eq!(report.en_refs, 1);
        assert!((report.cer - 0.5).abs() < 1e-15);
        assert_eq!(report.wer, 0.0);
        assert!((report.mer - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn perfect_hypothesis_scores_zero() {
        let report = score_pair(&ref_utt(&["你好", "hello"]), &toks(&["你好", "hello"])).unwrap();
        assert_eq!((report.cer, report.wer, report.mer), (0.0, 0.0, 0.0));
    }

    #[test]
    fn empty_reference_is_an_error() {
        let err = score_pair(&ref_utt(&[]), &toks(&["hi"])).unwrap_err();
        assert!(err.to_string().contains("empty reference"));
    }

    #[test]
    fn insertions_attribute_to_hypothesis_language() {
        let report = score_pair(&ref_utt(&["你"]), &toks(&["你", "extra"])).unwrap();
        assert_eq!(report.cn_errors, 0);
        assert_eq!(report.en_errors, 1);
        assert_eq!(report.en_refs, 0);
        assert_eq!(report.wer, f64::INFINITY);
        assert!((report.mer - 1.0).abs() < 1e-15);
    }

    #[test]
    fn swapping_ref_and_hyp_changes_the_rates() {
        let a = score_pair(&ref_utt(&["go"]), &toks(&["go", "home"])).unwrap();
        let b = score_pair(&ref_utt(&["go", "home"]), &toks(&["go"])).unwrap();
        assert_eq!(a.en_errors, 1);
        assert_eq!(b.en_errors, 1);
        assert!((a.wer - 1.0).abs() < 1e-15);
        assert!((b.wer - 0.5).abs() < 1e-15);
    }

    #[test]
    fn aggregate_sums_counts_rather_than_averaging_rates() {
        let r1 = ScoreReport::from_counts(1, 1, 0, 0);
        let r2 = ScoreReport::from_counts(0, 9, 0, 0);
        let total = aggregate(&[r1, r2]);
        assert_eq!(total.cn_errors, 1);
        assert_eq!(total.cn_refs, 10);
        assert!((total.cer - 0.1).abs() < 1e-15);
        assert!((total.mer - 0.1).abs() < 1e-15);
        let mean_of_rates = (r1.cer + r2.cer) / 2.0;
        assert!((mean_of_rates - 0.5).abs() < 1e-15);
    }

    #[test]
    fn errors_pool_across_languages_in_mer() {
        let report =
            score_pair(&ref_utt(&["你", "好", "big", "cat"]), &toks(&["你", "bad", "cat"]))
                .unwrap();
        assert_eq!(report.cn_errors + report.en_errors, 2);
        assert_eq!(report.cn_refs + report.en_refs, 4);
        assert!((report.mer - 0.5).abs() < 1e-15);
    }
}
