use super::braid::BraidWord;
use crate::exact::ExactUnitary;
use crate::oracle::{canonical_key, OracleDb};

/// Shortens a braid by replacing windows with optimal database words.
///
/// Without a database this only re-normalizes runs. With one, each pass
/// walks the unit letters left to right; at every position it takes the
/// window (up to twice the database depth) whose stored word saves the
/// most gates, if any. Passes repeat until nothing improves, so the count
/// never increases.
pub fn peephole_optimize(w: &BraidWord, db: Option<&OracleDb>) -> BraidWord {
    let mut cur = BraidWord::from_runs(w.runs().iter().map(|&(g, e)| (g, i64::from(e))));
    let Some(db) = db else {
        return cur;
    };
    let max_window = 2 * db.max_depth() as usize;
    loop {
        let letters = cur.letters();
        let mut out = BraidWord::new();
        let mut i = 0;
        while i < letters.len() {
            let mut acc = ExactUnitary::identity();
            let mut best: Option<(usize, &BraidWord)> = None;
            let mut best_saving = 0;
            for len in 1..=max_window.min(letters.len() - i) {
                let (g, e) = letters[i + len - 1];
                acc = acc.mul(&ExactUnitary::sigma(g, i64::from(e)));
                if let Some(entry) = db.get(&canonical_key(&acc)) {
                    let saving = len.saturating_sub(entry.sigma_count as usize);
                    if saving > best_saving {
                        best_saving = saving;
                        best = Some((len, &entry.word));
                    }
                }
            }
            match best {
                Some((len, word)) => {
                    out = out.concat(word);
                    i += len;
                }
                None => {
                    let (g, e) = letters[i];
                    out.push(g, i64::from(e));
                    i += 1;
                }
            }
        }
        // Exact, so stronger than any numeric recheck.
        debug_assert_eq!(canonical_key(&out.to_exact()), canonical_key(&cur.to_exact()));
        if out.sigma_count() >= cur.sigma_count() {
            return cur;
        }
        cur = out;
    }
}
