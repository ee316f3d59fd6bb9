//! Breadth-first enumeration of all braids up to a given σ-count.
//!
//! Each unitary is stored once, under a key that is invariant under the
//! global phases ω^s, together with one shortest braid reaching it. The
//! database backs peephole optimization and exhaustive coarse approximation.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_traits::ToPrimitive;
use serde_json::json;

use crate::circuit::{distance, BraidWord, Gen, Matrix2};
use crate::error::OracleError;
use crate::exact::ExactUnitary;
use crate::rings::{tau_real, BigComplex, BigFloat, ZOmega};

pub const FORMAT_VERSION: u32 = 1;
/// Largest depth built unless the caller raises the budget.
pub const DEFAULT_BUDGET: u32 = 12;
const MAGIC: &[u8; 6] = b"FIBDB1";

/// U up to the global phases ω^s: k reduced to {0, 1}, then the sign of
/// (u, v) fixed by taking the lexicographically larger u.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub u: ZOmega,
    pub v: ZOmega,
    pub k: u8,
}

impl CanonicalKey {
    pub fn to_exact(&self) -> ExactUnitary {
        ExactUnitary {
            u: self.u.clone(),
            v: self.v.clone(),
            k: self.k,
        }
    }
}

/// ω^s·U[u,v,k] = U[ω^s u, ω^s v, k+2s]: a shift by s ≡ (k'−k)/2 (mod 5)
/// brings k to k' = k mod 2, and s + 5 gives the other sign.
pub fn canonical_key(e: &ExactUnitary) -> CanonicalKey {
    assert!(!e.u.is_zero(), "exact unitaries have u ≠ 0");
    let k = i64::from(e.k);
    let s = ((k % 2 - k) / 2).rem_euclid(5);
    let a = e.phase(s);
    let b = e.phase(s + 5);
    let pick = if a.u >= b.u { a } else { b };
    CanonicalKey {
        u: pick.u,
        v: pick.v,
        k: pick.k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleEntry {
    pub sigma_count: u32,
    pub word: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDb {
    max_depth: u32,
    census: Vec<u64>,
    entries: BTreeMap<CanonicalKey, OracleEntry>,
}

const LETTERS: [(Gen, i64); 4] = [(Gen::S1, 1), (Gen::S1, -1), (Gen::S2, 1), (Gen::S2, -1)];

/// All unitaries reachable with at most `max_depth` σ gates.
pub fn build_database(max_depth: u32) -> Result<OracleDb, OracleError> {
    build_database_with_budget(max_depth, DEFAULT_BUDGET)
}

pub fn build_database_with_budget(max_depth: u32, budget: u32) -> Result<OracleDb, OracleError> {
    if max_depth > budget {
        return Err(OracleError::BudgetExceeded {
            requested: max_depth as usize,
            budget: budget as usize,
        });
    }
    let sigma: Vec<ExactUnitary> = LETTERS.iter().map(|&(g, e)| ExactUnitary::sigma(g, e)).collect();
    let mut entries = BTreeMap::new();
    let root = canonical_key(&ExactUnitary::identity());
    entries.insert(
        root.clone(),
        OracleEntry {
            sigma_count: 0,
            word: BraidWord::new(),
        },
    );
    let mut census = vec![1u64];
    let mut frontier = vec![root];
    for depth in 1..=max_depth {
        // `frontier` is sorted, and letters are tried in a fixed order, so the
        // first word found for each key does not depend on hashing or threads.
        let mut next = BTreeMap::new();
        for key in &frontier {
            let u = key.to_exact();
            let word = &entries[key].word;
            for (s, &(g, e)) in sigma.iter().zip(&LETTERS) {
                let nk = canonical_key(&u.mul(s));
                if entries.contains_key(&nk) || next.contains_key(&nk) {
                    continue;
                }
                let mut w = word.clone();
                w.push(g, e);
                debug_assert_eq!(w.sigma_count(), depth as usize);
                next.insert(nk, w);
            }
        }
        census.push(next.len() as u64);
        frontier = next.keys().cloned().collect();
        for (k, word) in next {
            entries.insert(
                k,
                OracleEntry {
                    sigma_count: depth,
                    word,
                },
            );
        }
    }
    Ok(OracleDb {
        max_depth,
        census,
        entries,
    })
}

/// Precomputed ω^k and √τ for evaluating many exact unitaries at one
/// precision.
struct Embedding {
    omega: Vec<BigComplex>,
    sqrt_tau: BigFloat,
}

impl Embedding {
    fn new(prec: u32) -> Self {
        Embedding {
            omega: (0..10).map(|k| BigComplex::omega_pow(k, prec)).collect(),
            sqrt_tau: tau_real(prec).sqrt(),
        }
    }

    fn complex(&self, x: &ZOmega) -> BigComplex {
        let prec = self.sqrt_tau.prec();
        let mut acc = BigComplex::zero(prec);
        for (w, c) in self.omega.iter().zip(x.coords()) {
            acc = &acc + &w.scale(&BigFloat::from_bigint(c, prec));
        }
        acc
    }

    fn matrix(&self, e: &ExactUnitary) -> Matrix2 {
        let u = self.complex(&e.u);
        let v = self.complex(&e.v);
        let wk = &self.omega[usize::from(e.k)];
        Matrix2::new(
            u.clone(),
            (&v.conj() * wk).scale(&self.sqrt_tau),
            v.scale(&self.sqrt_tau),
            -(&u.conj() * wk),
        )
    }
}

impl OracleDb {
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Number of keys whose optimal σ-count is exactly n, for n = 0..=max_depth.
    pub fn census(&self) -> &[u64] {
        &self.census
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CanonicalKey, &OracleEntry)> {
        self.entries.iter()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&OracleEntry> {
        self.entries.get(key)
    }

    pub fn lookup(&self, u: &ExactUnitary) -> Option<&BraidWord> {
        self.entries.get(&canonical_key(u)).map(|e| &e.word)
    }

    /// The stored word closest to `target`; ties go to the shorter word,
    /// then to the smaller word in the derived order.
    pub fn best_approximation(&self, target: &Matrix2) -> (BraidWord, BigFloat) {
        let emb = Embedding::new(target.prec());
        let mut best: Option<(BigFloat, u32, &BraidWord)> = None;
        for (key, entry) in &self.entries {
            let d = distance(&emb.matrix(&key.to_exact()), target);
            let better = match &best {
                None => true,
                Some((bd, bc, bw)) => d < *bd || (d == *bd && (entry.sigma_count, &entry.word) < (*bc, *bw)),
            };
            if better {
                best = Some((d, entry.sigma_count, &entry.word));
            }
        }
        let (d, _, w) = best.expect("the database always holds the identity");
        (w.clone(), d)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.max_depth.to_le_bytes());
        out.extend_from_slice(&(self.census.len() as u32).to_le_bytes());
        for c in &self.census {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out.extend_from_slice(&(self.entries.len() as u64).to_le_bytes());
        for (key, entry) in &self.entries {
            let mut rec = Vec::new();
            for c in key.u.coords().into_iter().chain(key.v.coords()) {
                let c = c.to_i64().expect("database coordinates fit in i64");
                rec.extend_from_slice(&c.to_le_bytes());
            }
            rec.push(key.k);
            rec.extend_from_slice(&entry.sigma_count.to_le_bytes());
            rec.extend_from_slice(&(entry.word.runs().len() as u32).to_le_bytes());
            for &(g, e) in entry.word.runs() {
                rec.push(g.index());
                rec.push(e as u8);
            }
            out.extend_from_slice(&(rec.len() as u32).to_le_bytes());
            out.extend_from_slice(&rec);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<OracleDb, OracleError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(6)? != MAGIC {
            return Err(OracleError::Format("bad magic".into()));
        }
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(OracleError::Format(format!("unsupported version {version}")));
        }
        let max_depth = r.u32()?;
        let n_census = r.u32()? as usize;
        if n_census != max_depth as usize + 1 {
            return Err(OracleError::Format("census length does not match depth".into()));
        }
        let census = (0..n_census).map(|_| r.u64()).collect::<Result<Vec<_>, _>>()?;
        let count = r.u64()?;
        let mut entries = BTreeMap::new();
        let mut seen = vec![0u64; n_census];
        for _ in 0..count {
            let len = r.u32()? as usize;
            let mut rec = Reader {
                bytes: r.take(len)?,
                pos: 0,
            };
            let mut c = [0i64; 8];
            for x in &mut c {
                *x = rec.i64()?;
            }
            let k = rec.take(1)?[0];
            let sigma_count = rec.u32()?;
            let n_runs = rec.u32()? as usize;
            let mut runs = Vec::with_capacity(n_runs);
            for _ in 0..n_runs {
                let g = match rec.take(1)?[0] {
                    1 => Gen::S1,
                    2 => Gen::S2,
                    other => return Err(OracleError::Format(format!("bad generator {other}"))),
                };
                runs.push((g, i64::from(rec.take(1)?[0] as i8)));
            }
            let word = BraidWord::from_runs(runs);
            if word.sigma_count() != sigma_count as usize || word.runs().len() != n_runs {
                return Err(OracleError::Format("word is not reduced or count is wrong".into()));
            }
            if sigma_count > max_depth {
                return Err(OracleError::Format("entry deeper than the database".into()));
            }
            seen[sigma_count as usize] += 1;
            let key = CanonicalKey {
                u: ZOmega::new(c[0], c[1], c[2], c[3]),
                v: ZOmega::new(c[4], c[5], c[6], c[7]),
                k,
            };
            entries.insert(key, OracleEntry { sigma_count, word });
        }
        if r.pos != bytes.len() {
            return Err(OracleError::Format("trailing bytes".into()));
        }
        if seen != census || entries.len() as u64 != count {
            return Err(OracleError::Format("census does not match records".into()));
        }
        Ok(OracleDb {
            max_depth,
            census,
            entries,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), OracleError> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<OracleDb, OracleError> {
        OracleDb::from_bytes(&fs::read(path)?)
    }

    /// Human-readable dump; one object per key.
    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<_> = self
            .entries
            .iter()
            .map(|(k, e)| {
                json!({
                    "u": k.u.to_string(),
                    "v": k.v.to_string(),
                    "k": k.k,
                    "sigma_count": e.sigma_count,
                    "braid": e.word.to_string(),
                })
            })
            .collect();
        json!({
            "version": FORMAT_VERSION,
            "max_depth": self.max_depth,
            "census": self.census,
            "records": records,
        })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], OracleError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| OracleError::Format("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, OracleError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, OracleError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn i64(&mut self) -> Result<i64, OracleError> {
        Ok(i64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Slope of log₁₀(census[n]) against n over `range`.
pub fn census_growth_exponent(census: &[u64], range: std::ops::RangeInclusive<usize>) -> f64 {
    let pts: Vec<(f64, f64)> = range.map(|n| (n as f64, (census[n] as f64).log10())).collect();
    crate::stats::linear_fit(&pts).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::evaluate_braid;
    use rand::{Rng, SeedableRng};

    #[test]
    fn key_examples() {
        let s1 = ExactUnitary::sigma1();
        assert_eq!(canonical_key(&s1), canonical_key(&s1.phase(1)));
        assert_ne!(canonical_key(&s1), canonical_key(&ExactUnitary::sigma2()));
        let id = ExactUnitary::identity();
        assert_eq!(canonical_key(&id), canonical_key(&id.phase(5)));
        for s in 0..10 {
            let k = canonical_key(&s1.phase(s));
            assert!(k.k < 2);
            assert_eq!(k, canonical_key(&s1));
        }
    }

    #[test]
    fn census_to_depth_8() {
        let db = build_database(8).unwrap();
        assert_eq!(db.census(), &[1, 4, 12, 25, 48, 94, 176, 330, 624]);
        assert_eq!(db.len() as u64, db.census().iter().sum::<u64>());
    }

    #[test]
    fn budget() {
        assert!(matches!(
            build_database(13),
            Err(OracleError::BudgetExceeded {
                requested: 13,
                budget: 12
            })
        ));
    }

    #[test]
    fn stored_words_match_keys() {
        let db = build_database(6).unwrap();
        for (key, entry) in db.entries() {
            assert_eq!(canonical_key(&entry.word.to_exact()), *key);
            assert_eq!(entry.word.sigma_count(), entry.sigma_count as usize);
        }
    }

    #[test]
    fn lookups() {
        let db = build_database(7).unwrap();
        assert_eq!(db.lookup(&ExactUnitary::identity()), Some(&BraidWord::new()));
        let s1s2: BraidWord = "s1 s2".parse().unwrap();
        assert_eq!(db.lookup(&s1s2.to_exact()).unwrap().sigma_count(), 2);
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        for _ in 0..200 {
            let len = rng.gen_range(0..=7);
            let w = BraidWord::from_runs((0..len).map(|_| LETTERS[rng.gen_range(0..4)]));
            let found = db.lookup(&w.to_exact()).unwrap();
            assert!(found.sigma_count() <= w.sigma_count());
        }
    }

    #[test]
    fn serialization_round_trip() {
        let db = build_database(6).unwrap();
        let bytes = db.to_bytes();
        assert_eq!(&bytes[..6], b"FIBDB1");
        assert_eq!(OracleDb::from_bytes(&bytes).unwrap(), db);
        assert_eq!(build_database(6).unwrap().to_bytes(), bytes);
        assert!(OracleDb::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        let json = db.to_json();
        assert_eq!(json["records"].as_array().unwrap().len(), db.len());
    }

    #[test]
    fn best_approximation_is_consistent() {
        let db = build_database(6).unwrap();
        let p = 128;
        let (w, d) = db.best_approximation(&evaluate_braid(&"s1 s2^-2".parse().unwrap(), p));
        assert_eq!(w.sigma_count(), 3);
        assert!(d < BigFloat::one(p).mul_pow2(-50));
        let target = Matrix2::rz(&BigFloat::from_f64(0.1, p));
        let (w, d) = db.best_approximation(&target);
        let check = distance(&evaluate_braid(&w, p), &target);
        assert!((&check - &d).abs() < BigFloat::one(p).mul_pow2(-60));
    }

    #[test]
    fn growth_exponent() {
        let paper = [1u64, 4, 12, 25, 48, 94, 176, 330, 624, 1174, 2210, 4164, 7842];
        let e = census_growth_exponent(&paper, 6..=12);
        assert!((e - 0.275).abs() < 0.03, "{e}");
    }
}
