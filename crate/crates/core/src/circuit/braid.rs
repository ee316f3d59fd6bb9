use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::exact::ExactUnitary;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S1,
    S2,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::S1 => Gen::S2,
            Gen::S2 => Gen::S1,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Gen::S1 => 1,
            Gen::S2 => 2,
        }
    }
}

/// Reduce mod 10 into [−4, 5].
fn balanced(e: i64) -> i8 {
    let r = e.rem_euclid(10);
    (if r > 5 { r - 10 } else { r }) as i8
}

/// A braid word σ_{g₁}^{e₁} σ_{g₂}^{e₂} …, always reduced: neighbouring runs
/// use different generators and exponents are nonzero, in [−4, 5].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BraidWord {
    runs: Vec<(Gen, i8)>,
}

impl BraidWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_runs(runs: impl IntoIterator<Item = (Gen, i64)>) -> Self {
        let mut w = Self::new();
        for (g, e) in runs {
            w.push(g, e);
        }
        w
    }

    pub fn runs(&self) -> &[(Gen, i8)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends σ_g^e on the right, merging with the last run.
    pub fn push(&mut self, g: Gen, e: i64) {
        let e = balanced(e);
        if e == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((lg, le)) if *lg == g => {
                let m = balanced(i64::from(*le) + i64::from(e));
                if m == 0 {
                    self.runs.pop();
                } else {
                    *le = m;
                }
            }
            _ => self.runs.push((g, e)),
        }
    }

    /// Number of elementary σ gates, Σ|e|.
    pub fn sigma_count(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn concat(&self, rhs: &BraidWord) -> BraidWord {
        let mut out = self.clone();
        for &(g, e) in &rhs.runs {
            out.push(g, i64::from(e));
        }
        out
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::from_runs(self.runs.iter().rev().map(|&(g, e)| (g, -i64::from(e))))
    }

    /// The word as single gates σ_g^{±1}.
    pub fn letters(&self) -> Vec<(Gen, i8)> {
        self.runs
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
            .collect()
    }

    /// Exact product of the generators (global phase included).
    pub fn to_exact(&self) -> ExactUnitary {
        self.runs.iter().fold(ExactUnitary::identity(), |acc, &(g, e)| {
            acc.mul(&ExactUnitary::sigma(g, i64::from(e)))
        })
    }
}

impl fmt::Display for BraidWord {
    /// `s1^3 s2^-2 s1`; the empty word prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{}", g.index())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = BraidWord::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b' ' {
                i += 1;
                continue;
            }
            let g = match s.get(i..i + 2) {
                Some("s1") => Gen::S1,
                Some("s2") => Gen::S2,
                _ => return Err(ParseError::new(s, i, "expected s1 or s2")),
            };
            i += 2;
            let mut e = 1i64;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let num_start = i;
                if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                e = s[num_start..i]
                    .parse()
                    .map_err(|_| ParseError::new(s, num_start, "expected an integer exponent"))?;
                if e == 0 {
                    return Err(ParseError::new(s, num_start, "zero exponent"));
                }
                if !(-5..=5).contains(&e) {
                    return Err(ParseError::new(s, num_start, "exponent outside [-5, 5]"));
                }
            }
            if i < bytes.len() && bytes[i] != b' ' {
                return Err(ParseError::new(s, i, "expected a space between items"));
            }
            w.push(g, e);
        }
        Ok(w)
    }
}
