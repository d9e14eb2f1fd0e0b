use std::fmt;

use serde::Serialize;

use crate::par::Exec;

/// Witnesses kept per law; the violation count is always exact.
pub const WITNESS_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub elements: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub law: String,
    pub status: Status,
    pub checked: u64,
    pub violations: u64,
    pub witnesses: Vec<Violation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

impl LawResult {
    pub fn new(law: impl Into<String>, checked: u64, violations: u64, witnesses: Vec<Violation>) -> Self {
        LawResult {
            law: law.into(),
            status: Status::from_ok(violations == 0),
            checked,
            violations,
            witnesses,
        }
    }

    /// A single yes/no fact, reported as one instance.
    pub fn single(law: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Self {
        let witnesses = if ok {
            Vec::new()
        } else {
            vec![Violation {
                elements: Vec::new(),
                detail: detail(),
            }]
        };
        LawResult::new(law, 1, u64::from(!ok), witnesses)
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub subject: String,
    pub suite: String,
    pub status: Status,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>, suite: impl Into<String>, laws: Vec<LawResult>) -> Self {
        let status = Status::from_ok(laws.iter().all(LawResult::passed));
        LawReport {
            subject: subject.into(),
            suite: suite.into(),
            status,
            laws,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn violations(&self) -> u64 {
        self.laws.iter().map(|l| l.violations).sum()
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn first_witness(&self) -> Option<&Violation> {
        self.laws.iter().flat_map(|l| l.witnesses.iter()).next()
    }

    /// Concatenate several reports on the same subject under a new suite name.
    pub fn combine(subject: impl Into<String>, suite: impl Into<String>, parts: Vec<LawReport>) -> Self {
        let laws = parts.into_iter().flat_map(|r| r.laws).collect();
        LawReport::new(subject, suite, laws)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} on {}: {}", self.suite, self.subject, self.status)?;
        for law in &self.laws {
            write!(f, "  [{}] {} ({} checked", law.status, law.law, law.checked)?;
            if law.violations > 0 {
                write!(f, ", {} violation(s)", law.violations)?;
            }
            writeln!(f, ")")?;
            for w in &law.witnesses {
                writeln!(f, "      witness: {}", w.detail)?;
            }
        }
        Ok(())
    }
}

/// Run `check` over every tuple in `0..n` of the given arity.
///
/// The first coordinate is the outer loop handed to `exec`; the remaining
/// coordinates are enumerated in lexicographic order inside each task.
pub(crate) fn sweep<F>(exec: Exec, law: &str, n: usize, arity: u32, check: F) -> LawResult
where
    F: Fn(&[usize]) -> Option<String> + Sync + Send,
{
    assert!((1..=3).contains(&arity));
    let inner = n.pow(arity - 1);
    let rows = exec.map_range(n, |first| {
        let mut count = 0u64;
        let mut found = Vec::new();
        let mut tuple = vec![0usize; arity as usize];
        tuple[0] = first;
        for t in 0..inner {
            let mut rest = t;
            for slot in tuple[1..].iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            if let Some(detail) = check(&tuple) {
                count += 1;
                if found.len() < WITNESS_CAP {
                    found.push(Violation {
                        elements: tuple.clone(),
                        detail,
                    });
                }
            }
        }
        (count, found)
    });
    let mut violations = 0;
    let mut witnesses = Vec::new();
    for (count, found) in rows {
        violations += count;
        for w in found {
            if witnesses.len() < WITNESS_CAP {
                witnesses.push(w);
            }
        }
    }
    LawResult::new(law, (n as u64).pow(arity), violations, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_counts_every_tuple_and_caps_witnesses() {
        let r = sweep(Exec::Sequential, "x+y+z even", 4, 3, |t| {
            ((t[0] + t[1] + t[2]) % 2 == 1).then(|| format!("{t:?}"))
        });
        assert_eq!(r.checked, 64);
        assert_eq!(r.violations, 32);
        assert_eq!(r.witnesses.len(), WITNESS_CAP);
        assert_eq!(r.witnesses[0].elements, vec![0, 0, 1]);
        let p = sweep(Exec::Parallel, "x+y+z even", 4, 3, |t| {
            ((t[0] + t[1] + t[2]) % 2 == 1).then(|| format!("{t:?}"))
        });
        assert_eq!(r, p);
    }
}
