//! Structured verdicts produced by every checker.

use std::fmt;

use crate::poset::{Elem, Poset};

/// Named assignment that violates a law, e.g. `z=2 x=0 y=1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub vars: Vec<String>,
    pub values: Vec<Elem>,
}

impl Witness {
    pub fn new<S: AsRef<str>>(vars: &[S], values: Vec<Elem>) -> Witness {
        debug_assert_eq!(vars.len(), values.len());
        Witness { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), values }
    }

    pub fn empty() -> Witness {
        Witness { vars: Vec::new(), values: Vec::new() }
    }

    pub fn value(&self, var: &str) -> Option<Elem> {
        self.vars.iter().position(|v| v == var).map(|i| self.values[i])
    }

    /// Renders the witness with element names from `poset`.
    pub fn display(&self, poset: &Poset) -> String {
        self.vars.iter().zip(&self.values).map(|(v, &e)| format!("{v}={}", poset.name(e))).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().zip(&self.values).map(|(v, e)| format!("{v}={e}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub law: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds(law: impl Into<String>) -> Verdict {
        Verdict { law: law.into(), holds: true, witness: None, note: None }
    }

    pub fn fails(law: impl Into<String>, witness: Witness) -> Verdict {
        Verdict { law: law.into(), holds: false, witness: Some(witness), note: None }
    }

    pub fn from_violation(law: impl Into<String>, violation: Option<Witness>) -> Verdict {
        match violation {
            None => Verdict::holds(law),
            Some(w) => Verdict::fails(law, w),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn get(&self, law: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.law == law)
    }

    pub fn holds(&self, law: &str) -> bool {
        self.get(law).is_some_and(|v| v.holds)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.holds)
    }

    /// One line per verdict: `LAW holds` or `LAW fails x=.. y=..`.
    pub fn render(&self, poset: &Poset) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.law);
            out.push_str(if v.holds { " holds" } else { " fails" });
            if let Some(w) = &v.witness {
                if !w.vars.is_empty() {
                    out.push(' ');
                    out.push_str(&w.display(poset));
                }
            }
            if let Some(note) = &v.note {
                out.push_str(" # ");
                out.push_str(note);
            }
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Verdict> for Report {
    fn from_iter<I: IntoIterator<Item = Verdict>>(iter: I) -> Self {
        Report { verdicts: iter.into_iter().collect() }
    }
}
