//! The line-delimited document formats.
//!
//! Numbers are exact integer pairs, never decimals: a series term is the
//! triple `numerator denominator exponent`. One object per file, `#`
//! starts a comment, encoding is UTF-8.
//!
//! Germ documents:
//!
//! ```text
//! germ cusp
//! precision 64        # optional: data only known modulo t^64
//! branch b1           # label optional
//! x 1 1 2             # x += (1/1) t^2
//! y 1 1 3
//! ```
//!
//! Ledger documents:
//!
//! ```text
//! ledger cross-cap
//! n 2
//! r 1
//! chi 2 1             # chi(X_2 cap M) = 1
//! upstairs mu 0       # or: upstairs chi <integer>
//! isolated true
//! s 0
//! ```

use std::collections::BTreeMap;
use std::fmt;

use germ_core::ledger::UpstairsDatum;
use germ_core::{Branch, CurveGerm, Rat, StratumTable, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed germ description: name, term lists per branch, optional
/// precision hint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermDocument {
    pub name: String,
    pub branches: Vec<BranchTerms>,
    pub precision_hint: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTerms {
    pub label: String,
    pub x: Vec<(usize, Rat)>,
    pub y: Vec<(usize, Rat)>,
}

impl GermDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut name: Option<String> = None;
        let mut precision_hint: Option<usize> = None;
        let mut branches: Vec<BranchTerms> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().expect("nonempty line has a first word");
            match keyword {
                "germ" => {
                    if name.is_some() {
                        return err(lineno, "duplicate germ line");
                    }
                    let rest = line["germ".len()..].trim();
                    if rest.is_empty() {
                        return err(lineno, "germ line needs a name");
                    }
                    name = Some(rest.to_string());
                }
                "precision" => {
                    if name.is_none() {
                        return err(lineno, "precision must follow the germ line");
                    }
                    if !branches.is_empty() {
                        return err(lineno, "precision must come before the first branch");
                    }
                    if precision_hint.is_some() {
                        return err(lineno, "duplicate precision line");
                    }
                    let n = parse_usize(words.next(), lineno, "precision")?;
                    if n == 0 {
                        return err(lineno, "precision must be positive");
                    }
                    expect_end(words, lineno)?;
                    precision_hint = Some(n);
                }
                "branch" => {
                    if name.is_none() {
                        return err(lineno, "branch must follow the germ line");
                    }
                    let label = match words.next() {
                        Some(l) => l.to_string(),
                        None => format!("b{}", branches.len() + 1),
                    };
                    expect_end(words, lineno)?;
                    if branches.iter().any(|b| b.label == label) {
                        return err(lineno, format!("duplicate branch label {label}"));
                    }
                    branches.push(BranchTerms {
                        label,
                        x: Vec::new(),
                        y: Vec::new(),
                    });
                }
                "x" | "y" => {
                    let branch = match branches.last_mut() {
                        Some(b) => b,
                        None => return err(lineno, format!("{keyword} term outside of a branch")),
                    };
                    let numerator = parse_i64(words.next(), lineno, "numerator")?;
                    let denominator = parse_i64(words.next(), lineno, "denominator")?;
                    let exponent = parse_usize(words.next(), lineno, "exponent")?;
                    expect_end(words, lineno)?;
                    if denominator <= 0 {
                        return err(lineno, "denominator must be positive");
                    }
                    if numerator == 0 {
                        return err(lineno, "zero coefficient term");
                    }
                    let component = if keyword == "x" {
                        &mut branch.x
                    } else {
                        &mut branch.y
                    };
                    if component.iter().any(|&(e, _)| e == exponent) {
                        return err(
                            lineno,
                            format!("duplicate {keyword} term at exponent {exponent} in branch {}", branch.label),
                        );
                    }
                    component.push((exponent, Rat::new(numerator, denominator)));
                }
                other => return err(lineno, format!("unknown keyword {other}")),
            }
        }
        let name = match name {
            Some(n) => n,
            None => return err(text.lines().count().max(1), "missing germ line"),
        };
        if branches.is_empty() {
            return err(text.lines().count().max(1), "germ has no branches");
        }
        Ok(GermDocument {
            name,
            branches,
            precision_hint,
        })
    }

    /// The germ this document describes.
    pub fn to_germ(&self) -> Result<CurveGerm, germ_core::Error> {
        let branches = self
            .branches
            .iter()
            .map(|b| match self.precision_hint {
                Some(w) => Branch::new(
                    b.label.clone(),
                    TruncatedSeries::from_terms(b.x.iter().cloned(), w),
                    TruncatedSeries::from_terms(b.y.iter().cloned(), w),
                ),
                None => Branch::polynomial(b.label.clone(), b.x.iter().cloned(), b.y.iter().cloned()),
            })
            .collect();
        CurveGerm::new(branches)
    }

    /// Render back to document text; parsing the result reproduces the
    /// document.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("germ {}\n", self.name));
        if let Some(w) = self.precision_hint {
            out.push_str(&format!("precision {w}\n"));
        }
        for branch in &self.branches {
            out.push_str(&format!("branch {}\n", branch.label));
            for (component, terms) in [("x", &branch.x), ("y", &branch.y)] {
                for (e, c) in terms {
                    out.push_str(&format!(
                        "{component} {} {} {e}\n",
                        c.numerator(),
                        c.denominator()
                    ));
                }
            }
        }
        out
    }

    /// Document text for an existing germ (used to serialize failing
    /// random germs for replay).
    pub fn from_germ(name: &str, germ: &CurveGerm) -> Self {
        let branches = germ
            .branches()
            .iter()
            .map(|b| BranchTerms {
                label: b.label().to_string(),
                x: b.x().terms().map(|(e, c)| (e, c.clone())).collect(),
                y: b.y().terms().map(|(e, c)| (e, c.clone())).collect(),
            })
            .collect();
        GermDocument {
            name: name.to_string(),
            branches,
            precision_hint: None,
        }
    }
}

/// A parsed stratum-table description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerDocument {
    pub name: String,
    pub n: usize,
    pub r: usize,
    pub chi: BTreeMap<usize, i64>,
    pub upstairs: Vec<UpstairsDatum>,
    pub isolated: bool,
    pub s: Option<usize>,
}

impl LedgerDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut name: Option<String> = None;
        let mut n: Option<usize> = None;
        let mut r: Option<usize> = None;
        let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
        let mut upstairs: Vec<UpstairsDatum> = Vec::new();
        let mut isolated = false;
        let mut s: Option<usize> = None;
        let mut last = 1usize;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            last = lineno;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().expect("nonempty line has a first word");
            match keyword {
                "ledger" => {
                    if name.is_some() {
                        return err(lineno, "duplicate ledger line");
                    }
                    let rest = line["ledger".len()..].trim();
                    if rest.is_empty() {
                        return err(lineno, "ledger line needs a name");
                    }
                    name = Some(rest.to_string());
                }
                "n" => {
                    if n.is_some() {
                        return err(lineno, "duplicate n line");
                    }
                    n = Some(parse_usize(words.next(), lineno, "n")?);
                    expect_end(words, lineno)?;
                }
                "r" => {
                    if r.is_some() {
                        return err(lineno, "duplicate r line");
                    }
                    r = Some(parse_usize(words.next(), lineno, "r")?);
                    expect_end(words, lineno)?;
                }
                "chi" => {
                    let k = parse_usize(words.next(), lineno, "stratum index k")?;
                    let value = parse_i64(words.next(), lineno, "chi value")?;
                    expect_end(words, lineno)?;
                    if chi.insert(k, value).is_some() {
                        return err(lineno, format!("duplicate chi entry for k = {k}"));
                    }
                }
                "upstairs" => {
                    let kind = words.next();
                    match kind {
                        Some("mu") => {
                            let v = parse_usize(words.next(), lineno, "mu value")?;
                            upstairs.push(UpstairsDatum::MilnorNumber(v));
                        }
                        Some("chi") => {
                            let v = parse_i64(words.next(), lineno, "chi value")?;
                            upstairs.push(UpstairsDatum::ReducedEuler(v));
                        }
                        _ => return err(lineno, "upstairs entry must be `mu <nat>` or `chi <int>`"),
                    }
                    expect_end(words, lineno)?;
                }
                "isolated" => {
                    match words.next() {
                        Some("true") => isolated = true,
                        Some("false") => isolated = false,
                        _ => return err(lineno, "isolated must be true or false"),
                    }
                    expect_end(words, lineno)?;
                }
                "s" => {
                    if s.is_some() {
                        return err(lineno, "duplicate s line");
                    }
                    s = Some(parse_usize(words.next(), lineno, "s")?);
                    expect_end(words, lineno)?;
                }
                other => return err(lineno, format!("unknown keyword {other}")),
            }
        }
        let name = name.ok_or(ParseError {
            line: last,
            message: "missing ledger line".to_string(),
        })?;
        let n = n.ok_or(ParseError {
            line: last,
            message: "missing n line".to_string(),
        })?;
        let r = r.ok_or(ParseError {
            line: last,
            message: "missing r line".to_string(),
        })?;
        Ok(LedgerDocument {
            name,
            n,
            r,
            chi,
            upstairs,
            isolated,
            s,
        })
    }

    pub fn to_table(&self) -> Result<StratumTable, germ_core::Error> {
        StratumTable::new(
            self.n,
            self.r,
            self.chi.clone(),
            self.upstairs.clone(),
            self.isolated,
            self.s,
        )
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

fn parse_usize(word: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let w = word.ok_or(ParseError {
        line,
        message: format!("missing {what}"),
    })?;
    w.parse().map_err(|_| ParseError {
        line,
        message: format!("{what} must be a nonnegative integer, got {w}"),
    })
}

fn parse_i64(word: Option<&str>, line: usize, what: &str) -> Result<i64, ParseError> {
    let w = word.ok_or(ParseError {
        line,
        message: format!("missing {what}"),
    })?;
    w.parse().map_err(|_| ParseError {
        line,
        message: format!("{what} must be an integer, got {w}"),
    })
}

fn expect_end<'a, I: Iterator<Item = &'a str>>(mut words: I, line: usize) -> Result<(), ParseError> {
    match words.next() {
        None => Ok(()),
        Some(extra) => err(line, format!("unexpected trailing token {extra}")),
    }
}
