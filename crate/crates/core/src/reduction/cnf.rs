//! 3-CNF formulas, DIMACS input and assignments.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Literal over a 0-based variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }

    pub fn value(self, a: &Assignment) -> bool {
        a.values[self.var] != self.negated
    }

    /// DIMACS form: `var + 1`, negative when negated.
    pub fn dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() || c.len() > 3 {
                return Err(Error::InvalidParameter(format!("clause {i} has {} literals", c.len())));
            }
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(Error::InvalidParameter(format!("clause {i} uses variable {} of {num_vars}", l.var + 1)));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds from DIMACS-style signed 1-based literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&l| Lit { var: l.unsigned_abs() as usize - 1, negated: l < 0 }).collect())
            .collect();
        Self::new(num_vars, clauses)
    }

    /// First clause not satisfied by `a`.
    pub fn first_unsatisfied(&self, a: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.value(a)))
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        a.values.len() == self.num_vars && self.first_unsatisfied(a).is_none()
    }

    /// Exhaustive search in increasing binary order (variable 0 is the low bit).
    pub fn brute_force_solve(&self) -> Option<Assignment> {
        assert!(self.num_vars < 32, "exhaustive search is for small formulas");
        (0u32..1 << self.num_vars)
            .map(|bits| Assignment { values: (0..self.num_vars).map(|v| bits >> v & 1 == 1).collect() })
            .find(|a| self.first_unsatisfied(a).is_none())
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{} ", l.dimacs()));
            }
            s.push_str("0\n");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    /// One `±var` per line, 1-based; blank lines and `c` comments are skipped. Every
    /// variable must be given exactly once.
    pub fn parse(text: &str, num_vars: usize) -> Result<Self> {
        let mut values: Vec<Option<bool>> = alloc::vec![None; num_vars];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let bad = |message: String| Error::Dimacs { line: i + 1, message };
            let n: i64 =
                line.trim_start_matches('+').parse().map_err(|_| bad(format!("expected ±var, found {line:?}")))?;
            let var = n.unsigned_abs() as usize;
            if n == 0 || var > num_vars {
                return Err(bad(format!("variable {n} out of range 1..={num_vars}")));
            }
            if values[var - 1].replace(n > 0).is_some() {
                return Err(bad(format!("variable {var} assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or(Error::InvalidParameter(format!("variable {} is unassigned", v + 1))))
            .collect::<Result<_>>()?;
        Ok(Assignment { values })
    }
}

/// Parses DIMACS CNF. Clauses may span lines and end with `0`; `c` lines are comments
/// and a `%` line ends the input. The header counts must match.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.trim();
        let err = |message: String| Error::Dimacs { line: line_no, message };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err("duplicate problem line".into()));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(err(format!("expected `p cnf <vars> <clauses>`, found {line:?}")));
            }
            let vars = parts[2].parse().map_err(|_| err(format!("bad variable count {:?}", parts[2])))?;
            let count = parts[3].parse().map_err(|_| err(format!("bad clause count {:?}", parts[3])))?;
            header = Some((vars, count, line_no));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(err("clause before the problem line".into()));
        };
        for tok in line.split_whitespace() {
            let n: i64 = tok.parse().map_err(|_| err(format!("bad literal {tok:?}")))?;
            if n == 0 {
                if current.is_empty() {
                    return Err(err("empty clause".into()));
                }
                if current.len() > 3 {
                    return Err(err(format!("clause has {} literals; at most 3 are allowed", current.len())));
                }
                clauses.push(core::mem::take(&mut current));
                continue;
            }
            let var = n.unsigned_abs() as usize;
            if var > vars {
                return Err(err(format!("variable {var} exceeds the declared {vars}")));
            }
            if current.is_empty() {
                current_line = line_no;
            }
            current.push(Lit { var: var - 1, negated: n < 0 });
        }
    }
    let Some((vars, count, header_line)) = header else {
        return Err(Error::Dimacs { line: last_line.max(1), message: "missing problem line".into() });
    };
    if !current.is_empty() {
        return Err(Error::Dimacs { line: current_line, message: "clause is not terminated by 0".into() });
    }
    if clauses.len() != count {
        return Err(Error::Dimacs {
            line: header_line,
            message: format!("header declares {count} clauses but {} were given", clauses.len()),
        });
    }
    CnfFormula::new(vars, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parse_examples() {
        let f = parse_dimacs("p cnf 1 1\n1 0").unwrap();
        assert_eq!(f, CnfFormula { num_vars: 1, clauses: vec![vec![Lit::pos(0)]] });
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0").unwrap();
        assert_eq!(f.clauses, vec![vec![Lit::pos(0), Lit::pos(1)], vec![Lit::neg(0)]]);
        let worked = parse_dimacs("c worked example\np cnf 3 4\n1 2 0\n-1 0\n1 -2 3 0\n-3 0\n").unwrap();
        assert_eq!(worked.clauses.len(), 4);
        assert_eq!(worked.brute_force_solve(), None);
        let spanning = parse_dimacs("p cnf 3 1\n1\n-2 3\n0\n%\n0\n").unwrap();
        assert_eq!(spanning.clauses, vec![vec![Lit::pos(0), Lit::neg(1), Lit::pos(2)]]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = |t| match parse_dimacs(t) {
            Err(Error::Dimacs { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(e("p cnf 4 1\n1 2 3 4 0\n"), 2);
        assert_eq!(e("p cnf 1 1\n\n2 0\n"), 3);
        assert_eq!(e("1 0\n"), 1);
        assert_eq!(e("p cnf 1 2\n1 0\n"), 1);
        assert_eq!(e("p cnf 1 1\n1 x 0\n"), 2);
        assert_eq!(e("p cnf 2 1\n1\n2\n"), 2);
        assert_eq!(e("p dnf 1 1\n"), 1);
    }

    #[test]
    fn assignments() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0").unwrap();
        let a = Assignment::parse("-1\n+2\n", 2).unwrap();
        assert_eq!(a.values, vec![false, true]);
        assert!(f.satisfied_by(&a));
        assert_eq!(f.brute_force_solve(), Some(a));
        assert!(Assignment::parse("1\n", 2).is_err());
        assert!(Assignment::parse("1\n-1\n2\n", 2).is_err());
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
