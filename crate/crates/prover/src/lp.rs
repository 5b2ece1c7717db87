//! Exact two-phase simplex over [`Q`] with Bland's anti-cycling rule.
//!
//! All variables are implicitly nonnegative.

use std::fmt;

use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
            Cmp::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<Q>,
    pub cmp: Cmp,
    pub rhs: Q,
}

impl Row {
    pub fn lhs(&self, x: &[Q]) -> Q {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * v)
            .sum()
    }

    /// Signed slack, nonnegative exactly when `x` satisfies the row
    /// (for equalities the negated absolute residual).
    pub fn slack(&self, x: &[Q]) -> Q {
        let lhs = self.lhs(x);
        match self.cmp {
            Cmp::Le => &self.rhs - &lhs,
            Cmp::Ge => &lhs - &self.rhs,
            Cmp::Eq => {
                let d = &lhs - &self.rhs;
                if d.is_negative() {
                    d
                } else {
                    -d
                }
            }
        }
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        !self.slack(x).is_negative()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

impl Outcome {
    pub fn point(&self) -> Option<&[Q]> {
        match self {
            Outcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

struct Tableau {
    t: Vec<Vec<Q>>,
    obj: Vec<Q>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let p = self.t[pr][pc].clone();
        let nz: Vec<usize> = (0..=self.cols).filter(|&k| !self.t[pr][k].is_zero()).collect();
        for &k in &nz {
            self.t[pr][k] = &self.t[pr][k] / &p;
        }
        let prow: Vec<(usize, Q)> = nz.iter().map(|&k| (k, self.t[pr][k].clone())).collect();
        let eliminate = |row: &mut Vec<Q>| {
            let f = row[pc].clone();
            if f.is_zero() {
                return;
            }
            for (k, v) in &prow {
                row[*k] = &row[*k] - &(&f * v);
            }
        };
        for i in 0..self.t.len() {
            if i != pr {
                eliminate(&mut self.t[i]);
            }
        }
        eliminate(&mut self.obj);
        self.basis[pr] = pc;
    }

    /// Bland's rule iterations on `obj` restricted to columns `< limit`.
    /// Returns false when unbounded.
    fn run(&mut self, limit: usize) -> bool {
        loop {
            let Some(pc) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][pc].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.t[i][pc];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((pr, _)) => self.pivot(pr, pc),
            }
        }
    }
}

/// Maximizes `objective · x` over `rows` with `x ≥ 0`; without an objective
/// only feasibility is decided and the phase-one vertex is returned.
pub fn solve(n: usize, rows: &[Row], objective: Option<&[Q]>) -> Outcome {
    let m = rows.len();
    let mut norm: Vec<(Vec<Q>, Cmp, Q)> = Vec::with_capacity(m);
    for r in rows {
        assert_eq!(r.coeffs.len(), n, "row width");
        if r.rhs.is_negative() {
            let cmp = match r.cmp {
                Cmp::Le => Cmp::Ge,
                Cmp::Ge => Cmp::Le,
                Cmp::Eq => Cmp::Eq,
            };
            norm.push((r.coeffs.iter().map(|c| -c).collect(), cmp, -&r.rhs));
        } else {
            norm.push((r.coeffs.clone(), r.cmp, r.rhs.clone()));
        }
    }
    let slacks = norm.iter().filter(|r| r.1 != Cmp::Eq).count();
    let arts = norm.iter().filter(|r| r.1 != Cmp::Le).count();
    let first_art = n + slacks;
    let cols = first_art + arts;
    let mut t = vec![vec![Q::ZERO; cols + 1]; m];
    let mut basis = vec![0; m];
    let (mut s, mut a) = (n, first_art);
    for (i, (coeffs, cmp, rhs)) in norm.into_iter().enumerate() {
        for (j, c) in coeffs.into_iter().enumerate() {
            t[i][j] = c;
        }
        t[i][cols] = rhs;
        match cmp {
            Cmp::Le => {
                t[i][s] = Q::ONE;
                basis[i] = s;
                s += 1;
            }
            Cmp::Ge => {
                t[i][s] = Q::int(-1);
                s += 1;
                t[i][a] = Q::ONE;
                basis[i] = a;
                a += 1;
            }
            Cmp::Eq => {
                t[i][a] = Q::ONE;
                basis[i] = a;
                a += 1;
            }
        }
    }
    let mut obj = vec![Q::ZERO; cols + 1];
    for i in 0..m {
        if basis[i] >= first_art {
            for k in 0..=cols {
                if k < first_art || k == cols {
                    obj[k] = &obj[k] - &t[i][k];
                }
            }
        }
    }
    let mut tab = Tableau {
        t,
        obj,
        basis,
        cols,
    };
    tab.run(cols);
    if !tab.obj[cols].is_zero() {
        return Outcome::Infeasible;
    }
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= first_art {
            match (0..first_art).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut value = Q::ZERO;
    if let Some(c) = objective {
        assert_eq!(c.len(), n, "objective width");
        let mut obj = vec![Q::ZERO; cols + 1];
        for (j, cj) in c.iter().enumerate() {
            obj[j] = -cj;
        }
        for i in 0..tab.t.len() {
            let f = obj[tab.basis[i]].clone();
            if !f.is_zero() {
                for k in 0..=cols {
                    if !tab.t[i][k].is_zero() {
                        obj[k] = &obj[k] - &(&f * &tab.t[i][k]);
                    }
                }
            }
        }
        tab.obj = obj;
        if !tab.run(first_art) {
            return Outcome::Unbounded;
        }
        value = tab.obj[cols].clone();
    }
    let mut x = vec![Q::ZERO; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(i).clone();
        }
    }
    Outcome::Optimal { x, value }
}
