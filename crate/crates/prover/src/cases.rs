//! Crossing configurations of two disjoint diametral paths and their linear programs.
//!
//! Path P runs from p to q through marked points 0..=3 and path Q from u to v
//! through marked points 4..=7; each path is cut into five sections. The
//! four crossing pairs p–u, p–v, q–u, q–v each leave their own path at a
//! marked point and reach the other one through a connector.

use std::fmt;

use crate::lp::{Cmp, Row};
use crate::rational::Q;

/// Number of cases: 16 attachment choices for each of the four pairs.
pub const CASE_COUNT: u32 = 1 << 16;

/// Number of LP variables: sections a..e, f..j and connectors r, s, t, u.
pub const VARS: usize = 14;

pub const VAR_NAMES: [&str; VARS] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "r", "s", "t", "u"];

pub const PAIR_NAMES: [&str; 4] = ["p-u", "p-v", "q-u", "q-v"];

const PU: usize = 0;
const PV: usize = 1;
const QU: usize = 2;
const QV: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossCase {
    /// `(exit on P in 0..4, entry on Q in 4..8)` for p–u, p–v, q–u, q–v.
    pub attach: [(u8, u8); 4],
}

impl CrossCase {
    pub fn from_id(id: u32) -> CrossCase {
        assert!(id < CASE_COUNT, "case id {id} out of range");
        let mut attach = [(0, 4); 4];
        for (k, a) in attach.iter_mut().enumerate() {
            let digit = (id >> (4 * k)) & 15;
            *a = ((digit / 4) as u8, (digit % 4) as u8 + 4);
        }
        CrossCase { attach }
    }

    pub fn id(&self) -> u32 {
        self.attach
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| (4 * i as u32 + (j as u32 - 4)) << (4 * k))
            .sum()
    }

    /// The same configuration with the roles of P and Q exchanged.
    pub fn swapped(&self) -> CrossCase {
        let a = self.attach;
        let flip = |(i, j): (u8, u8)| (j - 4, i + 4);
        CrossCase {
            attach: [flip(a[PU]), flip(a[QU]), flip(a[PV]), flip(a[QV])],
        }
    }
}

impl fmt::Display for CrossCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.attach.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{i}->{j}", PAIR_NAMES[k])?;
        }
        Ok(())
    }
}

/// All cases in ascending id order.
pub fn enumerate_cases() -> impl Iterator<Item = CrossCase> {
    (0..CASE_COUNT).map(CrossCase::from_id)
}

/// Witness variables of a swapped case.
pub fn swap_witness(x: &[Q]) -> Vec<Q> {
    let mut y = Vec::with_capacity(VARS);
    y.extend_from_slice(&x[5..10]);
    y.extend_from_slice(&x[0..5]);
    y.extend([x[10].clone(), x[12].clone(), x[11].clone(), x[13].clone()]);
    y
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Both paths have length 1.
    Diametral,
    /// Each crossing pair's route is at most 1.
    Route,
    /// Composite routes between the ends of one path are at least 1.
    NoShortcut,
    /// Connector detours do not undercut travel along either path.
    Realization,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub row: Row,
    pub family: Family,
    /// Must hold with positive slack for the paths to be disjoint.
    pub strict: bool,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalLp {
    pub case: CrossCase,
    pub constraints: Vec<Constraint>,
}

impl RationalLp {
    pub fn rows(&self) -> Vec<Row> {
        self.constraints.iter().map(|c| c.row.clone()).collect()
    }

    pub fn count(&self, family: Family) -> usize {
        self.constraints.iter().filter(|c| c.family == family).count()
    }

    /// Exact substitution: every constraint holds, strict ones with
    /// slack at least `margin`, and every variable is nonnegative.
    pub fn check(&self, x: &[Q], margin: &Q) -> bool {
        x.len() == VARS
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let s = c.row.slack(x);
                if c.strict {
                    s >= *margin
                } else {
                    !s.is_negative()
                }
            })
    }
}

/// Linear form as integer coefficients over the 14 variables.
#[derive(Clone)]
struct Lin([i64; VARS]);

impl Lin {
    fn zero() -> Lin {
        Lin([0; VARS])
    }

    fn var(v: usize) -> Lin {
        let mut l = Lin::zero();
        l.0[v] = 1;
        l
    }

    fn plus(mut self, o: &Lin) -> Lin {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
        self
    }

    fn minus(mut self, o: &Lin) -> Lin {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a -= b;
        }
        self
    }

    fn row(&self, cmp: Cmp, rhs: i64) -> Row {
        Row {
            coeffs: self.0.iter().map(|&c| Q::int(c)).collect(),
            cmp,
            rhs: Q::int(rhs),
        }
    }
}

/// Distance from the start of a path to its marked point `k` (0..4),
/// the path's sections starting at variable `base`.
fn prefix(base: usize, k: u8) -> Lin {
    (0..=k as usize).fold(Lin::zero(), |l, t| l.plus(&Lin::var(base + t)))
}

/// Travel along a path between marked points `k1` and `k2`.
fn between(base: usize, k1: u8, k2: u8) -> Lin {
    let (lo, hi) = (k1.min(k2), k1.max(k2));
    (lo as usize + 1..=hi as usize).fold(Lin::zero(), |l, t| l.plus(&Lin::var(base + t)))
}

fn conn(k: usize) -> Lin {
    Lin::var(10 + k)
}

/// Builds the LP of a case. Positions are measured with the diameter
/// normalized to 1.
pub fn build_lp(case: CrossCase) -> RationalLp {
    let at = case.attach;
    let exit = |k: usize| at[k].0;
    let entry = |k: usize| at[k].1 - 4;
    let mut cs = vec![];
    let mut push = |row: Row, family: Family, strict: bool, label: String| {
        cs.push(Constraint {
            row,
            family,
            strict,
            label,
        })
    };

    push(prefix(0, 4).row(Cmp::Eq, 1), Family::Diametral, false, "|P| = 1".into());
    push(prefix(5, 4).row(Cmp::Eq, 1), Family::Diametral, false, "|Q| = 1".into());

    // From p the route runs back to the start of P; from q, on to its end.
    let from_p = |k: usize| prefix(0, exit(k));
    let to_u = |k: usize| prefix(5, entry(k));
    for k in 0..4 {
        let starts_at_p = k == PU || k == PV;
        let ends_at_u = k == PU || k == QU;
        let mut lhs = conn(k);
        let mut rhs = 1;
        lhs = if starts_at_p {
            lhs.plus(&from_p(k))
        } else {
            rhs -= 1;
            lhs.minus(&from_p(k))
        };
        lhs = if ends_at_u {
            lhs.plus(&to_u(k))
        } else {
            rhs -= 1;
            lhs.minus(&to_u(k))
        };
        push(lhs.row(Cmp::Le, rhs), Family::Route, false, format!("route {} <= 1", PAIR_NAMES[k]));
    }

    // p → Q → q and u → P → v composites.
    for kp in [PU, PV] {
        for kq in [QU, QV] {
            let lhs = from_p(kp)
                .plus(&conn(kp))
                .plus(&between(5, entry(kp), entry(kq)))
                .plus(&conn(kq))
                .minus(&from_p(kq));
            push(
                lhs.row(Cmp::Ge, 0),
                Family::NoShortcut,
                true,
                format!("p via {} and {} >= 1", PAIR_NAMES[kp], PAIR_NAMES[kq]),
            );
        }
    }
    for ku in [PU, QU] {
        for kv in [PV, QV] {
            let lhs = to_u(ku)
                .plus(&conn(ku))
                .plus(&between(0, exit(ku), exit(kv)))
                .plus(&conn(kv))
                .minus(&to_u(kv));
            push(
                lhs.row(Cmp::Ge, 0),
                Family::NoShortcut,
                true,
                format!("u via {} and {} >= 1", PAIR_NAMES[ku], PAIR_NAMES[kv]),
            );
        }
    }

    for k1 in 0..4 {
        for k2 in k1 + 1..4 {
            let both = conn(k1).plus(&conn(k2));
            let on_p = between(0, exit(k1), exit(k2));
            let on_q = between(5, entry(k1), entry(k2));
            let names = format!("{} and {}", PAIR_NAMES[k1], PAIR_NAMES[k2]);
            push(
                both.clone().plus(&on_q).minus(&on_p).row(Cmp::Ge, 0),
                Family::Realization,
                exit(k1) != exit(k2),
                format!("P stays shortest past {names}"),
            );
            push(
                both.plus(&on_p).minus(&on_q).row(Cmp::Ge, 0),
                Family::Realization,
                entry(k1) != entry(k2),
                format!("Q stays shortest past {names}"),
            );
        }
    }
    RationalLp { case, constraints: cs }
}

/// Apex graph of a case: vertices 0..=7 are the marked points, 8..=11 are
/// p, q, u, v and 12 is joined to the four terminals. Parallel connectors
/// collapse to one edge.
pub fn apex_graph(case: CrossCase) -> (usize, Vec<(usize, usize)>) {
    let (p, q, u, v, apex) = (8, 9, 10, 11, 12);
    let mut edges = vec![(p, 0), (0, 1), (1, 2), (2, 3), (3, q), (u, 4), (4, 5), (5, 6), (6, 7), (7, v)];
    for &(i, j) in &case.attach {
        edges.push((i as usize, j as usize));
    }
    edges.extend([(apex, p), (apex, q), (apex, u), (apex, v)]);
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    (13, edges)
}
