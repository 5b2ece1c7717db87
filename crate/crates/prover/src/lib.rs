//! Exhaustive exact check that two disjoint diametral paths of a plane
//! graph cannot have all four endpoints on one face.
//!
//! Each of the 65,536 crossing configurations ([`CrossCase`]) becomes a
//! rational LP over path sections and connector lengths. Every case whose
//! LP is feasible must give a non-planar graph once an apex vertex is
//! joined to the four endpoints.

pub mod cases;
pub mod lp;
pub mod planarity;
pub mod rational;

use std::fmt;

pub use cases::{apex_graph, build_lp, enumerate_cases, CrossCase, RationalLp, CASE_COUNT, VARS};
pub use rational::Q;

use lp::{solve, Cmp, Outcome, Row};

/// How constraints marked strict are enforced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Every constraint closed.
    Closed,
    /// Strict rows must hold with some positive slack.
    #[default]
    Strict,
    /// Strict rows must hold with at least this slack.
    Margin(Q),
}

impl Strictness {
    pub fn slack() -> Strictness {
        Strictness::Margin(Q::new(1, 1000))
    }
}

impl fmt::Display for Strictness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strictness::Closed => f.write_str("closed"),
            Strictness::Strict => f.write_str("strict"),
            Strictness::Margin(m) => write!(f, "margin {m}"),
        }
    }
}

/// Closed feasibility: a vertex of the polytope, or none.
pub fn lp_feasible(lp: &RationalLp) -> Option<Vec<Q>> {
    solve(VARS, &lp.rows(), None).point().map(<[Q]>::to_vec)
}

/// Feasibility with every strict row holding by at least `margin`.
pub fn lp_feasible_with_margin(lp: &RationalLp, margin: &Q) -> Option<Vec<Q>> {
    let rows: Vec<Row> = lp
        .constraints
        .iter()
        .map(|c| {
            let mut r = c.row.clone();
            if c.strict {
                r.rhs = match r.cmp {
                    Cmp::Ge => &r.rhs + margin,
                    Cmp::Le => &r.rhs - margin,
                    Cmp::Eq => r.rhs,
                };
            }
            r
        })
        .collect();
    solve(VARS, &rows, None).point().map(<[Q]>::to_vec)
}

/// Largest common slack `τ ≤ 1` of the strict rows, with a point attaining
/// it; none when even the closed LP is infeasible.
pub fn lp_max_slack(lp: &RationalLp) -> Option<(Q, Vec<Q>)> {
    let n = VARS + 1;
    let mut rows: Vec<Row> = lp
        .constraints
        .iter()
        .map(|c| {
            let mut coeffs = c.row.coeffs.clone();
            let tau = match (c.strict, c.row.cmp) {
                (true, Cmp::Ge) => Q::int(-1),
                (true, Cmp::Le) => Q::ONE,
                _ => Q::ZERO,
            };
            coeffs.push(tau);
            Row {
                coeffs,
                cmp: c.row.cmp,
                rhs: c.row.rhs.clone(),
            }
        })
        .collect();
    let mut cap = vec![Q::ZERO; n];
    cap[VARS] = Q::ONE;
    rows.push(Row {
        coeffs: cap.clone(),
        cmp: Cmp::Le,
        rhs: Q::ONE,
    });
    match solve(n, &rows, Some(&cap)) {
        Outcome::Optimal { mut x, value } => {
            x.truncate(VARS);
            Some((value, x))
        }
        _ => None,
    }
}

/// Planarity of the apex graph of a case.
pub fn apex_planarity(case: CrossCase) -> bool {
    let (n, edges) = apex_graph(case);
    planarity::is_planar(n, &edges)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseVerdict {
    pub id: u32,
    pub feasible: bool,
    pub witness: Option<Vec<Q>>,
    /// Common slack of the strict rows at the witness.
    pub slack: Option<Q>,
    pub planar_with_apex: Option<bool>,
}

impl CaseVerdict {
    /// One line of the per-case log: a JSON object with rationals as strings.
    pub fn log_line(&self) -> String {
        let quote = |v: &[Q]| {
            v.iter()
                .map(|q| format!("\"{q}\""))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{{\"id\":{},\"case\":\"{}\",\"witness\":[{}],\"slack\":{},\"planar\":{}}}",
            self.id,
            CrossCase::from_id(self.id),
            self.witness.as_deref().map(quote).unwrap_or_default(),
            self.slack.as_ref().map_or("null".into(), |s| format!("\"{s}\"")),
            self.planar_with_apex.map_or("null".into(), |p| p.to_string()),
        )
    }
}

fn min_strict_slack(lp: &RationalLp, x: &[Q]) -> Option<Q> {
    lp.constraints
        .iter()
        .filter(|c| c.strict)
        .map(|c| c.row.slack(x))
        .min()
}

/// Decides one case; witnesses are re-verified by exact substitution.
pub fn decide(case: CrossCase, strictness: &Strictness) -> CaseVerdict {
    let lp = build_lp(case);
    let witness = match strictness {
        Strictness::Closed => lp_feasible(&lp),
        Strictness::Margin(m) => lp_feasible_with_margin(&lp, m),
        Strictness::Strict => lp_max_slack(&lp).and_then(|(t, x)| t.is_positive().then_some(x)),
    };
    let margin = match strictness {
        Strictness::Closed => Q::ZERO,
        Strictness::Margin(m) => m.clone(),
        Strictness::Strict => Q::new(1, i64::MAX),
    };
    if let Some(x) = &witness {
        assert!(lp.check(x, &margin), "witness of case {} fails substitution", case.id());
    }
    let feasible = witness.is_some();
    CaseVerdict {
        id: case.id(),
        feasible,
        slack: witness.as_ref().and_then(|x| min_strict_slack(&lp, x)),
        witness,
        planar_with_apex: feasible.then(|| apex_planarity(case)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProverConfig {
    pub strictness: Strictness,
    pub shards: usize,
    /// Spread each shard over the rayon pool (needs the `parallel` feature).
    pub parallel: bool,
    /// Restrict to ids below this bound, for quick runs.
    pub limit: u32,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            strictness: Strictness::default(),
            shards: 1,
            parallel: true,
            limit: CASE_COUNT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Summary {
    pub total: u32,
    pub feasible_count: u32,
    pub nonplanar_count: u32,
    /// Feasible cases whose apex graph is planar.
    pub exceptions: Vec<u32>,
}

impl Summary {
    pub fn merge(mut self, other: Summary) -> Summary {
        self.total += other.total;
        self.feasible_count += other.feasible_count;
        self.nonplanar_count += other.nonplanar_count;
        self.exceptions.extend(other.exceptions);
        self.exceptions.sort_unstable();
        self
    }

    /// True when every feasible case is non-planar.
    pub fn confirmed(&self) -> bool {
        self.exceptions.is_empty() && self.feasible_count == self.nonplanar_count
    }

    fn add(&mut self, v: &CaseVerdict) {
        self.total += 1;
        if v.feasible {
            self.feasible_count += 1;
            match v.planar_with_apex {
                Some(false) => self.nonplanar_count += 1,
                _ => self.exceptions.push(v.id),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProverRun {
    pub summary: Summary,
    /// Verdicts of the feasible cases in ascending id order.
    pub feasible: Vec<CaseVerdict>,
}

fn run_range(lo: u32, hi: u32, cfg: &ProverConfig) -> ProverRun {
    let one = |id: u32| decide(CrossCase::from_id(id), &cfg.strictness);
    let verdicts: Vec<CaseVerdict> = {
        #[cfg(feature = "parallel")]
        {
            if cfg.parallel {
                use rayon::prelude::*;
                (lo..hi).into_par_iter().map(one).collect()
            } else {
                (lo..hi).map(one).collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            (lo..hi).map(one).collect()
        }
    };
    let mut summary = Summary::default();
    for v in &verdicts {
        summary.add(v);
    }
    ProverRun {
        summary,
        feasible: verdicts.into_iter().filter(|v| v.feasible).collect(),
    }
}

/// Runs every case id below `cfg.limit`, split into `cfg.shards`
/// contiguous ranges whose results are merged in order.
pub fn run_prover(cfg: &ProverConfig) -> ProverRun {
    let shards = cfg.shards.max(1) as u32;
    let limit = cfg.limit.min(CASE_COUNT);
    let size = limit.div_ceil(shards).max(1);
    let mut run = ProverRun {
        summary: Summary::default(),
        feasible: vec![],
    };
    let mut lo = 0;
    while lo < limit {
        let hi = (lo + size).min(limit);
        let part = run_range(lo, hi, cfg);
        run.summary = run.summary.merge(part.summary);
        run.feasible.extend(part.feasible);
        lo = hi;
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_case_is_feasible_and_non_planar() {
        let case = CrossCase {
            attach: [(1, 5), (1, 6), (2, 5), (2, 6)],
        };
        let v = decide(case, &Strictness::Strict);
        assert!(v.feasible);
        assert!(v.slack.unwrap().is_positive());
        assert_eq!(v.planar_with_apex, Some(false));
    }

    #[test]
    fn all_at_the_start_is_infeasible() {
        // Every pair attached at marked points 0 and 4: p–v and q–u need
        // a + r ≤ f and f + t ≤ a, so r = t = 0 and the paths touch.
        let v = decide(CrossCase::from_id(0), &Strictness::Strict);
        assert!(!v.feasible);
        assert!(v.planar_with_apex.is_none());
    }

    #[test]
    fn max_slack_bounds_margin_runs() {
        for id in (0..CASE_COUNT).step_by(331) {
            let lp = build_lp(CrossCase::from_id(id));
            let best = lp_max_slack(&lp);
            let closed = lp_feasible(&lp);
            assert_eq!(best.is_some(), closed.is_some());
            let strict = best.as_ref().is_some_and(|(t, _)| t.is_positive());
            let margin = lp_feasible_with_margin(&lp, &Q::new(1, 1000));
            if margin.is_some() {
                assert!(strict);
            }
            if let Some((t, x)) = best {
                assert!(lp.check(&x, &t));
                if t >= Q::new(1, 1000) {
                    assert!(margin.is_some());
                }
            }
        }
    }

    #[test]
    fn shards_do_not_change_the_summary() {
        let base = ProverConfig {
            limit: 600,
            parallel: false,
            ..ProverConfig::default()
        };
        let one = run_prover(&base);
        let many = run_prover(&ProverConfig {
            shards: 7,
            parallel: true,
            ..base.clone()
        });
        assert_eq!(one, many);
        assert_eq!(one.summary.total, 600);
    }

    #[test]
    fn log_lines_are_json_objects() {
        let v = decide(
            CrossCase {
                attach: [(1, 5), (1, 6), (2, 5), (2, 6)],
            },
            &Strictness::Strict,
        );
        let line = v.log_line();
        assert!(line.starts_with("{\"id\":") && line.ends_with("\"planar\":false}"));
        assert_eq!(line.matches('"').count() % 2, 0);
    }
}
