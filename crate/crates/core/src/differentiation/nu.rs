use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{applicable, derive_poset, DerivedPoset, DiffMode};
use crate::par::Execution;
use crate::poset::Poset;

/// How `nu_count` picks differentiation points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// First applicable point in label order, filter mode before ideal mode,
    /// backtracking past branches that get stuck.
    #[default]
    First,
    /// Every applicable (point, mode) at every level.
    AllPaths,
}

#[derive(Debug, Clone, Copy)]
pub struct NuConfig {
    pub strategy: Strategy,
    pub depth_limit: usize,
    /// Derived posets larger than this are not expanded.
    pub max_elements: usize,
    pub execution: Execution,
}

impl Default for NuConfig {
    fn default() -> Self {
        NuConfig {
            strategy: Strategy::First,
            depth_limit: 64,
            max_elements: 24,
            execution: Execution::Parallel,
        }
    }
}

/// What the recursion established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuValue {
    Count(u64),
    /// No applicable point, or a carrier repeated along the path.
    Stuck,
    /// Depth or size guard reached.
    DepthLimit,
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Count(n) => write!(f, "{n}"),
            NuValue::Stuck => f.write_str("stuck"),
            NuValue::DepthLimit => f.write_str("depth-limit"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub poset: Poset,
    pub poset_hash: String,
    pub point: String,
    pub mode: DiffMode,
    pub a_count: usize,
}

/// A differentiation sequence proving a value of `nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub terminal: Option<Poset>,
    pub terminal_count: Option<u64>,
    pub nu: NuValue,
    /// All-paths only: distinct values reached by terminating paths.
    pub path_values: Vec<u64>,
    /// All-paths only: number of terminating paths.
    pub terminating_paths: u64,
}

impl ReductionTrace {
    /// One line per step, `<hash> point=<p> mode=<m> a-count=<n>`, then
    /// `nu=<value>`. All-paths traces add a `paths=` line before `nu=`.
    pub fn to_report(&self, all_paths: bool) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("{} point={} mode={} a-count={}\n", s.poset_hash, s.point, s.mode, s.a_count));
        }
        if all_paths {
            let vals: Vec<String> = self.path_values.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("paths={} values={}\n", self.terminating_paths, vals.join(",")));
        }
        out.push_str(&format!("nu={}\n", self.nu));
        out
    }

    /// Whether every terminating path gave the same value.
    pub fn is_path_independent(&self) -> bool {
        self.path_values.len() <= 1
    }
}

#[derive(Debug, Clone)]
struct Found {
    steps: Vec<TraceStep>,
    terminal: Poset,
    terminal_count: u64,
    value: u64,
}

#[derive(Debug, Clone, Default)]
struct Explored {
    first: Option<Found>,
    values: BTreeSet<u64>,
    paths: u64,
    hit_limit: bool,
}

struct Search {
    cfg: NuConfig,
    memo: Mutex<HashMap<String, Explored>>,
}

fn options(p: &Poset) -> Vec<(usize, DiffMode)> {
    let mut order: Vec<usize> = p.elements().collect();
    order.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
    order
        .into_iter()
        .flat_map(|x| [(x, DiffMode::Filter), (x, DiffMode::Ideal)])
        .filter(|&(x, m)| applicable(p, x, m).is_ok())
        .collect()
}

impl Search {
    fn explore(&self, poset: &Arc<Poset>, depth: usize, path: &HashSet<String>, parallel: bool) -> Explored {
        if poset.width() <= 2 {
            let n = poset.antichains(false).len() as u64;
            return Explored {
                first: Some(Found {
                    steps: Vec::new(),
                    terminal: (**poset).clone(),
                    terminal_count: n,
                    value: n,
                }),
                values: BTreeSet::from([n]),
                paths: 1,
                hit_limit: false,
            };
        }
        let key = poset.canonical_description();
        if path.contains(&key) {
            return Explored::default();
        }
        if depth >= self.cfg.depth_limit {
            return Explored {
                hit_limit: true,
                ..Explored::default()
            };
        }
        if let Some(e) = self.memo.lock().expect("memo lock").get(&key) {
            return e.clone();
        }
        let mut path = path.clone();
        path.insert(key.clone());
        let opts = options(poset);
        let all = self.cfg.strategy == Strategy::AllPaths;
        let branch = |&(x, mode): &(usize, DiffMode)| -> Explored {
            let d: DerivedPoset = derive_poset(poset, x, mode).expect("checked applicable");
            if d.result.len() > self.cfg.max_elements {
                return Explored {
                    hit_limit: true,
                    ..Explored::default()
                };
            }
            let sub = self.explore(&d.result, depth + 1, &path, false);
            let a = d.antichain_count() as u64;
            let step = TraceStep {
                poset: (**poset).clone(),
                poset_hash: poset.stable_hash(),
                point: poset.label(x).to_string(),
                mode,
                a_count: a as usize,
            };
            Explored {
                first: sub.first.map(|mut f| {
                    f.steps.insert(0, step);
                    f.value += a + 1;
                    f
                }),
                values: sub.values.iter().map(|v| v + a + 1).collect(),
                paths: sub.paths,
                hit_limit: sub.hit_limit,
            }
        };
        let mut acc = Explored::default();
        let merge = |acc: &mut Explored, e: Explored| {
            if acc.first.is_none() {
                acc.first = e.first;
            }
            acc.values.extend(e.values);
            acc.paths += e.paths;
            acc.hit_limit |= e.hit_limit;
        };
        if all && parallel {
            for e in self.cfg.execution.map(&opts, branch) {
                merge(&mut acc, e);
            }
        } else {
            for o in &opts {
                merge(&mut acc, branch(o));
                if !all && acc.first.is_some() {
                    break;
                }
            }
        }
        self.memo.lock().expect("memo lock").insert(key, acc.clone());
        acc
    }
}

/// `nu(S)` by repeated differentiation; `|A(S)|` once the width is at most
/// two.
pub fn nu_count(poset: &Arc<Poset>, strategy: Strategy) -> ReductionTrace {
    nu_count_with(
        poset,
        NuConfig {
            strategy,
            ..NuConfig::default()
        },
    )
}

pub fn nu_count_with(poset: &Arc<Poset>, cfg: NuConfig) -> ReductionTrace {
    let search = Search {
        cfg,
        memo: Mutex::new(HashMap::new()),
    };
    let e = search.explore(poset, 0, &HashSet::new(), true);
    let all = cfg.strategy == Strategy::AllPaths;
    let (path_values, terminating_paths) = if all {
        (e.values.iter().copied().collect(), e.paths)
    } else {
        (e.first.iter().map(|f| f.value).collect(), u64::from(e.first.is_some()))
    };
    match e.first {
        Some(f) => ReductionTrace {
            steps: f.steps,
            terminal: Some(f.terminal),
            terminal_count: Some(f.terminal_count),
            nu: NuValue::Count(f.value),
            path_values,
            terminating_paths,
        },
        None => ReductionTrace {
            steps: Vec::new(),
            terminal: None,
            terminal_count: None,
            nu: if e.hit_limit { NuValue::DepthLimit } else { NuValue::Stuck },
            path_values,
            terminating_paths,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p112() -> Arc<Poset> {
        Arc::new(Poset::new(&["x", "y", "u", "v"], &[("u", "v")]).unwrap())
    }

    #[test]
    fn three_antichain_gives_nine() {
        let s = Arc::new(Poset::antichain_of(&["x", "y", "z"]).unwrap());
        let t = nu_count(&s, Strategy::First);
        assert_eq!(t.nu, NuValue::Count(9));
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].a_count, 3);
        assert_eq!(t.terminal_count, Some(5));
        let report = t.to_report(false);
        assert!(report.ends_with("nu=9\n"));
        assert!(report.contains("point=x mode=filter a-count=3"));
    }

    #[test]
    fn chains() {
        for n in 0..5 {
            let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
            let s = Arc::new(Poset::chain(&labels).unwrap());
            assert_eq!(nu_count(&s, Strategy::First).nu, NuValue::Count(n as u64 + 1));
        }
    }

    #[test]
    fn one_one_two_is_path_independent() {
        let t = nu_count(&p112(), Strategy::AllPaths);
        assert_eq!(t.nu, NuValue::Count(15));
        assert_eq!(t.path_values, vec![15]);
        assert!(t.terminating_paths > 1);
    }

    #[test]
    fn four_antichain_is_stuck() {
        let s = Arc::new(Poset::antichain_of(&["w", "x", "y", "z"]).unwrap());
        let t = nu_count(&s, Strategy::First);
        assert_eq!(t.nu, NuValue::Stuck);
        assert!(t.to_report(false).ends_with("nu=stuck\n"));
    }
}
