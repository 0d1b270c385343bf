//! Brute-force ground truth over small prime fields: every monotone subspace
//! assignment up to base change, with certified indecomposability.
//!
//! Classes are generated orderly along a linear extension: the orbit
//! representatives for the first `k + 1` elements are the canonical forms of
//! all extensions of the representatives for the first `k`. A canonical form
//! is the lexicographically least tuple of subspace indices over the group.

mod split;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use split::{decompose, find_splitting, fitting_split, is_indecomposable, Splitting, DEFAULT_END_CAP};

use crate::differentiation::{nu_count, NuValue, Strategy};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, PrimeField, Subspace};
use crate::par::Execution;
use crate::poset::Poset;
use crate::sspace::{are_isomorphic, IsoOutcome, SSpace};

/// Enumeration settings and guardrails.
#[derive(Debug, Clone, Copy)]
pub struct EnumConfig {
    pub q: u32,
    pub max_dim: usize,
    /// Lift the size guardrails.
    pub force: bool,
    /// Cap on orbit representatives kept at any level.
    pub max_orbits: usize,
    /// Cap on `dim End` for the exhaustive idempotent search.
    pub end_cap: usize,
    /// Largest group enumerated in full; above it base changes are sampled.
    pub max_group: u64,
    pub group_samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            q: 2,
            max_dim: 2,
            force: false,
            max_orbits: 200_000,
            end_cap: DEFAULT_END_CAP,
            max_group: 200_000,
            group_samples: 2_000,
            seed: 0,
            execution: Execution::Parallel,
        }
    }
}

impl EnumConfig {
    pub fn new(q: u32, max_dim: usize) -> Self {
        EnumConfig {
            q,
            max_dim,
            ..EnumConfig::default()
        }
    }

    pub fn check(&self, poset: &Poset) -> Result<PrimeField> {
        let field = PrimeField::new(self.q).map_err(|e| Error::GuardrailExceeded(format!("field: {e}")))?;
        if !self.force {
            if self.max_dim > 4 {
                return Err(Error::GuardrailExceeded(format!("max ambient dim {} exceeds 4", self.max_dim)));
            }
            if poset.len() > 6 {
                return Err(Error::GuardrailExceeded(format!("poset has {} elements, more than 6", poset.len())));
            }
        }
        Ok(field)
    }
}

fn gl_order(q: u64, n: usize) -> Option<u64> {
    let qn = q.checked_pow(n as u32)?;
    let mut acc: u64 = 1;
    let mut qi = 1u64;
    for _ in 0..n {
        acc = acc.checked_mul(qn - qi)?;
        qi *= q;
    }
    Some(acc)
}

fn all_vectors(field: &PrimeField, n: usize) -> Vec<Vec<u32>> {
    let q = field.modulus() as u64;
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let e = (i % q) as u32;
                    i /= q;
                    e
                })
                .collect()
        })
        .collect()
}

/// Every subspace of `F_q^n`, with the action of (a sample of) `GL(n, q)` as
/// permutations of subspace indices.
#[derive(Debug, Clone)]
pub struct Universe {
    n: usize,
    subspaces: Vec<Subspace<PrimeField>>,
    index: HashMap<Subspace<PrimeField>, u32>,
    // contains[a * m + b]: subspace a inside subspace b
    contains: Vec<bool>,
    perms: Vec<Vec<u32>>,
    sampled: bool,
}

impl Universe {
    pub fn new(field: PrimeField, n: usize, cfg: &EnumConfig) -> Universe {
        let vectors = all_vectors(&field, n);
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut all = vec![Subspace::zero(&field, n)];
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for v in &vectors {
                    if w.contains(v) {
                        continue;
                    }
                    let mut gens = w.basis_vectors();
                    gens.push(v.clone());
                    let s = Subspace::from_vectors(&field, n, gens).expect("ambient length");
                    if found.insert(s.basis().entries().to_vec()) {
                        next.push(s);
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all.sort_by(|a, b| a.canonical_cmp(b));
        let index: HashMap<_, _> = all.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let m = all.len();
        let mut contains = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                contains[a * m + b] = all[a].is_subspace_of(&all[b]);
            }
        }
        let q = field.modulus() as u64;
        let order = gl_order(q, n);
        let exhaustive = matches!(order, Some(o) if o <= cfg.max_group)
            && q.checked_pow((n * n) as u32).is_some_and(|t| t <= 1 << 22);
        let group: Vec<Matrix<PrimeField>> = if exhaustive {
            let total = q.pow((n * n) as u32);
            let cands: Vec<u64> = (0..total).collect();
            cfg.execution
                .map(&cands, |&i| {
                    let mut i = i;
                    let g = Matrix::from_fn(&field, n, n, |_, _| {
                        let e = (i % q) as u32;
                        i /= q;
                        e
                    });
                    g.is_invertible().then_some(g)
                })
                .into_iter()
                .flatten()
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6f72_6163_6c65);
            let mut g = vec![Matrix::identity(&field, n)];
            while g.len() < cfg.group_samples {
                let m = Matrix::from_fn(&field, n, n, |_, _| rng.gen_range(0..field.modulus()));
                if m.is_invertible() {
                    g.push(m);
                }
            }
            g
        };
        let perms = cfg.execution.map(&group, |g| {
            all.iter().map(|s| index[&s.image(g)]).collect::<Vec<u32>>()
        });
        Universe {
            n,
            subspaces: all,
            index,
            contains,
            perms,
            sampled: !exhaustive,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn subspaces(&self) -> &[Subspace<PrimeField>] {
        &self.subspaces
    }
    pub fn group_size(&self) -> usize {
        self.perms.len()
    }
    /// Whether base changes were sampled rather than enumerated.
    pub fn is_sampled(&self) -> bool {
        self.sampled
    }

    fn inside(&self, a: u32, b: u32) -> bool {
        self.contains[a as usize * self.subspaces.len() + b as usize]
    }

    fn canonical(&self, t: &[u32]) -> Vec<u32> {
        let mut best = t.to_vec();
        let mut cur = vec![0u32; t.len()];
        for p in &self.perms {
            for (c, &x) in cur.iter_mut().zip(t) {
                *c = p[x as usize];
            }
            if cur < best {
                best.copy_from_slice(&cur);
            }
        }
        best
    }
}

/// Certification status of a class representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Indecomposable,
    Decomposable,
    Undecided,
}

#[derive(Debug, Clone)]
pub struct ClassRecord {
    pub space: SSpace<PrimeField>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub dim: usize,
    pub classes: usize,
    pub indecomposable: usize,
    pub undecided: usize,
    pub sampled: bool,
}

/// Isomorphism classes by ambient dimension.
#[derive(Debug, Clone)]
pub struct Census {
    pub poset: Arc<Poset>,
    pub field: PrimeField,
    pub rows: Vec<CensusRow>,
    /// `classes[n]` lists the classes of ambient dimension `n`, in canonical
    /// order.
    pub classes: Vec<Vec<ClassRecord>>,
}

impl Census {
    pub fn indecomposables(&self) -> Vec<&SSpace<PrimeField>> {
        self.classes
            .iter()
            .flatten()
            .filter(|c| c.status == Status::Indecomposable)
            .map(|c| &c.space)
            .collect()
    }

    pub fn total_indecomposable(&self) -> usize {
        self.rows.iter().map(|r| r.indecomposable).sum()
    }

    pub fn total_undecided(&self) -> usize {
        self.rows.iter().map(|r| r.undecided).sum()
    }

    pub fn is_sampled(&self) -> bool {
        self.rows.iter().any(|r| r.sampled)
    }

    /// `dim | #classes | #indecomposable`, one row per ambient dimension.
    pub fn table(&self) -> String {
        let mut out = String::from("dim | #classes | #indecomposable\n");
        for r in self.rows.iter().filter(|r| r.dim > 0) {
            let _ = write!(out, "{} | {} | {}", r.dim, r.classes, r.indecomposable);
            if r.undecided > 0 {
                let _ = write!(out, " (+{} undecided)", r.undecided);
            }
            if r.sampled {
                out.push_str(" (sampled)");
            }
            out.push('\n');
        }
        out
    }
}

/// Enumerates spaces over one poset, reusing the subspace tables per
/// dimension.
pub struct Oracle {
    poset: Arc<Poset>,
    cfg: EnumConfig,
    field: PrimeField,
    order: Vec<usize>,
    universes: Vec<Universe>,
}

impl Oracle {
    pub fn new(poset: Arc<Poset>, cfg: EnumConfig) -> Result<Oracle> {
        let field = cfg.check(&poset)?;
        let order = poset.linear_extension();
        let universes = (0..=cfg.max_dim).map(|n| Universe::new(field, n, &cfg)).collect();
        Ok(Oracle {
            poset,
            cfg,
            field,
            order,
            universes,
        })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn universe(&self, n: usize) -> &Universe {
        &self.universes[n]
    }

    fn key_of(&self, v: &SSpace<PrimeField>) -> Result<(usize, Vec<u32>)> {
        if v.poset().as_ref() != self.poset.as_ref() {
            return Err(Error::PosetMismatch("space lives over a different poset".into()));
        }
        v.field().check_same(&self.field)?;
        let n = v.dim();
        let u = self.universes.get(n).ok_or(Error::GuardrailExceeded(format!(
            "ambient dim {n} exceeds the oracle's {}",
            self.cfg.max_dim
        )))?;
        Ok((n, self.order.iter().map(|&s| u.index[v.space(s)]).collect()))
    }

    fn space_of_key(&self, n: usize, key: &[u32]) -> SSpace<PrimeField> {
        let u = &self.universes[n];
        let mut spaces = vec![Subspace::zero(&self.field, n); self.poset.len()];
        for (&s, &k) in self.order.iter().zip(key) {
            spaces[s] = u.subspaces[k as usize].clone();
        }
        SSpace::new(self.poset.clone(), self.field, n, spaces).expect("monotone by construction")
    }

    /// Index tuple of the canonical form of `V` (exact unless the dimension
    /// uses a sampled group).
    pub fn canonical_key(&self, v: &SSpace<PrimeField>) -> Result<Vec<u32>> {
        let (n, key) = self.key_of(v)?;
        Ok(self.universes[n].canonical(&key))
    }

    pub fn canonical_form(&self, v: &SSpace<PrimeField>) -> Result<SSpace<PrimeField>> {
        let key = self.canonical_key(v)?;
        Ok(self.space_of_key(v.dim(), &key))
    }

    /// Canonical keys of all classes of ambient dimension `n`, sorted.
    pub fn class_keys(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        let u = &self.universes[n];
        let mut reps: Vec<Vec<u32>> = vec![Vec::new()];
        for (k, &s) in self.order.iter().enumerate() {
            let below: Vec<usize> = (0..k).filter(|&j| self.poset.lt(self.order[j], s)).collect();
            let ext: Vec<Vec<Vec<u32>>> = self.cfg.execution.map(&reps, |r| {
                (0..u.subspaces.len() as u32)
                    .filter(|&w| below.iter().all(|&j| u.inside(r[j], w)))
                    .map(|w| {
                        let mut t = r.clone();
                        t.push(w);
                        u.canonical(&t)
                    })
                    .collect()
            });
            let next: BTreeSet<Vec<u32>> = ext.into_iter().flatten().collect();
            if next.len() > self.cfg.max_orbits {
                return Err(Error::GuardrailExceeded(format!(
                    "more than {} orbit representatives at dim {n}",
                    self.cfg.max_orbits
                )));
            }
            reps = next.into_iter().collect();
        }
        Ok(reps)
    }

    /// All classes of ambient dimension `n` with their certification.
    pub fn classes(&self, n: usize) -> Result<Vec<ClassRecord>> {
        let keys = self.class_keys(n)?;
        let spaces: Vec<SSpace<PrimeField>> = keys.iter().map(|k| self.space_of_key(n, k)).collect();
        let spaces = if self.universes[n].sampled {
            self.merge_sampled(spaces)?
        } else {
            spaces
        };
        let statuses = self.cfg.execution.map(&spaces, |v| match find_splitting(v, self.cfg.end_cap, self.cfg.seed) {
            Ok(Splitting::Local) => Ok(Status::Indecomposable),
            Ok(Splitting::Splits(_)) | Ok(Splitting::Zero) => Ok(Status::Decomposable),
            Ok(Splitting::Undecided) => Ok(Status::Undecided),
            Err(e) => Err(e),
        });
        spaces
            .into_iter()
            .zip(statuses)
            .map(|(space, st)| Ok(ClassRecord { space, status: st? }))
            .collect()
    }

    // With a sampled group, distinct keys may still be isomorphic; merge them
    // with verified Hom witnesses inside buckets of equal invariants.
    fn merge_sampled(&self, spaces: Vec<SSpace<PrimeField>>) -> Result<Vec<SSpace<PrimeField>>> {
        let mut buckets: BTreeMap<Vec<usize>, Vec<SSpace<PrimeField>>> = BTreeMap::new();
        for v in spaces {
            let sig: Vec<usize> = self
                .poset
                .antichains(true)
                .iter()
                .flat_map(|a| [v.meet_space(a.members()).dim(), v.join_space(a.members()).dim()])
                .collect();
            buckets.entry(sig).or_default().push(v);
        }
        let mut out = Vec::new();
        for (_, bucket) in buckets {
            let mut kept: Vec<SSpace<PrimeField>> = Vec::new();
            for v in bucket {
                let mut dup = false;
                for w in &kept {
                    if let IsoOutcome::Isomorphic(_) = are_isomorphic(w, &v, self.cfg.seed)? {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    kept.push(v);
                }
            }
            out.extend(kept);
        }
        Ok(out)
    }

    pub fn census(&self) -> Result<Census> {
        let mut rows = Vec::new();
        let mut classes = Vec::new();
        for n in 0..=self.cfg.max_dim {
            let cs = self.classes(n)?;
            rows.push(CensusRow {
                dim: n,
                classes: cs.len(),
                indecomposable: cs.iter().filter(|c| c.status == Status::Indecomposable).count(),
                undecided: cs.iter().filter(|c| c.status == Status::Undecided).count(),
                sampled: self.universes[n].sampled,
            });
            classes.push(cs);
        }
        Ok(Census {
            poset: self.poset.clone(),
            field: self.field,
            rows,
            classes,
        })
    }
}

/// Census of indecomposables of ambient dimension at most `cfg.max_dim`.
pub fn enumerate_indecomposables(poset: Arc<Poset>, cfg: EnumConfig) -> Result<Census> {
    Oracle::new(poset, cfg)?.census()
}

/// Comparison of the oracle census with the recursion value.
#[derive(Debug, Clone)]
pub struct NuCheck {
    pub nu: u64,
    pub oracle_total: u64,
    pub dim_bound: usize,
    /// The census is known to contain every indecomposable.
    pub complete: bool,
    pub census: Census,
    pub report: String,
}

/// Checks `#indecomposables(dim <= max_dim) <= nu`. When the two agree the
/// enumeration is complete, since `nu` counts every indecomposable: no
/// class of larger dimension remains.
pub fn cross_check_nu(poset: Arc<Poset>, cfg: EnumConfig) -> Result<NuCheck> {
    let trace = nu_count(&poset, Strategy::First);
    let NuValue::Count(nu) = trace.nu else {
        return Err(Error::BudgetExceeded(format!("the recursion gave no value ({})", trace.nu)));
    };
    let census = enumerate_indecomposables(poset.clone(), cfg)?;
    let total = census.total_indecomposable() as u64;
    let mut report = String::new();
    let _ = writeln!(
        report,
        "poset {} field F{} maxdim {}",
        poset.stable_hash(),
        cfg.q,
        cfg.max_dim
    );
    report.push_str(&census.table());
    let _ = writeln!(report, "oracle={total} nu={nu}");
    if total > nu {
        return Err(Error::Mismatch(format!(
            "oracle found {total} indecomposables, more than nu = {nu}"
        )));
    }
    let complete = total == nu;
    if complete {
        let top = census
            .rows
            .iter()
            .filter(|r| r.indecomposable > 0)
            .map(|r| r.dim)
            .max()
            .unwrap_or(0);
        let _ = writeln!(
            report,
            "complete: the census reaches nu, so every indecomposable has ambient dim <= {top}"
        );
    } else {
        let _ = writeln!(
            report,
            "partial: {} classes missing, dimensions above {} not enumerated{}",
            nu - total,
            cfg.max_dim,
            if census.total_undecided() > 0 { " or undecided" } else { "" }
        );
    }
    Ok(NuCheck {
        nu,
        oracle_total: total,
        dim_bound: cfg.max_dim,
        complete,
        census,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census_of(p: Poset, max_dim: usize) -> Census {
        enumerate_indecomposables(Arc::new(p), EnumConfig::new(2, max_dim)).unwrap()
    }

    #[test]
    fn subspace_counts() {
        let cfg = EnumConfig::default();
        let f2 = PrimeField::new(2).unwrap();
        let counts: Vec<usize> = (0..=3).map(|n| Universe::new(f2, n, &cfg).subspaces().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
        assert_eq!(Universe::new(f2, 3, &cfg).group_size(), 168);
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(Universe::new(f3, 2, &cfg).subspaces().len(), 6);
    }

    #[test]
    fn two_chain_has_three() {
        let c = census_of(Poset::chain(&["s", "t"]).unwrap(), 2);
        assert_eq!(c.rows[1].indecomposable, 3);
        assert_eq!(c.rows[2].indecomposable, 0);
    }

    #[test]
    fn three_antichain_has_nine() {
        let c = census_of(Poset::antichain_of(&["x", "y", "z"]).unwrap(), 2);
        assert_eq!(c.rows[1].indecomposable, 8);
        assert_eq!(c.rows[2].indecomposable, 1);
        assert_eq!(c.total_indecomposable(), 9);
        assert!(c.table().starts_with("dim | #classes | #indecomposable\n1 | 8 | 8\n"));
    }

    #[test]
    fn empty_poset_has_one() {
        let c = census_of(Poset::antichain_of::<&str>(&[]).unwrap(), 3);
        assert_eq!(c.total_indecomposable(), 1);
        assert_eq!(c.rows.iter().map(|r| r.classes).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn cross_check_chain_of_three() {
        let p = Arc::new(Poset::chain(&["a", "b", "c"]).unwrap());
        let r = cross_check_nu(p, EnumConfig::new(2, 2)).unwrap();
        assert_eq!((r.nu, r.oracle_total), (4, 4));
        assert!(r.complete);
        assert!(r.report.contains("ambient dim <= 1"));
    }

    #[test]
    fn one_one_two_reaches_fifteen() {
        let p = Arc::new(Poset::new(&["x", "y", "u", "v"], &[("u", "v")]).unwrap());
        let r = cross_check_nu(p, EnumConfig::new(2, 3)).unwrap();
        assert_eq!((r.nu, r.oracle_total), (15, 15));
        assert!(r.complete);
    }

    #[test]
    fn guardrails() {
        let big = Poset::antichain_of(&["a", "b", "c", "d", "e", "f", "g"]).unwrap();
        let e = enumerate_indecomposables(Arc::new(big.clone()), EnumConfig::new(2, 1)).unwrap_err();
        assert_eq!(e.name(), "GuardrailExceeded");
        let e = enumerate_indecomposables(Arc::new(Poset::chain(&["s"]).unwrap()), EnumConfig::new(2, 5)).unwrap_err();
        assert_eq!(e.name(), "GuardrailExceeded");
        let e = enumerate_indecomposables(Arc::new(Poset::chain(&["s"]).unwrap()), EnumConfig::new(4, 1)).unwrap_err();
        assert_eq!(e.name(), "GuardrailExceeded");
        let forced = EnumConfig {
            force: true,
            ..EnumConfig::new(2, 1)
        };
        assert_eq!(enumerate_indecomposables(Arc::new(big), forced).unwrap().total_indecomposable(), 128);
    }

    #[test]
    fn canonical_form_is_invariant_under_base_change() {
        let p = Arc::new(Poset::antichain_of(&["x", "y", "z"]).unwrap());
        let o = Oracle::new(p.clone(), EnumConfig::new(2, 2)).unwrap();
        let f2 = o.field();
        let v = SSpace::from_i64(p, f2, 2, &[("x", &[&[1, 0]]), ("y", &[&[0, 1]]), ("z", &[&[1, 1]])]).unwrap();
        let g = Matrix::from_i64(&f2, &[&[1, 1], &[0, 1]]);
        let w = v.base_change(&g).unwrap();
        assert_ne!(v, w);
        assert_eq!(o.canonical_form(&v).unwrap(), o.canonical_form(&w).unwrap());
    }

    #[test]
    fn sampled_group_merges_by_witness() {
        let p = Arc::new(Poset::antichain_of(&["x", "y"]).unwrap());
        let cfg = EnumConfig {
            max_group: 1,
            group_samples: 2,
            ..EnumConfig::new(2, 2)
        };
        let c = enumerate_indecomposables(p.clone(), cfg).unwrap();
        let exact = enumerate_indecomposables(p, EnumConfig::new(2, 2)).unwrap();
        assert!(c.is_sampled());
        assert_eq!(
            c.rows.iter().map(|r| r.classes).collect::<Vec<_>>(),
            exact.rows.iter().map(|r| r.classes).collect::<Vec<_>>()
        );
    }
}
