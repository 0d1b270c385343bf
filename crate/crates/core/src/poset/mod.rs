//! Finite posets: order validation, filters and ideals, antichains, the
//! antichain semilattices, and the derived carriers built from them.

mod carrier;

use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

pub use carrier::{Antichain, Carrier, DerivedLabel, SemilatticeMode};

use crate::error::{Error, Result};

/// A finite poset with string labels and a full order table.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // leq[i * n + j] is true iff i <= j
    leq: Vec<bool>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}
impl Eq for Poset {}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Poset({{{}}}; {})", self.labels.join(" "), covers.join(" "))
    }
}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    let ok = !label.is_empty()
        && label.chars().all(|c| {
            c.is_alphanumeric() || matches!(c, '_' | '.' | '-' | '^' | '(' | ')' | '\'' | '{' | '}' | '+')
        });
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidLabel(label.to_string()))
    }
}

impl Poset {
    /// Builds the poset generated by `relations`, each pair `(a, b)` meaning
    /// `a < b`. The reflexive-transitive closure is taken; cycles are rejected.
    pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = Self::build_index(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in relations {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index.get(a).ok_or_else(|| Error::UnknownLabel(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownLabel(b.to_string()))?;
            if ia == ib {
                return Err(Error::CycleDetected(a.to_string(), b.to_string()));
            }
            leq[ia * n + ib] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Poset { labels, index, leq })
    }

    /// Builds a poset from a complete order table, validating the axioms.
    pub fn from_table(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: leq.len(),
            });
        }
        let index = Self::build_index(&labels)?;
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::Mismatch(format!("order is not reflexive at {}", labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::Mismatch(format!(
                            "order is not transitive at {} <= {} <= {}",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(Poset { labels, index, leq })
    }

    fn build_index(labels: &[String]) -> Result<HashMap<String, usize>> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            validate_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(index)
    }

    /// The antichain on the given labels.
    pub fn antichain_of<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::new(elements, &[])
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        let rels: Vec<(&str, &str)> = elements.windows(2).map(|w| (w[0].as_ref(), w[1].as_ref())).collect();
        let elems: Vec<&str> = elements.iter().map(|s| s.as_ref()).collect();
        Self::new(&elems, &rels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut v: Vec<usize> = labels.iter().map(|l| self.index_of(l.as_ref())).collect::<Result<_>>()?;
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }
    pub fn contains_label(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    fn check_indices(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&i| i >= self.len()) {
            Some(i) => Err(Error::UnknownLabel(format!("#{i}"))),
            None => Ok(()),
        }
    }

    /// `{s | some t in T has t <= s}`.
    pub fn generated_filter(&self, set: &[usize]) -> Result<Vec<usize>> {
        self.check_indices(set)?;
        Ok(self.elements().filter(|&s| set.iter().any(|&t| self.leq(t, s))).collect())
    }

    /// `{s | some t in T has s <= t}`.
    pub fn generated_ideal(&self, set: &[usize]) -> Result<Vec<usize>> {
        self.check_indices(set)?;
        Ok(self.elements().filter(|&s| set.iter().any(|&t| self.leq(s, t))).collect())
    }

    pub fn principal_filter(&self, p: usize) -> Vec<usize> {
        self.elements().filter(|&s| self.leq(p, s)).collect()
    }

    pub fn principal_ideal(&self, p: usize) -> Vec<usize> {
        self.elements().filter(|&s| self.leq(s, p)).collect()
    }

    pub fn is_filter(&self, set: &[usize]) -> bool {
        set.iter().all(|&t| self.elements().all(|s| !self.leq(t, s) || set.contains(&s)))
    }

    pub fn is_ideal(&self, set: &[usize]) -> bool {
        set.iter().all(|&t| self.elements().all(|s| !self.leq(s, t) || set.contains(&s)))
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.comparable(a, b)))
    }

    pub fn minimal(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&a| !set.iter().any(|&b| self.lt(b, a))).collect()
    }

    pub fn maximal(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&a| !set.iter().any(|&b| self.lt(a, b))).collect()
    }

    pub fn complement(&self, set: &[usize]) -> Vec<usize> {
        self.elements().filter(|s| !set.contains(s)).collect()
    }

    /// All antichains contained in `within`, ordered by size and then
    /// lexicographically by index.
    pub fn antichains_within(&self, within: &[usize], nonempty_only: bool) -> Vec<Antichain> {
        let mut within = within.to_vec();
        within.sort_unstable();
        within.dedup();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_antichains(&within, 0, &mut current, &mut out);
        if nonempty_only {
            out.retain(|a: &Antichain| !a.is_empty());
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(b.members())));
        out
    }

    fn extend_antichains(&self, within: &[usize], start: usize, current: &mut Vec<usize>, out: &mut Vec<Antichain>) {
        out.push(Antichain::from_sorted(current.clone()));
        for k in start..within.len() {
            let x = within[k];
            if current.iter().all(|&c| !self.comparable(c, x)) {
                current.push(x);
                self.extend_antichains(within, k + 1, current, out);
                current.pop();
            }
        }
    }

    pub fn antichains(&self, nonempty_only: bool) -> Vec<Antichain> {
        let all: Vec<usize> = self.elements().collect();
        self.antichains_within(&all, nonempty_only)
    }

    /// Largest antichain size.
    pub fn width(&self) -> usize {
        self.antichains(true).iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn width_of(&self, set: &[usize]) -> usize {
        self.antichains_within(set, true).iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Cover relations `a < b` with nothing strictly between, sorted by label.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out.sort_by(|x, y| (&self.labels[x.0], &self.labels[x.1]).cmp(&(&self.labels[y.0], &self.labels[y.1])));
        out
    }

    /// A partition into `width()` chains (Dilworth), each listed bottom-up.
    /// Built from a maximum matching of the strict comparability graph.
    pub fn chain_cover(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut next: Vec<Option<usize>> = vec![None; n];
        let mut prev: Vec<Option<usize>> = vec![None; n];
        fn augment(p: &Poset, a: usize, seen: &mut [bool], next: &mut [Option<usize>], prev: &mut [Option<usize>]) -> bool {
            for b in p.elements() {
                if p.lt(a, b) && !seen[b] {
                    seen[b] = true;
                    if prev[b].is_none() || augment(p, prev[b].unwrap(), seen, next, prev) {
                        next[a] = Some(b);
                        prev[b] = Some(a);
                        return true;
                    }
                }
            }
            false
        }
        for a in self.elements() {
            let mut seen = vec![false; n];
            augment(self, a, &mut seen, &mut next, &mut prev);
        }
        let mut chains = Vec::new();
        for start in self.elements().filter(|&s| prev[s].is_none()) {
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(nx) = next[cur] {
                chain.push(nx);
                cur = nx;
            }
            chains.push(chain);
        }
        chains
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        // the number of elements below is strictly monotone along the order
        order.sort_by_key(|&s| (self.elements().filter(|&t| self.lt(t, s)).count(), s));
        order
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            leq,
        }
    }

    /// A fresh label based on `base`, primed until it does not collide.
    pub(crate) fn fresh_label(&self, base: &str) -> String {
        let mut l = base.to_string();
        while self.contains_label(&l) {
            l.push('\'');
        }
        l
    }

    fn adjoin(&self, name: &str, top: bool) -> Poset {
        let n = self.len();
        let label = self.fresh_label(name);
        let mut labels = self.labels.clone();
        labels.push(label.clone());
        let m = n + 1;
        let mut leq = vec![false; m * m];
        for i in 0..n {
            for j in 0..n {
                leq[i * m + j] = self.leq(i, j);
            }
        }
        for i in 0..m {
            if top {
                leq[i * m + n] = true;
            } else {
                leq[n * m + i] = true;
            }
        }
        let mut index = self.index.clone();
        index.insert(label, n);
        Poset { labels, index, leq }
    }

    /// `S^omega`: a new element above everything, appended last.
    pub fn adjoin_top(&self) -> Poset {
        self.adjoin("omega", true)
    }

    /// `S_0`: a new element below everything, appended last.
    pub fn adjoin_bottom(&self) -> Poset {
        self.adjoin("zero", false)
    }

    /// Induced subposet on `set`, keeping the host order of elements.
    pub fn restrict(&self, set: &[usize]) -> Result<Poset> {
        self.check_indices(set)?;
        let mut set = set.to_vec();
        set.sort_unstable();
        set.dedup();
        let m = set.len();
        let labels: Vec<String> = set.iter().map(|&i| self.labels[i].clone()).collect();
        let mut leq = vec![false; m * m];
        for (a, &i) in set.iter().enumerate() {
            for (b, &j) in set.iter().enumerate() {
                leq[a * m + b] = self.leq(i, j);
            }
        }
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Poset { labels, index, leq })
    }

    pub fn restrict_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Poset> {
        let idx = self.indices_of(labels)?;
        self.restrict(&idx)
    }

    /// For each element of `self`, its index in `host`; fails unless `self` is
    /// a subposet of `host` with the induced order.
    pub fn embedding_into(&self, host: &Poset) -> Result<Vec<usize>> {
        let map: Vec<usize> = self.labels.iter().map(|l| host.index_of(l)).collect::<Result<_>>()?;
        for i in self.elements() {
            for j in self.elements() {
                if self.leq(i, j) != host.leq(map[i], map[j]) {
                    return Err(Error::PosetMismatch(format!(
                        "order between {} and {} differs from the host poset",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Graphviz DOT of the Hasse diagram; nodes and arrows sorted by label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        let mut names: Vec<&String> = self.labels.iter().collect();
        names.sort();
        for l in names {
            let _ = writeln!(out, "  \"{l}\";");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.labels[a], self.labels[b]);
        }
        out.push_str("}\n");
        out
    }

    /// Label-exact description: sorted labels and sorted cover relations.
    pub fn canonical_description(&self) -> String {
        let mut labels = self.labels.clone();
        labels.sort();
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        format!("{} | {}", labels.join(" "), covers.join(" "))
    }

    /// First 16 hex digits of the SHA-256 of the canonical description.
    pub fn stable_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_description().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// The same poset with elements reordered by label and the order table
    /// rebuilt; two label-equal posets normalize identically.
    pub fn normalized(&self) -> Poset {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let n = self.len();
        let labels: Vec<String> = order.iter().map(|&i| self.labels[i].clone()).collect();
        let mut leq = vec![false; n * n];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                leq[a * n + b] = self.leq(i, j);
            }
        }
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Poset { labels, index, leq }
    }

    /// Equality up to the order in which elements are listed.
    pub fn same_as(&self, other: &Poset) -> bool {
        self.normalized() == other.normalized()
    }

    /// The same poset with labels passed through `f`.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Result<Poset> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        let index = Self::build_index(&labels)?;
        Ok(Poset {
            labels,
            index,
            leq: self.leq.clone(),
        })
    }

    /// One representative of every isomorphism class of posets on `n`
    /// elements, labelled `e0, e1, ...`. Meant for `n <= 5`.
    pub fn all_up_to_isomorphism(n: usize) -> Vec<Poset> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    leq[i * n + j] = true;
                }
            }
            // transitive closure
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if leq[i * n + k] && leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
            let key = perms
                .iter()
                .map(|pi| {
                    let mut bits = Vec::with_capacity(n * n);
                    for a in 0..n {
                        for b in 0..n {
                            bits.push(leq[pi[a] * n + pi[b]]);
                        }
                    }
                    bits
                })
                .min()
                .unwrap_or_default();
            if seen.insert(key) {
                let labels = (0..n).map(|i| format!("e{i}")).collect();
                out.push(Poset::from_table(labels, leq).expect("closure of an upward relation"));
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_poset() -> Poset {
        Poset::new(
            &["a", "b", "c", "d", "e", "f", "g", "p"],
            &[("p", "a"), ("p", "b"), ("p", "c"), ("e", "p"), ("e", "d"), ("g", "e"), ("g", "f")],
        )
        .unwrap()
    }

    fn names(p: &Poset, set: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&i| p.label(i).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| Poset::all_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn two_chain_closure() {
        let p = Poset::new(&["s", "t"], &[("s", "t")]).unwrap();
        assert!(p.lt(0, 1));
        assert!(!p.leq(1, 0));
    }

    #[test]
    fn example_closure_adds_transitive_pairs() {
        let p = example_poset();
        let i = |l: &str| p.index_of(l).unwrap();
        for (a, b) in [("e", "a"), ("e", "b"), ("e", "c"), ("g", "p"), ("g", "d"), ("g", "a"), ("g", "b"), ("g", "c")] {
            assert!(p.lt(i(a), i(b)), "{a} < {b}");
        }
        assert!(!p.comparable(i("d"), i("f")));
        assert!(!p.comparable(i("p"), i("d")));
    }

    #[test]
    fn cycles_unknown_and_duplicates() {
        assert!(matches!(Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(Error::CycleDetected(..))));
        assert!(matches!(Poset::new(&["a"], &[("a", "a")]), Err(Error::CycleDetected(..))));
        assert!(matches!(Poset::new(&["a", "b"], &[("a", "z")]), Err(Error::UnknownLabel(_))));
        assert!(matches!(Poset::new(&["a", "a"], &[]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(Poset::new(&["a b"], &[]), Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn generated_filters_and_ideals() {
        let p = example_poset();
        let f = p.generated_filter(&[p.index_of("p").unwrap()]).unwrap();
        assert_eq!(names(&p, &f), ["a", "b", "c", "p"]);
        assert!(p.generated_filter(&[]).unwrap().is_empty());
        let chain = Poset::chain(&["s", "t"]).unwrap();
        assert_eq!(chain.generated_ideal(&[1]).unwrap(), vec![0, 1]);
        assert!(p.generated_filter(&[99]).is_err());
    }

    #[test]
    fn antichain_counts() {
        let chain = Poset::chain(&["s", "t"]).unwrap();
        assert_eq!(chain.antichains(false).len(), 3);
        assert_eq!(chain.width(), 1);

        let p = example_poset();
        let rest = p.indices_of(&["d", "e", "f", "g"]).unwrap();
        let a: Vec<Vec<String>> = p.antichains_within(&rest, true).iter().map(|a| names(&p, a.members())).collect();
        assert_eq!(a, vec![vec!["d"], vec!["e"], vec!["f"], vec!["g"], vec!["d", "f"], vec!["e", "f"]]);

        let three = Poset::antichain_of(&["x", "y", "z"]).unwrap();
        assert_eq!(three.antichains(true).len(), 7);
        assert_eq!(three.width(), 3);
    }

    #[test]
    fn transforms() {
        let chain = Poset::chain(&["s", "t"]).unwrap();
        let op = chain.opposite();
        assert!(op.lt(1, 0));

        let three = Poset::antichain_of(&["x", "y", "z"]).unwrap();
        let top = three.adjoin_top();
        assert_eq!(top.len(), 4);
        let w = top.index_of("omega").unwrap();
        assert!((0..3).all(|i| top.lt(i, w)));
        let bottom = three.adjoin_bottom();
        let z = bottom.index_of("zero").unwrap();
        assert!((0..3).all(|i| bottom.lt(z, i)));

        let p = example_poset();
        let r = p.restrict_labels(&["d", "e", "f", "g"]).unwrap();
        let rels: Vec<(String, String)> = r
            .elements()
            .flat_map(|a| r.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| r.lt(a, b))
            .map(|(a, b)| (r.label(a).to_string(), r.label(b).to_string()))
            .collect();
        let mut rels = rels;
        rels.sort();
        let expect: Vec<(String, String)> = [("e", "d"), ("g", "d"), ("g", "e"), ("g", "f")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(rels, expect);
    }

    #[test]
    fn dot_output() {
        let chain = Poset::chain(&["s", "t"]).unwrap();
        assert_eq!(chain.to_dot(), "digraph poset {\n  rankdir=BT;\n  \"s\";\n  \"t\";\n  \"s\" -> \"t\";\n}\n");
        let p = example_poset();
        assert_eq!(p.covers().len(), 7);
        let three = Poset::antichain_of(&["x", "y", "z"]).unwrap();
        assert!(!three.to_dot().contains("->"));
    }

    #[test]
    fn chain_cover_has_width_many_chains() {
        let p = example_poset();
        let cover = p.chain_cover();
        assert_eq!(cover.len(), p.width());
        let mut all: Vec<usize> = cover.iter().flatten().copied().collect();
        all.sort();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
        for c in &cover {
            assert!(c.windows(2).all(|w| p.lt(w[0], w[1])));
        }
    }

    #[test]
    fn adjoining_avoids_collisions() {
        let p = Poset::antichain_of(&["omega", "x"]).unwrap();
        let top = p.adjoin_top();
        assert_eq!(top.label(2), "omega'");
    }
}
