use std::collections::HashSet;
use std::fmt;

use super::Poset;
use crate::error::{Error, Result};

/// A canonically sorted set of pairwise incomparable element indices of a
/// host poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Antichain(Vec<usize>);

impl Antichain {
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        Antichain(members)
    }

    /// Validates against `host` and sorts.
    pub fn new(host: &Poset, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= host.len()) {
            return Err(Error::UnknownLabel("index out of range".into()));
        }
        if !host.is_antichain(&members) {
            let names: Vec<&str> = members.iter().map(|&m| host.label(m)).collect();
            return Err(Error::NotAnAntichain(names.join(" ")));
        }
        Ok(Antichain(members))
    }

    pub fn from_labels<S: AsRef<str>>(host: &Poset, labels: &[S]) -> Result<Self> {
        Self::new(host, host.indices_of(labels)?)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn labels<'a>(&self, host: &'a Poset) -> Vec<&'a str> {
        let mut v: Vec<&str> = self.0.iter().map(|&i| host.label(i)).collect();
        v.sort();
        v
    }
}

/// Which antichain order a construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemilatticeMode {
    /// `A <= B` iff every `b` in `B` lies above some `a` in `A`.
    Meet,
    /// `A <= B` iff every `a` in `A` lies below some `b` in `B`.
    Join,
}

impl SemilatticeMode {
    pub fn leq(self, host: &Poset, a: &[usize], b: &[usize]) -> bool {
        match self {
            SemilatticeMode::Meet => b.iter().all(|&y| a.iter().any(|&x| host.leq(x, y))),
            SemilatticeMode::Join => a.iter().all(|&x| b.iter().any(|&y| host.leq(x, y))),
        }
    }

    fn separator(self) -> char {
        match self {
            SemilatticeMode::Meet => '^',
            SemilatticeMode::Join => 'v',
        }
    }
}

/// What an element of a derived carrier stands for in the host poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DerivedLabel {
    Original(usize),
    Meet(Antichain),
    Join(Antichain),
    Empty,
}

impl DerivedLabel {
    fn from_antichain(a: Antichain, mode: SemilatticeMode) -> Self {
        match (a.len(), mode) {
            (0, _) => DerivedLabel::Empty,
            (1, _) => DerivedLabel::Original(a.0[0]),
            (_, SemilatticeMode::Meet) => DerivedLabel::Meet(a),
            (_, SemilatticeMode::Join) => DerivedLabel::Join(a),
        }
    }

    /// The antichain of the host this label denotes.
    pub fn members(&self) -> Vec<usize> {
        match self {
            DerivedLabel::Original(i) => vec![*i],
            DerivedLabel::Meet(a) | DerivedLabel::Join(a) => a.0.clone(),
            DerivedLabel::Empty => Vec::new(),
        }
    }

    pub fn is_original(&self) -> bool {
        matches!(self, DerivedLabel::Original(_))
    }

    /// Canonical text: members sorted by label, compound members wrapped in
    /// parentheses. Collisions with existing labels are resolved by callers.
    pub fn render(&self, host: &Poset) -> String {
        fn join(host: &Poset, a: &Antichain, sep: char) -> String {
            let parts: Vec<String> = a
                .labels(host)
                .into_iter()
                .map(|l| {
                    if l.contains(['^', 'v', '\'', '{', '(']) {
                        format!("({l})")
                    } else {
                        l.to_string()
                    }
                })
                .collect();
            parts.join(&sep.to_string())
        }
        match self {
            DerivedLabel::Original(i) => host.label(*i).to_string(),
            DerivedLabel::Meet(a) => join(host, a, SemilatticeMode::Meet.separator()),
            DerivedLabel::Join(a) => join(host, a, SemilatticeMode::Join.separator()),
            DerivedLabel::Empty => "{}".to_string(),
        }
    }
}

/// A poset whose elements are antichains of a host poset, together with
/// what each element stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub poset: Poset,
    pub origin: Vec<DerivedLabel>,
    pub mode: SemilatticeMode,
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.poset)
    }
}

impl Carrier {
    fn build(host: &Poset, origin: Vec<DerivedLabel>, mode: SemilatticeMode) -> Result<Self> {
        let members: Vec<Vec<usize>> = origin.iter().map(|d| d.members()).collect();
        let n = origin.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = mode.leq(host, &members[i], &members[j]);
            }
        }
        let mut taken: HashSet<String> = origin
            .iter()
            .filter(|d| d.is_original())
            .map(|d| d.render(host))
            .collect();
        taken.extend(host.labels().iter().cloned());
        let labels = origin
            .iter()
            .map(|d| {
                let mut l = d.render(host);
                if !d.is_original() {
                    while !taken.insert(l.clone()) {
                        l.push('\'');
                    }
                }
                l
            })
            .collect();
        Ok(Carrier {
            poset: Poset::from_table(labels, leq)?,
            origin,
            mode,
        })
    }

    /// Index of the element standing for the given host antichain.
    pub fn find(&self, members: &[usize]) -> Option<usize> {
        let mut m = members.to_vec();
        m.sort_unstable();
        self.origin.iter().position(|d| d.members() == m)
    }

    /// Index in the carrier of a host element.
    pub fn original(&self, host_index: usize) -> Option<usize> {
        self.origin.iter().position(|d| *d == DerivedLabel::Original(host_index))
    }
}

impl Poset {
    /// `Â(S)` (meet mode) or `Ǎ(S)` (join mode); without `∅` when
    /// `nonempty_only`. Host elements come first in host order, then larger
    /// antichains, then `∅`.
    pub fn antichain_semilattice(&self, mode: SemilatticeMode, nonempty_only: bool) -> Carrier {
        let mut origin: Vec<DerivedLabel> = self.elements().map(DerivedLabel::Original).collect();
        origin.extend(
            self.antichains(true)
                .into_iter()
                .filter(|a| a.len() >= 2)
                .map(|a| DerivedLabel::from_antichain(a, mode)),
        );
        if !nonempty_only {
            origin.push(DerivedLabel::Empty);
        }
        Carrier::build(self, origin, mode).expect("antichain orders are partial orders")
    }

    /// `S_R = R ∪ â(S∖R)` in filter mode (`Meet`) or `S^R = R ∪ ǎ(S∖R)` in
    /// ideal mode (`Join`).
    pub fn derived_carrier(&self, r: &[usize], mode: SemilatticeMode) -> Result<Carrier> {
        self.check_indices(r)?;
        let rest = self.complement(r);
        let mut origin: Vec<DerivedLabel> = self.elements().map(DerivedLabel::Original).collect();
        origin.extend(
            self.antichains_within(&rest, true)
                .into_iter()
                .filter(|a| a.len() >= 2)
                .map(|a| DerivedLabel::from_antichain(a, mode)),
        );
        Carrier::build(self, origin, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::example_poset;

    fn sorted_labels(p: &Poset) -> Vec<String> {
        let mut v = p.labels().to_vec();
        v.sort();
        v
    }

    #[test]
    fn meet_of_two_incomparables() {
        let s = Poset::antichain_of(&["d", "f"]).unwrap();
        let c = s.antichain_semilattice(SemilatticeMode::Meet, true);
        assert_eq!(sorted_labels(&c.poset), ["d", "d^f", "f"]);
        let m = c.poset.index_of("d^f").unwrap();
        assert!(c.poset.lt(m, 0) && c.poset.lt(m, 1));
    }

    #[test]
    fn chain_meet_semilattice_with_empty() {
        let s = Poset::chain(&["s", "t"]).unwrap();
        let c = s.antichain_semilattice(SemilatticeMode::Meet, false);
        assert_eq!(c.poset.len(), 3);
        let e = c.poset.index_of("{}").unwrap();
        assert!(c.poset.lt(0, 1) && c.poset.lt(1, e));
    }

    #[test]
    fn derived_carrier_of_example() {
        let p = example_poset();
        let f = p.principal_filter(p.index_of("p").unwrap());
        let c = p.derived_carrier(&f, SemilatticeMode::Meet).unwrap();
        assert_eq!(sorted_labels(&c.poset), ["a", "b", "c", "d", "d^f", "e", "e^f", "f", "g", "p"]);
        let r: Vec<usize> = f.iter().map(|&i| c.original(i).unwrap()).collect();
        assert!(c.poset.is_filter(&r));
    }

    #[test]
    fn derived_carrier_trivial_and_antichain() {
        let p = example_poset();
        let all: Vec<usize> = p.elements().collect();
        let c = p.derived_carrier(&all, SemilatticeMode::Meet).unwrap();
        assert_eq!(c.poset, p);

        let three = Poset::antichain_of(&["x", "y", "z"]).unwrap();
        let c = three.derived_carrier(&[0], SemilatticeMode::Meet).unwrap();
        assert_eq!(sorted_labels(&c.poset), ["x", "y", "y^z", "z"]);
        assert!(c.poset.is_filter(&[0]));
        assert!(p.derived_carrier(&[42], SemilatticeMode::Meet).is_err());
    }

    #[test]
    fn colliding_labels_get_primes() {
        let s = Poset::antichain_of(&["x", "y", "x^y"]).unwrap();
        let c = s.antichain_semilattice(SemilatticeMode::Meet, true);
        assert!(c.poset.contains_label("x^y'"));
        assert!(c.poset.contains_label("x^(x^y)"));
    }

    #[test]
    fn join_is_opposite_of_meet_over_opposite() {
        let p = example_poset();
        let j = p.antichain_semilattice(SemilatticeMode::Join, false);
        let m = p.opposite().antichain_semilattice(SemilatticeMode::Meet, false);
        assert_eq!(j.origin.len(), m.origin.len());
        for a in 0..j.origin.len() {
            for b in 0..j.origin.len() {
                assert_eq!(j.poset.leq(a, b), m.poset.leq(b, a));
            }
        }
    }
}
