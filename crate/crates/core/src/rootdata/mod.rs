//! Simply-laced root systems with the labellings used for the E6, E7 and E8
//! parabolics, pairings, reflections, σ-weights and cocharacter gradings.

mod tables;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use tables::{EmbeddedTable, E6_POSITIVE, E7_CASE2, E8_CASE1, E8_CASE2};

use crate::error::{EngineError, Result};
use crate::field::Matrix;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::D(n) => n,
            RootType::E6 => 6,
            RootType::E7 => 7,
            RootType::E8 => 8,
        }
    }

    fn edges(self) -> Vec<(usize, usize)> {
        let chain = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match self {
            RootType::A(n) => chain(n),
            RootType::D(n) => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            RootType::E6 => {
                let mut e = chain(5);
                e.push((2, 5));
                e
            }
            RootType::E7 => {
                let mut e = chain(6);
                e.push((3, 6));
                e
            }
            RootType::E8 => {
                let mut e = chain(7);
                e.push((4, 7));
                e
            }
        }
    }

    /// The branch node σ for the exceptional types; it is always the last
    /// simple root in the internal order.
    pub fn sigma(self) -> Option<usize> {
        match self {
            RootType::E6 | RootType::E7 | RootType::E8 => Some(self.rank() - 1),
            _ => None,
        }
    }

    /// Rank of the type-A Levi obtained by deleting σ, plus one.
    pub fn levi_degree(self) -> Option<usize> {
        self.sigma().map(|_| self.rank())
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E6 => write!(f, "E6"),
            RootType::E7 => write!(f, "E7"),
            RootType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for RootType {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || EngineError::UnknownType(s.to_string());
        let t = s.trim().to_ascii_uppercase();
        let (head, tail) = t.split_at(t.len().min(1));
        let n: usize = tail.parse().map_err(|_| unknown())?;
        match (head, n) {
            ("A", 1..=16) => Ok(RootType::A(n)),
            ("D", 4..=16) => Ok(RootType::D(n)),
            ("E", 6) => Ok(RootType::E6),
            ("E", 7) => Ok(RootType::E7),
            ("E", 8) => Ok(RootType::E8),
            _ => Err(unknown()),
        }
    }
}

const GREEK: [(&str, &str); 8] = [
    ("alpha", "a"),
    ("beta", "b"),
    ("gamma", "g"),
    ("delta", "d"),
    ("epsilon", "e"),
    ("eta", "h"),
    ("xi", "x"),
    ("omicron", "o"),
];

/// Integer coefficients over the simple roots, in diagram order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

/// Integer coefficients over the simple coroots.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Cocharacter(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct LabeledRootSystem {
    ty: RootType,
    letters: Vec<(String, String)>,
    cartan: Vec<Vec<i32>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    npos: usize,
    sums: Vec<Option<u16>>,
    label_of: Vec<Option<u32>>,
    root_of: BTreeMap<u32, usize>,
    synthetic: BTreeSet<u32>,
    table: Option<&'static str>,
}

/// Builds the full root system of the given type with its default labels:
/// the E6 table for E6, synthetic labels otherwise.
pub fn build_root_system(ty: RootType) -> Result<LabeledRootSystem> {
    match ty {
        RootType::E6 => LabeledRootSystem::with_table(&E6_POSITIVE),
        _ => LabeledRootSystem::synthetic(ty),
    }
}

/// Like [`build_root_system`] but parses a tag such as `"E6"` or `"A2"`.
pub fn build_root_system_from_tag(tag: &str) -> Result<LabeledRootSystem> {
    build_root_system(tag.parse()?)
}

impl LabeledRootSystem {
    fn unlabeled(ty: RootType) -> Self {
        let r = ty.rank();
        let mut cartan = vec![vec![0; r]; r];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in ty.edges() {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }
        let letters = (0..r)
            .map(|i| {
                if Some(i) == ty.sigma() {
                    ("sigma".to_string(), "s".to_string())
                } else if i < GREEK.len() {
                    (GREEK[i].0.to_string(), GREEK[i].1.to_string())
                } else {
                    (format!("a{}", i + 1), format!("a{}", i + 1))
                }
            })
            .collect();

        let simple: Vec<Root> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                Root(v)
            })
            .collect();
        let pair = |z: &Root, i: usize| -> i32 { (0..r).map(|j| z.0[j] * cartan[j][i]).sum() };
        let mut all: BTreeSet<Root> = simple.iter().cloned().collect();
        let mut frontier: Vec<Root> = simple.clone();
        while let Some(z) = frontier.pop() {
            for (i, s) in simple.iter().enumerate() {
                let n = pair(&z, i);
                let img = Root(z.0.iter().zip(&s.0).map(|(a, b)| a - n * b).collect());
                if all.insert(img.clone()) {
                    frontier.push(img);
                }
            }
        }
        let mut pos: Vec<Root> = all.iter().filter(|z| z.is_positive()).cloned().collect();
        pos.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(Root::neg));
        let index: HashMap<Root, usize> =
            roots.iter().enumerate().map(|(i, z)| (z.clone(), i)).collect();
        let n = roots.len();
        let mut sums = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(&k) = index.get(&roots[i].add(&roots[j])) {
                    sums[i * n + j] = Some(k as u16);
                }
            }
        }
        LabeledRootSystem {
            ty,
            letters,
            cartan,
            roots,
            index,
            npos,
            sums,
            label_of: vec![None; n],
            root_of: BTreeMap::new(),
            synthetic: BTreeSet::new(),
            table: None,
        }
    }

    /// All positive roots carry synthetic labels: unipotent-radical roots
    /// first, each block sorted by height and then lexicographically.
    pub fn synthetic(ty: RootType) -> Result<Self> {
        let mut sys = Self::unlabeled(ty);
        sys.assign_synthetic(1);
        Ok(sys)
    }

    /// Attaches the labels of an embedded table (after checksum and
    /// consistency checks), then labels the remaining positive roots
    /// synthetically after the largest table label.
    pub fn with_table(table: &EmbeddedTable) -> Result<Self> {
        let mut sys = Self::unlabeled(table.ty);
        let entries = table.entries()?;
        for (label, root) in &entries {
            let Some(&idx) = sys.index.get(root) else {
                return Err(EngineError::Table(format!(
                    "{}: label {label} is not a root of {}",
                    table.name, table.ty
                )));
            };
            if idx >= sys.npos {
                return Err(EngineError::Table(format!("{}: label {label} is negative", table.name)));
            }
            if sys.root_of.insert(*label, idx).is_some() || sys.label_of[idx].is_some() {
                return Err(EngineError::Table(format!("{}: label {label} repeated", table.name)));
            }
            sys.label_of[idx] = Some(*label);
        }
        let next = sys.root_of.keys().max().map_or(1, |m| m + 1);
        sys.assign_synthetic(next);
        sys.table = Some(table.name);
        sys.check_table_consistency()?;
        Ok(sys)
    }

    fn assign_synthetic(&mut self, mut next: u32) {
        let sigma = self.ty.sigma();
        let mut rest: Vec<usize> = (0..self.npos).filter(|&i| self.label_of[i].is_none()).collect();
        rest.sort_by_key(|&i| {
            let level = sigma.map_or(0, |s| i32::from(self.roots[i].0[s] == 0));
            (level, self.roots[i].height(), self.roots[i].0.clone())
        });
        for i in rest {
            self.label_of[i] = Some(next);
            self.root_of.insert(next, i);
            self.synthetic.insert(next);
            next += 1;
        }
    }

    fn check_table_consistency(&self) -> Result<()> {
        let fail = |m: String| Err(EngineError::Table(m));
        if self.ty == RootType::E6 && self.table.is_some() {
            if !self.synthetic.is_empty() {
                return fail("E6 table does not cover all positive roots".into());
            }
            if self.root_of.get(&21) != Some(&self.highest_root()) {
                return fail("E6 label 21 is not the highest root".into());
            }
            for (k, l) in (22..=26).enumerate() {
                if self.root_of.get(&l) != Some(&self.simple_root(k)) {
                    return fail(format!("E6 label {l} is not the simple root {}", self.letters[k].0));
                }
            }
        }
        // The σ-weight is additive on every labelled pair whose sum is a root.
        let labelled: Vec<usize> = self.root_of.values().copied().collect();
        for &i in &labelled {
            for &j in &labelled {
                if let Some(k) = self.sum(i, j) {
                    if self.sigma_weight(k) != self.sigma_weight(i) + self.sigma_weight(j) {
                        return fail("σ-weight not additive".into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn root_type(&self) -> RootType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    /// Name of the embedded table whose labels are attached, if any.
    pub fn table_name(&self) -> Option<&'static str> {
        self.table
    }

    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.cartan[i][j]
    }

    pub fn letter(&self, i: usize) -> &str {
        &self.letters[i].0
    }

    pub fn short_letter(&self, i: usize) -> &str {
        &self.letters[i].1
    }

    /// Simple-root index of a letter given by full or short name.
    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|(l, s)| l == name || s == name)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.roots[idx]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn index_of(&self, z: &Root) -> Option<usize> {
        self.index.get(z).copied()
    }

    pub fn neg(&self, idx: usize) -> usize {
        if idx < self.npos {
            idx + self.npos
        } else {
            idx - self.npos
        }
    }

    pub fn simple_root(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.index[&Root(v)]
    }

    pub fn highest_root(&self) -> usize {
        self.npos - 1
    }

    /// Index of `root_i + root_j` when that is a root.
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i * self.roots.len() + j].map(usize::from)
    }

    /// ⟨ζ, ξ∨⟩ for roots given by coefficients.
    pub fn pairing(&self, zeta: &Root, xi: &Root) -> i32 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += zeta.0[i] * self.cartan[i][j] * xi.0[j];
            }
        }
        s
    }

    /// ⟨ζ, α_i∨⟩ for the simple coroot `i`.
    pub fn pairing_simple(&self, zeta: &Root, i: usize) -> i32 {
        (0..self.rank()).map(|j| zeta.0[j] * self.cartan[j][i]).sum()
    }

    /// s_ξ·ζ = ζ − ⟨ζ, ξ∨⟩ξ.
    pub fn reflect(&self, xi: &Root, zeta: &Root) -> Root {
        let n = self.pairing(zeta, xi);
        Root(zeta.0.iter().zip(&xi.0).map(|(a, b)| a - n * b).collect())
    }

    pub fn reflect_idx(&self, xi: usize, zeta: usize) -> usize {
        self.index[&self.reflect(&self.roots[xi], &self.roots[zeta])]
    }

    pub fn sigma(&self) -> Option<usize> {
        self.ty.sigma()
    }

    pub fn sigma_weight(&self, idx: usize) -> i32 {
        self.sigma().map_or(0, |s| self.roots[idx].0[s])
    }

    pub fn levi_simples(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| Some(i) != self.sigma()).collect()
    }

    pub fn label(&self, idx: usize) -> Option<u32> {
        self.label_of[idx]
    }

    pub fn root_of_label(&self, label: u32) -> Option<usize> {
        self.root_of.get(&label).copied()
    }

    pub fn is_synthetic(&self, label: u32) -> bool {
        self.synthetic.contains(&label)
    }

    /// Labels of Ψ(R_u(P)) (positive σ-weight) in ascending label order;
    /// this is the normal-form order.
    pub fn unipotent_labels(&self) -> Vec<u32> {
        self.root_of
            .iter()
            .filter(|(_, &i)| self.sigma_weight(i) > 0)
            .map(|(&l, _)| l)
            .collect()
    }

    /// Labels of a given σ-weight inside Ψ(R_u(P)).
    pub fn labels_of_weight(&self, w: i32) -> Vec<u32> {
        self.unipotent_labels()
            .into_iter()
            .filter(|&l| self.sigma_weight(self.root_of[&l]) == w)
            .collect()
    }

    /// Unordered pairs {i, j} of unipotent labels with root_i + root_j equal
    /// to the root with label `target`.
    pub fn complementary_pairs(&self, target: u32) -> Vec<(u32, u32)> {
        let Some(t) = self.root_of_label(target) else {
            return Vec::new();
        };
        let us = self.unipotent_labels();
        let mut out = Vec::new();
        for (a, &i) in us.iter().enumerate() {
            for &j in &us[a + 1..] {
                if self.sum(self.root_of[&i], self.root_of[&j]) == Some(t) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Σ_i λ_i ⟨ζ, α_i∨⟩.
pub fn cochar_weight(sys: &LabeledRootSystem, zeta: &Root, lambda: &Cocharacter) -> i64 {
    (0..sys.rank())
        .map(|i| lambda.0[i] * i64::from(sys.pairing_simple(zeta, i)))
        .sum()
}

/// The least positive integral cocharacter vanishing on the Levi simple
/// roots and positive on the excluded node.
pub fn levi_cocharacter(
    sys: &LabeledRootSystem,
    levi: &[usize],
    excluded: usize,
) -> Result<Cocharacter> {
    const BOUND: i64 = 4;
    let r = sys.rank();
    let mut nodes: Vec<usize> = levi.to_vec();
    nodes.push(excluded);
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.len() != r || levi.contains(&excluded) {
        return Err(EngineError::NoIntegralCocharacter(BOUND));
    }
    // Row j of the system is ⟨α_j, λ⟩ = Σ_i cartan[j][i] λ_i.
    let a = Matrix::from_rows(
        (0..r)
            .map(|j| (0..r).map(|i| Rational::from_integer(sys.cartan(j, i) as i64)).collect())
            .collect(),
    );
    let rhs: Vec<Rational> = (0..r)
        .map(|j| if j == excluded { Rational::one() } else { Rational::zero() })
        .collect();
    let sol = a.solve(&rhs).ok_or(EngineError::NoIntegralCocharacter(BOUND))?;
    for k in 1..=BOUND {
        let scaled: Vec<Rational> = sol.iter().map(|x| *x * Rational::from_integer(k)).collect();
        if scaled.iter().all(|x| x.is_integer()) {
            return Ok(Cocharacter(scaled.iter().map(|x| x.to_integer()).collect()));
        }
    }
    Err(EngineError::NoIntegralCocharacter(BOUND))
}

/// The cocharacter defining the standard parabolic with Levi of type A for
/// the exceptional types.
pub fn standard_levi_cocharacter(sys: &LabeledRootSystem) -> Result<Cocharacter> {
    let sigma = sys
        .sigma()
        .ok_or_else(|| EngineError::UnknownType(format!("{} has no σ-node", sys.root_type())))?;
    levi_cocharacter(sys, &sys.levi_simples(), sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e6() -> LabeledRootSystem {
        build_root_system(RootType::E6).unwrap()
    }

    fn root_of(sys: &LabeledRootSystem, l: u32) -> Root {
        sys.root(sys.root_of_label(l).unwrap()).clone()
    }

    #[test]
    fn root_counts() {
        for (ty, n) in [
            (RootType::A(2), 6),
            (RootType::D(4), 24),
            (RootType::E6, 72),
            (RootType::E7, 126),
            (RootType::E8, 240),
        ] {
            let sys = LabeledRootSystem::synthetic(ty).unwrap();
            assert_eq!(sys.num_roots(), n, "{ty}");
            for z in sys.roots() {
                assert_eq!(sys.pairing(z, z), 2);
            }
        }
    }

    #[test]
    fn e6_table_attaches_all_labels() {
        let sys = e6();
        assert_eq!(sys.num_positive(), 36);
        assert_eq!(sys.root_of_label(21), Some(sys.highest_root()));
        assert_eq!(root_of(&sys, 21).0, vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(sys.unipotent_labels(), (1..=21).collect::<Vec<_>>());
    }

    #[test]
    fn a2_positive_roots() {
        let sys = build_root_system_from_tag("A2").unwrap();
        let pos: Vec<Vec<i32>> = (0..3).map(|i| sys.root(i).0.clone()).collect();
        assert_eq!(pos, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(build_root_system_from_tag("F4").is_err());
        assert!(build_root_system_from_tag("E9").is_err());
    }

    #[test]
    fn e6_pairings_follow_the_diagram() {
        let sys = e6();
        let a = sys.root(sys.simple_root(0)).clone();
        let g = sys.root(sys.simple_root(2)).clone();
        let s = sys.root(sys.simple_root(5)).clone();
        assert_eq!(sys.pairing(&a, &a), 2);
        assert_eq!(sys.pairing(&s, &g), -1);
        assert_eq!(sys.pairing(&s, &a), 0);
    }

    #[test]
    fn reflections() {
        let sys = build_root_system_from_tag("A2").unwrap();
        let a = sys.root(sys.simple_root(0)).clone();
        let b = sys.root(sys.simple_root(1)).clone();
        assert_eq!(sys.reflect(&a, &a), a.neg());
        assert_eq!(sys.reflect(&a, &b), a.add(&b));
        let e8 = LabeledRootSystem::synthetic(RootType::E8).unwrap();
        for xi in 0..e8.num_roots() {
            for z in (0..e8.num_roots()).step_by(7) {
                let r = e8.reflect_idx(xi, z);
                assert_eq!(e8.reflect_idx(xi, r), z);
            }
        }
    }

    #[test]
    fn e6_complementary_pairs_of_the_highest_root() {
        // Read off Table 4 directly: e.g. root 10 = (0,0,1,1,0 | 1) and
        // root 13 = (1,2,2,1,1 | 1) add up to root 21.
        let sys = e6();
        let pairs = sys.complementary_pairs(21);
        let expected = vec![
            (1, 6),
            (2, 5),
            (3, 4),
            (7, 8),
            (9, 14),
            (10, 13),
            (11, 12),
            (15, 20),
            (16, 19),
            (17, 18),
        ];
        let mut got = pairs.clone();
        got.sort_unstable();
        assert_eq!(got, expected);
    }

    #[test]
    fn roots_one_and_two_do_not_sum_to_a_root() {
        let sys = e6();
        let (i, j) = (sys.root_of_label(1).unwrap(), sys.root_of_label(2).unwrap());
        assert_eq!(sys.sum(i, j), None);
    }

    #[test]
    fn e6_levi_cocharacter() {
        let sys = e6();
        let lambda = standard_levi_cocharacter(&sys).unwrap();
        assert_eq!(lambda.0, vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(cochar_weight(&sys, sys.root(sys.simple_root(0)), &lambda), 0);
        assert_eq!(cochar_weight(&sys, &root_of(&sys, 21), &lambda), 2);
        for l in sys.unipotent_labels() {
            let z = root_of(&sys, l);
            assert_eq!(cochar_weight(&sys, &z, &lambda), i64::from(z.0[5]));
        }
    }

    #[test]
    fn e7_levi_cocharacter_grades_the_radical() {
        let sys = LabeledRootSystem::synthetic(RootType::E7).unwrap();
        let lambda = standard_levi_cocharacter(&sys).unwrap();
        let mut counts = BTreeMap::new();
        for l in sys.unipotent_labels() {
            let z = sys.root(sys.root_of_label(l).unwrap());
            let w = cochar_weight(&sys, z, &lambda);
            assert_eq!(w, 2 * i64::from(z.0[6]));
            *counts.entry(w).or_insert(0) += 1;
        }
        assert_eq!(counts, BTreeMap::from([(2, 35), (4, 7)]));
        for i in sys.levi_simples() {
            assert_eq!(cochar_weight(&sys, sys.root(sys.simple_root(i)), &lambda), 0);
        }
    }

    #[test]
    fn a2_levi_cocharacter() {
        let sys = build_root_system_from_tag("A2").unwrap();
        let lambda = levi_cocharacter(&sys, &[0], 1).unwrap();
        assert_eq!(cochar_weight(&sys, sys.root(sys.simple_root(0)), &lambda), 0);
        assert!(cochar_weight(&sys, sys.root(sys.simple_root(1)), &lambda) > 0);
    }

    #[test]
    fn embedded_tables_are_consistent() {
        let e7 = LabeledRootSystem::with_table(&E7_CASE2).unwrap();
        assert_eq!(e7.root_of_label(15), Some(e7.highest_root()));
        assert!(e7.is_synthetic(16) && !e7.is_synthetic(15));
        let e8a = LabeledRootSystem::with_table(&E8_CASE1).unwrap();
        let e8b = LabeledRootSystem::with_table(&E8_CASE2).unwrap();
        for sys in [&e7, &e8a, &e8b] {
            assert_eq!(sys.unipotent_labels().len(), sys.num_positive() - sys.rank() * (sys.rank() - 1) / 2);
        }
        assert!(e8a.complementary_pairs(8).contains(&(3, 4)));
        assert!(e8b.complementary_pairs(15).contains(&(4, 9)));
        assert!(e7.complementary_pairs(15).contains(&(2, 10)));
    }

    #[test]
    fn checksums_match() {
        for t in [&E6_POSITIVE, &E7_CASE2, &E8_CASE1, &E8_CASE2] {
            assert!(t.entries().is_ok(), "{}", t.name);
        }
    }
}
