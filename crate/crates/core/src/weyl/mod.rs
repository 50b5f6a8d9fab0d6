//! Weyl groups acting on roots, the S_n picture of type-A Levis, orbit
//! computations and the classification of subgroups of S_n.

mod classify;
mod perm;

pub use classify::{classify_subgroups, conjugating_element, match_class, PermGroup, SubgroupClass};
pub use perm::{parse_cycles, Perm, MAX_DEGREE};

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{EngineError, Result};
use crate::rootdata::{LabeledRootSystem, Root};

/// A Weyl group element stored as its permutation of all roots (by root
/// index). Products act on the left: `(v * w)(ζ) = v(w(ζ))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    images: Vec<u16>,
}

impl WeylElement {
    pub fn identity(sys: &LabeledRootSystem) -> Self {
        WeylElement {
            images: (0..sys.num_roots() as u16).collect(),
        }
    }

    pub fn simple_reflection(sys: &LabeledRootSystem, i: usize) -> Self {
        let a = sys.simple_root(i);
        WeylElement {
            images: (0..sys.num_roots()).map(|z| sys.reflect_idx(a, z) as u16).collect(),
        }
    }

    /// `s_{i_1} s_{i_2} ... s_{i_k}` for simple-root indices.
    pub fn from_indices(sys: &LabeledRootSystem, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(sys), |acc, &i| {
            acc.compose(&Self::simple_reflection(sys, i))
        })
    }

    /// The product `n_{x_1} n_{x_2} ...` for diagram letters of the Levi
    /// (full names like `beta` or short ones like `b`).
    pub fn from_word<S: AsRef<str>>(sys: &LabeledRootSystem, word: &[S]) -> Result<Self> {
        let levi = sys.levi_simples();
        let idx = word
            .iter()
            .map(|s| {
                let s = s.as_ref();
                sys.letter_index(s)
                    .filter(|i| levi.contains(i))
                    .ok_or_else(|| EngineError::NotALeviLetter(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(sys, &idx))
    }

    /// Whitespace-separated letters, e.g. `"a b g b"`.
    pub fn parse_word(sys: &LabeledRootSystem, word: &str) -> Result<Self> {
        let letters: Vec<&str> = word.split_whitespace().collect();
        Self::from_word(sys, &letters)
    }

    pub fn apply(&self, root: usize) -> usize {
        self.images[root] as usize
    }

    pub fn apply_root(&self, sys: &LabeledRootSystem, z: &Root) -> Option<Root> {
        sys.index_of(z).map(|i| sys.root(self.apply(i)).clone())
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        WeylElement { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// A reduced word in simple-reflection indices.
    pub fn reduced_word(&self, sys: &LabeledRootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        let simples: Vec<usize> = (0..sys.rank()).map(|i| sys.simple_root(i)).collect();
        while let Some(i) = (0..sys.rank()).find(|&i| !sys.root(w.apply(simples[i])).is_positive()) {
            w = w.compose(&Self::simple_reflection(sys, i));
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// Reduced word spelled with short diagram letters.
    pub fn word_letters(&self, sys: &LabeledRootSystem) -> Vec<String> {
        self.reduced_word(sys)
            .into_iter()
            .map(|i| sys.short_letter(i).to_string())
            .collect()
    }

    /// Image of α_i as a root vector.
    pub fn simple_image(&self, sys: &LabeledRootSystem, i: usize) -> Root {
        sys.root(self.apply(sys.simple_root(i))).clone()
    }

    /// The permutation π of S_n with `w(e_i − e_j) = e_{π(i)} − e_{π(j)}`
    /// when `w` lies in the type-A Levi; `None` otherwise.
    pub fn levi_permutation(&self, sys: &LabeledRootSystem) -> Option<Perm> {
        let levi = levi_chain(sys)?;
        let n = levi.len() + 1;
        // e_a − e_b as a root vector (a < b).
        let mut pos: BTreeMap<Root, (usize, usize)> = BTreeMap::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut v = vec![0; sys.rank()];
                for &k in &levi[a..b] {
                    v[k] = 1;
                }
                pos.insert(Root(v.clone()), (a, b));
                pos.insert(Root(v).neg(), (b, a));
            }
        }
        let mut img = vec![usize::MAX; n];
        for (k, &s) in levi.iter().enumerate() {
            let &(a, b) = pos.get(&self.simple_image(sys, s))?;
            for (x, y) in [(k, a), (k + 1, b)] {
                if img[x] != usize::MAX && img[x] != y {
                    return None;
                }
                img[x] = y;
            }
        }
        Perm::from_images(&img).ok()
    }

    /// Lifts a permutation of S_n to the Levi Weyl group via the
    /// identification of the chain simples with (1 2), (2 3), ...
    pub fn from_perm(sys: &LabeledRootSystem, p: &Perm) -> Result<Self> {
        let levi = levi_chain(sys)
            .ok_or_else(|| EngineError::UnknownType(format!("{} has no type-A Levi", sys.root_type())))?;
        if p.degree() != levi.len() + 1 {
            return Err(EngineError::DegreeOutOfRange(p.degree()));
        }
        let idx: Vec<usize> = p.adjacent_word().into_iter().map(|a| levi[a]).collect();
        Ok(Self::from_indices(sys, &idx))
    }

    /// The action on a set of labels, as a map label ↦ label.
    pub fn on_labels(&self, sys: &LabeledRootSystem, labels: &[u32]) -> Result<BTreeMap<u32, u32>> {
        let set: BTreeSet<u32> = labels.iter().copied().collect();
        let mut out = BTreeMap::new();
        for &l in labels {
            let idx = sys.root_of_label(l).ok_or(EngineError::UnknownLabel(l))?;
            let img = sys.label(self.apply(idx)).filter(|m| set.contains(m));
            out.insert(l, img.ok_or(EngineError::DomainNotStable)?);
        }
        Ok(out)
    }

    /// Non-trivial cycles on the given labels, each starting at its least
    /// label, ordered by that label.
    pub fn label_cycles(&self, sys: &LabeledRootSystem, labels: &[u32]) -> Result<Vec<Vec<u32>>> {
        let map = self.on_labels(sys, labels)?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in map.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cyc = vec![start];
            let mut x = map[&start];
            while x != start {
                seen.insert(x);
                cyc.push(x);
                x = map[&x];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        Ok(out)
    }
}

/// Cycle notation for label cycles, e.g. `(1 5 4)(2 3 6)`.
pub fn format_cycles(cycles: &[Vec<u32>]) -> String {
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let s: Vec<String> = c.iter().map(u32::to_string).collect();
            format!("({})", s.join(" "))
        })
        .collect()
}

/// The Levi simples ordered along the A-chain, if they form one.
pub fn levi_chain(sys: &LabeledRootSystem) -> Option<Vec<usize>> {
    let levi = sys.levi_simples();
    let ok = levi.windows(2).all(|w| sys.cartan(w[0], w[1]) == -1)
        && levi
            .iter()
            .enumerate()
            .all(|(a, &x)| levi[a + 1..].iter().skip(1).all(|&y| sys.cartan(x, y) == 0));
    ok.then_some(levi)
}

/// Orbits of the group generated by `gens` on a set of labels.
pub fn orbits(sys: &LabeledRootSystem, gens: &[WeylElement], domain: &[u32]) -> Result<Vec<Vec<u32>>> {
    let maps = gens
        .iter()
        .map(|g| g.on_labels(sys, domain))
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut sorted: Vec<u32> = domain.to_vec();
    sorted.sort_unstable();
    for &l in &sorted {
        if !seen.insert(l) {
            continue;
        }
        let mut orbit = vec![l];
        let mut queue = VecDeque::from([l]);
        while let Some(x) = queue.pop_front() {
            for m in &maps {
                let y = m[&x];
                if seen.insert(y) {
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// Every element of the Weyl group, by breadth-first search over words.
/// Practical up to E7 (2903040 elements); E6 has 51840.
pub fn full_weyl_group(sys: &LabeledRootSystem) -> Vec<WeylElement> {
    let gens: Vec<WeylElement> = (0..sys.rank()).map(|i| WeylElement::simple_reflection(sys, i)).collect();
    let id = WeylElement::identity(sys);
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut all = vec![id];
    let mut i = 0;
    while i < all.len() {
        for g in &gens {
            let y = all[i].compose(g);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                all.push(y);
            }
        }
        i += 1;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, RootType};
    use proptest::prelude::*;

    const Q1: &str = "a b g b a b g b g d e d g e";
    const Q2: &str = "a b g d g b a b d e d";

    fn e6() -> LabeledRootSystem {
        build_root_system(RootType::E6).unwrap()
    }

    fn labels_1_to_21() -> Vec<u32> {
        (1..=21).collect()
    }

    #[test]
    fn empty_word_is_identity() {
        let sys = e6();
        let w = WeylElement::from_word::<&str>(&sys, &[]).unwrap();
        assert!(w.is_identity());
        assert!(WeylElement::parse_word(&sys, "a s").is_err());
        assert!(WeylElement::parse_word(&sys, "zeta").is_err());
    }

    #[test]
    fn case4_words_match_displayed_cycles() {
        let sys = e6();
        let q1 = WeylElement::parse_word(&sys, Q1).unwrap();
        let q2 = WeylElement::parse_word(&sys, Q2).unwrap();
        let l = labels_1_to_21();
        assert_eq!(
            format_cycles(&q1.label_cycles(&sys, &l).unwrap()),
            "(1 5 4)(2 3 6)(9 12 10)(11 13 14)(15 16 17)(18 20 19)"
        );
        assert_eq!(
            format_cycles(&q2.label_cycles(&sys, &l).unwrap()),
            "(1 2)(3 4)(5 6)(7 8)(9 14)(10 11)(12 13)(15 18)(16 19)(17 20)"
        );
        assert_eq!(q1.levi_permutation(&sys).unwrap().to_string(), "(1 4 2)(3 6 5)");
        assert_eq!(q2.levi_permutation(&sys).unwrap().to_string(), "(1 5)(2 3)(4 6)");
    }

    #[test]
    fn case4_orbits() {
        let sys = e6();
        let gens = [
            WeylElement::parse_word(&sys, Q1).unwrap(),
            WeylElement::parse_word(&sys, Q2).unwrap(),
        ];
        let orbs = orbits(&sys, &gens, &labels_1_to_21()).unwrap();
        let expect: Vec<Vec<u32>> = vec![
            (1..=6).collect(),
            vec![7, 8],
            (9..=14).collect(),
            (15..=20).collect(),
            vec![21],
        ];
        assert_eq!(orbs, expect);
        let trivial = orbits(&sys, &[WeylElement::identity(&sys)], &[1, 2, 3]).unwrap();
        assert_eq!(trivial, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(orbits(&sys, &gens, &[1, 2]), Err(EngineError::DomainNotStable));
    }

    #[test]
    fn e7_case2_orbit() {
        use crate::rootdata::E7_CASE2;
        let sys = LabeledRootSystem::with_table(&E7_CASE2).unwrap();
        let gens = [
            WeylElement::parse_word(&sys, "e g a").unwrap(),
            WeylElement::parse_word(&sys, "a g a b g a b g h e d g b").unwrap(),
        ];
        let orbs = orbits(&sys, &gens, &sys.unipotent_labels()).unwrap();
        assert!(orbs.contains(&(1..=14).collect()));
        let q1 = gens[0].on_labels(&sys, &sys.unipotent_labels()).unwrap();
        assert_eq!((q1[&2], q1[&10], q1[&15]), (10, 2, 15));
    }

    #[test]
    fn weyl_group_orders() {
        let a2 = build_root_system(RootType::A(2)).unwrap();
        assert_eq!(full_weyl_group(&a2).len(), 6);
        assert_eq!(full_weyl_group(&e6()).len(), 51840);
    }

    #[test]
    fn reduced_words_have_minimal_length() {
        let sys = e6();
        let w0 = full_weyl_group(&sys)
            .into_iter()
            .max_by_key(|w| w.reduced_word(&sys).len())
            .unwrap();
        // the longest element has length |Φ⁺|
        assert_eq!(w0.reduced_word(&sys).len(), 36);
    }

    fn levi_word() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..5, 0..20)
    }

    proptest! {
        #[test]
        fn words_multiply(u in levi_word(), v in levi_word()) {
            let sys = e6();
            let mut uv = u.clone();
            uv.extend(&v);
            let a = WeylElement::from_indices(&sys, &u);
            let b = WeylElement::from_indices(&sys, &v);
            prop_assert_eq!(WeylElement::from_indices(&sys, &uv), a.compose(&b));
            let pa = a.levi_permutation(&sys).unwrap();
            let pb = b.levi_permutation(&sys).unwrap();
            prop_assert_eq!(a.compose(&b).levi_permutation(&sys).unwrap(), pa.compose(&pb));
        }

        #[test]
        fn lift_round_trips(r in 0usize..720) {
            let sys = e6();
            let p = Perm::unrank(6, r);
            let w = WeylElement::from_perm(&sys, &p).unwrap();
            prop_assert_eq!(w.levi_permutation(&sys).unwrap(), p);
            let back = WeylElement::from_indices(&sys, &w.reduced_word(&sys));
            prop_assert_eq!(back, w);
        }

        #[test]
        fn label_action_is_a_homomorphism(u in levi_word(), v in levi_word()) {
            let sys = e6();
            let a = WeylElement::from_indices(&sys, &u);
            let b = WeylElement::from_indices(&sys, &v);
            let l: Vec<u32> = (1..=21).collect();
            let ma = a.on_labels(&sys, &l).unwrap();
            let mb = b.on_labels(&sys, &l).unwrap();
            let mab = a.compose(&b).on_labels(&sys, &l).unwrap();
            for x in l {
                prop_assert_eq!(mab[&x], ma[&mb[&x]]);
            }
        }
    }
}
