use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perm::Perm;
use crate::error::{EngineError, Result};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A subgroup of S_n with its full element list and a membership bitset
/// indexed by [`Perm::rank`].
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    member: Vec<u64>,
}

impl PermGroup {
    pub fn generate(n: usize, gens: &[Perm]) -> Self {
        let mut member = vec![0u64; factorial(n).div_ceil(64)];
        let id = Perm::identity(n);
        let mut elements = vec![id];
        set_bit(&mut member, id.rank());
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for g in gens {
                let y = x.compose(g);
                let r = y.rank();
                if !get_bit(&member, r) {
                    set_bit(&mut member, r);
                    elements.push(y);
                }
            }
            i += 1;
        }
        let gens = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        PermGroup {
            n,
            gens,
            elements,
            member,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        get_bit(&self.member, p.rank())
    }

    fn sorted_ranks(&self) -> Box<[u32]> {
        let mut r: Vec<u32> = self.elements.iter().map(|p| p.rank() as u32).collect();
        r.sort_unstable();
        r.into_boxed_slice()
    }

    /// Drops generators that the others already generate.
    fn prune(mut self) -> Self {
        let mut k = 0;
        while k < self.gens.len() && self.gens.len() > 1 {
            let mut rest = self.gens.clone();
            rest.remove(k);
            if PermGroup::generate(self.n, &rest).order() == self.order() {
                self.gens = rest;
            } else {
                k += 1;
            }
        }
        self
    }

    pub fn normalizer(&self) -> PermGroup {
        let n = self.n;
        let mut gens: Vec<Perm> = self.gens.clone();
        let mut current = PermGroup::generate(n, &gens);
        for r in 0..factorial(n) {
            let g = Perm::unrank(n, r);
            if current.contains(&g) {
                continue;
            }
            if self.gens.iter().all(|u| self.contains(&u.conjugate_by(&g))) {
                gens.push(g);
                current = PermGroup::generate(n, &gens);
            }
        }
        current
    }

    fn derived_order(&self) -> usize {
        let mut comms = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        let mut d = PermGroup::generate(self.n, &comms);
        loop {
            let extra: Vec<Perm> = d
                .gens
                .iter()
                .flat_map(|s| self.gens.iter().map(move |g| s.conjugate_by(g)))
                .filter(|c| !d.contains(c))
                .collect();
            if extra.is_empty() {
                return d.order();
            }
            let mut gens = d.gens.clone();
            gens.push(extra[0]);
            d = PermGroup::generate(self.n, &gens);
        }
    }

    fn orbit_sizes(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in &self.gens {
            for i in 0..self.n {
                let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
                parent[a] = b;
            }
        }
        let mut counts = BTreeMap::new();
        for i in 0..self.n {
            *counts.entry(find(&mut parent, i)).or_insert(0) += 1;
        }
        let mut v: Vec<usize> = counts.into_values().collect();
        v.sort_unstable();
        v
    }

    fn signature(&self) -> Signature {
        let mut hist = BTreeMap::new();
        for e in &self.elements {
            *hist.entry(e.cycle_type()).or_insert(0usize) += 1;
        }
        Signature {
            order: self.order(),
            cycle_types: hist.into_iter().collect(),
            orbits: self.orbit_sizes(),
            derived: self.derived_order(),
        }
    }
}

fn get_bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Signature {
    order: usize,
    cycle_types: Vec<(Vec<usize>, usize)>,
    orbits: Vec<usize>,
    derived: usize,
}

/// Some `g` with `g A g⁻¹ = B`, found by mapping one generator of `A` onto
/// each element of `B` of the same cycle type and running through the
/// centralizer of that generator.
pub fn conjugating_element(a: &PermGroup, b: &PermGroup) -> Option<Perm> {
    if a.order() != b.order() || a.degree() != b.degree() {
        return None;
    }
    let n = a.degree();
    if a.gens.is_empty() {
        return Some(Perm::identity(n));
    }
    // Centralizer sizes are n!/|class|; pick the generator whose candidate
    // set in B times its centralizer is smallest.
    let cost = |g: &Perm| {
        let ty = g.cycle_type();
        let in_b = b.elements.iter().filter(|x| x.cycle_type() == ty).count();
        in_b * centralizer_order(&ty)
    };
    let pivot = *a.gens.iter().min_by_key(|g| cost(g))?;
    let cent = centralizer(&pivot);
    let ty = pivot.cycle_type();
    for target in b.elements.iter().filter(|x| x.cycle_type() == ty) {
        let h = pivot.conjugator_to(target)?;
        for c in &cent {
            let g = h.compose(c);
            if a.gens.iter().all(|x| b.contains(&x.conjugate_by(&g))) {
                return Some(g);
            }
        }
    }
    None
}

fn centralizer_order(cycle_type: &[usize]) -> usize {
    let mut counts = BTreeMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    counts
        .into_iter()
        .map(|(l, m)| l.pow(m as u32) * factorial(m))
        .product()
}

/// All g with g p g⁻¹ = p: maps permuting cycles of equal length, each
/// followed by a rotation.
fn centralizer(p: &Perm) -> Vec<Perm> {
    let n = p.degree();
    let cycles = p.cycles();
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; cycles.len()];
    fn place(
        k: usize,
        cycles: &[Vec<usize>],
        used: &mut [bool],
        img: &mut [usize],
        out: &mut Vec<Perm>,
    ) {
        if k == cycles.len() {
            out.push(Perm::from_images(img).expect("bijection"));
            return;
        }
        let src = &cycles[k];
        for (j, dst) in cycles.iter().enumerate() {
            if used[j] || dst.len() != src.len() {
                continue;
            }
            used[j] = true;
            for rot in 0..dst.len() {
                for (i, &x) in src.iter().enumerate() {
                    img[x] = dst[(i + rot) % dst.len()];
                }
                place(k + 1, cycles, used, img, out);
            }
            used[j] = false;
        }
    }
    place(0, &cycles, &mut used, &mut img, &mut out);
    out
}

/// One conjugacy class of subgroups of S_n.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ClassRecord", into = "ClassRecord")]
pub struct SubgroupClass {
    pub id: usize,
    pub degree: usize,
    pub order: usize,
    pub normalizer_order: usize,
    pub generators: Vec<Perm>,
}

impl SubgroupClass {
    pub fn group(&self) -> PermGroup {
        PermGroup::generate(self.degree, &self.generators)
    }

    /// `id order gen1, gen2, ...` with generators in cycle notation.
    pub fn export_line(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        let gens = if gens.is_empty() { "()".to_string() } else { gens.join(", ") };
        format!("{} {} {}", self.id, self.order, gens)
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRecord {
    id: usize,
    degree: usize,
    order: usize,
    normalizer_order: usize,
    generators: Vec<String>,
}

impl From<SubgroupClass> for ClassRecord {
    fn from(c: SubgroupClass) -> Self {
        ClassRecord {
            id: c.id,
            degree: c.degree,
            order: c.order,
            normalizer_order: c.normalizer_order,
            generators: c.generators.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<ClassRecord> for SubgroupClass {
    type Error = EngineError;

    fn try_from(r: ClassRecord) -> Result<Self> {
        let generators = r
            .generators
            .iter()
            .map(|s| super::perm::parse_cycles(r.degree, s))
            .collect::<Result<_>>()?;
        Ok(SubgroupClass {
            id: r.id,
            degree: r.degree,
            order: r.order,
            normalizer_order: r.normalizer_order,
            generators,
        })
    }
}

/// Representatives x ∉ U of the orbits of U ⋊ N(U) acting by
/// x ↦ n u x n⁻¹; ⟨U, x⟩ only depends on the orbit up to conjugacy.
fn extension_candidates(u: &PermGroup, normalizer: &PermGroup) -> Vec<Perm> {
    let n = u.degree();
    let total = factorial(n);
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        let mut y = x;
        while p[y as usize] != r {
            let next = p[y as usize];
            p[y as usize] = r;
            y = next;
        }
        r
    }
    let union = |p: &mut Vec<u32>, a: u32, b: u32| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            p[hi as usize] = lo;
        }
    };
    for r in 0..total {
        let x = Perm::unrank(n, r);
        if u.contains(&x) {
            continue;
        }
        for g in normalizer.generators() {
            union(&mut parent, r as u32, x.conjugate_by(g).rank() as u32);
        }
        for g in u.generators() {
            union(&mut parent, r as u32, g.compose(&x).rank() as u32);
        }
    }
    (0..total)
        .filter(|&r| find(&mut parent, r as u32) == r as u32)
        .map(|r| Perm::unrank(n, r))
        .filter(|x| !u.contains(x))
        .collect()
}

/// All conjugacy classes of subgroups of S_n, trivial group included,
/// ordered by group order and then by discovery.
pub fn classify_subgroups(n: usize) -> Result<Vec<SubgroupClass>> {
    if !(2..=8).contains(&n) {
        return Err(EngineError::DegreeOutOfRange(n));
    }
    let mut reps: Vec<PermGroup> = vec![PermGroup::generate(n, &[])];
    let mut by_sig: HashMap<Signature, Vec<usize>> = HashMap::new();
    by_sig.entry(reps[0].signature()).or_default().push(0);
    let mut seen: HashSet<Box<[u32]>> = HashSet::new();
    seen.insert(reps[0].sorted_ranks());
    let mut normalizer_orders = Vec::new();

    let mut next = 0;
    while next < reps.len() {
        let u = reps[next].clone();
        let norm = u.normalizer();
        normalizer_orders.push(norm.order());
        let candidates = extension_candidates(&u, &norm);
        let extended: Vec<PermGroup> = candidates
            .par_iter()
            .map(|x| {
                let mut gens = u.gens.clone();
                gens.push(*x);
                PermGroup::generate(n, &gens)
            })
            .collect();
        let fresh: Vec<PermGroup> = extended
            .into_iter()
            .filter(|v| seen.insert(v.sorted_ranks()))
            .collect();
        // Test the new groups against the known classes in parallel; groups
        // new to this batch are then compared with each other in order.
        let known = reps.len();
        let tested: Vec<(PermGroup, Signature, bool)> = fresh
            .into_par_iter()
            .map(|v| {
                let sig = v.signature();
                let hit = by_sig
                    .get(&sig)
                    .is_some_and(|b| b.iter().any(|&c| conjugating_element(&v, &reps[c]).is_some()));
                (v, sig, hit)
            })
            .collect();
        for (v, sig, hit) in tested {
            if hit {
                continue;
            }
            let bucket = by_sig.entry(sig).or_default();
            if bucket
                .iter()
                .any(|&c| c >= known && conjugating_element(&v, &reps[c]).is_some())
            {
                continue;
            }
            bucket.push(reps.len());
            reps.push(v.prune());
        }
        next += 1;
    }

    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by_key(|&i| (reps[i].order(), i));
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(k, i)| SubgroupClass {
            id: k + 1,
            degree: n,
            order: reps[i].order(),
            normalizer_order: normalizer_orders[i],
            generators: reps[i].gens.clone(),
        })
        .collect())
}

/// Index of the class containing ⟨gens⟩.
pub fn match_class(classes: &[SubgroupClass], gens: &[Perm]) -> Option<usize> {
    let n = classes.first()?.degree;
    let g = PermGroup::generate(n, gens);
    classes
        .iter()
        .position(|c| c.order == g.order() && conjugating_element(&g, &c.group()).is_some())
}
