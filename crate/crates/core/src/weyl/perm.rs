use std::fmt;
use std::str::FromStr;

use crate::error::{EngineError, Result};

pub const MAX_DEGREE: usize = 8;

/// A permutation of {0, .., n-1}, n ≤ 8, acting on the left:
/// `(p * q)(i) = p(q(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        let mut img = [0u8; MAX_DEGREE];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm { n: n as u8, img }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(EngineError::DegreeOutOfRange(n));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut p = Perm::identity(n);
        for (i, &x) in images.iter().enumerate() {
            if x >= n || seen[x] {
                return Err(EngineError::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
            p.img[i] = x as u8;
        }
        Ok(p)
    }

    /// The adjacent transposition (i i+1), zero-based.
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut p = Perm::identity(n);
        p.img.swap(i, i + 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        (0..self.degree()).map(|i| self.apply(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree()).all(|i| self.apply(i) == i)
    }

    pub fn compose(&self, q: &Perm) -> Perm {
        let mut r = *self;
        for i in 0..self.degree() {
            r.img[i] = self.img[q.img[i] as usize];
        }
        r
    }

    pub fn inverse(&self) -> Perm {
        let mut r = *self;
        for i in 0..self.degree() {
            r.img[self.img[i] as usize] = i as u8;
        }
        r
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// Position of this permutation in the lexicographic list of S_n.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut r = 0;
        for i in 0..n {
            let smaller = (i + 1..n).filter(|&j| self.img[j] < self.img[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }

    pub fn unrank(n: usize, mut r: usize) -> Perm {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut avail: Vec<usize> = (0..n).collect();
        let mut p = Perm::identity(n);
        for i in 0..n {
            p.img[i] = avail.remove(digits[i]) as u8;
        }
        p
    }

    /// Some `h` with `h self h⁻¹ = other`, if the cycle types agree.
    pub fn conjugator_to(&self, other: &Perm) -> Option<Perm> {
        let mut a = self.cycles();
        let mut b = other.cycles();
        a.sort_by_key(|c| std::cmp::Reverse(c.len()));
        b.sort_by_key(|c| std::cmp::Reverse(c.len()));
        if a.iter().map(Vec::len).ne(b.iter().map(Vec::len)) {
            return None;
        }
        let mut h = Perm::identity(self.degree());
        for (ca, cb) in a.iter().zip(&b) {
            for (x, y) in ca.iter().zip(cb) {
                h.img[*x] = *y as u8;
            }
        }
        Some(h)
    }

    /// Word `[a_1, .., a_k]` of adjacent transpositions with
    /// `self = τ_{a_1} ∘ .. ∘ τ_{a_k}`, τ_i = (i i+1).
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut p = *self;
        let mut rev = Vec::new();
        while let Some(i) = (0..p.degree().saturating_sub(1)).find(|&i| p.img[i] > p.img[i + 1]) {
            p = p.compose(&Perm::adjacent(p.degree(), i));
            rev.push(i);
        }
        rev.reverse();
        rev
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Cycle notation with 1-based points, e.g. `(1 5)(2 3)(4 6)`; `()` for
/// the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses cycle notation of a permutation of the given degree.
pub fn parse_cycles(n: usize, s: &str) -> Result<Perm> {
    let bad = || EngineError::Parse(format!("bad cycle notation `{s}`"));
    let mut p = Perm::identity(n);
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = body.find(')').ok_or_else(bad)?;
        let pts: Vec<usize> = body[..end]
            .split_whitespace()
            .map(|t| t.parse::<usize>().ok().filter(|&x| x >= 1 && x <= n).map(|x| x - 1))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        let mut c = Perm::identity(n);
        for (k, &x) in pts.iter().enumerate() {
            c.img[x] = pts[(k + 1) % pts.len()] as u8;
        }
        // a product of cycles composes as functions, rightmost first
        p = p.compose(&c);
        rest = body[end + 1..].trim_start();
    }
    Perm::from_images(&p.images())
}

impl FromStr for Perm {
    type Err = EngineError;

    /// Degree defaults to the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        parse_cycles(n, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_round_trip() {
        let p = parse_cycles(6, "(1 4 2)(3 6 5)").unwrap();
        assert_eq!(p.to_string(), "(1 4 2)(3 6 5)");
        assert_eq!(p.order(), 3);
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert!(parse_cycles(3, "(1 4)").is_err());
    }

    #[test]
    fn rank_is_a_bijection_on_s5() {
        let mut seen = vec![false; 120];
        for r in 0..120 {
            let p = Perm::unrank(5, r);
            assert_eq!(p.rank(), r);
            seen[r] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    fn perm8() -> impl Strategy<Value = Perm> {
        (0usize..40320).prop_map(|r| Perm::unrank(8, r))
    }

    proptest! {
        #[test]
        fn adjacent_words_multiply_back(p in perm8()) {
            let mut q = Perm::identity(8);
            for i in p.adjacent_word() {
                q = q.compose(&Perm::adjacent(8, i));
            }
            prop_assert_eq!(q, p);
        }

        #[test]
        fn conjugators_conjugate(p in perm8(), g in perm8()) {
            let b = p.conjugate_by(&g);
            let h = p.conjugator_to(&b).unwrap();
            prop_assert_eq!(p.conjugate_by(&h), b);
        }
    }
}
