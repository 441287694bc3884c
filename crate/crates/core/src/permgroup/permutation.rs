use std::fmt;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// Largest degree for which ranks fit in a `u64` (20! < 2^64 < 21!).
pub const MAX_RANKED_DEGREE: usize = 20;

/// An element of S_n in one-line notation over the points `0..n`.
///
/// Products are read left to right: `p.then(&q)` applies `p` first, so the
/// product of a generator word `w1 w2 ... wt` is
/// `w1.then(w2)...then(wt)`, matching right multiplication `g -> g s` along
/// Cayley graph edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!(n <= u8::MAX as usize, "degree {n} too large");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, n });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::RepeatedPoint { point: x });
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles of 0-based points; unlisted
    /// points are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Permutation> {
        let mut images = Permutation::identity(n).images;
        let mut used = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, n });
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::RepeatedPoint { point: x });
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)`, `(1,2,3)` or the
    /// compact `(1234)` (single-digit points only). `()` and `e` denote the
    /// identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Permutation> {
        let bad = |detail: String| Error::Parse {
            what: "cycle notation",
            detail,
        };
        let text = text.trim();
        if text == "e" || text == "id" {
            return Ok(Permutation::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| bad(format!("unclosed cycle in `{text}`")))?;
            let body = open[..close].trim();
            rest = open[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = if body.contains([' ', ',']) {
                body.split([' ', ',']).filter(|t| !t.is_empty()).collect()
            } else {
                body.split_inclusive(|_| true).collect()
            };
            let mut cycle = Vec::with_capacity(tokens.len());
            for token in tokens {
                let point: usize = token
                    .parse()
                    .map_err(|_| bad(format!("`{token}` is not a point")))?;
                if point == 0 || point > n {
                    return Err(bad(format!("point {point} is outside 1..={n}")));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// The product that applies `self` first and `other` second:
    /// `(self.then(other))(x) = other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `tau^-1 * self * tau` in the left-to-right product.
    pub fn conjugate_by(&self, tau: &Permutation) -> Result<Permutation> {
        tau.inverse().then(self)?.then(tau)
    }

    /// Lexicographic rank via the Lehmer code; the identity has rank 0.
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        assert!(n <= MAX_RANKED_DEGREE, "rank of degree {n} overflows u64");
        let mut unused: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
        let mut rank = 0u64;
        for (i, &x) in self.images.iter().enumerate() {
            let smaller = (unused & ((1u32 << x) - 1)).count_ones() as u64;
            rank += smaller * factorial(n - 1 - i);
            unused &= !(1u32 << x);
        }
        rank
    }

    pub fn unrank(n: usize, index: u64) -> Result<Permutation> {
        if n > MAX_RANKED_DEGREE {
            return Err(Error::CapExceeded {
                what: "ranked degree",
                value: n as u64,
                limit: MAX_RANKED_DEGREE as u64,
            });
        }
        let order = factorial(n);
        if index >= order {
            return Err(Error::IndexOutOfRange {
                index,
                bound: order,
            });
        }
        let mut unused: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
        let mut rest = index;
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let mut digit = rest / f;
            rest %= f;
            let mut bits = unused;
            while digit > 0 {
                bits &= bits - 1;
                digit -= 1;
            }
            let x = bits.trailing_zeros();
            images.push(x as u8);
            unused &= !(1u32 << x);
        }
        Ok(Permutation { images })
    }

    /// Disjoint cycles (length >= 2), each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            parts.push(len);
        }
        Partition::from_parts(parts)
    }

    /// 1-based cycle notation, e.g. `(1 2)(3 4)`; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let points: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", points.join(" "))
            })
            .collect()
    }

    /// 1-based one-line notation, e.g. `2134`.
    pub fn one_line(&self) -> String {
        let sep = if self.degree() > 9 { " " } else { "" };
        self.images
            .iter()
            .map(|x| (x + 1).to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u8>) -> Result<Permutation> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Vec<u8> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn from_cycles_examples() {
        assert_eq!(perm(3, &[&[0, 1]]).images(), &[1, 0, 2]);
        assert_eq!(perm(4, &[&[0, 1, 2, 3]]).images(), &[1, 2, 3, 0]);
        assert_eq!(
            Permutation::from_cycles(3, &[vec![0, 1], vec![0, 2]]),
            Err(Error::RepeatedPoint { point: 0 })
        );
        assert_eq!(
            Permutation::from_cycles(3, &[vec![0, 3]]),
            Err(Error::PointOutOfRange { point: 3, n: 3 })
        );
    }

    #[test]
    fn parse_cycle_notation() {
        let sigma = Permutation::parse_cycles(4, "(1234)").unwrap();
        assert_eq!(sigma, perm(4, &[&[0, 1, 2, 3]]));
        assert_eq!(Permutation::parse_cycles(4, "(1 2 3 4)").unwrap(), sigma);
        assert_eq!(Permutation::parse_cycles(4, "(1,2,3,4)").unwrap(), sigma);
        assert_eq!(
            Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap(),
            perm(4, &[&[0, 1], &[2, 3]])
        );
        assert!(Permutation::parse_cycles(4, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(4, "(15)").is_err());
        assert!(Permutation::parse_cycles(4, "(1 2").is_err());
        assert!(Permutation::parse_cycles(4, "1 2").is_err());
        assert_eq!(sigma.cycle_notation(), "(1 2 3 4)");
        assert_eq!(Permutation::parse_cycles(4, &sigma.cycle_notation()).unwrap(), sigma);
    }

    #[test]
    fn composition_is_left_to_right() {
        let id = Permutation::identity(3);
        let t01 = perm(3, &[&[0, 1]]);
        let c012 = perm(3, &[&[0, 1, 2]]);
        assert_eq!(id.then(&c012).unwrap(), c012);
        // 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0
        assert_eq!(t01.then(&c012).unwrap().images(), &[2, 1, 0]);
        assert_eq!(t01.then(&c012).unwrap(), perm(3, &[&[0, 2]]));
        assert!(t01.then(&t01).unwrap().is_identity());
        assert!(t01.then(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Permutation::identity(4).rank(), 0);
        let all: std::collections::HashSet<_> =
            (0..6).map(|k| Permutation::unrank(3, k).unwrap()).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(Permutation::unrank(4, 17).unwrap().rank(), 17);
        assert_eq!(
            Permutation::unrank(3, 6),
            Err(Error::IndexOutOfRange { index: 6, bound: 6 })
        );
        // Lexicographic: the last permutation of S_4 is the reversal.
        assert_eq!(Permutation::unrank(4, 23).unwrap().images(), &[3, 2, 1, 0]);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(perm(4, &[&[0, 1, 2, 3]]).cycle_type().parts(), &[4]);
        assert_eq!(perm(4, &[&[0, 1], &[2, 3]]).cycle_type().parts(), &[2, 2]);
    }

    #[test]
    fn ranks_are_a_bijection_up_to_s8() {
        for n in 1..=8 {
            let order = factorial(n);
            let mut seen = vec![false; order as usize];
            for k in 0..order {
                let p = Permutation::unrank(n, k).unwrap();
                assert_eq!(p.rank(), k);
                assert!(!std::mem::replace(&mut seen[k as usize], true));
            }
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        (0..factorial(n)).prop_map(move |k| Permutation::unrank(n, k).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..=8).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
    }

    proptest! {
        #[test]
        fn composition_is_associative((p, q, r) in arb_triple()) {
            let left = p.then(&q).unwrap().then(&r).unwrap();
            let right = p.then(&q.then(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_cancels((p, _, _) in arb_triple()) {
            prop_assert!(p.then(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().then(&p).unwrap().is_identity());
        }

        #[test]
        fn conjugation_preserves_cycle_type((p, tau, _) in arb_triple()) {
            let c = p.conjugate_by(&tau).unwrap();
            prop_assert_eq!(c.cycle_type(), p.cycle_type());
        }

        #[test]
        fn rank_round_trips((p, _, _) in arb_triple()) {
            let n = p.degree();
            prop_assert_eq!(Permutation::unrank(n, p.rank()).unwrap(), p);
        }
    }
}
