use std::fmt;

use serde::{Deserialize, Serialize};

use super::permutation::factorial;

/// A partition of n: weakly decreasing positive parts. Labels both the
/// conjugacy classes (cycle types) and the irreducible characters of S_n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts descending and drops zeros.
    pub fn from_parts(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of each part size, indexed by size.
    fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.size() + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// Centraliser order z = prod_i i^{m_i} m_i! of any element of this
    /// cycle type.
    pub fn centralizer_order(&self) -> u64 {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &m)| (i as u64).pow(m as u32) * factorial(m))
            .product()
    }

    /// Number of permutations with this cycle type, n!/z.
    pub fn class_size(&self) -> u64 {
        factorial(self.size()) / self.centralizer_order()
    }

    /// Sign of any permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..first)
                .map(|j| self.0.iter().filter(|&&p| p > j).count())
                .collect(),
        )
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of n in reverse-lexicographic order, `(n)` first and
/// `(1^n)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn extend(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            extend(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// One entry per cycle type of S_n with its class size, in the order of
/// [`partitions`].
pub fn conjugacy_classes(n: usize) -> Vec<(Partition, u64)> {
    partitions(n)
        .into_iter()
        .map(|p| {
            let size = p.class_size();
            (p, size)
        })
        .collect()
}
