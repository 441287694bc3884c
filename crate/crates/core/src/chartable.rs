//! Irreducible characters of S_n by the Murnaghan-Nakayama rule.
//!
//! Rim hooks are removed on the beta-set (first column hook lengths) of a
//! partition: removing a hook of length r moves one bead from position b to
//! b - r, and the hook height is the number of beads strictly between.

use std::collections::HashMap;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::permgroup::{factorial, partitions, Partition, Permutation};

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

fn beta_set(parts: &[usize]) -> Vec<usize> {
    let len = parts.len();
    parts.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i))
        .filter(|&p| p > 0)
        .collect()
}

/// Every partition obtained by removing a rim hook of length `r`, paired with
/// the sign (-1)^height of the removed hook.
fn remove_rim_hooks(parts: &[usize], r: usize) -> Vec<(Vec<usize>, i64)> {
    let beta = beta_set(parts);
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        out.push((from_beta_set(moved), sign));
    }
    out
}

fn mn_recursive(shape: &[usize], cycles: &[usize], memo: &mut Memo) -> i64 {
    let Some((&first, rest)) = cycles.split_first() else {
        return if shape.is_empty() { 1 } else { 0 };
    };
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let value = remove_rim_hooks(shape, first)
        .into_iter()
        .map(|(smaller, sign)| sign * mn_recursive(&smaller, rest, memo))
        .sum();
    memo.insert(key, value);
    value
}

/// chi_lambda evaluated on the class of cycle type mu.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    Ok(mn_recursive(lambda.parts(), mu.parts(), &mut Memo::new()))
}

/// Dimension of the irreducible indexed by `lambda` from the hook length
/// formula n! / prod(hooks). Independent of the rim hook recursion.
pub fn hook_length_dimension(lambda: &Partition) -> u64 {
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    (factorial(lambda.size()) as u128 / hooks) as u64
}

/// Full character table of S_n. Rows are irreducibles, columns conjugacy
/// classes, both in the order of [`partitions`].
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    dims: Vec<u64>,
    class_sizes: Vec<u64>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<CharacterTable> {
        CharacterTable::with_caps(n, &Caps::default())
    }

    pub fn with_caps(n: usize, caps: &Caps) -> Result<CharacterTable> {
        if n == 0 {
            return Err(Error::InvalidArgument("character table needs n >= 1".into()));
        }
        Caps::check("character table degree", n as u64, caps.characters as u64)?;
        let partitions = partitions(n);
        let mut memo = Memo::new();
        let values: Vec<Vec<i64>> = partitions
            .iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|mu| mn_recursive(lambda.parts(), mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let identity_class = partitions.len() - 1;
        let dims = values.iter().map(|row| row[identity_class] as u64).collect();
        let class_sizes = partitions.iter().map(Partition::class_size).collect();
        Ok(CharacterTable {
            n,
            partitions,
            values,
            dims,
            class_sizes,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn value(&self, lambda: usize, mu: usize) -> i64 {
        self.values[lambda][mu]
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn class_index(&self, cycle_type: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == cycle_type)
    }

    /// chi_lambda(g) for the irreducible at row `lambda`.
    pub fn character(&self, lambda: usize, g: &Permutation) -> Result<i64> {
        Ok(self.values[lambda][self.class_of(g)?])
    }

    fn class_of(&self, g: &Permutation) -> Result<usize> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: g.degree(),
            });
        }
        Ok(self.class_index(&g.cycle_type()).expect("every cycle type is a class"))
    }

    /// sum over irreducibles of d_rho chi_rho on class `mu`.
    pub fn regular_character(&self, mu: usize) -> BigInt {
        self.values
            .iter()
            .zip(&self.dims)
            .map(|(row, &d)| BigInt::from(d) * row[mu])
            .sum()
    }

    /// sum_rho d_rho chi_rho(g): n! at the identity and 0 elsewhere.
    pub fn delta_identity_sum(&self, g: &Permutation) -> Result<BigInt> {
        Ok(self.regular_character(self.class_of(g)?))
    }

    /// Exact check of the table's structural identities.
    pub fn check(&self) -> TableCheck {
        let order = BigInt::from(factorial(self.n));
        let classes = self.partitions.len();
        let dims_square_sum: BigInt = self.dims.iter().map(|&d| BigInt::from(d) * d).sum();

        let mut row_orthogonal = true;
        for a in 0..classes {
            for b in a..classes {
                let sum: BigInt = (0..classes)
                    .map(|m| {
                        BigInt::from(self.class_sizes[m]) * self.values[a][m] * self.values[b][m]
                    })
                    .sum();
                let expected = if a == b { order.clone() } else { BigInt::zero() };
                row_orthogonal &= sum == expected;
            }
        }

        let mut column_orthogonal = true;
        for m in 0..classes {
            for m2 in m..classes {
                let sum: BigInt = (0..classes)
                    .map(|l| BigInt::from(self.values[l][m]) * self.values[l][m2])
                    .sum();
                // sum_l chi(m)^2 = z_m = n!/|class m|
                let expected = if m == m2 {
                    &order / BigInt::from(self.class_sizes[m])
                } else {
                    BigInt::zero()
                };
                column_orthogonal &= sum == expected;
            }
        }

        let hook_lengths_agree = self
            .partitions
            .iter()
            .zip(&self.dims)
            .all(|(p, &d)| hook_length_dimension(p) == d);

        TableCheck {
            dims_positive: self.dims.iter().all(|&d| d >= 1),
            dims_square_sum_is_order: dims_square_sum == order,
            row_orthogonal,
            column_orthogonal,
            hook_lengths_agree,
            regular_character_is_delta: (0..classes).all(|m| {
                let expected = if m == classes - 1 { order.clone() } else { BigInt::zero() };
                self.regular_character(m) == expected
            }),
        }
    }

    /// Replaces a single entry. Only meant for fault-injection runs of the
    /// verification suite.
    #[doc(hidden)]
    pub fn with_corrupted_entry(mut self, lambda: usize, mu: usize, value: i64) -> CharacterTable {
        self.values[lambda][mu] = value;
        self
    }

    /// CSV with one row per irreducible and one integer column per class.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        let mut header = vec!["lambda".to_string()];
        header.extend(self.partitions.iter().map(|p| p.to_string()));
        wtr.write_record(&header)?;
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            let mut record = vec![lambda.to_string()];
            record.extend(row.iter().map(|v| v.to_string()));
            wtr.write_record(&record)?;
        }
        wtr.flush()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableCheck {
    pub dims_positive: bool,
    pub dims_square_sum_is_order: bool,
    pub row_orthogonal: bool,
    pub column_orthogonal: bool,
    pub hook_lengths_agree: bool,
    pub regular_character_is_delta: bool,
}

impl TableCheck {
    pub fn all_hold(&self) -> bool {
        self.dims_positive
            && self.dims_square_sum_is_order
            && self.row_orthogonal
            && self.column_orthogonal
            && self.hook_lengths_agree
            && self.regular_character_is_delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[usize]) -> Partition {
        Partition::from_parts(parts.to_vec())
    }

    #[test]
    fn trivial_and_sign_characters() {
        for n in 1..=7 {
            for mu in partitions(n) {
                assert_eq!(mn_character(&part(&[n]), &mu).unwrap(), 1);
                let sign = part(&vec![1; n]);
                assert_eq!(mn_character(&sign, &mu).unwrap(), mu.sign());
            }
        }
    }

    #[test]
    fn s3_standard_character() {
        let std = part(&[2, 1]);
        let values: Vec<i64> = [&[1, 1, 1][..], &[2, 1], &[3]]
            .iter()
            .map(|mu| mn_character(&std, &part(mu)).unwrap())
            .collect();
        assert_eq!(values, vec![2, 0, -1]);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert_eq!(
            mn_character(&part(&[2, 1]), &part(&[2])),
            Err(Error::SizeMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn small_tables() {
        let t3 = CharacterTable::new(3).unwrap();
        assert_eq!(t3.dims(), &[1, 2, 1]);
        assert_eq!(t3.values().len(), 3);

        let t4 = CharacterTable::new(4).unwrap();
        let mut dims = t4.dims().to_vec();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 3, 3]);
        assert_eq!(dims.iter().map(|d| d * d).sum::<u64>(), 24);

        let t1 = CharacterTable::new(1).unwrap();
        assert_eq!(t1.values(), &[vec![1]]);
    }

    #[test]
    fn invariants_hold_up_to_s8() {
        for n in 1..=8 {
            let check = CharacterTable::new(n).unwrap().check();
            assert!(check.all_hold(), "S_{n}: {check:?}");
        }
    }

    #[test]
    fn corrupted_table_fails_orthogonality() {
        let table = CharacterTable::new(4).unwrap().with_corrupted_entry(1, 0, 7);
        let check = table.check();
        assert!(!check.row_orthogonal);
        assert!(!check.all_hold());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            CharacterTable::new(11),
            Err(Error::CapExceeded { value: 11, limit: 10, .. })
        ));
    }

    #[test]
    fn delta_identity_sum_is_exhaustively_a_delta() {
        for n in 1..=6 {
            let table = CharacterTable::new(n).unwrap();
            let order = factorial(n);
            for k in 0..order {
                let g = Permutation::unrank(n, k).unwrap();
                let expected = if g.is_identity() { order } else { 0 };
                assert_eq!(table.delta_identity_sum(&g).unwrap(), BigInt::from(expected));
            }
        }
        let t4 = CharacterTable::new(4).unwrap();
        let t = Permutation::from_cycles(4, &[[0, 1]]).unwrap();
        assert_eq!(t4.delta_identity_sum(&t).unwrap(), BigInt::zero());
        assert_eq!(t4.delta_identity_sum(&Permutation::identity(4)).unwrap(), BigInt::from(24));
    }

    #[test]
    fn characters_are_real_on_inverses() {
        let table = CharacterTable::new(5).unwrap();
        for k in 0..120 {
            let g = Permutation::unrank(5, k).unwrap();
            for lambda in 0..table.partitions().len() {
                assert_eq!(
                    table.character(lambda, &g).unwrap(),
                    table.character(lambda, &g.inverse()).unwrap()
                );
            }
        }
    }

    #[test]
    fn csv_export() {
        let mut buf = Vec::new();
        CharacterTable::new(3).unwrap().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "lambda,(3),\"(2,1)\",\"(1,1,1)\"");
        assert_eq!(lines[2], "\"(2,1)\",-1,0,2");
        assert_eq!(lines.len(), 4);
    }
}
