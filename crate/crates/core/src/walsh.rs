//! Walsh sign sequences and the closed-form Hadamard walk on two generators.
//!
//! A t-bit word k names the generator sequence read from its most
//! significant bit: bit 0 is generator 0 (mu), bit 1 generator 1 (sigma).
//! Starting from |0, e>, the scaled Hadamard walk puts W_t(k) on the product
//! of word k at the chirality given by its lowest bit, so every amplitude is
//! an integer over sqrt(2^t).

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::permgroup::CayleyGraph;

/// W_n: 2^n signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSeq {
    n: u32,
    signs: Vec<i8>,
}

impl WalshSeq {
    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn get(&self, k: usize) -> i8 {
        self.signs[k]
    }
}

/// W_1 = [1, 1]; W_n = [W_{n-1}, first half of W_{n-1}, -(second half of W_{n-1})].
pub fn walsh_seq(n: u32, caps: &Caps) -> Result<WalshSeq> {
    if n == 0 {
        return Err(Error::InvalidArgument("Walsh level starts at 1".into()));
    }
    Caps::check("Walsh level", n as u64, caps.walsh as u64)?;
    let mut signs = Vec::with_capacity(1 << n);
    signs.extend([1i8, 1]);
    for _ in 1..n {
        let len = signs.len();
        let half = len / 2;
        signs.extend_from_within(..half);
        for i in half..len {
            let v = signs[i];
            signs.push(-v);
        }
    }
    Ok(WalshSeq { n, signs })
}

/// Integer amplitudes m with alpha_{s,t}(g) = m / sqrt(2^t), indexed
/// `s * N + g` like the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardAmplitudes {
    t: u32,
    order: usize,
    numerators: Vec<i64>,
}

impl HadamardAmplitudes {
    pub fn steps(&self) -> u32 {
        self.t
    }

    /// Exponent e of the implicit factor 2^{-e/2}.
    pub fn scale_exponent(&self) -> u32 {
        self.t
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn get(&self, s: usize, g: usize) -> i64 {
        self.numerators[s * self.order + g]
    }

    /// Sum of m^2, equal to 2^t for a normalised state.
    pub fn norm_sq_scaled(&self) -> u128 {
        self.numerators.iter().map(|&m| (m as i128 * m as i128) as u128).sum()
    }
}

/// Direct summation over all 2^t words.
pub fn hadamard_amplitudes(graph: &CayleyGraph, t: u32, caps: &Caps) -> Result<HadamardAmplitudes> {
    if graph.valency() != 2 {
        return Err(Error::InvalidArgument(format!(
            "the closed form needs exactly two generators, got {}",
            graph.valency()
        )));
    }
    if t == 0 {
        return Err(Error::InvalidArgument("steps start at 1".into()));
    }
    Caps::check("Hadamard word length", t as u64, caps.hadamard_steps as u64)?;
    let signs = walsh_seq(t, &Caps { walsh: t, ..*caps })?;
    let order = graph.order();
    let mut numerators = vec![0i64; 2 * order];
    let succ = [graph.succ(0), graph.succ(1)];

    // depth-first over bits, most significant first
    let mut stack: Vec<(u32, usize, usize)> = vec![(0, 0, 0)];
    while let Some((depth, word, pos)) = stack.pop() {
        if depth == t {
            let s = word & 1;
            numerators[s * order + pos] += signs.get(word) as i64;
            continue;
        }
        for bit in 0..2 {
            stack.push((depth + 1, (word << 1) | bit, succ[bit][pos] as usize));
        }
    }
    Ok(HadamardAmplitudes { t, order, numerators })
}

pub fn hadamard_amplitude(graph: &CayleyGraph, t: u32, s: usize, g: usize, caps: &Caps) -> Result<i64> {
    if s >= 2 || g >= graph.order() {
        return Err(Error::IndexOutOfRange {
            index: if s >= 2 { s as u64 } else { g as u64 },
            bound: if s >= 2 { 2 } else { graph.order() as u64 },
        });
    }
    Ok(hadamard_amplitudes(graph, t, caps)?.get(s, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::CoinOperator;
    use crate::engine::{basis_state, Walk};
    use crate::permgroup::{GeneratingSet, Permutation};
    use num_bigint::BigInt;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;

    fn caps() -> Caps {
        Caps::default()
    }

    /// Sign of word k from its adjacent "11" pairs.
    fn sign_by_pairs(k: usize, bits: u32) -> i8 {
        let pairs = (0..bits - 1).filter(|&i| (k >> i) & 3 == 3).count();
        if pairs % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn small_levels() {
        assert_eq!(walsh_seq(1, &caps()).unwrap().signs(), &[1, 1]);
        assert_eq!(walsh_seq(2, &caps()).unwrap().signs(), &[1, 1, 1, -1]);
        assert_eq!(
            walsh_seq(3, &caps()).unwrap().signs(),
            &[1, 1, 1, -1, 1, 1, -1, 1]
        );
        assert!(walsh_seq(0, &caps()).is_err());
        assert!(matches!(
            walsh_seq(27, &caps()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn prefix_property_and_pair_signs() {
        let mut prev = walsh_seq(1, &caps()).unwrap();
        for n in 2..=20 {
            let w = walsh_seq(n, &caps()).unwrap();
            assert_eq!(w.len(), 1 << n);
            assert_eq!(&w.signs()[..prev.len()], prev.signs());
            prev = w;
        }
        let w = walsh_seq(12, &caps()).unwrap();
        for k in 0..w.len() {
            assert_eq!(w.get(k), sign_by_pairs(k, 12), "word {k}");
        }
    }

    #[test]
    fn first_step() {
        let g = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
        let amps = hadamard_amplitudes(&g, 1, &caps()).unwrap();
        let mu = Permutation::parse_cycles(4, "(12)").unwrap().rank() as usize;
        let sigma = Permutation::parse_cycles(4, "(1234)").unwrap().rank() as usize;
        for s in 0..2 {
            for v in 0..24 {
                let expected = i64::from((s, v) == (0, mu) || (s, v) == (1, sigma));
                assert_eq!(amps.get(s, v), expected);
            }
        }
    }

    #[test]
    fn matches_scaled_integer_engine() {
        for n in [3, 4] {
            let g = CayleyGraph::new(GeneratingSet::gamma(n).unwrap()).unwrap();
            let walk = Walk::<BigInt>::new(&g, &CoinOperator::hadamard()).unwrap();
            let mut state = basis_state::<BigInt>(&g, 0, 0).unwrap();
            for t in 1..=10u32 {
                state = walk.step(&state).unwrap();
                assert_eq!(state.scale(), &(BigUint::from(1u8) << t as usize));
                let closed = hadamard_amplitudes(&g, t, &caps()).unwrap();
                let engine: Vec<i64> = state.amplitudes().iter().map(|a| a.to_i64().unwrap()).collect();
                assert_eq!(closed.numerators(), &engine[..], "n = {n}, t = {t}");
                assert_eq!(closed.norm_sq_scaled(), 1u128 << t);
            }
        }
    }

    #[test]
    fn rejects_other_valencies_and_long_words() {
        let g = CayleyGraph::new(GeneratingSet::transpositions(3).unwrap()).unwrap();
        assert!(hadamard_amplitudes(&g, 2, &caps()).is_err());
        let gamma = CayleyGraph::new(GeneratingSet::gamma(3).unwrap()).unwrap();
        let tight = Caps {
            hadamard_steps: 4,
            ..Caps::default()
        };
        assert!(hadamard_amplitudes(&gamma, 4, &tight).is_ok());
        assert!(matches!(
            hadamard_amplitudes(&gamma, 5, &tight),
            Err(Error::CapExceeded { .. })
        ));
    }
}
