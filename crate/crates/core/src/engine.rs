//! State-vector evolution of the coined walk, U = Lambda (C x I).
//!
//! The amplitude table is dense, indexed by `s * N + rank(g)` where `s` is
//! the chirality (generator index) and `N` the group order. One engine is
//! generic over the amplitude scalar, which selects the backend:
//!
//! * [`Complex64`]: general floating point.
//! * [`BigRational`]: exact, for coins with rational entries (Grover).
//! * [`BigInt`]: scaled integers, for the Hadamard coin.
//!
//! Exact backends carry an implicit global factor `1/sqrt(scale)`, so the
//! uniform chirality state (factor `1/sqrt(d)`) and the Hadamard walk
//! (factor `2^{-t/2}`) stay exact.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::coins::{ratio_to_f64, CoinKind, CoinOperator};
use crate::error::{Error, Result};
use crate::permgroup::CayleyGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Float,
    ExactRational,
    ScaledInteger,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Float => "float",
            Backend::ExactRational => "exact-rational",
            Backend::ScaledInteger => "scaled-integer",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scalar type of an amplitude table.
pub trait Amplitude: Clone + PartialEq + fmt::Debug + Send + Sync {
    const BACKEND: Backend;
    /// Type of |amplitude|^2.
    type Prob: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);
    fn conj(&self) -> Self;
    /// Division by a factor known to divide every entry.
    fn div_exact(&self, k: u64) -> Self;
    fn modulus_sq(&self) -> Self::Prob;
    fn prob_zero() -> Self::Prob;
    fn prob_add(acc: &mut Self::Prob, p: &Self::Prob);
    fn prob_div(p: Self::Prob, scale: &BigUint) -> Self::Prob;
    fn to_complex(&self) -> Complex64;
    /// This backend's form of `coin`, or an error if it has none.
    fn coin_matrix(coin: &CoinOperator) -> Result<CoinMatrix<Self>>;
}

impl Amplitude for Complex64 {
    const BACKEND: Backend = Backend::Float;
    type Prob = f64;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn div_exact(&self, k: u64) -> Self {
        self / k as f64
    }
    fn modulus_sq(&self) -> f64 {
        self.norm_sqr()
    }
    fn prob_zero() -> f64 {
        0.0
    }
    fn prob_add(acc: &mut f64, p: &f64) {
        *acc += p;
    }
    fn prob_div(p: f64, scale: &BigUint) -> f64 {
        if scale.is_one() {
            p
        } else {
            p / scale.to_f64().unwrap_or(f64::INFINITY)
        }
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn coin_matrix(coin: &CoinOperator) -> Result<CoinMatrix<Self>> {
        Ok(CoinMatrix {
            d: coin.dim(),
            entries: coin.entries().to_vec(),
            scale: 1,
        })
    }
}

impl Amplitude for BigRational {
    const BACKEND: Backend = Backend::ExactRational;
    type Prob = BigRational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn div_exact(&self, k: u64) -> Self {
        self / BigInt::from(k)
    }
    fn modulus_sq(&self) -> BigRational {
        self * self
    }
    fn prob_zero() -> BigRational {
        Zero::zero()
    }
    fn prob_add(acc: &mut BigRational, p: &BigRational) {
        *acc += p;
    }
    fn prob_div(p: BigRational, scale: &BigUint) -> BigRational {
        p / BigInt::from(scale.clone())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(self), 0.0)
    }
    fn coin_matrix(coin: &CoinOperator) -> Result<CoinMatrix<Self>> {
        let entries = coin.exact_entries().ok_or_else(|| Error::UnsupportedBackend {
            backend: Backend::ExactRational.name(),
            what: format!("the {} coin (irrational entries)", coin.kind()),
        })?;
        Ok(CoinMatrix {
            d: coin.dim(),
            entries: entries.to_vec(),
            scale: 1,
        })
    }
}

impl Amplitude for BigInt {
    const BACKEND: Backend = Backend::ScaledInteger;
    type Prob = BigRational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn div_exact(&self, k: u64) -> Self {
        self / BigInt::from(k)
    }
    fn modulus_sq(&self) -> BigRational {
        BigRational::from_integer(self * self)
    }
    fn prob_zero() -> BigRational {
        Zero::zero()
    }
    fn prob_add(acc: &mut BigRational, p: &BigRational) {
        *acc += p;
    }
    fn prob_div(p: BigRational, scale: &BigUint) -> BigRational {
        p / BigInt::from(scale.clone())
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn coin_matrix(coin: &CoinOperator) -> Result<CoinMatrix<Self>> {
        if coin.kind() == CoinKind::Hadamard {
            let (p, m) = (BigInt::from(1), BigInt::from(-1));
            return Ok(CoinMatrix {
                d: 2,
                entries: vec![p.clone(), p.clone(), p, m],
                scale: 2,
            });
        }
        let integral = coin.exact_entries().and_then(|entries| {
            entries
                .iter()
                .map(|q| q.is_integer().then(|| q.to_integer()))
                .collect::<Option<Vec<BigInt>>>()
        });
        let entries = integral.ok_or_else(|| Error::UnsupportedBackend {
            backend: Backend::ScaledInteger.name(),
            what: format!("the {} coin", coin.kind()),
        })?;
        Ok(CoinMatrix {
            d: coin.dim(),
            entries,
            scale: 1,
        })
    }
}

/// A coin in backend form: the true coin is `entries / sqrt(scale)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinMatrix<T> {
    d: usize,
    entries: Vec<T>,
    scale: u64,
}

impl<T: Amplitude> CoinMatrix<T> {
    pub fn from_coin(coin: &CoinOperator) -> Result<CoinMatrix<T>> {
        T::coin_matrix(coin)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn adjoint(&self) -> CoinMatrix<T> {
        let d = self.d;
        let entries = (0..d * d)
            .map(|k| self.entries[(k % d) * d + k / d].conj())
            .collect();
        CoinMatrix {
            d,
            entries,
            scale: self.scale,
        }
    }
}

/// A relabelling of chirality applied by the shift: (s, g) -> (pi(s), g s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiralityPermutation(Vec<usize>);

impl ChiralityPermutation {
    pub fn new(map: Vec<usize>) -> Result<ChiralityPermutation> {
        let d = map.len();
        let mut seen = vec![false; d];
        for &s in &map {
            if s >= d || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidShift(format!(
                    "{map:?} is not a permutation of 0..{d}"
                )));
            }
        }
        Ok(ChiralityPermutation(map))
    }

    /// Reverses the chirality order; for d = 2 this is the flip-flop swap.
    pub fn reversal(d: usize) -> ChiralityPermutation {
        ChiralityPermutation((0..d).rev().collect())
    }

    pub fn apply(&self, s: usize) -> usize {
        self.0[s]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Amplitudes over (chirality, group element); the physical amplitude is
/// `amps[s * N + g] / sqrt(scale)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState<T> {
    d: usize,
    order: usize,
    amps: Vec<T>,
    scale: BigUint,
}

impl<T: Amplitude> WalkState<T> {
    pub fn zeros(graph: &CayleyGraph) -> WalkState<T> {
        let (d, order) = (graph.valency(), graph.order());
        WalkState {
            d,
            order,
            amps: vec![T::zero(); d * order],
            scale: BigUint::one(),
        }
    }

    pub fn from_amplitudes(graph: &CayleyGraph, amps: Vec<T>, scale: BigUint) -> Result<WalkState<T>> {
        let expected = graph.valency() * graph.order();
        if amps.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amps.len(),
            });
        }
        Ok(WalkState {
            d: graph.valency(),
            order: graph.order(),
            amps,
            scale,
        })
    }

    pub fn backend(&self) -> Backend {
        T::BACKEND
    }

    pub fn valency(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    /// Raw (unscaled) amplitude table.
    pub fn amplitudes(&self) -> &[T] {
        &self.amps
    }

    /// Raw amplitude at (s, g).
    pub fn amplitude(&self, s: usize, g: usize) -> &T {
        &self.amps[s * self.order + g]
    }

    /// Physical amplitude at (s, g) as a float.
    pub fn amplitude_complex(&self, s: usize, g: usize) -> Complex64 {
        let z = self.amplitude(s, g).to_complex();
        if self.scale.is_one() {
            z
        } else {
            z / self.scale.to_f64().unwrap_or(f64::INFINITY).sqrt()
        }
    }

    pub fn norm_sq(&self) -> T::Prob {
        let mut total = T::prob_zero();
        for a in &self.amps {
            T::prob_add(&mut total, &a.modulus_sq());
        }
        T::prob_div(total, &self.scale)
    }

    /// Number of nonzero entries.
    pub fn support(&self) -> usize {
        self.amps.iter().filter(|a| !a.is_zero()).count()
    }
}

/// |s, g>.
pub fn basis_state<T: Amplitude>(graph: &CayleyGraph, s: usize, g: usize) -> Result<WalkState<T>> {
    if s >= graph.valency() {
        return Err(Error::IndexOutOfRange {
            index: s as u64,
            bound: graph.valency() as u64,
        });
    }
    check_vertex(graph, g)?;
    let mut state = WalkState::zeros(graph);
    state.amps[s * graph.order() + g] = T::one();
    Ok(state)
}

/// (1/sqrt(d)) sum_s |s, g>.
pub fn uniform_coin_state<T: Amplitude>(graph: &CayleyGraph, g: usize) -> Result<WalkState<T>> {
    check_vertex(graph, g)?;
    let mut state = WalkState::zeros(graph);
    for s in 0..graph.valency() {
        state.amps[s * graph.order() + g] = T::one();
    }
    state.scale = BigUint::from(graph.valency());
    Ok(state)
}

fn check_vertex(graph: &CayleyGraph, g: usize) -> Result<()> {
    if g >= graph.order() {
        return Err(Error::IndexOutOfRange {
            index: g as u64,
            bound: graph.order() as u64,
        });
    }
    Ok(())
}

/// Left-multiplies the chirality vector at every vertex by the coin.
pub fn apply_coin<T: Amplitude>(state: &WalkState<T>, coin: &CoinMatrix<T>) -> Result<WalkState<T>> {
    let (d, order) = (state.d, state.order);
    if coin.d != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: coin.d,
        });
    }
    let mut amps = vec![T::zero(); d * order];
    for row in 0..d {
        let out = &mut amps[row * order..(row + 1) * order];
        for col in 0..d {
            let c = &coin.entries[row * d + col];
            if c.is_zero() {
                continue;
            }
            let input = &state.amps[col * order..(col + 1) * order];
            for (o, a) in out.iter_mut().zip(input) {
                o.add_product(c, a);
            }
        }
    }
    Ok(WalkState {
        d,
        order,
        amps,
        scale: &state.scale * coin.scale,
    })
}

/// Moves the amplitude at (s, g) to (pi(s), g s); `None` is the plain shift.
pub fn apply_shift<T: Amplitude>(
    graph: &CayleyGraph,
    state: &WalkState<T>,
    shift: Option<&ChiralityPermutation>,
) -> Result<WalkState<T>> {
    check_shape(graph, state, shift)?;
    let order = state.order;
    let mut amps = vec![T::zero(); state.amps.len()];
    for s in 0..state.d {
        let target = shift.map_or(s, |p| p.apply(s));
        let succ = graph.succ(s);
        let src = &state.amps[s * order..(s + 1) * order];
        let dst = &mut amps[target * order..(target + 1) * order];
        for (g, a) in src.iter().enumerate() {
            dst[succ[g] as usize] = a.clone();
        }
    }
    Ok(WalkState {
        amps,
        ..state.clone_shape()
    })
}

/// Inverse of [`apply_shift`].
pub fn apply_shift_inverse<T: Amplitude>(
    graph: &CayleyGraph,
    state: &WalkState<T>,
    shift: Option<&ChiralityPermutation>,
) -> Result<WalkState<T>> {
    check_shape(graph, state, shift)?;
    let order = state.order;
    let mut amps = vec![T::zero(); state.amps.len()];
    for s in 0..state.d {
        let source = shift.map_or(s, |p| p.apply(s));
        let pred = graph.pred(s);
        let src = &state.amps[source * order..(source + 1) * order];
        let dst = &mut amps[s * order..(s + 1) * order];
        for (h, a) in src.iter().enumerate() {
            dst[pred[h] as usize] = a.clone();
        }
    }
    Ok(WalkState {
        amps,
        ..state.clone_shape()
    })
}

impl<T: Amplitude> WalkState<T> {
    fn clone_shape(&self) -> WalkState<T> {
        WalkState {
            d: self.d,
            order: self.order,
            amps: Vec::new(),
            scale: self.scale.clone(),
        }
    }
}

fn check_shape<T>(
    graph: &CayleyGraph,
    state: &WalkState<T>,
    shift: Option<&ChiralityPermutation>,
) -> Result<()> {
    if state.d != graph.valency() || state.order != graph.order() {
        return Err(Error::DimensionMismatch {
            expected: graph.valency() * graph.order(),
            found: state.d * state.order,
        });
    }
    if let Some(p) = shift {
        if p.len() != state.d {
            return Err(Error::InvalidShift(format!(
                "permutation of {} chiralities for a walk with d = {}",
                p.len(),
                state.d
            )));
        }
    }
    Ok(())
}

/// One step: coin, then shift.
pub fn step<T: Amplitude>(
    graph: &CayleyGraph,
    state: &WalkState<T>,
    coin: &CoinMatrix<T>,
    shift: Option<&ChiralityPermutation>,
) -> Result<WalkState<T>> {
    apply_shift(graph, &apply_coin(state, coin)?, shift)
}

/// `steps` successive applications of [`step`].
pub fn evolve<T: Amplitude>(
    graph: &CayleyGraph,
    state: &WalkState<T>,
    coin: &CoinMatrix<T>,
    steps: usize,
    shift: Option<&ChiralityPermutation>,
) -> Result<WalkState<T>> {
    let mut current = state.clone();
    for _ in 0..steps {
        current = step(graph, &current, coin, shift)?;
    }
    Ok(current)
}

/// P[g] = sum_s |alpha_s(g)|^2.
pub fn position_distribution<T: Amplitude>(state: &WalkState<T>) -> Distribution<T::Prob> {
    let order = state.order;
    let probs = (0..order)
        .map(|g| {
            let mut p = T::prob_zero();
            for s in 0..state.d {
                T::prob_add(&mut p, &state.amps[s * order + g].modulus_sq());
            }
            T::prob_div(p, &state.scale)
        })
        .collect();
    Distribution { probs }
}

/// A walk on a fixed graph with a fixed coin and shift, validated once.
#[derive(Debug, Clone)]
pub struct Walk<'g, T> {
    graph: &'g CayleyGraph,
    coin: CoinMatrix<T>,
    shift: Option<ChiralityPermutation>,
}

impl<'g, T: Amplitude> Walk<'g, T> {
    pub fn new(graph: &'g CayleyGraph, coin: &CoinOperator) -> Result<Walk<'g, T>> {
        Walk::with_shift(graph, coin, None)
    }

    pub fn with_shift(
        graph: &'g CayleyGraph,
        coin: &CoinOperator,
        shift: Option<ChiralityPermutation>,
    ) -> Result<Walk<'g, T>> {
        if coin.dim() != graph.valency() {
            return Err(Error::DimensionMismatch {
                expected: graph.valency(),
                found: coin.dim(),
            });
        }
        if let Some(p) = &shift {
            if p.len() != graph.valency() {
                return Err(Error::InvalidShift(format!(
                    "permutation of {} chiralities for a walk with d = {}",
                    p.len(),
                    graph.valency()
                )));
            }
        }
        Ok(Walk {
            graph,
            coin: CoinMatrix::from_coin(coin)?,
            shift,
        })
    }

    pub fn graph(&self) -> &'g CayleyGraph {
        self.graph
    }

    pub fn coin(&self) -> &CoinMatrix<T> {
        &self.coin
    }

    pub fn shift(&self) -> Option<&ChiralityPermutation> {
        self.shift.as_ref()
    }

    pub fn step(&self, state: &WalkState<T>) -> Result<WalkState<T>> {
        step(self.graph, state, &self.coin, self.shift.as_ref())
    }

    pub fn evolve(&self, state: &WalkState<T>, steps: usize) -> Result<WalkState<T>> {
        evolve(self.graph, state, &self.coin, steps, self.shift.as_ref())
    }

    /// Undoes one [`step`](Self::step): inverse shift, then the adjoint coin.
    pub fn step_back(&self, state: &WalkState<T>) -> Result<WalkState<T>> {
        let unshifted = apply_shift_inverse(self.graph, state, self.shift.as_ref())?;
        let mut back = apply_coin(&unshifted, &self.coin.adjoint())?;
        let s = self.coin.scale;
        if s > 1 {
            // E^dagger E = s I when E / sqrt(s) is unitary
            for a in &mut back.amps {
                *a = a.div_exact(s);
            }
            back.scale /= BigUint::from(s * s);
        }
        Ok(back)
    }

    /// States psi_0, psi_1, ... (unbounded).
    pub fn trajectory(&self, start: WalkState<T>) -> Trajectory<'_, 'g, T> {
        Trajectory {
            walk: self,
            next: Some(start),
        }
    }
}

pub struct Trajectory<'w, 'g, T> {
    walk: &'w Walk<'g, T>,
    next: Option<WalkState<T>>,
}

impl<T: Amplitude> Iterator for Trajectory<'_, '_, T> {
    type Item = WalkState<T>;

    fn next(&mut self) -> Option<WalkState<T>> {
        let current = self.next.take()?;
        self.next = self.walk.step(&current).ok();
        Some(current)
    }
}

/// Probabilities over group elements, indexed by rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<P = f64> {
    probs: Vec<P>,
}

impl<P> Distribution<P> {
    pub fn new(probs: Vec<P>) -> Distribution<P> {
        Distribution { probs }
    }

    pub fn probs(&self) -> &[P] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_probs(self) -> Vec<P> {
        self.probs
    }
}

impl Distribution<f64> {
    pub fn uniform(n: usize) -> Distribution<f64> {
        Distribution {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, at: usize) -> Distribution<f64> {
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Distribution { probs }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

impl Distribution<BigRational> {
    pub fn total(&self) -> BigRational {
        self.probs.iter().sum()
    }

    pub fn to_f64(&self) -> Distribution<f64> {
        Distribution {
            probs: self.probs.iter().map(ratio_to_f64).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{GeneratingSet, Permutation};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn gamma4() -> CayleyGraph {
        CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap()
    }

    fn s4_transpositions() -> CayleyGraph {
        CayleyGraph::new(GeneratingSet::transpositions(4).unwrap()).unwrap()
    }

    fn rank_of(n: usize, cycles: &[&[usize]]) -> usize {
        Permutation::from_cycles(n, cycles).unwrap().rank() as usize
    }

    #[test]
    fn basis_states() {
        let g = gamma4();
        let psi: WalkState<Complex64> = basis_state(&g, 0, 0).unwrap();
        assert_eq!(psi.support(), 1);
        assert!((psi.norm_sq() - 1.0).abs() < 1e-15);
        let p = position_distribution(&psi);
        assert_eq!(p.probs()[0], 1.0);
        assert_eq!(p.total(), 1.0);
        assert!(basis_state::<Complex64>(&g, 2, 0).is_err());
        assert!(basis_state::<Complex64>(&g, 0, 24).is_err());
    }

    #[test]
    fn uniform_coin_state_is_grover_fixed_point() {
        let g = s4_transpositions();
        let psi: WalkState<BigRational> = uniform_coin_state(&g, 0).unwrap();
        assert!(psi.norm_sq().is_one());
        let coin = CoinMatrix::from_coin(&CoinOperator::grover(6).unwrap()).unwrap();
        assert_eq!(apply_coin(&psi, &coin).unwrap(), psi);

        let g2 = gamma4();
        let f: WalkState<Complex64> = uniform_coin_state(&g2, 3).unwrap();
        assert!((f.amplitude_complex(0, 3).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((f.amplitude_complex(1, 3).re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn coin_application() {
        let g = CayleyGraph::new(GeneratingSet::transpositions(3).unwrap()).unwrap();
        let psi: WalkState<BigRational> = basis_state(&g, 0, 0).unwrap();
        let coin = CoinMatrix::from_coin(&CoinOperator::grover(3).unwrap()).unwrap();
        let out = apply_coin(&psi, &coin).unwrap();
        assert_eq!(out.amplitude(0, 0), &q(-1, 3));
        assert_eq!(out.amplitude(1, 0), &q(2, 3));
        assert_eq!(out.amplitude(2, 0), &q(2, 3));
        assert!(out.norm_sq().is_one());

        let id = CoinMatrix::from_coin(&CoinOperator::identity(3)).unwrap();
        assert_eq!(apply_coin(&psi, &id).unwrap(), psi);
        let wrong = CoinMatrix::from_coin(&CoinOperator::identity(2)).unwrap();
        assert!(apply_coin(&psi, &wrong).is_err());
    }

    #[test]
    fn shift_moves_along_generators() {
        let g = gamma4();
        let psi: WalkState<Complex64> = basis_state(&g, 0, 0).unwrap();
        let moved = apply_shift(&g, &psi, None).unwrap();
        let mu = rank_of(4, &[&[0, 1]]);
        assert_eq!(*moved.amplitude(0, mu), Complex64::new(1.0, 0.0));
        assert_eq!(moved.support(), 1);
        assert_eq!(apply_shift_inverse(&g, &moved, None).unwrap(), psi);

        let flip = ChiralityPermutation::reversal(2);
        let psi1: WalkState<Complex64> = basis_state(&g, 1, 5).unwrap();
        let once = apply_shift(&g, &psi1, Some(&flip)).unwrap();
        let sigma5 = g.succ(1)[5] as usize;
        assert_eq!(*once.amplitude(0, sigma5), Complex64::new(1.0, 0.0));
        let twice = apply_shift(&g, &once, Some(&flip)).unwrap();
        assert_eq!(*twice.amplitude(1, g.succ(0)[sigma5] as usize), Complex64::new(1.0, 0.0));
        assert!(ChiralityPermutation::new(vec![0, 0]).is_err());
        assert!(apply_shift(&g, &psi, Some(&ChiralityPermutation::reversal(3))).is_err());
    }

    #[test]
    fn one_hadamard_step_on_gamma4() {
        let g = gamma4();
        let walk: Walk<Complex64> = Walk::new(&g, &CoinOperator::hadamard()).unwrap();
        let psi = walk.evolve(&basis_state(&g, 0, 0).unwrap(), 1).unwrap();
        let mu = rank_of(4, &[&[0, 1]]);
        let sigma = rank_of(4, &[&[0, 1, 2, 3]]);
        assert!((psi.amplitude_complex(0, mu) - FRAC_1_SQRT_2).norm() < 1e-15);
        assert!((psi.amplitude_complex(1, sigma) - FRAC_1_SQRT_2).norm() < 1e-15);
        assert_eq!(psi.support(), 2);
    }

    #[test]
    fn evolve_matches_repeated_steps_and_preserves_norm() {
        let g = gamma4();
        let walk: Walk<Complex64> = Walk::new(&g, &CoinOperator::ix()).unwrap();
        let start = basis_state(&g, 0, 0).unwrap();
        let mut stepped = start.clone();
        for _ in 0..50 {
            stepped = walk.step(&stepped).unwrap();
        }
        let evolved = walk.evolve(&start, 50).unwrap();
        assert_eq!(stepped, evolved);
        assert!((evolved.norm_sq() - 1.0).abs() < 1e-10);
        assert_eq!(walk.evolve(&start, 0).unwrap(), start);
    }

    #[test]
    fn step_back_reverses_float_and_exact_walks() {
        let g = gamma4();
        let walk: Walk<Complex64> = Walk::new(&g, &CoinOperator::ix()).unwrap();
        let start = basis_state(&g, 1, 7).unwrap();
        let mut psi = walk.evolve(&start, 20).unwrap();
        for _ in 0..20 {
            psi = walk.step_back(&psi).unwrap();
        }
        for (a, b) in psi.amplitudes().iter().zip(start.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }

        let s4 = s4_transpositions();
        let exact: Walk<BigRational> = Walk::new(&s4, &CoinOperator::grover(6).unwrap()).unwrap();
        let start: WalkState<BigRational> = basis_state(&s4, 2, 3).unwrap();
        let mut psi = exact.evolve(&start, 4).unwrap();
        for _ in 0..4 {
            psi = exact.step_back(&psi).unwrap();
        }
        assert_eq!(psi, start);

        let ints: Walk<BigInt> = Walk::new(&g, &CoinOperator::hadamard()).unwrap();
        let start: WalkState<BigInt> = basis_state(&g, 0, 0).unwrap();
        let mut psi = ints.evolve(&start, 6).unwrap();
        for _ in 0..6 {
            psi = ints.step_back(&psi).unwrap();
        }
        assert_eq!(psi, start);
    }

    #[test]
    fn backends_reject_unsupported_coins() {
        assert!(CoinMatrix::<BigRational>::from_coin(&CoinOperator::hadamard()).is_err());
        assert!(CoinMatrix::<BigInt>::from_coin(&CoinOperator::ix()).is_err());
        assert!(CoinMatrix::<BigInt>::from_coin(&CoinOperator::grover(3).unwrap()).is_err());
        let flip = CoinMatrix::<BigInt>::from_coin(&CoinOperator::grover(2).unwrap()).unwrap();
        assert_eq!(flip.scale(), 1);
        assert_eq!(CoinMatrix::<BigInt>::from_coin(&CoinOperator::hadamard()).unwrap().scale(), 2);
    }

    #[test]
    fn scaled_integer_hadamard_matches_float() {
        let g = gamma4();
        let coin = CoinOperator::hadamard();
        let float: Walk<Complex64> = Walk::new(&g, &coin).unwrap();
        let ints: Walk<BigInt> = Walk::new(&g, &coin).unwrap();
        let mut f = basis_state(&g, 0, 0).unwrap();
        let mut i: WalkState<BigInt> = basis_state(&g, 0, 0).unwrap();
        for t in 1..=12 {
            f = float.step(&f).unwrap();
            i = ints.step(&i).unwrap();
            assert_eq!(i.scale(), &BigUint::from(1u64 << t));
            assert!(i.norm_sq().is_one());
            for s in 0..2 {
                for v in 0..24 {
                    assert!((f.amplitude_complex(s, v) - i.amplitude_complex(s, v)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn trajectory_yields_successive_states() {
        let g = gamma4();
        let walk: Walk<Complex64> = Walk::new(&g, &CoinOperator::hadamard()).unwrap();
        let start = basis_state(&g, 0, 0).unwrap();
        let states: Vec<_> = walk.trajectory(start.clone()).take(4).collect();
        assert_eq!(states[0], start);
        assert_eq!(states[3], walk.evolve(&start, 3).unwrap());
    }
}
