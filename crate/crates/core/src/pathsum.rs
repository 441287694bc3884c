//! Amplitudes of the Grover walk as sums over generator words.
//!
//! A word `w1 ... wt` ends in the chirality `s` it is observed with, and its
//! switch count `k` is the number of adjacent positions with `w_i != w_{i+1}`.
//! Every step along an unchanged generator picks up the Grover diagonal entry
//! `a` and every switch the off-diagonal `b`, so a word contributes
//! `a^{t-k-1} b^k` times a factor for its first letter that depends on the
//! initial chirality state. Words are multiplied left to right through the
//! successor tables, one table lookup per letter.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::caps::Caps;
use crate::chartable::CharacterTable;
use crate::coins::GroverParams;
use crate::error::{Error, Result};
use crate::permgroup::{CayleyGraph, Permutation};

fn check_sequence_count(t: usize, d: usize, caps: &Caps) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("words need t >= 1".into()));
    }
    let count = (d as u64).checked_pow((t - 1) as u32).unwrap_or(u64::MAX);
    Caps::check("generating sequence count", count, caps.sequences)
}

fn switch_count(word: &[usize]) -> usize {
    word.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A word over the generator indices together with its switch count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratingSequence {
    pub word: Vec<usize>,
    pub switches: usize,
}

/// Every word of length `t` over `d` letters that ends in `s`, in
/// lexicographic order.
pub fn enumerate_sequences(t: usize, s: usize, d: usize, caps: &Caps) -> Result<Sequences> {
    check_sequence_count(t, d, caps)?;
    if s >= d {
        return Err(Error::IndexOutOfRange {
            index: s as u64,
            bound: d as u64,
        });
    }
    let mut word = vec![0; t];
    word[t - 1] = s;
    Ok(Sequences {
        d,
        word,
        done: false,
    })
}

pub struct Sequences {
    d: usize,
    word: Vec<usize>,
    done: bool,
}

impl Iterator for Sequences {
    type Item = GeneratingSequence;

    fn next(&mut self) -> Option<GeneratingSequence> {
        if self.done {
            return None;
        }
        let item = GeneratingSequence {
            word: self.word.clone(),
            switches: switch_count(&self.word),
        };
        // odometer over the free prefix, last free digit fastest
        let free = self.word.len() - 1;
        let mut i = free;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.word[i] += 1;
            if self.word[i] < self.d {
                break;
            }
            self.word[i] = 0;
        }
        Some(item)
    }
}

/// Visits every word of length `t` ending in `s` as
/// `(first letter, switch count, rank of the product)`.
fn for_each_product<F: FnMut(usize, usize, usize)>(
    graph: &CayleyGraph,
    t: usize,
    s: usize,
    caps: &Caps,
    mut visit: F,
) -> Result<()> {
    let d = graph.valency();
    check_sequence_count(t, d, caps)?;
    if s >= d {
        return Err(Error::IndexOutOfRange {
            index: s as u64,
            bound: d as u64,
        });
    }
    if t == 1 {
        visit(s, 0, graph.succ(s)[0] as usize);
        return Ok(());
    }

    struct Ctx<'a, F> {
        graph: &'a CayleyGraph,
        t: usize,
        s: usize,
        visit: &'a mut F,
    }

    fn descend<F: FnMut(usize, usize, usize)>(
        ctx: &mut Ctx<'_, F>,
        depth: usize,
        pos: usize,
        prev: usize,
        first: usize,
        switches: usize,
    ) {
        if depth == ctx.t - 1 {
            let k = switches + usize::from(prev != ctx.s);
            (ctx.visit)(first, k, ctx.graph.succ(ctx.s)[pos] as usize);
            return;
        }
        for w in 0..ctx.graph.valency() {
            let next = ctx.graph.succ(w)[pos] as usize;
            descend(ctx, depth + 1, next, w, first, switches + usize::from(w != prev));
        }
    }

    let mut ctx = Ctx {
        graph,
        t,
        s,
        visit: &mut visit,
    };
    for w in 0..d {
        let pos = graph.succ(w)[0] as usize;
        descend(&mut ctx, 1, pos, w, w, 0);
    }
    Ok(())
}

/// Path counts #_{k,t,s}(g): how many words of length t ending in s with k
/// switches multiply to g. Counts are kept per first letter, which gives the
/// split counts for basis-state starts directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable {
    t: usize,
    s: usize,
    d: usize,
    order: usize,
    by_first: Vec<u64>,
}

impl PathCountTable {
    fn index(&self, first: usize, g: usize, k: usize) -> usize {
        (first * self.order + g) * self.t + k
    }

    pub fn steps(&self) -> usize {
        self.t
    }

    pub fn terminal(&self) -> usize {
        self.s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// #_{k,t,s}(g) over all words.
    pub fn count(&self, g: usize, k: usize) -> u64 {
        (0..self.d).map(|f| self.by_first[self.index(f, g, k)]).sum()
    }

    /// Counts over words starting with `start`.
    pub fn count_plus(&self, start: usize, g: usize, k: usize) -> u64 {
        self.by_first[self.index(start, g, k)]
    }

    /// Counts over words not starting with `start`.
    pub fn count_minus(&self, start: usize, g: usize, k: usize) -> u64 {
        self.count(g, k) - self.count_plus(start, g, k)
    }

    pub fn counts(&self, g: usize) -> Vec<u64> {
        (0..self.t).map(|k| self.count(g, k)).collect()
    }

    /// |R_{k,t,s}|, the number of words with k switches.
    pub fn total_with_switches(&self, k: usize) -> u64 {
        (0..self.order).map(|g| self.count(g, k)).sum()
    }

    pub fn total(&self) -> u64 {
        self.by_first.iter().sum()
    }

    /// JSON-ready rows; zero rows are skipped.
    pub fn to_json(&self, graph: &CayleyGraph, start: Option<usize>) -> PathCountsJson {
        let entries = (0..self.order)
            .filter_map(|g| {
                let counts = self.counts(g);
                if counts.iter().all(|&c| c == 0) {
                    return None;
                }
                let split = start.map(|s0| {
                    (0..self.t)
                        .map(|k| [self.count_plus(s0, g, k), self.count_minus(s0, g, k)])
                        .collect()
                });
                Some(PathCountEntry {
                    g,
                    perm: graph.element(g).one_line(),
                    counts,
                    split,
                })
            })
            .collect();
        PathCountsJson {
            t: self.t,
            s: self.s,
            start_chirality: start,
            entries,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PathCountsJson {
    pub t: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start_chirality: Option<usize>,
    pub entries: Vec<PathCountEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PathCountEntry {
    pub g: usize,
    pub perm: String,
    pub counts: Vec<u64>,
    /// `[plus, minus]` per switch count, relative to the start chirality.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split: Option<Vec<[u64; 2]>>,
}

pub fn path_count_table(graph: &CayleyGraph, t: usize, s: usize, caps: &Caps) -> Result<PathCountTable> {
    let (d, order) = (graph.valency(), graph.order());
    let mut table = PathCountTable {
        t,
        s,
        d,
        order,
        by_first: vec![0; d * order * t.max(1)],
    };
    for_each_product(graph, t, s, caps, |first, k, g| {
        let i = table.index(first, g, k);
        table.by_first[i] += 1;
    })?;
    Ok(table)
}

/// a^{t-k-1} b^k for k = 0..t.
pub fn switch_weights(params: &GroverParams, t: usize) -> Vec<BigRational> {
    (0..t)
        .map(|k| pow(&params.a, t - k - 1) * pow(&params.b, k))
        .collect()
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn check_params(graph: &CayleyGraph, params: &GroverParams) -> Result<()> {
    if params.d != graph.valency() {
        return Err(Error::DimensionMismatch {
            expected: graph.valency(),
            found: params.d,
        });
    }
    Ok(())
}

/// Path tables for every terminal chirality at a fixed step count.
#[derive(Debug, Clone)]
pub struct PathSum<'g> {
    graph: &'g CayleyGraph,
    tables: Vec<PathCountTable>,
}

impl<'g> PathSum<'g> {
    pub fn new(graph: &'g CayleyGraph, t: usize, caps: &Caps) -> Result<PathSum<'g>> {
        let tables = (0..graph.valency())
            .map(|s| path_count_table(graph, t, s, caps))
            .collect::<Result<_>>()?;
        Ok(PathSum { graph, tables })
    }

    pub fn table(&self, s: usize) -> &PathCountTable {
        &self.tables[s]
    }

    pub fn steps(&self) -> usize {
        self.tables[0].t
    }

    /// r with alpha_{s,t}(g) = r / sqrt(d) for the start (1/sqrt(d)) sum_s |s, e>.
    pub fn uniform_amplitude(&self, params: &GroverParams, s: usize, g: usize) -> Result<BigRational> {
        check_params(self.graph, params)?;
        let table = &self.tables[s];
        Ok(switch_weights(params, table.t)
            .iter()
            .enumerate()
            .map(|(k, w)| w * BigInt::from(table.count(g, k)))
            .sum())
    }

    /// All uniform-start amplitudes in engine layout `s * N + g`, before the
    /// common factor 1/sqrt(d).
    pub fn uniform_amplitudes(&self, params: &GroverParams) -> Result<Vec<BigRational>> {
        check_params(self.graph, params)?;
        let weights = switch_weights(params, self.steps());
        let mut out = Vec::with_capacity(self.tables.len() * self.graph.order());
        for table in &self.tables {
            for g in 0..self.graph.order() {
                out.push(
                    weights
                        .iter()
                        .enumerate()
                        .map(|(k, w)| w * BigInt::from(table.count(g, k)))
                        .sum(),
                );
            }
        }
        Ok(out)
    }

    /// alpha_{s,t}(g) for the start |start_s, start_g>.
    pub fn basis_amplitude(
        &self,
        params: &GroverParams,
        s: usize,
        g: usize,
        start_s: usize,
        start_g: usize,
    ) -> Result<BigRational> {
        check_params(self.graph, params)?;
        let offset = self.translate(start_g, g);
        let table = &self.tables[s];
        Ok(switch_weights(params, table.t)
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let plus = BigInt::from(table.count_plus(start_s, offset, k));
                let minus = BigInt::from(table.count_minus(start_s, offset, k));
                w * (&params.a * plus + &params.b * minus)
            })
            .sum())
    }

    /// All amplitudes for the start |start_s, start_g>, in engine layout.
    pub fn basis_amplitudes(
        &self,
        params: &GroverParams,
        start_s: usize,
        start_g: usize,
    ) -> Result<Vec<BigRational>> {
        let mut out = Vec::with_capacity(self.tables.len() * self.graph.order());
        for s in 0..self.tables.len() {
            for g in 0..self.graph.order() {
                out.push(self.basis_amplitude(params, s, g, start_s, start_g)?);
            }
        }
        Ok(out)
    }

    /// Exact position distribution for the start |start_s, start_g>.
    pub fn basis_distribution(
        &self,
        params: &GroverParams,
        start_s: usize,
        start_g: usize,
    ) -> Result<Vec<BigRational>> {
        let amps = self.basis_amplitudes(params, start_s, start_g)?;
        let order = self.graph.order();
        Ok((0..order)
            .map(|g| {
                (0..self.tables.len())
                    .map(|s| &amps[s * order + g] * &amps[s * order + g])
                    .sum()
            })
            .collect())
    }

    /// Rank of start_g^-1 g.
    fn translate(&self, start_g: usize, g: usize) -> usize {
        if start_g == 0 {
            return g;
        }
        let from = self.graph.element(start_g).inverse();
        from.then(&self.graph.element(g)).expect("same degree").rank() as usize
    }
}

pub fn amplitude_uniform_start(
    graph: &CayleyGraph,
    params: &GroverParams,
    t: usize,
    s: usize,
    g: usize,
    caps: &Caps,
) -> Result<BigRational> {
    check_params(graph, params)?;
    let table = path_count_table(graph, t, s, caps)?;
    Ok(switch_weights(params, t)
        .iter()
        .enumerate()
        .map(|(k, w)| w * BigInt::from(table.count(g, k)))
        .sum())
}

#[allow(clippy::too_many_arguments)]
pub fn amplitude_basis_start(
    graph: &CayleyGraph,
    params: &GroverParams,
    t: usize,
    s: usize,
    g: usize,
    start_s: usize,
    start_g: usize,
    caps: &Caps,
) -> Result<BigRational> {
    let table = path_count_table(graph, t, s, caps)?;
    PathSum {
        graph,
        tables: (0..graph.valency())
            .map(|i| if i == s { Ok(table.clone()) } else { empty_table(graph, t, i) })
            .collect::<Result<_>>()?,
    }
    .basis_amplitude(params, s, g, start_s, start_g)
}

fn empty_table(graph: &CayleyGraph, t: usize, s: usize) -> Result<PathCountTable> {
    Ok(PathCountTable {
        t,
        s,
        d: graph.valency(),
        order: graph.order(),
        by_first: vec![0; graph.valency() * graph.order() * t],
    })
}

/// The character-sum form of the uniform-start amplitude: every word r adds
/// a^{t-k-1} b^k sum_rho d_rho chi_rho(g^-1 r), and the total is divided by
/// N. Returns r with alpha = r / sqrt(d).
pub fn amplitude_character_sum(
    graph: &CayleyGraph,
    table: &CharacterTable,
    params: &GroverParams,
    t: usize,
    s: usize,
    g: usize,
    caps: &Caps,
) -> Result<BigRational> {
    check_params(graph, params)?;
    if table.degree() != graph.degree() {
        return Err(Error::DegreeMismatch {
            left: graph.degree(),
            right: table.degree(),
        });
    }
    let regular: Vec<BigInt> = (0..table.partitions().len())
        .map(|mu| table.regular_character(mu))
        .collect();
    let weights = switch_weights(params, t);
    let g_inv = graph.element(g).inverse();
    let mut by_switch = vec![BigInt::zero(); t];
    for_each_product(graph, t, s, caps, |_, k, r| {
        let h = g_inv.then(&graph.element(r)).expect("same degree");
        let class = table.class_index(&h.cycle_type()).expect("every cycle type is a class");
        by_switch[k] += &regular[class];
    })?;
    let total: BigRational = by_switch
        .into_iter()
        .zip(&weights)
        .map(|(sum, w)| w * sum)
        .sum();
    Ok(total / BigInt::from(graph.order()))
}

/// Outcome of checking that conjugation by tau carries R_{k,t,s} onto
/// R_{k,t,tau^-1 s tau}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportReport {
    pub tau: Permutation,
    pub switches: usize,
    pub steps: usize,
    pub terminal: usize,
    pub image_terminal: usize,
    pub source_size: usize,
    pub target_size: usize,
    pub injective: bool,
    pub preserves_switches: bool,
    pub products_conjugate: bool,
    pub counts_match: bool,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.injective
            && self.preserves_switches
            && self.products_conjugate
            && self.counts_match
            && self.source_size == self.target_size
    }
}

/// Index map i -> index of tau^-1 gen_i tau. Fails unless the generating set
/// is closed under this conjugation.
fn conjugation_on_generators(graph: &CayleyGraph, tau: &Permutation) -> Result<Vec<usize>> {
    let gens = graph.generators();
    gens.gens()
        .iter()
        .map(|g| {
            gens.position(&g.conjugate_by(tau)?)
                .ok_or(Error::NotConjugateInvariant)
        })
        .collect()
}

fn word_product(graph: &CayleyGraph, word: &[usize]) -> usize {
    word.iter().fold(0usize, |pos, &w| graph.succ(w)[pos] as usize)
}

pub fn conjugation_transport(
    graph: &CayleyGraph,
    tau: &Permutation,
    k: usize,
    t: usize,
    s: usize,
    caps: &Caps,
) -> Result<TransportReport> {
    if !graph.generators().is_conjugate_invariant() {
        return Err(Error::NotConjugateInvariant);
    }
    if tau.degree() != graph.degree() {
        return Err(Error::DegreeMismatch {
            left: graph.degree(),
            right: tau.degree(),
        });
    }
    let map = conjugation_on_generators(graph, tau)?;
    let d = graph.valency();
    let image_terminal = map[s];

    let mut images = HashSet::new();
    let mut source_size = 0;
    let mut preserves_switches = true;
    let mut products_conjugate = true;
    for seq in enumerate_sequences(t, s, d, caps)?.filter(|q| q.switches == k) {
        source_size += 1;
        let image: Vec<usize> = seq.word.iter().map(|&w| map[w]).collect();
        preserves_switches &=
            switch_count(&image) == k && image.last() == Some(&image_terminal);
        let r = graph.element(word_product(graph, &seq.word));
        let expected = r.conjugate_by(tau)?.rank() as usize;
        products_conjugate &= word_product(graph, &image) == expected;
        images.insert(image);
    }
    let injective = images.len() == source_size;
    let target_size = enumerate_sequences(t, image_terminal, d, caps)?
        .filter(|q| q.switches == k)
        .count();

    // #_{k,t,s}(tau g tau^-1) = #_{k,t,tau^-1 s tau}(g)
    let source = path_count_table(graph, t, s, caps)?;
    let target = path_count_table(graph, t, image_terminal, caps)?;
    let tau_inv = tau.inverse();
    let counts_match = (0..graph.order()).all(|g| {
        let conj = graph.element(g).conjugate_by(&tau_inv).expect("same degree").rank() as usize;
        source.count(conj, k) == target.count(g, k)
    });

    Ok(TransportReport {
        tau: tau.clone(),
        switches: k,
        steps: t,
        terminal: s,
        image_terminal,
        source_size,
        target_size,
        injective,
        preserves_switches,
        products_conjugate,
        counts_match,
    })
}

/// A vertex relabelling g -> tau^-1 g tau (or g -> tau g tau^-1 when
/// `inverse` is set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationMap {
    pub tau: Permutation,
    pub inverse: bool,
}

impl ConjugationMap {
    pub fn apply(&self, g: &Permutation) -> Permutation {
        let by = if self.inverse { self.tau.inverse() } else { self.tau.clone() };
        g.conjugate_by(&by).expect("same degree")
    }
}

/// Result of comparing the distributions from |s', e> and |s, e>.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryFinding {
    /// First tau (in rank order) with tau s tau^-1 = s'.
    pub candidate: ConjugationMap,
    /// Whether P[g | s', e] = P[tau^-1 g tau | s, e] for all g.
    pub candidate_holds: bool,
    /// A conjugation map that works, found by exhaustive search if the
    /// candidate fails.
    pub working: Option<ConjugationMap>,
}

/// Looks for a vertex permutation pi with P_t[g | s', e] = P_t[pi(g) | s, e]
/// for a conjugate-invariant generating set.
pub fn chirality_symmetry(
    graph: &CayleyGraph,
    params: &GroverParams,
    t: usize,
    start: usize,
    other_start: usize,
    caps: &Caps,
) -> Result<SymmetryFinding> {
    let gens = graph.generators();
    if !gens.is_conjugate_invariant() {
        return Err(Error::NotConjugateInvariant);
    }
    let sums = PathSum::new(graph, t, caps)?;
    let from_start = sums.basis_distribution(params, start, 0)?;
    let from_other = sums.basis_distribution(params, other_start, 0)?;
    let elements: Vec<Permutation> = (0..graph.order()).map(|g| graph.element(g)).collect();
    let works = |map: &ConjugationMap| {
        elements.iter().enumerate().all(|(g, p)| {
            from_other[g] == from_start[map.apply(p).rank() as usize]
        })
    };

    let (s, s_other) = (gens.get(start), gens.get(other_start));
    // tau s tau^-1 = s'  <=>  s = tau^-1 s' tau
    let tau = elements
        .iter()
        .find(|tau| s_other.conjugate_by(tau).ok().as_ref() == Some(s))
        .cloned()
        .ok_or(Error::NotConjugateInvariant)?;
    let candidate = ConjugationMap { tau, inverse: false };
    let candidate_holds = works(&candidate);
    let working = if candidate_holds {
        Some(candidate.clone())
    } else {
        elements
            .iter()
            .flat_map(|tau| {
                [false, true].map(|inverse| ConjugationMap {
                    tau: tau.clone(),
                    inverse,
                })
            })
            .find(|m| works(m))
    };
    Ok(SymmetryFinding {
        candidate,
        candidate_holds,
        working,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::GeneratingSet;

    fn caps() -> Caps {
        Caps::default()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn enumerate_small_cases() {
        let one: Vec<_> = enumerate_sequences(1, 2, 3, &caps()).unwrap().collect();
        assert_eq!(
            one,
            vec![GeneratingSequence {
                word: vec![2],
                switches: 0
            }]
        );
        let two: Vec<_> = enumerate_sequences(2, 0, 2, &caps())
            .unwrap()
            .map(|q| (q.word, q.switches))
            .collect();
        assert_eq!(two, vec![(vec![0, 0], 0), (vec![1, 0], 1)]);
        assert!(enumerate_sequences(0, 0, 2, &caps()).is_err());
        assert!(enumerate_sequences(2, 2, 2, &caps()).is_err());
    }

    #[test]
    fn switch_count_distribution_is_binomial() {
        // brute force over all words of length 4 with 3 letters
        let mut by_k = [0u64; 4];
        for code in 0..27usize {
            let word = [code / 9, (code / 3) % 3, code % 3, 1];
            by_k[switch_count(&word)] += 1;
        }
        for k in 0..4 {
            assert_eq!(by_k[k], binomial(3, k as u64) * 2u64.pow(k as u32));
        }
        let mut from_iter = [0u64; 4];
        for q in enumerate_sequences(4, 1, 3, &caps()).unwrap() {
            from_iter[q.switches] += 1;
        }
        assert_eq!(from_iter, by_k);
    }

    #[test]
    fn enumeration_cap() {
        let tight = Caps {
            sequences: 8,
            ..Caps::default()
        };
        assert!(enumerate_sequences(4, 0, 2, &tight).is_ok());
        assert!(matches!(
            enumerate_sequences(5, 0, 2, &tight),
            Err(Error::CapExceeded { value: 16, limit: 8, .. })
        ));
    }

    #[test]
    fn gamma4_two_step_counts() {
        let g = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
        let table = path_count_table(&g, 2, 0, &caps()).unwrap();
        let sigma_mu = Permutation::parse_cycles(4, "(1234)")
            .unwrap()
            .then(&Permutation::parse_cycles(4, "(12)").unwrap())
            .unwrap()
            .rank() as usize;
        assert_eq!(table.count(0, 0), 1);
        assert_eq!(table.count(sigma_mu, 1), 1);
        assert_eq!(table.total(), 2);
        for v in 0..24 {
            for k in 0..2 {
                let expected = u64::from((v, k) == (0, 0) || (v, k) == (sigma_mu, 1));
                assert_eq!(table.count(v, k), expected);
            }
        }
    }

    #[test]
    fn single_generator_has_one_path() {
        let gens = GeneratingSet::new(vec![Permutation::parse_cycles(3, "(123)").unwrap()]).unwrap();
        let g = CayleyGraph::new(gens).unwrap();
        let table = path_count_table(&g, 4, 0, &caps()).unwrap();
        let s = g.generators().get(0);
        let s4 = s.then(s).unwrap().then(s).unwrap().then(s).unwrap();
        assert_eq!(table.count(s4.rank() as usize, 0), 1);
        assert_eq!(table.total(), 1);
    }

    #[test]
    fn switch_class_sizes() {
        let g = CayleyGraph::new(GeneratingSet::transpositions(4).unwrap()).unwrap();
        for t in 1..=4usize {
            let table = path_count_table(&g, t, 3, &caps()).unwrap();
            assert_eq!(table.total(), 6u64.pow(t as u32 - 1));
            for k in 0..t {
                assert_eq!(
                    table.total_with_switches(k),
                    binomial(t as u64 - 1, k as u64) * 5u64.pow(k as u32)
                );
                for v in 0..24 {
                    assert_eq!(
                        table.count_plus(2, v, k) + table.count_minus(2, v, k),
                        table.count(v, k)
                    );
                }
            }
        }
    }

    #[test]
    fn first_step_amplitudes() {
        let g = CayleyGraph::new(GeneratingSet::transpositions(3).unwrap()).unwrap();
        let params = GroverParams::new(3).unwrap();
        for s in 0..3 {
            let hat_s = g.generators().get(s).rank() as usize;
            for v in 0..6 {
                let r = amplitude_uniform_start(&g, &params, 1, s, v, &caps()).unwrap();
                let expected = if v == hat_s { BigRational::one() } else { BigRational::zero() };
                assert_eq!(r, expected);
            }
        }
        let table = CharacterTable::new(3).unwrap();
        let hat_0 = g.generators().get(0).rank() as usize;
        assert!(amplitude_character_sum(&g, &table, &params, 1, 0, hat_0, &caps())
            .unwrap()
            .is_one());
        let elsewhere = (0..6).find(|&v| v != hat_0).unwrap();
        assert!(amplitude_character_sum(&g, &table, &params, 1, 0, elsewhere, &caps())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn bit_flip_coin_keeps_only_alternating_words() {
        let g = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
        let params = GroverParams::new(2).unwrap();
        let t = 5;
        let table = path_count_table(&g, t, 1, &caps()).unwrap();
        // the only word ending in 1 with t - 1 switches
        let word = [1, 0, 1, 0, 1];
        let target = word_product(&g, &word);
        for v in 0..24 {
            let r = amplitude_uniform_start(&g, &params, t, 1, v, &caps()).unwrap();
            let expected = BigRational::from_integer(BigInt::from(table.count(v, t - 1)));
            assert_eq!(r, expected);
            assert_eq!(r.is_one(), v == target);
        }
    }

    #[test]
    fn translation_of_the_start_vertex() {
        let g = CayleyGraph::new(GeneratingSet::transpositions(3).unwrap()).unwrap();
        let params = GroverParams::new(3).unwrap();
        let sums = PathSum::new(&g, 3, &caps()).unwrap();
        for s in 0..3 {
            for v in 0..6 {
                assert_eq!(
                    sums.basis_amplitude(&params, s, v, 1, 0).unwrap(),
                    amplitude_basis_start(&g, &params, 3, s, v, 1, 0, &caps()).unwrap()
                );
            }
        }
        // starting at pi g* gives the distribution from g* read at pi^-1 g
        let base = sums.basis_distribution(&params, 1, 2).unwrap();
        for pi in 0..6 {
            let pi_p = g.element(pi);
            let moved_start = pi_p.then(&g.element(2)).unwrap().rank() as usize;
            let moved = sums.basis_distribution(&params, 1, moved_start).unwrap();
            for v in 0..6 {
                let back = pi_p.inverse().then(&g.element(v)).unwrap().rank() as usize;
                assert_eq!(moved[v], base[back]);
            }
        }
    }

    #[test]
    fn transport_requires_invariance_and_identity_is_trivial() {
        let gamma = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
        assert_eq!(
            conjugation_transport(&gamma, &Permutation::identity(4), 0, 2, 0, &caps()),
            Err(Error::NotConjugateInvariant)
        );
        let g = CayleyGraph::new(GeneratingSet::transpositions(3).unwrap()).unwrap();
        let report = conjugation_transport(&g, &Permutation::identity(3), 1, 3, 2, &caps()).unwrap();
        assert!(report.holds());
        assert_eq!(report.image_terminal, 2);
    }

    #[test]
    fn transport_by_three_cycle() {
        let g = CayleyGraph::new(GeneratingSet::transpositions(3).unwrap()).unwrap();
        let tau = Permutation::parse_cycles(3, "(123)").unwrap();
        for t in 1..=4 {
            for k in 0..t {
                for s in 0..3 {
                    let report = conjugation_transport(&g, &tau, k, t, s, &caps()).unwrap();
                    assert!(report.holds(), "{report:?}");
                }
            }
        }
    }

    #[test]
    fn chirality_symmetry_by_conjugation() {
        for (n, t_max) in [(3, 4), (4, 3)] {
            let g = CayleyGraph::new(GeneratingSet::transpositions(n).unwrap()).unwrap();
            let params = GroverParams::new(g.valency()).unwrap();
            for t in 1..=t_max {
                for other in 1..g.valency() {
                    let found = chirality_symmetry(&g, &params, t, 0, other, &caps()).unwrap();
                    assert!(found.candidate_holds, "S{n}, t = {t}, s' = {other}");
                    assert_eq!(found.working, Some(found.candidate.clone()));
                }
            }
        }
        let gamma = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
        let params = GroverParams::new(2).unwrap();
        assert_eq!(
            chirality_symmetry(&gamma, &params, 2, 0, 1, &caps()),
            Err(Error::NotConjugateInvariant)
        );
    }

    #[test]
    fn json_rows() {
        let g = CayleyGraph::new(GeneratingSet::gamma(4).unwrap()).unwrap();
        let table = path_count_table(&g, 2, 0, &caps()).unwrap();
        let json = table.to_json(&g, Some(0));
        assert_eq!(json.entries.len(), 2);
        assert_eq!(json.entries[0].perm, "1234");
        assert_eq!(json.entries[0].split.as_ref().unwrap()[0], [1, 0]);
        let text = serde_json::to_string(&json).unwrap();
        let back: PathCountsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
    }
}
