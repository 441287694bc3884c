//! Distributions over time, convergence, class-function diagnostics and the
//! spectrum of the walk operator.
//!
//! Distances use the unnormalised L1 form `sum_g |P[g] - Q[g]|`, so they
//! range over [0, 2].

pub mod eigen;

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::coins::CoinOperator;
use crate::engine::{position_distribution, ChiralityPermutation, Distribution, Walk, WalkState};
use crate::error::{Error, Result};
use crate::permgroup::{conjugacy_classes, factorial, CayleyGraph, Partition, Permutation};

pub use eigen::eigenvalues;

/// Tolerance for float class-function verdicts.
pub const CLASS_FUNCTION_TOLERANCE: f64 = 1e-12;
/// Eigenvalues closer than this are one cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

pub fn tv_distance(p: &Distribution, q: &Distribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(l1(p.probs(), q.probs()))
}

fn l1(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum()
}

/// Runs the walk for `t_max` steps and hands the running mean
/// P̄_T = (1/T) sum_{t<T} P_t to `visit` for every T in 1..=t_max.
/// Returns the largest |‖psi_t‖^2 - 1| seen.
fn for_each_mean<F: FnMut(usize, &[f64])>(
    walk: &Walk<'_, Complex64>,
    start: &WalkState<Complex64>,
    t_max: usize,
    mut visit: F,
) -> Result<f64> {
    let order = walk.graph().order();
    let mut sum = vec![0.0; order];
    let mut mean = vec![0.0; order];
    let mut state = start.clone();
    let mut drift = 0.0f64;
    for t in 1..=t_max {
        drift = drift.max((state.norm_sq() - 1.0).abs());
        for (acc, p) in sum.iter_mut().zip(position_distribution(&state).probs()) {
            *acc += p;
        }
        for (m, s) in mean.iter_mut().zip(&sum) {
            *m = s / t as f64;
        }
        visit(t, &mean);
        if t < t_max {
            state = walk.step(&state)?;
        }
    }
    Ok(drift)
}

/// P̄_T, the mean of P_0, ..., P_{T-1}.
pub fn time_averaged(walk: &Walk<'_, Complex64>, start: &WalkState<Complex64>, t: usize) -> Result<Distribution> {
    if t == 0 {
        return Err(Error::InvalidArgument("time average needs T >= 1".into()));
    }
    let mut last = Vec::new();
    for_each_mean(walk, start, t, |tt, mean| {
        if tt == t {
            last = mean.to_vec();
        }
    })?;
    Ok(Distribution::new(last))
}

/// P̄_T as a reference limit, with the Cauchy residual
/// sup_{T in [T_max/2, T_max]} tv(P̄_T, P̄_{T_max}).
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub t_max: usize,
    pub limit: Distribution,
    pub residual: f64,
    pub tolerance: f64,
    pub converged: bool,
    pub norm_drift: f64,
}

pub fn empirical_limit(
    walk: &Walk<'_, Complex64>,
    start: &WalkState<Complex64>,
    t_max: usize,
    tol: f64,
) -> Result<LimitEstimate> {
    if t_max == 0 {
        return Err(Error::InvalidArgument("T_max must be at least 1".into()));
    }
    let limit = time_averaged(walk, start, t_max)?;
    let from = (t_max / 2).max(1);
    let mut residual = 0.0f64;
    let drift = for_each_mean(walk, start, t_max, |t, mean| {
        if t >= from {
            residual = residual.max(l1(mean, limit.probs()));
        }
    })?;
    Ok(LimitEstimate {
        t_max,
        limit,
        residual,
        tolerance: tol,
        converged: residual <= tol,
        norm_drift: drift,
    })
}

/// tv(P̄_T, pi) for every T in 1..=T_max against pi = P̄_{T_max}, and the
/// mixing time M = min { t >= 0 : tv(P̄_T, pi) <= eps for all T in
/// [max(t, 1), T_max] }. M is reported only if it lies in the first half of
/// the run, since the tail close to T_max agrees with pi by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub eps: f64,
    pub t_max: usize,
    pub samples: Vec<usize>,
    pub tv: Vec<f64>,
    pub mixing_time: Option<usize>,
    pub reference: Vec<f64>,
    pub residual: f64,
    pub norm_drift: f64,
}

impl ConvergenceReport {
    pub fn reached(&self) -> bool {
        self.mixing_time.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

pub fn mixing_time(
    walk: &Walk<'_, Complex64>,
    start: &WalkState<Complex64>,
    eps: f64,
    t_max: usize,
) -> Result<ConvergenceReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if t_max == 0 {
        return Err(Error::InvalidArgument("T_max must be at least 1".into()));
    }
    let reference = time_averaged(walk, start, t_max)?;
    let mut tv = Vec::with_capacity(t_max);
    let drift = for_each_mean(walk, start, t_max, |_, mean| tv.push(l1(mean, reference.probs())))?;
    // smallest T with the whole tail below eps
    let mut first_ok = t_max + 1;
    for t in (1..=t_max).rev() {
        if tv[t - 1] > eps {
            break;
        }
        first_ok = t;
    }
    let mixing = if first_ok == 1 {
        Some(0)
    } else if first_ok <= t_max / 2 {
        Some(first_ok)
    } else {
        None
    };
    let from = (t_max / 2).max(1);
    let residual = tv[from - 1..].iter().copied().fold(0.0, f64::max);
    Ok(ConvergenceReport {
        eps,
        t_max,
        samples: (1..=t_max).collect(),
        tv,
        mixing_time: mixing,
        reference: reference.into_probs(),
        residual,
        norm_drift: drift,
    })
}

/// Probability values that can be compared per conjugacy class.
pub trait ClassValue: Clone + PartialOrd {
    fn spread(min: &Self, max: &Self) -> Self;
    fn within_tolerance(spread: &Self) -> bool;
    fn same(a: &Self, b: &Self) -> bool;
    fn as_f64(&self) -> f64;
}

impl ClassValue for f64 {
    fn spread(min: &f64, max: &f64) -> f64 {
        max - min
    }
    fn within_tolerance(spread: &f64) -> bool {
        *spread <= CLASS_FUNCTION_TOLERANCE
    }
    fn same(a: &f64, b: &f64) -> bool {
        (a - b).abs() <= CLASS_FUNCTION_TOLERANCE
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

impl ClassValue for BigRational {
    fn spread(min: &BigRational, max: &BigRational) -> BigRational {
        max - min
    }
    fn within_tolerance(spread: &BigRational) -> bool {
        spread.is_zero()
    }
    fn same(a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSpread<P> {
    pub class: Partition,
    pub size: u64,
    pub min: P,
    pub max: P,
    pub spread: P,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunctionReport<P> {
    pub classes: Vec<ClassSpread<P>>,
    pub is_class_function: bool,
    pub distinct_values: usize,
}

pub fn class_function_check<P: ClassValue>(dist: &Distribution<P>, n: usize) -> Result<ClassFunctionReport<P>> {
    let order = factorial(n);
    if dist.len() as u64 != order {
        return Err(Error::SizeMismatch {
            left: dist.len(),
            right: order as usize,
        });
    }
    let mut by_class: BTreeMap<Vec<usize>, (P, P)> = BTreeMap::new();
    for (g, p) in dist.probs().iter().enumerate() {
        let class = Permutation::unrank(n, g as u64)?.cycle_type();
        by_class
            .entry(class.parts().to_vec())
            .and_modify(|(lo, hi)| {
                if p < lo {
                    *lo = p.clone();
                }
                if p > hi {
                    *hi = p.clone();
                }
            })
            .or_insert_with(|| (p.clone(), p.clone()));
    }
    let classes: Vec<ClassSpread<P>> = conjugacy_classes(n)
        .into_iter()
        .map(|(class, size)| {
            let (min, max) = by_class[class.parts()].clone();
            ClassSpread {
                spread: P::spread(&min, &max),
                class,
                size,
                min,
                max,
            }
        })
        .collect();
    let is_class_function = classes.iter().all(|c| P::within_tolerance(&c.spread));

    let mut values = dist.probs().to_vec();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let mut distinct = 0;
    for (i, v) in values.iter().enumerate() {
        if i == 0 || !P::same(&values[i - 1], v) {
            distinct += 1;
        }
    }
    Ok(ClassFunctionReport {
        classes,
        is_class_function,
        distinct_values: distinct,
    })
}

/// Dense U = Lambda (C x I), row-major, indexed like walk states.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkMatrix {
    d: usize,
    order: usize,
    entries: Vec<Complex64>,
}

pub fn build_walk_matrix(
    graph: &CayleyGraph,
    coin: &CoinOperator,
    shift: Option<&ChiralityPermutation>,
    caps: &Caps,
) -> Result<WalkMatrix> {
    let (d, order) = (graph.valency(), graph.order());
    if coin.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: coin.dim(),
        });
    }
    if let Some(p) = shift {
        if p.len() != d {
            return Err(Error::InvalidShift(format!(
                "permutation of {} chiralities for a walk with d = {d}",
                p.len()
            )));
        }
    }
    let dim = d * order;
    Caps::check("walk matrix dimension", dim as u64, caps.dense as u64)?;
    let mut entries = vec![Complex64::zero(); dim * dim];
    for s in 0..d {
        let target = shift.map_or(s, |p| p.apply(s));
        let succ = graph.succ(s);
        for s_in in 0..d {
            let c = coin.entry(s, s_in);
            if c == Complex64::zero() {
                continue;
            }
            for g in 0..order {
                let row = target * order + succ[g] as usize;
                entries[row * dim + s_in * order + g] = c;
            }
        }
    }
    Ok(WalkMatrix { d, order, entries })
}

impl WalkMatrix {
    pub fn dim(&self) -> usize {
        self.d * self.order
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    /// The N x N block from chirality `col_s` to chirality `row_s`.
    pub fn block(&self, row_s: usize, col_s: usize) -> Vec<Complex64> {
        let (n, dim) = (self.order, self.dim());
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = (row_s * n + i) * dim + col_s * n;
            out.extend_from_slice(&self.entries[row..row + n]);
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(self
            .entries
            .chunks(dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// max |(U U^dagger - I)_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            let ri = &self.entries[i * dim..(i + 1) * dim];
            for j in 0..dim {
                let rj = &self.entries[j * dim..(j + 1) * dim];
                let mut z: Complex64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
                if i == j {
                    z -= 1.0;
                }
                worst = worst.max(z.norm());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Sorted by argument in (-pi, pi].
    pub eigenvalues: Vec<Complex64>,
    /// Cluster index of each eigenvalue.
    pub cluster_of: Vec<usize>,
    pub clusters: Vec<EigenCluster>,
    pub min_gap: f64,
    pub max_modulus_defect: f64,
}

impl Spectrum {
    pub fn largest_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).max().unwrap_or(0)
    }

    /// Columns: index, re, im, modulus, arg, cluster, multiplicity.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "re", "im", "modulus", "arg", "cluster", "multiplicity"])?;
        for (i, z) in self.eigenvalues.iter().enumerate() {
            let c = self.cluster_of[i];
            w.write_record([
                i.to_string(),
                format!("{:.15e}", z.re),
                format!("{:.15e}", z.im),
                format!("{:.15e}", z.norm()),
                format!("{:.15e}", z.arg()),
                c.to_string(),
                self.clusters[c].multiplicity.to_string(),
            ])?;
        }
        w.flush()
    }
}

pub fn walk_spectrum(u: &WalkMatrix) -> Result<Spectrum> {
    let mut eig = eigenvalues(u.dim(), u.entries())?;
    eig.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    let n = eig.len();

    // single linkage via union-find
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let gap = (eig[i] - eig[j]).norm();
            min_gap = min_gap.min(gap);
            if gap <= CLUSTER_TOLERANCE {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut index_of_root = BTreeMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut cluster_of = vec![0; n];
    for i in 0..n {
        let r = root(&mut parent, i);
        let c = *index_of_root.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[c].push(i);
        cluster_of[i] = c;
    }
    let clusters = members
        .iter()
        .map(|m| EigenCluster {
            center: m.iter().map(|&i| eig[i]).sum::<Complex64>() / m.len() as f64,
            multiplicity: m.len(),
        })
        .collect();
    let max_modulus_defect = eig.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    Ok(Spectrum {
        eigenvalues: eig,
        cluster_of,
        clusters,
        min_gap: if n < 2 { 0.0 } else { min_gap },
        max_modulus_defect,
    })
}

/// Columns: g, perm, probability.
pub fn write_distribution_csv<W: Write>(graph: &CayleyGraph, dist: &Distribution, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["g", "perm", "probability"])?;
    for (g, p) in dist.probs().iter().enumerate() {
        w.write_record([g.to_string(), graph.element(g).one_line(), format!("{p:.17e}")])?;
    }
    w.flush()
}
