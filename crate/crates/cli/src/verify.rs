//! The `verify` catalog: every cross-check between the simulator and the
//! independent formulas, runnable as a whole or by group.

use std::time::{Duration, Instant};

use caywalk_core::analytics::{build_walk_matrix, class_function_check, empirical_limit, mixing_time, walk_spectrum};
use caywalk_core::engine::{basis_state, position_distribution, uniform_coin_state};
use caywalk_core::pathsum::{amplitude_character_sum, conjugation_transport, PathSum};
use caywalk_core::walsh::hadamard_amplitudes;
use caywalk_core::{
    BigInt, BigRational, Caps, CayleyGraph, CharacterTable, CoinOperator, Complex64, GeneratingSet, GroverParams,
    Permutation, Walk,
};
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub caps: Caps,
    /// Flips one character value before the table checks run.
    pub corrupt_table: bool,
}

pub struct Check {
    pub id: &'static str,
    pub group: &'static str,
    pub description: &'static str,
    run: fn(&VerifyOptions) -> Outcome,
}

type Outcome = Result<String, String>;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub fn catalog() -> Vec<Check> {
    vec![
        Check { id: "structure.gamma4", group: "structure", description: "Gamma_4 has 24 vertices and diameter 6", run: structure },
        Check { id: "characters.invariants", group: "characters", description: "orthogonality, dimensions and hook lengths for n <= 8", run: characters },
        Check { id: "paths.uniform", group: "paths", description: "uniform-start path formula equals the exact engine", run: paths_uniform },
        Check { id: "paths.basis", group: "paths", description: "basis-start path formula equals the exact engine", run: paths_basis },
        Check { id: "paths.character-sum", group: "paths", description: "character sum equals the path formula", run: paths_character_sum },
        Check { id: "paths.transport", group: "paths", description: "conjugation maps generating sequences bijectively", run: paths_transport },
        Check { id: "examples.s4-vector", group: "examples", description: "S_4 transpositions, |(12), e>, t = 2 probability multiset", run: s4_vector },
        Check { id: "classfn.uniform", group: "classfn", description: "uniform-start distributions are class functions", run: class_functions },
        Check { id: "walsh.hadamard", group: "walsh", description: "Walsh closed form equals the scaled-integer engine", run: walsh },
        Check { id: "spectrum.gamma4", group: "spectrum", description: "Hadamard walk matrix blocks and degenerate spectrum", run: spectrum },
        Check { id: "convergence.gamma4", group: "convergence", description: "Cesaro limit residual and mixing time on Gamma_4", run: convergence },
    ]
}

/// Keeps checks whose id or group matches one of the comma-separated
/// filters, e.g. `paths` or `walsh.hadamard`.
pub fn select(only: Option<&str>) -> Result<Vec<Check>, String> {
    let all = catalog();
    let Some(only) = only else { return Ok(all) };
    let filters: Vec<&str> = only.split(',').map(str::trim).filter(|f| !f.is_empty()).collect();
    for f in &filters {
        if !all.iter().any(|c| c.group == *f || c.id == *f) {
            return Err(format!("no check or group named `{f}`"));
        }
    }
    Ok(all
        .into_iter()
        .filter(|c| filters.iter().any(|f| c.group == *f || c.id == *f))
        .collect())
}

pub fn run_checks(checks: &[Check], options: &VerifyOptions, jobs: usize) -> Vec<CheckResult> {
    let run_one = |c: &Check| {
        let started = Instant::now();
        let outcome = (c.run)(options);
        let elapsed = started.elapsed();
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckResult {
            id: c.id,
            passed,
            detail,
            elapsed,
        }
    };
    if jobs <= 1 {
        return checks.iter().map(run_one).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| checks.par_iter().map(run_one).collect()),
        Err(_) => checks.iter().map(run_one).collect(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph(gens: caywalk_core::Result<GeneratingSet>, caps: &Caps) -> Result<CayleyGraph, String> {
    CayleyGraph::with_caps(gens.map_err(|e| e.to_string())?, caps).map_err(|e| e.to_string())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn structure(o: &VerifyOptions) -> Outcome {
    let g = graph(GeneratingSet::gamma(4), &o.caps)?;
    let diameter = g.diameter().map_err(err)?;
    ensure(g.order() == 24 && diameter == 6, || format!("order {}, diameter {diameter}", g.order()))?;
    Ok("24 vertices, diameter 6".into())
}

fn characters(o: &VerifyOptions) -> Outcome {
    for n in 1..=8.min(o.caps.characters) {
        let mut table = CharacterTable::with_caps(n, &o.caps).map_err(err)?;
        if o.corrupt_table && n == 4 {
            let v = table.value(1, 1);
            table = table.with_corrupted_entry(1, 1, v + 1);
        }
        let check = table.check();
        ensure(check.all_hold(), || format!("n = {n}: {check:?}"))?;
    }
    Ok("n = 1..8".into())
}

fn exact_walk(g: &CayleyGraph) -> Result<Walk<'_, BigRational>, String> {
    Walk::new(g, &CoinOperator::grover(g.valency()).map_err(err)?).map_err(err)
}

fn paths_uniform(o: &VerifyOptions) -> Outcome {
    let mut compared = 0;
    for n in [3, 4] {
        let g = graph(GeneratingSet::transpositions(n), &o.caps)?;
        let params = GroverParams::new(g.valency()).map_err(err)?;
        let walk = exact_walk(&g)?;
        let mut state = uniform_coin_state::<BigRational>(&g, 0).map_err(err)?;
        for t in 1..=6 {
            state = walk.step(&state).map_err(err)?;
            let oracle = PathSum::new(&g, t, &o.caps).map_err(err)?.uniform_amplitudes(&params).map_err(err)?;
            ensure(oracle == state.amplitudes(), || format!("S{n}, t = {t}"))?;
            ensure(state.norm_sq().is_one(), || format!("S{n}, t = {t}: norm"))?;
            compared += oracle.len();
        }
    }
    Ok(format!("{compared} amplitudes"))
}

fn paths_basis(o: &VerifyOptions) -> Outcome {
    let g = graph(GeneratingSet::transpositions(3), &o.caps)?;
    let params = GroverParams::new(3).map_err(err)?;
    let walk = exact_walk(&g)?;
    let sums = (1..=5).map(|t| PathSum::new(&g, t, &o.caps)).collect::<caywalk_core::Result<Vec<_>>>().map_err(err)?;
    for s0 in 0..3 {
        for g0 in 0..6 {
            let mut state = basis_state::<BigRational>(&g, s0, g0).map_err(err)?;
            for (t, sum) in (1..=5).zip(&sums) {
                state = walk.step(&state).map_err(err)?;
                let oracle = sum.basis_amplitudes(&params, s0, g0).map_err(err)?;
                ensure(oracle == state.amplitudes(), || format!("start ({s0}, {g0}), t = {t}"))?;
            }
        }
    }
    Ok("18 starts, t <= 5".into())
}

fn paths_character_sum(o: &VerifyOptions) -> Outcome {
    let g = graph(GeneratingSet::transpositions(3), &o.caps)?;
    let mut table = CharacterTable::with_caps(3, &o.caps).map_err(err)?;
    if o.corrupt_table {
        let v = table.value(1, 1);
        table = table.with_corrupted_entry(1, 1, v + 1);
    }
    let params = GroverParams::new(3).map_err(err)?;
    for t in 1..=5 {
        let sums = PathSum::new(&g, t, &o.caps).map_err(err)?;
        for s in 0..3 {
            for v in 0..6 {
                let a = amplitude_character_sum(&g, &table, &params, t, s, v, &o.caps).map_err(err)?;
                let b = sums.uniform_amplitude(&params, s, v).map_err(err)?;
                ensure(a == b, || format!("t = {t}, s = {s}, g = {v}: {a} vs {b}"))?;
            }
        }
    }
    Ok("S_3, t <= 5".into())
}

fn paths_transport(o: &VerifyOptions) -> Outcome {
    let mut count = 0;
    for n in [3, 4] {
        let g = graph(GeneratingSet::transpositions(n), &o.caps)?;
        for tau in 0..g.order() {
            let tau = g.element(tau);
            for t in 1..=4 {
                for k in 0..t {
                    for s in 0..g.valency() {
                        let r = conjugation_transport(&g, &tau, k, t, s, &o.caps).map_err(err)?;
                        ensure(r.holds(), || format!("{r:?}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} transports"))
}

fn s4_vector(o: &VerifyOptions) -> Outcome {
    let g = graph(GeneratingSet::transpositions(4), &o.caps)?;
    let s12 = Permutation::parse_cycles(4, "(12)").map_err(err)?;
    let start = g.generators().position(&s12).ok_or("(12) missing")?;
    let state = exact_walk(&g)?
        .evolve(&basis_state(&g, start, 0).map_err(err)?, 2)
        .map_err(err)?;
    let dist = position_distribution(&state);
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let mut expected = Vec::new();
    for (v, c) in [(q(4, 9), 1), (q(0, 1), 12), (q(2, 27), 4), (q(1, 27), 4), (q(5, 81), 1), (q(2, 81), 2)] {
        expected.extend(std::iter::repeat_n(v, c));
    }
    expected.sort();
    let mut got = dist.probs().to_vec();
    got.sort();
    ensure(got == expected, || "probability multiset differs".into())?;
    let report = class_function_check(&dist, 4).map_err(err)?;
    ensure(report.distinct_values == 6, || format!("{} distinct values", report.distinct_values))?;
    Ok("6 distinct values, P[e] = 4/9".into())
}

fn class_functions(o: &VerifyOptions) -> Outcome {
    for n in [3, 4] {
        let g = graph(GeneratingSet::transpositions(n), &o.caps)?;
        let walk = exact_walk(&g)?;
        let mut state = uniform_coin_state::<BigRational>(&g, 0).map_err(err)?;
        for t in 0..=6 {
            if t > 0 {
                state = walk.step(&state).map_err(err)?;
            }
            let report = class_function_check(&position_distribution(&state), n).map_err(err)?;
            ensure(report.is_class_function, || format!("S{n}, t = {t}"))?;
        }
    }
    Ok("S_3, S_4, t <= 6".into())
}

fn walsh(o: &VerifyOptions) -> Outcome {
    for n in [4, 5] {
        let g = graph(GeneratingSet::gamma(n), &o.caps)?;
        let walk = Walk::<BigInt>::new(&g, &CoinOperator::hadamard()).map_err(err)?;
        let mut state = basis_state::<BigInt>(&g, 0, 0).map_err(err)?;
        for t in 1..=12u32 {
            state = walk.step(&state).map_err(err)?;
            let closed = hadamard_amplitudes(&g, t, &o.caps).map_err(err)?;
            let engine: Vec<i64> = state.amplitudes().iter().map(|a| a.to_i64().unwrap_or(i64::MAX)).collect();
            ensure(closed.numerators() == engine, || format!("Gamma_{n}, t = {t}"))?;
            ensure(closed.norm_sq_scaled() == 1u128 << t, || format!("Gamma_{n}, t = {t}: norm"))?;
        }
    }
    Ok("Gamma_4, Gamma_5, t <= 12".into())
}

fn spectrum(o: &VerifyOptions) -> Outcome {
    let g = graph(GeneratingSet::gamma(4), &o.caps)?;
    let u = build_walk_matrix(&g, &CoinOperator::hadamard(), None, &o.caps).map_err(err)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (rs, cs, sign) in [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)] {
        let block = u.block(rs, cs);
        let succ = g.succ(rs);
        for row in 0..24 {
            for col in 0..24 {
                let want = if succ[col] as usize == row { sign * h } else { 0.0 };
                ensure(block[row * 24 + col] == Complex64::new(want, 0.0), || format!("block ({rs}, {cs})"))?;
            }
        }
    }
    let spectrum = walk_spectrum(&u).map_err(err)?;
    ensure(spectrum.max_modulus_defect <= 1e-8, || format!("modulus defect {:e}", spectrum.max_modulus_defect))?;
    ensure(spectrum.largest_multiplicity() >= 2, || "spectrum is simple".into())?;
    Ok(format!("largest multiplicity {}", spectrum.largest_multiplicity()))
}

fn convergence(o: &VerifyOptions) -> Outcome {
    let g = graph(GeneratingSet::gamma(4), &o.caps)?;
    let walk = Walk::<Complex64>::new(&g, &CoinOperator::hadamard()).map_err(err)?;
    let start = basis_state::<Complex64>(&g, 0, 0).map_err(err)?;
    let est = empirical_limit(&walk, &start, 4096, 0.01).map_err(err)?;
    ensure(est.converged, || format!("residual {:.3e} above 0.01", est.residual))?;
    let report = mixing_time(&walk, &start, 0.05, 4096).map_err(err)?;
    let m = report.mixing_time.ok_or_else(|| "mixing time not reached".to_string())?;
    ensure(est.norm_drift <= 1e-12, || format!("norm drift {:e}", est.norm_drift))?;
    Ok(format!("residual {:.3e}, M_0.05 = {m}", est.residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert_eq!(select(None).unwrap().len(), catalog().len());
        let paths = select(Some("paths")).unwrap();
        assert!(paths.len() == 4 && paths.iter().all(|c| c.group == "paths"));
        let two = select(Some("walsh.hadamard, structure")).unwrap();
        assert_eq!(two.len(), 2);
        assert!(select(Some("nope")).is_err());
    }

    #[test]
    fn corrupted_table_fails_character_checks() {
        let options = VerifyOptions {
            corrupt_table: true,
            ..VerifyOptions::default()
        };
        let results = run_checks(&select(Some("characters")).unwrap(), &options, 1);
        assert!(!results[0].passed);
        let clean = run_checks(&select(Some("characters")).unwrap(), &VerifyOptions::default(), 1);
        assert!(clean[0].passed, "{}", clean[0].detail);
    }
}
