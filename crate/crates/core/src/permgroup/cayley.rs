use std::collections::{HashSet, VecDeque};
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::permutation::{factorial, Permutation};
use super::Partition;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// An ordered list of distinct non-identity generators of equal degree.
/// The order fixes the chirality index of each generator in the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    gens: Vec<Permutation>,
    labels: Vec<String>,
}

impl GeneratingSet {
    pub fn new(gens: Vec<Permutation>) -> Result<GeneratingSet> {
        let labels = gens.iter().map(Permutation::cycle_notation).collect();
        GeneratingSet::with_labels(gens, labels)
    }

    pub fn with_labels(gens: Vec<Permutation>, labels: Vec<String>) -> Result<GeneratingSet> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidGenerators("no generators given".into()));
        };
        if labels.len() != gens.len() {
            return Err(Error::InvalidGenerators(format!(
                "{} labels for {} generators",
                labels.len(),
                gens.len()
            )));
        }
        let n = first.degree();
        let mut seen = HashSet::new();
        for g in &gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: g.degree(),
                });
            }
            if g.is_identity() {
                return Err(Error::InvalidGenerators(
                    "the identity would add self-loops".into(),
                ));
            }
            if !seen.insert(g) {
                return Err(Error::InvalidGenerators(format!("{g} listed twice")));
            }
        }
        Ok(GeneratingSet { gens, labels })
    }

    /// The pair mu = (1 2), sigma = (1 2 ... n), in that order.
    pub fn gamma(n: usize) -> Result<GeneratingSet> {
        if n < 3 {
            return Err(Error::InvalidGenerators(format!(
                "gamma preset needs n >= 3, got {n}"
            )));
        }
        let mu = Permutation::from_cycles(n, &[[0, 1]])?;
        let sigma = Permutation::from_cycles(n, &[(0..n).collect::<Vec<_>>()])?;
        GeneratingSet::new(vec![mu, sigma])
    }

    /// All transpositions (i j), i < j, in lexicographic order, so (1 2)
    /// comes first.
    pub fn transpositions(n: usize) -> Result<GeneratingSet> {
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                gens.push(Permutation::from_cycles(n, &[[i, j]])?);
            }
        }
        GeneratingSet::new(gens)
    }

    pub fn degree(&self) -> usize {
        self.gens[0].degree()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, index: usize) -> &Permutation {
        &self.gens[index]
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.gens.iter().position(|g| g == p)
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.gens.iter().all(|g| self.position(&g.inverse()).is_some())
    }

    /// True iff the set is a union of conjugacy classes. Since the generators
    /// are distinct, this holds exactly when the class sizes of the cycle
    /// types present add up to the number of generators.
    pub fn is_conjugate_invariant(&self) -> bool {
        let types: HashSet<Partition> = self.gens.iter().map(Permutation::cycle_type).collect();
        let covered: u64 = types.iter().map(Partition::class_size).sum();
        covered == self.gens.len() as u64
    }
}

pub fn is_conjugate_invariant(gens: &GeneratingSet) -> bool {
    gens.is_conjugate_invariant()
}

/// The Cayley graph of S_n over a generating set: vertex g has an edge to
/// g s for every generator s. Vertices are Lehmer ranks.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    n: usize,
    order: usize,
    gens: GeneratingSet,
    succ: Vec<Vec<u32>>,
    pred: Vec<Vec<u32>>,
}

impl CayleyGraph {
    pub fn new(gens: GeneratingSet) -> Result<CayleyGraph> {
        CayleyGraph::with_caps(gens, &Caps::default())
    }

    pub fn with_caps(gens: GeneratingSet, caps: &Caps) -> Result<CayleyGraph> {
        let n = gens.degree();
        Caps::check("group degree", n as u64, caps.degree as u64)?;
        let order = factorial(n) as usize;
        let mut succ = vec![vec![0u32; order]; gens.len()];
        let mut pred = vec![vec![0u32; order]; gens.len()];
        for g in 0..order {
            let p = Permutation::unrank(n, g as u64)?;
            for (s, gen) in gens.gens().iter().enumerate() {
                let h = p.then(gen)?.rank() as u32;
                succ[s][g] = h;
                pred[s][h as usize] = g as u32;
            }
        }
        Ok(CayleyGraph {
            n,
            order,
            gens,
            succ,
            pred,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of vertices, N = n!.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Out-degree d = number of generators.
    pub fn valency(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.gens
    }

    /// `succ(s)[g]` is the rank of g * gen_s.
    pub fn succ(&self, s: usize) -> &[u32] {
        &self.succ[s]
    }

    /// Inverse of [`succ`](Self::succ): `pred(s)[g]` is the rank of g * gen_s^-1.
    pub fn pred(&self, s: usize) -> &[u32] {
        &self.pred[s]
    }

    pub fn element(&self, rank: usize) -> Permutation {
        Permutation::unrank(self.n, rank as u64).expect("rank within group order")
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.succ.iter().any(|table| table[from] as usize == to)
    }

    /// BFS distances from the identity (`None` where unreachable).
    pub fn distances_from_identity(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        dist[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            let next = dist[g].unwrap() + 1;
            for table in &self.succ {
                let h = table[g] as usize;
                if dist[h].is_none() {
                    dist[h] = Some(next);
                    queue.push_back(h);
                }
            }
        }
        dist
    }

    /// Largest directed distance over all ordered vertex pairs. Left
    /// multiplication by any group element is a graph automorphism, so this
    /// is the eccentricity of the identity.
    pub fn diameter(&self) -> Result<usize> {
        let dist = self.distances_from_identity();
        let reached = dist.iter().filter(|d| d.is_some()).count();
        if reached < self.order {
            return Err(Error::NotStronglyConnected {
                reached,
                order: self.order,
            });
        }
        Ok(dist.into_iter().flatten().max().unwrap_or(0))
    }

    /// Writes the graph in Graphviz DOT form, one edge per generator with a
    /// `gen` attribute carrying the generator label.
    pub fn write_dot<W: Write>(&self, mut out: W) -> io::Result<()> {
        const PALETTE: [&str; 8] = [
            "forestgreen",
            "blue",
            "red",
            "orange",
            "purple",
            "brown",
            "magenta",
            "gray40",
        ];
        writeln!(out, "digraph cayley {{")?;
        writeln!(out, "  node [shape=circle];")?;
        for g in 0..self.order {
            writeln!(out, "  {g} [label=\"{}\"];", self.element(g).one_line())?;
        }
        for (s, table) in self.succ.iter().enumerate() {
            let label = self.gens.labels()[s].replace('"', "\\\"");
            let color = PALETTE[s % PALETTE.len()];
            for (g, &h) in table.iter().enumerate() {
                writeln!(out, "  {g} -> {h} [gen=\"{label}\", color=\"{color}\"];")?;
            }
        }
        writeln!(out, "}}")
    }

    pub fn succ_tables(&self) -> SuccTables {
        SuccTables {
            n: self.n,
            order: self.order,
            generators: self
                .gens
                .gens()
                .iter()
                .zip(self.gens.labels())
                .map(|(g, label)| GeneratorEntry {
                    label: label.clone(),
                    images: g.images().to_vec(),
                })
                .collect(),
            succ: self.succ.clone(),
        }
    }
}

/// JSON form of a Cayley graph's successor tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccTables {
    pub n: usize,
    pub order: usize,
    pub generators: Vec<GeneratorEntry>,
    pub succ: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub label: String,
    /// 0-based one-line images.
    pub images: Vec<u8>,
}
