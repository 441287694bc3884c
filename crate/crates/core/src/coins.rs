//! Coin operators on the chirality space.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Accepted deviation from unitarity for user-supplied coins.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoinKind {
    Grover,
    Hadamard,
    /// (I + iX)/sqrt(2).
    Ix,
    Custom,
}

impl fmt::Display for CoinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoinKind::Grover => "grover",
            CoinKind::Hadamard => "hadamard",
            CoinKind::Ix => "ix",
            CoinKind::Custom => "custom",
        })
    }
}

/// The two entries of the Grover coin: `a` on the diagonal, `b` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroverParams {
    pub d: usize,
    pub a: BigRational,
    pub b: BigRational,
}

impl GroverParams {
    pub fn new(d: usize) -> Result<GroverParams> {
        if d < 2 {
            return Err(Error::InvalidCoin(format!("Grover coin needs d >= 2, got {d}")));
        }
        let b = BigRational::new(BigInt::from(2), BigInt::from(d));
        let a = &b - BigRational::one();
        Ok(GroverParams { d, a, b })
    }
}

/// A d x d unitary acting on chirality. Entries are row-major;
/// `entry(i, j)` maps chirality `j` to chirality `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinOperator {
    d: usize,
    kind: CoinKind,
    entries: Vec<Complex64>,
    exact: Option<Vec<BigRational>>,
}

impl CoinOperator {
    /// Reflection about the uniform chirality vector. d = 2 gives the bit flip.
    pub fn grover(d: usize) -> Result<CoinOperator> {
        let params = GroverParams::new(d)?;
        let exact: Vec<BigRational> = (0..d * d)
            .map(|k| {
                if k / d == k % d {
                    params.a.clone()
                } else {
                    params.b.clone()
                }
            })
            .collect();
        Ok(CoinOperator {
            d,
            kind: CoinKind::Grover,
            entries: exact.iter().map(|q| Complex64::new(ratio_to_f64(q), 0.0)).collect(),
            exact: Some(exact),
        })
    }

    pub fn hadamard() -> CoinOperator {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        CoinOperator {
            d: 2,
            kind: CoinKind::Hadamard,
            entries: vec![h, h, h, -h],
            exact: None,
        }
    }

    pub fn ix() -> CoinOperator {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        CoinOperator {
            d: 2,
            kind: CoinKind::Ix,
            entries: vec![r, i, i, r],
            exact: None,
        }
    }

    /// Any square unitary. Integer-valued real matrices (identities,
    /// permutation matrices) also get an exact form.
    pub fn custom(rows: Vec<Vec<Complex64>>) -> Result<CoinOperator> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::InvalidCoin("empty matrix".into()));
        }
        if let Some(row) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::InvalidCoin(format!(
                "matrix is not square: row of length {} in a {d}-row matrix",
                row.len()
            )));
        }
        let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
        let defect = unitarity_defect(d, &entries);
        if !(defect <= UNITARITY_TOLERANCE) {
            return Err(Error::NonUnitary { defect });
        }
        let exact = entries
            .iter()
            .map(|z| {
                (z.im == 0.0 && z.re.fract() == 0.0)
                    .then(|| BigRational::from_integer(BigInt::from(z.re as i64)))
            })
            .collect();
        Ok(CoinOperator {
            d,
            kind: CoinKind::Custom,
            entries,
            exact,
        })
    }

    /// Parses a JSON matrix of `[re, im]` pairs, e.g. `[[[1,0],[0,0]],[[0,0],[1,0]]]`.
    pub fn from_json(text: &str) -> Result<CoinOperator> {
        let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "coin matrix",
            detail: e.to_string(),
        })?;
        CoinOperator::custom(
            rows.into_iter()
                .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
                .collect(),
        )
    }

    pub fn identity(d: usize) -> CoinOperator {
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { Complex64::one() } else { Complex64::zero() })
                    .collect()
            })
            .collect();
        CoinOperator::custom(rows).expect("identity is unitary")
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> CoinKind {
        self.kind
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.d + col]
    }

    /// Exact rational entries, where the coin has them.
    pub fn exact_entries(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn grover_params(&self) -> Option<GroverParams> {
        match self.kind {
            CoinKind::Grover => GroverParams::new(self.d).ok(),
            _ => None,
        }
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(self.d, &self.entries)
    }
}

/// max |(C^dagger C - I)_{ij}|.
pub fn unitarity_defect(d: usize, entries: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut sum = Complex64::zero();
            for k in 0..d {
                sum += entries[k * d + i].conj() * entries[k * d + j];
            }
            if i == j {
                sum -= 1.0;
            }
            worst = worst.max(sum.norm());
        }
    }
    worst
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
