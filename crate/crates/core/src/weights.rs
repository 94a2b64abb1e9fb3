//! Weight tuples and the reduction, well-forming and Veronese constructions.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Positive integer weights `(q_0, …, q_n)` together with `m = lcm` and
/// `qprod = ∏ q_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights {
    q: Vec<u64>,
    m: u64,
    qprod: u64,
}

impl Weights {
    pub fn new(q: Vec<u64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::InvalidWeights("empty weight tuple".into()));
        }
        if q.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        let overflow = || Error::InvalidWeights("weight product overflows u64".into());
        let mut m = 1u64;
        let mut qprod = 1u64;
        for &x in &q {
            m = (m / m.gcd(&x)).checked_mul(x).ok_or_else(overflow)?;
            qprod = qprod.checked_mul(x).ok_or_else(overflow)?;
        }
        Ok(Weights { q, m, qprod })
    }

    /// All-ones weights of the given length: ordinary projective space.
    pub fn ones(len: usize) -> Self {
        Weights::new(vec![1; len.max(1)]).expect("valid")
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn get(&self, i: usize) -> u64 {
        self.q[i]
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    /// `n` in `WP^n`.
    pub fn dim(&self) -> usize {
        self.q.len() - 1
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn qprod(&self) -> u64 {
        self.qprod
    }

    pub fn gcd(&self) -> u64 {
        gcd_all(self.q.iter().copied())
    }

    pub fn is_reduced(&self) -> bool {
        self.gcd() == 1
    }

    /// Every n-subset of the weights is coprime.
    pub fn is_well_formed(&self) -> bool {
        if self.len() == 1 {
            return self.is_reduced();
        }
        (0..self.len()).all(|i| gcd_all(self.others(i)) == 1)
    }

    pub fn is_all_ones(&self) -> bool {
        self.q.iter().all(|&x| x == 1)
    }

    fn others(&self, i: usize) -> impl Iterator<Item = u64> + '_ {
        self.q
            .iter()
            .enumerate()
            .filter(move |&(j, _)| j != i)
            .map(|(_, &x)| x)
    }

    /// Weights sorted ascending, plus the permutation `perm` with
    /// `sorted[k] = q[perm[k]]`. Permuted weight tuples define isomorphic
    /// spaces; the original order is never changed implicitly.
    pub fn canonical_sorted(&self) -> (Weights, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&i| (self.q[i], i));
        let sorted = perm.iter().map(|&i| self.q[i]).collect();
        (Weights::new(sorted).expect("valid"), perm)
    }
}

pub(crate) fn gcd_all(it: impl Iterator<Item = u64>) -> u64 {
    it.fold(0u64, |a, b| a.gcd(&b))
}

fn lcm_all(it: impl Iterator<Item = u64>) -> u64 {
    it.fold(1u64, |a, b| a.lcm(&b))
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.q.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Weights {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Weights {
    type Err = Error;

    /// Accepts `w=(q0,q1,...)` or `(q0,q1,...)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.strip_prefix("w=").unwrap_or(&t);
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("weights must look like (q0,...,qn): `{s}`")))?;
        let q = inner
            .split(',')
            .map(|x| {
                if x.is_empty() || !x.chars().all(|c| c.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad weight `{x}`")));
                }
                x.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad weight `{x}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Weights::new(q)
    }
}

/// Coordinate map `y_i = x_i^{e_i}` from points of `source` to points of
/// `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    pub source: Weights,
    pub target: Weights,
    pub coord_exponents: Vec<u64>,
}

impl WeightMap {
    pub fn identity(w: &Weights) -> Self {
        WeightMap {
            source: w.clone(),
            target: w.clone(),
            coord_exponents: vec![1; w.len()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.coord_exponents.iter().all(|&e| e == 1)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &WeightMap) -> Result<WeightMap> {
        if self.target != next.source {
            return Err(Error::WeightMismatch);
        }
        Ok(WeightMap {
            source: self.source.clone(),
            target: next.target.clone(),
            coord_exponents: self
                .coord_exponents
                .iter()
                .zip(&next.coord_exponents)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// Divide out `d = gcd(q)`; coordinates are raised to the `d`-th power.
pub fn reduce(w: &Weights) -> WeightMap {
    let d = w.gcd();
    let target = Weights::new(w.q.iter().map(|x| x / d).collect()).expect("valid");
    WeightMap {
        source: w.clone(),
        target,
        coord_exponents: vec![d; w.len()],
    }
}

/// One-pass well-forming of reduced weights: with `d_i` the gcd of all
/// weights but `q_i` and `a_i` the lcm of all `d_j` but `d_i`, the target
/// weights are `q_i / a_i` and coordinate `i` is raised to `d_i`.
pub fn well_form(w: &Weights) -> Result<WeightMap> {
    let g = w.gcd();
    if g != 1 {
        return Err(Error::NotReduced(g));
    }
    if w.len() == 1 {
        return Ok(WeightMap::identity(w));
    }
    let d: Vec<u64> = (0..w.len()).map(|i| gcd_all(w.others(i))).collect();
    let a: Vec<u64> = (0..w.len())
        .map(|i| {
            lcm_all(
                d.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x),
            )
        })
        .collect();
    let target = Weights::new(w.q.iter().zip(&a).map(|(q, a)| q / a).collect())?;
    Ok(WeightMap {
        source: w.clone(),
        target,
        coord_exponents: d,
    })
}

/// `reduce` followed by `well_form`.
pub fn reduce_and_well_form(w: &Weights) -> WeightMap {
    let r = reduce(w);
    let wf = well_form(&r.target).expect("reduced");
    r.then(&wf).expect("composable")
}

/// Data of the Veronese map `x_i ↦ x_i^{m/q_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeroneseData {
    pub m: u64,
    pub exps: Vec<u64>,
    pub is_embedding: bool,
}

pub fn veronese_data(w: &Weights) -> VeroneseData {
    let exps: Vec<u64> = w.q.iter().map(|q| w.m / q).collect();
    let is_embedding = gcd_all(exps.iter().copied()) == 1;
    VeroneseData {
        m: w.m,
        exps,
        is_embedding,
    }
}
