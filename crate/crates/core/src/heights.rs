//! Global weighted heights over Q and the projective height oracle.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{abs_p, collect_primes, ln_abs, ln_bigint, pow_rat, Place, Rat};
use crate::error::{Error, Result};
use crate::points::{ProjPoint, WPoint};
use crate::weights::veronese_data;

/// Weighted height of a point, carried exactly as `wh^m` (always rational
/// because every `m/q_i` is an integer) plus its logarithm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightValue {
    pub m: u64,
    #[serde(serialize_with = "crate::format::ser_rat")]
    pub wh_pow_m: Rat,
    #[serde(serialize_with = "crate::format::ser_f64")]
    pub lwh: f64,
    /// Per-place factor `max_i |x_i|_v^{m/q_i}`.
    #[serde(serialize_with = "crate::format::ser_place_rats")]
    pub per_place: Vec<(Place, Rat)>,
}

/// Multiplicative and logarithmic height of a point of `P^n(Q)`: the max
/// absolute coordinate of its coprime integral representative.
pub fn weil_height(coords: &[Rat]) -> Result<(BigInt, f64)> {
    let p = ProjPoint::from_rationals(coords)?;
    Ok(proj_height(&p))
}

pub fn proj_height(p: &ProjPoint) -> (BigInt, f64) {
    let h = p.coords().iter().map(|c| c.abs()).max().expect("nonempty");
    let log = ln_bigint(&h);
    (h, log)
}

/// Places at which some coordinate has nonzero valuation, plus infinity.
pub(crate) fn point_places(coords: &[Rat]) -> Vec<Place> {
    let mut primes = BTreeSet::new();
    for c in coords.iter().filter(|c| !c.is_zero()) {
        collect_primes(c, &mut primes);
    }
    std::iter::once(Place::Archimedean)
        .chain(primes.into_iter().map(Place::Finite))
        .collect()
}

/// `max_i |x_i|_v^{e_i}` over nonzero coordinates.
pub(crate) fn max_abs_pow(coords: &[Rat], exps: &[u64], place: &Place) -> Rat {
    coords
        .iter()
        .zip(exps)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, &e)| {
            let a = match place {
                Place::Archimedean => c.abs(),
                Place::Finite(p) => abs_p(c, p),
            };
            pow_rat(&a, e as i64)
        })
        .max()
        .expect("nonzero point")
}

/// `wh(x) = ∏_v max_i |x_i|_v^{1/q_i}`, returned through `wh^m`.
pub fn wheight(x: &WPoint) -> HeightValue {
    let v = veronese_data(x.weights());
    let mut total = Rat::from_integer(1.into());
    let mut per_place = Vec::new();
    for place in point_places(x.coords()) {
        let f = max_abs_pow(x.coords(), &v.exps, &place);
        total *= &f;
        per_place.push((place, f));
    }
    let lwh = ln_abs(&total) / v.m as f64;
    HeightValue {
        m: v.m,
        wh_pow_m: total,
        lwh,
        per_place,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeroneseCheck {
    #[serde(serialize_with = "crate::format::ser_rat")]
    pub lhs: Rat,
    #[serde(serialize_with = "crate::format::ser_rat")]
    pub rhs: Rat,
    pub equal: bool,
}

/// Compares `wh(x)^m` with `H(φ_m(x))` exactly. Requires reduced weights
/// with `gcd(m/q_i) = 1`.
pub fn veronese_check(x: &WPoint) -> Result<VeroneseCheck> {
    let w = x.weights();
    if !w.is_reduced() {
        return Err(Error::HypothesisViolated(format!(
            "weights {w} are not reduced"
        )));
    }
    if !veronese_data(w).is_embedding {
        return Err(Error::HypothesisViolated(format!(
            "m/q_i are not coprime for {w}"
        )));
    }
    let lhs = wheight(x).wh_pow_m;
    let (h, _) = proj_height(&x.veronese());
    let rhs = Rat::from_integer(h);
    Ok(VeroneseCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}
