//! Local weighted heights `ζ(x, v)` for principal divisors, hyperplane
//! sections and subschemes, and their sums over the places of Q.
//!
//! Every local value has the form `(1/m) · log R` for a positive rational
//! `R`, which is what [`LocalHeight`] stores; sums over places multiply the
//! `R`s, so identities are checked exactly on the rational side.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{abs_p, ln_abs, LogExpr, Place, Rat};
use crate::error::{Error, Result};
use crate::gcdops::Subscheme;
use crate::heights::{max_abs_pow, point_places};
use crate::points::WPoint;
use crate::wpoly::WPolynomial;

/// Denominator of the metric: `max_i |x_i|_v^{q_i}` as printed for the
/// standard metric (`Paper`), or the degree-`m` variant
/// `max_i |x_i|_v^{m/q_i}` (`Alt`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Paper,
    Alt,
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper" => Ok(Metric::Paper),
            "alt" => Ok(Metric::Alt),
            other => Err(Error::Parse(format!("unknown metric `{other}`"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Paper => "paper",
            Metric::Alt => "alt",
        })
    }
}

/// `(1/m) · log ratio`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalHeight {
    pub m: u64,
    pub ratio: Rat,
}

impl LocalHeight {
    pub fn value(&self) -> f64 {
        ln_abs(&self.ratio) / self.m as f64
    }

    /// Exact expansion `Σ c_p log p`.
    pub fn to_log(&self) -> LogExpr {
        LogExpr::ln_rat(&self.ratio).scale(&BigRational::new(BigInt::one(), BigInt::from(self.m)))
    }
}

/// The divisor a local height is taken against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorSpec {
    Hyperplane(WPolynomial),
    Principal(WPolynomial),
    SubschemeMin(Subscheme),
}

fn abs_v(r: &Rat, place: &Place) -> Rat {
    match place {
        Place::Archimedean => r.abs(),
        Place::Finite(p) => abs_p(r, p),
    }
}

fn metric_exponents(x: &WPoint, metric: Metric) -> Vec<u64> {
    let w = x.weights();
    match metric {
        Metric::Paper => w.q().to_vec(),
        Metric::Alt => w.q().iter().map(|q| w.m() / q).collect(),
    }
}

/// `max_i |x_i|_v^{e_i}` with the metric's exponents.
pub fn metric_denominator(x: &WPoint, place: &Place, metric: Metric) -> Rat {
    max_abs_pow(x.coords(), &metric_exponents(x, metric), place)
}

fn check_poly(x: &WPoint, f: &WPolynomial) -> Result<()> {
    if f.weights() != x.weights() {
        return Err(Error::WeightMismatch);
    }
    f.homogeneous_degree()?;
    Ok(())
}

fn zeta_from_value(x: &WPoint, value: &Rat, place: &Place, metric: Metric) -> LocalHeight {
    let den = metric_denominator(x, place, metric);
    LocalHeight {
        m: x.weights().m(),
        ratio: den / abs_v(value, place),
    }
}

/// `ζ_{div f}(x, v) = -(1/m) log(|f(x)|_v / max_i |x_i|_v^{e_i})`.
pub fn zeta_principal(
    x: &WPoint,
    f: &WPolynomial,
    place: &Place,
    metric: Metric,
) -> Result<LocalHeight> {
    check_poly(x, f)?;
    let v = f.eval(x.coords())?;
    if v.is_zero() {
        return Err(Error::OnSupport);
    }
    Ok(zeta_from_value(x, &v, place, metric))
}

/// Local height against the hyperplane section `ℓ = 0`; same formula as
/// [`zeta_principal`] with `ℓ` as the section.
pub fn zeta_hyperplane(
    x: &WPoint,
    l: &WPolynomial,
    place: &Place,
    metric: Metric,
) -> Result<LocalHeight> {
    zeta_principal(x, l, place, metric)
}

/// `min_j ζ_{div f_j}(x, v)`; generators vanishing at `x` contribute `+∞`.
pub fn zeta_subscheme(
    x: &WPoint,
    y: &Subscheme,
    place: &Place,
    metric: Metric,
) -> Result<LocalHeight> {
    let values = subscheme_values(x, y)?;
    Ok(min_over(x, &values, place, metric))
}

fn subscheme_values(x: &WPoint, y: &Subscheme) -> Result<Vec<Rat>> {
    for g in y.generators() {
        check_poly(x, g)?;
    }
    let values = y.values(x.coords())?;
    if values.iter().all(Zero::is_zero) {
        return Err(Error::PointOnSubscheme);
    }
    Ok(values)
}

fn min_over(x: &WPoint, values: &[Rat], place: &Place, metric: Metric) -> LocalHeight {
    values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| zeta_from_value(x, v, place, metric))
        .min_by(|a, b| a.ratio.cmp(&b.ratio))
        .expect("some generator is nonzero")
}

/// Local heights summed over all places. Places dividing a coordinate
/// (and the archimedean place) are listed individually; every other place
/// has metric denominator 1, so together they contribute
/// `(1/m) log R` with `R` the rational gcd of the section values'
/// prime-to-coordinate parts, which needs no factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalHeight {
    pub per_place: Vec<(Place, LocalHeight)>,
    pub other_places: LocalHeight,
    pub total: LocalHeight,
}

impl GlobalHeight {
    pub fn value(&self) -> f64 {
        self.total.value()
    }
}

fn strip(n: &BigInt, primes: &BTreeSet<BigInt>) -> BigInt {
    let mut n = n.abs();
    for p in primes {
        while !n.is_zero() && (&n % p).is_zero() {
            n /= p;
        }
    }
    n
}

pub fn global_sum(x: &WPoint, spec: &DivisorSpec, metric: Metric) -> Result<GlobalHeight> {
    let values = match spec {
        DivisorSpec::Hyperplane(f) | DivisorSpec::Principal(f) => {
            check_poly(x, f)?;
            let v = f.eval(x.coords())?;
            if v.is_zero() {
                return Err(Error::OnSupport);
            }
            vec![v]
        }
        DivisorSpec::SubschemeMin(y) => subscheme_values(x, y)?,
    };
    let places = point_places(x.coords());
    let coord_primes: BTreeSet<BigInt> = places.iter().filter_map(|p| p.prime().cloned()).collect();

    let mut per_place = Vec::new();
    let mut ratio = Rat::one();
    for place in places {
        let z = min_over(x, &values, &place, metric);
        ratio *= &z.ratio;
        per_place.push((place, z));
    }
    // min_j ord_p v_j at the remaining primes: gcd of numerators over lcm
    // of denominators
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for v in values.iter().filter(|v| !v.is_zero()) {
        num = num.gcd(&strip(v.numer(), &coord_primes));
        den = den.lcm(&strip(v.denom(), &coord_primes));
    }
    let other = Rat::new(num, den);
    ratio *= &other;
    let m = x.weights().m();
    Ok(GlobalHeight {
        per_place,
        other_places: LocalHeight { m, ratio: other },
        total: LocalHeight { m, ratio },
    })
}

/// `(1/m) Σ_v log max_i |x_i|_v^{e_i}`: what `Σ_v ζ_{div f}` reduces to by
/// the product formula.
pub fn denominator_sum(x: &WPoint, metric: Metric) -> LocalHeight {
    let ratio = point_places(x.coords())
        .iter()
        .map(|p| metric_denominator(x, p, metric))
        .fold(Rat::one(), |a, b| a * b);
    LocalHeight {
        m: x.weights().m(),
        ratio,
    }
}
