//! Weighted projective points over Q.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{parse_rat, rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::gcdops::wgcd;
use crate::weights::{veronese_data, WeightMap, Weights};

/// A point `[x_0 : … : x_n]` of weighted projective space with rational
/// coordinates. The stored tuple is one representative of the orbit
/// `λ ⋆ x = (λ^{q_0} x_0, …, λ^{q_n} x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WPoint {
    coords: Vec<Rat>,
    weights: Weights,
}

/// Outcome of [`WPoint::normalize_with_data`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub point: WPoint,
    /// Scalar that cleared denominators (lcm of coordinate denominators).
    pub clearing: BigInt,
    /// Weighted gcd of the integral tuple that was divided out.
    pub wgcd: BigInt,
}

impl WPoint {
    pub fn new(coords: Vec<Rat>, weights: Weights) -> Result<Self> {
        if coords.len() != weights.len() {
            return Err(Error::ArityMismatch {
                expected: weights.len(),
                got: coords.len(),
            });
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(WPoint { coords, weights })
    }

    pub fn from_ints(coords: &[i64], weights: &Weights) -> Result<Self> {
        WPoint::new(
            coords
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
            weights.clone(),
        )
    }

    /// Parses `[a0:a1:...:an]` with integer or `p/q` entries.
    pub fn parse(s: &str, weights: &Weights) -> Result<Self> {
        WPoint::new(parse_coords(s)?, weights.clone())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coords.iter().map(|c| c.numer().clone()).collect())
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }

    /// `λ ⋆ x`.
    pub fn scale(&self, lambda: &Rat) -> Result<WPoint> {
        if lambda.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(WPoint {
            coords: self.scaled_coords(lambda),
            weights: self.weights.clone(),
        })
    }

    fn scaled_coords(&self, lambda: &Rat) -> Vec<Rat> {
        self.coords
            .iter()
            .zip(self.weights.q())
            .map(|(c, &q)| c * num_traits::pow(lambda.clone(), q as usize))
            .collect()
    }

    /// The unique integral representative with weighted gcd 1, up to the
    /// sign canon: the first nonzero coordinate of odd weight is positive.
    pub fn normalize(&self) -> WPoint {
        self.normalize_with_data().point
    }

    pub fn normalize_with_data(&self) -> Normalization {
        let clearing = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let cleared = self.scaled_coords(&Rat::from_integer(clearing.clone()));
        let ints: Vec<BigInt> = cleared.iter().map(|c| c.to_integer()).collect();
        let g = wgcd(&ints, &self.weights).expect("point is not all zero");
        let mut out: Vec<BigInt> = ints
            .iter()
            .zip(self.weights.q())
            .map(|(x, &q)| x / num_traits::pow(g.clone(), q as usize))
            .collect();
        let flip = out
            .iter()
            .zip(self.weights.q())
            .find(|(x, q)| !x.is_zero() && *q % 2 == 1)
            .map(|(x, _)| x.is_negative())
            .unwrap_or(false);
        if flip {
            for (x, q) in out.iter_mut().zip(self.weights.q()) {
                if q % 2 == 1 {
                    *x = -x.clone();
                }
            }
        }
        Normalization {
            point: WPoint {
                coords: out.into_iter().map(Rat::from_integer).collect(),
                weights: self.weights.clone(),
            },
            clearing,
            wgcd: g,
        }
    }

    /// True when the stored tuple is already its own normalization.
    pub fn is_normalized(&self) -> bool {
        self.is_integral() && self.normalize().coords == self.coords
    }

    /// Orbit equality: some nonzero rational `λ` has `y = λ ⋆ x`.
    pub fn equals(&self, other: &WPoint) -> Result<bool> {
        if self.weights != other.weights {
            return Err(Error::WeightMismatch);
        }
        let pattern = |p: &WPoint| p.coords.iter().map(Zero::is_zero).collect::<Vec<_>>();
        if pattern(self) != pattern(other) {
            return Ok(false);
        }
        let pivot = self
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero point");
        let ratio = &other.coords[pivot] / &self.coords[pivot];
        let q = self.weights.get(pivot);
        Ok(rational_roots(&ratio, q)
            .iter()
            .any(|lambda| self.scaled_coords(lambda) == other.coords))
    }

    /// `[x_0^{m/q_0} : … : x_n^{m/q_n}]` in ordinary projective space.
    pub fn veronese(&self) -> ProjPoint {
        let v = veronese_data(&self.weights);
        let coords: Vec<Rat> = self
            .coords
            .iter()
            .zip(&v.exps)
            .map(|(c, &e)| num_traits::pow(c.clone(), e as usize))
            .collect();
        ProjPoint::from_rationals(&coords).expect("nonzero point")
    }

    /// Image under a coordinate-power map between weight tuples.
    pub fn map(&self, map: &WeightMap) -> Result<WPoint> {
        if map.source != self.weights {
            return Err(Error::WeightMismatch);
        }
        WPoint::new(
            self.coords
                .iter()
                .zip(&map.coord_exponents)
                .map(|(c, &e)| num_traits::pow(c.clone(), e as usize))
                .collect(),
            map.target.clone(),
        )
    }
}

impl fmt::Display for WPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            format_coords(self.coords.iter().map(rat_to_string))
        )
    }
}

impl Serialize for WPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn format_coords(parts: impl Iterator<Item = String>) -> String {
    format!("[{}]", parts.collect::<Vec<_>>().join(":"))
}

/// Parses `[a0:...:an]` (also `(a0,...,an)`) into rationals.
pub fn parse_coords(s: &str) -> Result<Vec<Rat>> {
    let t = s.trim();
    let (inner, sep) = if let Some(r) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        (r, ':')
    } else if let Some(r) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        (r, ',')
    } else {
        return Err(Error::Parse(format!(
            "point must look like [a0:...:an]: `{s}`"
        )));
    };
    inner.split(sep).map(parse_rat).collect()
}

/// All rational `λ` with `λ^k = r`, for nonzero `r`.
pub fn rational_roots(r: &Rat, k: u64) -> Vec<Rat> {
    if r.is_zero() || k == 0 {
        return Vec::new();
    }
    if k % 2 == 0 && r.is_negative() {
        return Vec::new();
    }
    let root_of = |n: &BigInt| -> Option<BigInt> {
        let mag = n.abs();
        let root = mag.nth_root(k as u32);
        (num_traits::pow(root.clone(), k as usize) == mag).then_some(root)
    };
    let (Some(a), Some(b)) = (root_of(r.numer()), root_of(r.denom())) else {
        return Vec::new();
    };
    let base = Rat::new(a, b);
    if k % 2 == 0 {
        vec![base.clone(), -base]
    } else if r.is_negative() {
        vec![-base]
    } else {
        vec![base]
    }
}

/// A point of ordinary projective space over Q, stored as coprime integers
/// with the first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn from_rationals(coords: &[Rat]) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::AllZero);
        }
        let l = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let first_negative = ints
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_negative())
            .unwrap_or(false);
        let g = if first_negative { -g } else { g };
        Ok(ProjPoint {
            coords: ints.into_iter().map(|x| x / &g).collect(),
        })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            format_coords(self.coords.iter().map(|c| c.to_string()))
        )
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{reduce_and_well_form, well_form};
    use proptest::prelude::*;

    fn w(q: &[u64]) -> Weights {
        Weights::new(q.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn pt(s: &str, weights: &[u64]) -> WPoint {
        WPoint::parse(s, &w(weights)).unwrap()
    }

    /// Brute-force orbit equality: try every λ = a/b with small a, b.
    fn equals_by_search(x: &WPoint, y: &WPoint, bound: i64) -> bool {
        for a in -bound..=bound {
            for b in 1..=bound {
                if a == 0 {
                    continue;
                }
                if x.scale(&q(a, b)).unwrap().coords == y.coords {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn scale_examples() {
        let x = pt("[1:1]", &[2, 3]);
        assert_eq!(x.scale(&q(2, 1)).unwrap(), pt("[4:8]", &[2, 3]));
        assert_eq!(x.scale(&q(1, 1)).unwrap(), x);
        assert_eq!(pt("[4:8]", &[2, 3]).scale(&q(1, 2)).unwrap(), x);
        assert_eq!(x.scale(&q(0, 1)), Err(Error::ZeroScalar));
    }

    #[test]
    fn normalize_examples() {
        let n = pt("[16:64]", &[2, 3]).normalize_with_data();
        assert_eq!(n.point, pt("[1:1]", &[2, 3]));
        assert_eq!(n.wgcd, BigInt::from(4));
        assert_eq!(pt("[1:1]", &[2, 3]).normalize(), pt("[1:1]", &[2, 3]));
        assert_eq!(pt("[1/4:1/8]", &[2, 3]).normalize(), pt("[1:1]", &[2, 3]));
    }

    #[test]
    fn sign_canon() {
        // -1 acts as (+, -) on weights (2,3)
        assert_eq!(pt("[1:-1]", &[2, 3]).normalize(), pt("[1:1]", &[2, 3]));
        // all-even weights: -1 acts trivially
        assert_eq!(pt("[-1:3]", &[2, 4]).normalize(), pt("[-1:3]", &[2, 4]));
        assert_eq!(
            pt("[-2:3:5]", &[1, 1, 2]).normalize(),
            pt("[2:-3:5]", &[1, 1, 2])
        );
    }

    #[test]
    fn equals_examples() {
        let a = pt("[1:1]", &[2, 3]);
        assert!(a.equals(&pt("[16:64]", &[2, 3])).unwrap());
        // λ = -1 sends (1,1) to (1,-1)
        assert!(a.equals(&pt("[1:-1]", &[2, 3])).unwrap());
        assert!(equals_by_search(&a, &pt("[1:-1]", &[2, 3]), 2));
        assert!(!pt("[1:0]", &[2, 3]).equals(&pt("[0:1]", &[2, 3])).unwrap());
        assert_eq!(a.equals(&pt("[1:1]", &[1, 1])), Err(Error::WeightMismatch));
        // no rational cube root of 2
        assert!(!pt("[0:1]", &[2, 3]).equals(&pt("[0:2]", &[2, 3])).unwrap());
    }

    #[test]
    fn equals_agrees_with_search_on_small_grid() {
        let weights = [1u64, 2];
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for c in -4i64..=4 {
                    for d in -4i64..=4 {
                        if (a == 0 && b == 0) || (c == 0 && d == 0) {
                            continue;
                        }
                        let x = WPoint::from_ints(&[a, b], &w(&weights)).unwrap();
                        let y = WPoint::from_ints(&[c, d], &w(&weights)).unwrap();
                        assert_eq!(
                            x.equals(&y).unwrap(),
                            equals_by_search(&x, &y, 4),
                            "{x} {y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn veronese_examples() {
        assert_eq!(pt("[3:4]", &[2, 3]).veronese().to_string(), "[27:16]");
        assert_eq!(pt("[1:1:1]", &[1, 2, 3]).veronese().to_string(), "[1:1:1]");
        assert_eq!(
            pt("[2:1:1:1]", &[1, 2, 3, 5]).veronese().coords()[0],
            num_traits::pow(BigInt::from(2), 30)
        );
    }

    #[test]
    fn proj_point_canon() {
        let p = ProjPoint::from_rationals(&[q(-2, 3), q(4, 1), q(0, 1)]).unwrap();
        assert_eq!(p.to_string(), "[1:-6:0]");
        assert_eq!(ProjPoint::from_rationals(&[q(0, 1)]), Err(Error::AllZero));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            WPoint::parse("[1:2", &w(&[1, 1])),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            WPoint::parse("[1:2:3]", &w(&[1, 1])),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 3
            })
        ));
        assert_eq!(WPoint::parse("[0:0]", &w(&[1, 1])), Err(Error::AllZero));
    }

    #[test]
    fn weight_maps_preserve_equality() {
        let src = w(&[2, 4, 6, 10]);
        let map = reduce_and_well_form(&src);
        let x = WPoint::parse("[3:-2:5:7]", &src).unwrap();
        let y = x.scale(&q(-3, 2)).unwrap();
        assert!(x.map(&map).unwrap().equals(&y.map(&map).unwrap()).unwrap());
        let m2 = well_form(&w(&[2, 2, 3])).unwrap();
        let x = WPoint::parse("[1:2:3]", &m2.source).unwrap();
        let y = x.scale(&q(5, 7)).unwrap();
        assert!(x.map(&m2).unwrap().equals(&y.map(&m2).unwrap()).unwrap());
    }

    fn arb_weights() -> impl Strategy<Value = Weights> {
        prop::collection::vec(1u64..=6, 2..=4).prop_map(|q| Weights::new(q).unwrap())
    }

    fn arb_point() -> impl Strategy<Value = WPoint> {
        arb_weights().prop_flat_map(|weights| {
            let n = weights.len();
            prop::collection::vec((-60i64..=60, 1i64..=60), n)
                .prop_filter("not all zero", |v| v.iter().any(|(a, _)| *a != 0))
                .prop_map(move |v| {
                    WPoint::new(
                        v.into_iter().map(|(a, b)| q(a, b)).collect(),
                        weights.clone(),
                    )
                    .unwrap()
                })
        })
    }

    fn arb_lambda() -> impl Strategy<Value = Rat> {
        (-12i64..=12, 1i64..=12)
            .prop_filter("nonzero", |(a, _)| *a != 0)
            .prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #[test]
        fn scaled_points_are_equal(x in arb_point(), lambda in arb_lambda()) {
            prop_assert!(x.equals(&x.scale(&lambda).unwrap()).unwrap());
        }

        #[test]
        fn normalize_is_idempotent_and_in_orbit(x in arb_point(), lambda in arb_lambda()) {
            let n = x.normalize();
            prop_assert!(n.is_integral());
            prop_assert_eq!(wgcd(&n.integer_coords().unwrap(), n.weights()).unwrap(), BigInt::one());
            prop_assert_eq!(n.normalize(), n.clone());
            prop_assert!(x.equals(&n).unwrap());
            // orbit representatives share one normalization
            prop_assert_eq!(x.scale(&lambda).unwrap().normalize(), n);
        }

        #[test]
        fn equal_points_have_equal_veronese_images(x in arb_point(), lambda in arb_lambda()) {
            let y = x.scale(&lambda).unwrap();
            prop_assert_eq!(x.veronese(), y.veronese());
        }

        #[test]
        fn veronese_separates_binary_points_off_the_axes(
            a in 1i64..40, b in 1i64..40, c in 1i64..40, d in 1i64..40, s in any::<bool>(),
        ) {
            let weights = w(&[2, 3]);
            let x = WPoint::from_ints(&[a, b], &weights).unwrap();
            let y = WPoint::from_ints(&[c, if s { -d } else { d }], &weights).unwrap();
            prop_assert_eq!(x.equals(&y).unwrap(), x.veronese() == y.veronese());
        }
    }

    #[test]
    fn veronese_is_not_injective_for_general_weights() {
        let x = pt("[1:1:1:1]", &[1, 2, 3, 5]);
        let y = pt("[1:1:-1:1]", &[1, 2, 3, 5]);
        assert_eq!(x.veronese(), y.veronese());
        assert!(!x.equals(&y).unwrap());
    }
}
