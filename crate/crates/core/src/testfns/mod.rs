//! Seeded generators for elements of `DE` and the curated witness triples.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use std::sync::Arc;

use crate::antibracket::{Cochain, Distribution, FormId, Operator};
use crate::cohomology::Combination;
use crate::error::Result;
use crate::grassmann::{Homog, PureFun, SuperFun, Truncation};
use crate::symfun::json::ExprJson;
use crate::symfun::{standard_bump_integral, SymExpr};

/// Default radius bounding the `ξ`-part supports.
pub const XI_RADIUS: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityClass {
    /// Body only (`ε = 0`).
    Even,
    /// `ξ`-part only (`ε = 1`).
    Odd,
    Mixed,
}

fn poly(rng: &mut ChaCha8Rng, degree: usize) -> SymExpr {
    SymExpr::poly((0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect())
}

fn xi_part(rng: &mut ChaCha8Rng, degree: usize) -> SymExpr {
    let radius = rng.gen_range(0.8..1.5);
    let center = rng.gen_range(-(XI_RADIUS - radius)..(XI_RADIUS - radius));
    &poly(rng, degree) * &SymExpr::bump(center, radius)
}

fn body_part(rng: &mut ChaCha8Rng, degree: usize) -> SymExpr {
    let p = poly(rng, degree);
    if rng.gen_bool(0.5) {
        let radius = rng.gen_range(1.5..3.0);
        let center = rng.gen_range(-1.0..1.0);
        &p * &SymExpr::bump(center, radius)
    } else {
        p
    }
}

fn element(rng: &mut ChaCha8Rng, class: ParityClass, degree: usize) -> PureFun {
    match class {
        ParityClass::Odd => PureFun::xi(xi_part(rng, degree)),
        ParityClass::Even => PureFun::body(body_part(rng, degree)),
        ParityClass::Mixed => {
            let xi = xi_part(rng, degree);
            PureFun::new(xi, body_part(rng, degree))
        }
    }
}

/// `ξ·(poly × bump) + body`, deterministic in `seed`.
pub fn random_pure(seed: u64, class: ParityClass, degree: usize) -> PureFun {
    assert!(degree <= 6, "degree must be at most 6");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    element(&mut rng, class, degree)
}

pub fn random_de_element(seed: u64, class: ParityClass, degree: usize, trunc: Truncation) -> SuperFun {
    SuperFun::pure(trunc, random_pure(seed, class, degree))
}

/// Equal to `1` on `[c - w, c + w]`, supported in `[c - w - 2, c + w + 2]`.
pub fn plateau(center: f64, half_width: f64) -> SymExpr {
    let v0 = standard_bump_integral();
    let rise = SymExpr::bump(center - half_width - 1.0, 1.0);
    let fall = SymExpr::bump(center + half_width + 1.0, 1.0);
    SymExpr::heaviside_convolve_compact(&(&rise - &fall).scale(1.0 / v0)).expect("compact integrand")
}

/// Linear first-order differential operator with polynomial coefficients.
///
/// Even: `ξa + b ↦ ξ(p₀a + p₁a') + (q₀b + q₁b')`. Odd: `ξa + b ↦ (p₀a + p₁a') + ξ(q₀b + q₁b')`.
#[derive(Clone, Debug)]
pub struct RandomOperator {
    pub parity: u8,
    pub p: [SymExpr; 2],
    pub q: [SymExpr; 2],
}

impl Cochain for RandomOperator {
    fn arity(&self) -> usize {
        1
    }
    fn parity(&self) -> u8 {
        self.parity
    }
    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        let lin = |c: &[SymExpr; 2], u: &SymExpr| &(&c[0] * u) + &(&c[1] * &u.diff(1));
        Ok(match (&args[0], self.parity) {
            (Homog::Xi(a), 0) => PureFun::xi(lin(&self.p, a)),
            (Homog::Body(b), 0) => PureFun::body(lin(&self.q, b)),
            (Homog::Xi(a), _) => PureFun::body(lin(&self.p, a)),
            (Homog::Body(b), _) => PureFun::xi(lin(&self.q, b)),
        })
    }
    fn label(&self) -> String {
        format!("random_op(parity {})", self.parity)
    }
}

/// A seeded 1-cochain: a [`RandomOperator`], plus a pairing with a point mass when even.
pub fn random_cochain1(seed: u64) -> Arc<dyn Cochain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parity = (seed % 2) as u8;
    let op = RandomOperator {
        parity,
        p: [poly(&mut rng, 2), poly(&mut rng, 1)],
        q: [poly(&mut rng, 2), poly(&mut rng, 1)],
    };
    if parity == 1 {
        let w = rng.gen_range(0.5..1.5);
        return Arc::new(Combination { terms: vec![(1.0, Arc::new(op)), (w, Arc::new(Operator::Delta))] });
    }
    let at = rng.gen_range(-1.0..1.0);
    let w = rng.gen_range(0.5..1.5);
    Arc::new(Combination {
        terms: vec![(1.0, Arc::new(op)), (w, Arc::new(Operator::XiPairing(Distribution::delta(at))))],
    })
}

/// A seeded real combination of the forms `m2_i` of one parity.
pub fn random_cochain2(seed: u64) -> Combination {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = Distribution::delta(rng.gen_range(-1.0..1.0));
    let pool: Vec<Arc<dyn Cochain>> = if seed % 2 == 0 {
        vec![
            Arc::new(FormId::M0),
            Arc::new(FormId::M4),
            Arc::new(FormId::M5),
            Arc::new(FormId::M6),
            Arc::new(FormId::M7(m.clone())),
            Arc::new(FormId::M8(m)),
        ]
    } else {
        vec![
            Arc::new(FormId::M1),
            Arc::new(FormId::M2),
            Arc::new(FormId::M3),
            Arc::new(FormId::M9),
            Arc::new(FormId::M10(m.clone())),
            Arc::new(FormId::M11(m)),
        ]
    };
    let mut terms = Vec::new();
    for c in pool {
        if rng.gen_bool(0.6) {
            terms.push((rng.gen_range(-1.0..1.0), c));
        }
    }
    if terms.is_empty() {
        return Combination { terms: vec![(1.0, Arc::new(FormId::M5))] };
    }
    Combination { terms }
}

/// Bump supported exactly in `[lo, hi]`.
pub fn interval_bump(lo: f64, hi: f64) -> SymExpr {
    SymExpr::bump(0.5 * (lo + hi), 0.5 * (hi - lo))
}

pub type Triple = [PureFun; 3];

#[derive(Clone, Debug)]
pub struct TestSet {
    pub seed: u64,
    pub triples: Vec<Triple>,
    /// Tag → index into `triples`.
    pub witnesses: BTreeMap<String, usize>,
}

impl TestSet {
    /// `count` random mixed triples of polynomial degree `degree`.
    pub fn random(seed: u64, count: usize, degree: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples = (0..count)
            .map(|_| {
                [
                    element(&mut rng, ParityClass::Mixed, degree),
                    element(&mut rng, ParityClass::Mixed, degree),
                    element(&mut rng, ParityClass::Mixed, degree),
                ]
            })
            .collect();
        TestSet { seed, triples, witnesses: BTreeMap::new() }
    }

    /// The curated witness triples.
    pub fn witnesses() -> Self {
        let t = witness_triples();
        let witnesses = t.iter().enumerate().map(|(i, (tag, _))| (tag.to_string(), i)).collect();
        TestSet { seed: 0, triples: t.into_iter().map(|(_, tr)| tr).collect(), witnesses }
    }

    /// Witnesses on which every local 2-form in three arguments vanishes.
    pub fn loc_free() -> Self {
        let w = Self::witnesses();
        let keep = ["chain", "chain_reversed"];
        let triples = keep.iter().map(|k| w.tagged(k).expect("witness").clone()).collect();
        TestSet { seed: 0, triples, witnesses: keep.iter().enumerate().map(|(i, k)| (k.to_string(), i)).collect() }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn tagged(&self, tag: &str) -> Option<&Triple> {
        self.witnesses.get(tag).map(|&i| &self.triples[i])
    }

    pub fn extend(mut self, other: TestSet) -> Self {
        let base = self.triples.len();
        self.triples.extend(other.triples);
        for (k, v) in other.witnesses {
            self.witnesses.insert(k, v + base);
        }
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let triples: Vec<Vec<[ExprJson; 2]>> = self
            .triples
            .iter()
            .map(|t| t.iter().map(|f| [ExprJson::from(&f.xi), ExprJson::from(&f.body)]).collect())
            .collect();
        serde_json::json!({ "seed": self.seed, "triples": triples, "witnesses": self.witnesses })
    }
}

fn witness_triples() -> Vec<(&'static str, Triple)> {
    let x = SymExpr::x();
    let b = |c: f64, r: f64| SymExpr::bump(c, r);
    let p = |c: Vec<f64>| SymExpr::poly(c);
    vec![
        (
            "generic",
            [
                PureFun::new(&p(vec![0.4, 1.0, -0.6]) * &b(-0.3, 1.2), p(vec![0.3, -0.8, 0.5, 0.2])),
                PureFun::new(&p(vec![-0.7, 0.2, 0.9]) * &b(0.4, 1.0), p(vec![1.0, 0.4, -0.3])),
                PureFun::new(&p(vec![0.5, -0.5, 0.1, 0.6]) * &b(0.1, 1.4), p(vec![-0.2, 0.6, 0.3, -0.1])),
            ],
        ),
        (
            "generic_damped",
            [
                PureFun::new(&p(vec![1.0, 0.5]) * &b(0.5, 1.3), &p(vec![0.5, 1.0, 0.7]) * &b(0.0, 2.5)),
                PureFun::new(&p(vec![0.2, -1.0, 0.3]) * &b(-0.6, 1.1), &p(vec![-0.4, 0.3]) * &b(0.5, 2.2)),
                PureFun::new(&p(vec![-0.3, 0.8]) * &b(0.0, 1.5), &SymExpr::exp(0.3) * &p(vec![0.2, 0.5])),
            ],
        ),
        (
            // ξ-parts equal to y and to 1 near the origin
            "plateau",
            [
                PureFun::new(&x * &plateau(0.0, 0.5), p(vec![0.0, 0.0, 1.0])),
                PureFun::new(plateau(0.2, 0.4), p(vec![0.5, -1.0])),
                PureFun::new(&p(vec![0.3, 0.4]) * &b(-0.4, 1.2), p(vec![0.1, 0.2, 0.0, 0.4])),
            ],
        ),
        (
            "disjoint",
            [
                PureFun::new(interval_bump(-2.0, -1.0), &p(vec![0.2, 1.0]) * &interval_bump(0.0, 1.0)),
                PureFun::new(interval_bump(0.0, 1.0), &p(vec![1.0, -0.5]) * &interval_bump(3.0, 4.0)),
                PureFun::new(&p(vec![0.5, 1.0]) * &interval_bump(3.0, 4.0), &p(vec![-0.3, 0.1]) * &interval_bump(-2.0, -1.0)),
            ],
        ),
        (
            "odd_only",
            [
                PureFun::xi(&p(vec![0.4, 1.0, -0.6]) * &b(-0.3, 1.2)),
                PureFun::xi(&p(vec![-0.7, 0.2, 0.9]) * &b(0.4, 1.0)),
                PureFun::xi(&p(vec![0.5, -0.5, 0.1, 0.6]) * &b(0.1, 1.4)),
            ],
        ),
        (
            // pairwise overlapping ξ-parts with empty triple intersection
            "chain",
            [
                PureFun::xi(&p(vec![0.6, -0.4, 0.3]) * &interval_bump(-2.0, 0.2)),
                PureFun::xi(&p(vec![-0.2, 0.9, 0.5]) * &interval_bump(-1.0, 1.0)),
                PureFun::xi(&p(vec![0.4, 0.3, -0.7]) * &interval_bump(0.5, 2.5)),
            ],
        ),
        (
            "chain_reversed",
            [
                PureFun::xi(&p(vec![1.0, 0.5]) * &interval_bump(0.4, 2.2)),
                PureFun::xi(&p(vec![0.3, -0.6, 0.2]) * &interval_bump(-0.8, 0.9)),
                PureFun::xi(&p(vec![-0.5, 0.2, 0.8]) * &interval_bump(-2.4, -0.1)),
            ],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::verify::{verify_bridge, verify_nilpotency, ResidualOptions};

    #[test]
    fn random_cochains_satisfy_differential_identities() {
        let tests = TestSet::random(11, 2, 3);
        let opts = ResidualOptions::default();
        for seed in 0..2 {
            let c = random_cochain1(seed);
            assert_eq!(c.parity(), (seed % 2) as u8);
            let r = verify_nilpotency(c, &tests, &opts);
            assert!(r.passed, "{r:?}");
            let m = random_cochain2(seed);
            let r = verify_bridge(&m, &tests, &opts);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn odd_class_has_no_body() {
        let f = random_pure(7, ParityClass::Odd, 3);
        assert!(f.body.is_zero());
        assert!(!f.xi.is_zero());
        let f = random_pure(7, ParityClass::Even, 3);
        assert!(f.xi.is_zero());
    }

    #[test]
    fn deterministic() {
        let a = TestSet::random(42, 5, 3).to_json();
        let b = TestSet::random(42, 5, 3).to_json();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = TestSet::random(43, 5, 3).to_json();
        assert_ne!(a, c);
    }

    #[test]
    fn membership() {
        let set = TestSet::random(1, 20, 6).extend(TestSet::witnesses());
        for t in &set.triples {
            for f in t {
                let s = f.xi.support();
                assert!(s.is_bounded() && s.lo >= -XI_RADIUS - 2.0 && s.hi <= 4.0);
                assert!(f.body.is_smooth() && f.xi.is_smooth());
            }
        }
        let r = TestSet::random(1, 20, 6);
        for t in &r.triples {
            for f in t {
                let s = f.xi.support();
                assert!(s.lo >= -XI_RADIUS && s.hi <= XI_RADIUS);
            }
        }
    }

    #[test]
    fn plateau_shape() {
        let p = plateau(0.0, 0.5);
        assert!((p.eval(0.3) - 1.0).abs() < 1e-14);
        assert!((p.eval(-0.5) - 1.0).abs() < 1e-14);
        assert_eq!(p.eval(2.6), 0.0);
        assert!(p.support().is_bounded());
    }
}
