//! Multilinear cochains on homogeneous pure inputs, and the bilinear forms `m2_0 … m2_11`.

use std::fmt;
use std::str::FromStr;

use super::bracket::bracket_homog;
use super::distribution::Distribution;
use crate::error::{Error, Result};
use crate::grassmann::{Homog, PureFun};
use crate::symfun::{smooth_step_density, SymExpr};

/// A `p`-linear map `DE^p → DE` of definite `ϵ`-parity, given on homogeneous
/// uncolored arguments. Colored and mixed arguments are handled by the callers.
pub trait Cochain: Send + Sync + fmt::Debug {
    fn arity(&self) -> usize;
    /// `ϵ`-parity of the cochain.
    fn parity(&self) -> u8;
    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun>;
    fn label(&self) -> String;
}

/// Multilinear extension to pure (possibly mixed) arguments.
pub fn eval_multilinear(c: &dyn Cochain, args: &[PureFun]) -> Result<PureFun> {
    assert_eq!(args.len(), c.arity());
    let comps: Vec<Vec<Homog>> = args.iter().map(|a| a.components()).collect();
    if comps.iter().any(|v| v.is_empty()) {
        return Ok(PureFun::zero());
    }
    let mut acc = PureFun::zero();
    let mut idx = vec![0usize; args.len()];
    loop {
        let pick: Vec<Homog> = idx.iter().zip(&comps).map(|(&i, v)| v[i].clone()).collect();
        acc = acc.add(&c.eval_homog(&pick)?);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(acc);
            }
            idx[k] += 1;
            if idx[k] < comps[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Identifier of a bilinear form. Forms indexed by a distribution carry it.
#[derive(Clone, Debug)]
pub enum FormId {
    M0,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7(Distribution),
    M8(Distribution),
    M9,
    M10(Distribution),
    M11(Distribution),
}

impl FormId {
    pub fn index(&self) -> usize {
        match self {
            FormId::M0 => 0,
            FormId::M1 => 1,
            FormId::M2 => 2,
            FormId::M3 => 3,
            FormId::M4 => 4,
            FormId::M5 => 5,
            FormId::M6 => 6,
            FormId::M7(_) => 7,
            FormId::M8(_) => 8,
            FormId::M9 => 9,
            FormId::M10(_) => 10,
            FormId::M11(_) => 11,
        }
    }

    /// `m2_i`, with `M` used for the distribution-indexed forms.
    pub fn from_index(i: usize, m: &Distribution) -> Option<FormId> {
        Some(match i {
            0 => FormId::M0,
            1 => FormId::M1,
            2 => FormId::M2,
            3 => FormId::M3,
            4 => FormId::M4,
            5 => FormId::M5,
            6 => FormId::M6,
            7 => FormId::M7(m.clone()),
            8 => FormId::M8(m.clone()),
            9 => FormId::M9,
            10 => FormId::M10(m.clone()),
            11 => FormId::M11(m.clone()),
            _ => return None,
        })
    }

    pub fn name(&self) -> String {
        format!("m2_{}", self.index())
    }

    pub fn form_parity(&self) -> u8 {
        match self {
            FormId::M1 | FormId::M2 | FormId::M3 | FormId::M9 | FormId::M10(_) | FormId::M11(_) => 1,
            _ => 0,
        }
    }
}

/// Parses `"m2_3"`; distribution-indexed forms default to `δ₀`.
impl FromStr for FormId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix("m2_")
            .and_then(|n| n.parse::<usize>().ok())
            .and_then(|i| FormId::from_index(i, &Distribution::delta(0.0)))
            .ok_or_else(|| Error::Config(format!("unknown form identifier {s:?}")))
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn d(a: &SymExpr, k: u32) -> SymExpr {
    a.diff(k)
}

fn x() -> SymExpr {
    SymExpr::x()
}

fn konst(v: f64) -> SymExpr {
    SymExpr::constant(v)
}

/// `b a''' - a b'''`
fn third_order_flux(a: &SymExpr, b: &SymExpr) -> SymExpr {
    &(b * &d(a, 3)) - &(a * &d(b, 3))
}

/// `x (a'' b' - a' b'')`
fn local_m2(a: &SymExpr, b: &SymExpr) -> SymExpr {
    SymExpr::product(vec![x(), &(&d(a, 2) * &d(b, 1)) - &(&d(a, 1) * &d(b, 2))])
}

/// `(-x/2 ∂_x)^j u`
fn euler_power(u: &SymExpr, j: u32) -> SymExpr {
    (0..j).fold(u.clone(), |acc, _| SymExpr::product(vec![x(), d(&acc, 1)]).scale(-0.5))
}

/// The `j`-th resolvent piece of `M_{c₄}`: `m2_4` with `Δf` replaced by `(-N_z/2)^j Δf`.
pub fn resolvent_piece(j: u32, f: &Homog, g: &Homog) -> PureFun {
    let half = |u: &SymExpr| u.scale(0.5);
    match (f, g) {
        (Homog::Xi(a), Homog::Xi(b)) => {
            // ξ[-P(a')(b/2 - x b'/2) + (a/2 - x a'/2) P(b')]
            let eb = &half(b) - &half(&(&x() * &d(b, 1)));
            let ea = &half(a) - &half(&(&x() * &d(a, 1)));
            let t = &(&ea * &euler_power(&d(b, 1), j)) - &(&euler_power(&d(a, 1), j) * &eb);
            PureFun::xi(t)
        }
        (Homog::Xi(a), Homog::Body(b)) => {
            let eb = b - &half(&(&x() * &d(b, 1)));
            PureFun::body(-(&euler_power(&d(a, 1), j) * &eb))
        }
        (Homog::Body(a), Homog::Xi(b)) => {
            let ea = a - &half(&(&x() * &d(a, 1)));
            PureFun::body(&ea * &euler_power(&d(b, 1), j))
        }
        (Homog::Body(_), Homog::Body(_)) => PureFun::zero(),
    }
}

/// `M(H[F - θ̃' ∫F] - x(a''b' - a'b''))`.
fn m10_value(m: &Distribution, a: &SymExpr, b: &SymExpr) -> Result<f64> {
    let flux = third_order_flux(a, b);
    let k = flux.integrate()?;
    let balanced = &flux - &smooth_step_density().scale(k);
    let h = SymExpr::heaviside_convolve_compact(&balanced)?;
    m.apply(&(&h - &local_m2(a, b)))
}

/// `m(f, g)` for homogeneous pure `f, g`.
pub fn eval_form(id: &FormId, f: &Homog, g: &Homog) -> Result<PureFun> {
    use Homog::{Body as B, Xi as X};
    Ok(match (id, f, g) {
        (FormId::M0, _, _) => bracket_homog(f, g),
        (FormId::M1, X(a), X(b)) => PureFun::body(konst((b * &d(a, 3)).integrate()?)),
        (FormId::M2, X(a), X(b)) => {
            let h = SymExpr::heaviside_convolve(&third_order_flux(a, b))?;
            PureFun::body(&h - &local_m2(a, b))
        }
        (FormId::M3, B(a), B(b)) => PureFun::body(a * b),
        (FormId::M4, _, _) => resolvent_piece(0, f, g),
        (FormId::M5, X(a), B(b)) => PureFun::body(konst((&d(a, 1) * &d(b, 1)).integrate()?)),
        (FormId::M5, B(a), X(b)) => PureFun::body(konst(-(&d(a, 1) * &d(b, 1)).integrate()?)),
        (FormId::M6, X(a), B(b)) => {
            PureFun::body(SymExpr::heaviside_convolve(&(&d(a, 1) * &d(b, 1)))?)
        }
        (FormId::M6, B(a), X(b)) => {
            PureFun::body(-SymExpr::heaviside_convolve(&(&d(a, 1) * &d(b, 1)))?)
        }
        // d1 of `f ↦ M(∫dξ ξ f)`, i.e. `-M(∫dξ ξ [f, g])`
        (FormId::M7(m), X(a), B(b)) => PureFun::body(konst(m.apply(&(a * &d(b, 1)))?)),
        (FormId::M7(m), B(a), X(b)) => PureFun::body(konst(m.apply(&-(&d(a, 1) * b))?)),
        (FormId::M8(m), X(a), B(b)) => {
            PureFun::body(konst(m.mu_tilde()?.apply(&(&d(a, 1) * &d(b, 1)))?))
        }
        (FormId::M8(m), B(a), X(b)) => {
            PureFun::body(konst(-m.mu_tilde()?.apply(&(&d(a, 1) * &d(b, 1)))?))
        }
        (FormId::M9, X(a), X(b)) => PureFun::body(&(&d(a, 2) * b) - &(a * &d(b, 2))),
        (FormId::M10(m), X(a), X(b)) => PureFun::body(konst(m10_value(m, a, b)?)),
        (FormId::M11(m), X(a), X(b)) => {
            PureFun::body(konst(m.mu_tilde()?.apply(&third_order_flux(a, b))?))
        }
        _ => PureFun::zero(),
    })
}

impl Cochain for FormId {
    fn arity(&self) -> usize {
        2
    }

    fn parity(&self) -> u8 {
        self.form_parity()
    }

    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        eval_form(self, &args[0], &args[1])
    }

    fn label(&self) -> String {
        self.name()
    }
}

/// `M^{(j)}`, the `j`-th term of the resolvent expansion of `M_{c₄}` (`M^{(0)} = m2_4`).
#[derive(Clone, Copy, Debug)]
pub struct ResolventPiece(pub u32);

impl Cochain for ResolventPiece {
    fn arity(&self) -> usize {
        2
    }
    fn parity(&self) -> u8 {
        0
    }
    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        Ok(resolvent_piece(self.0, &args[0], &args[1]))
    }
    fn label(&self) -> String {
        format!("resolvent_{}", self.0)
    }
}

/// The associative product `fg` treated as an odd 2-form; not a cocycle.
#[derive(Clone, Copy, Debug)]
pub struct GradedProduct;

impl Cochain for GradedProduct {
    fn arity(&self) -> usize {
        2
    }
    fn parity(&self) -> u8 {
        1
    }
    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        Ok(match (&args[0], &args[1]) {
            (Homog::Xi(_), Homog::Xi(_)) => PureFun::zero(),
            (Homog::Xi(a), Homog::Body(b)) | (Homog::Body(a), Homog::Xi(b)) => PureFun::xi(a * b),
            (Homog::Body(a), Homog::Body(b)) => PureFun::body(a * b),
        })
    }
    fn label(&self) -> String {
        "graded_product".into()
    }
}

/// `cocycle_eval` on pure arguments (split into homogeneous components).
pub fn cocycle_eval(id: &FormId, f: &PureFun, g: &PureFun) -> Result<PureFun> {
    eval_multilinear(id, &[f.clone(), g.clone()])
}
