//! Linear change of Grassmann generators bringing `c_4 = ħ² Σ c_{4,k} ε_{klm} θ_l θ_m`
//! to the form `ħ² c'θ'_1 θ'_2`.

use serde::Serialize;

use super::params::DeformParams;
use crate::error::{Error, Result};
use crate::grassmann::{DeformRing, Monomial, Truncation};

/// `θ'_k = Σ_l a_{k,l}(ħ) θ_l` together with the inverse substitution.
#[derive(Clone, Debug, Serialize)]
pub struct BasisChange {
    /// Rows `a_{k,·}`; entries are even, `θ`-free series in `ħ`.
    pub matrix: Vec<Vec<DeformRing>>,
    /// `θ_l = Σ_k b_{l,k} θ'_k`.
    pub inverse: Vec<Vec<DeformRing>>,
}

impl BasisChange {
    pub fn identity(trunc: Truncation) -> Self {
        let n = trunc.thetas as usize;
        let m: Vec<Vec<DeformRing>> = (0..n)
            .map(|k| (0..n).map(|l| DeformRing::scalar(trunc, if k == l { 1.0 } else { 0.0 })).collect())
            .collect();
        BasisChange { matrix: m.clone(), inverse: m }
    }

    /// Images of `θ_l` written in the primed generators.
    fn images(&self, trunc: Truncation) -> Vec<DeformRing> {
        self.inverse
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(DeformRing::zero(trunc), |acc, (k, b)| &acc + &(b * &DeformRing::theta(trunc, k + 1)))
            })
            .collect()
    }

    /// Rewrites every parameter in the primed generators.
    pub fn apply(&self, p: &DeformParams) -> DeformParams {
        let images = self.images(p.trunc);
        p.map(|r| r.substitute(&images))
    }

    /// A permutation `θ'_k = θ_{σ(k)}`.
    pub fn permutation(trunc: Truncation, sigma: &[usize]) -> Self {
        let n = sigma.len();
        let e = |v: bool| DeformRing::scalar(trunc, if v { 1.0 } else { 0.0 });
        let matrix: Vec<Vec<DeformRing>> = (0..n).map(|k| (0..n).map(|l| e(sigma[k] == l)).collect()).collect();
        let inverse: Vec<Vec<DeformRing>> = (0..n).map(|l| (0..n).map(|k| e(sigma[k] == l)).collect()).collect();
        BasisChange { matrix, inverse }
    }

    /// `θ'_k = Σ_l a_{k,l} θ_l` with constant real entries; `None` if singular.
    pub fn constant(trunc: Truncation, a: [[f64; 3]; 3]) -> Option<Self> {
        let inv = invert3(a)?;
        let lift = |m: [[f64; 3]; 3]| -> Vec<Vec<DeformRing>> {
            m.iter().map(|row| row.iter().map(|&v| DeformRing::scalar(trunc, v)).collect()).collect()
        };
        Some(BasisChange { matrix: lift(a), inverse: lift(inv) })
    }
}

fn invert3(a: [[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if det.abs() < 1e-12 {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            *v = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
        }
    }
    Some(inv)
}

/// `r / ħ^q` for `r` divisible by `ħ^q`.
fn shift_down(r: &DeformRing, q: u32) -> DeformRing {
    let mut out = DeformRing::zero(r.truncation());
    for (m, c) in r.terms() {
        out.add_term(Monomial { hbar: m.hbar - q, thetas: m.thetas }, *c);
    }
    out
}

/// Inverse of a `θ`-free series with nonzero constant term.
fn series_inverse(r: &DeformRing) -> Result<DeformRing> {
    let c0 = r.constant_term();
    Ok(r.scale(1.0 / c0).inverse_unit()?.scale(1.0 / c0))
}

/// Returns the rewritten parameters and the change of generators.
pub fn normalize_c4(p: &DeformParams) -> Result<(DeformParams, BasisChange)> {
    let tr = p.trunc;
    if tr.thetas != 3 {
        return Err(Error::NotNormalizable(format!("needs exactly 3 generators, got {}", tr.thetas)));
    }
    let c4 = p.ci(4);
    if c4.is_zero() {
        return Err(Error::NotNormalizable("c4 is zero".into()));
    }
    if let Some((m, _)) = c4.terms().find(|(m, _)| m.theta_degree() != 2 || m.hbar < 2) {
        return Err(Error::NotNormalizable(format!("term {m} is not of the form hbar^p theta_l theta_m, p >= 2")));
    }
    // w = (θ₂θ₃, θ₃θ₁, θ₁θ₂) coefficients, as θ-free series
    let coeff_of = |l: usize, m: usize| -> DeformRing {
        let (mono, s) = Monomial::new(0, &[l, m]).expect("distinct generators");
        let mut out = DeformRing::zero(tr);
        for (t, c) in c4.terms() {
            if t.thetas == mono.thetas {
                out.add_term(Monomial { hbar: t.hbar, thetas: 0 }, s * c);
            }
        }
        out
    };
    let w = [coeff_of(2, 3), coeff_of(3, 1), coeff_of(1, 2)];
    let q = c4.lowest_hbar().expect("nonzero");
    let v: Vec<DeformRing> = w.iter().map(|r| shift_down(r, q)).collect();
    // pivot: a component with nonzero constant term, preferring θ₁θ₂
    let pivot = [2usize, 0, 1].into_iter().find(|&k| v[k].constant_term() != 0.0).expect("lowest order present");
    // cyclic relabeling so the pivot sits in the θ₁θ₂ slot
    let sigma: [usize; 3] = match pivot {
        2 => [0, 1, 2],
        0 => [1, 2, 0],
        _ => [2, 0, 1],
    };
    let vp = [v[sigma[0]].clone(), v[sigma[1]].clone(), v[sigma[2]].clone()];
    let inv = series_inverse(&vp[2])?;
    let r1 = -&(&vp[0] * &inv);
    let r2 = -&(&vp[1] * &inv);
    let one = DeformRing::scalar(tr, 1.0);
    let zero = DeformRing::zero(tr);
    // in relabeled generators φ_k = θ_{σ(k)}: φ'_1 = φ_1 + r1 φ_3, φ'_2 = φ_2 + r2 φ_3, φ'_3 = φ_3
    let a_phi = [[one.clone(), zero.clone(), r1.clone()], [zero.clone(), one.clone(), r2.clone()], [zero.clone(), zero.clone(), one.clone()]];
    let b_phi = [[one.clone(), zero.clone(), -&r1], [zero.clone(), one.clone(), -&r2], [zero.clone(), zero.clone(), one.clone()]];
    let n = 3;
    let mut matrix = vec![vec![zero.clone(); n]; n];
    let mut inverse = vec![vec![zero.clone(); n]; n];
    for k in 0..n {
        for j in 0..n {
            // θ'_k = Σ_j a_phi[k][j] θ_{σ(j)}
            matrix[k][sigma[j]] = a_phi[k][j].clone();
            // θ_{σ(j)} = Σ_k b_phi[j][k] θ'_k
            inverse[sigma[j]][k] = b_phi[j][k].clone();
        }
    }
    let change = BasisChange { matrix, inverse };
    let out = change.apply(p);
    let expected = &DeformRing::term(tr, q, &[1, 2], 1.0) * &vp[2];
    let residual = &out.c[3] - &expected;
    if !residual.is_negligible(1e-10) {
        return Err(Error::NotNormalizable(format!("substitution left {residual}")));
    }
    Ok((out, change))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr() -> Truncation {
        Truncation::new(4, 3)
    }

    fn only_t12(r: &DeformRing) -> bool {
        r.terms().all(|(m, _)| m.thetas == 0b011 && m.hbar >= 2)
    }

    #[test]
    fn identity_case() {
        let p = DeformParams::zero(tr()).with_c(4, DeformRing::term(tr(), 2, &[1, 2], 1.0));
        let (q, b) = normalize_c4(&p).unwrap();
        assert_eq!(q.c[3], p.c[3]);
        for k in 0..3 {
            for l in 0..3 {
                assert_eq!(b.matrix[k][l].constant_term(), if k == l { 1.0 } else { 0.0 });
                assert!(b.matrix[k][l].terms().all(|(m, _)| m.hbar == 0));
            }
        }
    }

    #[test]
    fn permutation_case() {
        let p = DeformParams::zero(tr())
            .with_c(4, DeformRing::term(tr(), 2, &[2, 3], 1.0))
            .with_c(1, DeformRing::term(tr(), 1, &[1], 1.0));
        let (q, b) = normalize_c4(&p).unwrap();
        assert!(only_t12(&q.c[3]));
        assert_eq!(q.c[3], DeformRing::term(tr(), 2, &[1, 2], 1.0));
        // a permutation matrix
        for row in &b.matrix {
            assert_eq!(row.iter().filter(|e| e.constant_term() == 1.0).count(), 1);
        }
        // θ₁ is now θ'_3
        assert_eq!(q.c[0], DeformRing::term(tr(), 1, &[3], 1.0));
    }

    #[test]
    fn general_case_expands_correctly() {
        let c4 = &(&DeformRing::term(tr(), 2, &[2, 3], 1.0) + &DeformRing::term(tr(), 2, &[3, 1], 1.0))
            + &(&DeformRing::term(tr(), 2, &[1, 2], 1.0) + &DeformRing::term(tr(), 3, &[1, 2], 0.5));
        let p = DeformParams::zero(tr()).with_c(4, c4.clone());
        let (q, b) = normalize_c4(&p).unwrap();
        assert!(only_t12(&q.c[3]));
        // θ'_1θ'_2 written back in θ reproduces c4
        let primes: Vec<DeformRing> = b
            .matrix
            .iter()
            .map(|row| row.iter().enumerate().fold(DeformRing::zero(tr()), |a, (l, e)| &a + &(e * &DeformRing::theta(tr(), l + 1))))
            .collect();
        let mut back = DeformRing::zero(tr());
        for (m, c) in q.c[3].terms() {
            back = &back + &(&(&DeformRing::term(tr(), m.hbar, &[], *c) * &primes[0]) * &primes[1]);
        }
        assert!((&back - &c4).is_negligible(1e-12), "{back} vs {c4}");
    }

    #[test]
    fn rejects_bad_shapes() {
        let p = DeformParams::zero(tr()).with_c(4, DeformRing::hbar(tr()));
        assert!(matches!(normalize_c4(&p), Err(Error::NotNormalizable(_))));
        let p = DeformParams::zero(Truncation::new(4, 2)).with_c(4, DeformRing::term(Truncation::new(4, 2), 2, &[1, 2], 1.0));
        assert!(matches!(normalize_c4(&p), Err(Error::NotNormalizable(_))));
    }

    #[test]
    fn constant_change_round_trip() {
        let b = BasisChange::constant(tr(), [[1.0, 2.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]]).unwrap();
        let p = DeformParams::zero(tr()).with_c(2, DeformRing::term(tr(), 1, &[1], 1.0));
        let back = BasisChange { matrix: b.inverse.clone(), inverse: b.matrix.clone() };
        let q = back.apply(&b.apply(&p));
        assert!((&q.c[1] - &p.c[1]).is_negligible(1e-12));
        assert!(BasisChange::constant(tr(), [[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).is_none());
    }
}
