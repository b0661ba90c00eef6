//! Jacobiator of a cocycle with a coboundary: `J(m, d_1 M) = J(m2_0, U)`.

use std::sync::Arc;

use super::verify::{max_residual, ResidualOptions};
use super::{jacobiator, sign, Differential};
use crate::antibracket::{eval_multilinear, Cochain};
use crate::error::Result;
use crate::grassmann::{Homog, PureFun};
use crate::report::Check;
use crate::testfns::TestSet;

/// `U(f,g) = (-1)^{ϵ(m)ϵ(M)} M(m(f,g)) - m(M(f), g) + (-1)^{ϵ(f)ϵ(g)} m(M(g), f)`.
#[derive(Clone, Debug)]
pub struct LemmaForm {
    pub m: Arc<dyn Cochain>,
    pub op: Arc<dyn Cochain>,
}

impl Cochain for LemmaForm {
    fn arity(&self) -> usize {
        2
    }

    fn parity(&self) -> u8 {
        (self.m.parity() + self.op.parity()) % 2
    }

    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        let (f, g) = (&args[0], &args[1]);
        let m = self.m.as_ref();
        let op = self.op.as_ref();
        let mfg = m.eval_homog(args)?;
        let t1 = eval_multilinear(op, &[mfg])?.scale(sign(m.parity() as u32 * op.parity() as u32));
        let opf = op.eval_homog(std::slice::from_ref(f))?;
        let opg = op.eval_homog(std::slice::from_ref(g))?;
        let t2 = eval_multilinear(m, &[opf, g.to_pure()])?;
        let t3 = eval_multilinear(m, &[opg, f.to_pure()])?.scale(sign(f.shifted() as u32 * g.shifted() as u32));
        Ok(t1.add(&t2.scale(-1.0)).add(&t3))
    }

    fn label(&self) -> String {
        format!("U({}, {})", self.m.label(), self.op.label())
    }
}

/// `max |J(m, d_1 M) - J(m2_0, U)|` over `tests`.
pub fn check_lemma_coboundary(
    m: Arc<dyn Cochain>,
    op: Arc<dyn Cochain>,
    tests: &TestSet,
    opts: &ResidualOptions,
) -> Check {
    let dm = Differential(op.clone());
    let u = LemmaForm { m: m.clone(), op: op.clone() };
    let m0 = crate::antibracket::FormId::M0;
    let name = format!("J({}, d1 {}) - J(m2_0, U)", m.label(), op.label());
    match max_residual(tests, opts, |f, g, h| {
        let l = jacobiator(m.as_ref(), &dm, f, g, h)?;
        let r = jacobiator(&m0, &u, f, g, h)?;
        Ok(l.add(&r.scale(-1.0)))
    }) {
        Ok(v) => Check::zero(name, v, opts.tol),
        Err(e) => Check::failed(name, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antibracket::{Distribution, FormId, Operator};

    #[test]
    fn coboundary_against_cocycles() {
        let tests = TestSet::random(9, 2, 3).extend(TestSet::witnesses());
        let opts = ResidualOptions::default();
        for i in [2usize, 4, 6] {
            let m: Arc<dyn Cochain> = Arc::new(FormId::from_index(i, &Distribution::zero()).unwrap());
            for op in [Operator::Delta, Operator::XiPairing(Distribution::delta(0.2))] {
                let c = check_lemma_coboundary(m.clone(), Arc::new(op), &tests, &opts);
                assert!(c.passed, "{c:?}");
            }
        }
    }
}
