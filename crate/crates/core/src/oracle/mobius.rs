//! Degree-one maps `x -> (ax + b)/(cx + d)` and their action on the unit circle.

use std::collections::HashSet;

use super::{FieldPoly, FieldRational, OracleError, ProjPoint, ENUMERATION_CHECK_CAP};
use crate::field::{FieldCtx, FieldElem, FieldError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeOneMap<'a> {
    pub a: FieldElem<'a>,
    pub b: FieldElem<'a>,
    pub c: FieldElem<'a>,
    pub d: FieldElem<'a>,
}

impl<'a> DegreeOneMap<'a> {
    pub fn new(
        a: FieldElem<'a>,
        b: FieldElem<'a>,
        c: FieldElem<'a>,
        d: FieldElem<'a>,
    ) -> Result<Self, OracleError> {
        let ctx = a.ctx();
        for x in [b, c, d] {
            ctx.check_elem(x)?;
        }
        let map = Self { a, b, c, d };
        if map.determinant().is_zero() {
            return Err(OracleError::Degenerate);
        }
        Ok(map)
    }

    pub fn identity(ctx: &'a FieldCtx) -> Self {
        Self {
            a: ctx.one(),
            b: ctx.zero(),
            c: ctx.zero(),
            d: ctx.one(),
        }
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.a.ctx()
    }

    /// `ad + bc`.
    pub fn determinant(&self) -> FieldElem<'a> {
        self.a * self.d + self.b * self.c
    }

    pub fn apply(&self, x: ProjPoint<'a>) -> ProjPoint<'a> {
        match x {
            ProjPoint::Finite(x) => {
                let den = self.c * x + self.d;
                match den.inv() {
                    Ok(inv) => ProjPoint::Finite((self.a * x + self.b) * inv),
                    Err(_) => ProjPoint::Infinity,
                }
            }
            ProjPoint::Infinity => match self.c.inv() {
                Ok(inv) => ProjPoint::Finite(self.a * inv),
                Err(_) => ProjPoint::Infinity,
            },
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: self.b,
            c: self.c,
            d: self.a,
        }
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn as_rational(&self) -> FieldRational<'a> {
        let ctx = self.ctx();
        FieldRational::new(
            FieldPoly::new(ctx, vec![self.b.bits(), self.a.bits()]),
            FieldPoly::new(ctx, vec![self.d.bits(), self.c.bits()]),
        )
        .expect("nondegenerate map has degree one")
    }
}

fn on_mu(x: FieldElem<'_>) -> Result<bool, FieldError> {
    Ok(!x.is_zero() && x.on_unit_circle()?)
}

/// Closed-form test: `x -> bx` or `b/x` with `b` on the unit circle, or
/// `(x - g^q b)/(gx - b)` with `b` on and `g` off the unit circle, up to scaling.
pub fn bijects_mu_by_criteria(r: &DegreeOneMap<'_>) -> Result<bool, OracleError> {
    let DegreeOneMap { a, b, c, d } = *r;
    if c.is_zero() {
        return Ok(b.is_zero() && on_mu(a.try_div(d)?)?);
    }
    if a.is_zero() {
        return Ok(d.is_zero() && on_mu(b.try_div(c)?)?);
    }
    let beta = d.try_div(a)?;
    let gamma = c.try_div(a)?;
    Ok(on_mu(beta)? && !on_mu(gamma)? && b.try_div(a)? == gamma.frobenius_q()? * beta)
}

pub fn bijects_mu_by_enumeration(r: &DegreeOneMap<'_>) -> Result<bool, OracleError> {
    let mu = r.ctx().unit_circle()?;
    let mut seen = HashSet::with_capacity(mu.len());
    for x in mu {
        match r.apply(ProjPoint::Finite(x)) {
            ProjPoint::Finite(y) if on_mu(y)? && seen.insert(y) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Closed-form test: `(dx - b d^q)/(x - b)` up to scaling, with `b` on
/// the unit circle and `d` outside the subfield.
pub fn mu_to_p1_by_criteria(l: &DegreeOneMap<'_>) -> Result<bool, OracleError> {
    let DegreeOneMap { a, b, c, d } = *l;
    if c.is_zero() {
        return Ok(false);
    }
    let delta = a.try_div(c)?;
    let beta = d.try_div(c)?;
    Ok(on_mu(beta)? && !delta.in_base_field()? && b.try_div(c)? == beta * delta.frobenius_q()?)
}

pub fn mu_to_p1_by_enumeration(l: &DegreeOneMap<'_>) -> Result<bool, OracleError> {
    let mu = l.ctx().unit_circle()?;
    let mut seen = HashSet::with_capacity(mu.len());
    for x in mu {
        let y = l.apply(ProjPoint::Finite(x));
        let in_line = match y {
            ProjPoint::Finite(v) => v.in_base_field()?,
            ProjPoint::Infinity => true,
        };
        if !in_line || !seen.insert(y) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn small_circle(ctx: &FieldCtx) -> Result<bool, OracleError> {
    Ok(ctx.q()? < ENUMERATION_CHECK_CAP)
}

/// Whether `r` permutes the unit circle; cross-checked by enumeration on small fields.
pub fn deg1_bijects_mu(r: &DegreeOneMap<'_>) -> Result<bool, OracleError> {
    if r.determinant().is_zero() {
        return Err(OracleError::Degenerate);
    }
    let verdict = bijects_mu_by_criteria(r)?;
    if small_circle(r.ctx())? && bijects_mu_by_enumeration(r)? != verdict {
        return Err(OracleError::CriterionDisagreement(format!(
            "unit-circle bijection for {r:?}"
        )));
    }
    Ok(verdict)
}

/// Whether `l` maps the unit circle onto the projective line over the subfield.
pub fn deg1_mu_to_p1(l: &DegreeOneMap<'_>) -> Result<bool, OracleError> {
    if l.determinant().is_zero() {
        return Err(OracleError::Degenerate);
    }
    let verdict = mu_to_p1_by_criteria(l)?;
    if small_circle(l.ctx())? && mu_to_p1_by_enumeration(l)? != verdict {
        return Err(OracleError::CriterionDisagreement(format!(
            "unit circle to line for {l:?}"
        )));
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_maps() {
        let ctx = FieldCtx::tower(2).unwrap();
        let mu = ctx.unit_circle().unwrap();
        let beta = mu.iter().copied().find(|x| !x.is_one()).unwrap();
        let gamma = ctx
            .elements()
            .find(|x| !x.is_zero() && !on_mu(*x).unwrap())
            .unwrap();
        let (zero, one) = (ctx.zero(), ctx.one());

        let scale = DegreeOneMap::new(beta, zero, zero, one).unwrap();
        assert!(deg1_bijects_mu(&scale).unwrap());
        let off = DegreeOneMap::new(gamma, zero, zero, one).unwrap();
        assert!(!deg1_bijects_mu(&off).unwrap());
        let recip = DegreeOneMap::new(zero, beta, one, zero).unwrap();
        assert!(deg1_bijects_mu(&recip).unwrap());
        let twisted = DegreeOneMap::new(one, gamma.frobenius_q().unwrap() * beta, gamma, beta).unwrap();
        assert!(deg1_bijects_mu(&twisted).unwrap());

        assert!(!deg1_mu_to_p1(&DegreeOneMap::identity(&ctx)).unwrap());
        let delta = ctx.elements().find(|x| !x.in_base_field().unwrap()).unwrap();
        let l = DegreeOneMap::new(delta, beta * delta.frobenius_q().unwrap(), one, beta).unwrap();
        assert!(deg1_mu_to_p1(&l).unwrap());
        // a subfield delta makes the shape degenerate: ad + bc = beta (delta + delta^q) = 0
        let l = DegreeOneMap {
            a: one,
            b: beta,
            c: one,
            d: beta,
        };
        assert_eq!(deg1_mu_to_p1(&l), Err(OracleError::Degenerate));
    }

    #[test]
    fn degenerate_rejected() {
        let ctx = FieldCtx::tower(2).unwrap();
        let one = ctx.one();
        assert_eq!(
            DegreeOneMap::new(one, one, one, one),
            Err(OracleError::Degenerate)
        );
    }

    #[test]
    fn no_critical_points() {
        let ctx = FieldCtx::tower(2).unwrap();
        let w = ctx.omega().unwrap();
        let r = DegreeOneMap::new(w, ctx.one(), ctx.one(), ctx.zero()).unwrap();
        let g = r.as_rational();
        assert!(g.branch_points().is_empty());
        for x in ctx.elements() {
            assert_eq!(g.ramification_index(ProjPoint::Finite(x)), 1);
            assert_eq!(g.critical_point_residual(x), r.determinant());
        }
        assert_eq!(g.ramification_index(ProjPoint::Infinity), 1);
        let id = r.compose(&r.inverse());
        for x in ctx.elements() {
            assert_eq!(id.apply(ProjPoint::Finite(x)), ProjPoint::Finite(x));
        }
    }
}
