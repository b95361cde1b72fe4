//! Rational maps `N/D` and their ramification over a concrete field.
//!
//! Indices are computed over the chosen field plus infinity. A value `b`
//! counts as a branch point when `N - bD` (or `D` for `b = inf`) has a
//! repeated root over the algebraic closure, detected by a nontrivial
//! `gcd(P, P')`, or when infinity lies over `b` with index above one.

use serde::Serialize;

use super::{FieldPoly, OracleError, ProjPoint};
use crate::families::FamilySpec;
use crate::field::{FieldCtx, FieldElem};
use crate::gf2poly::BinPoly;

/// `numerator / denominator` over GF(2), with its reduced form cached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalMap {
    numerator: BinPoly,
    denominator: BinPoly,
    reduced_numerator: BinPoly,
    reduced_denominator: BinPoly,
}

impl RationalMap {
    pub fn new(numerator: BinPoly, denominator: BinPoly) -> Result<Self, OracleError> {
        if denominator.is_zero() {
            return Err(OracleError::ZeroDenominator);
        }
        let g = numerator.gcd(&denominator).expect("denominator is nonzero");
        let reduced_numerator = numerator.exact_div(&g).ok().flatten().expect("gcd divides");
        let reduced_denominator = denominator.exact_div(&g).ok().flatten().expect("gcd divides");
        Ok(Self {
            numerator,
            denominator,
            reduced_numerator,
            reduced_denominator,
        })
    }

    /// `N_s / H_s`.
    pub fn for_family(s: &FamilySpec) -> Self {
        Self::new(s.n_poly(), s.h_poly()).expect("H is nonzero")
    }

    pub fn numerator(&self) -> &BinPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &BinPoly {
        &self.denominator
    }

    pub fn reduced_numerator(&self) -> &BinPoly {
        &self.reduced_numerator
    }

    pub fn reduced_denominator(&self) -> &BinPoly {
        &self.reduced_denominator
    }

    /// Degree of the reduced map.
    pub fn degree(&self) -> usize {
        let d = |p: &BinPoly| p.degree().unwrap_or(0);
        d(&self.reduced_numerator).max(d(&self.reduced_denominator))
    }

    /// The reduced map with coefficients lifted into `ctx`.
    pub fn over<'a>(&self, ctx: &'a FieldCtx) -> Result<FieldRational<'a>, OracleError> {
        FieldRational::new(
            FieldPoly::from_binpoly(ctx, &self.reduced_numerator),
            FieldPoly::from_binpoly(ctx, &self.reduced_denominator),
        )
    }
}

/// A nonconstant rational map with coprime numerator and denominator over a field.
#[derive(Debug, Clone)]
pub struct FieldRational<'a> {
    num: FieldPoly<'a>,
    den: FieldPoly<'a>,
}

impl<'a> FieldRational<'a> {
    pub fn new(num: FieldPoly<'a>, den: FieldPoly<'a>) -> Result<Self, OracleError> {
        if den.is_zero() {
            return Err(OracleError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let map = Self { num, den };
        if map.degree() == 0 {
            return Err(OracleError::ConstantMap);
        }
        Ok(map)
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.num.ctx()
    }

    pub fn numerator(&self) -> &FieldPoly<'a> {
        &self.num
    }

    pub fn denominator(&self) -> &FieldPoly<'a> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub(crate) fn eval_raw(&self, x: Option<u64>) -> Option<u64> {
        let ctx = self.ctx();
        match x {
            Some(x) => {
                let d = self.den.eval(x);
                let inv = ctx.inv_raw(d)?;
                Some(ctx.mul_raw(self.num.eval(x), inv))
            }
            None => {
                let (dn, dd) = (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0));
                match dn.cmp(&dd) {
                    std::cmp::Ordering::Greater => None,
                    std::cmp::Ordering::Less => Some(0),
                    std::cmp::Ordering::Equal => {
                        Some(ctx.mul_raw(self.num.lead(), ctx.inv_raw(self.den.lead())?))
                    }
                }
            }
        }
    }

    pub fn eval(&self, x: ProjPoint<'a>) -> ProjPoint<'a> {
        ProjPoint::from_raw(self.ctx(), self.eval_raw(x.raw()))
    }

    /// `N - bD`, or `D` for `b = inf`.
    fn fiber_poly(&self, b: Option<u64>) -> FieldPoly<'a> {
        match b {
            Some(b) => self.num.add(&self.den.scale(b)),
            None => self.den.clone(),
        }
    }

    /// The map `x -> G(1/x)`.
    fn inverted(&self) -> Self {
        let d = self.degree();
        Self {
            num: self.num.reverse(d),
            den: self.den.reverse(d),
        }
    }

    pub(crate) fn index_raw(&self, a: Option<u64>) -> usize {
        match a {
            Some(a) => self.fiber_poly(self.eval_raw(Some(a))).root_multiplicity(a),
            None => self.inverted().index_raw(Some(0)),
        }
    }

    pub fn ramification_index(&self, a: ProjPoint<'a>) -> usize {
        self.index_raw(a.raw())
    }

    /// Points of the field (and infinity) over `b`, with their indices.
    pub fn fiber(&self, b: ProjPoint<'a>) -> Vec<(ProjPoint<'a>, usize)> {
        let ctx = self.ctx();
        let b = b.raw();
        let p = self.fiber_poly(b);
        let mut out: Vec<(ProjPoint<'a>, usize)> = (0..ctx.size())
            .filter(|&x| p.eval(x) == 0)
            .map(|x| (ProjPoint::Finite(ctx.elem(x)), p.root_multiplicity(x)))
            .collect();
        if self.eval_raw(None) == b {
            out.push((ProjPoint::Infinity, self.index_raw(None)));
        }
        out
    }

    pub fn is_branch_point(&self, b: ProjPoint<'a>) -> bool {
        let b = b.raw();
        let p = self.fiber_poly(b);
        let repeated = p.gcd(&p.derivative()).degree().unwrap_or(0) > 0;
        repeated || (self.eval_raw(None) == b && self.index_raw(None) > 1)
    }

    /// Branch points among the field and infinity, ascending with infinity last.
    pub fn branch_points(&self) -> Vec<ProjPoint<'a>> {
        let ctx = self.ctx();
        ctx.elements()
            .map(ProjPoint::Finite)
            .chain(std::iter::once(ProjPoint::Infinity))
            .filter(|&b| self.is_branch_point(b))
            .collect()
    }

    /// `N'(a) D(a) + N(a) D'(a)`.
    pub fn critical_point_residual(&self, a: FieldElem<'a>) -> FieldElem<'a> {
        let ctx = self.ctx();
        let x = a.bits();
        let v = ctx.mul_raw(self.num.derivative().eval(x), self.den.eval(x))
            ^ ctx.mul_raw(self.num.eval(x), self.den.derivative().eval(x));
        ctx.elem(v)
    }
}

pub fn ramification_index<'a>(
    g: &RationalMap,
    a: ProjPoint<'a>,
    ctx: &'a FieldCtx,
) -> Result<usize, OracleError> {
    Ok(g.over(ctx)?.ramification_index(a))
}

pub fn branch_points<'a>(s: &FamilySpec, ctx: &'a FieldCtx) -> Result<Vec<ProjPoint<'a>>, OracleError> {
    Ok(RationalMap::for_family(s).over(ctx)?.branch_points())
}

pub fn critical_point_residual<'a>(
    g: &RationalMap,
    a: FieldElem<'a>,
    ctx: &'a FieldCtx,
) -> Result<FieldElem<'a>, OracleError> {
    ctx.check_elem(a)?;
    Ok(g.over(ctx)?.critical_point_residual(a))
}

/// One ramification point over a branch point.
#[derive(Debug, Clone, Serialize)]
pub struct RamificationEntry<'a> {
    pub point: ProjPoint<'a>,
    pub index: usize,
    pub image: ProjPoint<'a>,
}

/// Every point over every branch point of `g`.
pub fn ramification_report<'a>(g: &FieldRational<'a>) -> Vec<RamificationEntry<'a>> {
    g.branch_points()
        .into_iter()
        .flat_map(|b| {
            g.fiber(b)
                .into_iter()
                .map(move |(point, index)| RamificationEntry {
                    point,
                    index,
                    image: b,
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Class;

    #[test]
    fn cube_map() {
        let ctx = FieldCtx::tower(2).unwrap();
        let g = RationalMap::new(BinPoly::monomial(3), BinPoly::one()).unwrap();
        assert_eq!(
            ramification_index(&g, ProjPoint::Finite(ctx.zero()), &ctx).unwrap(),
            3
        );
        assert_eq!(ramification_index(&g, ProjPoint::Infinity, &ctx).unwrap(), 3);
        assert_eq!(
            ramification_index(&g, ProjPoint::Finite(ctx.one()), &ctx).unwrap(),
            1
        );
    }

    #[test]
    fn squaring_is_flagged_everywhere() {
        let ctx = FieldCtx::new(3, None).unwrap();
        let g = RationalMap::new(BinPoly::monomial(2), BinPoly::one())
            .unwrap()
            .over(&ctx)
            .unwrap();
        assert_eq!(g.branch_points().len(), ctx.size() as usize + 1);
        // yet every point of the finite field has exactly one preimage
        for b in ctx.elements() {
            assert_eq!(g.fiber(ProjPoint::Finite(b)).len(), 1);
        }
    }

    #[test]
    fn family_ramification_at_omega() {
        let ctx = FieldCtx::tower(2).unwrap();
        let w = ctx.omega().unwrap();
        let s = FamilySpec::new(Class::A, 3, 1).unwrap();
        let g = RationalMap::for_family(&s);
        assert_eq!(g.degree(), 11);
        assert_eq!(ramification_index(&g, ProjPoint::Finite(w), &ctx).unwrap(), 11);
        assert!(critical_point_residual(&g, w, &ctx).unwrap().is_zero());
        let gf = g.over(&ctx).unwrap();
        let w2 = w.square();
        assert_eq!(
            gf.branch_points(),
            vec![ProjPoint::Finite(w), ProjPoint::Finite(w2)]
        );
        let report = ramification_report(&gf);
        assert_eq!(report.len(), 2);
        assert!(report.iter().all(|e| e.index == 11), "{report:?}");
        // some unramified point has a nonzero residual
        let found = ctx.elements().any(|a| {
            gf.ramification_index(ProjPoint::Finite(a)) == 1 && !gf.critical_point_residual(a).is_zero()
        });
        assert!(found);
    }

    #[test]
    fn fiber_indices_sum_to_degree() {
        let ctx = FieldCtx::tower(2).unwrap();
        for s in FamilySpec::grid(3) {
            let gf = RationalMap::for_family(&s).over(&ctx).unwrap();
            for b in gf.branch_points() {
                let total: usize = gf.fiber(b).iter().map(|e| e.1).sum();
                assert_eq!(total, gf.degree(), "{s} over {b}");
            }
        }
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalMap::new(BinPoly::one(), BinPoly::zero()),
            Err(OracleError::ZeroDenominator)
        );
    }
}
