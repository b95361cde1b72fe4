//! Linear-equivalence certificates.
//!
//! For even `m`, `f = L1 o x^e o L2` with `L(x) = a x + b x^q` and
//! `e = t + r (q - 1)`. For odd `m`, `f(x) = d1 u^t + d2 v^t` where
//! `(u, v) = L2(x)` lies in `GF(q)^2`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::FamilySpec;
use crate::field::{FieldCtx, FieldElem, FieldError};
use crate::oracle::DEFAULT_BRUTE_CAP;
use crate::theory::r_closed_form;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("{which} is not invertible (a^(q+1) = b^(q+1))")]
    NotInvertible { which: &'static str },
    #[error("a component of L2 leaves the subfield at {x}")]
    ComponentLeavesBase { x: String },
    #[error("L2 is not injective: nonzero {x} maps to (0, 0)")]
    NotInjective { x: String },
    #[error("composition differs from f at {x}")]
    Mismatch { x: String },
    #[error("certificate kind needs m {expected}, got m = {m}")]
    WrongParity { m: u32, expected: &'static str },
    #[error("bivariate certificates need r = 0, got r = {0}")]
    NonzeroR(u64),
    #[error("GF(2^{n}) exceeds the exhaustive cap 2^{cap}")]
    FieldTooLarge { n: u32, cap: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `t + r (2^m - 1)`.
pub fn monomial_exponent(s: &FamilySpec, m: u32) -> u128 {
    s.t() as u128 + r_closed_form(s) as u128 * ((1u128 << m) - 1)
}

/// `L1(x) = a1 x + b1 x^q`, `L2(x) = a2 x + b2 x^q`, exponent `e` unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonomialCert<'a> {
    pub a1: FieldElem<'a>,
    pub b1: FieldElem<'a>,
    pub a2: FieldElem<'a>,
    pub b2: FieldElem<'a>,
    #[serde(serialize_with = "as_string")]
    pub e: u128,
}

/// `L2(x) = (c1 x^q + c2 x, c3 x^q + c4 x)`, `L1(u, v) = d1 u + d2 v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BivariateCert<'a> {
    pub c1: FieldElem<'a>,
    pub c2: FieldElem<'a>,
    pub c3: FieldElem<'a>,
    pub c4: FieldElem<'a>,
    pub d1: FieldElem<'a>,
    pub d2: FieldElem<'a>,
    #[serde(serialize_with = "as_string")]
    pub e: u128,
}

fn as_string<S: serde::Serializer>(v: &u128, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(v)
}

/// Coefficient pools for certificate searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pool {
    /// The four elements of GF(4), in bit order.
    F4,
    /// Every field element; monomial searches solve for `L1`.
    Full,
    Custom(Vec<u64>),
}

impl Pool {
    fn elements(&self, ctx: &FieldCtx) -> Result<Vec<u64>, CertError> {
        match self {
            Pool::F4 => {
                let w = ctx.omega()?.bits();
                let mut v = vec![0, 1, w, ctx.square_raw(w)];
                v.sort_unstable();
                Ok(v)
            }
            Pool::Full => Ok((0..ctx.size()).collect()),
            Pool::Custom(v) => {
                for &b in v {
                    ctx.try_elem(b)?;
                }
                Ok(v.clone())
            }
        }
    }
}

fn check_setting(ctx: &FieldCtx, even: bool) -> Result<(u32, u64), CertError> {
    let m = ctx.subfield_m().ok_or(FieldError::NoSubfield)?;
    if ctx.degree() > DEFAULT_BRUTE_CAP {
        return Err(CertError::FieldTooLarge {
            n: ctx.degree(),
            cap: DEFAULT_BRUTE_CAP,
        });
    }
    if (m % 2 == 0) != even {
        let expected = if even { "even" } else { "odd" };
        return Err(CertError::WrongParity { m, expected });
    }
    Ok((m, ctx.q()?))
}

fn f_values(ctx: &FieldCtx, s: &FamilySpec, m: u32) -> Vec<u64> {
    let exps = s.f_exponents(m);
    (0..ctx.size())
        .map(|x| exps.iter().fold(0, |a, &e| a ^ ctx.pow_raw(x, e)))
        .collect()
}

// a x + b x^q
fn linearized(ctx: &FieldCtx, a: u64, b: u64, x: u64, xq: u64) -> u64 {
    ctx.mul_raw(a, x) ^ ctx.mul_raw(b, xq)
}

fn invertible(ctx: &FieldCtx, a: u64, b: u64, q: u64) -> bool {
    ctx.pow_raw(a, q as u128 + 1) != ctx.pow_raw(b, q as u128 + 1)
}

fn frob_table(ctx: &FieldCtx) -> Result<Vec<u64>, CertError> {
    (0..ctx.size()).map(|x| Ok(ctx.frobenius_q_raw(x)?)).collect()
}

fn monomial_mismatch(
    ctx: &FieldCtx,
    (a1, b1, a2, b2): (u64, u64, u64, u64),
    e: u128,
    f: &[u64],
    frob: &[u64],
) -> Option<u64> {
    (0..ctx.size()).find(|&x| {
        let y = ctx.pow_raw(linearized(ctx, a2, b2, x, frob[x as usize]), e);
        linearized(ctx, a1, b1, y, frob[y as usize]) != f[x as usize]
    })
}

pub fn verify_monomial_cert(c: &MonomialCert<'_>, s: &FamilySpec) -> Result<(), CertError> {
    let ctx = c.a1.ctx();
    for x in [c.b1, c.a2, c.b2] {
        ctx.check_elem(x)?;
    }
    let (m, q) = check_setting(ctx, true)?;
    if !invertible(ctx, c.a1.bits(), c.b1.bits(), q) {
        return Err(CertError::NotInvertible { which: "L1" });
    }
    if !invertible(ctx, c.a2.bits(), c.b2.bits(), q) {
        return Err(CertError::NotInvertible { which: "L2" });
    }
    let f = f_values(ctx, s, m);
    let frob = frob_table(ctx)?;
    let coeffs = (c.a1.bits(), c.b1.bits(), c.a2.bits(), c.b2.bits());
    match monomial_mismatch(ctx, coeffs, c.e, &f, &frob) {
        Some(x) => Err(CertError::Mismatch {
            x: ctx.elem(x).to_string(),
        }),
        None => Ok(()),
    }
}

/// Solve `a y + b y^q = v` at two points with independent `(y, y^q)` rows.
fn solve_l1(ctx: &FieldCtx, ys: &[u64], f: &[u64], frob: &[u64]) -> Option<(u64, u64)> {
    let x1 = (1..ctx.size()).find(|&x| ys[x as usize] != 0)?;
    let (y1, v1) = (ys[x1 as usize], f[x1 as usize]);
    let y1q = frob[y1 as usize];
    for x2 in x1 + 1..ctx.size() {
        let (y2, v2) = (ys[x2 as usize], f[x2 as usize]);
        let y2q = frob[y2 as usize];
        let det = ctx.mul_raw(y1, y2q) ^ ctx.mul_raw(y2, y1q);
        if let Some(inv) = ctx.inv_raw(det) {
            let a = ctx.mul_raw(ctx.mul_raw(v1, y2q) ^ ctx.mul_raw(v2, y1q), inv);
            let b = ctx.mul_raw(ctx.mul_raw(y1, v2) ^ ctx.mul_raw(y2, v1), inv);
            return Some((a, b));
        }
    }
    None
}

/// First certificate in scan order with exponent `t + r (q - 1)`.
///
/// F4 and custom pools scan `(a1, b1, a2, b2)` lexicographically by pool
/// position. The full pool scans `(a2, b2)` and solves for `L1`.
pub fn search_monomial_cert<'a>(
    ctx: &'a FieldCtx,
    s: &FamilySpec,
    pool: &Pool,
) -> Result<Option<MonomialCert<'a>>, CertError> {
    let (m, q) = check_setting(ctx, true)?;
    let e = monomial_exponent(s, m);
    let f = f_values(ctx, s, m);
    let frob = frob_table(ctx)?;
    let elems = pool.elements(ctx)?;
    let k = elems.len() as u64;
    let make = |(a1, b1, a2, b2): (u64, u64, u64, u64)| MonomialCert {
        a1: ctx.elem(a1),
        b1: ctx.elem(b1),
        a2: ctx.elem(a2),
        b2: ctx.elem(b2),
        e,
    };
    if *pool == Pool::Full {
        let found = (0..k * k).into_par_iter().find_map_first(|idx| {
            let (a2, b2) = (elems[(idx / k) as usize], elems[(idx % k) as usize]);
            if !invertible(ctx, a2, b2, q) {
                return None;
            }
            let ys: Vec<u64> = (0..ctx.size())
                .map(|x| ctx.pow_raw(linearized(ctx, a2, b2, x, frob[x as usize]), e))
                .collect();
            let (a1, b1) = solve_l1(ctx, &ys, &f, &frob)?;
            let c = (a1, b1, a2, b2);
            (invertible(ctx, a1, b1, q) && monomial_mismatch(ctx, c, e, &f, &frob).is_none()).then_some(c)
        });
        return Ok(found.map(make));
    }
    let found = (0..k.pow(4)).into_par_iter().find_map_first(|idx| {
        let pick = |p: u32| elems[(idx / k.pow(p) % k) as usize];
        let c = (pick(3), pick(2), pick(1), pick(0));
        let ok = invertible(ctx, c.0, c.1, q)
            && invertible(ctx, c.2, c.3, q)
            && monomial_mismatch(ctx, c, e, &f, &frob).is_none();
        ok.then_some(c)
    });
    Ok(found.map(make))
}

type Bivariate = [u64; 6];

fn bivariate_components(ctx: &FieldCtx, c: &Bivariate, x: u64, xq: u64) -> (u64, u64) {
    (
        linearized(ctx, c[1], c[0], x, xq),
        linearized(ctx, c[3], c[2], x, xq),
    )
}

fn bivariate_check(ctx: &FieldCtx, c: &Bivariate, e: u128, f: &[u64], frob: &[u64]) -> Result<(), CertError> {
    let name = |x: u64| ctx.elem(x).to_string();
    // both components are additive, so the bit basis spans
    for k in 0..ctx.degree() {
        let x = 1u64 << k;
        let (u, v) = bivariate_components(ctx, c, x, frob[x as usize]);
        if frob[u as usize] != u || frob[v as usize] != v {
            return Err(CertError::ComponentLeavesBase { x: name(x) });
        }
    }
    let mut image = vec![(0u64, 0u64); ctx.size() as usize];
    for x in 1..ctx.size() {
        let uv = bivariate_components(ctx, c, x, frob[x as usize]);
        if uv == (0, 0) {
            return Err(CertError::NotInjective { x: name(x) });
        }
        image[x as usize] = uv;
    }
    for x in 0..ctx.size() {
        let (u, v) = image[x as usize];
        let val = ctx.mul_raw(c[4], ctx.pow_raw(u, e)) ^ ctx.mul_raw(c[5], ctx.pow_raw(v, e));
        if val != f[x as usize] {
            return Err(CertError::Mismatch { x: name(x) });
        }
    }
    Ok(())
}

fn bivariate_array(c: &BivariateCert<'_>) -> Bivariate {
    [c.c1, c.c2, c.c3, c.c4, c.d1, c.d2].map(|x| x.bits())
}

pub fn verify_bivariate_cert(c: &BivariateCert<'_>, s: &FamilySpec) -> Result<(), CertError> {
    let ctx = c.c1.ctx();
    for x in [c.c2, c.c3, c.c4, c.d1, c.d2] {
        ctx.check_elem(x)?;
    }
    let (m, _) = check_setting(ctx, false)?;
    let f = f_values(ctx, s, m);
    bivariate_check(ctx, &bivariate_array(c), c.e, &f, &frob_table(ctx)?)
}

/// First certificate over `pool^6` in lexicographic `(c1, c2, c3, c4, d1, d2)` order.
pub fn search_bivariate_cert<'a>(
    ctx: &'a FieldCtx,
    s: &FamilySpec,
    pool: &Pool,
) -> Result<Option<BivariateCert<'a>>, CertError> {
    let (m, _) = check_setting(ctx, false)?;
    let r = r_closed_form(s);
    if r != 0 {
        return Err(CertError::NonzeroR(r));
    }
    let e = s.t() as u128;
    let f = f_values(ctx, s, m);
    let frob = frob_table(ctx)?;
    let elems = pool.elements(ctx)?;
    let k = elems.len() as u64;
    let found = (0..k.pow(6)).into_par_iter().find_map_first(|idx| {
        let c: Bivariate = std::array::from_fn(|p| elems[(idx / k.pow(5 - p as u32) % k) as usize]);
        bivariate_check(ctx, &c, e, &f, &frob).is_ok().then_some(c)
    });
    Ok(found.map(|c| BivariateCert {
        c1: ctx.elem(c[0]),
        c2: ctx.elem(c[1]),
        c3: ctx.elem(c[2]),
        c4: ctx.elem(c[3]),
        d1: ctx.elem(c[4]),
        d2: ctx.elem(c[5]),
        e,
    }))
}

/// `L1 = w^2 x^q + x`, `L2 = x^q + w x`, exponent 97: the closed-form certificate for `B(5, 6)` at even `m`.
pub fn explicit_monomial_cert(ctx: &FieldCtx) -> Result<MonomialCert<'_>, CertError> {
    let w = ctx.omega()?;
    Ok(MonomialCert {
        a1: ctx.one(),
        b1: w.square(),
        a2: w,
        b2: ctx.one(),
        e: 97,
    })
}

/// `L2 = (w^2 x^q + w x, w x^q + w^2 x)`, `L1 = w u + w^2 v`, exponent 97: the closed-form certificate for `B(5, 6)` at odd `m`.
pub fn explicit_bivariate_cert(ctx: &FieldCtx) -> Result<BivariateCert<'_>, CertError> {
    let w = ctx.omega()?;
    let w2 = w.square();
    Ok(BivariateCert {
        c1: w2,
        c2: w,
        c3: w,
        c4: w2,
        d1: w,
        d2: w2,
        e: 97,
    })
}

impl MonomialCert<'_> {
    /// Whether `x^e` permutes GF(q^2).
    pub fn exponent_test(&self) -> bool {
        let order = self.a1.ctx().group_order() as u128;
        crate::nt::gcd_u128(self.e, order) == 1
    }
}

impl BivariateCert<'_> {
    /// Whether `u -> u^e` permutes GF(q).
    pub fn exponent_test(&self) -> bool {
        let q = self.c1.ctx().q().expect("certificate field has a subfield") as u128;
        crate::nt::gcd_u128(self.e, q - 1) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Class;

    fn spec(c: Class, i: u32, j: u32) -> FamilySpec {
        FamilySpec::new(c, i, j).unwrap()
    }

    #[test]
    fn exponents() {
        assert_eq!(monomial_exponent(&spec(Class::B, 5, 6), 7), 97);
        assert_eq!(monomial_exponent(&spec(Class::B, 2, 4), 4), 81);
        assert_eq!(monomial_exponent(&spec(Class::B, 2, 4), 2), 33);
    }

    #[test]
    fn explicit_certificates() {
        let s = spec(Class::B, 5, 6);
        for m in [2, 4] {
            let ctx = FieldCtx::tower(m).unwrap();
            assert_eq!(
                verify_monomial_cert(&explicit_monomial_cert(&ctx).unwrap(), &s),
                Ok(())
            );
        }
        for m in [3, 5] {
            let ctx = FieldCtx::tower(m).unwrap();
            assert_eq!(
                verify_bivariate_cert(&explicit_bivariate_cert(&ctx).unwrap(), &s),
                Ok(())
            );
        }
    }

    #[test]
    fn distinct_failures() {
        let s = spec(Class::B, 5, 6);
        let ctx = FieldCtx::tower(2).unwrap();
        let (zero, one) = (ctx.zero(), ctx.one());
        let id = MonomialCert {
            a1: one,
            b1: zero,
            a2: one,
            b2: zero,
            e: 97,
        };
        assert!(matches!(
            verify_monomial_cert(&id, &s),
            Err(CertError::Mismatch { .. })
        ));
        let bad = MonomialCert {
            a1: one,
            b1: one,
            ..id
        };
        assert_eq!(
            verify_monomial_cert(&bad, &s),
            Err(CertError::NotInvertible { which: "L1" })
        );
        assert!(matches!(
            verify_bivariate_cert(&explicit_bivariate_cert(&ctx).unwrap(), &s),
            Err(CertError::WrongParity { m: 2, .. })
        ));

        let ctx = FieldCtx::tower(3).unwrap();
        let cert = explicit_bivariate_cert(&ctx).unwrap();
        let swapped = BivariateCert {
            d1: cert.d2,
            d2: cert.d1,
            ..cert
        };
        assert!(matches!(
            verify_bivariate_cert(&swapped, &s),
            Err(CertError::Mismatch { .. })
        ));
        let one = ctx.one();
        let same = BivariateCert {
            c1: one,
            c2: one,
            c3: one,
            c4: one,
            ..cert
        };
        assert!(matches!(
            verify_bivariate_cert(&same, &s),
            Err(CertError::NotInjective { .. })
        ));
        let off = BivariateCert {
            c1: one,
            c2: ctx.zero(),
            ..cert
        };
        assert!(matches!(
            verify_bivariate_cert(&off, &s),
            Err(CertError::ComponentLeavesBase { .. })
        ));
    }

    #[test]
    fn searches_find_certificates() {
        let s = spec(Class::B, 5, 6);
        let ctx = FieldCtx::tower(2).unwrap();
        let c = search_monomial_cert(&ctx, &s, &Pool::F4).unwrap().unwrap();
        assert_eq!(verify_monomial_cert(&c, &s), Ok(()));
        let ctx3 = FieldCtx::tower(3).unwrap();
        let c = search_bivariate_cert(&ctx3, &s, &Pool::F4).unwrap().unwrap();
        assert_eq!(verify_bivariate_cert(&c, &s), Ok(()));
        let c = search_bivariate_cert(&ctx3, &spec(Class::A, 3, 1), &Pool::F4).unwrap();
        assert!(c.is_some());
        assert_eq!(
            search_bivariate_cert(&ctx3, &spec(Class::B, 2, 4), &Pool::F4),
            Err(CertError::NonzeroR(4))
        );
        let s24 = spec(Class::B, 2, 4);
        let c = search_monomial_cert(&ctx, &s24, &Pool::F4).unwrap().unwrap();
        assert_eq!(c.e, 33);
        assert_eq!(verify_monomial_cert(&c, &s24), Ok(()));
    }

    #[test]
    fn full_pool_solves_for_outer_map() {
        let s = spec(Class::A, 3, 1);
        let ctx = FieldCtx::tower(2).unwrap();
        let c = search_monomial_cert(&ctx, &s, &Pool::Full).unwrap().unwrap();
        assert_eq!(verify_monomial_cert(&c, &s), Ok(()));
    }

    #[test]
    fn serializes() {
        let ctx = FieldCtx::tower(2).unwrap();
        let v = serde_json::to_value(explicit_monomial_cert(&ctx).unwrap()).unwrap();
        assert_eq!(v["e"], "97");
        assert_eq!(v["a1"], "gf16:0x1");
    }
}
