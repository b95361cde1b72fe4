//! Dense polynomials with coefficients in a [`FieldCtx`].

use crate::field::FieldCtx;
use crate::gf2poly::BinPoly;

/// Coefficients in ascending order, trimmed so the last one is nonzero.
#[derive(Clone, Debug)]
pub struct FieldPoly<'a> {
    ctx: &'a FieldCtx,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldPoly<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldPoly<'_> {}

impl<'a> FieldPoly<'a> {
    pub fn new(ctx: &'a FieldCtx, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    pub fn zero(ctx: &'a FieldCtx) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn from_binpoly(ctx: &'a FieldCtx, p: &BinPoly) -> Self {
        let len = p.degree().map_or(0, |d| d + 1);
        Self::new(ctx, (0..len).map(|k| u64::from(p.coeff(k))).collect())
    }

    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.ctx.mul_raw(acc, x) ^ c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|k| self.coeffs.get(k).unwrap_or(&0) ^ other.coeffs.get(k).unwrap_or(&0))
            .collect();
        Self::new(self.ctx, c)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(
            self.ctx,
            self.coeffs.iter().map(|&c| self.ctx.mul_raw(c, s)).collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| if k % 2 == 1 { c } else { 0 })
            .collect();
        Self::new(self.ctx, c)
    }

    /// `x^d p(1/x)` for `d >= deg p`.
    pub fn reverse(&self, d: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(d + 1, 0);
        c.reverse();
        Self::new(self.ctx, c)
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = self.ctx.inv_raw(divisor.lead()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = self.ctx.mul_raw(rem[top], inv_lead);
            if c != 0 {
                let shift = top - dd;
                quot[shift] = c;
                for (k, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] ^= self.ctx.mul_raw(c, dc);
                }
            }
            rem.pop();
        }
        (Self::new(self.ctx, quot), Self::new(self.ctx, rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = self.ctx.inv_raw(a.lead()).expect("nonzero lead");
        a.scale(inv)
    }

    /// Multiplicity of `alpha` as a root; `self` must be nonzero.
    pub fn root_multiplicity(&self, alpha: u64) -> usize {
        assert!(!self.is_zero(), "multiplicity in the zero polynomial");
        let mut cur = self.coeffs.clone();
        let mut k = 0;
        loop {
            // synthetic division by (x + alpha)
            let n = cur.len();
            if n < 2 {
                return k;
            }
            let mut q = vec![0u64; n - 1];
            let mut carry = 0u64;
            for idx in (1..n).rev() {
                carry = cur[idx] ^ self.ctx.mul_raw(carry, alpha);
                q[idx - 1] = carry;
            }
            let rem = cur[0] ^ self.ctx.mul_raw(carry, alpha);
            if rem != 0 {
                return k;
            }
            cur = q;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let ctx = FieldCtx::tower(2).unwrap();
        let w = ctx.omega().unwrap().bits();
        let w2 = ctx.square_raw(w);
        // (x + w)^3 (x + w2)
        let xw = FieldPoly::new(&ctx, vec![w, 1]);
        let xw2 = FieldPoly::new(&ctx, vec![w2, 1]);
        let mul = |a: &FieldPoly<'_>, b: &FieldPoly<'_>| {
            let mut c = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
            for (i, &x) in a.coeffs.iter().enumerate() {
                for (j, &y) in b.coeffs.iter().enumerate() {
                    c[i + j] ^= ctx.mul_raw(x, y);
                }
            }
            FieldPoly::new(&ctx, c)
        };
        let p = mul(&mul(&mul(&xw, &xw), &xw), &xw2);
        assert_eq!(p.root_multiplicity(w), 3);
        assert_eq!(p.root_multiplicity(w2), 1);
        assert_eq!(p.root_multiplicity(1), 0);
        let (q, r) = p.div_rem(&xw2);
        assert!(r.is_zero());
        assert_eq!(q.root_multiplicity(w), 3);
        assert_eq!(p.gcd(&mul(&xw, &xw2)), mul(&xw, &xw2));
        // Q(x) = (x + w)(x + w2) lifted from GF(2)
        assert_eq!(FieldPoly::from_binpoly(&ctx, &BinPoly::q_poly()), mul(&xw, &xw2));
    }

    #[test]
    fn reverse_and_derivative() {
        let ctx = FieldCtx::tower(2).unwrap();
        let p = FieldPoly::new(&ctx, vec![0, 3, 0, 1]);
        assert_eq!(p.reverse(4).coeffs(), &[0, 1, 0, 3]);
        assert_eq!(p.derivative().coeffs(), &[3, 0, 1]);
    }
}
