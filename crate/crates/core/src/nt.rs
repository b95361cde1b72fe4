//! Small integer number theory: gcd/lcm, trial-division factoring and
//! multiplicative orders.

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorisation as `(p, e)` pairs in ascending `p`.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

fn euler_phi(n: u64) -> u64 {
    factor(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Least `e > 0` with `base^e = 1 (mod k)`; `None` when `gcd(base, k) != 1`
/// or `k < 2`.
pub fn multiplicative_order(base: u64, k: u64) -> Option<u64> {
    if k < 2 || gcd(base, k) != 1 {
        return None;
    }
    let mut order = euler_phi(k);
    for (p, _) in factor(order) {
        while order.is_multiple_of(p) && pow_mod(base, order / p, k) == 1 {
            order /= p;
        }
    }
    Some(order)
}
