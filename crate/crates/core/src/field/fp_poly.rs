//! Dense polynomials over a prime field F_p, used to choose and validate the
//! modulus of the extension and as the reference multiplication kernel.

/// Coefficients in ascending order, residues in `[0, p)`. Trailing zeros trimmed.
pub type FpPoly = Vec<u32>;

pub fn trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn inv_mod_p(x: u32, p: u32) -> u32 {
    debug_assert!(!x.is_multiple_of(p));
    // Fermat: x^(p-2)
    let mut r = 1u64;
    let mut b = (x % p) as u64;
    let mut e = p - 2;
    let p64 = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p64;
        }
        b = b * b % p64;
        e >>= 1;
    }
    r as u32
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: FpPoly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (m nonzero).
pub fn rem(a: &[u32], m: &[u32], p: u32) -> FpPoly {
    let dm = degree(m).expect("division by zero polynomial");
    let mut r: FpPoly = a.to_vec();
    trim(&mut r);
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    let p64 = p as u64;
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let v = (r[shift + i] as u64 + p64 - factor * c as u64 % p64) % p64;
            r[shift + i] = v as u32;
        }
        trim(&mut r);
    }
    r
}

pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> FpPoly {
    let mut result: FpPoly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> FpPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    // normalise to monic
    if let Some(d) = degree(&x) {
        let inv = inv_mod_p(x[d], p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    x
}

/// Irreducibility of a monic polynomial of degree n over F_p: no irreducible
/// factor of degree k for any k <= n/2, i.e. gcd(X^{p^k} - X, f) = 1.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: FpPoly = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = pow_mod(&xp, p as u64, f, p);
        let g = gcd(f, &sub(&xp, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree n, ordered by the integer
/// encoding sum c_i p^i of the lower coefficients.
pub fn smallest_irreducible(p: u32, n: usize) -> FpPoly {
    let total = (p as u64).pow(n as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_binary_sextic_is_t6_t_1() {
        // independent scan: a degree-6 binary polynomial is reducible iff it
        // is a product of two lower-degree ones; sieve all products.
        let mut reducible = std::collections::HashSet::new();
        for a in 2u32..128 {
            for b in 2u32..128 {
                let da = 31 - a.leading_zeros();
                let db = 31 - b.leading_zeros();
                if da + db != 6 {
                    continue;
                }
                let mut prod = 0u32;
                for i in 0..=da {
                    if a >> i & 1 == 1 {
                        prod ^= b << i;
                    }
                }
                reducible.insert(prod);
            }
        }
        let first = (64u32..128).find(|f| !reducible.contains(f)).unwrap();
        assert_eq!(first, 0b100_0011);
        assert_eq!(smallest_irreducible(2, 6), vec![1, 1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn irreducibility_catches_non_divisor_degree_factors() {
        // (t^5 + t^2 + 1)(t^7 + t + 1): neither factor degree divides 12
        let a = vec![1, 0, 1, 0, 0, 1];
        let b = vec![1, 1, 0, 0, 0, 0, 0, 1];
        assert!(is_irreducible(&a, 2));
        assert!(is_irreducible(&b, 2));
        assert!(!is_irreducible(&mul(&a, &b, 2), 2));
    }

    #[test]
    fn ternary_sextic_found_is_irreducible() {
        let f = smallest_irreducible(3, 6);
        assert_eq!(f.len(), 7);
        assert!(is_irreducible(&f, 3));
    }
}
