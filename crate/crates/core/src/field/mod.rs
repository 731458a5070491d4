//! Arithmetic in F_{q^6} = F_{p^{6h}}, realised as one extension
//! F_p[t]/(modulus) of degree 6h.
//!
//! Elements are stored by their integer encoding `sum c_i p^i`, where `c_i`
//! is the coefficient of `t^i`. Multiplication goes through exp/log tables
//! built from the reference polynomial kernel in [`fp_poly`]; addition is
//! XOR in characteristic 2 and a Zech-logarithm lookup otherwise. The
//! q-Frobenius is the F_p-linear map `frobenius_matrix`, tabulated once.
//!
//! Subfields F_{q^e} (e | 6) are never represented separately: membership
//! is the fixed-point test `x^{q^e} = x`.

pub mod fp_poly;

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on q^6 for building a context.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// An element of F_{q^6}, stored by its base-p integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elt(u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    /// The integer encoding `sum c_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl serde::Serialize for Elt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:x}", self.0))
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elt({:#x})", self.0)
    }
}

/// Immutable description of F_p ⊂ F_q ⊂ F_{q^2} ⊂ F_{q^6}.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    h: u32,
    q: u32,
    degree: usize,
    size: u32,
    modulus: Vec<u32>,
    frobenius_matrix: Vec<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[k] = log(1 + g^k); u32::MAX marks 1 + g^k = 0
    zech: Vec<u32>,
    // frob_tables[i][x] = x^{q^i}, i in 0..6
    frob_tables: Vec<Vec<u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power q into (p, h) with q = p^h.
pub fn split_prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut h = 0u32;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    if rest != 1 || p > u32::MAX as u64 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, h))
}

impl FieldCtx {
    /// Context for q = p^h with the default modulus and budget.
    pub fn new(p: u32, h: u32) -> Result<Self> {
        Self::build(p, h, None, DEFAULT_BUDGET)
    }

    pub fn for_q(q: u64) -> Result<Self> {
        let (p, h) = split_prime_power(q)?;
        Self::new(p, h)
    }

    pub fn build(p: u32, h: u32, modulus_override: Option<&[u32]>, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if h == 0 {
            return Err(Error::BadSubfieldIndex(0));
        }
        let degree = 6 * h as usize;
        let size = (p as u64)
            .checked_pow(degree as u32)
            .filter(|s| *s <= budget && *s <= u32::MAX as u64)
            .ok_or(Error::BudgetExceeded {
                size: (p as f64).powi(degree as i32) as u64,
                budget,
            })?;
        let q = p.pow(h);
        let modulus = match modulus_override {
            Some(m) => {
                let mut m = m.to_vec();
                fp_poly::trim(&mut m);
                let d = fp_poly::degree(&m).unwrap_or(0);
                if d != degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        got: d,
                    });
                }
                if m.iter().any(|&c| c >= p) || m[d] != 1 {
                    return Err(Error::NotIrreducible);
                }
                if !fp_poly::is_irreducible(&m, p) {
                    return Err(Error::NotIrreducible);
                }
                m
            }
            None => fp_poly::smallest_irreducible(p, degree),
        };
        let mut ctx = FieldCtx {
            p,
            h,
            q,
            degree,
            size: size as u32,
            modulus,
            frobenius_matrix: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            frob_tables: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let n = self.size as usize;
        let order = n - 1;
        // generator search over encodings p, p+1, ... (t is tried first)
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; n];
        'search: for cand in self.p..self.size {
            let g = self.to_poly(Elt(cand));
            let mut cur: Vec<u32> = vec![1];
            for k in 0..order {
                let e = self.poly_to_elt(&cur);
                if k > 0 && e == Elt::ONE {
                    continue 'search;
                }
                exp[k] = e.0;
                log[e.0 as usize] = k as u32;
                cur = fp_poly::mul_mod(&cur, &g, &self.modulus, self.p);
            }
            break;
        }
        for k in 0..order {
            exp[order + k] = exp[k];
        }
        self.exp = exp;
        self.log = log;

        if self.p != 2 {
            let mut zech = vec![u32::MAX; order];
            for (k, z) in zech.iter_mut().enumerate() {
                let s = self.add_digits(Elt(self.exp[k]), Elt::ONE);
                if !s.is_zero() {
                    *z = self.log[s.0 as usize];
                }
            }
            self.zech = zech;
        }

        // Frobenius x -> x^q as an F_p-linear map: column j is (t^j)^q.
        let d = self.degree;
        let t: Vec<u32> = vec![0, 1];
        let mut matrix = vec![vec![0u32; d]; d];
        for j in 0..d {
            let tj = fp_poly::pow_mod(&t, j as u64, &self.modulus, self.p);
            let img = fp_poly::pow_mod(&tj, self.q as u64, &self.modulus, self.p);
            for (i, row) in matrix.iter_mut().enumerate() {
                row[j] = img.get(i).copied().unwrap_or(0);
            }
        }
        self.frobenius_matrix = matrix;
        let identity: Vec<u32> = (0..self.size).collect();
        let first: Vec<u32> = (0..self.size).map(|x| self.apply_frobenius_matrix(Elt(x)).0).collect();
        let mut tables = vec![identity, first];
        for i in 2..6 {
            let prev = &tables[i - 1];
            let next: Vec<u32> = prev.iter().map(|&y| tables[1][y as usize]).collect();
            tables.push(next);
        }
        self.frob_tables = tables;
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn h(&self) -> u32 {
        self.h
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Extension degree 6h of F_{q^6} over F_p.
    pub fn degree(&self) -> usize {
        self.degree
    }
    /// q^6.
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn frobenius_matrix(&self) -> &[Vec<u32>] {
        &self.frobenius_matrix
    }

    pub fn elem(&self, index: u32) -> Result<Elt> {
        if index < self.size {
            Ok(Elt(index))
        } else {
            Err(Error::InvalidElement(format!("{index:#x}")))
        }
    }

    /// All q^6 elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + Clone {
        (0..self.size).map(Elt)
    }

    /// Element of F_p embedded as a constant.
    pub fn from_int(&self, v: i64) -> Elt {
        Elt(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elt> {
        if coeffs.len() > self.degree || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!("{coeffs:?}")));
        }
        Ok(self.poly_to_elt(coeffs))
    }

    /// Coefficient vector of length 6h.
    pub fn coeffs(&self, x: Elt) -> Vec<u32> {
        let mut v = self.to_poly(x);
        v.resize(self.degree, 0);
        v
    }

    fn to_poly(&self, x: Elt) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree);
        let mut v = x.0;
        while v > 0 {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn poly_to_elt(&self, c: &[u32]) -> Elt {
        let mut v = 0u32;
        for &d in c.iter().rev() {
            v = v * self.p + d;
        }
        Elt(v)
    }

    pub fn to_hex(&self, x: Elt) -> String {
        format!("{:x}", x.0)
    }

    pub fn parse_hex(&self, s: &str) -> Result<Elt> {
        let t = s.trim().trim_start_matches("0x");
        let v = u32::from_str_radix(t, 16).map_err(|_| Error::InvalidElement(s.to_string()))?;
        self.elem(v)
    }

    fn add_digits(&self, a: Elt, b: Elt) -> Elt {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        Elt(out)
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let order = self.size - 1;
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d as usize];
        if z == u32::MAX {
            Elt::ZERO
        } else {
            Elt(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.size - 1) / 2;
        Elt(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        Elt(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elt) -> Option<Elt> {
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        let l = self.log[a.0 as usize];
        Some(Elt(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Option<Elt> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.0 == 0 {
            return Elt::ZERO;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elt(self.exp[((l * (e % order)) % order) as usize])
    }

    /// Small integer multiple n·a.
    pub fn scale(&self, a: Elt, n: i64) -> Elt {
        self.mul(self.from_int(n), a)
    }

    /// Reference multiplication through the polynomial kernel.
    pub fn mul_reference(&self, a: Elt, b: Elt) -> Elt {
        let r = fp_poly::mul_mod(&self.to_poly(a), &self.to_poly(b), &self.modulus, self.p);
        self.poly_to_elt(&r)
    }

    /// One application of the Frobenius matrix (x -> x^q).
    pub fn apply_frobenius_matrix(&self, x: Elt) -> Elt {
        let c = self.coeffs(x);
        let p = self.p as u64;
        let out: Vec<u32> = self
            .frobenius_matrix
            .iter()
            .map(|row| (row.iter().zip(&c).map(|(&m, &v)| m as u64 * v as u64).sum::<u64>() % p) as u32)
            .collect();
        self.poly_to_elt(&out)
    }

    /// x^{q^i}, i taken mod 6.
    #[inline]
    pub fn frob(&self, x: Elt, i: i64) -> Elt {
        let k = i.rem_euclid(6) as usize;
        Elt(self.frob_tables[k][x.0 as usize])
    }

    /// (x, x^q, ..., x^{q^5}).
    pub fn frob_tuple(&self, x: Elt) -> [Elt; 6] {
        std::array::from_fn(|i| self.frob(x, i as i64))
    }

    fn check_subfield(e: u32, allowed: &[u32]) -> Result<()> {
        if allowed.contains(&e) {
            Ok(())
        } else {
            Err(Error::BadSubfieldIndex(e))
        }
    }

    pub fn in_subfield(&self, x: Elt, e: u32) -> Result<bool> {
        Self::check_subfield(e, &[1, 2, 3, 6])?;
        Ok(self.frob(x, e as i64) == x)
    }

    /// Tr_{q^e}^{q^6}(x) = sum_j x^{q^{e j}}.
    pub fn trace_to_subfield(&self, x: Elt, e: u32) -> Result<Elt> {
        Self::check_subfield(e, &[1, 2, 3])?;
        let mut acc = Elt::ZERO;
        for j in 0..(6 / e) {
            acc = self.add(acc, self.frob(x, (e * j) as i64));
        }
        Ok(acc)
    }

    /// Norm to F_q: the product of the six conjugates.
    pub fn norm_to_fq(&self, x: Elt) -> Elt {
        (0..6).fold(Elt::ONE, |acc, i| self.mul(acc, self.frob(x, i)))
    }

    /// Elements of F_{q^e} in encoding order.
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<Elt>> {
        Self::check_subfield(e, &[1, 2, 3, 6])?;
        Ok(self.elements().filter(|&x| self.frob(x, e as i64) == x).collect())
    }

    /// γ = b + b^q.
    pub fn gamma_of(&self, b: Elt) -> Elt {
        self.add(b, self.frob(b, 1))
    }

    /// A = Tr_{q^2}^{q^6}(a^{q+1} - a^{q^2+q}).
    pub fn capital_a(&self, a: Elt) -> Elt {
        let a1 = self.frob(a, 1);
        let inner = self.sub(self.mul(a1, a), self.mul(self.frob(a, 2), a1));
        self.trace_to_subfield(inner, 2).expect("e = 2 is valid")
    }
}
