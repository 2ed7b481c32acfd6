use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::Scalar;

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![F::one()])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![F::zero(); k + 1];
        c[k] = F::one();
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).add_ref(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).sub_ref(&other.coeff(k))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j].add_mul(a, b);
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul_ref(s)).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead_inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r[r.len() - 1].mul_ref(&lead_inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j].sub_mul(&c, dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Some((Poly::new(q), Poly::new(r)))
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last().and_then(|c| c.inv()) {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.coeffs.last().and_then(|c| c.inv()) {
            Some(i) => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            None => (r0, s0, t0),
        }
    }

    /// `p(t + c)`.
    pub fn shifted(&self, c: &F) -> Self {
        let lin = Poly::new(vec![c.clone(), F::one()]);
        let mut acc = Poly::zero();
        for k in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::new(vec![k.clone()]));
        }
        acc
    }

    /// `(m, q)` with `p = t^m q` and `q(0) ≠ 0`.
    pub fn split_at_zero(&self) -> (usize, Self) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (m, Poly::new(self.coeffs[m..].to_vec()))
    }

    /// Roots in the base field, each listed once. Over the rationals only
    /// candidates `p/q` with `|p|, |q|` below a fixed bound are tried.
    pub fn roots(&self) -> Vec<F> {
        if self.is_zero() {
            return Vec::new();
        }
        let (m, q) = self.split_at_zero();
        let mut out = Vec::new();
        if m > 0 {
            out.push(F::zero());
        }
        if q.degree() == Some(0) {
            return out;
        }
        let candidates: Vec<F> = match F::all_elements() {
            Some(all) => all.into_iter().filter(|x| !x.is_zero()).collect(),
            None => rational_candidates(&q),
        };
        for c in candidates {
            if q.eval(&c).is_zero() && !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n > 0 && n <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_candidates<F: Scalar>(q: &Poly<F>) -> Vec<F> {
    let Some(fracs) = q.coeffs.iter().map(|c| c.as_fraction()).collect::<Option<Vec<_>>>() else {
        return Vec::new();
    };
    let den = fracs.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let ints: Vec<BigInt> = fracs.iter().map(|(n, d)| n * (&den / d)).collect();
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().expect("nonzero"))) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for p in &ps {
        for d in &qs {
            for sign in [1i64, -1] {
                if let Some(c) = F::from_fraction(&BigInt::from(sign * *p as i64), &BigInt::from(*d)) {
                    out.push(c);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, F32003};

    fn q(v: &[i64]) -> Poly<Rational> {
        Poly::new(v.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t - 1)(t + 2) t^2
        let p = q(&[0, 0, -2, 1, 1]);
        let (m, rest) = p.split_at_zero();
        assert_eq!(m, 2);
        let (g, s, t) = Poly::ext_gcd(&Poly::monomial(2), &rest);
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&Poly::monomial(2)).add(&t.mul(&rest)), Poly::one());
        let (quot, r) = p.div_rem(&q(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(quot.mul(&q(&[-1, 1])), p);
    }

    #[test]
    fn rational_roots() {
        // (2t - 3)(t + 5)(t^2 + 1)
        let p = q(&[-3, 2]).mul(&q(&[5, 1])).mul(&q(&[1, 0, 1]));
        let mut roots = p.roots();
        roots.sort();
        assert_eq!(roots, vec![Rational::from_i64(-5), Rational::new(3.into(), 2.into())]);
    }

    #[test]
    fn prime_field_roots() {
        let p: Poly<F32003> = Poly::new(vec![F32003::new(-4), F32003::new(0), F32003::new(1)]);
        let mut roots: Vec<u32> = p.roots().into_iter().map(|x| x.value()).collect();
        roots.sort();
        assert_eq!(roots, vec![2, 32001]);
        assert_eq!(p.shifted(&F32003::new(2)).split_at_zero().0, 1);
    }
}
