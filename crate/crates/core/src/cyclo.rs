//! Exact arithmetic in the cyclotomic integers Z[ζ_N] for prime powers N = p^k.
//!
//! Values are stored over the power basis {ζ^0, …, ζ^{φ(N)-1}}. Any exponent
//! at or above φ(N) is folded back with Φ_{p^k}(ζ) = Σ_{i<p} ζ^{i·p^{k-1}} = 0,
//! so two equal ring elements always carry identical coefficient vectors and
//! the zero test is a plain coefficient scan.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::gf::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("root order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
}

/// A root order N = p^k together with the constants reduction needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycOrder {
    n: u64,
    p: u64,
    k: u32,
    // p^{k-1}
    step: u64,
}

impl CycOrder {
    pub fn new(n: u64) -> Result<Self, CycloError> {
        if n < 2 {
            return Err(CycloError::NotPrimePower(n));
        }
        let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
        if p > u32::MAX as u64 || !is_prime(p as u32) {
            return Err(CycloError::NotPrimePower(n));
        }
        let mut k = 0;
        let mut rest = n;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(CycloError::NotPrimePower(n));
        }
        Ok(CycOrder {
            n,
            p,
            k,
            step: n / p,
        })
    }

    /// ζ_{p^k} for a known prime p.
    pub fn prime_power(p: u32, k: u32) -> Self {
        let p = p as u64;
        let n = p.pow(k);
        CycOrder {
            n,
            p,
            k,
            step: n / p,
        }
    }

    #[inline]
    pub fn n(self) -> u64 {
        self.n
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(self) -> u32 {
        self.k
    }

    /// φ(N) = p^{k-1}(p-1), the length of the coefficient vector.
    #[inline]
    pub fn phi(self) -> usize {
        (self.step * (self.p - 1)) as usize
    }

    #[inline]
    fn reduce_exp(self, j: i64) -> usize {
        j.rem_euclid(self.n as i64) as usize
    }
}

/// An element of Z[ζ_N] in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    order: CycOrder,
    coeffs: Vec<BigInt>,
}

/// Folds a length-N exponent vector onto the φ(N) basis in place and truncates.
fn fold_full<T>(order: CycOrder, full: &mut Vec<T>)
where
    T: Clone + Zero + for<'a> std::ops::SubAssign<&'a T>,
{
    let phi = order.phi();
    let step = order.step as usize;
    let p = order.p as usize;
    for j in phi..order.n as usize {
        if full[j].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut full[j], T::zero());
        let r = j - phi;
        for i in 0..p - 1 {
            full[i * step + r] -= &c;
        }
    }
    full.truncate(phi);
}

impl CycInt {
    pub fn zero(order: CycOrder) -> Self {
        CycInt {
            order,
            coeffs: vec![BigInt::zero(); order.phi()],
        }
    }

    pub fn from_int(order: CycOrder, v: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = v.into();
        z
    }

    pub fn one(order: CycOrder) -> Self {
        Self::from_int(order, 1)
    }

    /// ζ_N^j in canonical form; j is reduced modulo N.
    pub fn root_power(order: CycOrder, j: i64) -> Self {
        let mut counts = vec![0i64; order.n as usize];
        counts[order.reduce_exp(j)] = 1;
        Self::from_exponent_counts(order, &counts)
    }

    /// Σ_j counts[j]·ζ^j for a histogram over Z_N (length must be N).
    pub fn from_exponent_counts(order: CycOrder, counts: &[i64]) -> Self {
        assert_eq!(
            counts.len() as u64,
            order.n,
            "histogram length must equal the root order"
        );
        let mut full = counts.to_vec();
        fold_full(order, &mut full);
        CycInt {
            order,
            coeffs: full.into_iter().map(BigInt::from).collect(),
        }
    }

    fn from_full_big(order: CycOrder, mut full: Vec<BigInt>) -> Self {
        fold_full(order, &mut full);
        CycInt {
            order,
            coeffs: full,
        }
    }

    pub fn order(&self) -> CycOrder {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The integer value, if the element lies in Z.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &CycInt) -> Result<(), CycloError> {
        if self.order != other.order {
            return Err(CycloError::OrderMismatch(self.order.n, other.order.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt, CycloError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt, CycloError> {
        self.check(other)?;
        let n = self.order.n as usize;
        let mut full = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = (i + j) % n;
                full[e] += a * b;
            }
        }
        Ok(Self::from_full_big(self.order, full))
    }

    pub fn try_eq(&self, other: &CycInt) -> Result<bool, CycloError> {
        self.check(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn negate(&self) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale_int(&self, k: impl Into<BigInt>) -> CycInt {
        let k = k.into();
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
    }

    /// Multiplication by ζ^j.
    pub fn mul_root(&self, j: i64) -> CycInt {
        let n = self.order.n as usize;
        let shift = self.order.reduce_exp(j);
        let mut full = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(i + shift) % n] += c;
            }
        }
        Self::from_full_big(self.order, full)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> CycInt {
        let n = self.order.n as usize;
        let mut full = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(n - i) % n] += c;
            }
        }
        Self::from_full_big(self.order, full)
    }

    /// Image under Z[ζ_{p^k}] → Z[ζ_{p^K}], ζ_{p^k} ↦ ζ_{p^K}^{p^{K-k}}.
    pub fn embed_subroot(&self, target: CycOrder) -> Result<CycInt, CycloError> {
        if target.p != self.order.p || target.k < self.order.k {
            return Err(CycloError::OrderMismatch(self.order.n, target.n));
        }
        let scale = (target.n / self.order.n) as usize;
        let mut full = vec![BigInt::zero(); target.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[i * scale] += c;
        }
        Ok(Self::from_full_big(target, full))
    }

    /// Numeric value at ζ = e^{2πi/N}, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = std::f64::consts::TAU * j as f64 / n;
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    /// Coefficients as JSON numbers, falling back to strings past i64.
    pub fn coeffs_json(&self) -> Vec<Value> {
        self.coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_string()),
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let (re, im) = self.to_complex();
        json!({ "order": self.order.n, "coeffs": self.coeffs_json(), "approx": [re, im] })
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            let sign = if c.sign() == num_bigint::Sign::Minus {
                "-"
            } else {
                "+"
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match j {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}·z")?,
                _ => write!(f, "{mag}·z^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[N={}]({})", self.order.n, self)
    }
}

// Operator sugar; panics on mismatched orders. Use the try_* methods when the
// orders are not known to agree.
impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.negate()
    }
}
