//! Arithmetic in small finite fields GF(p^n).
//!
//! Elements are packed base-p integers over the polynomial basis
//! `{1, α, …, α^{n-1}}` where α is a root of the context's defining
//! polynomial. Multiplication goes through log/antilog tables and addition
//! through a Zech logarithm table (plain XOR when p = 2), so every operation
//! is a couple of table lookups.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of field elements a context may hold.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// Primitive polynomials used when a field spec names no polynomial.
/// Coefficients run from the leading term down to the constant term.
const BUILTIN_PRIMITIVE: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 0, 1, 1]),
    (2, 4, &[1, 0, 0, 1, 1]),
    (2, 5, &[1, 0, 0, 1, 0, 1]),
    (2, 6, &[1, 0, 0, 0, 0, 1, 1]),
    (2, 7, &[1, 0, 0, 0, 0, 0, 1, 1]),
    (2, 8, &[1, 0, 0, 0, 1, 1, 1, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1]),
    (2, 11, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1]),
    (2, 12, &[1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[1, 1, 2]),
    (3, 3, &[1, 0, 2, 1]),
    (3, 4, &[1, 0, 0, 1, 2]),
    (3, 5, &[1, 0, 0, 0, 2, 1]),
    (3, 6, &[1, 0, 0, 0, 0, 1, 2]),
    (3, 7, &[1, 0, 0, 0, 0, 1, 2, 1]),
    (3, 8, &[1, 0, 0, 0, 0, 1, 0, 0, 2]),
    (3, 9, &[1, 0, 0, 0, 0, 0, 2, 1, 0, 1]),
    (3, 10, &[1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 2]),
    (3, 11, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 1]),
    (3, 12, &[1, 0, 0, 0, 0, 0, 0, 0, 2, 1, 2, 2, 2]),
    (5, 1, &[1, 2]),
    (5, 2, &[1, 1, 2]),
    (5, 3, &[1, 0, 3, 2]),
    (5, 4, &[1, 0, 1, 2, 2]),
    (5, 5, &[1, 0, 0, 0, 4, 2]),
    (5, 6, &[1, 0, 0, 0, 0, 1, 2]),
    (5, 7, &[1, 0, 0, 0, 0, 0, 3, 2]),
    (5, 8, &[1, 0, 0, 0, 0, 0, 1, 2, 3]),
    (5, 9, &[1, 0, 0, 0, 0, 0, 0, 1, 2, 3]),
    (5, 10, &[1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 3]),
    (5, 11, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 2]),
    (5, 12, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 3]),
    (7, 1, &[1, 2]),
    (7, 2, &[1, 1, 3]),
    (7, 3, &[1, 0, 3, 2]),
    (7, 4, &[1, 0, 1, 3, 5]),
    (7, 5, &[1, 0, 0, 0, 1, 4]),
    (7, 6, &[1, 0, 0, 0, 3, 1, 5]),
    (7, 7, &[1, 0, 0, 0, 0, 0, 6, 2]),
    (7, 8, &[1, 0, 0, 0, 0, 0, 0, 1, 3]),
    (7, 9, &[1, 0, 0, 0, 0, 0, 0, 1, 1, 2]),
    (7, 10, &[1, 0, 0, 0, 0, 0, 0, 0, 5, 1, 5]),
    (7, 11, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 4]),
    (7, 12, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 2, 3]),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("defining polynomial {0} is not primitive")]
    NotPrimitivePoly(String),
    #[error("field of order {p}^{n} exceeds the bound of {max} elements")]
    TooLarge { p: u32, n: u32, max: u64 },
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
    #[error("no built-in primitive polynomial for {p}^{n}; supply one explicitly")]
    NoDefaultPoly { p: u32, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("subfield embedding failed verification: {0}")]
    EmbeddingInconsistent(String),
}

/// Index of a field element: the base-p packing of its polynomial-basis
/// coordinates. `0` is the additive identity and `1` the multiplicative one.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic, degree and defining polynomial of a field.
///
/// `poly` holds the coefficients from the constant term upwards and has
/// length `n + 1` with a trailing `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    pub poly: Vec<u32>,
}

impl FieldSpec {
    /// Builds a spec from coefficients listed high-to-low (`c_n, …, c_0`).
    pub fn from_high_to_low(p: u32, coeffs: &[u32]) -> Result<Self, GfError> {
        if coeffs.len() < 2 {
            return Err(GfError::InvalidSpec(
                "defining polynomial must have degree at least 1".into(),
            ));
        }
        let n = (coeffs.len() - 1) as u32;
        let poly: Vec<u32> = coeffs.iter().rev().copied().collect();
        let spec = FieldSpec { p, n, poly };
        spec.validate_shape()?;
        Ok(spec)
    }

    /// The built-in primitive polynomial for `p^n`.
    pub fn builtin(p: u32, n: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if let Some((_, _, c)) = BUILTIN_PRIMITIVE
            .iter()
            .find(|(bp, bn, _)| *bp == p && *bn == n)
        {
            return FieldSpec::from_high_to_low(p, c);
        }
        match (n, least_primitive_root(p)) {
            (1, Some(g)) => FieldSpec::from_high_to_low(p, &[1, (p - g) % p]),
            _ => Err(GfError::NoDefaultPoly { p, n }),
        }
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    fn validate_shape(&self) -> Result<(), GfError> {
        if !is_prime(self.p) {
            return Err(GfError::NotPrime(self.p));
        }
        if self.n == 0 {
            return Err(GfError::InvalidSpec("extension degree must be >= 1".into()));
        }
        if self.poly.len() != self.n as usize + 1 || self.poly[self.n as usize] != 1 {
            return Err(GfError::InvalidSpec(format!(
                "defining polynomial must be monic of degree {}",
                self.n
            )));
        }
        if let Some(c) = self.poly.iter().find(|&&c| c >= self.p) {
            return Err(GfError::InvalidSpec(format!(
                "coefficient {c} is not reduced mod {}",
                self.p
            )));
        }
        Ok(())
    }

    /// Human-readable polynomial, e.g. `x^5 + x^2 + 1`.
    pub fn poly_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.poly.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.poly.iter().rev().map(|c| c.to_string()).collect();
        write!(f, "{}^{}/{}", self.p, self.n, coeffs.join(","))
    }
}

impl FromStr for FieldSpec {
    type Err = GfError;

    /// Accepts `"p^n"` (built-in polynomial) or `"p^n/c_n,…,c_0"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, poly) = match s.split_once('/') {
            Some((h, t)) => (h.trim(), Some(t.trim())),
            None => (s, None),
        };
        let bad = || {
            GfError::InvalidSpec(format!(
                "expected \"p^n\" or \"p^n/c_n,...,c_0\", got {s:?}"
            ))
        };
        let (p, n) = head.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        match poly {
            None => FieldSpec::builtin(p, n),
            Some(list) => {
                let coeffs = list
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                let spec = FieldSpec::from_high_to_low(p, &coeffs)?;
                if spec.n != n {
                    return Err(GfError::InvalidSpec(format!(
                        "polynomial has degree {} but the field is {p}^{n}",
                        spec.n
                    )));
                }
                Ok(spec)
            }
        }
    }
}

/// Immutable arithmetic context for one field.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    spec: FieldSpec,
    order: u32,
    antilog: Vec<u32>,
    log: Vec<u32>,
    // zech[k] = log(1 + α^k), NO_LOG when 1 + α^k = 0. Unused for p = 2.
    zech: Vec<u32>,
    neg: Vec<u32>,
    trace: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Result<Self, GfError> {
        Self::with_bound(spec, DEFAULT_MAX_ORDER)
    }

    /// Shorthand for a shared context from a spec string.
    pub fn parse(s: &str) -> Result<Arc<Self>, GfError> {
        Ok(Arc::new(Self::new(s.parse()?)?))
    }

    pub fn with_bound(spec: FieldSpec, max_order: u64) -> Result<Self, GfError> {
        spec.validate_shape()?;
        let p = spec.p;
        let n = spec.n as usize;
        let q64 = (p as u64)
            .checked_pow(spec.n)
            .filter(|&q| q <= max_order && q <= u32::MAX as u64)
            .ok_or(GfError::TooLarge {
                p,
                n: spec.n,
                max: max_order,
            })?;
        let q = q64 as u32;
        let m = q - 1;

        // Walk α^t by repeated multiplication by x modulo the polynomial.
        let mut antilog = Vec::with_capacity(m as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut digits = vec![0u32; n];
        digits[0] = 1;
        for t in 0..m {
            let idx = pack(p, &digits);
            if idx == 0 || log[idx as usize] != NO_LOG {
                return Err(GfError::NotPrimitivePoly(spec.poly_string()));
            }
            log[idx as usize] = t;
            antilog.push(idx);
            let top = digits[n - 1];
            for i in (1..n).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            for (i, d) in digits.iter_mut().enumerate() {
                *d = (*d + (p - top) * spec.poly[i] % p) % p;
            }
        }
        if pack(p, &digits) != 1 {
            return Err(GfError::NotPrimitivePoly(spec.poly_string()));
        }

        let neg: Vec<u32> = (0..q).map(|x| neg_digits(p, q, x)).collect();
        let zech = if p == 2 {
            Vec::new()
        } else {
            antilog
                .iter()
                .map(|&a| {
                    let s = add_digits(p, q, 1, a);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        };

        let mut ctx = FieldCtx {
            spec,
            order: q,
            antilog,
            log,
            zech,
            neg,
            trace: Vec::new(),
        };
        let trace = (0..q)
            .map(|x| {
                let mut acc = FieldElem::ZERO;
                let mut y = FieldElem(x);
                for _ in 0..n {
                    acc = ctx.add(acc, y);
                    y = ctx.pow(y, p as u64);
                }
                debug_assert!(acc.0 < p, "trace left the prime subfield");
                acc.0
            })
            .collect();
        ctx.trace = trace;
        Ok(ctx)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.spec.n
    }

    /// Number of elements, p^n.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.order as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.order).map(FieldElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.order).map(FieldElem)
    }

    #[inline]
    pub fn contains(&self, x: FieldElem) -> bool {
        x.0 < self.order
    }

    /// The primitive element α (root of the defining polynomial).
    pub fn primitive(&self) -> FieldElem {
        self.exp(1)
    }

    /// α^t, with t taken modulo p^n − 1.
    #[inline]
    pub fn exp(&self, t: u64) -> FieldElem {
        FieldElem(self.antilog[(t % (self.order as u64 - 1)) as usize])
    }

    /// Discrete logarithm base α; `None` at zero.
    #[inline]
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        match self.log[x.index()] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// The prime-subfield element k·1.
    pub fn from_int(&self, k: i64) -> FieldElem {
        FieldElem(k.rem_euclid(self.p() as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.spec.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let m = self.order - 1;
        let la = self.log[a.index()];
        let lb = self.log[b.index()];
        let k = if lb >= la { lb - la } else { lb + m - la };
        match self.zech[k as usize] {
            NO_LOG => FieldElem::ZERO,
            z => FieldElem(self.antilog[((la as u64 + z as u64) % m as u64) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let m = self.order - 1;
        let s = self.log[a.index()] + self.log[b.index()];
        FieldElem(self.antilog[(if s >= m { s - m } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, GfError> {
        match self.log(a) {
            None => Err(GfError::DivisionByZero),
            Some(0) => Ok(FieldElem::ONE),
            Some(l) => Ok(FieldElem(self.antilog[(self.order - 1 - l) as usize])),
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^e with the convention 0^0 = 1.
    #[inline]
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        match self.log(a) {
            None => FieldElem::ZERO,
            Some(l) => self.exp(l as u64 * (e % (self.order as u64 - 1))),
        }
    }

    /// a^{p^i}.
    pub fn frobenius(&self, a: FieldElem, i: u32) -> FieldElem {
        let e = (self.p() as u64).pow(i % self.n());
        self.pow(a, e)
    }

    /// Absolute trace Tr_n(x) as an integer in `[0, p)`.
    #[inline]
    pub fn abs_trace(&self, x: FieldElem) -> u32 {
        self.trace[x.index()]
    }

    /// Coordinates (a_0, …, a_{n-1}) of x in the basis {1, α, …, α^{n-1}}.
    pub fn coords(&self, x: FieldElem) -> Vec<u32> {
        unpack(self.p(), self.n(), x.0)
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElem {
        FieldElem(pack(self.p(), coords))
    }

    /// Evaluates a polynomial with prime-subfield coefficients (low to high) at x.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: FieldElem) -> FieldElem {
        coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), FieldElem(c % self.p()))
        })
    }
}

/// The digit map σ: GF(p^m) → Z_{p^m}, σ(Σ a_i α^i) = Σ a_i p^i, taken over
/// the polynomial basis of `ctx`. With the packed encoding this is the index.
#[inline]
pub fn sigma(ctx: &FieldCtx, y: FieldElem) -> u32 {
    debug_assert!(ctx.contains(y));
    y.0
}

/// Inverse of [`sigma`].
pub fn sigma_inv(ctx: &FieldCtx, j: u32) -> Option<FieldElem> {
    (j < ctx.order()).then_some(FieldElem(j))
}

/// Description of the basis σ reads coordinates in.
pub fn sigma_basis(ctx: &FieldCtx) -> String {
    let terms: Vec<String> = (0..ctx.n())
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    format!(
        "{{{}}} with g a root of {}",
        terms.join(", "),
        ctx.spec().poly_string()
    )
}

/// An injective ring map GF(p^m) → GF(p^n), m | n.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    sub: Arc<FieldCtx>,
    big: FieldSpec,
    table: Vec<FieldElem>,
    back: Vec<u32>,
    generator_image: FieldElem,
}

impl SubfieldEmbedding {
    pub fn new(big: &FieldCtx, sub: Arc<FieldCtx>) -> Result<Self, GfError> {
        if big.p() != sub.p() || !big.n().is_multiple_of(sub.n()) {
            return Err(GfError::DegreeMismatch(format!(
                "GF({}^{}) is not a subfield of GF({}^{})",
                sub.p(),
                sub.n(),
                big.p(),
                big.n()
            )));
        }
        let qm = sub.order() as u64;
        let step = (big.order() as u64 - 1) / (qm - 1);
        let beta_log = step % (big.order() as u64 - 1);

        // α^{step} generates the image's multiplicative group; pick the first
        // generator that is also a root of the subfield's defining polynomial.
        let root = (1..=qm - 1)
            .filter(|t| t.gcd(&(qm - 1)) == 1)
            .map(|t| big.exp(beta_log * t))
            .find(|&g| big.eval_prime_poly(&sub.spec().poly, g).is_zero())
            .ok_or_else(|| {
                GfError::EmbeddingInconsistent(format!(
                    "no root of {} of order {} in GF({}^{})",
                    sub.spec().poly_string(),
                    qm - 1,
                    big.p(),
                    big.n()
                ))
            })?;

        let mut table = vec![FieldElem::ZERO; sub.size()];
        let mut back = vec![NO_LOG; big.size()];
        for t in 0..qm - 1 {
            let s = sub.exp(t);
            table[s.index()] = big.pow(root, t);
        }
        for (s, &b) in table.iter().enumerate() {
            if back[b.index()] != NO_LOG {
                return Err(GfError::EmbeddingInconsistent(
                    "map is not injective".into(),
                ));
            }
            back[b.index()] = s as u32;
        }
        let emb = SubfieldEmbedding {
            sub,
            big: big.spec().clone(),
            table,
            back,
            generator_image: root,
        };
        emb.verify(big)?;
        Ok(emb)
    }

    fn verify(&self, big: &FieldCtx) -> Result<(), GfError> {
        let sub = &self.sub;
        // The table must agree with the basis-linear map Σ a_i γ^i ↦ Σ a_i root^i.
        let powers: Vec<FieldElem> = (0..sub.n())
            .map(|i| big.pow(self.generator_image, i as u64))
            .collect();
        for s in sub.elements() {
            let lin = sub
                .coords(s)
                .iter()
                .zip(&powers)
                .fold(FieldElem::ZERO, |acc, (&a, &w)| {
                    big.add(acc, big.mul(FieldElem(a), w))
                });
            if lin != self.table[s.index()] {
                return Err(GfError::EmbeddingInconsistent(format!(
                    "not additive at {s}"
                )));
            }
        }
        if sub.order() <= 1024 {
            for a in sub.elements() {
                for b in sub.elements() {
                    let ea = self.embed(a);
                    let eb = self.embed(b);
                    if self.embed(sub.add(a, b)) != big.add(ea, eb)
                        || self.embed(sub.mul(a, b)) != big.mul(ea, eb)
                    {
                        return Err(GfError::EmbeddingInconsistent(format!(
                            "homomorphism fails at ({a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn sub(&self) -> &Arc<FieldCtx> {
        &self.sub
    }

    pub fn big_spec(&self) -> &FieldSpec {
        &self.big
    }

    /// Image of the subfield's primitive element.
    pub fn generator_image(&self) -> FieldElem {
        self.generator_image
    }

    #[inline]
    pub fn embed(&self, s: FieldElem) -> FieldElem {
        self.table[s.index()]
    }

    /// Preimage of a big-field element, if it lies in the image.
    #[inline]
    pub fn restrict(&self, x: FieldElem) -> Option<FieldElem> {
        match self.back[x.index()] {
            NO_LOG => None,
            s => Some(FieldElem(s)),
        }
    }

    pub fn image(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.table.iter().copied()
    }

    fn check_big(&self, ctx: &FieldCtx) -> Result<(), GfError> {
        if ctx.spec() != &self.big {
            return Err(GfError::DegreeMismatch(format!(
                "embedding targets {} but context is {}",
                self.big,
                ctx.spec()
            )));
        }
        Ok(())
    }

    /// Relative trace Tr_{p^n/p^m}(x) = Σ_{i < n/m} x^{p^{mi}}, returned in
    /// subfield coordinates.
    pub fn rel_trace(&self, ctx: &FieldCtx, x: FieldElem) -> Result<FieldElem, GfError> {
        self.check_big(ctx)?;
        let m = self.sub.n();
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..ctx.n() / m {
            acc = ctx.add(acc, y);
            y = ctx.frobenius(y, m);
        }
        self.restrict(acc).ok_or_else(|| {
            GfError::EmbeddingInconsistent(format!("trace of {x} left the subfield"))
        })
    }
}

/// Convenience wrapper for [`SubfieldEmbedding::new`].
pub fn subfield_embedding(
    big: &FieldCtx,
    sub: Arc<FieldCtx>,
) -> Result<SubfieldEmbedding, GfError> {
    SubfieldEmbedding::new(big, sub)
}

/// Smallest generator of (Z/p)^*, for primes small enough to brute force.
fn least_primitive_root(p: u32) -> Option<u32> {
    if p == 2 {
        return Some(1);
    }
    if p > 1 << 16 {
        return None;
    }
    (2..p).find(|&g| {
        let mut x = 1u64;
        for k in 1..p - 1 {
            x = x * g as u64 % p as u64;
            if x == 1 && k < p - 1 {
                return false;
            }
        }
        true
    })
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pack(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn unpack(p: u32, n: u32, mut x: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn add_digits(p: u32, q: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while place < q {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn neg_digits(p: u32, q: u32, mut a: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while place < q {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}
