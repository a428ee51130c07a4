//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element of Q(ζ_n) is stored in the power basis 1, ζ, …, ζ^{φ(n)−1} of
//! Q[x]/Φ_n(x) as an integer numerator vector over one positive common
//! denominator. Operands of different orders are embedded into Q(ζ_lcm)
//! before any arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Rational numbers, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("cannot parse scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Per-order tables: Φ_n and the reductions of x^j modulo Φ_n for j < n.
#[derive(Debug)]
pub struct FieldData {
    pub order: u32,
    pub phi: usize,
    /// Coefficients of Φ_n, constant term first; monic of degree φ(n).
    pub cyclotomic: Vec<i64>,
    powers: Vec<Vec<i64>>,
    units: Vec<u32>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Returns the (cached) tables for Q(ζ_n).
pub fn field(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(f) = cache().read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let data = Arc::new(build_field(n));
    let mut w = cache().write().expect("field cache poisoned");
    w.entry(n).or_insert(data).clone()
}

/// Φ_n by exact division of x^n − 1 by Φ_d for the proper divisors d of n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    field(n).cyclotomic.clone()
}

fn build_cyclotomic(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = field(d).cyclotomic.clone();
            num = divide_monic(&num, &phi_d);
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "cyclotomic division not exact");
    q
}

fn build_field(n: u32) -> FieldData {
    let cyc = if n == 1 { vec![-1, 1] } else { build_cyclotomic(n) };
    let phi = cyc.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce x^phi = -(c_0 + ... + c_{phi-1} x^{phi-1})
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1] - top * cyc[i];
        }
        cur[0] = -top * cyc[0];
    }
    let units = (1..=n.max(1)).filter(|&k| k.gcd(&n) == 1).map(|k| k % n.max(1)).collect();
    FieldData { order: n, phi, cyclotomic: cyc, powers, units }
}

impl FieldData {
    /// x^j reduced modulo Φ_n, for any j ≥ 0.
    pub fn power(&self, j: u64) -> &[i64] {
        &self.powers[(j % self.order as u64) as usize]
    }
}

/// Euler's totient.
pub fn phi(n: u32) -> usize {
    field(n).phi
}

/// An exact element of Q(ζ_n).
#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    fn from_parts(order: u32, num: Vec<BigInt>, den: BigInt) -> Cyclo {
        let mut c = Cyclo { order, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero() -> Cyclo {
        Cyclo { order: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Cyclo {
        Cyclo::from_int(1)
    }

    pub fn from_int(v: i64) -> Cyclo {
        Cyclo { order: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_rational(r: &Rational) -> Cyclo {
        Cyclo::from_parts(1, vec![r.numer().clone()], r.denom().clone())
    }

    pub fn from_frac(p: i64, q: i64) -> Cyclo {
        assert!(q != 0, "zero denominator");
        Cyclo::from_parts(1, vec![BigInt::from(p)], BigInt::from(q))
    }

    /// ζ_n^k in canonical form.
    pub fn root_of_unity(n: u32, k: i64) -> Cyclo {
        assert!(n >= 1, "root of unity order must be positive");
        let f = field(n);
        let e = k.rem_euclid(n as i64) as u64;
        let num = f.power(e).iter().map(|&c| BigInt::from(c)).collect();
        Cyclo { order: n, num, den: BigInt::one() }
    }

    /// Builds an element from rational coordinates in the power basis of Q(ζ_n).
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Cyclo {
        let p = phi(n);
        assert_eq!(coeffs.len(), p, "coefficient count must equal phi(n)");
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Cyclo::from_parts(n, num, den)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Power-basis coordinates as rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|x| Rational::new(x.clone(), self.den.clone())).collect()
    }

    /// Integer numerators and common denominator, the canonical hash key.
    pub fn raw(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Embeds into Q(ζ_m); `m` must be a multiple of the current order.
    pub fn promote(&self, m: u32) -> Cyclo {
        if m == self.order {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.order), "cannot embed Q(zeta_{}) into Q(zeta_{m})", self.order);
        let step = (m / self.order) as u64;
        let f = field(m);
        let mut out = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(f.power(i as u64 * step)) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        Cyclo { order: m, num: out, den: self.den.clone() }
    }

    /// Both operands embedded into Q(ζ_lcm).
    pub fn to_common_order(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = a.order.lcm(&b.order);
        (a.promote(m), b.promote(m))
    }

    fn add_same(&self, o: &Cyclo, sign: i32) -> Cyclo {
        let num: Vec<BigInt> = if self.den == o.den {
            self.num
                .iter()
                .zip(&o.num)
                .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&o.num)
                .map(|(a, b)| {
                    let l = a * &o.den;
                    let r = b * &self.den;
                    if sign > 0 {
                        l + r
                    } else {
                        l - r
                    }
                })
                .collect()
        };
        let den = if self.den == o.den { self.den.clone() } else { &self.den * &o.den };
        Cyclo::from_parts(self.order, num, den)
    }

    fn mul_same(&self, o: &Cyclo) -> Cyclo {
        let f = field(self.order);
        let p = f.phi;
        if p == 1 {
            return Cyclo::from_parts(self.order, vec![&self.num[0] * &o.num[0]], &self.den * &o.den);
        }
        let mut prod = vec![BigInt::zero(); 2 * p - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = prod[..p].to_vec();
        for (k, c) in prod.iter().enumerate().skip(p) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(f.power(k as u64)) {
                if r != 0 {
                    *o += c * r;
                }
            }
        }
        Cyclo::from_parts(self.order, out, &self.den * &o.den)
    }

    fn binop(&self, o: &Cyclo, op: impl Fn(&Cyclo, &Cyclo) -> Cyclo) -> Cyclo {
        if self.order == o.order {
            op(self, o)
        } else {
            let (a, b) = Cyclo::to_common_order(self, o);
            op(&a, &b)
        }
    }

    /// Multiplication by a rational number, without promotion.
    pub fn scale(&self, r: &Rational) -> Cyclo {
        let num = self.num.iter().map(|x| x * r.numer()).collect();
        Cyclo::from_parts(self.order, num, &self.den * r.denom())
    }

    /// The Galois automorphism ζ ↦ ζ^k (k coprime to the order).
    pub fn galois(&self, k: i64) -> Cyclo {
        let n = self.order as i64;
        let kk = k.rem_euclid(n.max(1)) as u64;
        let f = field(self.order);
        let mut out = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(f.power(i as u64 * kk)) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        Cyclo::from_parts(self.order, out, self.den.clone())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let f = field(self.order);
        let mut acc = self.clone();
        for &k in &f.units {
            if k != 1 % self.order.max(1) {
                acc = acc.mul_same(&self.galois(k as i64));
            }
        }
        acc.as_rational().expect("norm must be rational")
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Result<Cyclo, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Cyclo::from_parts(1, vec![self.den.clone()], self.num[0].clone()));
        }
        let f = field(self.order);
        let mut others = Cyclo::one().promote(self.order);
        for &k in &f.units {
            if k != 1 {
                others = others.mul_same(&self.galois(k as i64));
            }
        }
        let n = self.mul_same(&others).as_rational().expect("norm must be rational");
        Ok(others.scale(&n.recip()))
    }

    pub fn checked_div(&self, o: &Cyclo) -> Result<Cyclo, FieldError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Cyclo, FieldError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one().promote(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        Ok(acc)
    }

    /// The exponent k with self = ζ_m^k, if self is an m-th root of unity.
    pub fn root_exponent(&self, m: u32) -> Option<u32> {
        (0..m).find(|&k| *self == Cyclo::root_of_unity(m, k as i64))
    }

    /// Smallest d ≥ 1 with self^d = 1, searched up to `bound`.
    pub fn multiplicative_order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for d in 1..=bound {
            if acc.is_one() {
                return Some(d);
            }
            acc = &acc * self;
        }
        None
    }

    /// Image in F_p under ζ_n ↦ the smallest element of exact order n in F_p^*.
    pub fn reduce_mod_prime(&self, p: u64) -> Result<u64, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::BadPrime { p, reason: "not a prime".into() });
        }
        let rational = self.num[1..].iter().all(Zero::is_zero);
        let n = if rational { 1 } else { self.order as u64 };
        if !(p - 1).is_multiple_of(n) {
            return Err(FieldError::BadPrime { p, reason: format!("p is not 1 mod {n}") });
        }
        let pb = BigInt::from(p);
        let den = self.den.mod_floor(&pb).to_u64().unwrap_or(0);
        if den == 0 {
            return Err(FieldError::BadPrime { p, reason: "p divides a denominator".into() });
        }
        let r = primitive_root_of_order(p, n);
        let mut acc = 0u64;
        let mut rp = 1u64;
        for c in &self.num {
            let cm = c.mod_floor(&pb).to_u64().unwrap_or(0);
            acc = (acc + mul_mod(cm, rp, p)) % p;
            rp = mul_mod(rp, r, p);
        }
        Ok(mul_mod(acc, pow_mod(den, p - 2, p), p))
    }

    /// The expression this element prints as in the scalar syntax.
    pub fn to_expr(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest element of exact multiplicative order n in F_p^* (requires n | p − 1).
pub fn primitive_root_of_order(p: u64, n: u64) -> u64 {
    let qs = prime_factors(n);
    (1..p)
        .find(|&x| pow_mod(x, n, p) == 1 && qs.iter().all(|&q| pow_mod(x, n / q, p) != 1))
        .expect("an element of order n exists when n divides p - 1")
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        if self.order == o.order {
            self.den == o.den && self.num == o.num
        } else {
            let (a, b) = Cyclo::to_common_order(self, o);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for Cyclo {}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_int(v)
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(&r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                self.binop(o, $body)
            }
        }
        impl std::ops::$tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: Cyclo) -> Cyclo {
                (&self).binop(&o, $body)
            }
        }
        impl std::ops::$tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, o: &Cyclo) -> Cyclo {
                (&self).binop(o, $body)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclo, b: &Cyclo| a.add_same(b, 1));
forward_binop!(Sub, sub, |a: &Cyclo, b: &Cyclo| a.add_same(b, -1));
forward_binop!(Mul, mul, |a: &Cyclo, b: &Cyclo| a.mul_same(b));

impl std::ops::Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }
}

impl std::ops::Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl std::ops::AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, o: &Cyclo) {
        *self = &*self + o;
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |a, b| a + b)
    }
}

/// Applies one of `add`, `sub`, `mul`, `div` by name.
pub fn arithmetic(a: &Cyclo, b: &Cyclo, op: &str) -> Result<Cyclo, FieldError> {
    match op {
        "add" => Ok(a + b),
        "sub" => Ok(a - b),
        "mul" => Ok(a * b),
        "div" => a.checked_div(b),
        other => Err(FieldError::Parse { input: other.into(), reason: "unknown operator".into() }),
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = if i == 0 {
                fmt_rational(&a)
            } else if a.is_one() {
                format!("z{}^{}", self.order, i)
            } else {
                format!("{}*z{}^{}", fmt_rational(&a), self.order, i)
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Cyclo {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Cyclo, FieldError> {
        parse_scalar(s)
    }
}

/// Parses the scalar syntax: integers, `p/q`, `z<n>^<k>`, `+ - * /` and parentheses.
pub fn parse_scalar(s: &str) -> Result<Cyclo, FieldError> {
    let toks = tokenize(s).map_err(|reason| FieldError::Parse { input: s.into(), reason })?;
    let mut p = ScalarParser { toks: &toks, pos: 0, src: s };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Root(u32, i64),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(t.parse().map_err(|_| "bad integer".to_string())?));
        } else if c == 'z' {
            i += 1;
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: u32 = cs[st..i].iter().collect::<String>().parse().map_err(|_| "bad root order".to_string())?;
            if n == 0 {
                return Err("root order must be positive".into());
            }
            let mut k = 1i64;
            if i < cs.len() && cs[i] == '^' {
                i += 1;
                let neg = i < cs.len() && cs[i] == '-';
                if neg {
                    i += 1;
                }
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                k = cs[st..i].iter().collect::<String>().parse().map_err(|_| "bad root exponent".to_string())?;
                if neg {
                    k = -k;
                }
            }
            out.push(Tok::Root(n, k));
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct ScalarParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl ScalarParser<'_> {
    fn err(&self, reason: &str) -> FieldError {
        FieldError::Parse { input: self.src.into(), reason: reason.into() }
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Cyclo, FieldError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Cyclo, FieldError> {
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let t = self.factor()?;
            acc = if c == '*' { acc * t } else { acc.checked_div(&t)? };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyclo, FieldError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.factor()
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Cyclo { order: 1, num: vec![v], den: BigInt::one() })
            }
            Some(Tok::Root(n, k)) => {
                self.pos += 1;
                Ok(Cyclo::root_of_unity(n, k))
            }
            _ => Err(self.err("expected a number, root of unity or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn roots_of_unity() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(3, 1) + z(3, 2), Cyclo::from_int(-1));
        assert_eq!(z(4, 1) * z(4, 1), Cyclo::from_int(-1));
        assert!((z(7, 3) * z(7, 4)).is_one());
        assert_eq!(Cyclo::one().checked_div(&z(5, 1)).unwrap(), z(5, 4));
        assert_eq!(Cyclo::from_frac(1, 2) + Cyclo::from_frac(1, 3), Cyclo::from_frac(5, 6));
    }

    #[test]
    fn common_order() {
        let (a, b) = Cyclo::to_common_order(&z(2, 1), &z(3, 1));
        assert_eq!(a.order(), 6);
        assert_eq!(b.order(), 6);
        assert_eq!(a, z(6, 3));
        let (a, b) = Cyclo::to_common_order(&Cyclo::one(), &z(7, 1));
        assert_eq!((a.order(), b.order()), (7, 7));
        assert_eq!(z(4, 1), z(8, 2));
        assert_eq!(z(3, 1) * z(4, 1), z(12, 7));
    }

    #[test]
    fn inverse_and_division() {
        let a = z(15, 1) + Cyclo::from_frac(2, 3) * z(15, 4);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Cyclo::zero().inv(), Err(FieldError::DivisionByZero));
        assert!(arithmetic(&a, &Cyclo::zero(), "div").is_err());
    }

    #[test]
    fn mod_prime() {
        assert_eq!(Cyclo::one().reduce_mod_prime(13).unwrap(), 1);
        assert_eq!(z(3, 1).reduce_mod_prime(13).unwrap(), 3);
        assert_eq!(Cyclo::from_frac(1, 2).reduce_mod_prime(7).unwrap(), 4);
        assert!(z(3, 1).reduce_mod_prime(11).is_err());
        assert!(Cyclo::from_frac(1, 7).reduce_mod_prime(7).is_err());
    }

    #[test]
    fn print_and_parse() {
        let a: Cyclo = "2/5 - 3/5*z15^2 + 2/5*z15^3".parse().unwrap();
        assert_eq!(a.to_string(), "2/5 - 3/5*z15^2 + 2/5*z15^3");
        let b: Cyclo = "1/(z3^1 - z3^2)".parse().unwrap();
        assert_eq!(b * (z(3, 1) - z(3, 2)), Cyclo::one());
        assert_eq!("-z4^1 * z4".parse::<Cyclo>().unwrap(), Cyclo::one());
        assert_eq!(Cyclo::zero().to_string(), "0");
        assert!("1/0".parse::<Cyclo>().is_err());
        assert!("x".parse::<Cyclo>().is_err());
    }

    #[test]
    fn sqrt_minus_seven() {
        let s = Cyclo::from_int(2) * (z(7, 1) + z(7, 2) + z(7, 4)) + Cyclo::one();
        assert_eq!(&s * &s, Cyclo::from_int(-7));
    }
}
