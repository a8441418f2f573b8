//! Univariate rational functions in d over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial in d with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyD {
    coeffs: Vec<BigRational>,
}

impl PolyD {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from(BigInt::from(c)))
    }

    /// The linear polynomial `a*d + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        let mut p = Self {
            coeffs: vec![
                BigRational::from(BigInt::from(b)),
                BigRational::from(BigInt::from(a)),
            ],
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        p.trim();
        p
    }

    /// Quotient and remainder of polynomial division.
    pub fn div_rem(&self, den: &Self) -> (Self, Self) {
        assert!(!den.is_zero(), "division by zero polynomial");
        let dl = den.leading().unwrap().clone();
        let dd = den.degree().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &dl;
            let shift = rd - dd;
            quo[shift] = c.clone();
            for (i, dc) in den.coeffs.iter().enumerate() {
                rem.coeffs[i + shift] -= dc * &c;
            }
            rem.trim();
        }
        let mut q = Self { coeffs: quo };
        q.trim();
        (q, rem)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if let Some(l) = a.leading().cloned() {
            a = a.scale(&l.recip());
        }
        a
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Synthetic division by `(d - at)`: returns the quotient; the remainder
    /// is `self(at)`.
    pub fn deflate(&self, at: &BigRational) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut carry = BigRational::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &carry * at;
            if i > 0 {
                out[i - 1] = v.clone();
            }
            carry = v;
        }
        let mut p = Self { coeffs: out };
        p.trim();
        p
    }

    /// Multiplicity of `at` as a root.
    pub fn root_multiplicity(&self, at: &BigRational) -> usize {
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() && p.eval(at).is_zero() {
            p = p.deflate(at);
            m += 1;
        }
        m
    }
}

impl fmt::Display for PolyD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "d")?,
                (1, false) => write!(f, "{a}*d")?,
                (_, true) => write!(f, "d^{e}")?,
                (_, false) => write!(f, "{a}*d^{e}")?,
            }
        }
        Ok(())
    }
}

/// A reduced rational function in d: numerator over a monic denominator with
/// no common factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionD {
    num: PolyD,
    den: PolyD,
}

impl RationalFunctionD {
    pub fn new(num: PolyD, den: PolyD) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut num = num;
        let mut den = den;
        if num.is_zero() {
            return Self { num, den: PolyD::one() };
        }
        let g = num.gcd(&den);
        if g.degree().map_or(false, |d| d > 0) {
            num = num.div_rem(&g).0;
            den = den.div_rem(&g).0;
        }
        let lead = den.leading().unwrap().clone();
        Self { num: num.scale(&lead.recip()), den: den.scale(&lead.recip()) }
    }

    pub fn zero() -> Self {
        Self { num: PolyD::zero(), den: PolyD::one() }
    }

    pub fn from_poly(p: PolyD) -> Self {
        Self::new(p, PolyD::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(PolyD::constant(c))
    }

    /// `1 / (a*d + b)`.
    pub fn inv_linear(a: i64, b: i64) -> Self {
        Self::new(PolyD::one(), PolyD::linear(a, b))
    }

    pub fn num(&self) -> &PolyD {
        &self.num
    }

    pub fn den(&self) -> &PolyD {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }
}

impl fmt::Display for RationalFunctionD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == PolyD::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Pole order, leading Laurent coefficient, and (for simple poles) residue
/// of `f` at `d0`.
pub fn laurent_at_pole(
    f: &RationalFunctionD,
    d0: &BigRational,
) -> (usize, BigRational, Option<BigRational>) {
    if f.is_zero() {
        return (0, BigRational::zero(), None);
    }
    let order = f.den.root_multiplicity(d0);
    let mut den = f.den.clone();
    for _ in 0..order {
        den = den.deflate(d0);
    }
    let leading = f.num.eval(d0) / den.eval(d0);
    let residue = if order == 1 { Some(leading.clone()) } else { None };
    (order, leading, residue)
}
