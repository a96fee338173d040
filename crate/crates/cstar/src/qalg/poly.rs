//! Polynomials in `T` with rational coefficients and their fraction field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::numerics::{fmt_rational, int, Rational};

/// Dense coefficient vector, lowest power first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyT {
    coeffs: Vec<Rational>,
}

impl PolyT {
    pub fn zero() -> Self {
        PolyT { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c T^e`.
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = c;
        Self::from_coeffs(v)
    }

    pub fn t() -> Self {
        Self::monomial(int(1), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyT { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponent of the lowest nonzero term; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `T^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); e];
        v.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(v)
    }

    /// Divide by `T^e`; the low coefficients must vanish.
    pub fn unshift(&self, e: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(e).all(Zero::is_zero));
        Self::from_coeffs(self.coeffs.iter().skip(e).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor; zero only when both are zero.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &PolyT {
    type Output = PolyT;
    fn add(self, o: &PolyT) -> PolyT {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyT::from_coeffs((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &PolyT {
    type Output = PolyT;
    fn sub(self, o: &PolyT) -> PolyT {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyT::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &PolyT {
    type Output = PolyT;
    fn mul(self, o: &PolyT) -> PolyT {
        if self.is_zero() || o.is_zero() {
            return PolyT::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        PolyT::from_coeffs(v)
    }
}

impl Neg for &PolyT {
    type Output = PolyT;
    fn neg(self) -> PolyT {
        PolyT::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{}", fmt_rational(&a))?,
                (_, true) => {}
                (_, false) => write!(f, "{}", fmt_rational(&a))?,
            }
            match e {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{e}")?,
            }
        }
        Ok(())
    }
}

/// Rational function `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracT {
    num: PolyT,
    den: PolyT,
}

impl FracT {
    pub fn new(num: PolyT, den: PolyT) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = PolyT::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading();
        let inv = Rational::one() / lead;
        FracT {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        FracT {
            num: PolyT::zero(),
            den: PolyT::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyT::one())
    }

    pub fn from_poly(p: PolyT) -> Self {
        FracT {
            num: p,
            den: PolyT::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(PolyT::constant(c))
    }

    pub fn num(&self) -> &PolyT {
        &self.num
    }

    pub fn den(&self) -> &PolyT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&PolyT> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// T-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.valuation()? as i64 - self.den.valuation().unwrap() as i64)
    }

    /// Coefficient of the lowest T-power term.
    pub fn initial(&self) -> Rational {
        match (self.num.valuation(), self.den.valuation()) {
            (Some(a), Some(b)) => self.num.coeff(a) / self.den.coeff(b),
            _ => Rational::zero(),
        }
    }

    /// Value at `t`, or `None` when the denominator vanishes there.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }
}

impl Add for &FracT {
    type Output = FracT;
    fn add(self, o: &FracT) -> FracT {
        if self.den == o.den {
            return FracT::new(&self.num + &o.num, self.den.clone());
        }
        FracT::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &FracT {
    type Output = FracT;
    fn sub(self, o: &FracT) -> FracT {
        self + &(-o)
    }
}

impl Mul for &FracT {
    type Output = FracT;
    fn mul(self, o: &FracT) -> FracT {
        if self.is_zero() || o.is_zero() {
            return FracT::zero();
        }
        FracT::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &FracT {
    type Output = FracT;
    fn neg(self) -> FracT {
        FracT {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl PartialOrd for PolyT {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyT {
    /// Arbitrary total order used only for deterministic output.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for FracT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &PolyT| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
