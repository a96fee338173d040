//! Exact rationals, one-sided slopes, the winding function `W` and the
//! double-counting functions for integers in scaled intervals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored reduced with positive denominator.
pub type Rational = BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"` or `"a/b"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Which side of the exact value a slope sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Below,
    At,
    Above,
}

impl Side {
    fn sign(self) -> i64 {
        match self {
            Side::Below => -1,
            Side::At => 0,
            Side::Above => 1,
        }
    }
}

/// A non-negative rational slope, possibly perturbed infinitesimally
/// to one side. `0+` is the base slope; `0-` does not exist.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    value: Rational,
    side: Side,
}

impl Slope {
    pub fn new(value: Rational, side: Side) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidInput(format!(
                "negative slope {}",
                fmt_rational(&value)
            )));
        }
        if value.is_zero() && side == Side::Below {
            return Err(Error::InvalidInput("slope 0- is not allowed".into()));
        }
        Ok(Slope { value, side })
    }

    pub fn above(value: Rational) -> Self {
        Slope::new(value, Side::Above).expect("non-negative slope")
    }

    pub fn at(value: Rational) -> Self {
        Slope::new(value, Side::At).expect("non-negative slope")
    }

    pub fn below(value: Rational) -> Self {
        Slope::new(value, Side::Below).expect("positive slope")
    }

    /// The base slope `0+`.
    pub fn base() -> Self {
        Slope::above(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// True when the slope is perturbed off its exact value.
    pub fn is_generic(&self) -> bool {
        self.side != Side::At
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.side.cmp(&other.side))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.side {
            Side::Below => "-",
            Side::At => "",
            Side::Above => "+",
        };
        write!(f, "{}{}", fmt_rational(&self.value), suffix)
    }
}

impl serde::Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (body, side) = if let Some(b) = t.strip_suffix('+') {
            (b, Side::Above)
        } else if let Some(b) = t.strip_suffix('-') {
            (b, Side::Below)
        } else {
            (t, Side::At)
        };
        if body.is_empty() || body.starts_with('-') || body.starts_with('+') {
            return Err(Error::Parse(format!("malformed slope {s:?}")));
        }
        let value =
            parse_rational(body).map_err(|_| Error::Parse(format!("malformed slope {s:?}")))?;
        Slope::new(value, side)
    }
}

/// Parses a comma separated slope list such as `0+,1/5+,1/3+`.
pub fn parse_slope_list(text: &str) -> Result<Vec<Slope>> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// `W(x) = 2 floor(x) + 1` off the integers and `2x` on them.
pub fn w_index(x: &Rational) -> BigInt {
    if x.is_integer() {
        x.to_integer() * 2
    } else {
        x.floor().to_integer() * 2 + 1
    }
}

/// `W(s k)` where the slope perturbation moves the product to the side
/// given by `s` scaled by the sign of `k`.
pub fn w_at(s: &Slope, k: i64) -> BigInt {
    let x = &s.value * BigInt::from(k);
    let base = w_index(&x);
    if x.is_integer() {
        base + BigInt::from(k.signum() * s.side.sign())
    } else {
        base
    }
}

/// Small-integer convenience wrapper around [`w_at`].
pub fn w_at_i64(s: &Slope, k: i64) -> i64 {
    w_at(s, k).to_i64().expect("winding value exceeds i64")
}

/// An interval of rationals with independently open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSpec {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl IntervalSpec {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        // (a, a] and friends are kept representable; they count as empty.
        if lo > hi {
            return Err(Error::InvalidInput("interval with lo > hi".into()));
        }
        Ok(IntervalSpec {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    /// Endpoint weights for double counting: 1 when closed, 0 when open.
    fn weights(&self) -> (u8, u8) {
        (u8::from(self.lo_closed), u8::from(self.hi_closed))
    }
}

/// Double count of integers `j` in `[a, b]` with `d | j`, where interior
/// points weigh 2 and endpoints weigh as given.
fn weighted_multiples(a: &Rational, b: &Rational, wa: u8, wb: u8, d: &BigInt) -> BigInt {
    if a > b {
        return BigInt::zero();
    }
    let da = a / Rational::from_integer(d.clone());
    let db = b / Rational::from_integer(d.clone());
    if a == b {
        return if da.is_integer() && wa > 0 && wb > 0 {
            BigInt::from(wa + wb)
        } else {
            BigInt::zero()
        };
    }
    // multiples of d strictly inside (a, b) correspond to integers in (da, db)
    let interior: BigInt = db.ceil().to_integer() - da.floor().to_integer() - 1;
    let interior = if interior.is_negative() {
        BigInt::zero()
    } else {
        interior
    };
    let mut total = interior * 2;
    if da.is_integer() {
        total += wa;
    }
    if db.is_integer() {
        total += wb;
    }
    total
}

/// Double count over `m * [lo, hi]` with explicit endpoint weights
/// (0, 1 or 2). Used with weight 2 to emulate a slope just above `hi`.
pub fn n_count_weighted(m: u64, lo: &Rational, hi: &Rational, wlo: u8, whi: u8) -> BigInt {
    let mq = Rational::from_integer(BigInt::from(m));
    weighted_multiples(&(lo * &mq), &(hi * &mq), wlo, whi, &BigInt::one())
}

/// Coprime-restricted analogue of [`n_count_weighted`], via Möbius inversion
/// over the squarefree divisors of `m`.
pub fn c_count_weighted(m: u64, lo: &Rational, hi: &Rational, wlo: u8, whi: u8) -> BigInt {
    let mq = Rational::from_integer(BigInt::from(m));
    let (a, b) = (lo * &mq, hi * &mq);
    let primes = prime_factors(m);
    let mut total = BigInt::zero();
    for mask in 0u32..(1u32 << primes.len()) {
        let mut d = 1u64;
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= p;
            }
        }
        let term = weighted_multiples(&a, &b, wlo, whi, &BigInt::from(d));
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Double count of integers in `m * I`: interior points count twice,
/// included endpoints once, excluded endpoints not at all.
pub fn n_count(m: u64, iv: &IntervalSpec) -> u64 {
    assert!(m >= 1, "n_count needs m >= 1");
    if iv.is_empty() {
        return 0;
    }
    let (wa, wb) = iv.weights();
    n_count_weighted(m, &iv.lo, &iv.hi, wa, wb)
        .to_u64()
        .expect("count exceeds u64")
}

/// As [`n_count`] but only integers coprime to `m` are counted.
pub fn c_count(m: u64, iv: &IntervalSpec) -> u64 {
    assert!(m >= 1, "c_count needs m >= 1");
    if iv.is_empty() {
        return 0;
    }
    let (wa, wb) = iv.weights();
    c_count_weighted(m, &iv.lo, &iv.hi, wa, wb)
        .to_u64()
        .expect("count exceeds u64")
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Reduced fractions `k/m` in `(0, up_to]` for the given denominators.
pub fn fractions_with_denominators(dens: impl IntoIterator<Item = u64>, up_to: &Rational) -> Vec<Rational> {
    let mut out = std::collections::BTreeSet::new();
    for m in dens {
        if m == 0 {
            continue;
        }
        let mq = BigInt::from(m);
        let top = (up_to * Rational::from_integer(mq.clone())).floor().to_integer();
        let mut k = BigInt::one();
        while k <= top {
            out.insert(Rational::new(k.clone(), mq.clone()));
            k += 1;
        }
    }
    out.into_iter().collect()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
