//! Exact arithmetic in the scalar field `Q(i)(s)`, with `q = s^4`.
//!
//! Structure constants of the deformed algebras involve quarter powers of the
//! deformation parameter (the diagonal gauge matrix has entries `q^{±1/4}`),
//! so the atomic variable is `s` and integer powers of `q` are the special
//! case of exponents divisible by four. A [`Scalar`] is a reduced fraction of
//! Laurent polynomials in `s` over the Gaussian rationals; the canonical form
//! makes structural equality coincide with field equality.
//!
//! # Example
//!
//! ```
//! use qst_core::scalar::Scalar;
//!
//! let a: Scalar = "(1 - q^2)/(1 - q)".parse().unwrap();
//! let b: Scalar = "1 + q".parse().unwrap();
//! assert_eq!(a, b);
//!
//! // q^{1/2} is s^2
//! let h: Scalar = "(q - q^-1)/(s^2 - s^-2)".parse().unwrap();
//! assert_eq!(h, "s^2 + s^-2".parse().unwrap());
//! ```

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Gaussian rational `a + b·i` with exact rational parts.
pub type GRat = Complex<BigRational>;

/// `n` as a Gaussian rational.
pub fn gr_int(n: i64) -> GRat {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

/// `a/b` as a Gaussian rational. Panics if `b == 0`.
pub fn gr_rat(a: i64, b: i64) -> GRat {
    Complex::new(
        BigRational::new(BigInt::from(a), BigInt::from(b)),
        BigRational::zero(),
    )
}

/// `a + b·i` as a Gaussian rational.
pub fn gr_complex(a: i64, b: i64) -> GRat {
    Complex::new(
        BigRational::from_integer(BigInt::from(a)),
        BigRational::from_integer(BigInt::from(b)),
    )
}

/// The imaginary unit.
pub fn gr_i() -> GRat {
    Complex::new(BigRational::zero(), BigRational::one())
}

/// Which value the second deformation parameter `p` takes.
///
/// The twistor-level constructions come in two flavors, `p = q` and
/// `p = q^{-1}`; every check that mentions `p` is run for both.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PMode {
    /// `p = q`, so `p^{1/4} = s`.
    PEqQ,
    /// `p = q^{-1}`, so `p^{1/4} = s^{-1}`.
    PEqQInv,
}

impl PMode {
    /// `p^{k/4}` as a scalar.
    pub fn p_quarter(self, k: i64) -> Scalar {
        match self {
            PMode::PEqQ => Scalar::s_pow(k),
            PMode::PEqQInv => Scalar::s_pow(-k),
        }
    }

    /// `p^k` as a scalar.
    pub fn p_pow(self, k: i64) -> Scalar {
        self.p_quarter(4 * k)
    }

    pub fn name(self) -> &'static str {
        match self {
            PMode::PEqQ => "q",
            PMode::PEqQInv => "qinv",
        }
    }

    /// The other mode. Conjugation maps the `p = q` family onto `p = q^{-1}`.
    pub fn flip(self) -> PMode {
        match self {
            PMode::PEqQ => PMode::PEqQInv,
            PMode::PEqQInv => PMode::PEqQ,
        }
    }
}

/// `q^{k/4}` as a scalar, i.e. `s^k`.
pub fn q_quarter(k: i64) -> Scalar {
    Scalar::s_pow(k)
}

/// Laurent polynomial in `s` with Gaussian rational coefficients.
///
/// `coeffs[k]` holds the coefficient of `s^(lo + k)`. Invariant: `coeffs` is
/// empty exactly for zero, otherwise its first and last entries are nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SPoly {
    lo: i64,
    coeffs: Vec<GRat>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(gr_int(1), 0)
    }

    /// `c·s^e`.
    pub fn monomial(c: GRat, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SPoly { lo: e, coeffs: vec![c] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent carrying a nonzero coefficient. Zero for the zero polynomial.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent carrying a nonzero coefficient. `-1` offset applies only through `len`.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> GRat {
        if self.is_zero() || e < self.lo || e > self.hi() {
            gr_int(0)
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    fn from_parts(lo: i64, coeffs: Vec<GRat>) -> Self {
        SPoly { lo, coeffs }.trim()
    }

    fn trim(mut self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => SPoly::zero(),
            Some(f) => {
                let l = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(l + 1);
                self.coeffs.drain(..f);
                self.lo += f as i64;
                self
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut coeffs = vec![gr_int(0); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] = c.clone();
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let idx = (other.lo - lo) as usize + k;
            coeffs[idx] = coeffs[idx].clone() + c.clone();
        }
        Self::from_parts(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        SPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![gr_int(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in other.coeffs.iter().enumerate() {
                coeffs[a + b] = coeffs[a + b].clone() + ca.clone() * cb.clone();
            }
        }
        Self::from_parts(self.lo + other.lo, coeffs)
    }

    /// Multiply by `s^e`.
    pub fn shl(&self, e: i64) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            SPoly { lo: self.lo + e, coeffs: self.coeffs.clone() }
        }
    }

    pub fn scale(&self, c: &GRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Coefficient-wise complex conjugation; `s` is fixed.
    pub fn conj(&self) -> Self {
        SPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Value at `s = v`. `None` when `v = 0` meets a negative exponent.
    pub fn eval(&self, v: &GRat) -> Option<GRat> {
        if self.is_zero() {
            return Some(gr_int(0));
        }
        let mut acc = gr_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * v.clone() + c.clone();
        }
        if self.lo >= 0 {
            for _ in 0..self.lo {
                acc = acc * v.clone();
            }
            Some(acc)
        } else {
            if v.is_zero() {
                return None;
            }
            let vinv = v.inv();
            for _ in 0..(-self.lo) {
                acc = acc * vinv.clone();
            }
            Some(acc)
        }
    }
}

// Dense ordinary-polynomial helpers for gcd and exact division.
// Index is the exponent; the leading entry of a trimmed vector is nonzero.

fn dense(p: &SPoly) -> Vec<GRat> {
    debug_assert!(p.lo >= 0);
    let mut v = vec![gr_int(0); (p.hi() + 1).max(0) as usize];
    for (k, c) in p.coeffs.iter().enumerate() {
        v[p.lo as usize + k] = c.clone();
    }
    v
}

fn dense_trim(v: &mut Vec<GRat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn dense_divmod(mut a: Vec<GRat>, b: &[GRat]) -> (Vec<GRat>, Vec<GRat>) {
    let db = b.len() - 1;
    let bl = &b[db];
    dense_trim(&mut a);
    if a.len() <= db {
        return (Vec::new(), a);
    }
    let mut quot = vec![gr_int(0); a.len() - db];
    loop {
        dense_trim(&mut a);
        if a.len() <= db {
            return (quot, a);
        }
        let da = a.len() - 1;
        let f = a[da].clone() / bl.clone();
        quot[da - db] = f.clone();
        for k in 0..=db {
            let t = f.clone() * b[k].clone();
            a[da - db + k] = a[da - db + k].clone() - t;
        }
    }
}

/// Monic gcd of the ordinary parts, powers of `s` discarded as units.
fn poly_gcd(a: &SPoly, b: &SPoly) -> SPoly {
    let mut x = dense(&SPoly { lo: 0, coeffs: a.coeffs.clone() });
    let mut y = dense(&SPoly { lo: 0, coeffs: b.coeffs.clone() });
    dense_trim(&mut x);
    dense_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divmod(x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return SPoly::zero();
    }
    let inv = x.last().unwrap().inv();
    SPoly::from_parts(0, x.into_iter().map(|c| c * inv.clone()).collect())
}

fn exact_div(a: &SPoly, g: &SPoly) -> SPoly {
    let (q, r) = dense_divmod(
        dense(&SPoly { lo: 0, coeffs: a.coeffs.clone() }),
        &dense(&SPoly { lo: 0, coeffs: g.coeffs.clone() }),
    );
    debug_assert!(r.is_empty(), "non-exact polynomial division");
    SPoly::from_parts(0, q)
}

/// Reduced fraction of Laurent polynomials in `s`.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term and leading coefficient 1, sharing no nonunit factor with
/// the numerator; any net power of `s` is carried by the numerator. Zero is
/// `0/1`. Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: SPoly,
    den: SPoly,
}

impl Scalar {
    /// `num/den` in canonical form. Panics if `den` is zero.
    pub fn new(num: SPoly, den: SPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.lo - den.lo;
        let n0 = SPoly { lo: 0, coeffs: num.coeffs.clone() };
        let d0 = SPoly { lo: 0, coeffs: den.coeffs.clone() };
        let g = poly_gcd(&n0, &d0);
        let (n1, d1) = if g.is_one() {
            (n0, d0)
        } else {
            (exact_div(&n0, &g), exact_div(&d0, &g))
        };
        let lead = d1.coeffs.last().unwrap().inv();
        let n2 = n1.scale(&lead);
        let d2 = d1.scale(&lead);
        Scalar { num: n2.shl(shift), den: d2 }
    }

    pub fn zero() -> Self {
        Scalar { num: SPoly::zero(), den: SPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: SPoly::one(), den: SPoly::one() }
    }

    pub fn int(n: i64) -> Self {
        Scalar { num: SPoly::monomial(gr_int(n), 0), den: SPoly::one() }
    }

    /// `a/b` as a constant. Panics if `b == 0`.
    pub fn rat(a: i64, b: i64) -> Self {
        Scalar { num: SPoly::monomial(gr_rat(a, b), 0), den: SPoly::one() }
    }

    /// The imaginary unit.
    pub fn imag() -> Self {
        Scalar { num: SPoly::monomial(gr_i(), 0), den: SPoly::one() }
    }

    pub fn from_grat(c: GRat) -> Self {
        Scalar { num: SPoly::monomial(c, 0), den: SPoly::one() }
    }

    /// `s^k`, i.e. `q^{k/4}`.
    pub fn s_pow(k: i64) -> Self {
        Scalar { num: SPoly::monomial(gr_int(1), k), den: SPoly::one() }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(4 * k)
    }

    /// `c·s^e`.
    pub fn monomial(c: GRat, e: i64) -> Self {
        Scalar { num: SPoly::monomial(c, e), den: SPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn num(&self) -> &SPoly {
        &self.num
    }

    pub fn den(&self) -> &SPoly {
        &self.den
    }

    /// `Some((c, e))` when the value is exactly `c·s^e`.
    pub fn unit_monomial(&self) -> Option<(GRat, i64)> {
        if self.den.is_one() && self.num.coeffs.len() == 1 {
            Some((self.num.coeffs[0].clone(), self.num.lo))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Complex conjugation `i ↦ -i`; `s` is fixed.
    pub fn conj(&self) -> Self {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }

    /// Value at `s = v`; `None` on a pole or a negative power of zero.
    pub fn specialize(&self, v: &GRat) -> Option<GRat> {
        let d = self.den.eval(v)?;
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval(v)?;
        Some(n / d)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Display: leading exponent first, `q^k` for exponents divisible by four,
// `s^k` otherwise. Output parses back to the same value.

fn fmt_exp(e: i64) -> Option<String> {
    if e == 0 {
        None
    } else if e % 4 == 0 {
        let k = e / 4;
        Some(if k == 1 { "q".into() } else { format!("q^{}", k) })
    } else {
        Some(if e == 1 { "s".into() } else { format!("s^{}", e) })
    }
}

fn rat_str(r: &BigRational) -> String {
    format!("{}", r)
}

// (sign, magnitude string or None when the magnitude is 1)
fn fmt_coeff(c: &GRat) -> (bool, Option<String>) {
    let neg = if !c.re.is_zero() { c.re.is_negative() } else { c.im.is_negative() };
    let m = if neg { -c.clone() } else { c.clone() };
    let s = if m.im.is_zero() {
        if m.re.is_one() {
            None
        } else {
            Some(rat_str(&m.re))
        }
    } else if m.re.is_zero() {
        if m.im.is_one() {
            Some("i".into())
        } else {
            Some(format!("{}i", rat_str(&m.im)))
        }
    } else {
        let im_neg = m.im.is_negative();
        let im_abs = m.im.abs();
        let im_part = if im_abs.is_one() { "i".into() } else { format!("{}i", rat_str(&im_abs)) };
        Some(format!(
            "({}{}{})",
            rat_str(&m.re),
            if im_neg { "-" } else { "+" },
            im_part
        ))
    };
    (neg, s)
}

fn fmt_spoly(p: &SPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for k in (0..p.coeffs.len()).rev() {
        let c = &p.coeffs[k];
        if c.is_zero() {
            continue;
        }
        let e = p.lo + k as i64;
        let (neg, coeff) = fmt_coeff(c);
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match (coeff, fmt_exp(e)) {
            (None, None) => write!(f, "1")?,
            (None, Some(x)) => write!(f, "{}", x)?,
            (Some(c), None) => write!(f, "{}", c)?,
            (Some(c), Some(x)) => write!(f, "{}*{}", c, x)?,
        }
    }
    Ok(())
}

struct SPolyDisp<'a>(&'a SPoly);
impl fmt::Display for SPolyDisp<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_spoly(self.0, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_spoly(&self.num, f);
        }
        let nterms = self.num.coeffs.iter().filter(|c| !c.is_zero()).count();
        if nterms > 1 {
            write!(f, "({})", SPolyDisp(&self.num))?;
        } else {
            fmt_spoly(&self.num, f)?;
        }
        write!(f, "/({})", SPolyDisp(&self.den))
    }
}

// ---------------------------------------------------------------------------
// Parser. Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | atom ('^' exponent)?
//   atom   := '(' expr ')' | number | 'i' | 'q' | 's'
// Numbers are integers or `a/b` rationals, optionally suffixed by `i`;
// exponents are integers, parenthesized or not.

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(BigRational, bool),
    Sym(char),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let b = src.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < b.len() {
        let c = b[pos];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => pos += 1,
            b'0'..=b'9' => {
                let start = pos;
                while pos < b.len() && b[pos].is_ascii_digit() {
                    pos += 1;
                }
                let numer = BigInt::parse_bytes(&b[start..pos], 10).unwrap();
                let mut val = BigRational::from_integer(numer);
                // `a/b` is one token only when digits follow the slash directly
                if pos + 1 < b.len() && b[pos] == b'/' && b[pos + 1].is_ascii_digit() {
                    pos += 1;
                    let dstart = pos;
                    while pos < b.len() && b[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let denom = BigInt::parse_bytes(&b[dstart..pos], 10).unwrap();
                    if denom.is_zero() {
                        return Err("zero denominator in literal".into());
                    }
                    val /= BigRational::from_integer(denom);
                }
                let imag = pos < b.len() && b[pos] == b'i';
                if imag {
                    pos += 1;
                }
                toks.push(Tok::Num(val, imag));
            }
            b'i' | b'q' | b's' => {
                toks.push(Tok::Sym(c as char));
                pos += 1;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                toks.push(Tok::Op(c as char));
                pos += 1;
            }
            _ => return Err(format!("unexpected character {:?}", c as char)),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, String> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat_op('/') {
                let d = self.factor()?;
                if d.is_zero() {
                    return Err("division by zero".into());
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, String> {
        if self.eat_op('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat_op('^') {
            let e = self.exponent()?;
            if base.is_zero() && e < 0 {
                return Err("negative power of zero".into());
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, String> {
        let paren = self.eat_op('(');
        let neg = self.eat_op('-');
        let e = match self.peek() {
            Some(Tok::Num(r, false)) if r.is_integer() => {
                let v = r.numer().try_into().map_err(|_| "exponent too large".to_string())?;
                self.pos += 1;
                v
            }
            _ => return Err("expected integer exponent".into()),
        };
        if paren && !self.eat_op(')') {
            return Err("expected `)` after exponent".into());
        }
        let e: i64 = e;
        if e.abs() > 1_000 {
            return Err("exponent out of range".into());
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<Scalar, String> {
        match self.peek().cloned() {
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err("expected `)`".into());
                }
                Ok(v)
            }
            Some(Tok::Num(r, imag)) => {
                self.pos += 1;
                let c = if imag {
                    Complex::new(BigRational::zero(), r)
                } else {
                    Complex::new(r, BigRational::zero())
                };
                Ok(Scalar::from_grat(c))
            }
            Some(Tok::Sym('i')) => {
                self.pos += 1;
                Ok(Scalar::imag())
            }
            Some(Tok::Sym('q')) => {
                self.pos += 1;
                Ok(Scalar::q_pow(1))
            }
            Some(Tok::Sym('s')) => {
                self.pos += 1;
                Ok(Scalar::s_pow(1))
            }
            other => Err(format!("unexpected token {:?}", other)),
        }
    }
}

impl FromStr for Scalar {
    type Err = String;

    fn from_str(src: &str) -> Result<Self, String> {
        let toks = lex(src)?;
        let mut p = Parser { toks: &toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != toks.len() {
            return Err(format!("trailing input at token {}", p.pos));
        }
        Ok(v)
    }
}
