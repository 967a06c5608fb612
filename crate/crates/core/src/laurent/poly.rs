use alloc::collections::BTreeMap;
use alloc::collections::btree_map::Entry;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::{AlgebraError, GaussianRational, Monomial, Var};

/// Values assigned to variables by [`LaurentPoly::substitute`].
pub type Bindings = BTreeMap<Var, LaurentPoly>;

/// Exact Laurent polynomial: a finite map from monomials to nonzero Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::ratio(num, den))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v))
    }

    /// `v^e` for any integer `e`.
    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::term(GaussianRational::one(), Monomial::pow_var(v, e))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(GaussianRational::one(), m)
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single term if the polynomial is a monomial times a coefficient.
    pub fn as_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, GaussianRational)> {
        self.terms.into_iter()
    }

    /// Largest term in monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Smallest term in monomial order.
    pub fn trailing(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next()
    }

    /// All variables occurring with nonzero exponent.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    /// Minimal and maximal exponent of `v` (both 0 for the zero polynomial).
    pub fn degree_range(&self, v: Var) -> (i32, i32) {
        let mut it = self.terms.keys().map(|m| m.exponent(v));
        match it.next() {
            None => (0, 0),
            Some(first) => it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Logarithmic derivative `v ∂/∂v`, i.e. `∂/∂x` when `v = e^x`.
    pub fn euler(&self, v: Var) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e != 0 {
                out.terms.insert(m.clone(), c * &GaussianRational::from_int(e as i64));
            }
        }
        out
    }

    /// Ordinary partial derivative `∂/∂v`.
    pub fn partial(&self, v: Var) -> LaurentPoly {
        self.euler(v).mul_monomial(&Monomial::pow_var(v, -1))
    }

    /// Groups terms by the exponent of `v`; the values no longer contain `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(v)).or_default().terms.insert(m.without(v), c.clone());
        }
        out
    }

    /// Replaces bound variables by polynomials.
    ///
    /// A variable appearing with a negative exponent must be bound to a single term
    /// with nonzero coefficient; otherwise the result is not a Laurent polynomial.
    pub fn substitute(&self, bindings: &Bindings) -> Result<LaurentPoly, AlgebraError> {
        let mut cache: BTreeMap<(Var, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut factor = LaurentPoly::one();
            for (v, e) in m.iter() {
                match bindings.get(&v) {
                    None => free.push((v, e)),
                    Some(val) => {
                        let p = match cache.entry((v, e)) {
                            Entry::Occupied(o) => o.into_mut(),
                            Entry::Vacant(slot) => {
                                slot.insert(power_of(val, e).ok_or(AlgebraError::RequiresFractionField(v))?)
                            }
                        };
                        factor = &factor * &*p;
                    }
                }
            }
            let term = factor.mul_term(&Monomial::from_pairs(free), c);
            out += &term;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division is not exact.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if let Some((m, c)) = divisor.as_term() {
            let inv = c.inv()?;
            return Some(self.mul_term(&m.inv(), &inv));
        }
        // Degrees in each variable are additive, which confines the quotient to a box.
        let mut vars = self.vars();
        vars.extend(divisor.vars());
        vars.sort();
        vars.dedup();
        let mut bounds = Vec::with_capacity(vars.len());
        for &v in &vars {
            let (alo, ahi) = self.degree_range(v);
            let (blo, bhi) = divisor.degree_range(v);
            let (lo, hi) = (alo - blo, ahi - bhi);
            if lo > hi {
                return None;
            }
            bounds.push((v, lo, hi));
        }
        let (lead_m, lead_c) = divisor.leading()?;
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(lead_m);
            for &(v, lo, hi) in &bounds {
                let e = qm.exponent(v);
                if e < lo || e > hi {
                    return None;
                }
            }
            let qc = c * &lead_inv;
            rem -= &divisor.mul_term(&qm, &qc);
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Numerical value with every variable assigned by `value`.
    pub fn eval(&self, value: &dyn Fn(Var) -> Option<Complex64>) -> Option<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex64();
            for (v, e) in m.iter() {
                t *= value(v)?.powi(e);
            }
            total += t;
        }
        Some(total)
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Renames variables.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> LaurentPoly {
        self.map_monomials(|m| Monomial::from_pairs(m.iter().map(|(v, e)| (f(v), e))))
    }

    /// Parses the canonical text produced by `Display`.
    pub fn parse(s: &str) -> Result<LaurentPoly, AlgebraError> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        let mut coeff: Option<GaussianRational> = None;
        let mut factors: Vec<(Var, i32)> = Vec::new();
        let bad = || AlgebraError::Parse(String::from(s));
        let flush = |out: &mut LaurentPoly, coeff: &mut Option<GaussianRational>, factors: &mut Vec<(Var, i32)>| {
            if let Some(c) = coeff.take() {
                out.add_term(Monomial::from_pairs(factors.drain(..)), &c);
            }
        };
        let mut tokens = s.split_whitespace().peekable();
        while let Some(tok) = tokens.next() {
            if tok == "*" {
                continue;
            }
            let first = tok.chars().next().ok_or_else(bad)?;
            if first == '+' || first == '-' {
                flush(&mut out, &mut coeff, &mut factors);
                let (sign, body) = tok.split_at(1);
                let mut c = GaussianRational::parse(body).ok_or_else(bad)?;
                if sign == "-" {
                    c = -c;
                }
                coeff = Some(c);
            } else if first.is_ascii_alphabetic() {
                if coeff.is_none() {
                    return Err(bad());
                }
                let (name, e) = match tok.split_once('^') {
                    Some((n, e)) => (n, e.parse::<i32>().map_err(|_| bad())?),
                    None => (tok, 1),
                };
                factors.push((Var::parse(name).ok_or_else(bad)?, e));
            } else {
                return Err(bad());
            }
        }
        flush(&mut out, &mut coeff, &mut factors);
        Ok(out)
    }
}

fn power_of(val: &LaurentPoly, e: i32) -> Option<LaurentPoly> {
    if e >= 0 {
        return Some(val.pow(e as u32));
    }
    let (m, c) = val.as_term()?;
    let inv = c.inv()?;
    Some(LaurentPoly::term(inv, m.inv()).pow((-e) as u32))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if c.leading_negative() {
                write!(f, "-{}", -c)?;
            } else {
                write!(f, "+{c}")?;
            }
            if !m.is_one() {
                write!(f, " * {m}")?;
            }
        }
        Ok(())
    }
}

impl From<GaussianRational> for LaurentPoly {
    fn from(c: GaussianRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::int(n)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let (mut big, small) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        big += small;
        big
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let (a, b) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        if b.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some((m, c)) = b.as_term() {
            return a.mul_term(m, c);
        }
        let mut out = LaurentPoly::zero();
        for (mb, cb) in &b.terms {
            for (ma, ca) in &a.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: &LaurentPoly) -> LaurentPoly {
                (&self).$f(o)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, o: LaurentPoly) -> LaurentPoly {
                self.$f(&o)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x1() -> LaurentPoly {
        LaurentPoly::var(Var::X(1))
    }
    fn z1inv() -> LaurentPoly {
        LaurentPoly::var_pow(Var::Z(1), -1)
    }

    #[test]
    fn difference_of_squares() {
        let p = (x1() - z1inv()) * (x1() + z1inv());
        assert_eq!(p, x1().pow(2) - LaurentPoly::var_pow(Var::Z(1), -2));
        assert_eq!(p.to_string(), "-1 * Z1^-2 +1 * X1^2");
    }

    #[test]
    fn euler_derivative() {
        let p = LaurentPoly::var_pow(Var::X(1), 3) * LaurentPoly::var_pow(Var::Z(1), -1);
        assert_eq!(p.euler(Var::X(1)), p.scale(&GaussianRational::from_int(3)));
        assert_eq!(p.euler(Var::Z(1)), -p.clone());
        assert!(p.euler(Var::X(2)).is_zero());
    }

    #[test]
    fn substitute_square_of_momentum() {
        let x1 = x1();
        let p = &x1 * LaurentPoly::var(Var::Z(1)) + &x1 * z1inv()
            - LaurentPoly::var(Var::Z(2)) * LaurentPoly::var_pow(Var::X(1), -1);
        let mut b = Bindings::new();
        b.insert(Var::Px(1), p.clone());
        let sq = LaurentPoly::var(Var::Px(1)).pow(2).substitute(&b).unwrap();
        assert_eq!(sq, &p * &p);
    }

    #[test]
    fn substitute_requires_monomial_for_negative_power() {
        let mut b = Bindings::new();
        b.insert(Var::U, x1() + LaurentPoly::one());
        let err = LaurentPoly::var_pow(Var::U, -1).substitute(&b).unwrap_err();
        assert_eq!(err, AlgebraError::RequiresFractionField(Var::U));
        b.insert(Var::U, x1().scale(&GaussianRational::from_int(2)));
        let ok = LaurentPoly::var_pow(Var::U, -2).substitute(&b).unwrap();
        assert_eq!(ok, LaurentPoly::var_pow(Var::X(1), -2).scale(&GaussianRational::ratio(1, 4)));
    }

    #[test]
    fn exact_division() {
        let a = x1() + z1inv() + LaurentPoly::int(3);
        let b = x1() - LaurentPoly::var(Var::U) * z1inv();
        let q = (&a * &b).exact_div(&b).unwrap();
        assert_eq!(q, a);
        assert!(a.exact_div(&b).is_none());
        assert!(a.exact_div(&LaurentPoly::zero()).is_none());
    }

    #[test]
    fn text_roundtrip() {
        let p = (x1() - z1inv().scale(&GaussianRational::complex((1, 2), (-2, 3))))
            * (LaurentPoly::var(Var::U) + LaurentPoly::var(Var::Gp(2)))
            + LaurentPoly::constant(GaussianRational::i());
        let text = p.to_string();
        assert_eq!(LaurentPoly::parse(&text).unwrap(), p);
        assert_eq!(LaurentPoly::parse("0").unwrap(), LaurentPoly::zero());
    }
}
