use core::fmt;

use super::{AlgebraError, LaurentPoly, Var};

/// Quotient of two Laurent polynomials. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalExpr {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RationalExpr { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalExpr { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RationalExpr) -> RationalExpr {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &RationalExpr) -> RationalExpr {
        self.combine(o, true)
    }

    fn combine(&self, o: &RationalExpr, subtract: bool) -> RationalExpr {
        let rhs = |n: LaurentPoly| if subtract { -n } else { n };
        if self.den == o.den {
            return RationalExpr { num: &self.num + &rhs(o.num.clone()), den: self.den.clone() };
        }
        if let Some(q) = o.den.exact_div(&self.den) {
            return RationalExpr { num: &self.num * &q + rhs(o.num.clone()), den: o.den.clone() };
        }
        if let Some(q) = self.den.exact_div(&o.den) {
            return RationalExpr { num: &self.num + &rhs(&o.num * &q), den: self.den.clone() };
        }
        RationalExpr { num: &self.num * &o.den + rhs(&o.num * &self.den), den: &self.den * &o.den }
    }

    pub fn mul(&self, o: &RationalExpr) -> RationalExpr {
        RationalExpr { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RationalExpr {
        RationalExpr { num: &self.num * p, den: self.den.clone() }
    }

    pub fn div(&self, o: &RationalExpr) -> Result<RationalExpr, AlgebraError> {
        if o.num.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RationalExpr { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone() }
    }

    /// Logarithmic derivative `v ∂/∂v` by the quotient rule.
    pub fn euler(&self, v: Var) -> RationalExpr {
        let dn = self.num.euler(v);
        let dd = self.den.euler(v);
        if dd.is_zero() {
            return RationalExpr { num: dn, den: self.den.clone() };
        }
        RationalExpr { num: &dn * &self.den - &self.num * &dd, den: &self.den * &self.den }
    }

    /// Divides numerator and denominator by `p` when both divisions are exact.
    pub fn cancel(&self, p: &LaurentPoly) -> RationalExpr {
        match (self.num.exact_div(p), self.den.exact_div(p)) {
            (Some(n), Some(d)) => RationalExpr { num: n, den: d },
            _ => self.clone(),
        }
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, o: &RationalExpr) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RationalExpr {}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalExpr::new(LaurentPoly::one(), LaurentPoly::zero()).unwrap_err(),
            AlgebraError::ZeroDenominator
        );
    }

    #[test]
    fn quotient_rule() {
        // d/dx [1/(1+e^x)] = -e^x/(1+e^x)^2
        let s = LaurentPoly::one() + LaurentPoly::var(Var::X(1));
        let r = RationalExpr::new(LaurentPoly::one(), s.clone()).unwrap();
        let expect = RationalExpr::new(-LaurentPoly::var(Var::X(1)), &s * &s).unwrap();
        assert_eq!(r.euler(Var::X(1)), expect);
    }

    #[test]
    fn sum_over_shared_factor() {
        let s = LaurentPoly::one() + LaurentPoly::var(Var::X(1));
        let a = RationalExpr::new(LaurentPoly::one(), s.clone()).unwrap();
        let b = RationalExpr::new(LaurentPoly::var(Var::X(1)), s.clone()).unwrap();
        let c = a.add(&b);
        assert_eq!(c, RationalExpr::from_poly(LaurentPoly::one()));
        assert_eq!(c.den(), &s);
    }
}
