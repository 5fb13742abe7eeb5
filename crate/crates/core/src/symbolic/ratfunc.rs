use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::upoly::{forward_owned_binop, UPoly};
use super::SymbolicError;
use crate::Rat;

/// A rational function `num/den` over ℚ in canonical form: `den` is monic
/// and coprime to `num`, and zero is `0/1`. Two values are equal as
/// functions exactly when their fields are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: UPoly::one(),
            };
        }
        if den.is_constant() {
            let c = den.coeff(0).recip();
            return RatFunc {
                num: num.scale(&c),
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g).expect("gcd is nonzero");
        let (den, _) = den.div_rem(&g).expect("gcd is nonzero");
        let lc = den.leading_coeff().expect("nonzero denominator").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    /// Coprime `num` and nonzero `den`; only the leading coefficient is
    /// normalized.
    fn from_parts_monic(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff().expect("nonzero denominator").recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn z() -> Self {
        Self::from_poly(UPoly::z())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value when the function is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn recip(&self) -> Result<Self, SymbolicError> {
        Self::new(self.den.clone(), self.num.clone()).map_err(|_| SymbolicError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, SymbolicError> {
        if rhs.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// `(h/g)' = (h'g − hg')/g²`.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::canonical(num, &self.den * &self.den)
    }

    /// The `n`-th derivative (`n = 0` is the function itself).
    pub fn nth_derivative(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// Value at `z`, or `None` at a pole.
    pub fn eval(&self, z: &Rat) -> Option<Rat> {
        let d = self.den.eval(z);
        (!d.is_zero()).then(|| self.num.eval(z) / d)
    }
}

impl From<UPoly> for RatFunc {
    fn from(p: UPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        // Only the common factor of the denominators can cancel afterwards.
        let d = self.den.gcd(&rhs.den);
        let (a_co, _) = self.den.div_rem(&d).expect("nonzero");
        let (b_co, _) = rhs.den.div_rem(&d).expect("nonzero");
        let num = &(&self.num * &b_co) + &(&rhs.num * &a_co);
        let den = &self.den * &b_co;
        if d.is_constant() {
            return RatFunc::from_parts_monic(num, den);
        }
        RatFunc::canonical(num, den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cancelling crosswise keeps the product in lowest terms.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let quo = |p: &UPoly, g: &UPoly| p.div_rem(g).expect("nonzero").0;
        let num = &quo(&self.num, &g1) * &quo(&rhs.num, &g2);
        let den = &quo(&rhs.den, &g1) * &quo(&self.den, &g2);
        RatFunc::from_parts_monic(num, den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned_binop!(RatFunc, Add, add);
forward_owned_binop!(RatFunc, Sub, sub);
forward_owned_binop!(RatFunc, Mul, mul);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let z = RatFunc::z();
        let inv_z = rf(&[1], &[0, 1]);
        assert_eq!(&z + &inv_z, rf(&[1, 0, 1], &[0, 1]));

        // (z² − 1)/(z − 1) reduces to z + 1 on construction.
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), RatFunc::from_poly(p(&[1, 1])));

        let a = rf(&[1, 1], &[0, 1]);
        let b = rf(&[0, 1], &[1, 1]);
        assert_eq!(&a * &b, RatFunc::one());
        assert_eq!(a.checked_div(&a).unwrap(), RatFunc::one());
        assert_eq!(
            a.checked_div(&RatFunc::zero()),
            Err(SymbolicError::DivisionByZero)
        );
        assert_eq!(
            RatFunc::new(p(&[1]), UPoly::zero()),
            Err(SymbolicError::ZeroDenominator)
        );
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = rf(&[2], &[0, 4]);
        assert_eq!(f.den(), &p(&[0, 1]));
        assert_eq!(f.num(), &UPoly::constant(crate::exact::rat(1, 2)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            RatFunc::from_poly(p(&[0, 0, 1])).nth_derivative(1),
            RatFunc::from_poly(p(&[0, 2]))
        );
        assert_eq!(rf(&[1], &[0, 1]).nth_derivative(2), rf(&[2], &[0, 0, 0, 1]));
        // (1+z)² expanded independently, then differentiated by the power rule.
        let expanded = p(&[1, 2, 1]);
        assert_eq!(
            RatFunc::from_poly(p(&[1, 1]).pow(2)).derivative(),
            RatFunc::from_poly(expanded.derivative())
        );
        assert_eq!(RatFunc::from_poly(p(&[2, 2])), RatFunc::from_poly(p(&[1, 2, 1])).derivative());
    }
}
