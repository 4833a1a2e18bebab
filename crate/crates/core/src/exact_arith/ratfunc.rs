use std::fmt;

use num_traits::{One, Zero};

use super::{gcd, ArithError, GaussRat, Mono, Poly2, VarPair};

/// Canonical rational function `num/den`: coprime, `den` nonzero with unit
/// leading coefficient under the graded-lex order. Structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    /// Reduces `num/den` to its canonical representative.
    pub fn normalize(num: Poly2, den: Poly2) -> Result<RatFunc, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(den.vars()));
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = gcd::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Ok(Self::make_monic(num, den))
    }

    /// Scales so the denominator's leading coefficient is one. Assumes coprime.
    fn make_monic(num: Poly2, den: Poly2) -> RatFunc {
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero(vars: VarPair) -> RatFunc {
        RatFunc {
            num: Poly2::zero(vars),
            den: Poly2::one(vars),
        }
    }

    pub fn one(vars: VarPair) -> RatFunc {
        RatFunc::from_poly(Poly2::one(vars))
    }

    pub fn constant(vars: VarPair, c: GaussRat) -> RatFunc {
        RatFunc::from_poly(Poly2::constant(vars, c))
    }

    pub fn from_int(vars: VarPair, n: i64) -> RatFunc {
        RatFunc::constant(vars, GaussRat::from_int(n))
    }

    pub fn var(vars: VarPair, axis: usize) -> RatFunc {
        RatFunc::from_poly(Poly2::var(vars, axis))
    }

    pub fn from_poly(p: Poly2) -> RatFunc {
        let vars = p.vars();
        RatFunc {
            num: p,
            den: Poly2::one(vars),
        }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn vars(&self) -> VarPair {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The value as a constant, when it is one.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        // canonical den has real leading coefficient, so conj-invariance of
        // the canonical form is equivalent to both parts being real
        self.num.is_real() && self.den.is_real()
    }

    /// Larger of numerator and denominator total degree.
    pub fn degree(&self) -> u32 {
        self.num.degree().max(self.den.degree())
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.add(&o.num));
        }
        // With g = gcd(b, d): a/b + c/d = (a d' + c b') / (b d') where
        // b = g b', d = g d', and only factors of g can cancel.
        let g = if self.den == o.den {
            self.den.clone()
        } else {
            gcd::gcd(&self.den, &o.den)
        };
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return RatFunc::zero(self.vars());
        }
        let den = self.den.mul(&d1);
        if g.is_constant() {
            return Self::make_monic(num, den);
        }
        let h = gcd::gcd(&num, &g);
        if h.is_constant() {
            return Self::make_monic(num, den);
        }
        Self::make_monic(
            num.div_exact(&h).expect("gcd divides numerator"),
            den.div_exact(&h).expect("gcd divides denominator"),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.vars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        // cross-cancel so the product is already reduced
        let g1 = gcd::gcd(&self.num, &o.den);
        let g2 = gcd::gcd(&o.num, &self.den);
        let (n1, d2) = cancel(&self.num, &o.den, &g1);
        let (n2, d1) = cancel(&o.num, &self.den, &g2);
        Self::make_monic(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &GaussRat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.vars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc, ArithError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn conj(&self) -> RatFunc {
        // conjugation preserves coprimality and the leading monomial of den
        Self::make_monic(self.num.conj(), self.den.conj())
    }

    /// Conjugate, real part and imaginary part, with `self = re + i*im`.
    /// Base variables are treated as real symbols.
    pub fn conj_re_im(&self) -> (RatFunc, RatFunc, RatFunc) {
        let conj = self.conj();
        if self.den.is_real() {
            let (nr, ni) = self.num.re_im();
            let re = RatFunc::normalize(nr, self.den.clone()).unwrap();
            let im = RatFunc::normalize(ni, self.den.clone()).unwrap();
            return (conj, re, im);
        }
        let dc = self.den.conj();
        let num = self.num.mul(&dc);
        let den = self.den.mul(&dc);
        debug_assert!(den.is_real());
        let (nr, ni) = num.re_im();
        let re = RatFunc::normalize(nr, den.clone()).unwrap();
        let im = RatFunc::normalize(ni, den).unwrap();
        (conj, re, im)
    }

    pub fn re_im(&self) -> (RatFunc, RatFunc) {
        let (_, re, im) = self.conj_re_im();
        (re, im)
    }

    /// Partial derivative along axis 0 (first variable) or 1 (second).
    pub fn partial(&self, axis: usize) -> RatFunc {
        if self.den.is_constant() {
            return RatFunc {
                num: self.num.partial(axis),
                den: self.den.clone(),
            };
        }
        let dn = self.num.partial(axis);
        let dd = self.den.partial(axis);
        if dd.is_zero() {
            return RatFunc::normalize(dn, self.den.clone()).unwrap();
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        RatFunc::normalize(num, self.den.mul(&self.den)).unwrap()
    }

    /// Partial derivative with respect to a named variable.
    pub fn partial_by_name(&self, var: &str) -> Result<RatFunc, ArithError> {
        let axis = self.vars().index_of(var)?;
        Ok(self.partial(axis))
    }

    /// Substitutes both variables by linear forms over `target`.
    pub fn substitute_linear(&self, target: VarPair, rows: &[[GaussRat; 2]; 2]) -> RatFunc {
        let num = self.num.substitute_linear(target, rows);
        let den = self.den.substitute_linear(target, rows);
        // an invertible linear substitution preserves coprimality
        Self::make_monic(num, den)
    }

    pub fn rename(&self, vars: VarPair) -> RatFunc {
        RatFunc {
            num: self.num.rename(vars),
            den: self.den.rename(vars),
        }
    }

    /// Evaluates at a point; `None` at a pole.
    pub fn eval(&self, a: &GaussRat, b: &GaussRat) -> Option<GaussRat> {
        let d = self.den.eval(a, b);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(a, b) / &d)
    }
}

fn cancel(n: &Poly2, d: &Poly2, g: &Poly2) -> (Poly2, Poly2) {
    if g.is_constant() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(g).unwrap(), d.div_exact(g).unwrap())
    }
}

fn needs_parens_num(p: &Poly2) -> bool {
    if p.num_terms() > 1 {
        return true;
    }
    match p.leading() {
        Some((m, c)) => m.degree() == 0 && c.is_compound(),
        None => false,
    }
}

fn needs_parens_den(p: &Poly2) -> bool {
    if p.num_terms() > 1 {
        return true;
    }
    // single monic monomial: parenthesize products like x*y
    matches!(p.leading(), Some((Mono(a, b), _)) if a > 0 && b > 0)
}

/// `num` alone when the denominator is one, otherwise `num/den` with
/// parentheses around multi-term parts.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens_num(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens_den(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
