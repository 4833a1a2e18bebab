use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{ArithError, GaussRat};

/// Names of the two base variables a polynomial lives over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarPair {
    pub first: &'static str,
    pub second: &'static str,
}

impl VarPair {
    /// Rejects the reserved name `i`, empty names and repeated names.
    pub fn new(first: &'static str, second: &'static str) -> Result<Self, ArithError> {
        for name in [first, second] {
            if name == "i" || name.is_empty() {
                return Err(ArithError::InvalidVariable(name.to_string()));
            }
        }
        if first == second {
            return Err(ArithError::InvalidVariable(first.to_string()));
        }
        Ok(VarPair { first, second })
    }

    /// 0 for the first variable, 1 for the second.
    pub fn index_of(&self, name: &str) -> Result<usize, ArithError> {
        if name == self.first {
            Ok(0)
        } else if name == self.second {
            Ok(1)
        } else {
            Err(ArithError::UnknownVariable(name.to_string()))
        }
    }

    pub fn name(&self, axis: usize) -> &'static str {
        if axis == 0 {
            self.first
        } else {
            self.second
        }
    }
}

/// Exponent pair ordered graded-lexicographically, first variable before second.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub u32, pub u32);

impl Mono {
    pub fn degree(self) -> u32 {
        self.0 + self.1
    }

    fn divides(self, other: Mono) -> bool {
        self.0 <= other.0 && self.1 <= other.1
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in two named variables over the Gaussian rationals.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly2 {
    vars: VarPair,
    terms: BTreeMap<Mono, GaussRat>,
}

impl Poly2 {
    pub fn zero(vars: VarPair) -> Self {
        Poly2 {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarPair, c: GaussRat) -> Self {
        let mut p = Poly2::zero(vars);
        p.add_term(Mono(0, 0), c);
        p
    }

    pub fn one(vars: VarPair) -> Self {
        Poly2::constant(vars, GaussRat::one())
    }

    /// The polynomial consisting of a single base variable.
    pub fn var(vars: VarPair, axis: usize) -> Self {
        let m = if axis == 0 { Mono(1, 0) } else { Mono(0, 1) };
        Poly2::monomial(vars, m, GaussRat::one())
    }

    pub fn monomial(vars: VarPair, m: Mono, c: GaussRat) -> Self {
        let mut p = Poly2::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, GaussRat)>>(vars: VarPair, it: I) -> Self {
        let mut p = Poly2::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> VarPair {
        self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono(0, 0))
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Constant term, zero if absent.
    pub fn constant_term(&self) -> GaussRat {
        self.terms.get(&Mono(0, 0)).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, axis: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| if axis == 0 { m.0 } else { m.1 })
            .max()
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(Mono, &GaussRat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn add_term(&mut self, m: Mono, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &Poly2) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic across different variable pairs"
        );
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        self.check_vars(other);
        if self.is_zero() || other.is_zero() {
            return Poly2::zero(self.vars);
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = Poly2::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(Mono(ma.0 + mb.0, ma.1 + mb.1), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero(self.vars);
        }
        Poly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly2 {
        let mut base = self.clone();
        let mut acc = Poly2::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn conj(&self) -> Poly2 {
        Poly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Coefficientwise real and imaginary parts.
    pub fn re_im(&self) -> (Poly2, Poly2) {
        let re = Poly2::from_terms(
            self.vars,
            self.terms
                .iter()
                .map(|(m, c)| (*m, GaussRat::real(c.re.clone()))),
        );
        let im = Poly2::from_terms(
            self.vars,
            self.terms
                .iter()
                .map(|(m, c)| (*m, GaussRat::real(c.im.clone()))),
        );
        (re, im)
    }

    pub fn partial(&self, axis: usize) -> Poly2 {
        let mut out = Poly2::zero(self.vars);
        for (m, c) in &self.terms {
            let e = if axis == 0 { m.0 } else { m.1 };
            if e == 0 {
                continue;
            }
            let nm = if axis == 0 {
                Mono(m.0 - 1, m.1)
            } else {
                Mono(m.0, m.1 - 1)
            };
            out.add_term(nm, c * &GaussRat::from_int(e as i64));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        self.check_vars(d);
        let (dm, dc) = d.leading()?;
        let dc_inv = dc.inv().ok()?;
        if d.num_terms() == 1 {
            let mut q = Poly2::zero(self.vars);
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                q.add_term(Mono(m.0 - dm.0, m.1 - dm.1), c * &dc_inv);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = Poly2::zero(self.vars);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = Mono(rm.0 - dm.0, rm.1 - dm.1);
            let qc = rc * &dc_inv;
            for (m, c) in &d.terms {
                rem.add_term(Mono(m.0 + qm.0, m.1 + qm.1), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Substitutes each variable by a linear form in the variables of `target`:
    /// `first -> rows[0][0]*t1 + rows[0][1]*t2`, `second -> rows[1][0]*t1 + rows[1][1]*t2`.
    pub fn substitute_linear(&self, target: VarPair, rows: &[[GaussRat; 2]; 2]) -> Poly2 {
        let forms: Vec<Poly2> = rows
            .iter()
            .map(|r| {
                Poly2::from_terms(
                    target,
                    [(Mono(1, 0), r[0].clone()), (Mono(0, 1), r[1].clone())],
                )
            })
            .collect();
        let mut pow_cache: [Vec<Poly2>; 2] = [vec![Poly2::one(target)], vec![Poly2::one(target)]];
        let mut out = Poly2::zero(target);
        for (m, c) in &self.terms {
            for (axis, e) in [(0usize, m.0), (1usize, m.1)] {
                while pow_cache[axis].len() <= e as usize {
                    let next = pow_cache[axis].last().unwrap().mul(&forms[axis]);
                    pow_cache[axis].push(next);
                }
            }
            let t = pow_cache[0][m.0 as usize]
                .mul(&pow_cache[1][m.1 as usize])
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Reinterprets the polynomial over another variable pair, keeping exponents.
    pub fn rename(&self, vars: VarPair) -> Poly2 {
        Poly2 {
            vars,
            terms: self.terms.clone(),
        }
    }

    pub fn eval(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            acc += &(c * &(a.pow(m.0) * b.pow(m.1)));
        }
        acc
    }
}

fn fmt_mono(vars: VarPair, m: Mono, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (name, e) in [(vars.first, m.0), (vars.second, m.1)] {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

fn fmt_term(vars: VarPair, m: Mono, c: &GaussRat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if m.degree() == 0 {
        return write!(f, "{c}");
    }
    if c.is_one() {
        return fmt_mono(vars, m, f);
    }
    if (-c).is_one() {
        write!(f, "-")?;
        return fmt_mono(vars, m, f);
    }
    write!(f, "{c}*")?;
    fmt_mono(vars, m, f)
}

/// Terms from the leading one down, `x^2 - 2*x*y + (1 + i)`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx == 0 {
                fmt_term(self.vars, *m, c, f)?;
            } else if c.is_negative_like() {
                write!(f, " - ")?;
                fmt_term(self.vars, *m, &-c, f)?;
            } else {
                write!(f, " + ")?;
                fmt_term(self.vars, *m, c, f)?;
            }
        }
        Ok(())
    }
}
