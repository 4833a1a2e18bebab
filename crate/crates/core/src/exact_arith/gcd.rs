//! Polynomial gcd over the Gaussian rationals.
//!
//! Bivariate gcds are computed recursively: the polynomial is viewed as a
//! polynomial in the second variable with coefficients in `Q(i)[first]`, the
//! content is taken with the univariate Euclidean algorithm. Coprimality is
//! usually settled by univariate images; otherwise the gcd of the primitive
//! parts is interpolated from images at integer points, with a primitive
//! pseudo-remainder sequence as the fallback.

use num_traits::{One, Zero};

use super::{GaussRat, Mono, Poly2};

/// Dense univariate polynomial, ascending powers, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct UPoly(pub Vec<GaussRat>);

impl UPoly {
    fn trim(mut self) -> Self {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
        self
    }

    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn one() -> Self {
        UPoly(vec![GaussRat::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &GaussRat {
        self.0
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k);
            let b = o.0.get(k);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly(v).trim()
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![GaussRat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        UPoly(v).trim()
    }

    fn scale(&self, c: &GaussRat) -> UPoly {
        UPoly(self.0.iter().map(|a| a * c).collect()).trim()
    }

    fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![GaussRat::zero(); r.len() - d.0.len() + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + d.0.len() - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &(dc * &c);
            }
            q[k] = c;
        }
        (UPoly(q).trim(), UPoly(r).trim())
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        // monic remainders keep the rational coefficients small
        b = b.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    fn eval(&self, at: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Newton interpolation through `(xs[j], ys[j])`.
    fn interpolate(xs: &[GaussRat], ys: &[GaussRat]) -> UPoly {
        let mut out = UPoly::zero();
        let mut basis = UPoly::one();
        for (j, (xj, yj)) in xs.iter().zip(ys).enumerate() {
            let at = out.eval(xj);
            let scale = basis.eval(xj);
            let c = (yj - &at).checked_div(&scale).expect("distinct nodes");
            out = out.add(&basis.scale(&c));
            if j + 1 < xs.len() {
                basis = basis.mul(&UPoly(vec![-xj, GaussRat::one()]));
            }
        }
        out
    }

    fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact univariate division");
        q
    }
}

/// Polynomial in the second variable with `UPoly` coefficients in the first.
type RecPoly = Vec<UPoly>;

fn to_rec(p: &Poly2) -> RecPoly {
    let dy = p.degree_in(1) as usize;
    let dx = p.degree_in(0) as usize;
    let mut rec = vec![vec![GaussRat::zero(); dx + 1]; dy + 1];
    for (m, c) in p.terms() {
        rec[m.1 as usize][m.0 as usize] = c.clone();
    }
    rec.into_iter().map(|v| UPoly(v).trim()).collect()
}

fn from_rec(template: &Poly2, rec: &RecPoly) -> Poly2 {
    let mut out = Poly2::zero(template.vars());
    for (ey, coeff) in rec.iter().enumerate() {
        for (ex, c) in coeff.0.iter().enumerate() {
            out.add_term(Mono(ex as u32, ey as u32), c.clone());
        }
    }
    out
}

fn rec_trim(mut p: RecPoly) -> RecPoly {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn rec_content(p: &RecPoly) -> UPoly {
    let mut g = UPoly::zero();
    for c in p {
        if c.is_zero() {
            continue;
        }
        g = UPoly::gcd(&g, c);
        if g.deg() == 0 && !g.is_zero() {
            return UPoly::one();
        }
    }
    g
}

/// Primitive part, scaled so the leading coefficient of its leading
/// coefficient is one. Without the scaling, constants grow along the
/// remainder sequence.
fn rec_primitive(p: &RecPoly) -> RecPoly {
    let c = rec_content(p);
    let p: RecPoly = if c == UPoly::one() {
        p.clone()
    } else {
        p.iter().map(|a| a.div_exact(&c)).collect()
    };
    let inv = p
        .last()
        .expect("nonzero")
        .lc()
        .inv()
        .expect("nonzero leading coefficient");
    p.iter().map(|a| a.scale(&inv)).collect()
}

/// Pseudo-remainder of `a` by `b`, scaled by a power of `lc(b)`.
fn rec_prem(a: &RecPoly, b: &RecPoly) -> RecPoly {
    let lcb = b.last().unwrap().clone();
    let db = b.len() - 1;
    let mut r = a.clone();
    while r.len() > db {
        let lcr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let mut next: RecPoly = r.iter().map(|c| c.mul(&lcb)).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + shift] = next[j + shift].sub(&bc.mul(&lcr));
        }
        r = rec_trim(next);
    }
    r
}

/// Image of `p` in `Q(i)[v]` after substituting the small integer `at` for the
/// other variable, `v` being the variable with index `axis`.
fn image(p: &Poly2, axis: usize, at: i64) -> UPoly {
    let deg = p.degree_in(axis) as usize;
    let mut v = vec![GaussRat::zero(); deg + 1];
    let point = GaussRat::from_int(at);
    for (m, c) in p.terms() {
        let (e, other) = if axis == 0 { (m.0, m.1) } else { (m.1, m.0) };
        v[e as usize] += &(c * &point.pow(other));
    }
    UPoly(v).trim()
}

/// True when evaluating the other variable proves `deg_axis gcd(a, b) = 0`.
/// An image that keeps both degrees bounds the gcd degree from above, but
/// an unlucky point can merge distinct factors, so several points are tried.
fn coprime_in(a: &Poly2, b: &Poly2, axis: usize) -> bool {
    let (da, db) = (a.degree_in(axis) as usize, b.degree_in(axis) as usize);
    if da == 0 || db == 0 {
        return true;
    }
    let mut tried = 0;
    for at in [2, -1, 3, 1, -3, 5] {
        let ia = image(a, axis, at);
        let ib = image(b, axis, at);
        if ia.0.len() != da + 1 || ib.0.len() != db + 1 {
            continue;
        }
        if UPoly::gcd(&ia, &ib).deg() == 0 {
            return true;
        }
        tried += 1;
        if tried == 2 {
            break;
        }
    }
    false
}

fn eval_first(p: &RecPoly, at: &GaussRat) -> UPoly {
    UPoly(p.iter().map(|c| c.eval(at)).collect()).trim()
}

fn deg_first(p: &RecPoly) -> usize {
    p.iter().map(|c| c.deg()).max().unwrap_or(0)
}

/// Gcd of primitive parts by evaluating the first variable at integer points,
/// taking univariate gcds in the second and interpolating. The leading
/// coefficient is fixed in advance to the gcd of the two leading
/// coefficients. `None` when the candidate keeps failing the division test.
fn interpolation_gcd(template: &Poly2, pa: &RecPoly, pb: &RecPoly) -> Option<RecPoly> {
    let lca = pa.last()?;
    let lcb = pb.last()?;
    let gamma = UPoly::gcd(lca, lcb);
    let needed = gamma.deg() + deg_first(pa).min(deg_first(pb)) + 1;
    let (fa, fb) = (from_rec(template, pa), from_rec(template, pb));
    let mut nodes: Vec<GaussRat> = Vec::new();
    let mut images: Vec<UPoly> = Vec::new();
    let mut best = usize::MAX;
    let mut checks = 0;
    for n in 0..400i64 {
        let at = GaussRat::from_int(if n % 2 == 0 { n / 2 } else { -(n + 1) / 2 });
        if lca.eval(&at).is_zero() || lcb.eval(&at).is_zero() {
            continue;
        }
        let g = UPoly::gcd(&eval_first(pa, &at), &eval_first(pb, &at));
        if g.deg() == 0 {
            return Some(vec![UPoly::one()]);
        }
        if g.deg() > best {
            continue;
        }
        if g.deg() < best {
            best = g.deg();
            nodes.clear();
            images.clear();
        }
        images.push(g.scale(&gamma.eval(&at)));
        nodes.push(at);
        if nodes.len() < needed {
            continue;
        }
        let cand: RecPoly = (0..=best)
            .map(|k| {
                let ys: Vec<GaussRat> = images.iter().map(|im| im.0[k].clone()).collect();
                UPoly::interpolate(&nodes, &ys)
            })
            .collect();
        let cand = rec_primitive(&rec_trim(cand));
        let fc = from_rec(template, &cand);
        if fa.div_exact(&fc).is_some() && fb.div_exact(&fc).is_some() {
            return Some(cand);
        }
        checks += 1;
        if checks > 3 {
            return None;
        }
    }
    None
}

/// Primitive pseudo-remainder sequence; the slow but unconditional route.
fn prs_gcd(mut pa: RecPoly, mut pb: RecPoly) -> RecPoly {
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        if pb.is_empty() {
            return pa;
        }
        if pb.len() == 1 {
            return vec![UPoly::one()];
        }
        let r = rec_prem(&pa, &pb);
        pa = pb;
        pb = if r.is_empty() { r } else { rec_primitive(&r) };
    }
}

/// Greatest common divisor up to a nonzero constant factor. Returns the zero
/// polynomial only when both inputs are zero.
pub fn gcd(a: &Poly2, b: &Poly2) -> Poly2 {
    let vars = a.vars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly2::one(vars);
    }
    if a.num_terms() == 1 && b.num_terms() == 1 {
        let (ma, _) = a.leading().unwrap();
        let (mb, _) = b.leading().unwrap();
        return Poly2::monomial(vars, Mono(ma.0.min(mb.0), ma.1.min(mb.1)), GaussRat::one());
    }
    if coprime_in(a, b, 0) && coprime_in(a, b, 1) {
        return Poly2::one(vars);
    }
    let ra = to_rec(a);
    let rb = to_rec(b);
    let ca = rec_content(&ra);
    let cb = rec_content(&rb);
    let content = UPoly::gcd(&ca, &cb);
    let pa = rec_primitive(&ra);
    let pb = rec_primitive(&rb);
    let prim = if pa.len() == 1 || pb.len() == 1 {
        vec![UPoly::one()]
    } else {
        interpolation_gcd(a, &pa, &pb).unwrap_or_else(|| prs_gcd(pa, pb))
    };
    let g: RecPoly = prim.iter().map(|c| c.mul(&content)).collect();
    from_rec(a, &g)
}
