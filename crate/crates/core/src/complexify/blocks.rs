//! Prolongation blocks `P^(k)` of a linear base change.
//!
//! Row `r` of `P^(k)` writes the `k`-th order target jet with `r` derivatives
//! in the second target variable as a combination of the source jets
//! `u_{(k-q) s1, q s2}`, `q = 0..=k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact_arith::{ArithError, BigRat, GaussRat};

use super::{BaseChange, CMatrix};

/// Block `P^(k)` with `V^(k) = P^(k) U^(k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub k: u32,
    pub entries: CMatrix,
}

impl Block {
    pub fn entry(&self, r: usize, s: usize) -> &GaussRat {
        self.entries.get(r, s)
    }
}

/// Multiplies a homogeneous form in two commuting symbols by `a*D1 + b*D2`.
/// Index `q` of the vector holds the coefficient of `D1^(deg-q) D2^q`.
fn mul_linear(form: &[GaussRat], a: &GaussRat, b: &GaussRat) -> Vec<GaussRat> {
    let mut out = vec![GaussRat::zero(); form.len() + 1];
    for (q, c) in form.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out[q] += &(c * a);
        out[q + 1] += &(c * b);
    }
    out
}

/// Expands `(D_t1)^(k-r) (D_t2)^r` with `D_ta` given by the first-order rows.
pub(crate) fn expand_block(first_order: &[[GaussRat; 2]; 2], k: u32) -> Block {
    let n = k as usize + 1;
    let mut m = CMatrix::zeros(n);
    for r in 0..n {
        let mut form = vec![GaussRat::one()];
        for _ in 0..(n - 1 - r) {
            form = mul_linear(&form, &first_order[0][0], &first_order[0][1]);
        }
        for _ in 0..r {
            form = mul_linear(&form, &first_order[1][0], &first_order[1][1]);
        }
        for (q, c) in form.into_iter().enumerate() {
            m.set(r, q, c);
        }
    }
    Block { k, entries: m }
}

/// `P^(k)` of the given base change (cached per map and order).
pub fn prolong_block(map: &BaseChange, k: u32) -> Block {
    map.block(k).as_ref().clone()
}

/// Exact inverse `Q^(k)` of `P^(k)`.
pub fn block_inverse(map: &BaseChange, k: u32) -> Block {
    let p = map.block(k);
    Block {
        k,
        entries: p
            .entries
            .inverse()
            .expect("prolongation blocks are invertible"),
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Entry `p^k_{rs}` of the canonical Wirtinger block by its closed-form sum.
pub fn closed_form_p(k: u32, r: u32, s: u32) -> Result<GaussRat, ArithError> {
    if r > k || s > k {
        return Err(ArithError::IndexOutOfRange);
    }
    let (k_, r_, s_) = (k as i64, r as i64, s as i64);
    let lower = 0.max(k_ - r_ - s_);
    let upper = (k_ - r_).min(k_ - s_);
    let mut sum = BigRat::zero();
    for alpha in lower..=upper {
        let den = factorial(alpha as u32)
            * factorial((k_ - s_ - alpha) as u32)
            * factorial((k_ - r_ - alpha) as u32)
            * factorial((r_ + s_ + alpha - k_) as u32);
        let sign = if alpha % 2 == 0 { 1 } else { -1 };
        sum += BigRat::new(BigInt::from(sign), den);
    }
    let prefactor = BigRat::new(factorial(r) * factorial(k - r), BigInt::from(2).pow(k));
    let sign = if (k - r).is_multiple_of(2) { 1 } else { -1 };
    let real = sum * prefactor * BigRat::from_integer(BigInt::from(sign));
    Ok(GaussRat::real(real) * GaussRat::i_pow(s as i64))
}

/// Whole canonical block from the closed form.
pub fn closed_form_block(k: u32) -> Block {
    let n = k as usize + 1;
    Block {
        k,
        entries: CMatrix::from_fn(n, |r, s| closed_form_p(k, r as u32, s as u32).unwrap()),
    }
}

/// Canonical blocks `P^(0..=k_max)` generated by the order-raising recurrence.
pub fn recurrence_blocks(k_max: u32) -> Vec<Block> {
    let half = GaussRat::from_ratio(1, 2);
    let i = GaussRat::i();
    let mut blocks = vec![Block {
        k: 0,
        entries: CMatrix::identity(1),
    }];
    for k in 0..k_max {
        let prev = &blocks[k as usize].entries;
        let n = k as usize + 1;
        let at = |r: usize, s: isize| -> GaussRat {
            if s < 0 || s as usize >= n {
                GaussRat::zero()
            } else {
                prev.get(r, s as usize).clone()
            }
        };
        let next = CMatrix::from_fn(n + 1, |r, s| {
            let s = s as isize;
            if r < n {
                &half * &(at(r, s) - &i * &at(r, s - 1))
            } else {
                &half * &(at(n - 1, s) + &i * &at(n - 1, s - 1))
            }
        });
        blocks.push(Block {
            k: k + 1,
            entries: next,
        });
    }
    blocks
}

/// `q^k_{rs} = 2^k i^{r+s} p^k_{rs}` applied to a canonical block.
pub fn q_formula_block(p: &Block) -> Block {
    let two_k = GaussRat::real(BigRat::from_integer(BigInt::from(2).pow(p.k)));
    let n = p.k as usize + 1;
    Block {
        k: p.k,
        entries: CMatrix::from_fn(n, |r, s| {
            &two_k * &(GaussRat::i_pow((r + s) as i64) * p.entry(r, s))
        }),
    }
}

/// Outcome of the structural checks on one order `k`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BlockChecks {
    pub k: u32,
    /// `P * Q = I`, with `Q` from exact elimination.
    pub inverse_law: bool,
    /// Elimination inverse equals the block of the inverse base change.
    pub inverse_matches_reverse_map: bool,
    /// Canonical map only: closed form equals the direct expansion.
    pub closed_form: Option<bool>,
    /// Canonical map only: recurrence equals the closed form.
    pub recurrence: Option<bool>,
    /// Canonical map only: `q^k_{rs} = 2^k i^{r+s} p^k_{rs}`.
    pub q_formula: Option<bool>,
    /// Canonical map only: `conj(p^k_{rq}) = p^k_{k-r,q}`.
    pub conjugation_symmetry: Option<bool>,
    /// `conj(P) Q` is the antidiagonal permutation (canonical), or real (other maps).
    pub reality: bool,
}

impl BlockChecks {
    pub fn all_pass(&self) -> bool {
        self.inverse_law
            && self.inverse_matches_reverse_map
            && self.reality
            && [
                self.closed_form,
                self.recurrence,
                self.q_formula,
                self.conjugation_symmetry,
            ]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

/// Runs every applicable block identity for orders `0..=k_max`.
pub fn check_blocks(map: &BaseChange, k_max: u32) -> Vec<BlockChecks> {
    let canonical = map.is_canonical_wirtinger();
    let reverse = map.inverse();
    let rec = if canonical {
        recurrence_blocks(k_max)
    } else {
        Vec::new()
    };
    (0..=k_max)
        .map(|k| {
            let p = prolong_block(map, k);
            let q = block_inverse(map, k);
            let n = k as usize + 1;
            let inverse_law = p.entries.mul(&q.entries) == CMatrix::identity(n);
            let inverse_matches_reverse_map = prolong_block(&reverse, k).entries == q.entries;
            let conj_q = p.entries.conj().mul(&q.entries);
            let (closed_form, recurrence, q_formula, conjugation_symmetry, reality) = if canonical {
                let cf = closed_form_block(k);
                let sym =
                    (0..n).all(|r| (0..n).all(|s| p.entry(r, s).conj() == *p.entry(n - 1 - r, s)));
                (
                    Some(cf == p),
                    Some(rec[k as usize] == cf),
                    Some(q_formula_block(&p).entries == q.entries),
                    Some(sym),
                    conj_q == CMatrix::antidiagonal(n),
                )
            } else {
                (None, None, None, None, conj_q.is_real())
            };
            BlockChecks {
                k,
                inverse_law,
                inverse_matches_reverse_map,
                closed_form,
                recurrence,
                q_formula,
                conjugation_symmetry,
                reality,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussRat {
        GaussRat::from_ratio(re.0, re.1) + GaussRat::from_ratio(im.0, im.1) * GaussRat::i()
    }

    #[test]
    fn canonical_first_order_block() {
        let b = prolong_block(&BaseChange::canonical_wirtinger(), 1);
        assert_eq!(b.entry(0, 0), &g((1, 2), (0, 1)));
        assert_eq!(b.entry(0, 1), &g((0, 1), (-1, 2)));
        assert_eq!(b.entry(1, 0), &g((1, 2), (0, 1)));
        assert_eq!(b.entry(1, 1), &g((0, 1), (1, 2)));
    }

    #[test]
    fn canonical_second_order_block() {
        // oracle: square and multiply the first-order rows by hand
        // D_z^2 = 1/4 (D_xx - 2i D_xy - D_yy), D_z D_zbar = 1/4 (D_xx + D_yy)
        let b = prolong_block(&BaseChange::canonical_wirtinger(), 2);
        let expected = [
            [g((1, 4), (0, 1)), g((0, 1), (-1, 2)), g((-1, 4), (0, 1))],
            [g((1, 4), (0, 1)), g((0, 1), (0, 1)), g((1, 4), (0, 1))],
            [g((1, 4), (0, 1)), g((0, 1), (1, 2)), g((-1, 4), (0, 1))],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (s, v) in row.iter().enumerate() {
                assert_eq!(b.entry(r, s), v, "entry ({r},{s})");
            }
        }
    }

    #[test]
    fn zeroth_block_is_one() {
        for map in [
            BaseChange::canonical_wirtinger(),
            BaseChange::euler_darboux(),
        ] {
            assert_eq!(prolong_block(&map, 0).entries, CMatrix::identity(1));
        }
    }

    #[test]
    fn closed_form_small_entries() {
        assert_eq!(closed_form_p(1, 0, 0).unwrap(), GaussRat::from_ratio(1, 2));
        assert_eq!(closed_form_p(1, 0, 1).unwrap(), g((0, 1), (-1, 2)));
        assert_eq!(closed_form_p(2, 3, 0), Err(ArithError::IndexOutOfRange));
    }

    #[test]
    fn canonical_inverse_first_order() {
        let q = block_inverse(&BaseChange::canonical_wirtinger(), 1);
        let one = GaussRat::one();
        let i = GaussRat::i();
        assert_eq!(q.entry(0, 0), &one);
        assert_eq!(q.entry(0, 1), &one);
        assert_eq!(q.entry(1, 0), &i);
        assert_eq!(q.entry(1, 1), &-&i);
    }

    #[test]
    fn g_transform_inverse_block() {
        // chain rule: D_X = (D_x + D_y)/2, D_Y = (D_x - D_y)/2
        let p = prolong_block(&BaseChange::g_transform(), 1);
        let h = GaussRat::from_ratio(1, 2);
        assert_eq!(p.entry(0, 0), &h);
        assert_eq!(p.entry(0, 1), &h);
        assert_eq!(p.entry(1, 0), &h);
        assert_eq!(p.entry(1, 1), &-&h);
    }

    #[test]
    fn all_checks_pass_for_small_orders() {
        for map in [
            BaseChange::canonical_wirtinger(),
            BaseChange::euler_darboux(),
            BaseChange::euler_darboux_literal(),
            BaseChange::g_transform(),
        ] {
            for c in check_blocks(&map, 4) {
                assert!(c.all_pass(), "{:?}", c);
            }
        }
    }
}
