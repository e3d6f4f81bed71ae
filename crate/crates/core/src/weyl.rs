//! Normal-form arithmetic in the divided-power ring of differential
//! operators `D = R< d_i^[j] >` over `R = K[x_1,...,x_n]`.
//!
//! Every operator is kept as a finite combination of terms `x^a d^[b]` with
//! all `x`'s to the left of all `d`'s. Products are reduced to this form with
//! the two rewrite rules
//!
//! ```text
//! d^[s] d^[t]   = binom(s+t, s) d^[s+t]                       (same axis)
//! d^[s] x^t     = sum_{j<=min(s,t)} binom(t,j) x^{t-j} d^[s-j]
//! ```
//!
//! applied independently per axis; operators in distinct variables commute.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalars::{binom_field, CharSpec, FieldScalar};

/// Exponent pair of a normal-form term `x^{x_exp} d^[d_exp]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpMonomial {
    pub x_exp: Vec<u32>,
    pub d_exp: Vec<u32>,
}

impl OpMonomial {
    pub fn new(x_exp: Vec<u32>, d_exp: Vec<u32>) -> Self {
        OpMonomial { x_exp, d_exp }
    }

    pub fn identity(n: usize) -> Self {
        OpMonomial::new(vec![0; n], vec![0; n])
    }

    pub fn total_x(&self) -> u64 {
        self.x_exp.iter().map(|&e| e as u64).sum()
    }

    pub fn total_d(&self) -> u64 {
        self.d_exp.iter().map(|&e| e as u64).sum()
    }

    /// Z-degree of the term: `|x_exp| - |d_exp|`.
    pub fn degree(&self) -> i64 {
        self.total_x() as i64 - self.total_d() as i64
    }

    fn divides(&self, other: &OpMonomial) -> bool {
        self.x_exp.iter().zip(&other.x_exp).all(|(a, b)| a <= b)
            && self.d_exp.iter().zip(&other.d_exp).all(|(a, b)| a <= b)
    }
}

/// Term order used by the reducer: total degree `|x_exp| + |d_exp|` first,
/// ties broken lexicographically on the concatenated exponent vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TermOrder {
    #[default]
    DegLex,
}

impl TermOrder {
    pub fn cmp(self, a: &OpMonomial, b: &OpMonomial) -> Ordering {
        let (da, db) = (a.total_x() + a.total_d(), b.total_x() + b.total_d());
        da.cmp(&db)
            .then_with(|| a.x_exp.cmp(&b.x_exp))
            .then_with(|| a.d_exp.cmp(&b.d_exp))
    }
}

/// Homogeneity verdict of an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpDegree {
    /// The zero operator is homogeneous of every degree.
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

/// A differential operator in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DOp {
    n: usize,
    ch: CharSpec,
    terms: BTreeMap<OpMonomial, FieldScalar>,
}

impl DOp {
    pub fn zero(n: usize, ch: CharSpec) -> Self {
        DOp {
            n,
            ch,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, ch: CharSpec) -> Self {
        let mut op = DOp::zero(n, ch);
        op.add_term(OpMonomial::identity(n), FieldScalar::one(ch));
        op
    }

    pub fn constant(n: usize, ch: CharSpec, c: FieldScalar) -> Self {
        let mut op = DOp::zero(n, ch);
        op.add_term(OpMonomial::identity(n), c);
        op
    }

    /// The variable `x_i` (0-based axis).
    pub fn var(n: usize, ch: CharSpec, axis: usize) -> Result<Self> {
        if axis >= n {
            return Err(Error::input(format!("axis {axis} out of range for n={n}")));
        }
        let mut x = vec![0; n];
        x[axis] = 1;
        DOp::from_term(n, ch, x, vec![0; n], FieldScalar::one(ch))
    }

    /// The divided power `d_i^[j]` (0-based axis).
    pub fn d_power(n: usize, ch: CharSpec, axis: usize, j: u32) -> Result<Self> {
        if axis >= n {
            return Err(Error::input(format!("axis {axis} out of range for n={n}")));
        }
        let mut d = vec![0; n];
        d[axis] = j;
        DOp::from_term(n, ch, vec![0; n], d, FieldScalar::one(ch))
    }

    pub fn from_term(
        n: usize,
        ch: CharSpec,
        x_exp: Vec<u32>,
        d_exp: Vec<u32>,
        coeff: FieldScalar,
    ) -> Result<Self> {
        if x_exp.len() != n || d_exp.len() != n {
            return Err(Error::input("exponent vector length differs from n"));
        }
        if coeff.char_spec() != ch {
            return Err(Error::incompatible("coefficient characteristic mismatch"));
        }
        let mut op = DOp::zero(n, ch);
        op.add_term(OpMonomial::new(x_exp, d_exp), coeff);
        Ok(op)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn char_spec(&self) -> CharSpec {
        self.ch
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &OpMonomial) -> Option<&FieldScalar> {
        self.terms.get(key)
    }

    fn add_term(&mut self, key: OpMonomial, coeff: FieldScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &DOp) -> Result<()> {
        if self.n != other.n {
            return Err(Error::incompatible(format!(
                "operators over different variable counts: {} vs {}",
                self.n, other.n
            )));
        }
        if self.ch != other.ch {
            return Err(Error::incompatible(format!(
                "operators over different characteristics: {} vs {}",
                self.ch, other.ch
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &DOp) -> Result<DOp> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DOp) -> Result<DOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DOp {
        let mut out = DOp::zero(self.n, self.ch);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &FieldScalar) -> DOp {
        let mut out = DOp::zero(self.n, self.ch);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Normal-form product `self * other`.
    pub fn mul(&self, other: &DOp) -> Result<DOp> {
        self.check_compatible(other)?;
        let mut out = DOp::zero(self.n, self.ch);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let c = ca * cb;
                term_product(self.ch, ka, kb, &c, &mut out);
            }
        }
        Ok(out)
    }

    /// Homogeneity of the operator under `deg x_i = 1`, `deg d_i^[j] = -j`.
    pub fn degree(&self) -> OpDegree {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return OpDegree::Zero,
            Some(k) => k.degree(),
        };
        if it.all(|k| k.degree() == first) {
            OpDegree::Homogeneous(first)
        } else {
            OpDegree::Inhomogeneous
        }
    }

    /// Applies the operator to a Laurent polynomial, term by term:
    /// `x^a d^[b] . x^m = prod_i binom(m_i, b_i) x^{m - b + a}`.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if self.n != f.n || self.ch != f.ch {
            return Err(Error::incompatible(
                "operator and polynomial over different rings",
            ));
        }
        let mut out = LaurentPoly::zero(self.n, self.ch);
        for (k, c) in &self.terms {
            for (m, s) in &f.terms {
                let mut coeff = c * s;
                for i in 0..self.n {
                    if coeff.is_zero() {
                        break;
                    }
                    coeff = &coeff * &binom_field(m[i], k.d_exp[i] as u64, self.ch);
                }
                if coeff.is_zero() {
                    continue;
                }
                let target: Vec<i64> = (0..self.n)
                    .map(|i| m[i] - k.d_exp[i] as i64 + k.x_exp[i] as i64)
                    .collect();
                out.add_term(target, coeff);
            }
        }
        Ok(out)
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(&OpMonomial, &FieldScalar)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }
}

/// Product of two normal-form terms, accumulated into `out`.
///
/// Per axis `i`, moving `d^[s]` past `x^t` contributes a sum over
/// `j_i <= min(s_i, t_i)`; the coefficient of the choice `j` is
/// `prod_i binom(t_i, j_i) * binom(s_i + s'_i - j_i, s'_i)` where `s = a.d_exp`,
/// `(t, s') = (b.x_exp, b.d_exp)`.
fn term_product(ch: CharSpec, a: &OpMonomial, b: &OpMonomial, c: &FieldScalar, out: &mut DOp) {
    let n = a.x_exp.len();
    let bounds: Vec<u32> = (0..n).map(|i| a.d_exp[i].min(b.x_exp[i])).collect();
    let mut j = vec![0u32; n];
    loop {
        let mut coeff = c.clone();
        for i in 0..n {
            if coeff.is_zero() {
                break;
            }
            coeff = &coeff * &binom_field(b.x_exp[i] as i64, j[i] as u64, ch);
            let d_total = a.d_exp[i] + b.d_exp[i] - j[i];
            coeff = &coeff * &binom_field(d_total as i64, b.d_exp[i] as u64, ch);
        }
        if !coeff.is_zero() {
            let x_exp: Vec<u32> = (0..n).map(|i| a.x_exp[i] + b.x_exp[i] - j[i]).collect();
            let d_exp: Vec<u32> = (0..n).map(|i| a.d_exp[i] + b.d_exp[i] - j[i]).collect();
            out.add_term(OpMonomial::new(x_exp, d_exp), coeff);
        }
        // odometer over 0..=bounds
        let mut axis = 0;
        loop {
            if axis == n {
                return;
            }
            if j[axis] < bounds[axis] {
                j[axis] += 1;
                break;
            }
            j[axis] = 0;
            axis += 1;
        }
    }
}

/// The r-th Euler operator `E_r = sum_{|i| = r} x^i d^[i]`, homogeneous of
/// degree zero with `binom(n + r - 1, r)` terms.
pub fn euler_op(n: usize, r: u32, ch: CharSpec) -> Result<DOp> {
    if n == 0 {
        return Err(Error::input("need at least one variable"));
    }
    if r < 1 {
        return Err(Error::input("Euler operator index must be >= 1"));
    }
    let mut op = DOp::zero(n, ch);
    let mut comp = vec![0u32; n];
    fill_compositions(&mut comp, 0, r, &mut |c| {
        op.add_term(
            OpMonomial::new(c.to_vec(), c.to_vec()),
            FieldScalar::one(ch),
        );
    });
    Ok(op)
}

fn fill_compositions(comp: &mut Vec<u32>, axis: usize, remaining: u32, f: &mut impl FnMut(&[u32])) {
    if axis + 1 == comp.len() {
        comp[axis] = remaining;
        f(comp);
        return;
    }
    for v in 0..=remaining {
        comp[axis] = v;
        fill_compositions(comp, axis + 1, remaining - v, f);
    }
}

/// Builds `E_r` through the recurrence `E_{k+1} = (E_1 E_k - k E_k) / (k+1)`.
///
/// The division by `k+1` makes the recurrence unusable in characteristic `p`
/// whenever `k = -1 (mod p)`; those cases are rejected.
pub fn euler_op_via_recurrence(n: usize, r: u32, ch: CharSpec) -> Result<DOp> {
    let e1 = euler_op(n, 1, ch)?;
    let mut ek = e1.clone();
    for k in 1..r {
        let div = FieldScalar::from_i64(k as i64 + 1, ch);
        if div.is_zero() {
            return Err(Error::input(format!(
                "recurrence disabled: step {k} requires dividing by {} = 0 in characteristic {}",
                k + 1,
                ch
            )));
        }
        let kk = FieldScalar::from_i64(k as i64, ch);
        let next = e1.mul(&ek)?.sub(&ek.scale(&kk))?.scale(&div.inv()?);
        ek = next;
    }
    Ok(ek)
}

/// A finitely supported Laurent polynomial, the brute-force module `D` acts
/// on for oracle purposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    ch: CharSpec,
    terms: BTreeMap<Vec<i64>, FieldScalar>,
}

impl LaurentPoly {
    pub fn zero(n: usize, ch: CharSpec) -> Self {
        LaurentPoly {
            n,
            ch,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, ch: CharSpec, exps: Vec<i64>, coeff: FieldScalar) -> Result<Self> {
        if exps.len() != n {
            return Err(Error::input("exponent vector length differs from n"));
        }
        let mut f = LaurentPoly::zero(n, ch);
        f.add_term(exps, coeff);
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn char_spec(&self) -> CharSpec {
        self.ch
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, coeff: FieldScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.n != other.n || self.ch != other.ch {
            return Err(Error::incompatible("polynomials over different rings"));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldScalar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n, self.ch);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            write_signed_laurent_term(f, &mut first, c, exps)?;
        }
        Ok(())
    }
}

/// Result of the sound-but-incomplete left-ideal reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The remainder reached zero: the target lies in the left ideal.
    Member,
    /// Nonzero remainder: membership undecided by this procedure.
    Inconclusive(DOp),
}

/// Reduces `target` against left multiples of the given homogeneous
/// generators, cancelling leading terms in the given order.
///
/// A remainder of zero certifies membership in the left ideal generated by
/// `gens`; a nonzero remainder decides nothing.
pub fn reduce_by(gens: &[DOp], target: &DOp, order: TermOrder) -> Result<DOp> {
    if gens.is_empty() {
        return Err(Error::input("no generators given"));
    }
    for g in gens {
        target.check_compatible(g)?;
        if g.is_zero() {
            return Err(Error::input("zero generator"));
        }
        if matches!(g.degree(), OpDegree::Inhomogeneous) {
            return Err(Error::input("generators must be homogeneous"));
        }
    }
    let ch = target.ch;
    let leads: Vec<(OpMonomial, FieldScalar)> = gens
        .iter()
        .map(|g| {
            let (k, c) = g.leading_term(order).expect("nonzero generator");
            (k.clone(), c.clone())
        })
        .collect();

    let mut work = target.clone();
    let mut remainder = DOp::zero(target.n, ch);
    'outer: while let Some((lt, lc)) = work
        .leading_term(order)
        .map(|(k, c)| (k.clone(), c.clone()))
    {
        for (gi, (glt, glc)) in leads.iter().enumerate() {
            if !glt.divides(&lt) {
                continue;
            }
            // Leading coefficient of x^{lt.x - glt.x} d^[lt.d - glt.d] * g:
            // glc * prod_i binom(lt.d[i], glt.d[i]); it must be a unit.
            let mut factor = glc.clone();
            for i in 0..target.n {
                factor = &factor * &binom_field(lt.d_exp[i] as i64, glt.d_exp[i] as u64, ch);
            }
            if factor.is_zero() {
                continue;
            }
            let m_x: Vec<u32> = (0..target.n).map(|i| lt.x_exp[i] - glt.x_exp[i]).collect();
            let m_d: Vec<u32> = (0..target.n).map(|i| lt.d_exp[i] - glt.d_exp[i]).collect();
            let q = lc.div(&factor)?;
            let multiple = DOp::from_term(target.n, ch, m_x, m_d, q)?.mul(&gens[gi])?;
            work = work.sub(&multiple)?;
            debug_assert!(work.coeff(&lt).is_none(), "leading term did not cancel");
            continue 'outer;
        }
        // No generator cancels the leading term: move it to the remainder and
        // keep reducing the tail.
        work.terms.remove(&lt);
        remainder.add_term(lt, lc);
    }
    Ok(remainder)
}

/// Convenience wrapper around [`reduce_by`] returning a verdict.
pub fn membership(gens: &[DOp], target: &DOp, order: TermOrder) -> Result<Membership> {
    let rem = reduce_by(gens, target, order)?;
    Ok(if rem.is_zero() {
        Membership::Member
    } else {
        Membership::Inconclusive(rem)
    })
}

/// Renders one signed Laurent-monomial term, shared by the polynomial and
/// region-element displays.
pub(crate) fn write_signed_laurent_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    coeff: &FieldScalar,
    exps: &[i64],
) -> fmt::Result {
    write_signed_term(f, first, coeff, |f| write_x_monomial(f, exps))
}

fn write_x_monomial(f: &mut fmt::Formatter<'_>, exps: &[i64]) -> fmt::Result {
    let mut wrote = false;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if wrote {
            write!(f, "*")?;
        }
        wrote = true;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    if !wrote {
        write!(f, "1")?;
    }
    Ok(())
}

fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    coeff: &FieldScalar,
    body: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    // Renders "c * body" with the sign pulled out in characteristic zero.
    let (lead_neg, mag) = match coeff {
        FieldScalar::Rational(r) if r.is_negative() => (true, -coeff),
        _ => (false, coeff.clone()),
    };
    if *first {
        if lead_neg {
            write!(f, "-")?;
        }
        *first = false;
    } else if lead_neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    body(f)
}

impl fmt::Display for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Leading term first under the reduction order.
        let mut keys: Vec<&OpMonomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| TermOrder::DegLex.cmp(b, a));
        let mut first = true;
        for k in keys {
            let c = &self.terms[k];
            write_signed_term(f, &mut first, c, |f| {
                let mut wrote = false;
                for (i, &e) in k.x_exp.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    if e == 1 {
                        write!(f, "x{}", i + 1)?;
                    } else {
                        write!(f, "x{}^{}", i + 1, e)?;
                    }
                }
                for (i, &e) in k.d_exp.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    wrote = true;
                    if e == 1 {
                        write!(f, "d{}", i + 1)?;
                    } else {
                        write!(f, "d{}^[{}]", i + 1, e)?;
                    }
                }
                if !wrote {
                    write!(f, "1")?;
                }
                Ok(())
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CharSpec {
        CharSpec::Zero
    }

    fn one(ch: CharSpec) -> FieldScalar {
        FieldScalar::one(ch)
    }

    #[test]
    fn divided_powers_combine() {
        // d1 * d1 = 2 d1^[2]
        let d1 = DOp::d_power(1, q(), 0, 1).unwrap();
        let prod = d1.mul(&d1).unwrap();
        let expected = DOp::from_term(1, q(), vec![0], vec![2], FieldScalar::from_i64(2, q()))
            .unwrap();
        assert_eq!(prod, expected);
        // and in characteristic 2 the product vanishes
        let f2 = CharSpec::prime(2).unwrap();
        let d1 = DOp::d_power(1, f2, 0, 1).unwrap();
        assert!(d1.mul(&d1).unwrap().is_zero());
    }

    #[test]
    fn swap_rule_base_case() {
        // d1^[2] * x1 = x1 d1^[2] + d1
        let d2 = DOp::d_power(1, q(), 0, 2).unwrap();
        let x = DOp::var(1, q(), 0).unwrap();
        let prod = d2.mul(&x).unwrap();
        let expected = DOp::from_term(1, q(), vec![1], vec![2], one(q()))
            .unwrap()
            .add(&DOp::from_term(1, q(), vec![0], vec![1], one(q())).unwrap())
            .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn general_swap_rule() {
        // d^[s] x^t = sum_j binom(t, j) x^{t-j} d^[s-j]
        for ch in [q(), CharSpec::Prime(2), CharSpec::Prime(5)] {
            for s in 1..=5u32 {
                for t in 1..=5u32 {
                    let ds = DOp::d_power(1, ch, 0, s).unwrap();
                    let xt = DOp::from_term(1, ch, vec![t], vec![0], one(ch)).unwrap();
                    let prod = ds.mul(&xt).unwrap();
                    let mut expected = DOp::zero(1, ch);
                    for j in 0..=s.min(t) {
                        expected = expected
                            .add(
                                &DOp::from_term(
                                    1,
                                    ch,
                                    vec![t - j],
                                    vec![s - j],
                                    binom_field(t as i64, j as u64, ch),
                                )
                                .unwrap(),
                            )
                            .unwrap();
                    }
                    assert_eq!(prod, expected, "s={s} t={t} ch={ch}");
                }
            }
        }
    }

    #[test]
    fn euler_op_shapes() {
        // n = 1, r = 2: the single term x1^2 d1^[2]
        let e = euler_op(1, 2, q()).unwrap();
        assert_eq!(
            e,
            DOp::from_term(1, q(), vec![2], vec![2], one(q())).unwrap()
        );
        // n = 2, r = 1: x1 d1 + x2 d2
        let e = euler_op(2, 1, q()).unwrap();
        assert_eq!(e.num_terms(), 2);
        assert_eq!(e.degree(), OpDegree::Homogeneous(0));
        // n = 2, r = 2: three terms
        let e = euler_op(2, 2, q()).unwrap();
        assert_eq!(e.num_terms(), 3);
        assert!(e.coeff(&OpMonomial::new(vec![1, 1], vec![1, 1])).is_some());
        // term count is binom(n + r - 1, r)
        for n in 1..=3usize {
            for r in 1..=5u32 {
                let count = euler_op(n, r, q()).unwrap().num_terms();
                let expected = crate::scalars::binom_int(n as i64 + r as i64 - 1, r as u64);
                assert_eq!(num_bigint::BigInt::from(count), expected);
            }
        }
        assert!(euler_op(2, 0, q()).is_err());
    }

    #[test]
    fn euler_product_identity() {
        // E1 * E1 = 2 E2 + E1 for n = 2
        let e1 = euler_op(2, 1, q()).unwrap();
        let e2 = euler_op(2, 2, q()).unwrap();
        let lhs = e1.mul(&e1).unwrap();
        let rhs = e2
            .scale(&FieldScalar::from_i64(2, q()))
            .add(&e1)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_recurrence_matches_direct() {
        for n in 1..=3usize {
            for r in 1..=5u32 {
                for ch in [q(), CharSpec::Prime(2), CharSpec::Prime(3)] {
                    match euler_op_via_recurrence(n, r, ch) {
                        Ok(op) => assert_eq!(op, euler_op(n, r, ch).unwrap(), "n={n} r={r}"),
                        Err(_) => {
                            // only rejected when some step hits k = -1 mod p
                            let p = ch.modulus().unwrap();
                            assert!((1..r as u64).any(|k| (k + 1) % p == 0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        // d1^[2] applied to x1^3 -> 3 x1
        let op = DOp::d_power(1, q(), 0, 2).unwrap();
        let f = LaurentPoly::monomial(1, q(), vec![3], one(q())).unwrap();
        let res = op.apply(&f).unwrap();
        assert_eq!(
            res,
            LaurentPoly::monomial(1, q(), vec![1], FieldScalar::from_i64(3, q())).unwrap()
        );
        // d1 applied to x1^{-1} -> -x1^{-2}
        let op = DOp::d_power(1, q(), 0, 1).unwrap();
        let f = LaurentPoly::monomial(1, q(), vec![-1], one(q())).unwrap();
        let res = op.apply(&f).unwrap();
        assert_eq!(
            res,
            LaurentPoly::monomial(1, q(), vec![-2], FieldScalar::from_i64(-1, q())).unwrap()
        );
        // E_r applied to x^j -> binom(|j|, r) x^j
        for r in 1..=4u32 {
            let er = euler_op(2, r, q()).unwrap();
            for j in [[3i64, 2], [-1, 4], [-2, -5]] {
                let f = LaurentPoly::monomial(2, q(), j.to_vec(), one(q())).unwrap();
                let res = er.apply(&f).unwrap();
                let c = binom_field(j.iter().sum(), r as u64, q());
                assert_eq!(res, f.scale(&c));
            }
        }
    }

    #[test]
    fn degree_verdicts() {
        assert_eq!(
            euler_op(3, 4, q()).unwrap().degree(),
            OpDegree::Homogeneous(0)
        );
        let x1d1 = DOp::from_term(1, q(), vec![1], vec![1], one(q())).unwrap();
        let x1 = DOp::var(1, q(), 0).unwrap();
        assert_eq!(x1d1.add(&x1).unwrap().degree(), OpDegree::Inhomogeneous);
        let t = DOp::from_term(2, q(), vec![2, 0], vec![0, 3], one(q())).unwrap();
        assert_eq!(t.degree(), OpDegree::Homogeneous(-1));
        assert_eq!(DOp::zero(2, q()).degree(), OpDegree::Zero);
    }

    #[test]
    fn d_is_not_eulerian() {
        // E_1 * 1 = E_1 != 0 although deg(1) = 0
        let e1 = euler_op(2, 1, q()).unwrap();
        let id = DOp::one(2, q());
        assert_eq!(e1.mul(&id).unwrap(), e1);
        assert!(!e1.is_zero());
    }

    #[test]
    fn reduce_self() {
        let e1 = euler_op(2, 1, q()).unwrap();
        let rem = reduce_by(&[e1.clone()], &e1, TermOrder::DegLex).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn reduce_euler_square() {
        let e1 = euler_op(2, 1, q()).unwrap();
        let sq = e1.mul(&e1).unwrap();
        let rem = reduce_by(&[e1], &sq, TermOrder::DegLex).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn all_euler_ops_reduce_to_zero_char_zero() {
        for n in 1..=3usize {
            let e1 = euler_op(n, 1, q()).unwrap();
            for r in 1..=5u32 {
                let er = euler_op(n, r, q()).unwrap();
                let rem = reduce_by(std::slice::from_ref(&e1), &er, TermOrder::DegLex).unwrap();
                assert!(rem.is_zero(), "E_{r} did not reduce to 0 for n={n}");
            }
        }
    }

    #[test]
    fn reduce_rejects_bad_generators() {
        let e1 = euler_op(2, 1, q()).unwrap();
        assert!(reduce_by(&[DOp::zero(2, q())], &e1, TermOrder::DegLex).is_err());
        let inhom = e1.add(&DOp::var(2, q(), 0).unwrap()).unwrap();
        assert!(reduce_by(&[inhom], &e1, TermOrder::DegLex).is_err());
        assert!(reduce_by(&[], &e1, TermOrder::DegLex).is_err());
    }

    #[test]
    fn display_round_shapes() {
        let e2 = euler_op(2, 2, q()).unwrap();
        assert_eq!(
            e2.to_string(),
            "x1^2*d1^[2] + x1*x2*d1*d2 + x2^2*d2^[2]"
        );
        let c = DOp::constant(2, q(), FieldScalar::from_i64(-3, q()));
        assert_eq!(c.to_string(), "-3*1");
        assert_eq!(DOp::zero(1, q()).to_string(), "0");
    }

    #[test]
    fn incompatible_operands_rejected() {
        let a = euler_op(2, 1, q()).unwrap();
        let b = euler_op(3, 1, q()).unwrap();
        assert!(a.mul(&b).is_err());
        let c = euler_op(2, 1, CharSpec::Prime(3)).unwrap();
        assert!(a.add(&c).is_err());
    }
}
