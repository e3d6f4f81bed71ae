//! Characteristic-p layer: the Frobenius digit splitting of monomials, the
//! operator action induced through an F-module structure, and the Eulerian
//! check that the induced action satisfies Euler's formula.
//!
//! The F-module structure used here is the monomial identification
//! `x^a <-> x^y (x^w)^{p^e}` with every digit `0 <= y_i < p^e`; the root
//! exponent `w_i` may be negative on inverted axes. An operator whose total
//! divided-power order is below `p^e` is `R^{p^e}`-linear, so it acts on the
//! digit part alone and the result is reassembled through the same
//! identification.

use crate::error::{Error, Result};
use crate::region::{AxisRule, DegreeBox, EulerianVerdict, ModElem, RegionModule};
use crate::scalars::{binom_field, CharSpec, FieldScalar};
use crate::weyl::{euler_op, DOp};

/// One split support monomial: `coeff * x^{digit} (x^{root})^{p^e}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusPiece {
    pub digit: Vec<i64>,
    pub root: Vec<i64>,
    pub coeff: FieldScalar,
}

/// `p^e` with overflow checking.
pub fn frobenius_power(ch: CharSpec, e: u32) -> Result<i64> {
    let p = ch
        .modulus()
        .ok_or_else(|| Error::input("Frobenius requires positive characteristic"))?;
    if e == 0 {
        return Err(Error::input("Frobenius exponent must be >= 1"));
    }
    let q = p.checked_pow(e).ok_or_else(|| Error::input("p^e overflows"))?;
    i64::try_from(q).map_err(|_| Error::input("p^e overflows"))
}

/// Base-`p^e` digit split `a = digit + p^e * root` with `0 <= digit < p^e`.
pub fn split_monomial(mu: &[i64], pe: i64) -> (Vec<i64>, Vec<i64>) {
    let digit: Vec<i64> = mu.iter().map(|&a| a.rem_euclid(pe)).collect();
    let root: Vec<i64> = mu
        .iter()
        .zip(&digit)
        .map(|(&a, &y)| (a - y) / pe)
        .collect();
    (digit, root)
}

/// Writes an element as a sum of `coeff * x^digit (x^root)^{p^e}` pieces.
/// The root always satisfies the region rules of the parent module.
pub fn frobenius_decompose(z: &ModElem, e: u32) -> Result<Vec<FrobeniusPiece>> {
    let m = z.module();
    let pe = frobenius_power(m.char_spec(), e)?;
    let mut out = Vec::new();
    for (mu, c) in z.terms() {
        let (digit, root) = split_monomial(mu, pe);
        debug_assert!(m.contains(&root), "digit split left the region");
        out.push(FrobeniusPiece {
            digit,
            root,
            coeff: c.clone(),
        });
    }
    Ok(out)
}

/// Applies an operator of total order `< p^e` through the digit split: the
/// operator acts on digit parts, the result is reassembled as
/// `x^{digit'} (x^root)^{p^e}` and region kill rules apply to the result.
pub fn induced_action(op: &DOp, z: &ModElem, e: u32) -> Result<ModElem> {
    let m = z.module();
    if op.n() != m.n() || op.char_spec() != m.char_spec() {
        return Err(Error::incompatible(
            "operator and element over different rings",
        ));
    }
    let pe = frobenius_power(m.char_spec(), e)?;
    for (key, _) in op.terms() {
        if key.total_d() as i64 >= pe {
            return Err(Error::input(format!(
                "operator order {} is not below p^e = {}",
                key.total_d(),
                pe
            )));
        }
    }
    let ch = m.char_spec();
    let mut out = ModElem::zero(m.clone());
    for (key, c) in op.terms() {
        for piece in frobenius_decompose(z, e)? {
            let mut coeff = &piece.coeff * c;
            for i in 0..m.n() {
                if coeff.is_zero() {
                    break;
                }
                coeff = &coeff * &binom_field(piece.digit[i], key.d_exp[i] as u64, ch);
            }
            if coeff.is_zero() {
                continue;
            }
            let target: Vec<i64> = (0..m.n())
                .map(|i| {
                    piece.digit[i] - key.d_exp[i] as i64 + key.x_exp[i] as i64 + pe * piece.root[i]
                })
                .collect();
            let mut killed = false;
            for i in 0..m.n() {
                if matches!(m.rule(i), AxisRule::NegOnly) && target[i] >= 0 {
                    killed = true;
                    break;
                }
            }
            if !killed {
                out = out.add(&ModElem::monomial(m.clone(), target, coeff)?)?;
            }
        }
    }
    Ok(out)
}

/// Verifies on box basis monomials that the induced action satisfies Euler's
/// formula: for each `r <= r_max`, with `e` minimal such that `p^e >= r+1`,
/// `E_r . z` through the digit split equals `binom(deg z, r) z`.
pub fn check_fmodule_eulerian(
    module: &RegionModule,
    bx: &DegreeBox,
    r_max: u32,
) -> Result<EulerianVerdict> {
    let ch = module.char_spec();
    let p = ch
        .modulus()
        .ok_or_else(|| Error::input("F-module check requires positive characteristic"))?;
    if bx.n() != module.n() {
        return Err(Error::input("box dimension differs from module"));
    }
    let mut eulers = Vec::with_capacity(r_max as usize);
    let mut exps = Vec::with_capacity(r_max as usize);
    for r in 1..=r_max {
        eulers.push(euler_op(module.n(), r, ch)?);
        let mut e = 1u32;
        while frobenius_power(ch, e)? < r as i64 + 1 {
            e += 1;
        }
        exps.push(e);
    }
    let _ = p;
    for alpha in module.basis_in_box(bx) {
        let z = ModElem::monomial(module.clone(), alpha.clone(), FieldScalar::one(ch))?;
        let deg = module.total_degree(&alpha);
        for (i, er) in eulers.iter().enumerate() {
            let r = i as u32 + 1;
            let lhs = induced_action(er, &z, exps[i])?;
            let rhs = z.scale(&binom_field(deg, r as u64, ch));
            if lhs != rhs {
                return Ok(EulerianVerdict::Witness { alpha, r, lhs, rhs });
            }
        }
    }
    Ok(EulerianVerdict::Eulerian { r_max })
}
