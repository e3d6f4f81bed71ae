//! Exact coefficient arithmetic over `Q` and `F_p`, and generalized binomial
//! coefficients `binom(a, b)` for an arbitrary integer upper argument.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Characteristic of the coefficient field: zero or a prime `p >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharSpec {
    Zero,
    Prime(u64),
}

impl CharSpec {
    /// Builds a prime characteristic, rejecting composites.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CharSpec::Prime(p))
        } else {
            Err(Error::input(format!("{p} is not a prime characteristic")))
        }
    }

    /// `0` means characteristic zero, anything else must be prime.
    pub fn new(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(CharSpec::Zero)
        } else {
            CharSpec::prime(c)
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, CharSpec::Zero)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            CharSpec::Zero => None,
            CharSpec::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for CharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpec::Zero => write!(f, "0"),
            CharSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element: a rational in characteristic zero, a residue in
/// `{0, ..., p-1}` in characteristic `p`. Equality is decidable and exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldScalar {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn zero(ch: CharSpec) -> Self {
        match ch {
            CharSpec::Zero => FieldScalar::Rational(BigRational::zero()),
            CharSpec::Prime(p) => FieldScalar::Modular {
                residue: 0,
                modulus: p,
            },
        }
    }

    pub fn one(ch: CharSpec) -> Self {
        match ch {
            CharSpec::Zero => FieldScalar::Rational(BigRational::one()),
            CharSpec::Prime(p) => FieldScalar::Modular {
                residue: 1 % p,
                modulus: p,
            },
        }
    }

    pub fn from_i64(v: i64, ch: CharSpec) -> Self {
        match ch {
            CharSpec::Zero => FieldScalar::Rational(BigRational::from(BigInt::from(v))),
            CharSpec::Prime(p) => FieldScalar::Modular {
                residue: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(v: &BigInt, ch: CharSpec) -> Self {
        match ch {
            CharSpec::Zero => FieldScalar::Rational(BigRational::from(v.clone())),
            CharSpec::Prime(p) => {
                let m = BigInt::from(p);
                let r = v.mod_floor(&m);
                let (_, digits) = r.to_u64_digits();
                FieldScalar::Modular {
                    residue: digits.first().copied().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    /// Exact rational `num/den` in characteristic zero.
    pub fn from_ratio(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        Ok(FieldScalar::Rational(BigRational::new(num, den)))
    }

    pub fn char_spec(&self) -> CharSpec {
        match self {
            FieldScalar::Rational(_) => CharSpec::Zero,
            FieldScalar::Modular { modulus, .. } => CharSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Modular { residue, modulus } => *residue == 1 % *modulus,
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.char_spec(),
            other.char_spec(),
            "scalar arithmetic across different characteristics"
        );
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::input("division by zero"));
        }
        Ok(match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(r.recip()),
            FieldScalar::Modular { residue, modulus } => FieldScalar::Modular {
                residue: mod_inv(*residue, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
}

impl Add for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (
                FieldScalar::Modular {
                    residue: a,
                    modulus: p,
                },
                FieldScalar::Modular { residue: b, .. },
            ) => FieldScalar::Modular {
                residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        self + &(-rhs)
    }
}

impl Mul for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (
                FieldScalar::Modular {
                    residue: a,
                    modulus: p,
                },
                FieldScalar::Modular { residue: b, .. },
            ) => FieldScalar::Modular {
                residue: ((*a as u128 * *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Modular { residue, modulus } => FieldScalar::Modular {
                residue: (*modulus - *residue) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime and a nonzero mod p
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a non-unit");
    s0.rem_euclid(p as i128) as u64
}

/// The generalized binomial coefficient `a(a-1)...(a-b+1) / b!` as an exact
/// integer. The upper argument may be negative; `binom_int(a, 0) = 1`.
pub fn binom_int(a: i64, b: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 0..b {
        acc *= BigInt::from(a) - BigInt::from(k);
        let (q, r) = acc.div_rem(&BigInt::from(k + 1));
        debug_assert!(r.is_zero(), "product of consecutive integers not divisible");
        acc = q;
    }
    acc
}

/// `binom_int(a, b)` reduced into the field of the given characteristic.
pub fn binom_field(a: i64, b: u64, ch: CharSpec) -> FieldScalar {
    match ch {
        CharSpec::Zero => FieldScalar::Rational(BigRational::from(binom_int(a, b))),
        CharSpec::Prime(p) => {
            if a >= 0 {
                // Lucas digit product; agreement with the reduce-after-integer
                // path is property-tested.
                FieldScalar::Modular {
                    residue: binom_mod_lucas(a as u64, b, p),
                    modulus: p,
                }
            } else {
                FieldScalar::from_bigint(&binom_int(a, b), ch)
            }
        }
    }
}

/// Lucas' theorem for nonnegative arguments: the product over base-p digits.
fn binom_mod_lucas(mut a: u64, mut b: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while b > 0 {
        let (ad, bd) = (a % p, b % p);
        acc = (acc as u128 * binom_small_mod(ad, bd, p) as u128 % p as u128) as u64;
        if acc == 0 {
            return 0;
        }
        a /= p;
        b /= p;
    }
    acc
}

fn binom_small_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for k in 0..b {
        num = num * ((a - k) % p) as u128 % p as u128;
        den = den * ((k + 1) % p) as u128 % p as u128;
    }
    (num * mod_inv(den as u64, p) as u128 % p as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binom_int_basics() {
        assert_eq!(binom_int(5, 2), BigInt::from(10));
        assert_eq!(binom_int(-1, 3), BigInt::from(-1));
        for r in 1..8u64 {
            assert_eq!(binom_int(0, r), BigInt::zero());
        }
        for a in -10..=10i64 {
            assert_eq!(binom_int(a, 0), BigInt::one());
        }
    }

    #[test]
    fn pascal_rule() {
        for a in -10..=10i64 {
            for b in 1..=10u64 {
                assert_eq!(
                    binom_int(a, b),
                    binom_int(a - 1, b) + binom_int(a - 1, b - 1),
                    "pascal failed at ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn vandermonde() {
        for a in -8..=8i64 {
            for j in 0..=8i64 {
                for r in 0..=8u64 {
                    let mut sum = BigInt::zero();
                    for k in 0..=r.min(j as u64) {
                        sum += binom_int(j, k) * binom_int(a - j, r - k);
                    }
                    assert_eq!(binom_int(a, r), sum, "vandermonde at a={a} j={j} r={r}");
                }
            }
        }
    }

    #[test]
    fn multi_index_sum_identity() {
        // binom(j1+...+jn, r) = sum over |i| = r of prod binom(j_k, i_k)
        let js: [&[i64]; 5] = [&[3, 2], &[-1, 4], &[-3, -2, 5], &[0, 0, 1], &[2, -5, -1]];
        for j in js {
            let total: i64 = j.iter().sum();
            for r in 0..=5u64 {
                let mut sum = BigInt::zero();
                for comp in compositions(r, j.len()) {
                    let mut prod = BigInt::one();
                    for (jk, ik) in j.iter().zip(&comp) {
                        prod *= binom_int(*jk, *ik);
                    }
                    sum += prod;
                }
                assert_eq!(binom_int(total, r), sum);
            }
        }
    }

    fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
        if parts == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for rest in compositions(total - first, parts - 1) {
                let mut c = vec![first];
                c.extend(rest);
                out.push(c);
            }
        }
        out
    }

    #[test]
    fn binom_field_basics() {
        let f2 = CharSpec::prime(2).unwrap();
        assert!(binom_field(2, 1, f2).is_zero());
        for p in [2u64, 3, 5] {
            let ch = CharSpec::prime(p).unwrap();
            for r in 0..=10u64 {
                let sign = if r % 2 == 0 { 1 } else { -1 };
                assert_eq!(binom_field(-1, r, ch), FieldScalar::from_i64(sign, ch));
            }
        }
    }

    #[test]
    fn prime_power_congruence() {
        // binom(p^e c + d, r) = binom(d, r) in F_p whenever 0 <= r < p^e, d >= 0
        for p in [2u64, 3, 5] {
            let ch = CharSpec::prime(p).unwrap();
            for e in 1..=3u32 {
                let q = p.pow(e) as i64;
                for c in -2..=2i64 {
                    for d in 0..=10i64 {
                        for r in 0..(q as u64).min(12) {
                            assert_eq!(
                                binom_field(q * c + d, r, ch),
                                binom_field(d, r, ch),
                                "congruence failed p={p} e={e} c={c} d={d} r={r}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distinctness_char_zero() {
        for a in -10..=10i64 {
            for b in -10..=10i64 {
                if a == b {
                    continue;
                }
                assert!(
                    (1..=20u64).any(|r| binom_int(a, r) != binom_int(b, r)),
                    "no separating r for {a}, {b}"
                );
            }
        }
    }

    #[test]
    fn distinctness_char_p() {
        // binom(a, r) = binom(b, r) in F_p for all r < p^e iff a = b mod p^e
        for p in [2u64, 3] {
            let ch = CharSpec::prime(p).unwrap();
            for e in 1..=3u32 {
                let q = p.pow(e) as i64;
                for a in -20..=20i64 {
                    for b in -20..=20i64 {
                        let all_agree =
                            (0..q as u64).all(|r| binom_field(a, r, ch) == binom_field(b, r, ch));
                        assert_eq!(
                            all_agree,
                            (a - b).rem_euclid(q) == 0,
                            "p={p} e={e} a={a} b={b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn not_prime_rejected() {
        assert!(CharSpec::prime(1).is_err());
        assert!(CharSpec::prime(4).is_err());
        assert!(CharSpec::prime(91).is_err());
        assert!(CharSpec::new(0).unwrap().is_zero());
        assert!(CharSpec::new(7).is_ok());
    }

    proptest! {
        #[test]
        fn lucas_agrees_with_reduction(a in 0i64..400, b in 0u64..400, pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            let ch = CharSpec::prime(p).unwrap();
            let fast = binom_field(a, b, ch);
            let slow = FieldScalar::from_bigint(&binom_int(a, b), ch);
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn field_axioms(xa in -40i64..40, xb in -40i64..40, xc in -40i64..40, ci in 0usize..4) {
            let chars = [CharSpec::Zero, CharSpec::Prime(2), CharSpec::Prime(3), CharSpec::Prime(5)];
            let ch = chars[ci];
            let a = FieldScalar::from_i64(xa, ch);
            let b = FieldScalar::from_i64(xb, ch);
            let c = FieldScalar::from_i64(xc, ch);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
