//! Graded-hull computations for monomial primes: a-invariants of the
//! quotients, the minimal degree of the prime's annihilator in top local
//! cohomology, Eulerian shift scans, and multiplication bijectivity.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use crate::cech::{local_cohomology, MonomialIdeal};
use crate::error::{Error, Result};
use crate::region::{
    is_eulerian_witness, make_module, AxisRule, DegreeBox, ModuleKind, RegionModule,
};
use crate::scalars::CharSpec;

/// A prime generated by a subset of the variables (0-based axes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPrime {
    n: usize,
    vars: BTreeSet<usize>,
}

impl MonomialPrime {
    pub fn new(n: usize, vars: BTreeSet<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("need at least one variable"));
        }
        if vars.iter().any(|&v| v >= n) {
            return Err(Error::input("variable index out of range"));
        }
        Ok(MonomialPrime { n, vars })
    }

    pub fn irrelevant(n: usize) -> Self {
        MonomialPrime {
            n,
            vars: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &BTreeSet<usize> {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "(0)");
        }
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        Ok(())
    }
}

/// The a-invariant of `R/P`: the top nonvanishing degree of the top local
/// cohomology of the quotient, computed on the polynomial ring in the
/// complementary variables. `a(R/m) = 0` by convention; the empty prime
/// gives `a(R) = -n`.
pub fn a_invariant(prime: &MonomialPrime, ch: CharSpec) -> Result<i64> {
    let d = prime.n() - prime.height();
    if d == 0 {
        return Ok(0);
    }
    let bx = DegreeBox::uniform(d, -(prime.n() as i64 + 3), 1)?;
    let ambient = make_module(&ModuleKind::Free, d, ch, 0)?;
    let lc = local_cohomology(&MonomialIdeal::irrelevant(d), d, &ambient, &bx)?;
    lc.pieces()
        .keys()
        .map(|mu| lc.total_degree(mu))
        .max()
        .ok_or_else(|| Error::input("top local cohomology vanished on the box"))
}

/// Minimal total degree at which the annihilator of `P` inside
/// `H_P^{height P}(R)` is nonzero.
pub fn ann_min_degree(prime: &MonomialPrime, ch: CharSpec) -> Result<i64> {
    let h = prime.height();
    if h == 0 {
        return Err(Error::input("annihilator degree needs a nonzero prime"));
    }
    let n = prime.n();
    let gens: Vec<Vec<u32>> = prime
        .vars()
        .iter()
        .map(|&v| {
            let mut g = vec![0u32; n];
            g[v] = 1;
            g
        })
        .collect();
    let ideal = MonomialIdeal::new(n, gens)?;
    let ambient = make_module(&ModuleKind::Free, n, ch, 0)?;
    let bx = DegreeBox::default_for(n);
    let lc = local_cohomology(&ideal, h, &ambient, &bx)?;
    let axes: Vec<usize> = prime.vars().iter().copied().collect();
    let report = lc.partial_socle(&axes);
    report
        .entries
        .iter()
        .map(|(mu, _)| lc.total_degree(mu))
        .min()
        .ok_or_else(|| Error::input("annihilator vanished on the box"))
}

/// Result of scanning candidate shifts for the Eulerian property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftVerdict {
    Unique(i64),
    NoneFound,
    /// More than one candidate passed: a diagnostics failure.
    MultipleWithinRange(Vec<i64>),
}

/// Scans `M(l)` for `l` in the candidate range and reports which shifts pass
/// the boxed Eulerian check.
pub fn eulerian_shift(
    module: &RegionModule,
    candidates: RangeInclusive<i64>,
    bx: &DegreeBox,
    r_max: u32,
) -> Result<ShiftVerdict> {
    let mut passing = Vec::new();
    for l in candidates {
        if is_eulerian_witness(&module.shifted(l), bx, r_max)?.is_eulerian() {
            passing.push(l);
        }
    }
    Ok(match passing.len() {
        0 => ShiftVerdict::NoneFound,
        1 => ShiftVerdict::Unique(passing[0]),
        _ => ShiftVerdict::MultipleWithinRange(passing),
    })
}

/// Bijectivity of multiplication by `x_axis` on the box interior of a region
/// module, with the first offending multidegrees as witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectivityReport {
    pub injective: bool,
    pub surjective: bool,
    /// A basis monomial sent to zero.
    pub kill_witness: Option<Vec<i64>>,
    /// A basis monomial with no in-region preimage.
    pub unhit_witness: Option<Vec<i64>>,
}

impl BijectivityReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Checks multiplication by `x_axis` piecewise on the box: killed monomials
/// break injectivity, basis monomials without an in-region preimage break
/// surjectivity.
pub fn x_action_bijectivity(
    module: &RegionModule,
    axis: usize,
    bx: &DegreeBox,
) -> Result<BijectivityReport> {
    if axis >= module.n() {
        return Err(Error::input("axis out of range"));
    }
    if bx.n() != module.n() {
        return Err(Error::input("box dimension differs from module"));
    }
    let mut kill_witness = None;
    let mut unhit_witness = None;
    for mu in module.basis_in_box(bx) {
        // injectivity: x . x^mu = 0 only through the NegOnly kill rule
        if kill_witness.is_none()
            && matches!(module.rule(axis), AxisRule::NegOnly)
            && mu[axis] == -1
        {
            kill_witness = Some(mu.clone());
        }
        // surjectivity: is x^mu hit from mu - e_axis?
        if unhit_witness.is_none() {
            let mut src = mu.clone();
            src[axis] -= 1;
            let hit = module.contains(&src)
                && !(matches!(module.rule(axis), AxisRule::NegOnly) && src[axis] == -1);
            if !hit {
                unhit_witness = Some(mu.clone());
            }
        }
    }
    Ok(BijectivityReport {
        injective: kill_witness.is_none(),
        surjective: unhit_witness.is_none(),
        kill_witness,
        unhit_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::default_r_max;

    fn q() -> CharSpec {
        CharSpec::Zero
    }

    fn prime(n: usize, vars: &[usize]) -> MonomialPrime {
        MonomialPrime::new(n, vars.iter().copied().collect()).unwrap()
    }

    #[test]
    fn a_invariant_examples() {
        // a(R) = -n
        for n in 1..=3usize {
            assert_eq!(a_invariant(&prime(n, &[]), q()).unwrap(), -(n as i64));
        }
        // a(R/m) = 0
        assert_eq!(a_invariant(&MonomialPrime::irrelevant(3), q()).unwrap(), 0);
        // P = (x1) in n = 3: quotient is a 2-variable ring
        assert_eq!(a_invariant(&prime(3, &[0]), q()).unwrap(), -2);
    }

    #[test]
    fn ann_min_degree_examples() {
        // P = m: the socle degree of H^n_m(R)
        for n in 1..=3usize {
            assert_eq!(
                ann_min_degree(&MonomialPrime::irrelevant(n), q()).unwrap(),
                -(n as i64)
            );
        }
        // P = (x1, ..., x_h) in n = 3
        for h in 1..=3usize {
            let vars: Vec<usize> = (0..h).collect();
            assert_eq!(
                ann_min_degree(&prime(3, &vars), q()).unwrap(),
                -(h as i64)
            );
        }
        assert!(ann_min_degree(&prime(2, &[]), q()).is_err());
    }

    #[test]
    fn prop_6_6_equality_small() {
        for n in 1..=3usize {
            for mask in 1..(1u32 << n) {
                let vars: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let p = MonomialPrime::new(n, vars).unwrap();
                let lhs = ann_min_degree(&p, q()).unwrap();
                let rhs = -a_invariant(&p, q()).unwrap() - n as i64;
                assert_eq!(lhs, rhs, "n={n} P={p}");
            }
        }
    }

    #[test]
    fn shift_scans() {
        let bx = DegreeBox::uniform(2, -6, 6).unwrap();
        let r = make_module(&ModuleKind::Free, 2, q(), 0).unwrap();
        assert_eq!(
            eulerian_shift(&r, -3..=3, &bx, 6).unwrap(),
            ShiftVerdict::Unique(0)
        );
        let hull = make_module(&ModuleKind::InjectiveHull, 2, q(), 0).unwrap();
        assert_eq!(
            eulerian_shift(&hull, -3..=5, &bx, 6).unwrap(),
            ShiftVerdict::Unique(2)
        );
        // hull model for P = (x1) in n = 2: unique at a(R/P) + n = 1
        let model = make_module(
            &ModuleKind::InjectiveHullModel([0usize].into_iter().collect()),
            2,
            q(),
            0,
        )
        .unwrap();
        assert_eq!(
            eulerian_shift(&model, -3..=3, &bx, 6).unwrap(),
            ShiftVerdict::Unique(1)
        );
        // out-of-range scan finds nothing
        assert_eq!(
            eulerian_shift(&r, 1..=3, &bx, 6).unwrap(),
            ShiftVerdict::NoneFound
        );
    }

    #[test]
    fn bijectivity_reports() {
        let bx = DegreeBox::uniform(2, -5, 5).unwrap();
        let model = make_module(
            &ModuleKind::InjectiveHullModel([0usize].into_iter().collect()),
            2,
            q(),
            0,
        )
        .unwrap();
        // off the prime: an automorphism
        assert!(x_action_bijectivity(&model, 1, &bx).unwrap().bijective());
        // on the prime: the kill rule breaks bijectivity
        let rep = x_action_bijectivity(&model, 0, &bx).unwrap();
        assert!(!rep.bijective());
        assert!(!rep.injective);
        assert_eq!(rep.kill_witness.as_ref().unwrap()[0], -1);
        // on R: injective but not surjective
        let r = make_module(&ModuleKind::Free, 2, q(), 0).unwrap();
        let rep = x_action_bijectivity(&r, 0, &bx).unwrap();
        assert!(rep.injective);
        assert!(!rep.surjective);
        assert_eq!(rep.unhit_witness.as_ref().unwrap()[0], 0);
    }

    #[test]
    fn consistency_with_default_rmax() {
        // the char-p scan distinguishes the hull-model shift too
        let f3 = CharSpec::prime(3).unwrap();
        let bx = DegreeBox::uniform(2, -6, 6).unwrap();
        let model = make_module(
            &ModuleKind::InjectiveHullModel([1usize].into_iter().collect()),
            2,
            f3,
            0,
        )
        .unwrap();
        assert_eq!(
            eulerian_shift(&model, -3..=3, &bx, default_r_max(f3)).unwrap(),
            ShiftVerdict::Unique(1)
        );
    }
}
