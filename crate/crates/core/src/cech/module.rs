//! Computed (iterated) local cohomology over a finite multidegree box:
//! piece dimensions, multiplication matrices, socles, Hilbert tables, and
//! the injective-hull decomposition check.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, Mat};
use crate::region::{DegreeBox, RegionModule};
use crate::scalars::{binom_field, CharSpec, FieldScalar};
use crate::weyl::euler_op;

use super::ideal::{CechSpec, CechStage, MonomialIdeal};
use super::tower::{CechEngine, Node};

/// A computed local cohomology module over a box.
///
/// Piece dimensions are exact at every multidegree of the box; actions and
/// socles additionally need the relevant neighbors inside the box.
#[derive(Clone)]
pub struct LcModule {
    node: Arc<Node>,
    index: usize,
    bx: DegreeBox,
    n: usize,
    ch: CharSpec,
    shift: i64,
    pieces: BTreeMap<Vec<i64>, usize>,
}

/// Socle table: joint kernels of all `x_i`-actions per multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleReport {
    /// `(mu, dimension)` with dimension > 0, lexicographic in `mu`.
    pub entries: Vec<(Vec<i64>, usize)>,
    /// Nonzero pieces skipped because some neighbor `mu + e_i` leaves the box.
    pub boundary_excluded: Vec<Vec<i64>>,
}

/// Verdict of the `*E(n)^c` decomposition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EDecomposition {
    /// The module matches the Hilbert pattern of `c` hull copies.
    Copies(usize),
    /// A nonzero piece lives outside `mu <= (-1,...,-1)`.
    NotSupportedAtM { offending: Vec<i64> },
    /// Support is right but the socle or some piece dimension is off.
    Mismatch { at: Vec<i64> },
}

/// Hilbert data: per-multidegree dimensions and totals per total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub pieces: Vec<(Vec<i64>, usize)>,
    pub totals_by_degree: BTreeMap<i64, usize>,
}

impl LcModule {
    pub(crate) fn new(node: Arc<Node>, index: usize, shift: i64) -> Self {
        let bx = node.bx().clone();
        let n = node.n();
        let ch = node.char_spec();
        let mut pieces = BTreeMap::new();
        for mu in bx.iter() {
            let d = node.dim(index, &mu);
            if d > 0 {
                pieces.insert(mu, d);
            }
        }
        LcModule {
            node,
            index,
            bx,
            n,
            ch,
            shift,
            pieces,
        }
    }

    /// The same tower read at a different cohomology index.
    pub fn with_index(&self, index: usize) -> LcModule {
        LcModule::new(self.node.clone(), index, self.shift)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn char_spec(&self) -> CharSpec {
        self.ch
    }

    pub fn bx(&self) -> &DegreeBox {
        &self.bx
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Nonzero piece dimensions, keyed by multidegree.
    pub fn pieces(&self) -> &BTreeMap<Vec<i64>, usize> {
        &self.pieces
    }

    pub fn dim_at(&self, mu: &[i64]) -> usize {
        self.pieces.get(mu).copied().unwrap_or(0)
    }

    /// Total degree of the piece at `mu` under the ambient shift.
    pub fn total_degree(&self, mu: &[i64]) -> i64 {
        mu.iter().sum::<i64>() - self.shift
    }

    /// Representatives of the basis at `mu` as chain-coordinate vectors,
    /// with the block layout `(generator subset, block dimension)`.
    pub fn representatives(&self, mu: &[i64]) -> (Vec<(Vec<usize>, usize)>, Vec<Vec<FieldScalar>>) {
        (
            self.node.chain_blocks(self.index, mu),
            self.node.reps(self.index, mu),
        )
    }

    /// Matrix of multiplication by `x_axis` from the piece at `mu` to the
    /// piece at `mu + e_axis`; `None` when the target leaves the box.
    pub fn x_action(&self, axis: usize, mu: &[i64]) -> Option<Mat> {
        let mut x = vec![0u32; self.n];
        x[axis] = 1;
        let d = vec![0u32; self.n];
        let dim = self.dim_at(mu);
        let mut target_dim = None;
        let mut rows = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut unit = vec![FieldScalar::zero(self.ch); dim];
            unit[k] = FieldScalar::one(self.ch);
            let (tmu, coords) = self.node.act_term(self.index, mu, &unit, &x, &d)?;
            target_dim = Some(self.node.dim(self.index, &tmu));
            rows.push(coords);
        }
        let cols = match target_dim {
            Some(c) => c,
            None => {
                // dimension zero at mu: still need the target inside the box
                let tmu: Vec<i64> = mu
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if i == axis { v + 1 } else { v })
                    .collect();
                if !self.bx.contains(&tmu) {
                    return None;
                }
                self.node.dim(self.index, &tmu)
            }
        };
        Some(Mat::from_rows(rows, cols, self.ch))
    }

    /// Joint kernel of the `x_i`-actions for the given axes at `mu`.
    /// `None` when a needed neighbor leaves the box.
    fn joint_kernel_dim(&self, axes: &[usize], mu: &[i64]) -> Option<usize> {
        let dim = self.dim_at(mu);
        let mats: Vec<Mat> = axes
            .iter()
            .map(|&a| self.x_action(a, mu))
            .collect::<Option<_>>()?;
        let cols: usize = mats.iter().map(|m| m.cols).sum();
        let mut stacked = Mat::zeros(dim, cols, self.ch);
        let mut off = 0;
        for m in &mats {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let v = m.get(r, c);
                    if !v.is_zero() {
                        stacked.set(r, off + c, v.clone());
                    }
                }
            }
            off += m.cols;
        }
        Some(left_kernel(&stacked).len())
    }

    /// Per-multidegree joint kernel of all `n` multiplication actions.
    pub fn socle(&self) -> SocleReport {
        let axes: Vec<usize> = (0..self.n).collect();
        self.partial_socle(&axes)
    }

    /// Joint kernel of the actions of the listed axes only (the degreewise
    /// annihilator of the corresponding monomial prime).
    pub fn partial_socle(&self, axes: &[usize]) -> SocleReport {
        let mut entries = Vec::new();
        let mut boundary_excluded = Vec::new();
        for (mu, _) in &self.pieces {
            match self.joint_kernel_dim(axes, mu) {
                Some(0) => {}
                Some(d) => entries.push((mu.clone(), d)),
                None => boundary_excluded.push(mu.clone()),
            }
        }
        SocleReport {
            entries,
            boundary_excluded,
        }
    }

    /// Checks the Hilbert pattern of a direct sum of `c` copies of the hull:
    /// support inside `mu <= (-1,..,-1)`, socle concentrated at the corner
    /// with dimension `c`, and every supported piece of dimension `c`.
    pub fn decompose_as_e(&self) -> EDecomposition {
        if self.pieces.is_empty() {
            return EDecomposition::Copies(0);
        }
        for mu in self.pieces.keys() {
            if mu.iter().any(|&e| e >= 0) {
                return EDecomposition::NotSupportedAtM {
                    offending: mu.clone(),
                };
            }
        }
        let corner = vec![-1i64; self.n];
        let socle = self.socle();
        if let Some((mu, _)) = socle.entries.iter().find(|(mu, _)| *mu != corner) {
            return EDecomposition::Mismatch { at: mu.clone() };
        }
        let copies = match socle.entries.first() {
            Some((_, d)) => *d,
            None => return EDecomposition::Mismatch { at: corner },
        };
        for mu in self.bx.iter() {
            let expected = if mu.iter().all(|&e| e <= -1) { copies } else { 0 };
            if self.dim_at(&mu) != expected {
                return EDecomposition::Mismatch { at: mu };
            }
        }
        EDecomposition::Copies(copies)
    }

    pub fn hilbert(&self) -> HilbertTable {
        let mut totals: BTreeMap<i64, usize> = BTreeMap::new();
        for (mu, d) in &self.pieces {
            *totals.entry(self.total_degree(mu)).or_default() += d;
        }
        HilbertTable {
            pieces: self.pieces.iter().map(|(m, d)| (m.clone(), *d)).collect(),
            totals_by_degree: totals,
        }
    }

    /// Verifies Euler's formula on every computed piece: `E_r` acts on each
    /// class at `mu` as `binom(total_degree(mu), r)`.
    pub fn eulerian_transport_check(&self, r_max: u32) -> Result<()> {
        for r in 1..=r_max {
            let er = euler_op(self.n, r, self.ch)?;
            for (mu, &dim) in &self.pieces {
                let expected = binom_field(self.total_degree(mu), r as u64, self.ch);
                for k in 0..dim {
                    let mut unit = vec![FieldScalar::zero(self.ch); dim];
                    unit[k] = FieldScalar::one(self.ch);
                    let mut acc = vec![FieldScalar::zero(self.ch); dim];
                    for (key, c) in er.terms() {
                        let (tmu, coords) = self
                            .node
                            .act_term(self.index, mu, &unit, &key.x_exp, &key.d_exp)
                            .expect("Euler terms preserve the multidegree");
                        debug_assert_eq!(&tmu, mu);
                        for (a, v) in acc.iter_mut().zip(coords) {
                            if !v.is_zero() {
                                *a = &*a + &(c * &v);
                            }
                        }
                    }
                    let expected_vec: Vec<FieldScalar> = unit
                        .iter()
                        .map(|u| u * &expected)
                        .collect();
                    if acc != expected_vec {
                        return Err(Error::input(format!(
                            "Euler transport failed at mu={mu:?}, r={r}, basis {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `H^index_I(ambient)` over the box. The ambient must be a localization
/// region (NonNeg/AllInt axes); its shift only moves total degrees.
pub fn local_cohomology(
    ideal: &MonomialIdeal,
    index: usize,
    ambient: &RegionModule,
    bx: &DegreeBox,
) -> Result<LcModule> {
    let engine = CechEngine::new(ambient.clone(), bx.clone())?;
    let stages = vec![CechStage {
        ideal: ideal.clone(),
        index,
    }];
    let node = engine.node_for(&stages, 0)?;
    Ok(LcModule::new(node, index, ambient.shift()))
}

/// Iterated local cohomology of `R` along the specification.
pub fn iterated_local_cohomology(
    spec: &CechSpec,
    ch: CharSpec,
    bx: &DegreeBox,
) -> Result<LcModule> {
    let n = spec.n();
    let ambient = RegionModule::new(n, ch, vec![crate::region::AxisRule::NonNeg; n], 0)?;
    let engine = CechEngine::new(ambient, bx.clone())?;
    engine_module(&engine, spec)
}

/// Computes a specification on an existing engine, sharing cached stages.
pub fn engine_module(engine: &CechEngine, spec: &CechSpec) -> Result<LcModule> {
    let node = engine.node_for(spec.stages(), 0)?;
    let top_index = spec.stages().last().expect("nonempty spec").index;
    Ok(LcModule::new(node, top_index, engine.ambient().shift()))
}
