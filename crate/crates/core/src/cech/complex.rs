//! The materialized Cech complex of a monomial ideal over a localization
//! region, with direct strand-by-strand cohomology.
//!
//! This is the plain depth-one picture: term `T` is the ambient further
//! localized at the variable support of the product of the generators in
//! `T`, and differentials are signed identity maps on monomials. The tower
//! engine in [`super::tower`] generalizes this to iterated stages; the two
//! are cross-checked in the tests.

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, Mat, SpanReducer};
use crate::region::{AxisRule, RegionModule};
use crate::scalars::FieldScalar;

use super::ideal::MonomialIdeal;

/// One term of the complex: the localization at the subset's support.
#[derive(Clone, Debug)]
pub struct CechTerm {
    /// Indices into the ideal's generator list, sorted.
    pub gen_indices: Vec<usize>,
    pub region: RegionModule,
}

/// The full complex, terms grouped by cohomological level.
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub ambient: RegionModule,
    pub ideal: MonomialIdeal,
    pub levels: Vec<Vec<CechTerm>>,
}

/// Sign of the differential component from `subset` to `subset + {g}`:
/// `(-1)^{position of g in the enlarged sorted subset}`.
pub fn differential_sign(subset: &[usize], g: usize) -> i64 {
    let pos = subset.iter().filter(|&&t| t < g).count();
    if pos % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `k`-element subsets of `0..l` in lexicographic order.
pub(crate) fn subsets_of_size(l: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(l: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..l {
            current.push(v);
            rec(l, k, v + 1, current, out);
            current.pop();
        }
    }
    rec(l, k, 0, &mut current, &mut out);
    out
}

/// Builds the complex `0 -> M -> (+) M_{f_j} -> ... -> M_{f_1...f_l} -> 0`.
pub fn cech_complex(ideal: &MonomialIdeal, ambient: &RegionModule) -> Result<CechComplex> {
    if ideal.n() != ambient.n() {
        return Err(Error::input("ideal and ambient over different rings"));
    }
    if ambient.rules().iter().any(|r| matches!(r, AxisRule::NegOnly)) {
        return Err(Error::input(
            "ambient must be a localization-type region (no NegOnly axes)",
        ));
    }
    let l = ideal.num_gens();
    let mut levels = Vec::with_capacity(l + 1);
    for k in 0..=l {
        let mut terms = Vec::new();
        for subset in subsets_of_size(l, k) {
            let support = ideal.subset_support(&subset);
            let rules: Vec<AxisRule> = ambient
                .rules()
                .iter()
                .enumerate()
                .map(|(axis, &r)| {
                    if support.contains(&axis) {
                        AxisRule::AllInt
                    } else {
                        r
                    }
                })
                .collect();
            let region =
                RegionModule::new(ambient.n(), ambient.char_spec(), rules, ambient.shift())?;
            terms.push(CechTerm {
                gen_indices: subset,
                region,
            });
        }
        levels.push(terms);
    }
    Ok(CechComplex {
        ambient: ambient.clone(),
        ideal: ideal.clone(),
        levels,
    })
}

/// Cohomology of one strand: dimension plus explicit cocycle representatives
/// given as `(term position in the level, coefficient)` lists.
#[derive(Clone, Debug)]
pub struct StrandCohomology {
    pub dim: usize,
    pub reps: Vec<Vec<(usize, FieldScalar)>>,
}

impl CechComplex {
    fn term_dims(&self, level: usize, mu: &[i64]) -> Vec<usize> {
        self.levels[level]
            .iter()
            .map(|t| usize::from(t.region.contains(mu)))
            .collect()
    }

    /// Differential matrix from level `k` to `k + 1` at multidegree `mu`,
    /// in present-coordinate bases (dropped 0-dimensional blocks).
    fn differential(&self, k: usize, mu: &[i64]) -> Mat {
        let ch = self.ambient.char_spec();
        let src_dims = self.term_dims(k, mu);
        let tgt_dims = self.term_dims(k + 1, mu);
        let src_pos = positions(&src_dims);
        let tgt_pos = positions(&tgt_dims);
        let rows: usize = src_dims.iter().sum();
        let cols: usize = tgt_dims.iter().sum();
        let mut mat = Mat::zeros(rows, cols, ch);
        for (ti, term) in self.levels[k].iter().enumerate() {
            if src_dims[ti] == 0 {
                continue;
            }
            for (tj, tgt) in self.levels[k + 1].iter().enumerate() {
                if tgt_dims[tj] == 0 {
                    continue;
                }
                // target subset must extend the source subset by one index
                let extra: Vec<usize> = tgt
                    .gen_indices
                    .iter()
                    .copied()
                    .filter(|g| !term.gen_indices.contains(g))
                    .collect();
                if extra.len() != 1 {
                    continue;
                }
                let sign = differential_sign(&term.gen_indices, extra[0]);
                mat.set(
                    src_pos[ti],
                    tgt_pos[tj],
                    FieldScalar::from_i64(sign, ch),
                );
            }
        }
        mat
    }

    /// Kernel-mod-image cohomology of the strand at `mu`, level `i`.
    pub fn strand(&self, i: usize, mu: &[i64]) -> StrandCohomology {
        let ch = self.ambient.char_spec();
        if i >= self.levels.len() {
            return StrandCohomology {
                dim: 0,
                reps: Vec::new(),
            };
        }
        let dims = self.term_dims(i, mu);
        let total: usize = dims.iter().sum();
        let kernel: Vec<Vec<FieldScalar>> = if i + 1 < self.levels.len() {
            left_kernel(&self.differential(i, mu))
        } else {
            Mat::identity(total, ch).rows_iter().map(<[_]>::to_vec).collect()
        };
        let mut reducer = SpanReducer::new(total, ch);
        if i > 0 {
            let prev = self.differential(i - 1, mu);
            for row in prev.rows_iter() {
                reducer.insert_span(row.to_vec());
            }
        }
        let pos = positions(&dims);
        let mut reps = Vec::new();
        for v in kernel {
            if reducer.insert_tracked(v.clone()) {
                // present-coordinate vector back to term positions
                let mut rep = Vec::new();
                for (ti, &d) in dims.iter().enumerate() {
                    if d == 1 && !v[pos[ti]].is_zero() {
                        rep.push((ti, v[pos[ti]].clone()));
                    }
                }
                reps.push(rep);
            }
        }
        StrandCohomology {
            dim: reps.len(),
            reps,
        }
    }
}

fn positions(dims: &[usize]) -> Vec<usize> {
    let mut pos = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        pos.push(acc);
        acc += d;
    }
    pos
}
