//! Recursive strandwise engine for iterated local cohomology.
//!
//! A tower node computes, per multidegree in the box, the full chain complex
//! of one Cech stage whose terms are the previous stage's cohomology
//! recomputed over further-localized ambients (localization is exact and
//! commutes with cohomology, so recomputation equals localizing classes; the
//! equality is exercised in the tests). Kernels, images, representatives and
//! expression data are stored for every level, so one built node serves
//! every cohomology index of its stage.
//!
//! Nodes are cached per (stage prefix, localization set); the differentials
//! between sibling nodes are the natural localization maps on classes.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, Mat, SpanReducer};
use crate::region::{AxisRule, DegreeBox, RegionModule};
use crate::scalars::{binom_field, CharSpec, FieldScalar};

use super::complex::{differential_sign, subsets_of_size};
use super::ideal::{CechStage, MonomialIdeal};

pub(crate) struct Node {
    n: usize,
    ch: CharSpec,
    bx: DegreeBox,
    kind: NodeKind,
}

enum NodeKind {
    Base {
        region: RegionModule,
    },
    Cohomology {
        levels: Vec<Vec<Vec<usize>>>,
        /// Children indexed by generator-subset bitmask.
        children: Vec<Arc<Node>>,
        /// Cohomology index at which children are read.
        child_index: usize,
        /// Per box offset, the computed strand data.
        strands: Vec<StrandSet>,
    },
}

struct StrandSet {
    per_level: Vec<LevelData>,
}

struct LevelData {
    block_dims: Vec<usize>,
    total_dim: usize,
    reps: Vec<Vec<FieldScalar>>,
    reducer: SpanReducer,
}

impl Node {
    fn base(region: RegionModule, bx: DegreeBox) -> Node {
        Node {
            n: region.n(),
            ch: region.char_spec(),
            bx,
            kind: NodeKind::Base { region },
        }
    }

    /// Cohomology dimension at `(index, mu)`; zero beyond the complex length.
    pub(crate) fn dim(&self, index: usize, mu: &[i64]) -> usize {
        match &self.kind {
            NodeKind::Base { region } => {
                if index == 0 && region.contains(mu) {
                    1
                } else {
                    0
                }
            }
            NodeKind::Cohomology { strands, .. } => {
                let set = &strands[self.bx.offset(mu)];
                set.per_level.get(index).map_or(0, |l| l.reps.len())
            }
        }
    }

    /// Chain-coordinate layout at `(index, mu)`: per generator subset, its
    /// block dimension.
    pub(crate) fn chain_blocks(&self, index: usize, mu: &[i64]) -> Vec<(Vec<usize>, usize)> {
        match &self.kind {
            NodeKind::Base { region } => {
                vec![(Vec::new(), usize::from(index == 0 && region.contains(mu)))]
            }
            NodeKind::Cohomology {
                levels, strands, ..
            } => {
                let set = &strands[self.bx.offset(mu)];
                match set.per_level.get(index) {
                    None => Vec::new(),
                    Some(l) => levels[index]
                        .iter()
                        .cloned()
                        .zip(l.block_dims.iter().copied())
                        .collect(),
                }
            }
        }
    }

    /// Representatives of the cohomology basis at `(index, mu)` in chain
    /// coordinates.
    pub(crate) fn reps(&self, index: usize, mu: &[i64]) -> Vec<Vec<FieldScalar>> {
        match &self.kind {
            NodeKind::Base { region } => {
                if index == 0 && region.contains(mu) {
                    vec![vec![FieldScalar::one(self.ch)]]
                } else {
                    Vec::new()
                }
            }
            NodeKind::Cohomology { strands, .. } => {
                let set = &strands[self.bx.offset(mu)];
                set.per_level
                    .get(index)
                    .map_or(Vec::new(), |l| l.reps.clone())
            }
        }
    }

    /// Class coordinates of a cocycle given in chain coordinates.
    fn express(&self, index: usize, mu: &[i64], chain: &[FieldScalar]) -> Vec<FieldScalar> {
        match &self.kind {
            NodeKind::Base { region } => {
                debug_assert!(index == 0 && region.contains(mu));
                chain.to_vec()
            }
            NodeKind::Cohomology { strands, .. } => {
                let set = &strands[self.bx.offset(mu)];
                let level = &set.per_level[index];
                level
                    .reducer
                    .express(chain)
                    .expect("image of a cocycle failed to express as a cocycle class")
            }
        }
    }

    fn lift(&self, index: usize, mu: &[i64], class: &[FieldScalar]) -> Vec<FieldScalar> {
        match &self.kind {
            NodeKind::Base { .. } => class.to_vec(),
            NodeKind::Cohomology { strands, .. } => {
                let set = &strands[self.bx.offset(mu)];
                let level = &set.per_level[index];
                let mut out = vec![FieldScalar::zero(self.ch); level.total_dim];
                for (c, rep) in class.iter().zip(&level.reps) {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, r) in out.iter_mut().zip(rep) {
                        if !r.is_zero() {
                            *o = &*o + &(c * r);
                        }
                    }
                }
                out
            }
        }
    }

    /// Matrix of the natural localization map into a node with a larger
    /// localization set, on cohomology classes at `(index, mu)`.
    pub(crate) fn include_into(&self, other: &Node, index: usize, mu: &[i64]) -> Mat {
        let src_dim = self.dim(index, mu);
        let tgt_dim = other.dim(index, mu);
        if std::ptr::eq(self, other) {
            return Mat::identity(src_dim, self.ch);
        }
        match (&self.kind, &other.kind) {
            (NodeKind::Base { region }, NodeKind::Base { region: tgt }) => {
                if src_dim == 0 {
                    Mat::zeros(0, tgt_dim, self.ch)
                } else {
                    debug_assert!(region.contains(mu) && tgt.contains(mu));
                    Mat::identity(1, self.ch)
                }
            }
            (
                NodeKind::Cohomology {
                    levels,
                    children,
                    child_index,
                    strands,
                },
                NodeKind::Cohomology {
                    children: other_children,
                    ..
                },
            ) => {
                let set = &strands[self.bx.offset(mu)];
                let mut rows = Vec::with_capacity(src_dim);
                let Some(level) = set.per_level.get(index) else {
                    return Mat::zeros(0, tgt_dim, self.ch);
                };
                for rep in &level.reps {
                    let chain = self.map_chain(
                        levels,
                        children,
                        other_children,
                        other,
                        *child_index,
                        index,
                        mu,
                        rep,
                    );
                    rows.push(other.express(index, mu, &chain));
                }
                Mat::from_rows(rows, tgt_dim, self.ch)
            }
            _ => unreachable!("inclusion between structurally different nodes"),
        }
    }

    /// Pushes a chain vector of `self` at `(index, mu)` componentwise into
    /// `other`'s chain coordinates via child inclusions.
    #[allow(clippy::too_many_arguments)]
    fn map_chain(
        &self,
        levels: &[Vec<Vec<usize>>],
        children: &[Arc<Node>],
        other_children: &[Arc<Node>],
        other: &Node,
        child_index: usize,
        index: usize,
        mu: &[i64],
        chain: &[FieldScalar],
    ) -> Vec<FieldScalar> {
        let tgt_blocks = other.chain_blocks(index, mu);
        let tgt_total: usize = tgt_blocks.iter().map(|(_, d)| d).sum();
        let mut out = vec![FieldScalar::zero(self.ch); tgt_total];
        let mut src_off = 0;
        let mut tgt_offsets = Vec::with_capacity(tgt_blocks.len());
        {
            let mut acc = 0;
            for (_, d) in &tgt_blocks {
                tgt_offsets.push(acc);
                acc += d;
            }
        }
        for (pos, subset) in levels[index].iter().enumerate() {
            let mask = mask_of(subset);
            let src_child = &children[mask];
            let d_src = src_child.dim(child_index, mu);
            if d_src > 0 {
                let block = &chain[src_off..src_off + d_src];
                if block.iter().any(|c| !c.is_zero()) {
                    let inc = src_child.include_into(&other_children[mask], child_index, mu);
                    let mapped = inc.apply_left(block);
                    let t_off = tgt_offsets[pos];
                    for (j, v) in mapped.into_iter().enumerate() {
                        if !v.is_zero() {
                            out[t_off + j] = &out[t_off + j] + &v;
                        }
                    }
                }
            }
            src_off += d_src;
        }
        out
    }

    /// Action of the single operator term `x^{x_exp} d^[d_exp]` on a
    /// cohomology class: returns the target multidegree and the class
    /// coordinates there. `None` when the target leaves the box.
    pub(crate) fn act_term(
        &self,
        index: usize,
        mu: &[i64],
        class: &[FieldScalar],
        x_exp: &[u32],
        d_exp: &[u32],
    ) -> Option<(Vec<i64>, Vec<FieldScalar>)> {
        let target: Vec<i64> = (0..self.n)
            .map(|i| mu[i] - d_exp[i] as i64 + x_exp[i] as i64)
            .collect();
        if !self.bx.contains(&target) {
            return None;
        }
        match &self.kind {
            NodeKind::Base { region } => {
                let tgt_dim = self.dim(index, &target);
                if self.dim(index, mu) == 0 || class.iter().all(|c| c.is_zero()) {
                    return Some((target, vec![FieldScalar::zero(self.ch); tgt_dim]));
                }
                let mut coeff = class[0].clone();
                for i in 0..self.n {
                    if coeff.is_zero() {
                        break;
                    }
                    coeff = &coeff * &binom_field(mu[i], d_exp[i] as u64, self.ch);
                }
                if coeff.is_zero() || !region.contains(&target) {
                    return Some((target, vec![FieldScalar::zero(self.ch); tgt_dim]));
                }
                debug_assert_eq!(tgt_dim, 1);
                Some((target, vec![coeff]))
            }
            NodeKind::Cohomology {
                levels,
                children,
                child_index,
                strands,
            } => {
                let chain = self.lift(index, mu, class);
                let set = &strands[self.bx.offset(mu)];
                let level = set.per_level.get(index)?;
                let tgt_blocks = self.chain_blocks(index, &target);
                let tgt_total: usize = tgt_blocks.iter().map(|(_, d)| d).sum();
                let mut out = vec![FieldScalar::zero(self.ch); tgt_total];
                let mut tgt_offsets = Vec::with_capacity(tgt_blocks.len());
                {
                    let mut acc = 0;
                    for (_, d) in &tgt_blocks {
                        tgt_offsets.push(acc);
                        acc += d;
                    }
                }
                let mut src_off = 0;
                for (pos, subset) in levels[index].iter().enumerate() {
                    let child = &children[mask_of(subset)];
                    let d_src = child.dim(*child_index, mu);
                    debug_assert_eq!(d_src, level.block_dims[pos]);
                    if d_src > 0 {
                        let block = &chain[src_off..src_off + d_src];
                        if block.iter().any(|c| !c.is_zero()) {
                            let (t, mapped) = child
                                .act_term(*child_index, mu, block, x_exp, d_exp)
                                .expect("target inside the box at every stage");
                            debug_assert_eq!(t, target);
                            let t_off = tgt_offsets[pos];
                            for (j, v) in mapped.into_iter().enumerate() {
                                if !v.is_zero() {
                                    out[t_off + j] = &out[t_off + j] + &v;
                                }
                            }
                        }
                    }
                    src_off += d_src;
                }
                let coords = self.express(index, &target, &out);
                Some((target, coords))
            }
        }
    }

    pub(crate) fn char_spec(&self) -> CharSpec {
        self.ch
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn bx(&self) -> &DegreeBox {
        &self.bx
    }
}

fn mask_of(subset: &[usize]) -> usize {
    subset.iter().fold(0usize, |m, &g| m | (1 << g))
}

/// Builds the cohomology node of one stage over already-built children.
fn build_cohomology(
    ideal: &MonomialIdeal,
    children: Vec<Arc<Node>>,
    child_index: usize,
    bx: DegreeBox,
    ch: CharSpec,
) -> Node {
    let n = ideal.n();
    let l = ideal.num_gens();
    let levels: Vec<Vec<Vec<usize>>> = (0..=l).map(|k| subsets_of_size(l, k)).collect();
    let volume = bx.volume();
    let strands: Vec<StrandSet> = (0..volume)
        .into_par_iter()
        .map(|off| {
            let mu = mu_at(&bx, off);
            build_strand(&levels, &children, child_index, ch, &mu)
        })
        .collect();
    Node {
        n,
        ch,
        bx,
        kind: NodeKind::Cohomology {
            levels,
            children,
            child_index,
            strands,
        },
    }
}

fn mu_at(bx: &DegreeBox, mut off: usize) -> Vec<i64> {
    let n = bx.n();
    let mut mu = vec![0i64; n];
    for i in (0..n).rev() {
        let width = (bx.hi()[i] - bx.lo()[i] + 1) as usize;
        mu[i] = bx.lo()[i] + (off % width) as i64;
        off /= width;
    }
    mu
}

fn build_strand(
    levels: &[Vec<Vec<usize>>],
    children: &[Arc<Node>],
    child_index: usize,
    ch: CharSpec,
    mu: &[i64],
) -> StrandSet {
    let top = levels.len() - 1;
    let block_dims: Vec<Vec<usize>> = levels
        .iter()
        .map(|subsets| {
            subsets
                .iter()
                .map(|s| children[mask_of(s)].dim(child_index, mu))
                .collect()
        })
        .collect();
    let totals: Vec<usize> = block_dims.iter().map(|d| d.iter().sum()).collect();
    // differentials k -> k+1
    let diffs: Vec<Mat> = (0..top)
        .map(|k| {
            let mut mat = Mat::zeros(totals[k], totals[k + 1], ch);
            let src_pos = positions(&block_dims[k]);
            let tgt_pos = positions(&block_dims[k + 1]);
            for (si, subset) in levels[k].iter().enumerate() {
                if block_dims[k][si] == 0 {
                    continue;
                }
                let src_child = &children[mask_of(subset)];
                // `top` equals the generator count
                for g in 0..top {
                    if subset.contains(&g) {
                        continue;
                    }
                    let mut enlarged = subset.clone();
                    enlarged.push(g);
                    enlarged.sort_unstable();
                    let ti = levels[k + 1]
                        .iter()
                        .position(|s| *s == enlarged)
                        .expect("enlarged subset present at next level");
                    if block_dims[k + 1][ti] == 0 {
                        continue;
                    }
                    let sign = differential_sign(subset, g);
                    let inc =
                        src_child.include_into(&children[mask_of(&enlarged)], child_index, mu);
                    let sign_scalar = FieldScalar::from_i64(sign, ch);
                    for r in 0..inc.rows {
                        for c in 0..inc.cols {
                            let v = inc.get(r, c);
                            if !v.is_zero() {
                                mat.set(src_pos[si] + r, tgt_pos[ti] + c, v * &sign_scalar);
                            }
                        }
                    }
                }
            }
            mat
        })
        .collect();
    let per_level: Vec<LevelData> = (0..=top)
        .map(|k| {
            let total = totals[k];
            let kernel: Vec<Vec<FieldScalar>> = if k < top {
                left_kernel(&diffs[k])
            } else {
                Mat::identity(total, ch)
                    .rows_iter()
                    .map(<[_]>::to_vec)
                    .collect()
            };
            let mut reducer = SpanReducer::new(total, ch);
            if k > 0 {
                for row in diffs[k - 1].rows_iter() {
                    reducer.insert_span(row.to_vec());
                }
            }
            let mut reps = Vec::new();
            for v in kernel {
                if reducer.insert_tracked(v.clone()) {
                    reps.push(v);
                }
            }
            LevelData {
                block_dims: block_dims[k].clone(),
                total_dim: total,
                reps,
                reducer,
            }
        })
        .collect();
    StrandSet { per_level }
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

/// Builder with node sharing across localization sets and stage prefixes.
pub struct CechEngine {
    ambient: RegionModule,
    bx: DegreeBox,
    cache: RefCell<HashMap<NodeKey, Arc<Node>>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct NodeKey {
    /// Innermost-first (generators, child read index) per stage.
    sig: Vec<(Vec<Vec<u32>>, usize)>,
    loc: u64,
}

impl CechEngine {
    pub fn new(ambient: RegionModule, bx: DegreeBox) -> Result<Self> {
        if bx.n() != ambient.n() {
            return Err(Error::input("box dimension differs from ambient"));
        }
        if ambient.rules().iter().any(|r| matches!(r, AxisRule::NegOnly)) {
            return Err(Error::input(
                "ambient must be a localization-type region (no NegOnly axes)",
            ));
        }
        Ok(CechEngine {
            ambient,
            bx,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn ambient(&self) -> &RegionModule {
        &self.ambient
    }

    pub fn bx(&self) -> &DegreeBox {
        &self.bx
    }

    fn base_region(&self, loc: u64) -> RegionModule {
        let rules: Vec<AxisRule> = self
            .ambient
            .rules()
            .iter()
            .enumerate()
            .map(|(axis, &r)| {
                if loc & (1 << axis) != 0 {
                    AxisRule::AllInt
                } else {
                    r
                }
            })
            .collect();
        RegionModule::new(self.ambient.n(), self.ambient.char_spec(), rules, self.ambient.shift())
            .expect("rules per axis")
    }

    /// The node computing the stages (innermost first) over the ambient
    /// further localized at `loc`.
    pub(crate) fn node_for(&self, stages: &[CechStage], loc: u64) -> Result<Arc<Node>> {
        for s in stages {
            if s.ideal.n() != self.ambient.n() {
                return Err(Error::input("stage ideal over a different ring"));
            }
        }
        Ok(self.node_cached(stages, loc))
    }

    fn node_cached(&self, stages: &[CechStage], loc: u64) -> Arc<Node> {
        let sig: Vec<(Vec<Vec<u32>>, usize)> = stages
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let read = if i == 0 { 0 } else { stages[i - 1].index };
                (s.ideal.gens().to_vec(), read)
            })
            .collect();
        let key = NodeKey { sig, loc };
        if let Some(node) = self.cache.borrow().get(&key) {
            return node.clone();
        }
        let node = Arc::new(self.build(stages, loc));
        self.cache.borrow_mut().insert(key, node.clone());
        node
    }

    fn build(&self, stages: &[CechStage], loc: u64) -> Node {
        match stages.split_last() {
            None => Node::base(self.base_region(loc), self.bx.clone()),
            Some((outer, rest)) => {
                let l = outer.ideal.num_gens();
                let child_index = rest.last().map_or(0, |s| s.index);
                let children: Vec<Arc<Node>> = (0..1usize << l)
                    .map(|mask| {
                        let indices: Vec<usize> =
                            (0..l).filter(|g| mask & (1 << g) != 0).collect();
                        let support = outer.ideal.subset_support_mask(&indices);
                        self.node_cached(rest, loc | support)
                    })
                    .collect();
                build_cohomology(
                    &outer.ideal,
                    children,
                    child_index,
                    self.bx.clone(),
                    self.ambient.char_spec(),
                )
            }
        }
    }
}
