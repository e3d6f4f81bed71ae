//! Monomial ideals and iterated local-cohomology specifications.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An ideal of `K[x_1,...,x_n]` generated by monomials, stored as exponent
/// vectors with duplicates removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn new(n: usize, mut gens: Vec<Vec<u32>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::input("ideal needs at least one generator"));
        }
        for g in &gens {
            if g.len() != n {
                return Err(Error::input("generator exponent length differs from n"));
            }
            if g.iter().all(|&e| e == 0) {
                return Err(Error::input("constant generator not allowed"));
            }
        }
        // descending lexicographic, so m comes out as x1, ..., xn
        gens.sort_by(|a, b| b.cmp(a));
        gens.dedup();
        Ok(MonomialIdeal { n, gens })
    }

    /// The irrelevant maximal ideal `m = (x_1, ..., x_n)`.
    pub fn irrelevant(n: usize) -> Self {
        let gens = (0..n)
            .map(|i| {
                let mut g = vec![0; n];
                g[i] = 1;
                g
            })
            .collect();
        MonomialIdeal::new(n, gens).expect("unit vectors are valid generators")
    }

    pub fn is_irrelevant(&self) -> bool {
        *self == MonomialIdeal::irrelevant(self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|&e| e <= 1))
    }

    /// Variables occurring in the product of the selected generators.
    pub fn subset_support(&self, gen_indices: &[usize]) -> BTreeSet<usize> {
        let mut vars = BTreeSet::new();
        for &gi in gen_indices {
            for (axis, &e) in self.gens[gi].iter().enumerate() {
                if e > 0 {
                    vars.insert(axis);
                }
            }
        }
        vars
    }

    /// Same support as a bitmask over axes.
    pub fn subset_support_mask(&self, gen_indices: &[usize]) -> u64 {
        self.subset_support(gen_indices)
            .into_iter()
            .fold(0u64, |m, axis| m | (1 << axis))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let mut wrote = false;
            for (axis, &e) in g.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if e == 1 {
                    write!(f, "x{}", axis + 1)?;
                } else {
                    write!(f, "x{}^{}", axis + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// One stage `H^{index}_{ideal}` of an iterated computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechStage {
    pub ideal: MonomialIdeal,
    pub index: usize,
}

/// An iterated local-cohomology specification. Stages are stored innermost
/// first (the outermost application comes last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechSpec {
    stages: Vec<CechStage>,
}

impl CechSpec {
    /// `stages[0]` is applied to `R` first; later entries wrap around it.
    pub fn new(stages: Vec<CechStage>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::input("specification needs at least one stage"));
        }
        let n = stages[0].ideal.n();
        if stages.iter().any(|s| s.ideal.n() != n) {
            return Err(Error::input("all stages must share the variable count"));
        }
        Ok(CechSpec { stages })
    }

    pub fn n(&self) -> usize {
        self.stages[0].ideal.n()
    }

    pub fn stages(&self) -> &[CechStage] {
        &self.stages
    }
}

impl fmt::Display for CechSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for stage in self.stages.iter().rev() {
            write!(f, "H{}_", stage.index)?;
            if stage.ideal.is_irrelevant() {
                write!(f, "m ")?;
            } else {
                write!(f, "({}) ", stage.ideal)?;
            }
        }
        write!(f, "(R)")
    }
}
