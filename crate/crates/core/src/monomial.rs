//! Block-structured variable sets and exponent vectors.
//!
//! Variables of the ambient ring are grouped into `n` blocks of sizes
//! `m_1, ..., m_n`. Variable `(i, j)` (1-based, printed `x{i}{j}`) has the
//! flattened 0-based index `m_1 + ... + m_{i-1} + (j - 1)`.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent of a single variable.
pub type Exp = u32;

/// The partition of the variable set into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockStructure {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Arc<Self>> {
        if sizes.is_empty() {
            return Err(Error::Parameter("at least one block is required".into()));
        }
        if let Some(i) = sizes.iter().position(|&m| m == 0) {
            return Err(Error::Parameter(format!("block {} has size 0", i + 1)));
        }
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut acc = 0;
        for &m in &sizes {
            offsets.push(acc);
            acc += m;
        }
        offsets.push(acc);
        Ok(Arc::new(BlockStructure { sizes, offsets }))
    }

    /// Block sizes `m_1, ..., m_n`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of blocks `n`.
    pub fn n_blocks(&self) -> usize {
        self.sizes.len()
    }

    /// Total number of variables `N`.
    pub fn n_vars(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn min_block_size(&self) -> usize {
        *self.sizes.iter().min().unwrap()
    }

    /// Flattened index range of block `i` (0-based).
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Flattened index of the `j`-th variable (0-based) of block `i` (0-based).
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        (i < self.n_blocks() && j < self.sizes[i]).then(|| self.offsets[i] + j)
    }

    /// Inverse of [`BlockStructure::index`].
    pub fn position(&self, k: usize) -> Option<(usize, usize)> {
        if k >= self.n_vars() {
            return None;
        }
        let i = self.offsets.partition_point(|&o| o <= k) - 1;
        Some((i, k - self.offsets[i]))
    }

    /// Block containing flattened index `k`.
    pub fn block_of(&self, k: usize) -> usize {
        self.position(k).expect("variable index out of range").0
    }

    /// Printable name of flattened variable `k`, e.g. `x21`.
    pub fn var_name(&self, k: usize) -> String {
        let (i, j) = self.position(k).expect("variable index out of range");
        if self.n_blocks() < 10 && self.sizes.iter().all(|&m| m < 10) {
            format!("x{}{}", i + 1, j + 1)
        } else {
            format!("x{}_{}", i + 1, j + 1)
        }
    }
}

/// A monomial of the ambient ring, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    structure: Arc<BlockStructure>,
    exps: Vec<Exp>,
}

pub(crate) fn check_same(a: &BlockStructure, b: &BlockStructure) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Structure(format!(
            "blocks {:?} vs {:?}",
            a.sizes(),
            b.sizes()
        )))
    }
}

impl ExponentVector {
    pub fn new(structure: Arc<BlockStructure>, exps: Vec<Exp>) -> Result<Self> {
        if exps.len() != structure.n_vars() {
            return Err(Error::Structure(format!(
                "expected {} exponents, got {}",
                structure.n_vars(),
                exps.len()
            )));
        }
        Ok(ExponentVector { structure, exps })
    }

    pub(crate) fn from_parts(structure: Arc<BlockStructure>, exps: Vec<Exp>) -> Self {
        debug_assert_eq!(exps.len(), structure.n_vars());
        ExponentVector { structure, exps }
    }

    /// The monomial 1.
    pub fn one(structure: Arc<BlockStructure>) -> Self {
        let n = structure.n_vars();
        ExponentVector {
            structure,
            exps: vec![0; n],
        }
    }

    /// The variable with flattened index `k`.
    pub fn variable(structure: Arc<BlockStructure>, k: usize) -> Result<Self> {
        let n = structure.n_vars();
        if k >= n {
            return Err(Error::Parameter(format!(
                "variable index {k} out of range 0..{n}"
            )));
        }
        let mut exps = vec![0; n];
        exps[k] = 1;
        Ok(ExponentVector { structure, exps })
    }

    pub fn structure(&self) -> &Arc<BlockStructure> {
        &self.structure
    }

    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    pub fn into_exps(self) -> Vec<Exp> {
        self.exps
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn block_degree(&self, i: usize) -> u64 {
        self.exps[self.structure.block_range(i)]
            .iter()
            .map(|&e| e as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Flattened indices with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, _)| k)
            .collect()
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        check_same(&self.structure, &other.structure)?;
        Ok(divides_slice(&self.exps, &other.exps))
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        check_same(&self.structure, &other.structure)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Ok(Self::from_parts(self.structure.clone(), exps))
    }

    pub fn gcd(&self, other: &Self) -> Result<Self> {
        check_same(&self.structure, &other.structure)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(Self::from_parts(self.structure.clone(), exps))
    }

    /// Product of monomials; errors on exponent overflow.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.structure, &other.structure)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| {
                a.checked_add(b)
                    .ok_or_else(|| Error::Overflow(format!("{a} + {b}")))
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(self.structure.clone(), exps))
    }

    /// `self / gcd(self, other)`: what remains of `self` after cancelling `other`.
    pub fn quotient_by_gcd(&self, other: &Self) -> Result<Self> {
        check_same(&self.structure, &other.structure)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.saturating_sub(b))
            .collect();
        Ok(Self::from_parts(self.structure.clone(), exps))
    }
}

pub(crate) fn divides_slice(a: &[Exp], b: &[Exp]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.exps.serialize(serializer)
    }
}

impl fmt::Display for ExponentVector {
    /// Pretty form `x11^2*x21`; the unit monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.structure.var_name(k))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
