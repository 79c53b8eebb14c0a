//! Monomial ideals given by their minimal generating sets.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{check_same, divides_slice, BlockStructure, Exp, ExponentVector};

/// A monomial ideal stored as its minimal generators `G(I)` in lexicographic order.
///
/// No generators means the zero ideal; the single generator `1` is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    structure: Arc<BlockStructure>,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn zero(structure: Arc<BlockStructure>) -> Self {
        MonomialIdeal {
            structure,
            gens: Vec::new(),
        }
    }

    pub fn unit(structure: Arc<BlockStructure>) -> Self {
        let one = ExponentVector::one(structure.clone());
        MonomialIdeal {
            structure,
            gens: vec![one],
        }
    }

    /// Ideal generated by an arbitrary set of monomials; the set is minimalized.
    pub fn minimalize<I>(structure: Arc<BlockStructure>, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let mut raw = Vec::new();
        for g in gens {
            check_same(&structure, g.structure())?;
            raw.push(g.into_exps());
        }
        Ok(Self::from_raw(structure, raw))
    }

    /// Minimalizes bare exponent rows that are known to have the right length.
    pub(crate) fn from_raw(structure: Arc<BlockStructure>, mut raw: Vec<Vec<Exp>>) -> Self {
        raw.sort_by(|a, b| {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        raw.dedup();
        let mut kept: Vec<Vec<Exp>> = Vec::with_capacity(raw.len());
        for g in raw {
            if !kept.iter().any(|h| divides_slice(h, &g)) {
                kept.push(g);
            }
        }
        kept.sort();
        let gens = kept
            .into_iter()
            .map(|e| ExponentVector::from_parts(structure.clone(), e))
            .collect();
        MonomialIdeal { structure, gens }
    }

    /// Builds an ideal from rows that the caller guarantees are already an
    /// antichain; only sorting is applied.
    pub(crate) fn from_antichain(structure: Arc<BlockStructure>, mut raw: Vec<Vec<Exp>>) -> Self {
        raw.sort();
        raw.dedup();
        let gens = raw
            .into_iter()
            .map(|e| ExponentVector::from_parts(structure.clone(), e))
            .collect();
        MonomialIdeal { structure, gens }
    }

    pub fn structure(&self) -> &Arc<BlockStructure> {
        &self.structure
    }

    /// Minimal generators in canonical order.
    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// No generators, i.e. the zero ideal.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Componentwise maximum over all generators; `None` for the zero ideal.
    pub fn lcm(&self) -> Option<ExponentVector> {
        let first = self.gens.first()?;
        let mut acc = first.exps().to_vec();
        for g in &self.gens[1..] {
            for (a, &e) in acc.iter_mut().zip(g.exps()) {
                *a = (*a).max(e);
            }
        }
        Some(ExponentVector::from_parts(self.structure.clone(), acc))
    }

    /// Bitmask of each generator's support. Requires `N <= 64`.
    pub fn support_masks(&self) -> Vec<u64> {
        self.gens
            .iter()
            .map(|g| {
                g.exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |m, (k, _)| m | (1 << k))
            })
            .collect()
    }

    pub fn contains(&self, f: &ExponentVector) -> Result<bool> {
        check_same(&self.structure, f.structure())?;
        Ok(self.contains_exps(f.exps()))
    }

    pub(crate) fn contains_exps(&self, f: &[Exp]) -> bool {
        self.gens.iter().any(|g| divides_slice(g.exps(), f))
    }

    /// `I : f` for a monomial `f`.
    pub fn colon(&self, f: &ExponentVector) -> Result<Self> {
        check_same(&self.structure, f.structure())?;
        Ok(self.colon_exps(f.exps()))
    }

    pub(crate) fn colon_exps(&self, f: &[Exp]) -> Self {
        let raw = self
            .gens
            .iter()
            .map(|g| {
                g.exps()
                    .iter()
                    .zip(f)
                    .map(|(&a, &b)| a.saturating_sub(b))
                    .collect()
            })
            .collect();
        Self::from_raw(self.structure.clone(), raw)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_same(&self.structure, &other.structure)?;
        let raw = self
            .gens
            .iter()
            .chain(&other.gens)
            .map(|g| g.exps().to_vec())
            .collect();
        Ok(Self::from_raw(self.structure.clone(), raw))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        check_same(&self.structure, &other.structure)?;
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                raw.push(g.mul(h)?.into_exps());
            }
        }
        Ok(Self::from_raw(self.structure.clone(), raw))
    }

    /// The prime support if every generator is a variable.
    pub fn as_prime(&self) -> Option<PrimeSupport> {
        if self.gens.is_empty() {
            return None;
        }
        let mut indices = BTreeSet::new();
        for g in &self.gens {
            let supp = g.support();
            if supp.len() != 1 || g.exps()[supp[0]] != 1 {
                return None;
            }
            indices.insert(supp[0]);
        }
        Some(PrimeSupport {
            structure: self.structure.clone(),
            indices,
        })
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// Wire form `{"blocks": [...], "gens": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct IdealRepr {
    blocks: Vec<usize>,
    gens: Vec<Vec<Exp>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRepr {
            blocks: self.structure.sizes().to_vec(),
            gens: self.gens.iter().map(|g| g.exps().to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = IdealRepr::deserialize(deserializer)?;
        let structure = BlockStructure::new(repr.blocks).map_err(serde::de::Error::custom)?;
        let gens = repr
            .gens
            .into_iter()
            .map(|e| ExponentVector::new(structure.clone(), e))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        MonomialIdeal::minimalize(structure, gens).map_err(serde::de::Error::custom)
    }
}

/// A set `F` of variables, standing for the monomial prime `P_F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSupport {
    structure: Arc<BlockStructure>,
    indices: BTreeSet<usize>,
}

impl PrimeSupport {
    /// `indices` are 0-based flattened variable indices.
    pub fn new(
        structure: Arc<BlockStructure>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(Error::Parameter("prime support must be non-empty".into()));
        }
        if let Some(&k) = indices.iter().find(|&&k| k >= structure.n_vars()) {
            return Err(Error::Parameter(format!("variable index {k} out of range")));
        }
        Ok(PrimeSupport { structure, indices })
    }

    pub(crate) fn from_mask(structure: Arc<BlockStructure>, mask: u64) -> Self {
        let indices = (0..64).filter(|k| mask >> k & 1 == 1).collect();
        PrimeSupport { structure, indices }
    }

    pub fn structure(&self) -> &Arc<BlockStructure> {
        &self.structure
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.indices.contains(&k)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.indices.is_subset(&other.indices)
    }

    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, &k| m | 1 << k)
    }

    /// `P_F` as a monomial ideal.
    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.structure.n_vars();
        let raw = self
            .indices
            .iter()
            .map(|&k| {
                let mut e = vec![0; n];
                e[k] = 1;
                e
            })
            .collect();
        MonomialIdeal::from_antichain(self.structure.clone(), raw)
    }

    pub fn var_names(&self) -> Vec<String> {
        self.indices
            .iter()
            .map(|&k| self.structure.var_name(k))
            .collect()
    }
}

impl Serialize for PrimeSupport {
    /// Serialized as 1-based flattened indices.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.indices.iter().map(|k| k + 1).collect();
        one_based.serialize(serializer)
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.var_names().join(", "))
    }
}
