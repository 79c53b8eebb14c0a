//! Vertex covers, cover number, dimension and unmixedness.
//!
//! Each invariant comes in two flavours: the closed form predicted for
//! `L*_{t,s}` from its parameters, and an exhaustive oracle that works on the
//! generators of any monomial ideal.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::builders::IdealParameters;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::BlockStructure;

/// A set of variables meeting the support of every generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCover {
    structure: Arc<BlockStructure>,
    indices: BTreeSet<usize>,
}

impl VertexCover {
    pub fn new(structure: Arc<BlockStructure>, indices: impl IntoIterator<Item = usize>) -> Self {
        VertexCover {
            structure,
            indices: indices.into_iter().collect(),
        }
    }

    fn from_mask(structure: Arc<BlockStructure>, mask: u64) -> Self {
        Self::new(structure, (0..64).filter(|k| mask >> k & 1 == 1))
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

    pub fn mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, &k| m | 1 << k)
    }

    pub fn var_names(&self) -> Vec<String> {
        self.indices
            .iter()
            .map(|&k| self.structure.var_name(k))
            .collect()
    }
}

impl serde::Serialize for VertexCover {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.var_names().serialize(serializer)
    }
}

pub fn is_vertex_cover(ideal: &MonomialIdeal, cover: &VertexCover) -> bool {
    let w = cover.mask();
    ideal.support_masks().iter().all(|&g| g & w != 0)
}

/// The supports of `G(I)` reduced to their inclusion-minimal members; covers
/// of these are exactly the covers of `I`.
fn minimal_edges(ideal: &MonomialIdeal) -> Vec<u64> {
    let mut masks = ideal.support_masks();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| (k & !m) == 0) {
            kept.push(m);
        }
    }
    kept
}

/// Every inclusion-minimal vertex cover, found by scanning all subsets of the
/// variables that occur in some generator.
pub fn minimal_vertex_covers(ideal: &MonomialIdeal, limits: &Limits) -> Result<Vec<VertexCover>> {
    let structure = ideal.structure();
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Domain(
            "vertex covers need a proper nonzero ideal".into(),
        ));
    }
    limits.check_vars(structure.n_vars())?;
    let edges = minimal_edges(ideal);
    let universe: Vec<usize> = {
        let all = edges.iter().fold(0u64, |a, &e| a | e);
        (0..64).filter(|k| all >> k & 1 == 1).collect()
    };
    let covers = |w: u64| edges.iter().all(|&e| e & w != 0);
    let count = 1u64 << universe.len();
    let mut found: Vec<u64> = (0..count)
        .into_par_iter()
        .filter_map(|bits| {
            let w = universe
                .iter()
                .enumerate()
                .filter(|(b, _)| bits >> b & 1 == 1)
                .fold(0u64, |m, (_, &k)| m | 1 << k);
            let minimal = covers(w)
                && universe
                    .iter()
                    .all(|&k| w >> k & 1 == 0 || !covers(w & !(1 << k)));
            minimal.then_some(w)
        })
        .collect();
    found.sort_by_key(|&w| {
        (
            w.count_ones(),
            (0..64).filter(|k| w >> k & 1 == 1).collect::<Vec<_>>(),
        )
    });
    Ok(found
        .into_iter()
        .map(|w| VertexCover::from_mask(structure.clone(), w))
        .collect())
}

/// `h(I)`, the least size of a vertex cover.
pub fn cover_number(ideal: &MonomialIdeal, limits: &Limits) -> Result<usize> {
    Ok(minimal_vertex_covers(ideal, limits)?
        .iter()
        .map(VertexCover::len)
        .min()
        .unwrap_or(0))
}

/// Which closed-form regime the parameters fall in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimRegime {
    /// `2 <= t <= sN - s`.
    A,
    /// `t = sN - r` with `1 <= r <= s - 1`.
    B,
}

pub fn dim_regime(params: &IdealParameters) -> Result<DimRegime> {
    let t = params.t as u64;
    let top = params.top_degree();
    let s = params.s as u64;
    if t >= 2 && t + s <= top {
        Ok(DimRegime::A)
    } else if s >= 2 && t < top && t + s > top {
        Ok(DimRegime::B)
    } else {
        Err(Error::Range(format!(
            "{params}: t must satisfy 2 <= t <= sN-1 with s >= 2 when t > sN-s"
        )))
    }
}

/// Closed-form Krull dimension of `T / L*_{t,s}`.
pub fn dim_formula(params: &IdealParameters) -> Result<usize> {
    let n = params.structure.n_vars();
    Ok(match dim_regime(params)? {
        DimRegime::A => n - params.structure.min_block_size(),
        DimRegime::B => n - 1,
    })
}

/// `N - h(I)`.
pub fn dim_oracle(ideal: &MonomialIdeal, limits: &Limits) -> Result<usize> {
    Ok(ideal.structure().n_vars() - cover_number(ideal, limits)?)
}

/// True iff all minimal vertex covers have the same size.
pub fn is_unmixed(ideal: &MonomialIdeal, limits: &Limits) -> Result<bool> {
    let covers = minimal_vertex_covers(ideal, limits)?;
    Ok(covers.windows(2).all(|w| w[0].len() == w[1].len()))
}

/// Closed-form unmixedness: equal block sizes in regime (a), always in regime (b).
pub fn unmixed_predicate(params: &IdealParameters) -> Result<bool> {
    Ok(match dim_regime(params)? {
        DimRegime::A => params.structure.sizes().windows(2).all(|w| w[0] == w[1]),
        DimRegime::B => true,
    })
}

/// `reg(T / L*_{t,s}) = t - 1`.
pub fn regularity_formula(params: &IdealParameters) -> u32 {
    params.t - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build_generalized;

    fn lstar(blocks: &[usize], t: u32, s: u32) -> (IdealParameters, MonomialIdeal) {
        let p = IdealParameters::from_blocks(blocks, t, s).unwrap();
        let i = build_generalized(&p);
        (p, i)
    }

    fn cover_names(covers: &[VertexCover]) -> Vec<Vec<String>> {
        covers.iter().map(VertexCover::var_names).collect()
    }

    #[test]
    fn is_vertex_cover_examples() {
        let (_, i) = lstar(&[2, 2], 3, 2);
        let s = i.structure().clone();
        assert!(is_vertex_cover(&i, &VertexCover::new(s.clone(), 0..4)));
        assert!(is_vertex_cover(&i, &VertexCover::new(s.clone(), [0, 1])));
        assert!(!is_vertex_cover(&i, &VertexCover::new(s, [0])));
    }

    #[test]
    fn minimal_covers_examples() {
        let lim = Limits::default();
        let (_, i) = lstar(&[2, 2], 3, 2);
        assert_eq!(
            cover_names(&minimal_vertex_covers(&i, &lim).unwrap()),
            vec![vec!["x11", "x12"], vec!["x21", "x22"]]
        );
        let (_, i) = lstar(&[2, 2], 11, 3);
        assert_eq!(
            cover_names(&minimal_vertex_covers(&i, &lim).unwrap()),
            vec![vec!["x11"], vec!["x12"], vec!["x21"], vec!["x22"]]
        );
        let (_, i) = lstar(&[2, 2, 2], 3, 2);
        assert_eq!(
            cover_names(&minimal_vertex_covers(&i, &lim).unwrap()),
            vec![vec!["x11", "x12"], vec!["x21", "x22"], vec!["x31", "x32"]]
        );
    }

    #[test]
    fn cover_number_examples() {
        let lim = Limits::default();
        assert_eq!(cover_number(&lstar(&[2, 2], 3, 2).1, &lim).unwrap(), 2);
        assert_eq!(cover_number(&lstar(&[2, 2], 11, 3).1, &lim).unwrap(), 1);
        let s = BlockStructure::new(vec![2, 2]).unwrap();
        let prime = crate::ideal::PrimeSupport::new(s, [0, 1])
            .unwrap()
            .to_ideal();
        assert_eq!(cover_number(&prime, &lim).unwrap(), 2);
    }

    #[test]
    fn dim_examples() {
        let lim = Limits::default();
        let (p, i) = lstar(&[2, 2, 2], 3, 2);
        assert_eq!(dim_formula(&p).unwrap(), 4);
        assert_eq!(dim_oracle(&i, &lim).unwrap(), 4);
        let (p, i) = lstar(&[2, 2], 11, 3);
        assert_eq!(dim_formula(&p).unwrap(), 3);
        assert_eq!(dim_oracle(&i, &lim).unwrap(), 3);
        let (p, i) = lstar(&[2, 2], 2, 2);
        assert_eq!(dim_formula(&p).unwrap(), 2);
        assert_eq!(dim_oracle(&i, &lim).unwrap(), 2);
    }

    #[test]
    fn dim_formula_range_errors() {
        // t = sN is outside both regimes
        let p = IdealParameters::from_blocks(&[2, 2], 8, 2).unwrap();
        assert!(matches!(dim_formula(&p), Err(Error::Range(_))));
        // s = 1 has no regime (b): t = N - 1 is still regime (a), t = N is neither
        let p = IdealParameters::from_blocks(&[2, 2], 3, 1).unwrap();
        assert_eq!(dim_regime(&p).unwrap(), DimRegime::A);
        let p = IdealParameters::from_blocks(&[2, 2], 4, 1).unwrap();
        assert!(matches!(dim_formula(&p), Err(Error::Range(_))));
        let p = IdealParameters::from_blocks(&[1], 1, 1).unwrap();
        assert!(matches!(unmixed_predicate(&p), Err(Error::Range(_))));
    }

    #[test]
    fn unmixed_examples() {
        let lim = Limits::default();
        let (p, i) = lstar(&[2, 2], 3, 2);
        assert!(unmixed_predicate(&p).unwrap() && is_unmixed(&i, &lim).unwrap());
        let (p, i) = lstar(&[2, 2], 11, 3);
        assert!(unmixed_predicate(&p).unwrap() && is_unmixed(&i, &lim).unwrap());
        let (p, i) = lstar(&[2, 3], 3, 2);
        assert!(!unmixed_predicate(&p).unwrap());
        assert!(!is_unmixed(&i, &lim).unwrap());
    }

    #[test]
    fn mixed_cover_beyond_verified_range() {
        let (_, i) = lstar(&[2, 3], 8, 2);
        let covers = cover_names(&minimal_vertex_covers(&i, &Limits::default()).unwrap());
        assert!(covers.contains(&vec!["x11".to_string(), "x21".to_string()]));
    }

    #[test]
    fn regularity_formula_examples() {
        assert_eq!(regularity_formula(&lstar(&[2, 2, 2], 3, 2).0), 2);
        assert_eq!(regularity_formula(&lstar(&[1], 4, 4).0), 3);
        assert_eq!(regularity_formula(&lstar(&[2, 2], 2, 2).0), 1);
    }

    #[test]
    fn guards() {
        let (_, i) = lstar(&[2, 2], 3, 2);
        let tight = Limits {
            max_vars: 3,
            ..Limits::default()
        };
        assert!(matches!(
            minimal_vertex_covers(&i, &tight),
            Err(Error::SizeGuard(_))
        ));
        let s = i.structure().clone();
        assert!(matches!(
            minimal_vertex_covers(&MonomialIdeal::unit(s), &Limits::default()),
            Err(Error::Domain(_))
        ));
    }
}
