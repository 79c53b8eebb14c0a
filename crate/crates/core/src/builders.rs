//! Veronese-type and generalized Veronese bi-type ideals.
//!
//! `L*_{t,s}` is generated by every monomial of degree `t` whose exponents are
//! at most `s` and which involves every block. The same ideal arises as the
//! sum, over compositions `q_1 + ... + q_n = t` with all `q_i >= 1`, of the
//! products `L_{1,q_1,s} ... L_{n,q_n,s}` of per-block Veronese-type ideals.
//! [`build_generalized`] uses the direct description; the summation is kept
//! in [`build_generalized_by_compositions`] as a cross-check.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{BlockStructure, Exp};

/// Degree `t` and exponent cap `s` on a block structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealParameters {
    pub structure: Arc<BlockStructure>,
    pub t: u32,
    pub s: u32,
}

impl IdealParameters {
    /// Validates `1 <= s <= t`, `n <= t` and `t <= s * N`.
    pub fn new(structure: Arc<BlockStructure>, t: u32, s: u32) -> Result<Self> {
        let n = structure.n_blocks() as u64;
        let cap = s as u64 * structure.n_vars() as u64;
        if s == 0 {
            return Err(Error::Parameter("s must be positive".into()));
        }
        if s > t {
            return Err(Error::Parameter(format!("need s <= t, got s={s}, t={t}")));
        }
        if (t as u64) < n {
            return Err(Error::Parameter(format!("need t >= n = {n}, got t={t}")));
        }
        if t as u64 > cap {
            return Err(Error::Parameter(format!(
                "need t <= s*N = {cap}, got t={t}"
            )));
        }
        Ok(IdealParameters { structure, t, s })
    }

    pub fn from_blocks(blocks: &[usize], t: u32, s: u32) -> Result<Self> {
        Self::new(BlockStructure::new(blocks.to_vec())?, t, s)
    }

    /// `s * N`, the largest admissible degree.
    pub fn top_degree(&self) -> u64 {
        self.s as u64 * self.structure.n_vars() as u64
    }

    /// `r = s*N - t`.
    pub fn deficiency(&self) -> u64 {
        self.top_degree() - self.t as u64
    }
}

impl Serialize for IdealParameters {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("IdealParameters", 3)?;
        st.serialize_field("blocks", self.structure.sizes())?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("s", &self.s)?;
        st.end()
    }
}

impl std::fmt::Display for IdealParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks: Vec<String> = self
            .structure
            .sizes()
            .iter()
            .map(|m| m.to_string())
            .collect();
        write!(f, "blocks=({}) t={} s={}", blocks.join(","), self.t, self.s)
    }
}

/// Pushes every vector of length `len` with entries in `0..=cap` summing to `total`.
fn bounded_compositions(len: usize, total: u64, cap: Exp, out: &mut Vec<Vec<Exp>>) {
    fn go(prefix: &mut Vec<Exp>, len: usize, left: u64, cap: Exp, out: &mut Vec<Vec<Exp>>) {
        let slots = (len - prefix.len()) as u64;
        if slots == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let rest_cap = (slots - 1) * cap as u64;
        let lo = left.saturating_sub(rest_cap);
        let hi = left.min(cap as u64);
        for e in lo..=hi {
            prefix.push(e as Exp);
            go(prefix, len, left - e, cap, out);
            prefix.pop();
        }
    }
    if total > len as u64 * cap as u64 {
        return;
    }
    go(&mut Vec::with_capacity(len), len, total, cap, out);
}

/// `L_{i,q,s}`: monomials of degree `q` on block `i` (0-based) with exponents at most `s`.
pub fn veronese_type(
    structure: &Arc<BlockStructure>,
    block: usize,
    q: u32,
    s: u32,
) -> Result<MonomialIdeal> {
    if block >= structure.n_blocks() {
        return Err(Error::Parameter(format!(
            "block {} does not exist",
            block + 1
        )));
    }
    let m = structure.sizes()[block];
    if q == 0 || q as u64 > s as u64 * m as u64 {
        return Err(Error::Parameter(format!(
            "need 1 <= q <= s*m_i = {}, got q={q}",
            s as u64 * m as u64
        )));
    }
    let mut local = Vec::new();
    bounded_compositions(m, q as u64, s, &mut local);
    let range = structure.block_range(block);
    let raw = local
        .into_iter()
        .map(|part| {
            let mut e = vec![0; structure.n_vars()];
            e[range.clone()].copy_from_slice(&part);
            e
        })
        .collect();
    Ok(MonomialIdeal::from_antichain(structure.clone(), raw))
}

/// `L*_{t,s}` from the direct description.
pub fn build_generalized(params: &IdealParameters) -> MonomialIdeal {
    let structure = &params.structure;
    let mut all = Vec::new();
    bounded_compositions(structure.n_vars(), params.t as u64, params.s, &mut all);
    let raw = all
        .into_iter()
        .filter(|e| {
            (0..structure.n_blocks()).all(|i| e[structure.block_range(i)].iter().any(|&x| x > 0))
        })
        .collect();
    MonomialIdeal::from_antichain(structure.clone(), raw)
}

/// `L*_{t,s}` as the literal sum over compositions of products of Veronese-type ideals.
pub fn build_generalized_by_compositions(params: &IdealParameters) -> Result<MonomialIdeal> {
    let structure = &params.structure;
    let n = structure.n_blocks();
    let mut total = MonomialIdeal::zero(structure.clone());
    for q in compositions(params.t, n) {
        let feasible = q
            .iter()
            .zip(structure.sizes())
            .all(|(&qi, &m)| qi as u64 <= params.s as u64 * m as u64);
        if !feasible {
            continue;
        }
        let mut term = MonomialIdeal::unit(structure.clone());
        for (i, &qi) in q.iter().enumerate() {
            term = term.product(&veronese_type(structure, i, qi, params.s)?)?;
        }
        total = total.sum(&term)?;
    }
    Ok(total)
}

/// All compositions of `t` into `parts` positive integers, in lexicographic order.
pub fn compositions(t: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, left: u32, parts: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == parts {
            if left >= 1 {
                prefix.push(left);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let remaining = (parts - prefix.len() - 1) as u32;
        for q in 1..=left.saturating_sub(remaining) {
            prefix.push(q);
            go(prefix, left - q, parts, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 || (t as usize) < parts {
        return out;
    }
    go(&mut Vec::with_capacity(parts), t, parts, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(i: &MonomialIdeal) -> Vec<Vec<Exp>> {
        i.gens().iter().map(|g| g.exps().to_vec()).collect()
    }

    #[test]
    fn veronese_type_examples() {
        let s = BlockStructure::new(vec![2, 2]).unwrap();
        assert_eq!(
            rows(&veronese_type(&s, 0, 3, 2).unwrap()),
            vec![vec![1, 2, 0, 0], vec![2, 1, 0, 0]]
        );
        // q <= s: every degree-q monomial of the block
        assert_eq!(
            rows(&veronese_type(&s, 0, 1, 2).unwrap()),
            vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0]]
        );
        let s3 = BlockStructure::new(vec![3]).unwrap();
        assert_eq!(
            rows(&veronese_type(&s3, 0, 2, 1).unwrap()),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn veronese_type_range_errors() {
        let s = BlockStructure::new(vec![2, 2]).unwrap();
        assert!(matches!(
            veronese_type(&s, 0, 0, 2),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            veronese_type(&s, 0, 5, 2),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            veronese_type(&s, 2, 1, 2),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        assert!(IdealParameters::from_blocks(&[2, 2], 2, 2).is_ok());
        assert!(matches!(
            IdealParameters::from_blocks(&[2, 2], 2, 3),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            IdealParameters::from_blocks(&[1, 1, 1], 2, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            IdealParameters::from_blocks(&[2, 2], 9, 2),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            IdealParameters::from_blocks(&[2, 2], 2, 0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn principal_single_variable() {
        let p = IdealParameters::from_blocks(&[1], 3, 3).unwrap();
        assert_eq!(rows(&build_generalized(&p)), vec![vec![3]]);
        assert_eq!(
            rows(&build_generalized_by_compositions(&p).unwrap()),
            vec![vec![3]]
        );
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(2, 3), Vec::<Vec<u32>>::new());
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn l42_count_matches_generating_function() {
        // coefficient of x^4 in (1+x+x^2)^4 is 19; two vectors miss a block
        let p = IdealParameters::from_blocks(&[2, 2], 4, 2).unwrap();
        assert_eq!(build_generalized(&p).len(), 19 - 2);
    }

    #[test]
    fn direct_equals_compositions_on_grid() {
        for blocks in [
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![2, 2],
            vec![3, 1],
            vec![1, 1, 1],
            vec![2, 1, 3],
        ] {
            let n_vars: usize = blocks.iter().sum();
            for s in 1..=3u32 {
                for t in 1..=(s as usize * n_vars) as u32 {
                    let Ok(p) = IdealParameters::from_blocks(&blocks, t, s) else {
                        continue;
                    };
                    assert_eq!(
                        build_generalized(&p),
                        build_generalized_by_compositions(&p).unwrap(),
                        "{p}"
                    );
                }
            }
        }
    }
}
