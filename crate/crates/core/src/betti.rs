//! Multigraded Betti numbers of monomial ideals via upper Koszul simplicial
//! complexes, and the Castelnuovo-Mumford regularity read off from them.
//!
//! For a multidegree `a`, the upper Koszul complex `K^a(I)` consists of the
//! squarefree `w` with `x^(a-w)` in `I`, and `beta_{i,a}(I) = dim H~_{i-1}(K^a(I))`.
//! Only `a <= lcm(G(I))` can carry Betti numbers, so that box is scanned.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::{box_points, box_size, Limits};
use crate::linalg::{rank_fraction_free, rank_over_field, Matrix};
use crate::monomial::{Exp, ExponentVector};

/// Scalars in which boundary-matrix ranks can be computed exactly.
pub trait HomologyScalar: Clone + Zero + One + std::ops::Neg<Output = Self> {
    fn rank(m: &Matrix<Self>) -> Result<usize>;
}

macro_rules! integer_scalar {
    ($($t:ty),*) => {$(
        impl HomologyScalar for $t {
            fn rank(m: &Matrix<Self>) -> Result<usize> {
                rank_fraction_free(m)
            }
        }
    )*};
}

macro_rules! field_scalar {
    ($($t:ty),*) => {$(
        impl HomologyScalar for Ratio<$t> {
            fn rank(m: &Matrix<Self>) -> Result<usize> {
                Ok(rank_over_field(m))
            }
        }
    )*};
}

integer_scalar!(i32, i64, i128, BigInt);
field_scalar!(i64, i128, BigInt);

/// A finite simplicial complex on flattened variable indices, faces as bitmasks.
///
/// The void complex has no faces at all; the irrelevant complex `{∅}` has
/// only the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexView {
    vertices: Vec<usize>,
    /// All faces, ordered by dimension then mask.
    faces: Vec<u64>,
}

fn face_order(faces: &mut [u64]) {
    faces.sort_by_key(|&f| (f.count_ones(), f));
}

impl SimplicialComplexView {
    /// The closure of `facets` under taking subsets.
    pub fn from_facets(vertices: Vec<usize>, facets: &[u64]) -> Result<Self> {
        let vmask = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut all = HashSet::new();
        for &f in facets {
            if f & !vmask != 0 {
                return Err(Error::Parameter(format!(
                    "facet {f:#b} uses a vertex outside the vertex set"
                )));
            }
            // enumerate submasks of f
            let mut sub = f;
            loop {
                all.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut faces: Vec<u64> = all.into_iter().collect();
        face_order(&mut faces);
        Ok(SimplicialComplexView { vertices, faces })
    }

    /// Faces given explicitly; they must be closed under subsets.
    pub fn from_faces(vertices: Vec<usize>, mut faces: Vec<u64>) -> Result<Self> {
        face_order(&mut faces);
        faces.dedup();
        let set: HashSet<u64> = faces.iter().copied().collect();
        for &f in &faces {
            for k in 0..64 {
                if f >> k & 1 == 1 && !set.contains(&(f & !(1 << k))) {
                    return Err(Error::Parameter(format!(
                        "face {f:#b} is missing a boundary face"
                    )));
                }
            }
        }
        Ok(SimplicialComplexView { vertices, faces })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Inclusion-maximal faces.
    pub fn facets(&self) -> Vec<u64> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && g & f == f))
            .collect()
    }

    /// Number of faces of each dimension, starting at dimension -1.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in &self.faces {
            let d = face.count_ones() as usize;
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    /// `sum_d (-1)^d f_d` over `d >= -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum()
    }
}

/// `K^a(I)`: squarefree `w` within the support of `a` with `a - w` in `I`.
pub fn upper_koszul_complex(
    ideal: &MonomialIdeal,
    a: &ExponentVector,
) -> Result<SimplicialComplexView> {
    crate::monomial::check_same(ideal.structure(), a.structure())?;
    let support = a.support();
    let faces = koszul_faces(&support, a.exps(), |v| ideal.contains_exps(v));
    SimplicialComplexView::from_faces(support, faces)
}

fn koszul_faces(support: &[usize], a: &[Exp], member: impl Fn(&[Exp]) -> bool) -> Vec<u64> {
    let mut faces = Vec::new();
    let mut scratch = a.to_vec();
    for bits in 0u64..(1 << support.len()) {
        let mut mask = 0u64;
        for (b, &k) in support.iter().enumerate() {
            if bits >> b & 1 == 1 {
                scratch[k] -= 1;
                mask |= 1 << k;
            }
        }
        if member(&scratch) {
            faces.push(mask);
        }
        scratch.copy_from_slice(a);
    }
    faces
}

/// Ranks of `H~_d` for `d = -1, 0, 1, ...` (index `d + 1`), computed with the
/// scalar type `S`. The void complex yields an empty list.
pub fn reduced_homology_ranks_with<S: HomologyScalar>(
    complex: &SimplicialComplexView,
) -> Result<Vec<usize>> {
    let f = complex.f_vector();
    if f.is_empty() {
        return Ok(Vec::new());
    }
    let by_dim: Vec<Vec<u64>> = (0..f.len())
        .map(|d| {
            complex
                .faces
                .iter()
                .copied()
                .filter(|x| x.count_ones() as usize == d)
                .collect()
        })
        .collect();
    // boundary_rank[d] = rank of the map from faces with d vertices to faces with d-1 vertices
    let mut boundary_rank = vec![0usize; f.len() + 1];
    for d in 1..f.len() {
        let rows = &by_dim[d - 1];
        let cols = &by_dim[d];
        let index: std::collections::HashMap<u64, usize> =
            rows.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut m = Matrix::<S>::zeros(rows.len(), cols.len());
        for (c, &face) in cols.iter().enumerate() {
            let mut sign_neg = false;
            for k in 0..64 {
                if face >> k & 1 == 0 {
                    continue;
                }
                let r = index[&(face & !(1 << k))];
                m.set(r, c, if sign_neg { -S::one() } else { S::one() });
                sign_neg = !sign_neg;
            }
        }
        boundary_rank[d] = S::rank(&m)?;
    }
    Ok((0..f.len())
        .map(|d| f[d] - boundary_rank[d] - boundary_rank[d + 1])
        .collect())
}

/// Reduced homology ranks using the default integer scalar.
pub fn reduced_homology_ranks(complex: &SimplicialComplexView) -> Result<Vec<usize>> {
    reduced_homology_ranks_with::<crate::DefaultScalar>(complex)
}

/// Whether ranks describe the ideal `I` or the quotient `T/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BettiConvention {
    Ideal,
    Quotient,
}

/// Nonzero multigraded Betti numbers `beta_{i,a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub convention: BettiConvention,
    pub fine: BTreeMap<(usize, Vec<Exp>), usize>,
}

/// `((i, a), beta_{i,a})`.
type FineKey = ((usize, Vec<Exp>), usize);

#[derive(Serialize)]
struct FineEntry<'a> {
    i: usize,
    multidegree: &'a [Exp],
    rank: usize,
}

#[derive(Serialize)]
struct CoarseEntry {
    i: usize,
    j: u64,
    rank: usize,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let fine: Vec<FineEntry> = self
            .fine
            .iter()
            .map(|((i, a), &rank)| FineEntry {
                i: *i,
                multidegree: a,
                rank,
            })
            .collect();
        let coarse: Vec<CoarseEntry> = self
            .coarse()
            .into_iter()
            .map(|((i, j), rank)| CoarseEntry { i, j, rank })
            .collect();
        let mut st = serializer.serialize_struct("BettiTable", 3)?;
        st.serialize_field("convention", &self.convention)?;
        st.serialize_field("coarse", &coarse)?;
        st.serialize_field("fine", &fine)?;
        st.end()
    }
}

impl BettiTable {
    /// `beta_{i,j} = sum over |a| = j of beta_{i,a}`.
    pub fn coarse(&self) -> BTreeMap<(usize, u64), usize> {
        let mut out = BTreeMap::new();
        for ((i, a), &r) in &self.fine {
            let j = a.iter().map(|&e| e as u64).sum();
            *out.entry((*i, j)).or_insert(0) += r;
        }
        out
    }

    /// Total Betti numbers `beta_i = sum_j beta_{i,j}`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for ((i, _), &r) in &self.fine {
            if out.len() <= *i {
                out.resize(i + 1, 0);
            }
            out[*i] += r;
        }
        out
    }

    /// `beta_{i,a}(T/I) = beta_{i-1,a}(I)` for `i >= 1`, plus `beta_{0,0}(T/I) = 1`.
    pub fn to_quotient(&self) -> BettiTable {
        match self.convention {
            BettiConvention::Quotient => self.clone(),
            BettiConvention::Ideal => {
                let n = self.fine.keys().next().map_or(0, |(_, a)| a.len());
                let mut fine: BTreeMap<_, _> = self
                    .fine
                    .iter()
                    .map(|((i, a), &r)| ((i + 1, a.clone()), r))
                    .collect();
                fine.insert((0, vec![0; n]), 1);
                BettiTable {
                    convention: BettiConvention::Quotient,
                    fine,
                }
            }
        }
    }

    /// `max { j - i : beta_{i,j} != 0 }` in this table's convention.
    pub fn regularity(&self) -> Option<i64> {
        self.coarse()
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
    }
}

/// Betti numbers of `I`, computed with the scalar type `S`.
pub fn betti_numbers_with<S: HomologyScalar>(
    ideal: &MonomialIdeal,
    limits: &Limits,
) -> Result<BettiTable> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Domain(
            "Betti numbers need a proper nonzero ideal".into(),
        ));
    }
    let lcm = ideal.lcm().expect("nonzero ideal");
    let bound = lcm.exps().to_vec();
    let size = box_size(&bound);
    if size > limits.max_betti_box {
        return Err(Error::SizeGuard(format!(
            "multidegree box of {size} exceeds cap {}",
            limits.max_betti_box
        )));
    }
    let member = membership_table(ideal, &bound);
    let strides = strides(&bound);
    let points: Vec<Vec<Exp>> = box_points(&bound).collect();
    let entries: Vec<Vec<FineKey>> = points
        .into_par_iter()
        .enumerate()
        .filter(|(idx, _)| member[*idx])
        .map(|(_, a)| {
            let support: Vec<usize> = (0..a.len()).filter(|&k| a[k] > 0).collect();
            let faces = koszul_faces(&support, &a, |v| member[flat_index(v, &strides)]);
            let complex = SimplicialComplexView::from_faces(support, faces)?;
            let ranks = reduced_homology_ranks_with::<S>(&complex)?;
            Ok(ranks
                .into_iter()
                .enumerate()
                .filter(|&(_, r)| r > 0)
                .map(|(i, r)| ((i, a.clone()), r))
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(BettiTable {
        convention: BettiConvention::Ideal,
        fine: entries.into_iter().flatten().collect(),
    })
}

/// Betti numbers of `I` with the default scalar.
pub fn betti_numbers(ideal: &MonomialIdeal, limits: &Limits) -> Result<BettiTable> {
    betti_numbers_with::<crate::DefaultScalar>(ideal, limits)
}

/// `reg(T/I)` from the Betti table.
pub fn regularity_oracle(ideal: &MonomialIdeal, limits: &Limits) -> Result<i64> {
    let table = betti_numbers(ideal, limits)?.to_quotient();
    Ok(table.regularity().expect("quotient table has beta_00"))
}

fn strides(bound: &[Exp]) -> Vec<usize> {
    let mut s = vec![1usize; bound.len()];
    for k in (0..bound.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * (bound[k + 1] as usize + 1);
    }
    s
}

fn flat_index(a: &[Exp], strides: &[usize]) -> usize {
    a.iter().zip(strides).map(|(&e, &s)| e as usize * s).sum()
}

/// `member[idx(a)]` for every `a` in the box: `a` is a generator or `a - e_k` is in `I`.
fn membership_table(ideal: &MonomialIdeal, bound: &[Exp]) -> Vec<bool> {
    let strides = strides(bound);
    let gens: HashSet<&[Exp]> = ideal.gens().iter().map(|g| g.exps()).collect();
    let mut member = vec![false; box_size(bound) as usize];
    for (idx, a) in box_points(bound).enumerate() {
        member[idx] = gens.contains(a.as_slice())
            || (0..a.len()).any(|k| a[k] > 0 && member[idx - strides[k]]);
    }
    member
}
