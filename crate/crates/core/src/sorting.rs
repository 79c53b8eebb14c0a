//! The sort operator on equal-degree exponent vectors, sortability, sorting
//! relations of the toric ideal, and fiber-level evidence that those
//! relations form a quadratic Gröbner basis.
//!
//! `sort(u, v)` lists the `2t` variable occurrences of `x^u x^v` in
//! nondecreasing index order `z_1 <= ... <= z_2t`; `u'` collects the odd
//! positions and `v'` the even ones.
//!
//! Binomials of the toric ideal pair generator multisets with equal exponent
//! sums (a fiber). The sorting relations form a Gröbner basis exactly when
//! directed sorting moves lead every multiset of a fiber to one common sorted
//! multiset. That is checked fiber by fiber in degrees 2 and 3.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::monomial::{check_same, BlockStructure, Exp, ExponentVector};

/// An ordered pair of equal-degree exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SortPair {
    pub first: ExponentVector,
    pub second: ExponentVector,
}

fn sort_exps(u: &[Exp], v: &[Exp]) -> (Vec<Exp>, Vec<Exp>) {
    let mut first = vec![0; u.len()];
    let mut second = vec![0; u.len()];
    let mut pos = 0u64;
    for k in 0..u.len() {
        let count = u[k] as u64 + v[k] as u64;
        // positions pos, pos+1, ..., pos+count-1 (0-based); even ones go to u'
        let to_first = (count + 1 - (pos & 1)) / 2;
        first[k] = to_first as Exp;
        second[k] = (count - to_first) as Exp;
        pos += count;
    }
    (first, second)
}

/// `sort(u, v)`.
pub fn sort_pair(u: &ExponentVector, v: &ExponentVector) -> Result<SortPair> {
    check_same(u.structure(), v.structure())?;
    if u.total_degree() != v.total_degree() {
        return Err(Error::Parameter(format!(
            "sort needs equal degrees, got {} and {}",
            u.total_degree(),
            v.total_degree()
        )));
    }
    let (a, b) = sort_exps(u.exps(), v.exps());
    Ok(SortPair {
        first: ExponentVector::new(u.structure().clone(), a)?,
        second: ExponentVector::new(u.structure().clone(), b)?,
    })
}

/// True iff `sort(u, v) = (u, v)`.
pub fn is_sorted_pair(u: &ExponentVector, v: &ExponentVector) -> Result<bool> {
    let p = sort_pair(u, v)?;
    Ok(&p.first == u && &p.second == v)
}

/// Membership of exponent vectors inside the box `0 <= a <= bound`, keyed by
/// their mixed-radix code.
enum CodeSet {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl CodeSet {
    const DENSE_LIMIT: u64 = 1 << 28;

    fn new(codes: &[u64], box_size: u64) -> Self {
        if box_size <= Self::DENSE_LIMIT {
            let mut bits = vec![0u64; box_size.div_ceil(64) as usize];
            for &c in codes {
                bits[(c / 64) as usize] |= 1 << (c % 64);
            }
            CodeSet::Dense(bits)
        } else {
            CodeSet::Sparse(codes.iter().copied().collect())
        }
    }

    #[inline]
    fn contains(&self, c: u64) -> bool {
        match self {
            CodeSet::Dense(bits) => bits[(c / 64) as usize] >> (c % 64) & 1 == 1,
            CodeSet::Sparse(set) => set.contains(&c),
        }
    }
}

/// Largest variable count for which the parity lookup table is built.
const PARITY_TABLE_VARS: usize = 20;

fn prefix(g: &ExponentVector) -> impl Iterator<Item = u64> + '_ {
    g.exps().iter().scan(0u64, |acc, &e| {
        *acc += e as u64;
        Some(*acc)
    })
}

/// True iff the set is closed under `sort`, pairs `(u, u)` included.
///
/// Every pair is examined. `sort(u, v)` never exceeds the coordinatewise
/// maximum of `u` and `v`, so both images are encoded within the bounding box
/// of the set and looked up without allocation.
pub fn is_sortable(gens: &[ExponentVector]) -> Result<bool> {
    let Some(first) = gens.first() else {
        return Ok(true);
    };
    let d = first.total_degree();
    for g in gens {
        check_same(first.structure(), g.structure())?;
        if g.total_degree() != d {
            return Err(Error::Parameter(format!(
                "sort needs equal degrees, got {d} and {}",
                g.total_degree()
            )));
        }
    }
    let n = first.exps().len();
    let mut strides = vec![0u64; n];
    let mut box_size = 1u64;
    for (k, stride) in strides.iter_mut().enumerate() {
        *stride = box_size;
        let radix = gens.iter().map(|g| g.exps()[k]).max().unwrap_or(0) as u64 + 1;
        box_size = box_size
            .checked_mul(radix)
            .ok_or_else(|| Error::Overflow("bounding box of the generators exceeds u64".into()))?;
    }
    let codes: Vec<u64> = gens
        .iter()
        .map(|g| {
            g.exps()
                .iter()
                .zip(&strides)
                .map(|(&x, &s)| x as u64 * s)
                .sum()
        })
        .collect();
    let set = CodeSet::new(&codes, box_size);
    // With prefix sums C_k of u + v, sort(u, v) gives u' ceil(C_k / 2) - ceil(C_{k-1} / 2)
    // copies of x_k, so code(u') telescopes to sum_k ceil(C_k / 2) * (stride_k - stride_{k+1}).
    // Codes are additive, hence code(v') = code(u) + code(v) - code(u').
    let weights: Vec<u64> = (0..n)
        .map(|k| strides[k].wrapping_sub(strides.get(k + 1).copied().unwrap_or(0)))
        .collect();
    if n <= PARITY_TABLE_VARS {
        // ceil((U + V) / 2) = floor(U / 2) + floor(V / 2) + ((U | V) & 1), so
        // code(u') = half(u) + half(v) + table[parity(u) | parity(v)].
        let halves: Vec<u64> = gens
            .iter()
            .map(|g| {
                prefix(g).zip(&weights).fold(0u64, |acc, (c, &w)| {
                    acc.wrapping_add((c >> 1).wrapping_mul(w))
                })
            })
            .collect();
        let parities: Vec<usize> = gens
            .iter()
            .map(|g| {
                prefix(g)
                    .enumerate()
                    .fold(0usize, |m, (k, c)| m | ((c as usize & 1) << k))
            })
            .collect();
        let mut table = vec![0u64; 1 << n];
        for mask in 1..table.len() {
            let low = mask.trailing_zeros() as usize;
            table[mask] = table[mask & (mask - 1)].wrapping_add(weights[low]);
        }
        let closed_from = |i: usize| {
            let (hu, pu, cu) = (halves[i], parities[i], codes[i]);
            (i..gens.len()).all(|j| {
                let a = hu
                    .wrapping_add(halves[j])
                    .wrapping_add(table[pu | parities[j]]);
                set.contains(a) && set.contains(cu.wrapping_add(codes[j]).wrapping_sub(a))
            })
        };
        return Ok((0..gens.len()).into_par_iter().all(closed_from));
    }
    let rows: Vec<u64> = gens.iter().flat_map(prefix).collect();
    let closed_from = |i: usize| {
        let u = &rows[i * n..(i + 1) * n];
        rows[i * n..]
            .chunks_exact(n)
            .zip(&codes[i..])
            .all(|(v, &cv)| {
                let a = u
                    .iter()
                    .zip(v)
                    .zip(&weights)
                    .fold(0u64, |acc, ((&x, &y), &w)| {
                        acc.wrapping_add(((x + y + 1) >> 1).wrapping_mul(w))
                    });
                set.contains(a) && set.contains(codes[i] + cv - a)
            })
    };
    Ok((0..gens.len()).into_par_iter().all(closed_from))
}

/// The generators `f_1, ..., f_p` of an equigenerated monomial ideal, indexing
/// the variables `t_1, ..., t_p` of the presentation ring.
#[derive(Clone, Debug)]
pub struct ToricPresentation {
    structure: Arc<BlockStructure>,
    generators: Vec<ExponentVector>,
    index: HashMap<Vec<Exp>, usize>,
}

impl ToricPresentation {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        Self::from_generators(ideal.structure().clone(), ideal.gens().to_vec())
    }

    /// Presentation of an arbitrary nonempty set of equal-degree monomials,
    /// kept in canonical order.
    pub fn from_generators(
        structure: Arc<BlockStructure>,
        mut generators: Vec<ExponentVector>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Parameter(
                "presentation needs at least one generator".into(),
            ));
        }
        for g in &generators {
            check_same(&structure, g.structure())?;
        }
        let d = generators[0].total_degree();
        if generators.iter().any(|g| g.total_degree() != d) {
            return Err(Error::Parameter(
                "presentation generators must share one degree".into(),
            ));
        }
        generators.sort();
        generators.dedup();
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.exps().to_vec(), i))
            .collect();
        Ok(ToricPresentation {
            structure,
            generators,
            index,
        })
    }

    pub fn structure(&self) -> &Arc<BlockStructure> {
        &self.structure
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_sortable(&self) -> bool {
        is_sortable(&self.generators).expect("generators share structure and degree")
    }

    fn require_sortable(&self) -> Result<()> {
        if self.is_sortable() {
            Ok(())
        } else {
            Err(Error::Domain("generator set is not sortable".into()))
        }
    }

    /// Indices of `sort(f_i, f_j)`, or `None` when the image leaves the set.
    fn sorted_indices(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let (a, b) = sort_exps(self.generators[i].exps(), self.generators[j].exps());
        Some((*self.index.get(&a)?, *self.index.get(&b)?))
    }

    fn pair_is_sorted(&self, i: usize, j: usize) -> bool {
        let (lo, hi) = (i.min(j), i.max(j));
        matches!(self.sorted_indices(lo, hi), Some((a, b)) if (a.min(b), a.max(b)) == (lo, hi))
    }

    /// Exponent sum of a multiset of generator indices.
    pub fn degree_of(&self, multiset: &[usize]) -> Vec<Exp> {
        let mut acc = vec![0; self.structure.n_vars()];
        for &i in multiset {
            for (a, &e) in acc.iter_mut().zip(self.generators[i].exps()) {
                *a += e;
            }
        }
        acc
    }
}

/// The quadratic binomial `t_u t_v - t_u' t_v'` with `(u', v') = sort(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SortingRelation {
    /// Unsorted pair, as 0-based generator indices `i <= j`.
    pub lhs: (usize, usize),
    /// Sorted image, as generator indices of `(u', v')`.
    pub rhs: (usize, usize),
}

/// One relation per unordered pair whose sorted image is a different pair.
pub fn sorting_relations(p: &ToricPresentation) -> Result<Vec<SortingRelation>> {
    p.require_sortable()?;
    let mut out = Vec::new();
    for i in 0..p.len() {
        for j in i..p.len() {
            let (a, b) = p.sorted_indices(i, j).expect("sortable");
            if (a.min(b), a.max(b)) != (i, j) {
                out.push(SortingRelation {
                    lhs: (i, j),
                    rhs: (a, b),
                });
            }
        }
    }
    Ok(out)
}

/// Every multiset of `degree` generators whose exponents sum to `target`,
/// as sorted index lists in lexicographic order.
pub fn fiber(
    p: &ToricPresentation,
    degree: usize,
    target: &ExponentVector,
) -> Result<Vec<Vec<usize>>> {
    check_same(&p.structure, target.structure())?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(degree);
    let mut left = target.exps().to_vec();
    fiber_search(p, degree, 0, &mut cur, &mut left, &mut out);
    Ok(out)
}

fn fiber_search(
    p: &ToricPresentation,
    degree: usize,
    start: usize,
    cur: &mut Vec<usize>,
    left: &mut Vec<Exp>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == degree {
        if left.iter().all(|&e| e == 0) {
            out.push(cur.clone());
        }
        return;
    }
    for i in start..p.len() {
        let g = p.generators[i].exps();
        if g.iter().zip(left.iter()).all(|(a, b)| a <= b) {
            for (l, &e) in left.iter_mut().zip(g) {
                *l -= e;
            }
            cur.push(i);
            fiber_search(p, degree, i, cur, left, out);
            cur.pop();
            for (l, &e) in left.iter_mut().zip(g) {
                *l += e;
            }
        }
    }
}

/// Outcome of directed rewriting by sorting moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum NormalForm {
    Reached { form: Vec<usize>, steps: usize },
    Cycle { at: Vec<usize>, steps: usize },
    StepCap { at: Vec<usize>, steps: usize },
}

/// First unsorted pair of positions in a sorted multiset, scanning `(i, j)` lexicographically.
fn first_unsorted(p: &ToricPresentation, m: &[usize]) -> Option<(usize, usize)> {
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if m[i] != m[j] && !p.pair_is_sorted(m[i], m[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rewrites the multiset by replacing its first unsorted pair with the sorted
/// image until no pair is unsorted.
pub fn normal_form(
    p: &ToricPresentation,
    multiset: &[usize],
    limits: &Limits,
) -> Result<NormalForm> {
    p.require_sortable()?;
    if let Some(&bad) = multiset.iter().find(|&&i| i >= p.len()) {
        return Err(Error::Parameter(format!(
            "generator index {bad} out of range"
        )));
    }
    Ok(rewrite(p, multiset, limits))
}

fn rewrite(p: &ToricPresentation, multiset: &[usize], limits: &Limits) -> NormalForm {
    let mut m = multiset.to_vec();
    m.sort_unstable();
    let mut seen = HashSet::new();
    let mut steps = 0;
    loop {
        let Some((i, j)) = first_unsorted(p, &m) else {
            return NormalForm::Reached { form: m, steps };
        };
        if !seen.insert(m.clone()) {
            return NormalForm::Cycle { at: m, steps };
        }
        if steps >= limits.max_rewrite_steps {
            return NormalForm::StepCap { at: m, steps };
        }
        let (a, b) = p.sorted_indices(m[i], m[j]).expect("sortable");
        m[i] = a;
        m[j] = b;
        m.sort_unstable();
        steps += 1;
    }
}

/// A fiber on which the quadratic Gröbner basis prediction fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberViolation {
    pub degree: usize,
    pub target: Vec<Exp>,
    pub kind: &'static str,
    pub detail: String,
}

/// Summary of the fiber checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GbEvidence {
    pub sortable: bool,
    pub generator_count: usize,
    pub relation_count: usize,
    /// `sum (|fiber| - 1)` over degree-2 fibers.
    pub quadratic_kernel_dim: usize,
    pub fibers_checked: usize,
    pub nontrivial_fibers: usize,
    pub violations: Vec<FiberViolation>,
}

impl GbEvidence {
    pub fn passed(&self) -> bool {
        self.sortable && self.violations.is_empty()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn multisets(p: usize, degree: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, p: usize, degree: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == degree {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            go(i, p, degree, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, p, degree, &mut Vec::new(), &mut out);
    out
}

fn multiset_count(p: u64, degree: u64) -> u64 {
    // C(p + d - 1, d)
    (0..degree).fold(1u64, |acc, i| acc.saturating_mul(p + i) / (i + 1))
}

fn check_fiber(
    p: &ToricPresentation,
    degree: usize,
    target: &[Exp],
    members: &[Vec<usize>],
    limits: &Limits,
) -> Vec<FiberViolation> {
    let mut violations = Vec::new();
    let position: HashMap<&[usize], usize> = members
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut uf = UnionFind((0..members.len()).collect());
    for (idx, m) in members.iter().enumerate() {
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if m[i] == m[j] || p.pair_is_sorted(m[i], m[j]) {
                    continue;
                }
                let (a, b) = p.sorted_indices(m[i], m[j]).expect("sortable");
                let mut moved = m.clone();
                moved[i] = a;
                moved[j] = b;
                moved.sort_unstable();
                match position.get(moved.as_slice()) {
                    Some(&other) => uf.union(idx, other),
                    None => violations.push(FiberViolation {
                        degree,
                        target: target.to_vec(),
                        kind: "move-leaves-fiber",
                        detail: format!("{m:?} -> {moved:?}"),
                    }),
                }
            }
        }
    }
    let roots: HashSet<usize> = (0..members.len()).map(|i| uf.find(i)).collect();
    if roots.len() > 1 {
        violations.push(FiberViolation {
            degree,
            target: target.to_vec(),
            kind: "disconnected",
            detail: format!(
                "{} components among {} multisets",
                roots.len(),
                members.len()
            ),
        });
    }
    let mut forms = std::collections::BTreeSet::new();
    for m in members {
        match rewrite(p, m, limits) {
            NormalForm::Reached { form, .. } => {
                forms.insert(form);
            }
            NormalForm::Cycle { at, steps } => violations.push(FiberViolation {
                degree,
                target: target.to_vec(),
                kind: "cycle",
                detail: format!("rewriting {m:?} revisits {at:?} after {steps} steps"),
            }),
            NormalForm::StepCap { at, steps } => violations.push(FiberViolation {
                degree,
                target: target.to_vec(),
                kind: "nontermination",
                detail: format!("rewriting {m:?} still at {at:?} after {steps} steps"),
            }),
        }
    }
    if forms.len() > 1 {
        violations.push(FiberViolation {
            degree,
            target: target.to_vec(),
            kind: "multiple-normal-forms",
            detail: format!("{forms:?}"),
        });
    }
    violations
}

/// Fiber connectivity, unique normal forms and termination in degrees
/// `2..=max_degree`.
pub fn quadratic_gb_evidence(
    p: &ToricPresentation,
    max_degree: usize,
    limits: &Limits,
) -> Result<GbEvidence> {
    p.require_sortable()?;
    let relations = sorting_relations(p)?;
    let mut evidence = GbEvidence {
        sortable: true,
        generator_count: p.len(),
        relation_count: relations.len(),
        quadratic_kernel_dim: 0,
        fibers_checked: 0,
        nontrivial_fibers: 0,
        violations: Vec::new(),
    };
    for degree in 2..=max_degree {
        let count = multiset_count(p.len() as u64, degree as u64);
        if count > limits.max_multisets {
            return Err(Error::SizeGuard(format!(
                "{count} multisets in degree {degree} exceeds cap {}",
                limits.max_multisets
            )));
        }
        let mut fibers: BTreeMap<Vec<Exp>, Vec<Vec<usize>>> = BTreeMap::new();
        for m in multisets(p.len(), degree) {
            fibers.entry(p.degree_of(&m)).or_default().push(m);
        }
        evidence.fibers_checked += fibers.len();
        evidence.nontrivial_fibers += fibers.values().filter(|f| f.len() > 1).count();
        if degree == 2 {
            evidence.quadratic_kernel_dim = fibers.values().map(|f| f.len() - 1).sum();
        }
        let fibers: Vec<_> = fibers.into_iter().collect();
        let found: Vec<Vec<FiberViolation>> = fibers
            .par_iter()
            .map(|(target, members)| check_fiber(p, degree, target, members, limits))
            .collect();
        evidence.violations.extend(found.into_iter().flatten());
    }
    if max_degree >= 2 && evidence.quadratic_kernel_dim != evidence.relation_count {
        evidence.violations.push(FiberViolation {
            degree: 2,
            target: Vec::new(),
            kind: "kernel-count",
            detail: format!(
                "{} sorting relations but quadratic kernel dimension {}",
                evidence.relation_count, evidence.quadratic_kernel_dim
            ),
        });
    }
    Ok(evidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_generalized, IdealParameters};

    fn ev(s: &Arc<BlockStructure>, e: &[Exp]) -> ExponentVector {
        ExponentVector::new(s.clone(), e.to_vec()).unwrap()
    }

    fn presentation(blocks: &[usize], t: u32, s: u32) -> ToricPresentation {
        ToricPresentation::new(&build_generalized(
            &IdealParameters::from_blocks(blocks, t, s).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn sort_examples() {
        let s = BlockStructure::new(vec![2]).unwrap();
        let p = sort_pair(&ev(&s, &[2, 0]), &ev(&s, &[0, 2])).unwrap();
        assert_eq!(
            (p.first.exps(), p.second.exps()),
            (&[1, 1][..], &[1, 1][..])
        );
        let u = ev(&s, &[1, 1]);
        assert!(is_sorted_pair(&u, &u).unwrap());

        let s = BlockStructure::new(vec![2, 2]).unwrap();
        let p = sort_pair(&ev(&s, &[1, 0, 0, 1]), &ev(&s, &[0, 1, 1, 0])).unwrap();
        assert_eq!(
            (p.first.exps(), p.second.exps()),
            (&[1, 0, 1, 0][..], &[0, 1, 0, 1][..])
        );
    }

    #[test]
    fn sort_degree_mismatch() {
        let s = BlockStructure::new(vec![2]).unwrap();
        assert!(matches!(
            sort_pair(&ev(&s, &[2, 0]), &ev(&s, &[0, 1])),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn sortability_examples() {
        assert!(presentation(&[2, 2], 4, 2).is_sortable());
        let s = BlockStructure::new(vec![2]).unwrap();
        assert!(!is_sortable(&[ev(&s, &[2, 0]), ev(&s, &[0, 2])]).unwrap());
        assert!(is_sortable(&[ev(&s, &[2, 0])]).unwrap());
    }

    #[test]
    fn relations_of_l22() {
        let p = presentation(&[2, 2], 2, 2);
        let rel = sorting_relations(&p).unwrap();
        assert_eq!(rel.len(), 1);
        let g = p.generators();
        let show = |i: usize| g[i].to_string();
        let (a, b) = rel[0].lhs;
        let (c, d) = rel[0].rhs;
        let mut lhs = [show(a), show(b)];
        lhs.sort();
        assert_eq!(lhs, ["x11*x22", "x12*x21"]);
        assert_eq!(
            (show(c), show(d)),
            ("x11*x21".to_string(), "x12*x22".to_string())
        );
    }

    #[test]
    fn relations_of_singleton_and_unsortable() {
        let s = BlockStructure::new(vec![2]).unwrap();
        let single = ToricPresentation::from_generators(s.clone(), vec![ev(&s, &[1, 1])]).unwrap();
        assert!(sorting_relations(&single).unwrap().is_empty());
        let bad =
            ToricPresentation::from_generators(s.clone(), vec![ev(&s, &[2, 0]), ev(&s, &[0, 2])])
                .unwrap();
        assert!(matches!(sorting_relations(&bad), Err(Error::Domain(_))));
        assert!(matches!(
            quadratic_gb_evidence(&bad, 3, &Limits::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fiber_examples() {
        let p = presentation(&[2, 2], 2, 2);
        let s = p.structure().clone();
        let f = fiber(&p, 2, &ev(&s, &[1, 1, 1, 1])).unwrap();
        assert_eq!(f.len(), 2);
        let g = 0;
        let doubled: Vec<Exp> = p.generators()[g].exps().iter().map(|e| 2 * e).collect();
        assert!(fiber(&p, 2, &ev(&s, &doubled))
            .unwrap()
            .contains(&vec![g, g]));
        assert!(fiber(&p, 2, &ev(&s, &[4, 0, 0, 0])).unwrap().is_empty());
    }

    #[test]
    fn normal_forms() {
        let p = presentation(&[2, 2], 2, 2);
        let lim = Limits::default();
        let idx = |e: &[Exp]| p.generators().iter().position(|g| g.exps() == e).unwrap();
        let (a, b) = (idx(&[1, 0, 0, 1]), idx(&[0, 1, 1, 0]));
        let (c, d) = (idx(&[1, 0, 1, 0]), idx(&[0, 1, 0, 1]));
        let mut expect = vec![c, d];
        expect.sort();
        assert_eq!(
            normal_form(&p, &[a, b], &lim).unwrap(),
            NormalForm::Reached {
                form: expect.clone(),
                steps: 1
            }
        );
        assert_eq!(
            normal_form(&p, &expect, &lim).unwrap(),
            NormalForm::Reached {
                form: expect,
                steps: 0
            }
        );

        let s = p.structure().clone();
        let members = fiber(&p, 3, &ev(&s, &[2, 1, 2, 1])).unwrap();
        assert!(members.len() > 1);
        let forms: HashSet<_> = members
            .iter()
            .map(|m| normal_form(&p, m, &lim).unwrap())
            .map(|nf| match nf {
                NormalForm::Reached { form, .. } => form,
                other => panic!("{other:?}"),
            })
            .collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn gb_evidence_passes_small_cases() {
        let lim = Limits::default();
        for (blocks, t, s) in [(&[2, 2][..], 2, 2), (&[2, 2][..], 4, 2)] {
            let e = quadratic_gb_evidence(&presentation(blocks, t, s), 3, &lim).unwrap();
            assert!(e.passed(), "{e:?}");
        }
    }

    #[test]
    fn multiset_counting() {
        assert_eq!(multiset_count(17, 3), 969);
        assert_eq!(multisets(17, 3).len(), 969);
        assert_eq!(multiset_count(4, 2), 10);
    }
}
