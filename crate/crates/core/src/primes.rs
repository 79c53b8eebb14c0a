//! Associated primes of monomial ideals.
//!
//! For `L*_{t,s}` with `r = sN - t` in `1..=s-1`, the associated primes are the
//! `P_F` with `1 <= |F| <= r + 1`. Each is realized as `I : f` for an explicit
//! monomial `f` of degree `t - 1`: exponent `s` off `F`, exponents below `s`
//! on `F`. The oracle instead searches every monomial in the lcm box of an
//! arbitrary monomial ideal.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::builders::IdealParameters;
use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, PrimeSupport};
use crate::limits::{box_points, box_size, Limits};
use crate::monomial::{Exp, ExponentVector};

fn check_deficiency(params: &IdealParameters) -> Result<u64> {
    let r = params.deficiency();
    if r == 0 || r >= params.s as u64 {
        return Err(Error::Range(format!(
            "{params}: r = sN - t = {r} must lie in 1..={}",
            params.s as i64 - 1
        )));
    }
    Ok(r)
}

/// All nonempty `F` with `|F| <= r + 1`, ordered by size then lexicographically.
pub fn ass_formula(params: &IdealParameters) -> Result<Vec<PrimeSupport>> {
    let r = check_deficiency(params)?;
    let n = params.structure.n_vars();
    let max = (r as usize + 1).min(n);
    let mut out = Vec::new();
    for size in 1..=max {
        for subset in k_subsets(n, size) {
            out.push(PrimeSupport::new(params.structure.clone(), subset)?);
        }
    }
    Ok(out)
}

/// `k`-element subsets of `0..n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The degree-`(t-1)` monomial `f` with `L*_{t,s} : f = P_F`.
///
/// Off `F` every exponent is `s`; the remaining `t - 1 - s(N - |F|)` is spread
/// over `F` in index order, at most `s - 1` per variable.
pub fn witness_monomial(
    params: &IdealParameters,
    support: &PrimeSupport,
) -> Result<ExponentVector> {
    let r = check_deficiency(params)?;
    if support.structure() != &params.structure {
        return Err(Error::Structure(
            "prime support lives on different blocks".into(),
        ));
    }
    if support.is_empty() || support.len() as u64 > r + 1 {
        return Err(Error::Range(format!(
            "|F| = {} must lie in 1..={}",
            support.len(),
            r + 1
        )));
    }
    let n = params.structure.n_vars();
    let s = params.s;
    let off = (n - support.len()) as u64 * s as u64;
    let mut left = params.t as u64 - 1 - off;
    let mut exps = vec![s; n];
    for &k in support.indices() {
        let d = left.min(s as u64 - 1);
        exps[k] = d as Exp;
        left -= d;
    }
    debug_assert_eq!(left, 0);
    ExponentVector::new(params.structure.clone(), exps)
}

/// An associated prime together with the first monomial (lexicographically)
/// that realizes it as a colon ideal.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WitnessedPrime {
    pub support: PrimeSupport,
    pub witness: ExponentVector,
}

/// Associated primes by exhaustive search over `0 <= f <= lcm(G(I))`.
///
/// Every associated prime of a monomial ideal is `I : f` for some such `f`,
/// because raising an exponent of `f` beyond `lcm_k` does not change `I : f`.
pub fn ass_oracle(ideal: &MonomialIdeal, limits: &Limits) -> Result<Vec<WitnessedPrime>> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Domain(
            "associated primes need a proper nonzero ideal".into(),
        ));
    }
    let lcm = ideal.lcm().expect("nonzero ideal");
    let bound = lcm.exps();
    let size = box_size(bound);
    if size > limits.max_witness_box {
        return Err(Error::SizeGuard(format!(
            "witness box of {size} monomials exceeds cap {}",
            limits.max_witness_box
        )));
    }
    let candidates: Vec<Vec<Exp>> = box_points(bound).collect();
    let hits: Vec<(u64, Vec<Exp>)> = candidates
        .into_par_iter()
        .filter(|f| !ideal.contains_exps(f))
        .filter_map(|f| ideal.colon_exps(&f).as_prime().map(|p| (p.mask(), f)))
        .collect();
    // candidates arrive in lexicographic order, so the first hit per support is the smallest
    let mut first: BTreeMap<u64, Vec<Exp>> = BTreeMap::new();
    for (mask, f) in hits {
        first.entry(mask).or_insert(f);
    }
    let structure = ideal.structure();
    let mut out: Vec<WitnessedPrime> = first
        .into_iter()
        .map(|(mask, f)| WitnessedPrime {
            support: PrimeSupport::from_mask(structure.clone(), mask),
            witness: ExponentVector::new(structure.clone(), f).expect("box point has N entries"),
        })
        .collect();
    out.sort_by(|a, b| support_order(&a.support, &b.support));
    Ok(out)
}

/// Size first, then lexicographic on indices.
pub fn support_order(a: &PrimeSupport, b: &PrimeSupport) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.indices().iter().cmp(b.indices().iter()))
}

/// Inclusion-minimal members of a family of prime supports.
pub fn minimal_primes(primes: &[PrimeSupport]) -> Vec<PrimeSupport> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect()
}
