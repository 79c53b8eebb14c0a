//! Parameter grids for cross-validation sweeps.

use crate::builders::IdealParameters;

/// Every ordered tuple of `n` block sizes drawn from `sizes`, in lexicographic order.
pub fn block_tuples(n: usize, sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                sizes.iter().map(move |&m| {
                    let mut p = prefix.clone();
                    p.push(m);
                    p
                })
            })
            .collect();
    }
    out
}

/// Every ordered block tuple with `n` in `blocks` and sizes in `sizes`.
pub fn structures(blocks: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .flat_map(|&n| block_tuples(n, sizes))
        .collect()
}

/// Block tuples with total size at most `max_vars` (all compositions of `1..=max_vars`).
pub fn structures_up_to(max_vars: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: usize, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for m in 1..=left {
            prefix.push(m);
            go(prefix, left - m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_vars, &mut out);
    out.sort_by(|a, b| {
        a.iter()
            .sum::<usize>()
            .cmp(&b.iter().sum())
            .then_with(|| a.cmp(b))
    });
    out
}

/// Valid parameters for the given blocks, `s` values and `t` filter.
pub fn params_for(
    blocks: &[usize],
    s_values: &[u32],
    mut keep: impl FnMut(&[usize], u32, u32) -> bool,
) -> Vec<IdealParameters> {
    let n_vars: usize = blocks.iter().sum();
    let mut out = Vec::new();
    for &s in s_values {
        for t in 1..=s * n_vars as u32 {
            if keep(blocks, t, s) {
                if let Ok(p) = IdealParameters::from_blocks(blocks, t, s) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples() {
        assert_eq!(
            block_tuples(2, &[1, 2]),
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        assert_eq!(structures(&[1, 2], &[1, 2]).len(), 6);
        // compositions of 1..=3: 1 + 2 + 4
        assert_eq!(structures_up_to(3).len(), 7);
    }

    #[test]
    fn params_skip_invalid() {
        let ps = params_for(&[1, 1], &[2], |_, _, _| true);
        let ts: Vec<u32> = ps.iter().map(|p| p.t).collect();
        assert_eq!(ts, vec![2, 3, 4]);
    }
}
