//! Elementary-interval counting.

use super::PointSet;

/// Calls `visit` with every composition `(k_1, .., k_dim)` of `total`
/// into non-negative parts.
pub fn for_each_composition(dim: usize, total: u32, visit: &mut dyn FnMut(&[u32])) {
    fn rec(parts: &mut Vec<u32>, dim: usize, left: u32, visit: &mut dyn FnMut(&[u32])) {
        if parts.len() + 1 == dim {
            parts.push(left);
            visit(parts);
            parts.pop();
            return;
        }
        for k in 0..=left {
            parts.push(k);
            rec(parts, dim, left - k, visit);
            parts.pop();
        }
    }
    if dim == 0 {
        return;
    }
    rec(&mut Vec::with_capacity(dim), dim, total, visit);
}

fn cell_index(row: &[f64], shape: &[u32], base: u64) -> Option<usize> {
    let mut idx = 0usize;
    for (&x, &k) in row.iter().zip(shape) {
        let cells = base.checked_pow(k)?;
        let c = ((x * cells as f64).floor() as u64).min(cells - 1);
        idx = idx.checked_mul(cells as usize)?.checked_add(c as usize)?;
    }
    Some(idx)
}

/// True iff each elementary interval of volume `base^-(m - t)` holds exactly
/// `base^t` points, for every shape.
pub fn balanced_at(points: &PointSet, m: u32, t: u32, base: u32) -> bool {
    if base < 2 || t > m {
        return false;
    }
    let b = base as u64;
    let Some(n) = b.checked_pow(m) else {
        return false;
    };
    if points.len() as u64 != n {
        return false;
    }
    let per_cell = b.pow(t) as usize;
    let cells = (n / b.pow(t)) as usize;
    let mut ok = true;
    let mut counts = vec![0usize; cells];
    for_each_composition(points.dim(), m - t, &mut |shape| {
        if !ok {
            return;
        }
        counts.iter_mut().for_each(|c| *c = 0);
        for row in points.rows() {
            match cell_index(row, shape, b) {
                Some(i) => counts[i] += 1,
                None => {
                    ok = false;
                    return;
                }
            }
        }
        ok = counts.iter().all(|&c| c == per_cell);
    });
    ok
}

/// Every elementary interval of volume `base^-m` contains exactly one point.
pub fn elementary_interval_balance(points: &PointSet, m: u32, base: u32) -> bool {
    balanced_at(points, m, 0, base)
}

/// Smallest `t` for which the points form a `(t, m, dim)`-net.
pub fn t_value(points: &PointSet, m: u32, base: u32) -> Option<u32> {
    (0..=m).find(|&t| balanced_at(points, m, t, base))
}
