//! In-place k-combination stepping over index ranges, lexicographic order.

/// Resets `idx` to the first k-combination of `0..n`. Returns false when
/// there is none (k > n).
pub(crate) fn first_combination(idx: &mut Vec<usize>, n: usize, k: usize) -> bool {
    idx.clear();
    if k > n {
        return false;
    }
    idx.extend(0..k);
    true
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic
/// order. Returns false when `idx` was the last one.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
