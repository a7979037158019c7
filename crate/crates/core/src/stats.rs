//! Sample statistics used to check the default-time sampler.

/// Kendall's rank correlation of paired samples in `O(n log n)` (Knight's
/// algorithm). Assumes continuous data: ties are not corrected for.
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "paired samples must have equal length");
    let n = xs.len();
    if n < 2 {
        return f64::NAN;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]).then(ys[i].total_cmp(&ys[j])));
    let mut seq: Vec<f64> = idx.iter().map(|&i| ys[i]).collect();
    let mut buf = vec![0.0; n];
    let discordant = count_inversions(&mut seq, &mut buf);
    let pairs = (n as f64) * (n as f64 - 1.0) / 2.0;
    1.0 - 2.0 * discordant as f64 / pairs
}

// Merge sort that counts pairs i < j with v[i] > v[j].
fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (lo, hi) = v.split_at_mut(mid);
        let (blo, bhi) = buf.split_at_mut(mid);
        count_inversions(lo, blo) + count_inversions(hi, bhi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            count += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    count
}
