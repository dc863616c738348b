/// Rotation budget `T = max(2, ⌈ln n / ln max(d, e)⌉)`.
///
/// With `d = n` this gives 2, and `T·ln d = O(ln n)` keeps the per-stage
/// rotation tree `(12d)^{2T+2}` polynomial in `n`.
pub fn compute_budget(n: usize, d: f64) -> usize {
    let ln_n = (n.max(1) as f64).ln();
    let ln_d = d.max(std::f64::consts::E).ln();
    let t = (ln_n / ln_d).ceil();
    if t.is_finite() && t > 2.0 {
        t as usize
    } else {
        2
    }
}
