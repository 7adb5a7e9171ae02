/// Möbius transform applied to every output coordinate at once: entry `u` of
/// the result holds, in bit `i`, the coefficient of `x^u` in the ANF of
/// coordinate `i`.
pub fn anf(table: &[u32]) -> Vec<u32> {
    let mut out = table.to_vec();
    let len = out.len();
    let mut h = 1;
    while h < len {
        for chunk in out.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (l, u) in lo.iter().zip(hi.iter_mut()) {
                *u ^= *l;
            }
        }
        h *= 2;
    }
    out
}
