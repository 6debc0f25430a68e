//! Exact cyclic convolution of 0/1 vectors through a number-theoretic
//! transform over the NTT-friendly prime 998244353 = 119 * 2^23 + 1.
//!
//! Entries of the cyclic convolution of two indicator vectors of length `n`
//! are at most `n`, so the result is exact whenever `n` < the NTT prime.

const MODULUS: u64 = 998_244_353;
const GENERATOR: u64 = 3;
const MAX_LOG_LEN: u32 = 23;

/// Largest cyclic length the transform can handle exactly.
pub const MAX_CYCLIC_LEN: usize = 1 << (MAX_LOG_LEN - 1);

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= MODULUS;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % MODULUS;
        }
        b = b * b % MODULUS;
        e >>= 1;
    }
    acc
}

fn ntt(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow(GENERATOR, (MODULUS - 1) / len as u64);
        if invert {
            w = pow(w, MODULUS - 2);
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            let mut wn = 1u64;
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let u = *x;
                let v = *y * wn % MODULUS;
                *x = if u + v >= MODULUS {
                    u + v - MODULUS
                } else {
                    u + v
                };
                *y = if u >= v { u - v } else { u + MODULUS - v };
                wn = wn * w % MODULUS;
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = pow(n as u64, MODULUS - 2);
        for x in a.iter_mut() {
            *x = *x * n_inv % MODULUS;
        }
    }
}

/// `c[k] = #{(i, j) : a[i] && b[j], i + j ≡ k (mod n)}` for equal-length
/// inputs. Returns `None` if `n` exceeds [`MAX_CYCLIC_LEN`].
pub fn cyclic_indicator_convolution(a: &[bool], b: &[bool]) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if n > MAX_CYCLIC_LEN {
        return None;
    }
    let len = (2 * n - 1).next_power_of_two();
    let lift = |v: &[bool]| {
        let mut out = vec![0u64; len];
        for (o, &x) in out.iter_mut().zip(v) {
            *o = x as u64;
        }
        out
    };
    let mut fa = lift(a);
    let mut fb = lift(b);
    ntt(&mut fa, false);
    ntt(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % MODULUS;
    }
    ntt(&mut fa, true);
    let mut out = vec![0u64; n];
    for (i, v) in fa.into_iter().enumerate().take(2 * n - 1) {
        out[i % n] += v;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(a: &[bool], b: &[bool]) -> Vec<u64> {
        let n = a.len();
        let mut out = vec![0u64; n];
        for i in (0..n).filter(|&i| a[i]) {
            for j in (0..n).filter(|&j| b[j]) {
                out[(i + j) % n] += 1;
            }
        }
        out
    }

    #[test]
    fn tiny_cases() {
        assert_eq!(cyclic_indicator_convolution(&[], &[]), Some(vec![]));
        assert_eq!(
            cyclic_indicator_convolution(&[true], &[true]),
            Some(vec![1])
        );
        let full = vec![true; 7];
        assert_eq!(cyclic_indicator_convolution(&full, &full), Some(vec![7; 7]));
    }

    proptest! {
        #[test]
        fn matches_naive(a in proptest::collection::vec(any::<bool>(), 1..300), seed in any::<u64>()) {
            let b: Vec<bool> = (0..a.len()).map(|i| (seed >> (i % 64)) & 1 == 1 || i % 5 == 0).collect();
            prop_assert_eq!(cyclic_indicator_convolution(&a, &b).unwrap(), naive(&a, &b));
        }
    }
}
