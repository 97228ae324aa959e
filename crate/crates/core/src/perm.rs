//! Index bookkeeping for antisymmetric tensors over six modes.

/// Number of single-particle modes of the three-fermion system.
pub const MODES: usize = 6;

/// Ordered triples `i < j < k` in lexicographic order (0-based).
pub const TRIPLES: [[usize; 3]; 20] = build_triples();

/// Ordered pairs `i < j` in lexicographic order (0-based).
pub const PAIRS: [[usize; 2]; 15] = build_pairs();

const fn build_triples() -> [[usize; 3]; 20] {
    let mut out = [[0; 3]; 20];
    let mut n = 0;
    let mut i = 0;
    while i < MODES {
        let mut j = i + 1;
        while j < MODES {
            let mut k = j + 1;
            while k < MODES {
                out[n] = [i, j, k];
                n += 1;
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    out
}

const fn build_pairs() -> [[usize; 2]; 15] {
    let mut out = [[0; 2]; 15];
    let mut n = 0;
    let mut i = 0;
    while i < MODES {
        let mut j = i + 1;
        while j < MODES {
            out[n] = [i, j];
            n += 1;
            j += 1;
        }
        i += 1;
    }
    out
}

const TRIPLE_LOOKUP: [[[u8; MODES]; MODES]; MODES] = {
    let mut table = [[[u8::MAX; MODES]; MODES]; MODES];
    let mut n = 0;
    while n < 20 {
        let t = TRIPLES[n];
        table[t[0]][t[1]][t[2]] = n as u8;
        n += 1;
    }
    table
};

const PAIR_LOOKUP: [[u8; MODES]; MODES] = {
    let mut table = [[u8::MAX; MODES]; MODES];
    let mut n = 0;
    while n < 15 {
        let p = PAIRS[n];
        table[p[0]][p[1]] = n as u8;
        n += 1;
    }
    table
};

/// Position of the sorted triple `i < j < k` in [`TRIPLES`].
#[inline]
pub fn triple_index(i: usize, j: usize, k: usize) -> Option<usize> {
    if i >= MODES || j >= MODES || k >= MODES {
        return None;
    }
    match TRIPLE_LOOKUP[i][j][k] {
        u8::MAX => None,
        n => Some(n as usize),
    }
}

/// Position of the sorted pair `i < j` in [`PAIRS`].
#[inline]
pub fn pair_index(i: usize, j: usize) -> Option<usize> {
    if i >= MODES || j >= MODES {
        return None;
    }
    match PAIR_LOOKUP[i][j] {
        u8::MAX => None,
        n => Some(n as usize),
    }
}

/// Sign of the permutation sorting `seq`; zero if an entry repeats.
pub fn permutation_sign(seq: &[usize]) -> i32 {
    let mut sign = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] == seq[b] {
                return 0;
            }
            if seq[a] > seq[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Sorts a triple and returns it with the sign of the sorting permutation
/// (zero when two indices coincide).
#[inline]
pub fn sort_triple(i: usize, j: usize, k: usize) -> ([usize; 3], i32) {
    let sign = permutation_sign(&[i, j, k]);
    let mut t = [i, j, k];
    t.sort_unstable();
    (t, sign)
}

/// The three modes not contained in a sorted triple, in increasing order.
pub fn complement(t: [usize; 3]) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for m in 0..MODES {
        if !t.contains(&m) {
            out[n] = m;
            n += 1;
        }
    }
    out
}

/// Levi-Civita symbol on six indices.
#[inline]
pub fn levi_civita6(idx: [usize; 6]) -> i32 {
    permutation_sign(&idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        for (n, t) in TRIPLES.iter().enumerate() {
            assert_eq!(triple_index(t[0], t[1], t[2]), Some(n));
        }
        for (n, p) in PAIRS.iter().enumerate() {
            assert_eq!(pair_index(p[0], p[1]), Some(n));
        }
        assert_eq!(triple_index(1, 0, 2), None);
        assert_eq!(pair_index(3, 3), None);
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[0, 0, 2]), 0);
        assert_eq!(levi_civita6([3, 4, 5, 0, 1, 2]), -1);
        assert_eq!(levi_civita6([0, 1, 2, 3, 4, 5]), 1);
        assert_eq!(complement([0, 2, 4]), [1, 3, 5]);
    }
}
