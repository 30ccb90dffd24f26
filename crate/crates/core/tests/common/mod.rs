//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library except to build words.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twobridge::ConwayWord;

pub const CORPUS_SEED: u64 = 0x2b1d_6e5a;
pub const CORPUS_SIZE: usize = 200;

/// Seeded random words with every `b_j` even, `1 <= m <= 6` and
/// `2 <= |entry| <= 10`. Half are sign-coherent (reduced alternating), the
/// rest carry independent signs.
pub fn corpus() -> Vec<ConwayWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let m = rng.gen_range(1..=6usize);
            let coherent = rng.gen_bool(0.5);
            let global = if rng.gen_bool(0.5) { 1 } else { -1 };
            let entries = (0..2 * m + 1)
                .map(|i| {
                    let mag = if i % 2 == 0 { rng.gen_range(2..=10i64) } else { 2 * rng.gen_range(1..=5i64) };
                    let sign = if coherent { global } else if rng.gen_bool(0.5) { 1 } else { -1 };
                    sign * mag
                })
                .collect();
            ConwayWord::new(entries).expect("valid word")
        })
        .collect()
}

/// Every odd-length word of nonzero entries with `sum |e| <= max_weight`.
pub fn all_words(max_weight: u64) -> Vec<Vec<i64>> {
    fn grow(prefix: &mut Vec<i64>, left: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() % 2 == 1 {
            out.push(prefix.clone());
        }
        for mag in 1..=left {
            for e in [mag, -mag] {
                prefix.push(e);
                grow(prefix, left - mag, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), max_weight as i64, &mut out);
    out
}

/// Fraction-free Gaussian elimination.
pub fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Determinant of the link drawn as the 4-plat of `entries`, from the
/// Goeritz matrix of its checkerboard colouring.
///
/// Shaded regions are the unbounded one and the pieces of the band between
/// strands 2 and 3, which every vertical-twist crossing cuts. A horizontal
/// crossing joins the current band piece to the unbounded region, a vertical
/// one joins two consecutive pieces. Crossing types follow entry signs.
pub fn goeritz_determinant(entries: &[i64]) -> i128 {
    let pieces: usize = entries.iter().skip(1).step_by(2).map(|b| b.unsigned_abs() as usize).sum::<usize>() + 1;
    let n = pieces + 1;
    let mut g = vec![vec![0i128; n]; n];
    let mut join = |x: usize, y: usize, eta: i128| {
        g[x][y] -= eta;
        g[y][x] -= eta;
        g[x][x] += eta;
        g[y][y] += eta;
    };
    let mut piece = 1;
    for (i, &e) in entries.iter().enumerate() {
        let eta = e.signum() as i128;
        for _ in 0..e.unsigned_abs() {
            if i % 2 == 0 {
                join(piece, 0, eta);
            } else {
                join(piece, piece + 1, eta);
                piece += 1;
            }
        }
    }
    let minor: Vec<Vec<i128>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss(minor).abs()
}

/// Components of the 4-plat closure, by following strands through the
/// crossing columns and the nested caps at both ends.
pub fn plat_components(entries: &[i64]) -> usize {
    // pos[s] = current position of the strand that started at position s
    let mut at = [0usize, 1, 2, 3];
    for (i, &e) in entries.iter().enumerate() {
        let (x, y) = if i % 2 == 0 { (2, 3) } else { (1, 2) };
        for _ in 0..e.unsigned_abs() {
            at.swap(x, y);
        }
    }
    // at[pos] = starting position of the strand now at pos
    let mut parent: Vec<usize> = (0..4).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    for (x, y) in [(0, 3), (1, 2)] {
        union(&mut parent, x, y);
        union(&mut parent, at[x], at[y]);
    }
    (0..4).filter(|&x| find(&mut parent, x) == x).count()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn coprime(p: i64, q: i64) -> bool {
    gcd(p, q) == 1
}

/// Residues reachable from `q` by inversion (found by scanning) and, when
/// `mirror`, negation, closed under repetition.
pub fn orbit_brute(p: i64, q: i64, mirror: bool) -> BTreeSet<i64> {
    let mut seen = BTreeSet::from([q.rem_euclid(p)]);
    let mut frontier = vec![q.rem_euclid(p)];
    while let Some(r) = frontier.pop() {
        let mut next = vec![(1..p).find(|&s| (r * s) % p == 1).expect("unit")];
        if mirror {
            next.push((p - r) % p);
        }
        for s in next {
            if seen.insert(s) {
                frontier.push(s);
            }
        }
    }
    seen
}

/// Lobachevsky function `Λ(θ) = ½ Σ sin(2nθ)/n²`.
pub fn lobachevsky(theta: f64, terms: u32) -> f64 {
    // Pair consecutive partial sums; for θ = π/4 the series alternates over
    // odd n and the mean of two partial sums converges quadratically faster.
    let mut sum = 0.0;
    let mut prev = 0.0;
    for n in 1..=terms {
        let n = n as f64;
        prev = sum;
        sum += (2.0 * n * theta).sin() / (n * n);
    }
    0.25 * (sum + prev)
}

/// `8 Λ(π/4)`.
pub fn v_oct_oracle() -> f64 {
    8.0 * lobachevsky(std::f64::consts::FRAC_PI_4, 2_000_001)
}
