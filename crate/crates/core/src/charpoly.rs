//! Characteristic polynomials by finite-field point counting.
//!
//! Over a prime field large enough that the defining equations stay
//! distinct, the number of points avoiding every hyperplane is a polynomial
//! in the field size. Counting at enough primes and interpolating recovers
//! the characteristic polynomial; evaluations at `-1` and `1` then give the
//! region and relatively-bounded region counts.

use num::BigInt;

use crate::arrangement::ArrangementSpec;
use crate::exact::{interpolate_int_poly, IntPoly};
use crate::jobs;

/// A point count over one prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteFieldCount {
    pub q: u64,
    pub count: u64,
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The `count` smallest primes strictly above `threshold`.
pub fn primes_above(threshold: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut q = threshold + 1;
    while out.len() < count {
        if is_prime(q) {
            out.push(q);
        }
        q += 1;
    }
    out
}

/// Counting core with the first coordinate pinned to zero. Positions are
/// filled in increasing index order; `statics[j]` holds the values position
/// `j` can never take (from constraints against `x_1`), and the running
/// mask accumulates the values and offset values forbidden by earlier
/// positions. `braid` switches the all-coordinates-distinct constraint,
/// and `shi_row[i]` says whether row `i` carries Shi hyperplanes.
fn count_fixed_first(n: usize, q: u64, braid: bool, statics: &[u128], shi_row: &[bool]) -> u64 {
    struct Ctx<'a> {
        n: usize,
        q: u64,
        braid: bool,
        statics: &'a [u128],
        shi_row: &'a [bool],
    }
    fn go(pos: usize, ctx: &Ctx, running: u128) -> u64 {
        if pos > ctx.n {
            return 1;
        }
        let forbidden = running | ctx.statics[pos];
        let mut total = 0;
        for v in 0..ctx.q {
            if forbidden >> v & 1 == 0 {
                let mut next = running;
                if ctx.braid {
                    next |= 1 << v;
                }
                if ctx.shi_row[pos] {
                    next |= 1 << ((v + ctx.q - 1) % ctx.q);
                }
                total += go(pos + 1, ctx, next);
            }
        }
        total
    }
    go(2, &Ctx { n, q, braid, statics, shi_row }, 0)
}

/// Number of points of the n-fold product of the q-element field lying on
/// no hyperplane of the arrangement. Everything is invariant under adding
/// a constant to all coordinates, so the count is `q` times the count with
/// `x_1 = 0`, which is what gets enumerated.
pub fn count_complement_points(spec: &ArrangementSpec, q: u64) -> FiniteFieldCount {
    let n = spec.n();
    assert!(is_prime(q), "{q} is not prime");
    assert!(q > (n * n) as u64, "prime {q} too small for n = {n}: need q > {}", n * n);
    assert!(q <= 128, "prime {q} exceeds the 128-bit mask");

    // With x_1 = 0: position j avoids 0 (braid row 1), q-1 (Shi row 1,
    // x_1 = x_j + 1) and q-i for every Ish row i < j (x_1 = x_j + i).
    let mut statics = vec![0u128; n + 1];
    for (j, slot) in statics.iter_mut().enumerate().skip(2) {
        let mut m: u128 = 1 | 1 << (q - 1);
        for &i in spec.ish_indices().iter().filter(|&&i| i < j) {
            m |= 1 << (q - i as u64);
        }
        *slot = m;
    }
    // Row i in X forbids x_j = x_i - 1 for every later position j.
    let shi_row: Vec<bool> = (0..=n).map(|i| spec.shi_indices().contains(&i)).collect();

    let count = q * count_fixed_first(n, q, true, &statics, &shi_row);
    FiniteFieldCount { q, count }
}

/// Characteristic polynomials are computed only up to this dimension; the
/// point count per prime grows like `q^(n-1)` with `q > n^2`.
pub const DEFAULT_MAX_CHARPOLY_N: usize = 6;

/// A characteristic polynomial together with the primes that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharpolyResult {
    pub poly: IntPoly,
    pub primes_used: Vec<u64>,
    pub validated_at: u64,
}

/// The characteristic polynomial of the arrangement: point counts at the
/// `n + 1` smallest primes above `n^2` interpolated into an integer
/// polynomial, then checked against one further prime. Panics if the
/// counts are not polynomial in `q` of the expected shape (monic, degree
/// `n`, zero constant term), which would signal an internal inconsistency.
pub fn characteristic_polynomial(spec: &ArrangementSpec) -> IntPoly {
    characteristic_polynomial_detailed(spec, 1).poly
}

/// As [`characteristic_polynomial`], keeping the witness primes and
/// fanning the per-prime counts over `jobs` threads.
pub fn characteristic_polynomial_detailed(spec: &ArrangementSpec, jobs: usize) -> CharpolyResult {
    let n = spec.n();
    assert!(
        n <= DEFAULT_MAX_CHARPOLY_N,
        "n = {n} exceeds the characteristic polynomial limit {DEFAULT_MAX_CHARPOLY_N}"
    );
    let primes = primes_above((n * n) as u64, n + 2);
    let counts = jobs::run_ordered(primes.clone(), jobs, &|q| count_complement_points(spec, q));
    for c in &counts {
        assert!(c.count % c.q == 0, "count {} not divisible by q = {}", c.count, c.q);
    }
    let (validation, interpolation) = counts.split_last().expect("at least one prime");
    let points: Vec<(BigInt, BigInt)> =
        interpolation.iter().map(|c| (BigInt::from(c.q), BigInt::from(c.count))).collect();
    let poly = interpolate_int_poly(&points)
        .unwrap_or_else(|e| panic!("point counts are not polynomial: {e}"));
    assert_eq!(poly.degree(), Some(n), "characteristic polynomial degree is not {n}: {poly}");
    assert!(poly.is_monic(), "characteristic polynomial is not monic: {poly}");
    assert_eq!(
        poly.eval(&BigInt::from(validation.q)),
        BigInt::from(validation.count),
        "validation prime {} disagrees with the interpolation {poly}",
        validation.q
    );
    CharpolyResult { poly, primes_used: interpolation.iter().map(|c| c.q).collect(), validated_at: validation.q }
}

/// Region counts from the characteristic polynomial of a degree-`n`
/// arrangement: `(-1)^n p(-1)` regions, `(-1)^(n-1) p(1)` relatively
/// bounded regions.
pub fn zaslavsky_counts(p: &IntPoly) -> (BigInt, BigInt) {
    let n = p.degree().expect("zero polynomial has no region counts");
    let sign = |k: usize| if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
    let regions = sign(n) * p.eval(&BigInt::from(-1));
    let bounded = sign(n - 1) * p.eval(&BigInt::from(1));
    (regions, bounded)
}

/// Checks the defining condition for the injections counted by the gap
/// encoding: `f` maps `[a]` injectively into `[a + b]` and whenever two
/// values are consecutive, the larger one belongs to the larger index.
fn validate_injection(f: &[usize], b: usize) {
    let a = f.len();
    assert!(a >= 1, "empty injection");
    let mut seen = vec![false; a + b + 1];
    for (idx, &v) in f.iter().enumerate() {
        assert!((1..=a + b).contains(&v), "value {v} at index {} outside 1..={}", idx + 1, a + b);
        assert!(!seen[v], "value {v} repeated");
        seen[v] = true;
    }
    for (i, &fi) in f.iter().enumerate() {
        for (j, &fj) in f.iter().enumerate() {
            if fi == fj + 1 {
                assert!(i > j, "f({}) = f({}) + 1 needs the larger index first", i + 1, j + 1);
            }
        }
    }
}

/// Encodes an injection `f : [a] -> [a+b]` (satisfying the consecutive-value
/// condition) as the word `g` with `g(i)` = number of non-image values at
/// most `f(i)`. The encoding is a bijection onto `{0, ..., b}^a`.
pub fn injection_to_gap_word(f: &[usize], b: usize) -> Vec<usize> {
    validate_injection(f, b);
    let a = f.len();
    let mut image = vec![false; a + b + 1];
    for &v in f {
        image[v] = true;
    }
    let mut gaps_below = vec![0usize; a + b + 1];
    for v in 1..=a + b {
        gaps_below[v] = gaps_below[v - 1] + usize::from(!image[v]);
    }
    f.iter().map(|&v| gaps_below[v]).collect()
}

/// Decodes a word `g ∈ {0, ..., b}^a` back into the injection: the indices
/// with `g = c` form a block taking consecutive values in index order, the
/// blocks are laid out for `c = 0, 1, ..., b` in that order, and one value
/// is skipped between consecutive blocks.
pub fn gap_word_to_injection(g: &[usize], b: usize) -> Vec<usize> {
    let a = g.len();
    assert!(a >= 1, "empty word");
    for (idx, &c) in g.iter().enumerate() {
        assert!(c <= b, "entry {c} at index {} exceeds {b}", idx + 1);
    }
    let mut f = vec![0usize; a];
    let mut next = 1;
    for c in 0..=b {
        for (idx, _) in g.iter().enumerate().filter(|&(_, &gc)| gc == c) {
            f[idx] = next;
            next += 1;
        }
        next += 1;
    }
    f
}
