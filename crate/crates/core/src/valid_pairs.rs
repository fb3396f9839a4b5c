//! Pairs of a permutation and an interval antichain, in bijection with the
//! regions of the Shi arrangement. Two labeling rules read the Pak-Stanley
//! label of a region straight off its pair, `tilde` realizes the reflection
//! symmetry of the arrangement, and `reduction_step` cuts a pair down to the
//! center of its label.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arrangement::{ArrangementSpec, HyperplaneKind, Region, Sign};
use crate::centers::{center, is_classical_parking, star_shift};
use crate::exact::BigRat;

/// Enumeration walks all `n!` permutations and their antichains; refuse
/// lengths where that stops being instant.
pub const DEFAULT_MAX_PAIR_ENUMERATION_N: usize = 6;

/// Why a candidate `(w, I)` is not a valid pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairError {
    NotAPermutation,
    IntervalOutOfRange(usize, usize),
    NestedIntervals((usize, usize), (usize, usize)),
    DecreasingEndpoints(usize, usize),
}

impl fmt::Display for PairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairError::NotAPermutation => write!(f, "w is not a permutation of 1..=n"),
            PairError::IntervalOutOfRange(b, e) => {
                write!(f, "[{b},{e}] is not an interval with 1 <= b < e <= n")
            }
            PairError::NestedIntervals((b1, e1), (b2, e2)) => {
                write!(f, "[{b1},{e1}] and [{b2},{e2}] are nested, not an antichain")
            }
            PairError::DecreasingEndpoints(b, e) => {
                write!(f, "w decreases across [{b},{e}]")
            }
        }
    }
}

/// A permutation `w` of `1..=n` together with an antichain of intervals
/// `[b,e]` of positions, each satisfying `w(b) < w(e)`. Intervals are kept
/// sorted by left endpoint, so equal pairs compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ValidPair {
    w: Vec<usize>,
    intervals: Vec<(usize, usize)>,
}

impl ValidPair {
    pub fn try_new(
        w: Vec<usize>,
        mut intervals: Vec<(usize, usize)>,
    ) -> Result<ValidPair, PairError> {
        let n = w.len();
        let mut seen = vec![false; n + 1];
        for &v in &w {
            if v == 0 || v > n || seen[v] {
                return Err(PairError::NotAPermutation);
            }
            seen[v] = true;
        }
        intervals.sort_unstable();
        for &(b, e) in &intervals {
            if b == 0 || b >= e || e > n {
                return Err(PairError::IntervalOutOfRange(b, e));
            }
            if w[b - 1] > w[e - 1] {
                return Err(PairError::DecreasingEndpoints(b, e));
            }
        }
        // Sorted by left endpoint, an antichain is exactly a strictly
        // increasing sequence in both endpoints.
        for pair in intervals.windows(2) {
            let (p, q) = (pair[0], pair[1]);
            if p.0 == q.0 || p.1 >= q.1 {
                return Err(PairError::NestedIntervals(p, q));
            }
        }
        Ok(ValidPair { w, intervals })
    }

    /// Panicking variant of [`ValidPair::try_new`].
    pub fn new(w: Vec<usize>, intervals: Vec<(usize, usize)>) -> ValidPair {
        ValidPair::try_new(w, intervals).unwrap_or_else(|e| panic!("invalid pair: {e}"))
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn w(&self) -> &[usize] {
        &self.w
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn bounds(&self) -> IntervalBounds {
        IntervalBounds::new(self.n(), &self.intervals)
    }
}

impl fmt::Display for ValidPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.w.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        for &(b, e) in &self.intervals {
            write!(f, " [{b},{e}]")?;
        }
        Ok(())
    }
}

/// Reach of the covering intervals at every position: `e(i)` is the largest
/// right endpoint over intervals containing `i`, defaulting to `i` itself,
/// and `b(j)` the smallest left endpoint, defaulting to `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBounds {
    e: Vec<usize>,
    b: Vec<usize>,
}

impl IntervalBounds {
    pub fn new(n: usize, intervals: &[(usize, usize)]) -> IntervalBounds {
        let mut e: Vec<usize> = (0..=n).collect();
        let mut b: Vec<usize> = (0..=n).collect();
        for &(lo, hi) in intervals {
            for p in lo..=hi {
                e[p] = e[p].max(hi);
                b[p] = b[p].min(lo);
            }
        }
        IntervalBounds { e, b }
    }

    /// Largest right endpoint covering position `i`, 1-indexed.
    pub fn e(&self, i: usize) -> usize {
        self.e[i]
    }

    /// Smallest left endpoint covering position `j`, 1-indexed.
    pub fn b(&self, j: usize) -> usize {
        self.b[j]
    }
}

/// The label whose entry at index `w(i)` counts, inside-out, how far the
/// region sits from the base chamber: `n - i - #{j : i < j <= e(i), w(i) < w(j)}`.
pub fn label_lambda(p: &ValidPair) -> Vec<usize> {
    lambda_on(&p.w, &p.intervals)
}

fn lambda_on(w: &[usize], intervals: &[(usize, usize)]) -> Vec<usize> {
    let n = w.len();
    let bounds = IntervalBounds::new(n, intervals);
    let mut label = vec![0usize; n];
    for i in 1..=n {
        let bigger = (i + 1..=bounds.e(i)).filter(|&j| w[j - 1] > w[i - 1]).count();
        label[w[i - 1] - 1] = n - i - bigger;
    }
    label
}

/// The Pak-Stanley label of the region of `p`, read off the pair: the entry
/// at index `w(j)` is `j - 1 - #{i : b(j) <= i < j, w(i) < w(j)}`.
pub fn label_ell(p: &ValidPair) -> Vec<usize> {
    let n = p.n();
    let bounds = p.bounds();
    let mut label = vec![0usize; n];
    for j in 1..=n {
        let smaller = (bounds.b(j)..j).filter(|&i| p.w[i - 1] < p.w[j - 1]).count();
        label[p.w[j - 1] - 1] = j - 1 - smaller;
    }
    label
}

/// The reflection `w(k) -> n + 1 - w(n + 1 - k)`, with every interval
/// `[b,e]` carried to `[n + 1 - e, n + 1 - b]`. An involution on valid pairs.
pub fn tilde(p: &ValidPair) -> ValidPair {
    let n = p.n();
    let w = (1..=n).map(|k| n + 1 - p.w[n - k]).collect();
    let intervals = p.intervals.iter().map(|&(b, e)| (n + 1 - e, n + 1 - b)).collect();
    ValidPair::new(w, intervals)
}

/// All valid pairs on `n` letters: permutation-major lexicographic order,
/// antichains in depth-first order for each permutation.
pub fn enumerate_valid_pairs(n: usize) -> Vec<ValidPair> {
    assert!(
        (1..=DEFAULT_MAX_PAIR_ENUMERATION_N).contains(&n),
        "refusing to enumerate pairs for n = {n} (limit {DEFAULT_MAX_PAIR_ENUMERATION_N})"
    );
    let mut out = Vec::new();
    for w in permutations_lex(n) {
        extend_antichains(&w, 1, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    fill_permutations(n, &mut Vec::with_capacity(n), &mut vec![false; n + 1], &mut all);
    all
}

fn fill_permutations(
    n: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    all: &mut Vec<Vec<usize>>,
) {
    if current.len() == n {
        all.push(current.clone());
        return;
    }
    for v in 1..=n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            fill_permutations(n, current, used, all);
            current.pop();
            used[v] = false;
        }
    }
}

fn extend_antichains(
    w: &[usize],
    next_b: usize,
    last_e: usize,
    stack: &mut Vec<(usize, usize)>,
    out: &mut Vec<ValidPair>,
) {
    out.push(ValidPair { w: w.to_vec(), intervals: stack.clone() });
    let n = w.len();
    for b in next_b..n {
        for e in last_e.max(b) + 1..=n {
            if w[b - 1] < w[e - 1] {
                stack.push((b, e));
                extend_antichains(w, b + 1, e, stack, out);
                stack.pop();
            }
        }
    }
}

/// The region of the Shi arrangement labeled by `p`: the chamber where
/// `x_{w(1)} > ... > x_{w(n)}`, lying beyond the Shi hyperplane of the values
/// at positions `i < j` with `w(i) < w(j)` exactly when no interval covers
/// both positions. Panics if `spec` has Ish hyperplanes or the signs carve
/// out an empty set, which would mean an index convention broke.
pub fn region_of_valid_pair(p: &ValidPair, spec: &ArrangementSpec) -> Region {
    let n = p.n();
    assert_eq!(spec.n(), n, "pair and arrangement disagree on n");
    assert!(spec.ish_indices().is_empty(), "valid pairs label Shi regions only");
    let mut pos = vec![0usize; n + 1];
    for (idx, &v) in p.w.iter().enumerate() {
        pos[v] = idx + 1;
    }
    let signs: Vec<Sign> = spec
        .hyperplanes()
        .iter()
        .map(|h| match h.kind {
            HyperplaneKind::Coxeter => {
                if pos[h.i] < pos[h.j] {
                    Sign::Pos
                } else {
                    Sign::Neg
                }
            }
            HyperplaneKind::Shi => {
                let (i, j) = (pos[h.i], pos[h.j]);
                let covered = p.intervals.iter().any(|&(b, e)| b <= i && j <= e);
                if i < j && !covered {
                    Sign::Pos
                } else {
                    Sign::Neg
                }
            }
            HyperplaneKind::Ish => unreachable!("Ish hyperplane in a Shi arrangement"),
        })
        .collect();
    spec.region_from_signs(&signs).expect("a valid pair carves out a nonempty region")
}

/// Inverse of [`label_ell`] by table lookup over the full enumeration.
/// `None` when `a` is not a parking function.
pub fn invert_ell(a: &[usize]) -> Option<ValidPair> {
    let n = a.len();
    assert!(
        (1..=DEFAULT_MAX_PAIR_ENUMERATION_N).contains(&n),
        "refusing to tabulate pairs for n = {n} (limit {DEFAULT_MAX_PAIR_ENUMERATION_N}); \
         use invert_ell_search"
    );
    let table: BTreeMap<Vec<usize>, ValidPair> =
        enumerate_valid_pairs(n).into_iter().map(|p| (label_ell(&p), p)).collect();
    table.get(a).cloned()
}

/// Inverse of [`label_ell`] by pruned search, usable past the enumeration
/// limit. Builds the permutation position by position, bounding each entry
/// of `a` between `j - 1 - inversions` and `j - 1`, then matches an interval
/// antichain against the left bounds each position still needs.
pub fn invert_ell_search(a: &[usize]) -> Option<ValidPair> {
    let n = a.len();
    if n == 0 || !is_classical_parking(a) {
        return None;
    }
    search_permutation(a, &mut Vec::with_capacity(n), &mut vec![false; n + 1])
}

fn search_permutation(a: &[usize], w: &mut Vec<usize>, used: &mut [bool]) -> Option<ValidPair> {
    let n = a.len();
    if w.len() == n {
        return match_intervals(a, w);
    }
    let j = w.len() + 1;
    for v in 1..=n {
        if used[v] {
            continue;
        }
        // The label entry of v at position j is j - 1 minus a count of
        // earlier smaller entries, so it is boxed between those extremes.
        let below = w.iter().filter(|&&x| x < v).count();
        if a[v - 1] + 1 <= j && a[v - 1] + below + 1 >= j {
            used[v] = true;
            w.push(v);
            if let Some(found) = search_permutation(a, w, used) {
                return Some(found);
            }
            w.pop();
            used[v] = false;
        }
    }
    None
}

fn match_intervals(a: &[usize], w: &[usize]) -> Option<ValidPair> {
    let n = w.len();
    // allowed[j - 1][b] holds when b as the left bound of position j yields
    // exactly the required count of smaller entries.
    let mut allowed: Vec<Vec<bool>> = Vec::with_capacity(n);
    for j in 1..=n {
        let need = j - 1 - a[w[j - 1] - 1];
        let mut ok = vec![false; j + 1];
        ok[j] = need == 0;
        let mut count = 0;
        for b in (1..j).rev() {
            if w[b - 1] < w[j - 1] {
                count += 1;
            }
            ok[b] = count == need;
        }
        if !ok.iter().any(|&x| x) {
            return None;
        }
        allowed.push(ok);
    }
    let mut profile = vec![0usize; n + 1];
    search_antichain(a, w, &allowed, 1, 0, &mut Vec::new(), &mut profile)
}

fn search_antichain(
    a: &[usize],
    w: &[usize],
    allowed: &[Vec<bool>],
    next_b: usize,
    last_e: usize,
    stack: &mut Vec<(usize, usize)>,
    profile: &mut [usize],
) -> Option<ValidPair> {
    let n = w.len();
    // Covered positions were checked when their interval was pushed, so the
    // antichain built so far matches iff the rest works uncovered.
    if (next_b..=n).all(|p| profile[p] != 0 || allowed[p - 1][p]) {
        let pair = ValidPair::new(w.to_vec(), stack.clone());
        debug_assert_eq!(label_ell(&pair), a);
        return Some(pair);
    }
    for b in next_b..n {
        // Choosing a left endpoint of b or beyond strands every earlier
        // uncovered position for good.
        if b > next_b && profile[b - 1] == 0 && !allowed[b - 2][b - 1] {
            break;
        }
        for e in last_e.max(b) + 1..=n {
            if w[b - 1] >= w[e - 1] {
                continue;
            }
            let fresh: Vec<usize> = (b..=e).filter(|&p| profile[p] == 0).collect();
            if !fresh.iter().all(|&p| allowed[p - 1][b]) {
                break;
            }
            for &p in &fresh {
                profile[p] = b;
            }
            stack.push((b, e));
            if let Some(found) = search_antichain(a, w, allowed, b + 1, e, stack, profile) {
                return Some(found);
            }
            stack.pop();
            for &p in &fresh {
                profile[p] = 0;
            }
        }
    }
    None
}

/// Outcome of one reduction step. The center of the label should list
/// exactly the values in the prefix of `u = reverse(w)` of its own length,
/// and restricting the label to the center should reproduce the label of the
/// reduced pair after it is reversed and reflected back into `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub center: BTreeSet<usize>,
    pub u_prefix: Vec<usize>,
    pub reduced_w: Vec<usize>,
    pub reduced_intervals: Vec<(usize, usize)>,
    pub restricted_label: Vec<usize>,
    pub sets_match: bool,
    pub labels_match: bool,
}

/// One reduction step on `p`: take `a = label_lambda(p)`, the center `X` of
/// `a + 1` with `m = |X|`, and `u = reverse(w)`. Checks that `X = {u_1, ...,
/// u_m}` as sets, then restricts the region of `p` to the coordinates in
/// `X`: the last `m` letters of `w` renamed through the ascending
/// enumeration of `X` form the reduced chain, and the maximal covered
/// ascents of that window form the reduced antichain. The label of the
/// reduced pair must agree with `a` restricted to `X`. The reduced pair is
/// reported with the word reversed and the intervals reflected, the
/// encoding the recursive inversion consumes. Failed checks come back as
/// flags, never panics.
pub fn reduction_step(p: &ValidPair) -> Reduction {
    let n = p.n();
    let a = label_lambda(p);
    let u: Vec<usize> = p.w.iter().rev().copied().collect();
    let center = center(&star_shift(&a)).members;
    let m = center.len();
    let u_prefix = u[..m].to_vec();
    let restricted_label: Vec<usize> = center.iter().map(|&x| a[x - 1]).collect();
    let sets_match = u_prefix.iter().copied().collect::<BTreeSet<usize>>() == center;
    if !sets_match {
        return Reduction {
            center,
            u_prefix,
            reduced_w: Vec::new(),
            reduced_intervals: Vec::new(),
            restricted_label,
            sets_match,
            labels_match: false,
        };
    }
    let rank: BTreeMap<usize, usize> =
        center.iter().enumerate().map(|(t, &x)| (x, t + 1)).collect();
    let shift = n - m;
    let small_w: Vec<usize> = p.w[shift..].iter().map(|v| rank[v]).collect();
    // A window pair is covered when an original interval contains both
    // positions; the antichain of the restricted region is the set of
    // maximal covered ascents.
    let covered = |b: usize, e: usize| {
        p.intervals.iter().any(|&(lo, hi)| lo <= b + shift && e + shift <= hi)
    };
    let mut ascents: Vec<(usize, usize)> = Vec::new();
    for b in 1..m {
        for e in b + 1..=m {
            if small_w[b - 1] < small_w[e - 1] && covered(b, e) {
                ascents.push((b, e));
            }
        }
    }
    let small_intervals: Vec<(usize, usize)> = ascents
        .iter()
        .copied()
        .filter(|&(b, e)| {
            !ascents.iter().any(|&(b2, e2)| b2 <= b && e <= e2 && (b2, e2) != (b, e))
        })
        .collect();
    let labels_match = lambda_on(&small_w, &small_intervals) == restricted_label;
    let reduced_w: Vec<usize> = small_w.iter().rev().copied().collect();
    let reduced_intervals: Vec<(usize, usize)> =
        small_intervals.iter().rev().map(|&(b, e)| (m + 1 - e, m + 1 - b)).collect();
    Reduction {
        center,
        u_prefix,
        reduced_w,
        reduced_intervals,
        restricted_label,
        sets_match,
        labels_match,
    }
}

/// The point map `x -> (-x_n, ..., -x_1)`, which carries the region of `p`
/// onto the region of `tilde(p)`.
pub fn negate_reverse_point(point: &[BigRat]) -> Vec<BigRat> {
    point.iter().rev().map(|x| -x.clone()).collect()
}
