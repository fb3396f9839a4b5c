//! Centers and reverse centers of parking functions, the greedy membership
//! scans, the counting identities relating them, and the sweep that checks
//! the center-length distribution is the same for every arrangement in a
//! fixed dimension.

use std::collections::BTreeSet;

use crate::arrangement::ArrangementSpec;
use crate::graphs::{augmented_graph, graph_of_arrangement, Burner};
use crate::jobs;

/// A center or reverse center: the largest member set together with its
/// size. Qualifying sets are closed under union, so "largest" is
/// well-defined and the greedy scans below compute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterResult {
    pub members: BTreeSet<usize>,
}

impl CenterResult {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }
}

/// The reverse center of `a`: the largest `{x_1 > x_2 > ... > x_l} ⊆ [n]`
/// with `a(x_i) < i` for every position `i`. Greedy descending scan: `x`
/// joins when `a(x)` is at most the number of members already collected.
pub fn reverse_center(a: &[usize]) -> CenterResult {
    let mut members = BTreeSet::new();
    for x in (1..=a.len()).rev() {
        if a[x - 1] <= members.len() {
            members.insert(x);
        }
    }
    CenterResult { members }
}

/// Reverse-center length alone, allocation-free; used by the counting loops.
fn reverse_center_len(a: &[usize]) -> usize {
    let mut count = 0;
    for x in (1..=a.len()).rev() {
        if a[x - 1] <= count {
            count += 1;
        }
    }
    count
}

/// The center of a word in `[n]^n`: the largest `{x_1 < ... < x_l}` with
/// `a(x_i) <= i`. Greedy ascending scan, mirror of [`reverse_center`].
pub fn center(a: &[usize]) -> CenterResult {
    let n = a.len();
    let mut members = BTreeSet::new();
    for (pos, &entry) in a.iter().enumerate() {
        assert!((1..=n).contains(&entry), "entry {entry} at position {pos} outside 1..={n}");
        if entry <= members.len() + 1 {
            members.insert(pos + 1);
        }
    }
    CenterResult { members }
}

/// `a* = a + (1, ..., 1)`, the shift between 0-based and 1-based parking
/// function conventions.
pub fn star_shift(a: &[usize]) -> Vec<usize> {
    a.iter().map(|&e| e + 1).collect()
}

/// Is `a` a label of the all-Ish arrangement? Characterization: entries
/// stay below `n` and `1` belongs to the reverse center.
pub fn is_ish_parking(a: &[usize]) -> bool {
    let n = a.len();
    a.iter().all(|&e| e < n) && reverse_center(a).contains(1)
}

/// Classical parking function test: the sorted vector satisfies
/// `sorted[i] <= i` (0-based).
pub fn is_classical_parking(a: &[usize]) -> bool {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &e)| e <= i)
}

/// Brute-force distributions refuse lengths above this; the scans cost
/// `n^n` burning or sorting passes.
pub const DEFAULT_MAX_DISTRIBUTION_N: usize = 7;

fn assert_distribution_limit(n: usize) {
    assert!(n >= 1, "distribution needs n >= 1");
    assert!(
        n <= DEFAULT_MAX_DISTRIBUTION_N,
        "n = {n} exceeds the distribution limit {DEFAULT_MAX_DISTRIBUTION_N}"
    );
}

/// Advances `a` through the box `{0, ..., base-1}^len` restricted to the
/// coordinates `from..`; returns false once the sub-box wraps around.
fn odometer(a: &mut [usize], from: usize, base: usize) -> bool {
    let mut k = a.len();
    while k > from {
        k -= 1;
        if a[k] + 1 < base {
            a[k] += 1;
            return true;
        }
        a[k] = 0;
    }
    false
}

/// Distribution of center lengths `z(a*)` over the classical parking
/// functions of length `n`; entry `k - 1` counts those of length `k`.
pub fn pf_center_distribution(n: usize) -> Vec<u64> {
    assert_distribution_limit(n);
    let mut hist = vec![0u64; n];
    let mut a = vec![0usize; n];
    loop {
        if is_classical_parking(&a) {
            let z = center(&star_shift(&a)).len();
            assert!(z >= 1, "parking function with empty center: {a:?}");
            hist[z - 1] += 1;
        }
        if !odometer(&mut a, 0, n) {
            return hist;
        }
    }
}

/// Distribution of reverse-center lengths over the Ish-parking functions
/// of length `n`.
pub fn ipf_distribution(n: usize) -> Vec<u64> {
    assert_distribution_limit(n);
    let mut hist = vec![0u64; n];
    let mut a = vec![0usize; n];
    loop {
        if is_ish_parking(&a) {
            let z = reverse_center_len(&a);
            assert!(z >= 1);
            hist[z - 1] += 1;
        }
        if !odometer(&mut a, 0, n) {
            return hist;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut out = 1u128;
    for i in 0..k.min(n - k) {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

/// `r! * sum over weak compositions (j_1, ..., j_r) of n - r` of
/// `(n-1)^{j_1} (n-2)^{j_2} ... (n-r)^{j_r}`.
fn composition_sum(n: usize, r: usize) -> u128 {
    let slack = n - r;
    let mut f = vec![0u128; slack + 1];
    f[0] = 1;
    for m in (1..=r).rev() {
        let base = (n - m) as u128;
        let mut g = vec![0u128; slack + 1];
        for (rem, slot) in g.iter_mut().enumerate() {
            let mut power = 1u128;
            for j in 0..=rem {
                *slot += power * f[rem - j];
                power *= base;
            }
        }
        f = g;
    }
    (1..=r as u128).product::<u128>() * f[slack]
}

/// `k * sum_j (-1)^j C(k-1, j) (n-1-j)^{n-1}`.
fn alternating_sum(n: usize, k: usize) -> u128 {
    let mut total = 0i128;
    for j in 0..k {
        let term = binomial(k - 1, j) as i128 * ((n - 1 - j) as i128).pow(n as u32 - 1);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let out = k as i128 * total;
    assert!(out >= 0, "alternating sum went negative for n={n} k={k}");
    out as u128
}

/// The number of classical parking functions of length `n` whose center has
/// length `r`, in closed form. Both known forms (a composition sum and an
/// alternating binomial sum) are evaluated and must agree.
pub fn pf_center_count_closed_form(n: usize, r: usize) -> u128 {
    assert!((1..=n).contains(&r), "center length {r} outside 1..={n}");
    let composition = composition_sum(n, r);
    let alternating = alternating_sum(n, r);
    assert_eq!(
        composition, alternating,
        "closed forms disagree at n={n} r={r}: {composition} vs {alternating}"
    );
    composition
}

/// The number of Ish-parking functions of length `n` with reverse center of
/// length `k`: the same composition sum, derived from the block structure
/// of the reverse center.
pub fn ipf_count_closed_form(n: usize, k: usize) -> u128 {
    assert!((1..=n).contains(&k), "reverse-center length {k} outside 1..={n}");
    composition_sum(n, k)
}

/// `run(b)`: the largest `i` with `{1, ..., i}` contained in the values of
/// `b`; zero when `1` is absent. Entries must lie in `[n]`.
pub fn run(b: &[usize]) -> usize {
    let n = b.len();
    let mut present = vec![false; n + 1];
    for (pos, &entry) in b.iter().enumerate() {
        assert!((1..=n).contains(&entry), "entry {entry} at position {pos} outside 1..={n}");
        present[entry] = true;
    }
    (1..=n).take_while(|&i| present[i]).count()
}

/// A rook word starts no higher than its run.
pub fn is_rook_word(b: &[usize]) -> bool {
    run(b) >= b[0]
}

/// `R(b)`: the positions of the last occurrences of `1, ..., run(b)`.
pub fn rook_r_set(b: &[usize]) -> BTreeSet<usize> {
    (1..=run(b))
        .map(|j| b.iter().rposition(|&e| e == j).expect("value below the run is present") + 1)
        .collect()
}

/// Distribution of reverse-center lengths over the parking functions of the
/// arrangement's graph, spread over `jobs` threads by first coordinate.
/// Results do not depend on `jobs`.
pub fn reverse_center_distribution(spec: &ArrangementSpec, jobs: usize) -> Vec<u64> {
    let n = spec.n();
    let gbar = augmented_graph(&graph_of_arrangement(spec));
    let lanes = jobs::run_ordered((0..n).collect(), jobs, &|first| {
        let mut burner = Burner::new(&gbar);
        let mut hist = vec![0u64; n];
        let mut a = vec![0usize; n];
        a[0] = first;
        loop {
            if burner.fits(&a) {
                let z = reverse_center_len(&a);
                assert!(z >= 1, "parking function with empty reverse center: {a:?}");
                hist[z - 1] += 1;
            }
            if !odometer(&mut a, 1, n) {
                return hist;
            }
        }
    });
    let mut total = vec![0u64; n];
    for lane in lanes {
        for (slot, v) in total.iter_mut().zip(lane) {
            *slot += v;
        }
    }
    total
}

/// One arrangement's row in a [`SweepReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    /// The set `X`, ascending.
    pub x: Vec<usize>,
    /// Reverse-center length distribution over the graph's parking functions.
    pub by_length: Vec<u64>,
    /// Number of parking functions; always `(n+1)^(n-1)`.
    pub total: u64,
}

/// Outcome of sweeping every arrangement of a fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Whether every arrangement produced the same distribution.
    pub fn all_equal(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].by_length == w[1].by_length)
    }
}

/// The sweep refuses dimensions above this unless the caller opts in via
/// [`conjecture_sweep_with_limit`]; cost is `2^(n-2) * n^n` burning passes.
pub const DEFAULT_MAX_SWEEP_N: usize = 7;

/// For every `X ⊆ {2, ..., n-1}`, the reverse-center length distribution
/// over the parking functions of `G^X`. The report says whether all
/// distributions agree; they are conjectured to.
pub fn conjecture_sweep(n: usize, jobs: usize) -> SweepReport {
    conjecture_sweep_with_limit(n, jobs, DEFAULT_MAX_SWEEP_N)
}

/// As [`conjecture_sweep`] with an explicit dimension bound.
pub fn conjecture_sweep_with_limit(n: usize, jobs: usize, max_n: usize) -> SweepReport {
    assert!(n >= 3, "sweep needs n >= 3, got {n}");
    assert!(n <= max_n, "n = {n} exceeds the sweep limit {max_n}");
    let free: Vec<usize> = (2..n).collect();
    let mut rows = Vec::new();
    for mask in 0u32..1 << free.len() {
        let x: Vec<usize> =
            free.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
        let spec = ArrangementSpec::new(n, x.iter().copied());
        let by_length = reverse_center_distribution(&spec, jobs);
        let total = by_length.iter().sum();
        rows.push(SweepRow { x, by_length, total });
    }
    SweepReport { n, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::dfs_burn;

    fn boxed_vectors(n: usize, top: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=top).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Largest qualifying set by brute force over all subsets: descending
    /// members must satisfy `a(x_i) < i`.
    fn reverse_center_oracle(a: &[usize]) -> BTreeSet<usize> {
        let n = a.len();
        let mut best = BTreeSet::new();
        for mask in 0u32..1 << n {
            let members: Vec<usize> =
                (1..=n).rev().filter(|x| mask >> (x - 1) & 1 == 1).collect();
            if members.iter().enumerate().all(|(i, &x)| a[x - 1] < i + 1) && members.len() > best.len()
            {
                best = members.into_iter().collect();
            }
        }
        best
    }

    #[test]
    fn reverse_center_fixtures() {
        assert_eq!(reverse_center(&[2, 0, 1]).members, BTreeSet::from([2]));
        assert_eq!(reverse_center(&[0, 2, 2]).members, BTreeSet::from([1]));
        assert_eq!(reverse_center(&[0, 0, 0, 0]).members, BTreeSet::from([1, 2, 3, 4]));
        assert!(reverse_center(&[0, 2, 2]).contains(1));
        assert!(!reverse_center(&[2, 0, 1]).contains(1));
    }

    #[test]
    fn reverse_center_greedy_matches_the_subset_oracle() {
        for n in 1..=5 {
            for a in boxed_vectors(n, n) {
                let greedy = reverse_center(&a);
                let oracle = reverse_center_oracle(&a);
                assert_eq!(greedy.members, oracle, "a={a:?}");
                assert_eq!(greedy.len(), reverse_center_len(&a));
            }
        }
    }

    #[test]
    fn center_fixtures() {
        assert_eq!(center(&[3, 1, 2]).members, BTreeSet::from([2, 3]));
        assert_eq!(center(&[1, 2, 3, 4]).members, BTreeSet::from([1, 2, 3, 4]));
        assert!(center(&[4, 4, 4, 4]).is_empty());
    }

    #[test]
    #[should_panic(expected = "outside 1..=3")]
    fn center_rejects_entries_outside_the_alphabet() {
        center(&[1, 0, 2]);
    }

    #[test]
    fn star_shift_and_back() {
        assert_eq!(star_shift(&[0, 0, 0]), [1, 1, 1]);
        assert_eq!(star_shift(&[2, 0, 1]), [3, 1, 2]);
        let a = [4, 0, 2, 1];
        let back: Vec<usize> = star_shift(&a).iter().map(|e| e - 1).collect();
        assert_eq!(back, a);
    }

    #[test]
    fn center_of_shift_equals_reverse_center_of_reversal() {
        for n in 1..=6 {
            for a in boxed_vectors(n, n - 1) {
                let reversed: Vec<usize> = a.iter().rev().copied().collect();
                assert_eq!(
                    center(&star_shift(&a)).len(),
                    reverse_center(&reversed).len(),
                    "a={a:?}"
                );
            }
        }
    }

    #[test]
    fn classical_parking_fixtures_and_reversal_closure() {
        assert!(is_classical_parking(&[2, 0, 1]));
        assert!(!is_classical_parking(&[0, 2, 2]));
        assert!(is_classical_parking(&[0, 0, 0]));
        for n in 1..=6 {
            for a in boxed_vectors(n, n - 1) {
                let reversed: Vec<usize> = a.iter().rev().copied().collect();
                assert_eq!(is_classical_parking(&a), is_classical_parking(&reversed), "a={a:?}");
            }
        }
    }

    #[test]
    fn ish_parking_fixtures() {
        assert!(is_ish_parking(&[0, 2, 2]));
        assert!(!is_ish_parking(&[2, 0, 1]));
        assert!(is_ish_parking(&[0, 0, 0]));
        // Entry bound matters: 1 is in the reverse center but 3 is too big.
        assert!(!is_ish_parking(&[0, 3, 0]));
    }

    #[test]
    fn ish_parking_agrees_with_burning() {
        for n in 3..=5 {
            let gbar = augmented_graph(&graph_of_arrangement(&ArrangementSpec::ish(n)));
            let mut burner = Burner::new(&gbar);
            for a in boxed_vectors(n, n) {
                assert_eq!(is_ish_parking(&a), burner.fits(&a), "a={a:?}");
            }
        }
    }

    #[test]
    fn burnt_one_membership_and_fitting_coincide() {
        // Three-way equivalence on the all-Ish graph, for budgets within
        // the entry bound: vertex 1 burns iff 1 is in the reverse center
        // iff everything burns.
        for n in 3..=5 {
            let gbar = augmented_graph(&graph_of_arrangement(&ArrangementSpec::ish(n)));
            for a in boxed_vectors(n, n - 1) {
                let trace = dfs_burn(&gbar, &a);
                let one_burnt = trace.burnt_vertices.contains(&1);
                let one_in_center = reverse_center(&a).contains(1);
                assert_eq!(one_burnt, one_in_center, "a={a:?}");
                assert_eq!(one_burnt, trace.fits, "a={a:?}");
            }
        }
    }

    #[test]
    fn distribution_fixtures() {
        assert_eq!(pf_center_distribution(3), [4, 6, 6]);
        assert_eq!(ipf_distribution(3), [4, 6, 6]);
        assert_eq!(pf_center_distribution(1), [1]);
        assert_eq!(ipf_distribution(1), [1]);
    }

    #[test]
    fn the_two_distributions_agree() {
        for n in 1..=6 {
            assert_eq!(pf_center_distribution(n), ipf_distribution(n), "n={n}");
        }
    }

    #[test]
    fn closed_forms_match_each_other_and_the_brute_force() {
        for n in 1..=12 {
            for r in 1..=n {
                // Both forms evaluated and compared inside.
                let v = pf_center_count_closed_form(n, r);
                assert_eq!(v, ipf_count_closed_form(n, r));
            }
        }
        for n in 1..=6 {
            let brute = pf_center_distribution(n);
            for r in 1..=n {
                assert_eq!(
                    pf_center_count_closed_form(n, r),
                    brute[r - 1] as u128,
                    "n={n} r={r}"
                );
            }
        }
        // Full-length centers: a single empty composition survives.
        for n in 1..=8 {
            let factorial: u128 = (1..=n as u128).product();
            assert_eq!(pf_center_count_closed_form(n, n), factorial);
        }
        assert_eq!(pf_center_count_closed_form(3, 1), 4);
        assert_eq!(pf_center_count_closed_form(3, 3), 6);
        assert_eq!(ipf_count_closed_form(3, 2), 6);
    }

    #[test]
    fn distribution_totals_are_the_parking_counts() {
        for n in 1..=6 {
            let total: u64 = pf_center_distribution(n).iter().sum();
            assert_eq!(total, ((n + 1) as u64).pow(n as u32 - 1), "n={n}");
        }
    }

    #[test]
    fn rook_word_fixtures() {
        assert_eq!(run(&[1, 2, 3]), 3);
        assert!(is_rook_word(&[1, 2, 3]));
        assert_eq!(rook_r_set(&[1, 2, 3]), BTreeSet::from([1, 2, 3]));

        assert_eq!(run(&[2, 2, 2]), 0);
        assert!(!is_rook_word(&[2, 2, 2]));
        assert!(rook_r_set(&[2, 2, 2]).is_empty());

        assert_eq!(run(&[2, 1, 2, 1]), 2);
        assert_eq!(rook_r_set(&[2, 1, 2, 1]), BTreeSet::from([3, 4]));
    }

    #[test]
    #[should_panic(expected = "outside 1..=3")]
    fn run_rejects_entries_outside_the_alphabet() {
        run(&[1, 2, 4]);
    }

    #[test]
    fn rook_run_distribution_matches_the_center_distribution() {
        for n in 1..=6 {
            let mut rook_hist = vec![0u64; n + 1];
            let mut word = vec![1usize; n];
            loop {
                if is_rook_word(&word) {
                    rook_hist[run(&word)] += 1;
                }
                let mut k = n;
                let mut done = true;
                while k > 0 {
                    k -= 1;
                    if word[k] < n {
                        word[k] += 1;
                        done = false;
                        break;
                    }
                    word[k] = 1;
                }
                if done {
                    break;
                }
            }
            assert_eq!(rook_hist[0], 0, "rook words have positive run");
            assert_eq!(&rook_hist[1..], pf_center_distribution(n), "n={n}");
        }
    }

    #[test]
    fn bounded_face_counts_factor_through_the_center_counts() {
        // Dimension-indexed counts of relatively bounded faces in the
        // three-dimensional Shi arrangement.
        let faces_by_dimension = [6u128, 9, 4];
        for k in 1..=3usize {
            let lhs = pf_center_count_closed_form(3, k) * binomial(3, k - 1);
            let rhs = k as u128 * faces_by_dimension[3 - k];
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn sweep_of_the_smallest_dimensions() {
        let report = conjecture_sweep(3, 1);
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].x, Vec::<usize>::new());
        assert_eq!(report.rows[1].x, [2]);
        for row in &report.rows {
            assert_eq!(row.by_length, [4, 6, 6]);
            assert_eq!(row.total, 16);
        }
        assert!(report.all_equal());

        let report = conjecture_sweep(4, 2);
        assert_eq!(report.rows.len(), 4);
        for row in &report.rows {
            assert_eq!(row.total, 125);
            assert_eq!(row.by_length, report.rows[0].by_length, "X={:?}", row.x);
        }
        assert!(report.all_equal());
    }

    #[test]
    fn sweep_does_not_depend_on_the_job_count() {
        let one = conjecture_sweep(5, 1);
        let many = conjecture_sweep(5, 3);
        assert_eq!(one, many);
        assert!(one.all_equal());
        for row in &one.rows {
            assert_eq!(row.total, 6u64.pow(4));
        }
    }

    #[test]
    #[should_panic(expected = "exceeds the sweep limit")]
    fn sweep_respects_the_limit() {
        conjecture_sweep(8, 1);
    }

    #[test]
    fn per_arrangement_distribution_matches_the_ish_brute_force() {
        for n in 3..=5 {
            assert_eq!(
                reverse_center_distribution(&ArrangementSpec::ish(n), 1),
                ipf_distribution(n),
                "n={n}"
            );
        }
    }
}
