//! Strict linear feasibility over the rationals.
//!
//! A [`StrictSystem`] is a conjunction of strict inequalities
//! `a . x > c` or `a . x < c`. Feasibility is decided exactly by a dense
//! two-phase simplex over `BigRational`: introduce a slack `t`, maximize `t`
//! subject to `a . x - t >= c` (after normalizing every constraint to the
//! `>` form) and the cap `t <= 1`. The system has a strictly feasible point
//! iff the optimum is positive, and the optimal basic solution supplies a
//! witness. Bland's smallest-index rule guarantees termination.

use num::{One, Signed, Zero};

use super::BigRat;

/// Direction of a strict inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    GreaterThan,
    LessThan,
}

/// A single strict inequality `coeffs . x (>|<) constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRat>,
    pub relation: Relation,
    pub constant: BigRat,
}

impl Constraint {
    pub fn greater(coeffs: Vec<BigRat>, constant: BigRat) -> Self {
        Constraint { coeffs, relation: Relation::GreaterThan, constant }
    }

    pub fn less(coeffs: Vec<BigRat>, constant: BigRat) -> Self {
        Constraint { coeffs, relation: Relation::LessThan, constant }
    }

    pub fn greater_i64(coeffs: &[i64], constant: i64) -> Self {
        Self::greater(rat_vec(coeffs), BigRat::from_integer(constant.into()))
    }

    pub fn less_i64(coeffs: &[i64], constant: i64) -> Self {
        Self::less(rat_vec(coeffs), BigRat::from_integer(constant.into()))
    }

    /// Left-hand side value at a point.
    pub fn lhs(&self, point: &[BigRat]) -> BigRat {
        assert_eq!(point.len(), self.coeffs.len(), "dimension mismatch");
        self.coeffs
            .iter()
            .zip(point)
            .fold(BigRat::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn holds_at(&self, point: &[BigRat]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::GreaterThan => lhs > self.constant,
            Relation::LessThan => lhs < self.constant,
        }
    }
}

fn rat_vec(coeffs: &[i64]) -> Vec<BigRat> {
    coeffs.iter().map(|&c| BigRat::from_integer(c.into())).collect()
}

/// Conjunction of strict inequalities in a fixed ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictSystem {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl StrictSystem {
    /// Panics if any constraint's coefficient vector does not have length
    /// `dim`.
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Self {
        for c in &constraints {
            assert_eq!(c.coeffs.len(), dim, "constraint dimension mismatch");
        }
        StrictSystem { dim, constraints }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn holds_at(&self, point: &[BigRat]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(point))
    }

    /// Decides strict feasibility, returning a satisfying point if one
    /// exists.
    pub fn feasible_strict(&self) -> Option<Vec<BigRat>> {
        let witness = solve_max_slack(self)?;
        debug_assert!(self.holds_at(&witness), "simplex witness failed substitution");
        Some(witness)
    }
}

/// Column layout of the simplex tableau. Free variables are split into
/// nonnegative pairs: `x_k = p_k - q_k` and `t = tp - tm`.
struct Layout {
    dim: usize,
    m: usize,
}

impl Layout {
    fn p(&self, k: usize) -> usize {
        k
    }
    fn q(&self, k: usize) -> usize {
        self.dim + k
    }
    fn tp(&self) -> usize {
        2 * self.dim
    }
    fn tm(&self) -> usize {
        2 * self.dim + 1
    }
    fn s(&self, i: usize) -> usize {
        2 * self.dim + 2 + i
    }
    fn u(&self) -> usize {
        2 * self.dim + 2 + self.m
    }
    fn structural(&self) -> usize {
        2 * self.dim + 2 + self.m + 1
    }
}

struct Tableau {
    ncols: usize,
    /// Each row has `ncols + 1` entries; the last is the right-hand side.
    rows: Vec<Vec<BigRat>>,
    basis: Vec<usize>,
    /// Columns at or past this index are phase-1 artificials.
    art_start: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &BigRat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let pivot = self.rows[pr][pc].clone();
        assert!(!pivot.is_zero(), "zero pivot");
        for e in self.rows[pr].iter_mut() {
            *e /= pivot.clone();
        }
        for r in 0..self.rows.len() {
            if r == pr || self.rows[r][pc].is_zero() {
                continue;
            }
            let factor = self.rows[r][pc].clone();
            let pivot_row = self.rows[pr].clone();
            for (e, p) in self.rows[r].iter_mut().zip(pivot_row.iter()) {
                *e -= &factor * p;
            }
        }
        self.basis[pr] = pc;
    }

    /// Maximizes `obj . vars` from the current basic feasible solution using
    /// Bland's rule. `allowed` limits which columns may enter. Returns the
    /// objective value; panics if the objective is unbounded, which the
    /// callers' LPs rule out.
    fn maximize(&mut self, obj: &[BigRat], allowed: &dyn Fn(usize) -> bool) -> BigRat {
        loop {
            let duals: Vec<BigRat> = self.basis.iter().map(|&b| obj[b].clone()).collect();
            let entering = (0..self.ncols).find(|&j| {
                if !allowed(j) || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = obj[j].clone();
                for (r, y) in duals.iter().enumerate() {
                    if !y.is_zero() {
                        reduced -= y * &self.rows[r][j];
                    }
                }
                reduced.is_positive()
            });
            let pc = match entering {
                Some(pc) => pc,
                None => {
                    return self
                        .basis
                        .iter()
                        .enumerate()
                        .fold(BigRat::zero(), |acc, (r, &b)| acc + &obj[b] * self.rhs(r));
                }
            };
            let mut leaving: Option<(usize, BigRat)> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][pc].is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / &self.rows[r][pc];
                let better = match &leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let (pr, _) = leaving.expect("objective unbounded despite cap row");
            self.pivot(pr, pc);
        }
    }

    fn value_of(&self, col: usize) -> BigRat {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(BigRat::zero, |r| self.rhs(r).clone())
    }
}

/// Builds and solves the max-slack LP. Returns a strictly feasible witness
/// or `None`.
fn solve_max_slack(system: &StrictSystem) -> Option<Vec<BigRat>> {
    let layout = Layout { dim: system.dim, m: system.constraints.len() };
    let m = layout.m;

    // Normalized rows: a . x - t - s_i = c, one per constraint, then the cap
    // row t + u = 1. Rows whose right-hand side is negative are negated so
    // every rhs is nonnegative before phase 1.
    let mut rows: Vec<Vec<BigRat>> = Vec::with_capacity(m + 1);
    for (i, c) in system.constraints.iter().enumerate() {
        let flip_relation = c.relation == Relation::LessThan;
        let mut row = vec![BigRat::zero(); layout.structural() + 1];
        for (k, a) in c.coeffs.iter().enumerate() {
            let a = if flip_relation { -a.clone() } else { a.clone() };
            row[layout.p(k)] = a.clone();
            row[layout.q(k)] = -a;
        }
        row[layout.tp()] = -BigRat::one();
        row[layout.tm()] = BigRat::one();
        row[layout.s(i)] = -BigRat::one();
        let constant = if flip_relation { -c.constant.clone() } else { c.constant.clone() };
        row[layout.structural()] = constant;
        if row[layout.structural()].is_negative() {
            for e in row.iter_mut() {
                *e = -e.clone();
            }
        }
        rows.push(row);
    }
    let mut cap = vec![BigRat::zero(); layout.structural() + 1];
    cap[layout.tp()] = BigRat::one();
    cap[layout.tm()] = -BigRat::one();
    cap[layout.u()] = BigRat::one();
    cap[layout.structural()] = BigRat::one();
    rows.push(cap);

    // Initial basis: a row's own slack when it survived normalization with a
    // +1 coefficient, otherwise a fresh artificial column.
    let mut basis = Vec::with_capacity(rows.len());
    let mut artificial_rows = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let own = if r < m { layout.s(r) } else { layout.u() };
        if row[own].is_one() {
            basis.push(own);
        } else {
            artificial_rows.push(r);
            basis.push(usize::MAX); // patched below once columns are appended
        }
    }
    let art_start = layout.structural();
    let ncols = art_start + artificial_rows.len();
    for row in rows.iter_mut() {
        let rhs = row.pop().expect("row has rhs");
        row.extend(std::iter::repeat(BigRat::zero()).take(artificial_rows.len()));
        row.push(rhs);
    }
    for (a, &r) in artificial_rows.iter().enumerate() {
        rows[r][art_start + a] = BigRat::one();
        basis[r] = art_start + a;
    }

    let mut tableau = Tableau { ncols, rows, basis, art_start };

    if !artificial_rows.is_empty() {
        let mut phase1 = vec![BigRat::zero(); ncols];
        for a in 0..artificial_rows.len() {
            phase1[art_start + a] = -BigRat::one();
        }
        let value = tableau.maximize(&phase1, &|_| true);
        if value.is_negative() {
            // The LP itself is infeasible. Unreachable for these systems
            // because t is free, but reported honestly if it occurs.
            return None;
        }
        // Drive any artificial still basic (at value zero) out of the basis.
        for r in 0..tableau.rows.len() {
            if tableau.basis[r] < art_start {
                continue;
            }
            if let Some(pc) = (0..art_start).find(|&j| !tableau.rows[r][j].is_zero()) {
                tableau.pivot(r, pc);
            }
        }
    }

    let mut phase2 = vec![BigRat::zero(); ncols];
    phase2[layout.tp()] = BigRat::one();
    phase2[layout.tm()] = -BigRat::one();
    let art_start = tableau.art_start;
    let slack = tableau.maximize(&phase2, &|j| j < art_start);

    if !slack.is_positive() {
        return None;
    }
    let point: Vec<BigRat> = (0..system.dim)
        .map(|k| tableau.value_of(layout.p(k)) - tableau.value_of(layout.q(k)))
        .collect();
    Some(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    #[test]
    fn open_interval_is_feasible() {
        let sys = StrictSystem::new(
            1,
            vec![Constraint::greater_i64(&[1], 0), Constraint::less_i64(&[1], 1)],
        );
        let w = sys.feasible_strict().expect("0 < x < 1 has points");
        assert!(sys.holds_at(&w));
    }

    #[test]
    fn empty_interval_is_infeasible() {
        let sys = StrictSystem::new(
            1,
            vec![Constraint::greater_i64(&[1], 0), Constraint::less_i64(&[1], 0)],
        );
        assert_eq!(sys.feasible_strict(), None);
    }

    #[test]
    fn weakly_feasible_point_is_not_enough() {
        // x > 1 and x < 1 meet only at the excluded boundary point
        let sys = StrictSystem::new(
            1,
            vec![Constraint::greater_i64(&[1], 1), Constraint::less_i64(&[1], 1)],
        );
        assert_eq!(sys.feasible_strict(), None);
    }

    #[test]
    fn no_constraints_is_feasible() {
        let sys = StrictSystem::new(3, vec![]);
        let w = sys.feasible_strict().unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn zero_dimension_constant_constraints() {
        let feasible = StrictSystem::new(0, vec![Constraint::greater_i64(&[], -1)]);
        assert!(feasible.feasible_strict().is_some()); // 0 > -1
        let boundary = StrictSystem::new(0, vec![Constraint::greater_i64(&[], 0)]);
        assert_eq!(boundary.feasible_strict(), None); // 0 > 0
        let infeasible = StrictSystem::new(0, vec![Constraint::less_i64(&[], -2)]);
        assert_eq!(infeasible.feasible_strict(), None); // 0 < -2
    }

    #[test]
    fn witness_respects_large_bounds() {
        // the internal slack cap must not cap the solution coordinates
        let sys = StrictSystem::new(
            2,
            vec![
                Constraint::greater_i64(&[1, 0], 1_000_000),
                Constraint::less_i64(&[0, 1], -999),
                Constraint::greater_i64(&[1, -1], 1_000_500),
            ],
        );
        let w = sys.feasible_strict().expect("translated orthant is nonempty");
        assert!(sys.holds_at(&w));
    }

    #[test]
    fn squeezed_difference_band() {
        let sys = StrictSystem::new(
            3,
            vec![
                Constraint::greater_i64(&[1, -1, 0], 0),
                Constraint::less_i64(&[1, -1, 0], 1),
                Constraint::greater_i64(&[0, 1, -1], 0),
                Constraint::less_i64(&[0, 1, -1], 1),
                Constraint::greater_i64(&[1, 0, -1], 1),
            ],
        );
        let w = sys.feasible_strict().expect("band intersection is open and nonempty");
        assert!(sys.holds_at(&w));
    }

    #[test]
    fn infeasible_by_summation() {
        // x0 > 0, x1 > 0, x0 + x1 < 0
        let sys = StrictSystem::new(
            2,
            vec![
                Constraint::greater_i64(&[1, 0], 0),
                Constraint::greater_i64(&[0, 1], 0),
                Constraint::less_i64(&[1, 1], 0),
            ],
        );
        assert_eq!(sys.feasible_strict(), None);
    }

    #[test]
    fn rational_constants_are_handled_exactly() {
        // 1/3 < x < 2/3 and x != midpoint band around 1/2 via two strict cuts
        let sys = StrictSystem::new(
            1,
            vec![
                Constraint::greater(vec![rat(1, 1)], rat(1, 3)),
                Constraint::less(vec![rat(1, 1)], rat(2, 3)),
                Constraint::greater(vec![rat(3, 1)], rat(3, 2)),
            ],
        );
        let w = sys.feasible_strict().expect("interval (1/2, 2/3) is nonempty");
        assert!(sys.holds_at(&w));
        assert!(w[0] > rat(1, 2) && w[0] < rat(2, 3));
    }

    /// Oracle for systems whose constraints each touch a single coordinate:
    /// intersect per-coordinate open intervals.
    fn axis_oracle(dim: usize, cons: &[(usize, Relation, i64)]) -> bool {
        let mut lo = vec![i64::MIN / 4; dim];
        let mut hi = vec![i64::MAX / 4; dim];
        for &(k, rel, c) in cons {
            match rel {
                Relation::GreaterThan => lo[k] = lo[k].max(c),
                Relation::LessThan => hi[k] = hi[k].min(c),
            }
        }
        // open interval (lo, hi) over the rationals is nonempty iff lo < hi
        (0..dim).all(|k| lo[k] < hi[k])
    }

    #[test]
    fn matches_interval_oracle_on_axis_aligned_systems() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0005);
        for _ in 0..80 {
            let dim = rng.gen_range(1..4usize);
            let count = rng.gen_range(0..7usize);
            let mut cons = Vec::new();
            let mut constraints = Vec::new();
            for _ in 0..count {
                let k = rng.gen_range(0..dim);
                let c = rng.gen_range(-4..=4i64);
                let mut coeffs = vec![0i64; dim];
                coeffs[k] = 1;
                if rng.gen_bool(0.5) {
                    cons.push((k, Relation::GreaterThan, c));
                    constraints.push(Constraint::greater_i64(&coeffs, c));
                } else {
                    cons.push((k, Relation::LessThan, c));
                    constraints.push(Constraint::less_i64(&coeffs, c));
                }
            }
            let sys = StrictSystem::new(dim, constraints);
            let got = sys.feasible_strict();
            let expected = axis_oracle(dim, &cons);
            assert_eq!(got.is_some(), expected, "cons={cons:?}");
            if let Some(w) = got {
                assert!(sys.holds_at(&w), "cons={cons:?} witness={w:?}");
            }
        }
    }
}
