//! Systems of strict difference constraints `x_u - x_v < c` with integer
//! bounds, decided exactly by Bellman-Ford on a scaled integer graph.
//!
//! Summing strict constraints around a cycle shows the system is infeasible
//! exactly when some cycle of constraints has total bound <= 0. With integer
//! bounds, every feasible simple cycle has total bound >= 1, so scaling all
//! quantities by `N = nvars + 1` and giving the edge for `x_u - x_v < c` the
//! weight `c * N - 1` turns strict feasibility into the absence of a negative
//! cycle: a simple cycle of length `k <= nvars` with bound sum `s >= 1` gets
//! scaled weight `s*N - k >= N - nvars = 1 > 0`, while `s <= 0` gives weight
//! `<= -k < 0`. Shortest-path distances divided by `N` then satisfy every
//! constraint with slack `1/N`.

use super::BigRat;

/// The strict constraint `x_u - x_v < bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffConstraint {
    pub u: usize,
    pub v: usize,
    pub bound: i64,
}

impl DiffConstraint {
    /// `x_u - x_v < bound`.
    pub fn new(u: usize, v: usize, bound: i64) -> Self {
        DiffConstraint { u, v, bound }
    }
}

/// A conjunction of strict difference constraints on `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSystem {
    nvars: usize,
    constraints: Vec<DiffConstraint>,
}

impl DiffSystem {
    pub fn new(nvars: usize) -> Self {
        DiffSystem { nvars, constraints: Vec::new() }
    }

    pub fn with_constraints(nvars: usize, constraints: Vec<DiffConstraint>) -> Self {
        let mut sys = DiffSystem::new(nvars);
        for c in constraints {
            sys.push(c);
        }
        sys
    }

    pub fn push(&mut self, c: DiffConstraint) {
        assert!(c.u < self.nvars && c.v < self.nvars, "variable index out of range");
        self.constraints.push(c);
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constraints(&self) -> &[DiffConstraint] {
        &self.constraints
    }

    pub fn holds_at(&self, point: &[BigRat]) -> bool {
        assert_eq!(point.len(), self.nvars, "dimension mismatch");
        self.constraints
            .iter()
            .all(|c| &point[c.u] - &point[c.v] < BigRat::from_integer(c.bound.into()))
    }

    /// Decides feasibility; on success returns a satisfying point whose
    /// coordinates all have denominator `nvars + 1`.
    pub fn feasible(&self) -> Option<Vec<BigRat>> {
        let n = self.nvars;
        let scale = n as i64 + 1;
        // dist starts at 0 everywhere, emulating a virtual source with a
        // zero-weight edge to every variable.
        let mut dist = vec![0i64; n];
        for round in 0..=n {
            let mut changed = false;
            for c in &self.constraints {
                let weight = c.bound * scale - 1;
                let candidate = dist[c.v].saturating_add(weight);
                if candidate < dist[c.u] {
                    if round == n {
                        return None; // still relaxing after n rounds: negative cycle
                    }
                    dist[c.u] = candidate;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let point: Vec<BigRat> =
            dist.iter().map(|&d| BigRat::new(d.into(), scale.into())).collect();
        debug_assert!(self.holds_at(&point), "Bellman-Ford witness failed substitution");
        Some(point)
    }

    /// True when, assuming feasibility, every difference `x_a - x_b` is
    /// bounded over the solution set: equivalently, the digraph with an edge
    /// `v -> u` per constraint `x_u - x_v < c` is strongly connected.
    ///
    /// A path `b -> a` yields an upper bound on `x_a - x_b` by telescoping;
    /// without one, translating the variables unreachable from `b` upward by
    /// a large margin keeps every constraint satisfied, so no bound exists.
    pub fn differences_bounded(&self) -> bool {
        if self.nvars <= 1 {
            return true;
        }
        let mut forward = vec![Vec::new(); self.nvars];
        let mut backward = vec![Vec::new(); self.nvars];
        for c in &self.constraints {
            forward[c.v].push(c.u);
            backward[c.u].push(c.v);
        }
        reaches_all(&forward, self.nvars) && reaches_all(&backward, self.nvars)
    }
}

fn reaches_all(adj: &[Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Constraint, StrictSystem};
    use rand::{Rng, SeedableRng};

    #[test]
    fn chain_is_feasible_with_valid_witness() {
        let sys = DiffSystem::with_constraints(
            3,
            vec![DiffConstraint::new(0, 1, 0), DiffConstraint::new(1, 2, 0)],
        );
        let w = sys.feasible().expect("x0 < x1 < x2 is satisfiable");
        assert!(sys.holds_at(&w));
        assert!(w[0] < w[1] && w[1] < w[2]);
    }

    #[test]
    fn zero_sum_cycle_is_infeasible() {
        let sys = DiffSystem::with_constraints(
            2,
            vec![DiffConstraint::new(0, 1, 0), DiffConstraint::new(1, 0, 0)],
        );
        assert_eq!(sys.feasible(), None);
    }

    #[test]
    fn positive_sum_cycle_is_feasible() {
        let sys = DiffSystem::with_constraints(
            2,
            vec![DiffConstraint::new(0, 1, 1), DiffConstraint::new(1, 0, 0)],
        );
        let w = sys.feasible().expect("x1 < x0 < x1 + 1 is satisfiable");
        assert!(sys.holds_at(&w));
    }

    #[test]
    fn self_loop_encodes_constant_constraint() {
        // x0 - x0 < 0 is plainly false
        let sys = DiffSystem::with_constraints(1, vec![DiffConstraint::new(0, 0, 0)]);
        assert_eq!(sys.feasible(), None);
        let ok = DiffSystem::with_constraints(1, vec![DiffConstraint::new(0, 0, 1)]);
        assert!(ok.feasible().is_some());
    }

    #[test]
    fn long_negative_cycle_is_detected() {
        // x0 < x1 < x2 < x3 < x0 telescopes to x0 < x0
        let cons = (0..4).map(|i| DiffConstraint::new(i, (i + 1) % 4, 0)).collect();
        assert_eq!(DiffSystem::with_constraints(4, cons).feasible(), None);
    }

    #[test]
    fn matches_simplex_on_random_systems() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0006);
        for _ in 0..120 {
            let nvars = rng.gen_range(1..5usize);
            let count = rng.gen_range(0..9usize);
            let mut cons = Vec::new();
            for _ in 0..count {
                cons.push(DiffConstraint::new(
                    rng.gen_range(0..nvars),
                    rng.gen_range(0..nvars),
                    rng.gen_range(-3..=3),
                ));
            }
            let diff = DiffSystem::with_constraints(nvars, cons.clone());
            let lp_constraints = cons
                .iter()
                .map(|c| {
                    let mut coeffs = vec![0i64; nvars];
                    coeffs[c.u] += 1;
                    coeffs[c.v] -= 1;
                    Constraint::less_i64(&coeffs, c.bound)
                })
                .collect();
            let lp = StrictSystem::new(nvars, lp_constraints);
            let got = diff.feasible();
            assert_eq!(got.is_some(), lp.feasible_strict().is_some(), "cons={cons:?}");
            if let Some(w) = got {
                assert!(diff.holds_at(&w), "cons={cons:?}");
            }
        }
    }

    #[test]
    fn boundedness_tracks_strong_connectivity() {
        // a 3-cycle bounds every difference
        let cycle = DiffSystem::with_constraints(
            3,
            vec![
                DiffConstraint::new(0, 1, 1),
                DiffConstraint::new(1, 2, 1),
                DiffConstraint::new(2, 0, 1),
            ],
        );
        assert!(cycle.differences_bounded());
        // a chain leaves x2 - x0 unbounded below as x0 grows
        let chain = DiffSystem::with_constraints(
            3,
            vec![DiffConstraint::new(0, 1, 1), DiffConstraint::new(1, 2, 1)],
        );
        assert!(!chain.differences_bounded());
    }
}
