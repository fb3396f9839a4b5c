//! The family of hyperplane arrangements between Shi and Ish.
//!
//! For `n >= 3` and a subset `X` of `{2, ..., n-1}`, the arrangement consists
//! of `n(n-1)` hyperplanes in `R^n`:
//!
//! * braid hyperplanes `x_i = x_j` for all `1 <= i < j <= n`;
//! * Shi hyperplanes `x_i = x_j + 1` for `i` in `X + {1}` and `i < j <= n`;
//! * Ish hyperplanes `x_1 = x_j + i` for `i` in `{2, ..., n-1} - X` and
//!   `i < j <= n`.
//!
//! `X = {2, ..., n-1}` gives the Shi arrangement, `X = {}` the Ish
//! arrangement. Every hyperplane has a normal `e_a - e_b` and an integer
//! constant, so region membership is a conjunction of strict difference
//! constraints and all geometry here is decided exactly by
//! [`DiffSystem`](crate::exact::DiffSystem).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;

use crate::exact::{BigRat, DiffConstraint, DiffSystem};

/// Which of the three families a hyperplane belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HyperplaneKind {
    /// `x_i = x_j`
    Coxeter,
    /// `x_i = x_j + 1`
    Shi,
    /// `x_1 = x_j + i`
    Ish,
}

/// A hyperplane of the arrangement, stored by its index pair `1 <= i < j <= n`.
///
/// As an affine equation this is `x_a - x_b = c` where `(a, b) = (i, j)` for
/// the Coxeter and Shi kinds, `(a, b) = (1, j)` for the Ish kind, and `c` is
/// [`constant`](Self::constant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub kind: HyperplaneKind,
    pub i: usize,
    pub j: usize,
}

impl Hyperplane {
    /// The coordinates `(a, b)` carrying the normal `e_a - e_b`, 1-based.
    pub fn support(&self) -> (usize, usize) {
        match self.kind {
            HyperplaneKind::Coxeter | HyperplaneKind::Shi => (self.i, self.j),
            HyperplaneKind::Ish => (1, self.j),
        }
    }

    /// Right-hand side of `x_a - x_b = c`.
    pub fn constant(&self) -> i64 {
        match self.kind {
            HyperplaneKind::Coxeter => 0,
            HyperplaneKind::Shi => 1,
            HyperplaneKind::Ish => self.i as i64,
        }
    }

    /// `x_a - x_b - c` at the point.
    pub fn eval(&self, point: &[BigRat]) -> BigRat {
        let (a, b) = self.support();
        &point[a - 1] - &point[b - 1] - BigRat::from_integer(self.constant().into())
    }

    /// Which open half-space contains the point; `None` on the hyperplane.
    pub fn side(&self, point: &[BigRat]) -> Option<Sign> {
        let v = self.eval(point);
        if v.is_zero() {
            None
        } else if v > BigRat::zero() {
            Some(Sign::Pos)
        } else {
            Some(Sign::Neg)
        }
    }

    /// The coordinate of the region label this hyperplane contributes to
    /// when it separates a region from the base region: `i` for Coxeter
    /// hyperplanes, `j` for Shi and Ish hyperplanes. 1-based.
    pub fn label_coordinate(&self) -> usize {
        match self.kind {
            HyperplaneKind::Coxeter => self.i,
            HyperplaneKind::Shi | HyperplaneKind::Ish => self.j,
        }
    }
}

impl std::fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            HyperplaneKind::Coxeter => write!(f, "x{} = x{}", self.i, self.j),
            HyperplaneKind::Shi => write!(f, "x{} = x{} + 1", self.i, self.j),
            HyperplaneKind::Ish => write!(f, "x1 = x{} + {}", self.j, self.i),
        }
    }
}

/// Side of a hyperplane: `Pos` means `x_a - x_b > c`. `Pos` sorts before
/// `Neg`, matching the byte order of the rendered characters `+` and `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// An open region of the arrangement: one sign per hyperplane in canonical
/// order, plus an interior witness point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    signs: Vec<Sign>,
    witness: Vec<BigRat>,
}

impl Region {
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn witness(&self) -> &[BigRat] {
        &self.witness
    }

    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.as_char()).collect()
    }
}

/// A shared wall between two regions: the regions' indices into the region
/// list (with `a < b`) and the index of the separating hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    pub a: usize,
    pub b: usize,
    pub hyperplane: usize,
}

/// An arrangement of the family, determined by `n` and the set `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementSpec {
    n: usize,
    shi: BTreeSet<usize>,
}

/// Enumeration refuses dimensions above this unless the caller opts in via
/// [`ArrangementSpec::regions_with_limit`]; region counts grow as
/// `(n+1)^(n-1)`.
pub const DEFAULT_MAX_ENUMERATION_N: usize = 6;

impl ArrangementSpec {
    /// Arrangement for the given `n >= 3` and `X`. Indices `1` and `n` are
    /// accepted and ignored (row 1 always carries Shi hyperplanes, row `n`
    /// carries none); anything outside `1..=n` panics.
    pub fn new(n: usize, x: impl IntoIterator<Item = usize>) -> Self {
        assert!(n >= 3, "arrangement needs n >= 3, got {n}");
        let mut shi = BTreeSet::new();
        for i in x {
            assert!((1..=n).contains(&i), "index {i} outside 1..={n}");
            if i != 1 && i != n {
                shi.insert(i);
            }
        }
        ArrangementSpec { n, shi }
    }

    /// The Shi arrangement: `X = {2, ..., n-1}`.
    pub fn shi(n: usize) -> Self {
        Self::new(n, 2..n)
    }

    /// The Ish arrangement: `X = {}`.
    pub fn ish(n: usize) -> Self {
        Self::new(n, std::iter::empty())
    }

    /// The interpolation step `X = {k+1, ..., n-1}` for `1 <= k <= n-1`:
    /// rows up to `k` carry Ish hyperplanes, rows above `k` carry Shi
    /// hyperplanes. `k = 1` is Shi, `k = n-1` is Ish.
    pub fn interpolation(n: usize, k: usize) -> Self {
        assert!((1..n).contains(&k), "interpolation index {k} outside 1..={}", n - 1);
        Self::new(n, k + 1..n)
    }

    /// The `n - 1` arrangements of the interpolation subfamily, Shi first.
    pub fn interpolation_family(n: usize) -> Vec<Self> {
        (1..n).map(|k| Self::interpolation(n, k)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The set `X`: rows whose hyperplanes are of Shi type (besides row 1).
    pub fn shi_indices(&self) -> &BTreeSet<usize> {
        &self.shi
    }

    /// Rows carrying Ish hyperplanes: `{2, ..., n-1} - X`.
    pub fn ish_indices(&self) -> BTreeSet<usize> {
        (2..self.n).filter(|i| !self.shi.contains(i)).collect()
    }

    /// All hyperplanes in canonical order: Coxeter, then Shi, then Ish, each
    /// block ordered lexicographically by `(i, j)`.
    pub fn hyperplanes(&self) -> Vec<Hyperplane> {
        let n = self.n;
        let mut planes = Vec::with_capacity(n * (n - 1));
        for i in 1..=n {
            for j in i + 1..=n {
                planes.push(Hyperplane { kind: HyperplaneKind::Coxeter, i, j });
            }
        }
        for i in (1..n).filter(|i| *i == 1 || self.shi.contains(i)) {
            for j in i + 1..=n {
                planes.push(Hyperplane { kind: HyperplaneKind::Shi, i, j });
            }
        }
        for i in self.ish_indices() {
            for j in i + 1..=n {
                planes.push(Hyperplane { kind: HyperplaneKind::Ish, i, j });
            }
        }
        planes
    }

    /// Interior point of the base region: `((n-1)/n, (n-2)/n, ..., 1/n, 0)`.
    pub fn base_witness(&self) -> Vec<BigRat> {
        let n = self.n;
        (0..n)
            .map(|k| BigRat::new(((n - 1 - k) as i64).into(), (n as i64).into()))
            .collect()
    }

    /// The base region: positive on every Coxeter hyperplane, negative on
    /// every Shi and Ish hyperplane.
    pub fn base_region(&self) -> Region {
        let witness = self.base_witness();
        let signs: Vec<Sign> = self
            .hyperplanes()
            .iter()
            .map(|h| h.side(&witness).expect("base witness lies on a hyperplane"))
            .collect();
        Region { signs, witness }
    }

    /// Sign vector of a point, or `None` if it lies on some hyperplane.
    pub fn signs_at(&self, point: &[BigRat]) -> Option<Vec<Sign>> {
        assert_eq!(point.len(), self.n, "point dimension mismatch");
        self.hyperplanes().iter().map(|h| h.side(point)).collect()
    }

    /// The region carved out by a full sign vector, witnessed by a feasible
    /// point, or `None` when the signs are contradictory.
    pub(crate) fn region_from_signs(&self, signs: &[Sign]) -> Option<Region> {
        let planes = self.hyperplanes();
        assert_eq!(signs.len(), planes.len(), "sign vector length mismatch");
        let witness = region_system(self.n, &planes, signs).feasible()?;
        Some(Region { signs: signs.to_vec(), witness })
    }

    /// All regions, sorted by sign vector (`+` before `-`). Panics for
    /// `n > 6` to avoid accidental huge enumerations.
    pub fn regions(&self) -> Vec<Region> {
        self.regions_with_limit(DEFAULT_MAX_ENUMERATION_N)
    }

    /// All regions, with an explicit opt-in bound on `n`.
    pub fn regions_with_limit(&self, max_n: usize) -> Vec<Region> {
        assert!(
            self.n <= max_n,
            "refusing to enumerate regions for n = {} (limit {max_n})",
            self.n
        );
        let planes = self.hyperplanes();
        // Incremental insertion: a region of the first k hyperplanes either
        // keeps its witness on one side of hyperplane k, or splits when the
        // opposite side is also feasible.
        let mut regions: Vec<(Vec<Sign>, Vec<BigRat>)> =
            vec![(Vec::new(), vec![BigRat::zero(); self.n])];
        for (k, plane) in planes.iter().enumerate() {
            let mut next = Vec::with_capacity(regions.len() * 2);
            for (signs, witness) in regions {
                let witness_side = plane.side(&witness);
                let candidate_sides: &[Sign] = match witness_side {
                    Some(Sign::Pos) => &[Sign::Pos, Sign::Neg],
                    Some(Sign::Neg) => &[Sign::Neg, Sign::Pos],
                    None => &[Sign::Pos, Sign::Neg],
                };
                let mut first = true;
                for &side in candidate_sides {
                    let mut extended = signs.clone();
                    extended.push(side);
                    if first && witness_side == Some(side) {
                        next.push((extended, witness.clone()));
                    } else {
                        let system = region_system(self.n, &planes[..=k], &extended);
                        if let Some(point) = system.feasible() {
                            next.push((extended, point));
                        }
                    }
                    first = false;
                }
            }
            regions = next;
        }
        regions.sort_by(|a, b| a.0.cmp(&b.0));
        regions.into_iter().map(|(signs, witness)| Region { signs, witness }).collect()
    }

    /// The label of a region: coordinate `m` counts the hyperplanes with
    /// label coordinate `m` separating the region from the base region.
    /// Separation means carrying the opposite sign. Coordinates are
    /// returned 0-indexed: entry `m-1` of the result belongs to `m`.
    pub fn region_label(&self, region: &Region) -> Vec<usize> {
        let planes = self.hyperplanes();
        assert_eq!(region.signs.len(), planes.len(), "region is not of this arrangement");
        let base = self.base_region();
        let mut label = vec![0usize; self.n];
        for ((plane, &sign), &base_sign) in
            planes.iter().zip(&region.signs).zip(&base.signs)
        {
            if sign != base_sign {
                label[plane.label_coordinate() - 1] += 1;
            }
        }
        label
    }

    /// Multiset of labels over all regions.
    pub fn label_census(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut census = BTreeMap::new();
        for region in self.regions() {
            *census.entry(self.region_label(&region)).or_insert(0) += 1;
        }
        census
    }

    /// True when distinct labels are as numerous as regions, i.e. the
    /// labeling map is injective (hence bijective onto its image).
    pub fn labels_injective(&self) -> bool {
        self.label_census().values().all(|&count| count == 1)
    }

    /// All walls between adjacent regions. Regions are adjacent exactly when
    /// their sign vectors differ in a single hyperplane and the common face
    /// on that hyperplane has full dimension in it.
    pub fn adjacency(&self, regions: &[Region]) -> Vec<Wall> {
        let planes = self.hyperplanes();
        let index: HashMap<&[Sign], usize> =
            regions.iter().enumerate().map(|(r, reg)| (reg.signs.as_slice(), r)).collect();
        let mut walls = Vec::new();
        for (a, region) in regions.iter().enumerate() {
            let mut flipped = region.signs.clone();
            for h in 0..planes.len() {
                flipped[h] = flipped[h].flip();
                if let Some(&b) = index.get(flipped.as_slice()) {
                    if a < b && wall_system(self.n, &planes, &region.signs, h).feasible().is_some()
                    {
                        walls.push(Wall { a, b, hyperplane: h });
                    }
                }
                flipped[h] = flipped[h].flip();
            }
        }
        walls.sort();
        walls
    }

    /// True when the region is bounded transverse to the line spanned by
    /// `(1, ..., 1)`: every hyperplane normal kills that line, so no region
    /// is bounded outright, and the meaningful notion is boundedness of all
    /// coordinate differences.
    pub fn is_relatively_bounded(&self, region: &Region) -> bool {
        let planes = self.hyperplanes();
        assert_eq!(region.signs.len(), planes.len(), "region is not of this arrangement");
        region_system(self.n, &planes, &region.signs).differences_bounded()
    }
}

/// Difference system of the strict inequalities carving out a sign vector
/// over the given hyperplanes. Variables are the coordinates, 0-based.
fn region_system(n: usize, planes: &[Hyperplane], signs: &[Sign]) -> DiffSystem {
    let mut system = DiffSystem::new(n);
    for (plane, &sign) in planes.iter().zip(signs) {
        system.push(plane_constraint(plane, sign));
    }
    system
}

/// The half-space `x_a - x_b > c` or `< c` as a difference constraint.
fn plane_constraint(plane: &Hyperplane, sign: Sign) -> DiffConstraint {
    let (a, b) = plane.support();
    let c = plane.constant();
    match sign {
        // x_a - x_b > c  <=>  x_b - x_a < -c
        Sign::Pos => DiffConstraint::new(b - 1, a - 1, -c),
        Sign::Neg => DiffConstraint::new(a - 1, b - 1, c),
    }
}

/// Difference system for the relative interior of a candidate wall: the
/// equality on hyperplane `wall` is eliminated by substituting
/// `x_u = x_v + c` into every other constraint of the sign vector. A
/// substituted constraint may degenerate to a constant comparison; those are
/// kept as self-loop constraints, which the solver handles.
fn wall_system(n: usize, planes: &[Hyperplane], signs: &[Sign], wall: usize) -> DiffSystem {
    let (wa, wb) = planes[wall].support();
    let (u, v) = (wa - 1, wb - 1);
    let wc = planes[wall].constant();
    let mut system = DiffSystem::new(n);
    for (h, (plane, &sign)) in planes.iter().zip(signs).enumerate() {
        if h == wall {
            continue;
        }
        let mut c = plane_constraint(plane, sign);
        if c.u == u {
            c.u = v;
            c.bound -= wc;
        }
        if c.v == u {
            c.v = v;
            c.bound += wc;
        }
        system.push(c);
    }
    system
}
