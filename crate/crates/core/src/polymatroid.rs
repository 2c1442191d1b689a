//! The combinatorial layer: Dilworth truncation of a rank function,
//! lattice points of the associated polymatroids, and rank functions of
//! repeated arrangements.
//!
//! The truncation `rk*(A) = min { Σ_c rk(A_c) − p }` over partitions
//! `A_1,…,A_p` of `A` is computed by a subset DP that splits off the block
//! containing the minimum of `A`; a naive walk over all partitions is kept
//! as an independent oracle.

use crate::arrangement::{Point, RankFunction};
use crate::combi::{for_each_partition, members, subset_string, Subset};
use crate::error::{Error, Result};

/// The Dilworth-truncated rank function, with one minimizing partition
/// recorded per subset.
#[derive(Clone, Debug)]
pub struct TruncatedRank {
    n: usize,
    values: Vec<usize>,
    witnesses: Vec<Vec<Subset>>,
}

impl TruncatedRank {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: Subset) -> usize {
        self.values[s as usize]
    }

    /// A partition of `s` attaining the minimum.
    pub fn witness_partition(&self, s: Subset) -> &[Subset] {
        &self.witnesses[s as usize]
    }

    pub fn full_set(&self) -> Subset {
        ((1u64 << self.n) - 1) as Subset
    }

    /// View as a plain rank function (the truncation is again one).
    pub fn as_rank_function(&self) -> RankFunction {
        RankFunction::new_unchecked(self.n, self.values.clone())
    }
}

/// Exact minimum over all set partitions, by dynamic programming over
/// subsets: every partition of `A` splits as the block containing
/// `min(A)` plus a partition of the rest, so
/// `rk*(A) = min_{B ∋ min(A)} (rk(B) − 1 + rk*(A∖B))` with `rk*(∅) = 0`.
pub fn dilworth_truncation(rk: &RankFunction) -> TruncatedRank {
    let n = rk.n();
    assert!(
        (0..n).all(|i| rk.rank(1 << i) >= 1),
        "truncation needs positive singleton ranks (nonzero subspaces)"
    );
    let size = 1usize << n;
    let mut values = vec![0usize; size];
    let mut first_block: Vec<Subset> = vec![0; size];
    for a in 1..size as u32 {
        let low = a & a.wrapping_neg(); // bit of min(A)
        let rest = a & !low;
        let mut best = usize::MAX;
        let mut best_block = a;
        // blocks B = low ∪ (submask of rest)
        let mut sub = rest;
        loop {
            let block = low | sub;
            let candidate = rk.rank(block) - 1 + values[(a & !block) as usize];
            if candidate < best {
                best = candidate;
                best_block = block;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        values[a as usize] = best;
        first_block[a as usize] = best_block;
    }
    let mut witnesses: Vec<Vec<Subset>> = vec![Vec::new(); size];
    for a in 1..size as u32 {
        let mut blocks = Vec::new();
        let mut rest = a;
        while rest != 0 {
            let b = first_block[rest as usize];
            blocks.push(b);
            rest &= !b;
        }
        witnesses[a as usize] = blocks;
    }
    TruncatedRank {
        n,
        values,
        witnesses,
    }
}

/// Independent oracle: walk every set partition of `A` and take the
/// minimum directly. Guarded by a Bell-number bound; exists only to
/// cross-check the DP.
pub fn brute_force_truncation_oracle(rk: &RankFunction, a: Subset) -> Result<usize> {
    let elements = members(a);
    if elements.len() > 10 {
        return Err(Error::OracleScope(format!(
            "subset {} has {} elements; the all-partitions oracle is limited to 10",
            subset_string(a),
            elements.len()
        )));
    }
    if elements.is_empty() {
        return Ok(0);
    }
    let mut best = usize::MAX;
    for_each_partition(&elements, |blocks| {
        let total: usize = blocks
            .iter()
            .map(|block| {
                let mask: Subset = block.iter().map(|&i| 1u32 << i).fold(0, |m, b| m | b);
                rk.rank(mask) - 1
            })
            .sum();
        best = best.min(total);
    });
    Ok(best)
}

/// Which polymatroid a point set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSetKind {
    /// `Σ_{i∈A} x_i ≤ rk(A)` for all `A`.
    Polymatroid,
    /// `Σ_{i∈A} x_i ≤ rk(A) − 1` for all nonempty `A`.
    Strict,
    /// The all-ones shift of the strict set inside the generator box.
    GeneratorBox,
}

/// A finite set of lattice points of ℕⁿ, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    n: usize,
    kind: PointSetKind,
    points: Vec<Point>,
}

impl LatticePointSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PointSetKind {
        self.kind
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }
}

/// All `x ∈ ℕⁿ` with `Σ_{i∈A} x_i ≤ rk(A) − (strict ? 1 : 0)` for every
/// nonempty `A`. Depth-first over coordinates; each new coordinate is
/// checked against every constraint supported on the assigned prefix.
pub fn enumerate_points(rk: &RankFunction, strict: bool) -> LatticePointSet {
    let n = rk.n();
    let slack = usize::from(strict);
    let mut points = Vec::new();
    let mut x: Point = vec![0; n];

    fn admissible(rk: &RankFunction, slack: usize, x: &[usize], k: usize) -> bool {
        // constraints on subsets of {0..=k} containing k
        let prev = 1u32 << k;
        let below = prev - 1;
        let mut sub = below;
        loop {
            let mask = prev | sub;
            let sum: usize = members(mask).iter().map(|&i| x[i]).sum();
            if rk.rank(mask) < slack || sum > rk.rank(mask) - slack {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & below;
        }
    }

    fn dfs(
        rk: &RankFunction,
        slack: usize,
        k: usize,
        x: &mut Point,
        points: &mut Vec<Point>,
    ) {
        if k == rk.n() {
            points.push(x.clone());
            return;
        }
        let single = rk.rank(1 << k);
        let bound = if single < slack { return } else { single - slack };
        for v in 0..=bound {
            x[k] = v;
            if admissible(rk, slack, x, k) {
                dfs(rk, slack, k + 1, x, points);
            }
        }
        x[k] = 0;
    }

    dfs(rk, slack, 0, &mut x, &mut points);
    points.sort();
    LatticePointSet {
        n,
        kind: if strict {
            PointSetKind::Strict
        } else {
            PointSetKind::Polymatroid
        },
        points,
    }
}

/// Counts of strict points by total degree: entry `i` is the number of
/// points with `|x| = i`.
pub fn gamma_vector(pts: &LatticePointSet) -> Vec<usize> {
    assert_eq!(
        pts.kind(),
        PointSetKind::Strict,
        "gamma vector is defined on the strict point set"
    );
    let max: usize = pts
        .points()
        .iter()
        .map(|p| p.iter().sum())
        .max()
        .unwrap_or(0);
    let mut gamma = vec![0usize; if pts.is_empty() { 0 } else { max + 1 }];
    for p in pts.points() {
        gamma[p.iter().sum::<usize>()] += 1;
    }
    gamma
}

/// The generator box: the all-ones shift of the strict points, clipped to
/// the box `[d_1]×⋯×[d_n]`. (The singleton constraints make the clip a
/// no-op, but it is kept as a guard.)
pub fn generator_box(dims: &[usize], star: &LatticePointSet) -> LatticePointSet {
    assert_eq!(
        star.kind(),
        PointSetKind::Strict,
        "the generator box shifts the strict point set"
    );
    let mut points: Vec<Point> = star
        .points()
        .iter()
        .map(|p| p.iter().map(|&v| v + 1).collect::<Point>())
        .filter(|p: &Point| p.iter().zip(dims).all(|(&v, &d)| v <= d))
        .collect();
    points.sort();
    LatticePointSet {
        n: star.n(),
        kind: PointSetKind::GeneratorBox,
        points,
    }
}

/// Rank function of the repeated arrangement in which subspace `i` occurs
/// `mult[i]` times: the rank of a subset is the rank of its projection to
/// the original ground set.
pub fn repeated_rank(rk: &RankFunction, mult: &[usize]) -> Result<RankFunction> {
    if mult.len() != rk.n() {
        return Err(Error::input("multiplicity vector length != ground set size"));
    }
    if mult.contains(&0) {
        return Err(Error::input("multiplicities must be positive"));
    }
    let m: usize = mult.iter().sum();
    if m > 16 {
        return Err(Error::input(format!(
            "repeated ground set has {m} elements; limited to 16"
        )));
    }
    // position -> original index
    let mut proj = Vec::with_capacity(m);
    for (i, &u) in mult.iter().enumerate() {
        proj.extend(std::iter::repeat_n(i, u));
    }
    let values: Vec<usize> = (0..1u32 << m)
        .map(|mask| {
            let image: Subset = members(mask).iter().map(|&p| 1u32 << proj[p]).fold(0, |a, b| a | b);
            rk.rank(image)
        })
        .collect();
    Ok(RankFunction::new_unchecked(m, values))
}
