//! Poset ideals of the generator box, the product generators they index,
//! and the step-by-step linear-quotients verification.
//!
//! A poset ideal is a downward-closed subset of `D = [d_1]×⋯×[d_n]` under
//! the componentwise order. Each point `a` indexes the degree-n product
//! `f_a = f_{1a_1}⋯f_{na_n}` of chosen basis forms; the colon of each
//! generator against its predecessors in any order refining `≤` is spanned
//! by the linear forms of a prefix space, and the verifier checks exactly
//! that.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{prefix_vectors, Arrangement, GenericBases, Point};
use crate::combi::{binom, box_points};
use crate::error::{Error, Result};
use crate::linalg::{span_dim, EchelonBasis, QMatrix};
use crate::poly::{poly_mul, LinearForm, MonomialBasis, SparsePoly};
use crate::polymatroid::{LatticePointSet, PointSetKind};

/// A downward-closed subset of the box `D`, stored as an explicit sorted
/// point set with the maximal antichain cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetIdeal {
    dims: Vec<usize>,
    members: Vec<Point>,
    maximal: Vec<Point>,
}

fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl PosetIdeal {
    /// Downward closure of the given points inside the box.
    pub fn new(dims: &[usize], generators: &[Point]) -> Result<Self> {
        for g in generators {
            if g.len() != dims.len() {
                return Err(Error::input(format!(
                    "point {g:?} has wrong length for box {dims:?}"
                )));
            }
            if g.iter().zip(dims).any(|(&x, &d)| x < 1 || x > d) {
                return Err(Error::input(format!(
                    "point {g:?} lies outside the box {dims:?}"
                )));
            }
        }
        let mut members: Vec<Point> = Vec::new();
        for g in generators {
            members.extend(box_points(1, g));
        }
        members.sort();
        members.dedup();
        Ok(Self::from_sorted_members(dims.to_vec(), members))
    }

    /// Wrap an already downward-closed sorted point set (the generator box
    /// is one by construction).
    pub fn from_lattice_points(dims: &[usize], pts: &LatticePointSet) -> Self {
        assert_eq!(pts.kind(), PointSetKind::GeneratorBox);
        Self::from_sorted_members(dims.to_vec(), pts.points().to_vec())
    }

    fn from_sorted_members(dims: Vec<usize>, members: Vec<Point>) -> Self {
        let maximal: Vec<Point> = members
            .iter()
            .filter(|a| {
                !members
                    .iter()
                    .any(|b| b.as_slice() != a.as_slice() && leq(a, b))
            })
            .cloned()
            .collect();
        PosetIdeal {
            dims,
            members,
            maximal,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn members(&self) -> &[Point] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.members
            .binary_search_by(|q| q.as_slice().cmp(p))
            .is_ok()
    }

    pub fn maximal_elements(&self) -> &[Point] {
        &self.maximal
    }

    pub fn is_subset_of(&self, other: &PosetIdeal) -> bool {
        self.members.iter().all(|p| other.contains(p))
    }
}

/// Intersection and union of two poset ideals over the same box; both are
/// again downward closed.
pub fn meet_join(a: &PosetIdeal, b: &PosetIdeal) -> Result<(PosetIdeal, PosetIdeal)> {
    if a.dims != b.dims {
        return Err(Error::input("poset ideals over different boxes"));
    }
    let meet: Vec<Point> = a
        .members
        .iter()
        .filter(|p| b.contains(p))
        .cloned()
        .collect();
    let mut join = a.members.clone();
    join.extend(b.members.iter().cloned());
    join.sort();
    join.dedup();
    Ok((
        PosetIdeal::from_sorted_members(a.dims.clone(), meet),
        PosetIdeal::from_sorted_members(a.dims.clone(), join),
    ))
}

/// Restrict a poset ideal to the generator box. The generated ideal is
/// unchanged by this: the discarded generators are redundant.
pub fn reduce_to_generator_box(p: &PosetIdeal, dv: &LatticePointSet) -> PosetIdeal {
    assert_eq!(dv.kind(), PointSetKind::GeneratorBox);
    let members: Vec<Point> = p
        .members
        .iter()
        .filter(|q| dv.contains(q))
        .cloned()
        .collect();
    PosetIdeal::from_sorted_members(p.dims.clone(), members)
}

/// The product generators `f_a` for every member of a poset ideal.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    nvars: usize,
    entries: Vec<(Point, SparsePoly)>,
}

impl GeneratorFamily {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[(Point, SparsePoly)] {
        &self.entries
    }

    pub fn polys(&self) -> Vec<SparsePoly> {
        self.entries.iter().map(|(_, p)| p.clone()).collect()
    }
}

/// The exact product `f_a = ∏_i f_{i a_i}` as a polynomial in the ambient
/// variables. Coordinates of `a` are 1-based box coordinates.
pub fn product_generator(f: &GenericBases, a: &[usize]) -> Result<SparsePoly> {
    let dims = f.dims();
    if a.len() != dims.len() || a.iter().zip(&dims).any(|(&x, &d)| x < 1 || x > d) {
        return Err(Error::input(format!(
            "point {a:?} outside the box of {dims:?}"
        )));
    }
    let d = f.form(0, 0).len();
    let mut p = SparsePoly::constant(d, crate::linalg::rat_int(1));
    for (i, &ai) in a.iter().enumerate() {
        let form = LinearForm::new(f.form(i, ai - 1).to_vec()).to_poly();
        p = poly_mul(&p, &form)?;
    }
    Ok(p)
}

pub fn generator_family(p: &PosetIdeal, f: &GenericBases) -> Result<GeneratorFamily> {
    if !f.is_certified() {
        return Err(Error::input(
            "generator family requires certified bases",
        ));
    }
    let d = f.form(0, 0).len();
    let entries = p
        .members
        .iter()
        .map(|a| Ok((a.clone(), product_generator(f, a)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorFamily { nvars: d, entries })
}

/// Betti numbers of the ideal a poset ideal inside the generator box
/// generates: `β_i = Σ_{a∈P} C(|a|−n, i)`.
pub fn poset_betti(p: &PosetIdeal, dv: &LatticePointSet) -> Result<Vec<u64>> {
    assert_eq!(dv.kind(), PointSetKind::GeneratorBox);
    if let Some(outside) = p.members.iter().find(|a| !dv.contains(a)) {
        return Err(Error::input(format!(
            "point {outside:?} lies outside the generator box; reduce first"
        )));
    }
    let n = p.n();
    let max_shift = p
        .members
        .iter()
        .map(|a| a.iter().sum::<usize>() - n)
        .max();
    let Some(max_shift) = max_shift else {
        return Ok(Vec::new());
    };
    let mut betti = vec![0u64; max_shift + 1];
    for a in &p.members {
        let shift = (a.iter().sum::<usize>() - n) as i64;
        for (i, b) in betti.iter_mut().enumerate() {
            *b += binom(shift, i as i64);
        }
    }
    Ok(betti)
}

/// The default linear extension: graded lexicographic on the points.
pub fn grlex_extension(p: &PosetIdeal) -> Vec<Point> {
    let mut order = p.members.to_vec();
    order.sort_by_key(|a| (a.iter().sum::<usize>(), a.clone()));
    order
}

/// A seeded random linear extension: repeatedly pick uniformly among the
/// currently minimal unchosen points.
pub fn random_extension(p: &PosetIdeal, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining: Vec<Point> = p.members.to_vec();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let minimal: Vec<usize> = (0..remaining.len())
            .filter(|&i| {
                !remaining
                    .iter()
                    .enumerate()
                    .any(|(j, q)| j != i && leq(q, &remaining[i]) && q != &remaining[i])
            })
            .collect();
        let pick = minimal[rng.random_range(0..minimal.len())];
        order.push(remaining.remove(pick));
    }
    order
}

pub fn is_linear_extension(p: &PosetIdeal, order: &[Point]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != p.members {
        return false;
    }
    for (i, a) in order.iter().enumerate() {
        for b in &order[i + 1..] {
            if leq(b, a) && a != b {
                return false;
            }
        }
    }
    true
}

/// One verified step of the linear-quotients check.
#[derive(Clone, Debug)]
pub struct QuotientStep {
    pub point: Point,
    pub colon_dim: usize,
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub order: Vec<Point>,
    pub steps: Vec<QuotientStep>,
}

/// Walk the generators of `J_P` in the given order and certify, for each
/// `a` with predecessor set `Q`:
///
/// * `f_a` does not lie in the span of the predecessors in degree `n`
///   (minimal generation), and
/// * the degree-1 colon space `{ ℓ ∈ S_1 : ℓ·f_a ∈ (J_Q)_{n+1} }` equals
///   the span of the prefix space at `a − (1,…,1)`.
///
/// Both are exact statements about finite-dimensional graded pieces; any
/// failure is a `TheoremViolation` carrying the witness.
pub fn verify_linear_quotients(
    arr: &Arrangement,
    f: &GenericBases,
    p: &PosetIdeal,
    order: &[Point],
) -> Result<QuotientReport> {
    if !f.is_certified() {
        return Err(Error::input("linear-quotients check requires certified bases"));
    }
    if !is_linear_extension(p, order) {
        return Err(Error::input(
            "order is not a linear extension of the poset ideal",
        ));
    }
    let rk = crate::arrangement::compute_rank_function(arr);
    let star = crate::polymatroid::enumerate_points(&rk, true);
    let dv = crate::polymatroid::generator_box(&arr.dims(), &star);
    if let Some(outside) = p.members().iter().find(|a| !dv.contains(a)) {
        return Err(Error::input(format!(
            "point {outside:?} lies outside the generator box; reduce first"
        )));
    }

    let n = arr.n();
    let d = arr.ambient_dim();
    let basis_n = MonomialBasis::get(d, n as u32);
    let basis_n1 = MonomialBasis::get(d, n as u32 + 1);
    let mut span_n = EchelonBasis::new(basis_n.len());
    let mut span_n1 = EchelonBasis::new(basis_n1.len());
    let mut steps = Vec::with_capacity(order.len());

    for (idx, a) in order.iter().enumerate() {
        let fa = product_generator(f, a)?;
        let va = fa.coeff_vector(&basis_n)?;
        if span_n.contains(&va) {
            return Err(Error::violation(
                "linear_quotients",
                format!(
                    "generator at {a:?} lies in the degree-{n} span of its {idx} predecessors"
                ),
            ));
        }

        let mut residues = Vec::with_capacity(d);
        let mut shifted = Vec::with_capacity(d);
        for j in 0..d {
            let xj_fa = poly_mul(&SparsePoly::variable(d, j), &fa)?;
            let w = xj_fa.coeff_vector(&basis_n1)?;
            residues.push(span_n1.reduce(&w));
            shifted.push(w);
        }
        // colon coefficients: left combinations of the residues that vanish
        let colon_basis = QMatrix::from_rows(residues)?.transpose().kernel_basis();

        let b: Point = a.iter().map(|&x| x - 1).collect();
        let expected = prefix_vectors(f, &b)?;
        let expected_dim = span_dim(&expected)?;
        let mut combined = expected.clone();
        combined.extend(colon_basis.iter().cloned());
        let equal = colon_basis.len() == expected_dim && span_dim(&combined)? == expected_dim;
        if !equal {
            let fmt = |vs: &[Vec<crate::linalg::Rat>]| -> String {
                let rows: Vec<String> = vs
                    .iter()
                    .map(|v| {
                        let es: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        format!("({})", es.join(", "))
                    })
                    .collect();
                format!("[{}]", rows.join(", "))
            };
            return Err(Error::violation(
                "linear_quotients",
                format!(
                    "colon space at {a:?} after {idx} predecessors (dim {}, basis {}) \
                     differs from the prefix span at {b:?} (dim {expected_dim}, \
                     vectors {}, join dim {})",
                    colon_basis.len(),
                    fmt(&colon_basis),
                    fmt(&expected),
                    span_dim(&combined)?,
                ),
            ));
        }

        steps.push(QuotientStep {
            point: a.clone(),
            colon_dim: colon_basis.len(),
        });
        span_n.insert(&va);
        for w in &shifted {
            span_n1.insert(w);
        }
    }

    Ok(QuotientReport {
        order: order.to_vec(),
        steps,
    })
}
