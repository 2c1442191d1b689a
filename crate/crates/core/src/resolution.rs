//! The explicit minimal free resolution: a subcomplex of a tensor product
//! of truncated Koszul complexes, first over the generic polynomial ring
//! with one variable per chosen basis form, then specialized by sending
//! each variable to its form.
//!
//! Exactness is certified degree by degree: each graded strand is a
//! finite-dimensional complex of ℚ-vector spaces whose exactness is a
//! statement about ranks, checked exactly. Reports never claim more than
//! the degrees actually checked.

use std::collections::HashMap;

use num::Zero;

use crate::arrangement::{Arrangement, GenericBases, Point};
use crate::error::{Error, Result};
use crate::ideals::{product_generator, PosetIdeal};
use crate::linalg::Rat;
use crate::poly::{graded_component_span, poly_mul, MonomialBasis, Monomial, SparsePoly};

/// Basis element of the tensor complex: one nonempty subset per factor,
/// written with 1-based entries. Admitted to the subcomplex when the
/// tuple of maxima lies in the poset ideal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    parts: Vec<Vec<usize>>,
}

impl BasisLabel {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        debug_assert!(parts.iter().all(|p| !p.is_empty()));
        debug_assert!(parts.iter().all(|p| p.windows(2).all(|w| w[0] < w[1])));
        BasisLabel { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn homological_degree(&self) -> usize {
        self.parts.iter().map(|p| p.len() - 1).sum()
    }

    pub fn max_tuple(&self) -> Point {
        self.parts.iter().map(|p| *p.last().unwrap()).collect()
    }
}

/// Sparse matrix of polynomial entries mapping the module one step up in
/// homological degree down to this one.
#[derive(Clone, Debug)]
pub struct Differential {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, SparsePoly)>,
}

impl Differential {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, SparsePoly)] {
        &self.entries
    }
}

/// A complex of free modules with labeled bases, linear differentials,
/// and an augmentation onto the generators of the ideal being resolved.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    nvars: usize,
    n: usize,
    modules: Vec<Vec<BasisLabel>>,
    diffs: Vec<Differential>,
    augmentation: Vec<SparsePoly>,
}

impl FreeComplex {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of tensor factors; degree-0 generators live in internal
    /// degree `n` and the resolution is linear from there.
    pub fn generation_degree(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[Vec<BasisLabel>] {
        &self.modules
    }

    /// `∂_k` for `k ≥ 1` maps homological degree `k` to `k − 1`.
    pub fn differential(&self, k: usize) -> &Differential {
        &self.diffs[k - 1]
    }

    pub fn augmentation(&self) -> &[SparsePoly] {
        &self.augmentation
    }

    /// Module ranks by homological degree.
    pub fn betti_census(&self) -> Vec<u64> {
        self.modules.iter().map(|m| m.len() as u64).collect()
    }

    /// Mutable access to one stored differential entry. This exists so
    /// negative-control tests can corrupt a complex and watch the
    /// verifiers reject it.
    pub fn differential_entry_mut(&mut self, k: usize, index: usize) -> &mut SparsePoly {
        &mut self.diffs[k - 1].entries[index].2
    }
}

/// Build the subcomplex over the generic ring with one variable per basis
/// form of each factor: labels are filtered by membership of their max
/// tuple in the poset ideal, and the differential drops one element at a
/// time with the tensor Koszul sign. Dropping a non-maximal element fixes
/// the max tuple; dropping the maximum moves it down inside the ideal, so
/// the subcomplex is closed under the differential.
pub fn build_generic_complex(p: &PosetIdeal) -> FreeComplex {
    let dims = p.dims();
    let n = dims.len();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0usize, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let nvars: usize = dims.iter().sum();
    let var = |i: usize, j: usize| offsets[i] + j - 1;

    // enumerate labels grouped by homological degree
    let mut by_degree: Vec<Vec<BasisLabel>> = Vec::new();
    for a in p.members() {
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for &ai in a {
            let mut next = Vec::new();
            for mask in 0u32..1 << (ai - 1) {
                let mut part: Vec<usize> =
                    (1..ai).filter(|j| mask & (1 << (j - 1)) != 0).collect();
                part.push(ai);
                for prefix in &tuples {
                    let mut t = prefix.clone();
                    t.push(part.clone());
                    next.push(t);
                }
            }
            tuples = next;
        }
        for parts in tuples {
            let label = BasisLabel::new(parts);
            let k = label.homological_degree();
            if by_degree.len() <= k {
                by_degree.resize(k + 1, Vec::new());
            }
            by_degree[k].push(label);
        }
    }
    if by_degree.is_empty() {
        by_degree.push(Vec::new());
    }
    for labels in &mut by_degree {
        labels.sort();
    }
    let index: Vec<HashMap<&BasisLabel, usize>> = by_degree
        .iter()
        .map(|labels| labels.iter().enumerate().map(|(i, l)| (l, i)).collect())
        .collect();

    let mut diffs = Vec::new();
    for k in 1..by_degree.len() {
        let mut entries = Vec::new();
        for (c, label) in by_degree[k].iter().enumerate() {
            let mut prefix = 0usize;
            for (i, part) in label.parts.iter().enumerate() {
                if part.len() > 1 {
                    for (pos, &b) in part.iter().enumerate() {
                        let sign = prefix + pos;
                        let mut parts = label.parts.clone();
                        parts[i].remove(pos);
                        let target = BasisLabel::new(parts);
                        let r = *index[k - 1]
                            .get(&target)
                            .expect("target label admitted by downward closure");
                        let coeff = if sign.is_multiple_of(2) {
                            crate::linalg::rat_int(1)
                        } else {
                            crate::linalg::rat_int(-1)
                        };
                        let poly = SparsePoly::from_terms(
                            nvars,
                            [(Monomial::variable(nvars, var(i, b)), coeff)],
                        );
                        entries.push((r, c, poly));
                    }
                }
                prefix += part.len() - 1;
            }
        }
        diffs.push(Differential {
            rows: by_degree[k - 1].len(),
            cols: by_degree[k].len(),
            entries,
        });
    }

    let augmentation = by_degree[0]
        .iter()
        .map(|label| {
            let mut exps = vec![0u32; nvars];
            for (i, part) in label.parts.iter().enumerate() {
                exps[var(i, part[0])] += 1;
            }
            SparsePoly::from_terms(
                nvars,
                [(Monomial::new(exps), crate::linalg::rat_int(1))],
            )
        })
        .collect();

    FreeComplex {
        nvars,
        n,
        modules: by_degree,
        diffs,
        augmentation,
    }
}

fn substitute_linear(poly: &SparsePoly, images: &[Vec<Rat>], d: usize) -> Result<SparsePoly> {
    let mut out = SparsePoly::zero(d);
    for (m, c) in poly.terms() {
        if m.degree() != 1 {
            return Err(Error::input(
                "substitution is defined for linear entries only",
            ));
        }
        let v = m.exps().iter().position(|&e| e == 1).unwrap();
        let form = SparsePoly::from_terms(
            d,
            images[v]
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (Monomial::variable(d, i), x * c)),
        );
        out = &out + &form;
    }
    Ok(out)
}

/// Replace every generic variable by its chosen form, turning the complex
/// over the generic ring into one over the ambient ring. Labels and ranks
/// are untouched; only entries and the augmentation change.
pub fn specialize(cx: &FreeComplex, arr: &Arrangement, f: &GenericBases) -> Result<FreeComplex> {
    if !f.is_certified() {
        return Err(Error::input("specialization requires certified bases"));
    }
    let dims = f.dims();
    let total: usize = dims.iter().sum();
    if total != cx.nvars {
        return Err(Error::input(
            "basis collection does not match the complex's factor dimensions",
        ));
    }
    let d = arr.ambient_dim();
    let mut images: Vec<Vec<Rat>> = Vec::with_capacity(total);
    for i in 0..f.n() {
        for j in 0..dims[i] {
            images.push(f.form(i, j).to_vec());
        }
    }
    let diffs = cx
        .diffs
        .iter()
        .map(|dm| {
            let entries = dm
                .entries
                .iter()
                .map(|(r, c, poly)| Ok((*r, *c, substitute_linear(poly, &images, d)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Differential {
                rows: dm.rows,
                cols: dm.cols,
                entries,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let augmentation = cx.modules[0]
        .iter()
        .map(|label| product_generator(f, &label.max_tuple()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeComplex {
        nvars: d,
        n: cx.n,
        modules: cx.modules.clone(),
        diffs,
        augmentation,
    })
}

/// Minimality: every differential entry is a linear form with no constant
/// term. True by construction, checked anyway; the check is what negative
/// controls corrupt.
pub fn verify_minimality(cx: &FreeComplex) -> bool {
    cx.diffs.iter().all(|dm| {
        dm.entries.iter().all(|(_, _, poly)| {
            poly.constant_term().is_zero() && poly.total_degree().is_none_or(|d| d <= 1)
        })
    })
}

/// Symbolic check that consecutive differentials compose to zero and that
/// the augmentation kills the image of `∂_1`.
pub fn verify_d_squared(cx: &FreeComplex) -> Result<()> {
    for k in 1..cx.diffs.len() {
        let lower = &cx.diffs[k - 1]; // F_k -> F_{k-1}
        let upper = &cx.diffs[k]; // F_{k+1} -> F_k
        let mut by_row: HashMap<usize, Vec<(usize, &SparsePoly)>> = HashMap::new();
        for (r, c, poly) in &upper.entries {
            by_row.entry(*r).or_default().push((*c, poly));
        }
        let mut acc: HashMap<(usize, usize), SparsePoly> = HashMap::new();
        for (r1, c1, p1) in &lower.entries {
            if let Some(next) = by_row.get(c1) {
                for (c2, p2) in next {
                    let prod = poly_mul(p1, p2)?;
                    let slot = acc
                        .entry((*r1, *c2))
                        .or_insert_with(|| SparsePoly::zero(cx.nvars));
                    *slot = &*slot + &prod;
                }
            }
        }
        for ((r, c), poly) in &acc {
            if !poly.is_zero() {
                return Err(Error::violation(
                    "d_squared",
                    format!(
                        "composite of steps {} and {} is nonzero at row {r}, column {c}",
                        k + 1,
                        k
                    ),
                ));
            }
        }
    }
    if let Some(first) = cx.diffs.first() {
        let mut acc: HashMap<usize, SparsePoly> = HashMap::new();
        for (r, c, poly) in &first.entries {
            let prod = poly_mul(&cx.augmentation[*r], poly)?;
            let slot = acc
                .entry(*c)
                .or_insert_with(|| SparsePoly::zero(cx.nvars));
            *slot = &*slot + &prod;
        }
        for (c, poly) in &acc {
            if !poly.is_zero() {
                return Err(Error::violation(
                    "d_squared",
                    format!("augmentation does not kill the image of step 1 at column {c}"),
                ));
            }
        }
    }
    Ok(())
}

/// The rank bookkeeping of one strand degree.
#[derive(Clone, Debug)]
pub struct StrandCheck {
    pub homological_degree: usize,
    pub strand_dim: usize,
    /// rank of the incoming map `∂_k` restricted to the strand (0 at k=0)
    pub rank_in: usize,
    /// rank of the outgoing map `∂_{k+1}` restricted to the strand
    pub rank_out: usize,
}

#[derive(Clone, Debug)]
pub struct StrandReport {
    pub degree: u32,
    /// independently computed dimension of the ideal's graded component
    pub ideal_dim: usize,
    pub checks: Vec<StrandCheck>,
}

fn strand_matrix(cx: &FreeComplex, k: usize, t: u32) -> crate::linalg::QMatrix {
    // ∂_k : F_k -> F_{k-1} restricted to internal degree t
    let n = cx.n as i64;
    let mult_col = t as i64 - n - k as i64;
    let mult_row = mult_col + 1;
    if mult_col < 0 {
        return crate::linalg::QMatrix::zeros(0, 0);
    }
    let mb_col = MonomialBasis::get(cx.nvars, mult_col as u32);
    let mb_row = MonomialBasis::get(cx.nvars, mult_row as u32);
    let dm = cx.differential(k);
    let mut mat =
        crate::linalg::QMatrix::zeros(dm.rows() * mb_row.len(), dm.cols() * mb_col.len());
    for (r, c, poly) in dm.entries() {
        for (ci, mu) in mb_col.iter().enumerate() {
            let col = c * mb_col.len() + ci;
            for (mono, coeff) in poly.terms() {
                let ri = mb_row
                    .index_of(&mono.mul(mu))
                    .expect("homogeneous linear entry");
                let slot = mat.get_mut(r * mb_row.len() + ri, col);
                *slot += coeff;
            }
        }
    }
    mat
}

/// Certify exactness of the complex in internal degree `t ≥ n`.
///
/// With `m_k = dim` of the strand at homological degree `k`, the checks
/// are `rank ∂_k + rank ∂_{k+1} = m_k` for `k ≥ 1` (images always sit
/// inside kernels once `∂² = 0`, so equality of ranks is exactness) and
/// `m_0 − rank ∂_1 = dim (J_P)_t` at `k = 0`, where the right-hand side
/// is computed independently from the generator span.
pub fn verify_strand_exactness(cx: &FreeComplex, t: u32) -> Result<StrandReport> {
    if (t as usize) < cx.n {
        return Err(Error::input(format!(
            "strand degree {t} below generation degree {}",
            cx.n
        )));
    }
    let length = cx.length();
    let ranks: Vec<usize> = (1..=length)
        .map(|k| strand_matrix(cx, k, t).rank())
        .collect();
    let rank_of = |k: usize| -> usize {
        if k >= 1 && k <= length {
            ranks[k - 1]
        } else {
            0
        }
    };
    let strand_dim = |k: usize| -> usize {
        let mult = t as i64 - cx.n as i64 - k as i64;
        if mult < 0 {
            0
        } else {
            cx.modules[k].len() * crate::poly::monomial_count(cx.nvars, mult as u32)
        }
    };

    let ideal_dim = graded_component_span(&cx.augmentation, t)?.rank();
    let mut checks = Vec::with_capacity(length + 1);

    let dim0 = strand_dim(0);
    if dim0 - rank_of(1) != ideal_dim {
        return Err(Error::violation(
            "strand_exactness",
            format!(
                "degree {t}: strand dimension {dim0} minus rank {} of step 1 \
                 differs from the ideal component dimension {ideal_dim}",
                rank_of(1)
            ),
        ));
    }
    checks.push(StrandCheck {
        homological_degree: 0,
        strand_dim: dim0,
        rank_in: 0,
        rank_out: rank_of(1),
    });

    for k in 1..=length {
        let dim = strand_dim(k);
        let rin = rank_of(k);
        let rout = rank_of(k + 1);
        if rin + rout != dim {
            return Err(Error::violation(
                "strand_exactness",
                format!(
                    "degree {t}, homological degree {k}: rank {rin} + rank {rout} ≠ \
                     strand dimension {dim}"
                ),
            ));
        }
        checks.push(StrandCheck {
            homological_degree: k,
            strand_dim: dim,
            rank_in: rin,
            rank_out: rout,
        });
    }

    Ok(StrandReport {
        degree: t,
        ideal_dim,
        checks,
    })
}

/// Run strand checks for several degrees, spreading them over at most
/// `threads` worker threads. Results come back ordered by degree.
pub fn verify_strands(
    cx: &FreeComplex,
    degrees: &[u32],
    threads: usize,
) -> Result<Vec<StrandReport>> {
    let threads = threads.max(1).min(degrees.len().max(1));
    if threads <= 1 || degrees.len() <= 1 {
        return degrees
            .iter()
            .map(|&t| verify_strand_exactness(cx, t))
            .collect();
    }
    let mut results: Vec<Option<Result<StrandReport>>> = Vec::new();
    results.resize_with(degrees.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results = std::sync::Mutex::new(&mut results);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= degrees.len() {
                    break;
                }
                let report = verify_strand_exactness(cx, degrees[i]);
                results.lock().unwrap()[i] = Some(report);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .iter_mut()
        .map(|slot| slot.take().expect("every degree processed"))
        .collect()
}

/// JSON document describing the complex: labels per homological degree,
/// differential entries as coefficient vectors against the ring
/// variables, and the augmentation polynomials.
pub fn export_json(cx: &FreeComplex) -> serde_json::Value {
    use serde_json::json;
    let rat_str = |x: &Rat| format!("{}/{}", x.numer(), x.denom());
    let modules: Vec<serde_json::Value> = cx
        .modules
        .iter()
        .map(|labels| {
            serde_json::Value::Array(labels.iter().map(|l| json!(l.parts())).collect())
        })
        .collect();
    let differentials: Vec<serde_json::Value> = cx
        .diffs
        .iter()
        .enumerate()
        .map(|(i, dm)| {
            let entries: Vec<serde_json::Value> = dm
                .entries
                .iter()
                .map(|(r, c, poly)| {
                    let mut coeffs = vec![Rat::zero(); cx.nvars];
                    for (m, coeff) in poly.terms() {
                        let v = m.exps().iter().position(|&e| e == 1).expect("linear entry");
                        coeffs[v] = coeff.clone();
                    }
                    json!({
                        "row": r,
                        "col": c,
                        "coeffs": coeffs.iter().map(rat_str).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "step": i + 1,
                "rows": dm.rows(),
                "cols": dm.cols(),
                "entries": entries,
            })
        })
        .collect();
    let augmentation: Vec<serde_json::Value> = cx
        .augmentation
        .iter()
        .map(|poly| {
            let terms: Vec<serde_json::Value> = poly
                .terms()
                .map(|(m, c)| json!({"exps": m.exps(), "coeff": rat_str(c)}))
                .collect();
            serde_json::Value::Array(terms)
        })
        .collect();
    json!({
        "variables": cx.nvars,
        "generation_degree": cx.n,
        "betti": cx.betti_census(),
        "modules": modules,
        "differentials": differentials,
        "augmentation": augmentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{compute_rank_function, sample_generic_bases, Arrangement};
    use crate::combi::binom;
    use crate::ideals::poset_betti;
    use crate::linalg::{rat_int, Rat};
    use crate::polymatroid::{enumerate_points, generator_box};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn double_plane() -> Arrangement {
        let plane = vec![v(&[1, 0]), v(&[0, 1])];
        Arrangement::new(2, vec![plane.clone(), plane]).unwrap()
    }

    fn full_box(dims: &[usize]) -> PosetIdeal {
        PosetIdeal::new(dims, &[dims.to_vec()]).unwrap()
    }

    #[test]
    fn truncated_koszul_ranks() {
        for d in 1..6usize {
            let cx = build_generic_complex(&full_box(&[d]));
            let census = cx.betti_census();
            assert_eq!(census.len(), d);
            for (k, &b) in census.iter().enumerate() {
                assert_eq!(b, binom(d as i64, k as i64 + 1));
            }
            verify_d_squared(&cx).unwrap();
        }
    }

    #[test]
    fn tensor_square_ranks() {
        let cx = build_generic_complex(&full_box(&[2, 2]));
        assert_eq!(cx.betti_census(), vec![4, 4, 1]);
        verify_d_squared(&cx).unwrap();
    }

    #[test]
    fn triple_tensor_d_squared() {
        let cx = build_generic_complex(&full_box(&[2, 2, 2]));
        assert_eq!(cx.betti_census().iter().sum::<u64>(), 27);
        verify_d_squared(&cx).unwrap();
        assert!(verify_minimality(&cx));
    }

    #[test]
    fn census_matches_point_count_formula() {
        let arr = double_plane();
        let rk = compute_rank_function(&arr);
        let dv = generator_box(&arr.dims(), &enumerate_points(&rk, true));
        let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);
        let cx = build_generic_complex(&p);
        assert_eq!(cx.betti_census(), poset_betti(&p, &dv).unwrap());
    }

    #[test]
    fn corrupted_sign_fails_d_squared() {
        let mut cx = build_generic_complex(&full_box(&[2, 2]));
        let flipped = cx.differential_entry_mut(2, 0).neg();
        *cx.differential_entry_mut(2, 0) = flipped;
        let err = verify_d_squared(&cx).unwrap_err();
        assert_eq!(err.kind(), "theorem_violation");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn constant_entry_fails_minimality() {
        let mut cx = build_generic_complex(&full_box(&[2, 2]));
        assert!(verify_minimality(&cx));
        let poisoned =
            &cx.differential_entry_mut(1, 0).clone() + &SparsePoly::constant(4, rat_int(1));
        *cx.differential_entry_mut(1, 0) = poisoned;
        assert!(!verify_minimality(&cx));
    }

    #[test]
    fn zero_differential_is_minimal() {
        let cx = build_generic_complex(&PosetIdeal::new(&[1], &[vec![1]]).unwrap());
        assert_eq!(cx.betti_census(), vec![1]);
        assert!(verify_minimality(&cx));
    }

    #[test]
    fn specialization_preserves_census_and_d_squared() {
        let arr = double_plane();
        let f = sample_generic_bases(&arr, 17).unwrap();
        let rk = compute_rank_function(&arr);
        let dv = generator_box(&arr.dims(), &enumerate_points(&rk, true));
        let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);
        let generic = build_generic_complex(&p);
        let cx = specialize(&generic, &arr, &f).unwrap();
        assert_eq!(cx.betti_census(), generic.betti_census());
        assert_eq!(cx.betti_census(), vec![3, 2]);
        assert_eq!(cx.nvars(), 2);
        verify_d_squared(&cx).unwrap();
        assert!(verify_minimality(&cx));
    }

    #[test]
    fn specialization_requires_certified_bases() {
        let arr = double_plane();
        let f = crate::arrangement::GenericBases::from_vectors(vec![
            vec![v(&[1, 0]), v(&[0, 1])],
            vec![v(&[0, 1]), v(&[1, 0])],
        ]);
        let generic = build_generic_complex(&full_box(&[2, 2]));
        assert!(specialize(&generic, &arr, &f).is_err());
    }

    #[test]
    fn generation_degree_strand_counts_generators() {
        let cx = build_generic_complex(&full_box(&[2, 2]));
        let report = verify_strand_exactness(&cx, 2).unwrap();
        assert_eq!(report.ideal_dim, 4);
        assert_eq!(report.checks[0].strand_dim, 4);
        assert_eq!(report.checks[0].rank_out, 0);
    }

    #[test]
    fn equal_planes_strands_resolve_square_of_maximal_ideal() {
        let arr = double_plane();
        let f = sample_generic_bases(&arr, 23).unwrap();
        let rk = compute_rank_function(&arr);
        let dv = generator_box(&arr.dims(), &enumerate_points(&rk, true));
        let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);
        let cx = specialize(&build_generic_complex(&p), &arr, &f).unwrap();
        for t in 2..=5u32 {
            let report = verify_strand_exactness(&cx, t).unwrap();
            // components of m^2 in 2 variables have dimension t+1 for t ≥ 2
            assert_eq!(report.ideal_dim, t as usize + 1);
        }
        let r3 = verify_strand_exactness(&cx, 3).unwrap();
        assert_eq!(r3.checks[1].strand_dim, 2);
        assert_eq!(r3.checks[1].rank_in, 2);
    }

    #[test]
    fn transversal_strands_exact_through_degree_six() {
        let arr = Arrangement::coordinate(4, &[2, 2]).unwrap();
        let f = sample_generic_bases(&arr, 29).unwrap();
        let rk = compute_rank_function(&arr);
        let dv = generator_box(&arr.dims(), &enumerate_points(&rk, true));
        let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);
        let cx = specialize(&build_generic_complex(&p), &arr, &f).unwrap();
        let degrees: Vec<u32> = (2..=6).collect();
        let reports = verify_strands(&cx, &degrees, 4).unwrap();
        assert_eq!(reports.len(), degrees.len());
        for (r, &t) in reports.iter().zip(&degrees) {
            assert_eq!(r.degree, t);
        }
    }

    #[test]
    fn strand_check_rejects_low_degree() {
        let cx = build_generic_complex(&full_box(&[2, 2]));
        assert!(verify_strand_exactness(&cx, 1).is_err());
    }

    #[test]
    fn export_round_trips_census() {
        let cx = build_generic_complex(&full_box(&[2, 2]));
        let doc = export_json(&cx);
        assert_eq!(doc["betti"], serde_json::json!([4, 4, 1]));
        assert_eq!(doc["variables"], serde_json::json!(4));
        assert_eq!(
            doc["differentials"][0]["rows"],
            serde_json::json!(4)
        );
    }
}
