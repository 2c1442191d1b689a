//! Closed-form invariants of the product ideal: Betti numbers and
//! projective dimension from the strict point counts, associated primes
//! and the irredundant primary decomposition from the flats, the
//! corresponding data for powers and products of powers, and the
//! multigraded Hilbert function of the multiview algebra.

use crate::arrangement::{Arrangement, GenericBases, RankFunction};
use crate::combi::{binom, members, subset_string, Subset};
use crate::error::{Error, Result};
use crate::ideals::{generator_family, PosetIdeal};
use crate::linalg::{row_space_intersection, span_dim, QMatrix, Rat};
use crate::poly::{graded_component_span, poly_mul, LinearForm, SparsePoly};
use crate::polymatroid::{LatticePointSet, PointSetKind, TruncatedRank};

/// Betti numbers together with the point counts they expand from. The
/// resolution is linear, so the regularity equals the generation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: Vec<u64>,
    pub gamma: Vec<usize>,
    pub regularity: usize,
}

/// `β_i = Σ_j γ_j C(j, i)`.
pub fn betti_from_gamma(gamma: &[usize], n: usize) -> BettiTable {
    let betti = (0..gamma.len())
        .map(|i| {
            gamma
                .iter()
                .enumerate()
                .map(|(j, &g)| g as u64 * binom(j as i64, i as i64))
                .sum()
        })
        .collect();
    BettiTable {
        betti,
        gamma: gamma.to_vec(),
        regularity: n,
    }
}

/// Projective dimension with its witness: a partition of the ground set
/// attaining the truncated rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdWitness {
    pub value: usize,
    pub partition: Vec<Subset>,
}

pub fn projective_dimension(trunc: &TruncatedRank) -> PdWitness {
    let full = trunc.full_set();
    PdWitness {
        value: trunc.value(full),
        partition: trunc.witness_partition(full).to_vec(),
    }
}

/// The associated primes: flats whose truncated rank drops exactly one
/// below the rank. Sorted by cardinality, then bitmask.
pub fn associated_primes(
    rk: &RankFunction,
    trunc: &TruncatedRank,
    flats: &[Subset],
) -> Vec<Subset> {
    let mut out: Vec<Subset> = flats
        .iter()
        .copied()
        .filter(|&b| b != 0 && trunc.value(b) + 1 == rk.rank(b))
        .collect();
    out.sort_by_key(|&b| (b.count_ones(), b));
    out
}

/// Echelon basis of the prime `I_B`, i.e. of the sum of the subspaces in
/// `B`.
pub fn prime_basis(arr: &Arrangement, b: Subset) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in members(b) {
        for r in 0..arr.basis(i).rows() {
            rows.push(arr.basis(i).row(r).to_vec());
        }
    }
    if rows.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(rows).expect("uniform width").row_space_basis();
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Which ideal the primary decomposition describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowersMode {
    /// The product ideal itself.
    Single,
    /// Its ν-th power.
    Power(u64),
    /// The product of the per-subspace powers `I_1^{u_1}⋯I_n^{u_n}`.
    ProductPowers(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub subset: Subset,
    pub multiplicity: u64,
}

/// An irredundant primary decomposition `∩_B I_B^{m_B}` over the
/// qualifying flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub components: Vec<PrimaryComponent>,
}

pub fn primary_decomposition(
    rk: &RankFunction,
    trunc: &TruncatedRank,
    flats: &[Subset],
    mode: &PowersMode,
) -> Result<PrimaryDecomposition> {
    match mode {
        PowersMode::Power(nu) if *nu == 0 => {
            return Err(Error::input("power must be at least 1"));
        }
        PowersMode::ProductPowers(u) => {
            if u.len() != rk.n() {
                return Err(Error::input("exponent vector length != number of subspaces"));
            }
            if u.contains(&0) {
                return Err(Error::input(
                    "product-of-powers decomposition needs every exponent positive",
                ));
            }
        }
        _ => {}
    }
    let components = associated_primes(rk, trunc, flats)
        .into_iter()
        .map(|b| {
            let multiplicity = match mode {
                PowersMode::Single => u64::from(b.count_ones()),
                PowersMode::Power(nu) => nu * u64::from(b.count_ones()),
                PowersMode::ProductPowers(u) => members(b).iter().map(|&i| u[i]).sum(),
            };
            PrimaryComponent {
                subset: b,
                multiplicity,
            }
        })
        .collect();
    Ok(PrimaryDecomposition { components })
}

/// Betti numbers of the product of powers, from the strict points alone:
/// `β_i = Σ_x C(|x|, i) ∏_j C(u_j + x_j − 1, x_j)`.
pub fn product_powers_betti(star: &LatticePointSet, u: &[u64], n: usize) -> Result<BettiTable> {
    assert_eq!(star.kind(), PointSetKind::Strict);
    if u.len() != star.n() {
        return Err(Error::input("exponent vector length != number of subspaces"));
    }
    if u.contains(&0) {
        return Err(Error::input("exponents must be positive"));
    }
    let max_total: usize = star
        .points()
        .iter()
        .map(|x| x.iter().sum())
        .max()
        .unwrap_or(0);
    let mut betti = vec![0u64; max_total + 1];
    for x in star.points() {
        let weight: u64 = x
            .iter()
            .zip(u)
            .map(|(&xj, &uj)| binom(uj as i64 + xj as i64 - 1, xj as i64))
            .product();
        let total: usize = x.iter().sum();
        for (i, b) in betti.iter_mut().enumerate() {
            *b += binom(total as i64, i as i64) * weight;
        }
    }
    let gamma = crate::polymatroid::gamma_vector(star);
    Ok(BettiTable {
        betti,
        gamma,
        regularity: n,
    })
}

#[derive(Clone, Debug)]
pub struct PowersReport {
    pub pd: PdWitness,
    pub ass: Vec<Subset>,
    pub betti: BettiTable,
}

/// Invariants of `J^ν`: projective dimension and associated primes are
/// those of `J`; the Betti numbers come from the binomial sum over the
/// strict points.
pub fn powers_invariants(
    rk: &RankFunction,
    trunc: &TruncatedRank,
    flats: &[Subset],
    star: &LatticePointSet,
    nu: u64,
) -> Result<PowersReport> {
    if nu == 0 {
        return Err(Error::input("power must be at least 1"));
    }
    let u = vec![nu; rk.n()];
    Ok(PowersReport {
        pd: projective_dimension(trunc),
        ass: associated_primes(rk, trunc, flats),
        betti: product_powers_betti(star, &u, rk.n())?,
    })
}

/// The multigraded Hilbert function of the multiview algebra:
/// `dim V_1^{u_1}⋯V_n^{u_n} = Σ_x ∏_j C(u_j + x_j − 1, x_j)`. Zero
/// exponents are allowed; a point contributes only where `u_j = 0`
/// forces `x_j = 0`.
pub fn multiview_hilbert(star: &LatticePointSet, u: &[u64]) -> u64 {
    assert_eq!(star.kind(), PointSetKind::Strict);
    assert_eq!(u.len(), star.n(), "exponent vector length");
    star.points()
        .iter()
        .map(|x| {
            x.iter()
                .zip(u)
                .map(|(&xj, &uj)| binom(uj as i64 + xj as i64 - 1, xj as i64))
                .product::<u64>()
        })
        .sum()
}

/// Independent oracle for the Hilbert value: the exact rank of the span of
/// all products of degree-`u_i` monomials in the subspace bases inside the
/// full polynomial ring.
pub fn multiview_span_oracle(arr: &Arrangement, u: &[u64]) -> Result<usize> {
    if u.len() != arr.n() {
        return Err(Error::input("exponent vector length != number of subspaces"));
    }
    let d = arr.ambient_dim();
    let one = SparsePoly::constant(d, crate::linalg::rat_int(1));
    // degree-u_i products of basis vectors of V_i, one subspace at a time
    let mut products: Vec<SparsePoly> = vec![one.clone()];
    for (i, &ui) in u.iter().enumerate() {
        let basis: Vec<SparsePoly> = (0..arr.basis(i).rows())
            .map(|r| LinearForm::new(arr.basis(i).row(r).to_vec()).to_poly())
            .collect();
        let mut monomials: Vec<SparsePoly> = Vec::new();
        fn rec(
            basis: &[SparsePoly],
            start: usize,
            left: u64,
            acc: &SparsePoly,
            out: &mut Vec<SparsePoly>,
        ) -> Result<()> {
            if left == 0 {
                out.push(acc.clone());
                return Ok(());
            }
            for j in start..basis.len() {
                let next = poly_mul(acc, &basis[j])?;
                rec(basis, j, left - 1, &next, out)?;
            }
            Ok(())
        }
        rec(&basis, 0, ui, &one, &mut monomials)?;
        let mut next = Vec::with_capacity(products.len() * monomials.len());
        for p in &products {
            for m in &monomials {
                next.push(poly_mul(p, m)?);
            }
        }
        products = next;
    }
    let total: u64 = u.iter().sum();
    let basis = crate::poly::MonomialBasis::get(d, total as u32);
    let vectors = products
        .iter()
        .map(|p| p.coeff_vector(&basis))
        .collect::<Result<Vec<_>>>()?;
    span_dim(&vectors)
}

/// Degree-`t` span matrix of one primary component `I_B^m`: the ideal
/// generated by all degree-`m` products of a basis of `I_B`.
fn component_span(arr: &Arrangement, b: Subset, m: u64, t: u32) -> Result<QMatrix> {
    let d = arr.ambient_dim();
    let basis_forms: Vec<SparsePoly> = prime_basis(arr, b)
        .into_iter()
        .map(|v| LinearForm::new(v).to_poly())
        .collect();
    let one = SparsePoly::constant(d, crate::linalg::rat_int(1));
    let mut gens: Vec<SparsePoly> = Vec::new();
    fn rec(
        basis: &[SparsePoly],
        start: usize,
        left: u64,
        acc: &SparsePoly,
        out: &mut Vec<SparsePoly>,
    ) -> Result<()> {
        if left == 0 {
            out.push(acc.clone());
            return Ok(());
        }
        for j in start..basis.len() {
            let next = poly_mul(acc, &basis[j])?;
            rec(basis, j, left - 1, &next, out)?;
        }
        Ok(())
    }
    rec(&basis_forms, 0, m, &one, &mut gens)?;
    let span = graded_component_span(&gens, t)?;
    Ok(span.row_space_basis())
}

/// One degree of the degreewise decomposition comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionEvidence {
    pub degree: u32,
    pub ideal_dim: usize,
    pub intersection_dim: usize,
}

impl DecompositionEvidence {
    pub fn matches(&self) -> bool {
        self.ideal_dim == self.intersection_dim
    }
}

/// Compare the graded components of the product ideal against the
/// intersection of its primary components, degree by degree. This is
/// bounded-degree *evidence*, not a proof of ideal equality; callers
/// label it accordingly.
pub fn verify_decomposition_degreewise(
    arr: &Arrangement,
    f: &GenericBases,
    decomposition: &PrimaryDecomposition,
    degrees: &[u32],
) -> Result<Vec<DecompositionEvidence>> {
    let n = arr.n();
    let full_box = PosetIdeal::new(&arr.dims(), &[arr.dims().to_vec()])?;
    let family = generator_family(&full_box, f)?;
    let gens = family.polys();
    let mut out = Vec::with_capacity(degrees.len());
    for &t in degrees {
        if (t as usize) < n {
            return Err(Error::input(format!(
                "degree {t} below the generation degree {n}"
            )));
        }
        let ideal_dim = graded_component_span(&gens, t)?.rank();
        let mut inter: Option<QMatrix> = None;
        for c in &decomposition.components {
            let span = component_span(arr, c.subset, c.multiplicity, t)?;
            inter = Some(match inter {
                None => span,
                Some(prev) => row_space_intersection(&prev, &span)?,
            });
        }
        let intersection_dim = match &inter {
            None => crate::poly::monomial_count(arr.ambient_dim(), t),
            Some(m) => m.rows(),
        };
        out.push(DecompositionEvidence {
            degree: t,
            ideal_dim,
            intersection_dim,
        });
    }
    Ok(out)
}

/// Degree-`t` dimensions of the product ideal and of the plain
/// intersection `∩_i I_i`; used to probe when the product equals the
/// intersection. Below the generation degree the product has nothing,
/// while the intersection may not — that is exactly where the two ideals
/// can differ, since they always agree from degree `n` on.
pub fn product_vs_intersection_dims(
    arr: &Arrangement,
    f: &GenericBases,
    t: u32,
) -> Result<(usize, usize)> {
    let n = arr.n();
    let product_dim = if (t as usize) < n {
        0
    } else {
        let full_box = PosetIdeal::new(&arr.dims(), &[arr.dims().to_vec()])?;
        let family = generator_family(&full_box, f)?;
        graded_component_span(&family.polys(), t)?.rank()
    };
    let mut inter: Option<QMatrix> = None;
    for i in 0..arr.n() {
        let span = component_span(arr, 1 << i, 1, t)?;
        inter = Some(match inter {
            None => span,
            Some(prev) => row_space_intersection(&prev, &span)?,
        });
    }
    Ok((product_dim, inter.map_or(0, |m| m.rows())))
}

/// Pretty name for report output.
pub fn prime_label(b: Subset) -> String {
    subset_string(b)
}
