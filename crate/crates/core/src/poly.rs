//! Sparse multivariate polynomials over the rationals and the graded-span
//! machinery for ideals generated in a single degree.
//!
//! Polynomials are maps from exponent vectors to nonzero rational
//! coefficients. Graded components of an ideal are handled as row spans of
//! coefficient matrices in a fixed monomial basis, so every "dimension of
//! the degree-t piece" question becomes an exact rank computation.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use crate::combi::binom;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rat};

/// An exponent vector. Ordered by total degree first, then
/// lexicographically — a graded lexicographic order, which keeps every
/// matrix layout deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: no zero coefficients are ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = SparsePoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut p = SparsePoly::zero(nvars);
        p.terms.insert(Monomial::variable(nvars, i), Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = SparsePoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Degree when every term has the same one; `None` for the zero
    /// polynomial or a non-homogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), -a.clone()))
                .collect(),
        }
    }

    /// Coefficient vector in the given degree basis; every term must have
    /// the basis degree.
    pub fn coeff_vector(&self, basis: &MonomialBasis) -> Result<Vec<Rat>> {
        let mut v = vec![Rat::zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis.index_of(m).ok_or_else(|| {
                Error::input(format!(
                    "term of degree {} does not live in the degree-{} component",
                    m.degree(),
                    basis.degree()
                ))
            })?;
            v[idx] = c.clone();
        }
        Ok(v)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        poly_mul(self, rhs).expect("variable count mismatch in poly product")
    }
}

/// Exact product of two sparse polynomials in the same variables.
pub fn poly_mul(p: &SparsePoly, q: &SparsePoly) -> Result<SparsePoly> {
    if p.nvars != q.nvars {
        return Err(Error::input(format!(
            "poly_mul: {} vs {} variables",
            p.nvars, q.nvars
        )));
    }
    let mut out = SparsePoly::zero(p.nvars);
    for (mp, cp) in &p.terms {
        for (mq, cq) in &q.terms {
            out.add_term(mp.mul(mq), cp * cq);
        }
    }
    Ok(out)
}

/// A linear form, stored as its coefficient vector against the ambient
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        LinearForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_poly(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.coeffs.len(),
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::variable(self.coeffs.len(), i), c.clone())),
        )
    }
}

/// Number of monomials of degree `t` in `nvars` variables.
pub fn monomial_count(nvars: usize, t: u32) -> usize {
    binom(t as i64 + nvars as i64 - 1, nvars as i64 - 1) as usize
}

/// The ordered monomial basis of a single graded component, cached per
/// `(nvars, degree)` since strand checks reuse the same bases heavily.
#[derive(Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn get(nvars: usize, degree: u32) -> Arc<MonomialBasis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<MonomialBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry((nvars, degree))
            .or_insert_with(|| Arc::new(MonomialBasis::build(nvars, degree)))
            .clone()
    }

    fn build(nvars: usize, degree: u32) -> MonomialBasis {
        let mut monomials = Vec::with_capacity(monomial_count(nvars, degree));
        let mut exps = vec![0u32; nvars];
        fn rec(exps: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
            if pos + 1 == exps.len() {
                exps[pos] = remaining;
                out.push(Monomial::new(exps.clone()));
                return;
            }
            for e in 0..=remaining {
                exps[pos] = e;
                rec(exps, pos + 1, remaining - e, out);
            }
            exps[pos] = 0;
        }
        if nvars == 0 {
            if degree == 0 {
                monomials.push(Monomial::new(vec![]));
            }
        } else {
            rec(&mut exps, 0, degree, &mut monomials);
        }
        debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        MonomialBasis {
            nvars,
            degree,
            monomials,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.binary_search_by(|x| x.cmp(m)).ok()
    }
}

/// Span matrix of the degree-`t` component of the ideal generated by
/// `gens`: one row per product `monomial × generator`, as a coefficient
/// vector in the degree-`t` basis. Its rank is the dimension of the
/// component.
pub fn graded_component_span(gens: &[SparsePoly], t: u32) -> Result<QMatrix> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::input("graded_component_span: mixed variable counts"));
    }
    let basis_t = MonomialBasis::get(nvars, t);
    let mut out = QMatrix::with_cols(basis_t.len());
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let deg = g
            .homogeneous_degree()
            .ok_or_else(|| Error::input("graded_component_span: non-homogeneous generator"))?;
        if deg > t {
            return Err(Error::input(format!(
                "graded_component_span: generator of degree {deg} above target degree {t}"
            )));
        }
        let multipliers = MonomialBasis::get(nvars, t - deg);
        for mu in multipliers.iter() {
            let mut row = vec![Rat::zero(); basis_t.len()];
            for (m, c) in g.terms() {
                let idx = basis_t
                    .index_of(&m.mul(mu))
                    .expect("product degree matches basis");
                row[idx] = c.clone();
            }
            out.push_row(row);
        }
    }
    Ok(out)
}

/// Dimension of the intersection of the degree-`t` components of two
/// ideals, via ranks of the span matrices and of their stack.
pub fn degree_t_dim_intersection(
    gens_a: &[SparsePoly],
    gens_b: &[SparsePoly],
    t: u32,
) -> Result<usize> {
    let a = graded_component_span(gens_a, t)?;
    let b = graded_component_span(gens_b, t)?;
    if a.cols() != b.cols() {
        return Err(Error::input(
            "degree_t_dim_intersection: mixed variable counts",
        ));
    }
    let ra = a.rank();
    let rb = b.rank();
    let rab = a.stack(&b)?.rank();
    Ok(ra + rb - rab)
}
