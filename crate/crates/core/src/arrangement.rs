//! Subspace arrangements over the rationals: input parsing and validation,
//! rank functions, and certified general-position bases.
//!
//! An arrangement is a list of nonzero subspaces of ℚ^d given by spanning
//! vectors. All downstream combinatorics depends only on the rank function
//! `A ↦ dim Σ_{i∈A} V_i`; the homological constructions additionally need
//! one basis per subspace chosen in general position, which is sampled
//! randomly and then *certified* by exhaustive dimension checks rather
//! than trusted.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combi::{box_points, members, Subset};
use crate::error::{Error, Result};
use crate::linalg::{parse_rat, solve_membership, span_dim, QMatrix, Rat};

/// A point of ℕⁿ (a multi-index into the arrangement).
pub type Point = Vec<usize>;

/// A validated subspace arrangement. Generator input may be redundant;
/// each subspace is normalized to a rank-many-row echelon basis on
/// construction.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ambient_dim: usize,
    bases: Vec<QMatrix>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, subspaces: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::input("arrangement needs at least one subspace"));
        }
        if ambient_dim == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        let mut bases = Vec::with_capacity(subspaces.len());
        for (i, vectors) in subspaces.into_iter().enumerate() {
            if vectors.iter().any(|v| v.len() != ambient_dim) {
                return Err(Error::input(format!(
                    "subspace {} has vectors of length != ambient dimension {}",
                    i + 1,
                    ambient_dim
                )));
            }
            let basis = QMatrix::from_rows(vectors)?.row_space_basis();
            if basis.rows() == 0 {
                return Err(Error::input(format!("subspace {} is zero", i + 1)));
            }
            bases.push(basis);
        }
        Ok(Arrangement { ambient_dim, bases })
    }

    /// The transversal arrangement whose subspaces are spanned by disjoint
    /// blocks of coordinates; requires `Σ dims ≤ ambient_dim`.
    pub fn coordinate(ambient_dim: usize, dims: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().sum();
        if total > ambient_dim {
            return Err(Error::input(
                "coordinate arrangement needs Σ dims ≤ ambient dimension",
            ));
        }
        let mut subspaces = Vec::new();
        let mut offset = 0;
        for &di in dims {
            let mut vectors = Vec::new();
            for j in 0..di {
                let mut v = vec![Rat::from_integer(0.into()); ambient_dim];
                v[offset + j] = Rat::from_integer(1.into());
                vectors.push(v);
            }
            subspaces.push(vectors);
            offset += di;
        }
        Arrangement::new(ambient_dim, subspaces)
    }

    pub fn n(&self) -> usize {
        self.bases.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `(d_1, …, d_n)`: the subspace dimensions.
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.rows()).collect()
    }

    /// Normalized basis of the i-th subspace (0-based), rows spanning.
    pub fn basis(&self, i: usize) -> &QMatrix {
        &self.bases[i]
    }

    fn basis_vectors(&self, i: usize) -> Vec<Vec<Rat>> {
        (0..self.bases[i].rows())
            .map(|r| self.bases[i].row(r).to_vec())
            .collect()
    }
}

/// The rank function `A ↦ dim Σ_{i∈A} V_i`, tabulated over all 2ⁿ subset
/// bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    n: usize,
    values: Vec<usize>,
}

impl RankFunction {
    /// Build from explicit values, validating the polymatroid axioms:
    /// zero at ∅, monotone, submodular.
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self> {
        if n > 16 {
            return Err(Error::input("rank function ground set too large"));
        }
        if values.len() != 1 << n {
            return Err(Error::input(format!(
                "rank function needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        let rk = RankFunction { n, values };
        if rk.rank(0) != 0 {
            return Err(Error::input("rank of the empty set must be 0"));
        }
        if !rk.is_monotone() {
            return Err(Error::input("rank function is not monotone"));
        }
        if !rk.is_submodular() {
            return Err(Error::input("rank function is not submodular"));
        }
        Ok(rk)
    }

    pub(crate) fn new_unchecked(n: usize, values: Vec<usize>) -> Self {
        debug_assert_eq!(values.len(), 1 << n);
        RankFunction { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_set(&self) -> Subset {
        ((1u64 << self.n) - 1) as Subset
    }

    pub fn rank(&self, s: Subset) -> usize {
        self.values[s as usize]
    }

    pub fn is_monotone(&self) -> bool {
        (0..1u32 << self.n).all(|a| {
            (0..self.n)
                .filter(|i| a & (1 << i) == 0)
                .all(|i| self.rank(a) <= self.rank(a | (1 << i)))
        })
    }

    /// Local criterion: `rk(A∪i) + rk(A∪j) ≥ rk(A∪{i,j}) + rk(A)` for all
    /// `A` and `i ≠ j` outside `A`; equivalent to full submodularity.
    pub fn is_submodular(&self) -> bool {
        (0..1u32 << self.n).all(|a| {
            (0..self.n).filter(|i| a & (1 << i) == 0).all(|i| {
                (i + 1..self.n).filter(|j| a & (1 << j) == 0).all(|j| {
                    let bi = a | (1 << i);
                    let bj = a | (1 << j);
                    self.rank(bi) + self.rank(bj) >= self.rank(bi | bj) + self.rank(a)
                })
            })
        })
    }
}

/// Tabulate the rank function of an arrangement by stacking generator rows
/// and taking exact ranks.
pub fn compute_rank_function(arr: &Arrangement) -> RankFunction {
    let n = arr.n();
    let mut values = vec![0usize; 1 << n];
    for mask in 1..1u32 << n {
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in members(mask) {
            rows.extend(arr.basis_vectors(i));
        }
        values[mask as usize] = span_dim(&rows).expect("uniform ambient dimension");
    }
    RankFunction::new_unchecked(n, values)
}

/// One chosen basis per subspace, with a certificate that the collection
/// is in general position (every prefix span has the largest possible
/// dimension). The sampling seed and coefficient bound are recorded so a
/// certified choice is replayable.
#[derive(Clone, Debug)]
pub struct GenericBases {
    vectors: Vec<Vec<Vec<Rat>>>,
    certified: bool,
    seed: u64,
    coefficient_bound: i64,
}

impl GenericBases {
    pub fn from_vectors(vectors: Vec<Vec<Vec<Rat>>>) -> Self {
        GenericBases {
            vectors,
            certified: false,
            seed: 0,
            coefficient_bound: 0,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| v.len()).collect()
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    /// The j-th chosen basis vector of the i-th subspace, 0-based.
    pub fn form(&self, i: usize, j: usize) -> &[Rat] {
        &self.vectors[i][j]
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Run certification on explicitly provided bases and mark them on
    /// success; errors when the collection is not in general position.
    pub fn into_certified(mut self, arr: &Arrangement) -> Result<Self> {
        if certify_general_position(arr, &self)? {
            self.certified = true;
            Ok(self)
        } else {
            Err(Error::input(
                "provided bases are not in general position for this arrangement",
            ))
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn coefficient_bound(&self) -> i64 {
        self.coefficient_bound
    }
}

/// The listed spanning vectors of the prefix space `W_a`: for each `i`,
/// the first `a_i` chosen basis vectors. Zeros in `a` are allowed.
pub fn prefix_vectors(f: &GenericBases, a: &[usize]) -> Result<Vec<Vec<Rat>>> {
    let dims = f.dims();
    if a.len() != dims.len() {
        return Err(Error::input("point length != number of subspaces"));
    }
    let mut out = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        if ai > dims[i] {
            return Err(Error::input(format!(
                "coordinate {} of {:?} exceeds subspace dimension {}",
                i + 1,
                a,
                dims[i]
            )));
        }
        for j in 0..ai {
            out.push(f.form(i, j).to_vec());
        }
    }
    Ok(out)
}

/// The proven upper bound for `dim W_a`: the minimum over subsets `T` of
/// `Σ_{i∉T} a_i + rk(T)`.
pub fn prefix_dim_bound(rk: &RankFunction, a: &[usize]) -> usize {
    let n = rk.n();
    (0..1u32 << n)
        .map(|t| {
            let outside: usize = (0..n).filter(|i| t & (1 << i) == 0).map(|i| a[i]).sum();
            outside + rk.rank(t)
        })
        .min()
        .expect("nonempty subset range")
}

fn validate_bases(arr: &Arrangement, f: &GenericBases) -> Result<()> {
    if f.n() != arr.n() {
        return Err(Error::input("basis collection size != arrangement size"));
    }
    let dims = arr.dims();
    for i in 0..arr.n() {
        if f.vectors[i].len() != dims[i] {
            return Err(Error::input(format!(
                "subspace {} needs {} basis vectors, got {}",
                i + 1,
                dims[i],
                f.vectors[i].len()
            )));
        }
        let basis = arr.basis_vectors(i);
        for (j, v) in f.vectors[i].iter().enumerate() {
            if v.len() != arr.ambient_dim() {
                return Err(Error::input("basis vector of wrong length"));
            }
            if solve_membership(v, &basis)?.is_none() {
                return Err(Error::input(format!(
                    "vector {} of subspace {} does not lie in the subspace",
                    j + 1,
                    i + 1
                )));
            }
        }
        if span_dim(&f.vectors[i])? != dims[i] {
            return Err(Error::input(format!(
                "chosen vectors do not form a basis of subspace {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Check general position: for *every* point `a` of the closed box
/// (zeros included), the prefix span must attain the proven upper bound.
pub fn certify_general_position(arr: &Arrangement, f: &GenericBases) -> Result<bool> {
    validate_bases(arr, f)?;
    let rk = compute_rank_function(arr);
    certify_against_rank(&rk, f)
}

fn certify_against_rank(rk: &RankFunction, f: &GenericBases) -> Result<bool> {
    for a in box_points(0, &f.dims()) {
        let w = prefix_vectors(f, &a)?;
        if span_dim(&w)? != prefix_dim_bound(rk, &a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sample integer-coefficient bases for each subspace until the whole
/// collection certifies. Coefficients are drawn uniformly from
/// `[-B, B]` with `B` starting at 10 and doubling per failed attempt, on
/// one continuing deterministic stream. Twenty failures in a row cannot
/// happen over ℚ unless something is broken, so that case is an error.
pub fn sample_generic_bases(arr: &Arrangement, seed: u64) -> Result<GenericBases> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rk = compute_rank_function(arr);
    let dims = arr.dims();
    let mut bound: i64 = 10;
    const ATTEMPTS: u32 = 20;
    for _ in 0..ATTEMPTS {
        let mut vectors = Vec::with_capacity(arr.n());
        for i in 0..arr.n() {
            let di = dims[i];
            let basis = arr.basis(i);
            loop {
                let combo: Vec<Vec<Rat>> = (0..di)
                    .map(|_| {
                        (0..di)
                            .map(|_| Rat::from_integer(rng.random_range(-bound..=bound).into()))
                            .collect()
                    })
                    .collect();
                if span_dim(&combo)? < di {
                    continue;
                }
                let chosen: Vec<Vec<Rat>> = combo
                    .iter()
                    .map(|coeffs| {
                        (0..arr.ambient_dim())
                            .map(|c| {
                                (0..di).map(|r| &coeffs[r] * basis.get(r, c)).sum::<Rat>()
                            })
                            .collect()
                    })
                    .collect();
                vectors.push(chosen);
                break;
            }
        }
        let mut f = GenericBases {
            vectors,
            certified: false,
            seed,
            coefficient_bound: bound,
        };
        if certify_against_rank(&rk, &f)? {
            f.certified = true;
            return Ok(f);
        }
        bound *= 2;
    }
    Err(Error::Genericity {
        attempts: ATTEMPTS,
        seed,
        bound,
    })
}

/// The set `{ i : V_i ⊆ W_a }`, decided by exact membership of every
/// basis vector of `V_i` in the prefix span.
pub fn contained_subspaces(arr: &Arrangement, f: &GenericBases, a: &[usize]) -> Result<Subset> {
    let w = prefix_vectors(f, a)?;
    let mut t: Subset = 0;
    for i in 0..arr.n() {
        let contained = (0..arr.basis(i).rows()).try_fold(true, |acc, r| -> Result<bool> {
            Ok(acc && solve_membership(arr.basis(i).row(r), &w)?.is_some())
        })?;
        if contained {
            t |= 1 << i;
        }
    }
    Ok(t)
}

/// All flats of the rank function: subsets whose rank strictly increases
/// under any proper extension. The full set is always a flat; the empty
/// set is one exactly because every subspace is nonzero.
pub fn flats(rk: &RankFunction) -> Vec<Subset> {
    let n = rk.n();
    let mut out: Vec<Subset> = (0..1u32 << n)
        .filter(|&b| {
            (0..n)
                .filter(|i| b & (1 << i) == 0)
                .all(|i| rk.rank(b | (1 << i)) > rk.rank(b))
        })
        .collect();
    out.sort_by_key(|&b| (b.count_ones(), b));
    out
}

/// Parsed form of the JSON input document.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub source: ArrangementSource,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub enum ArrangementSource {
    Explicit {
        ambient_dim: usize,
        subspaces: Vec<Vec<Vec<Rat>>>,
    },
    /// Shorthand requesting a sampled linearly general arrangement of the
    /// given dimensions.
    Generic { ambient_dim: usize, dims: Vec<usize> },
}

impl InputDocument {
    /// Deterministic canonical rendering used for report digests: fixed
    /// field order, every entry as `p/q`.
    pub fn canonical_json(&self) -> String {
        fn rat_str(x: &Rat) -> String {
            format!("{}/{}", x.numer(), x.denom())
        }
        match &self.source {
            ArrangementSource::Explicit {
                ambient_dim,
                subspaces,
            } => {
                let subs: Vec<String> = subspaces
                    .iter()
                    .map(|vectors| {
                        let vs: Vec<String> = vectors
                            .iter()
                            .map(|v| {
                                let es: Vec<String> =
                                    v.iter().map(|x| format!("\"{}\"", rat_str(x))).collect();
                                format!("[{}]", es.join(","))
                            })
                            .collect();
                        format!("[{}]", vs.join(","))
                    })
                    .collect();
                format!(
                    "{{\"ambient_dim\":{},\"subspaces\":[{}],\"seed\":{}}}",
                    ambient_dim,
                    subs.join(","),
                    self.seed
                )
            }
            ArrangementSource::Generic { ambient_dim, dims } => {
                let ds: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                format!(
                    "{{\"generic\":{{\"ambient_dim\":{},\"dims\":[{}]}},\"seed\":{}}}",
                    ambient_dim,
                    ds.join(","),
                    self.seed
                )
            }
        }
    }
}

fn value_as_usize(v: &serde_json::Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(format!("{what} must be a nonnegative integer")))
}

fn value_as_rat(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else {
                Err(Error::parse(format!(
                    "non-integer numeric entry {n}; write fractions as strings like \"1/3\""
                )))
            }
        }
        other => Err(Error::parse(format!("entry {other} is not a rational"))),
    }
}

/// Parse the JSON input document. Two forms are accepted: explicit
/// generator matrices, or the `generic` shorthand with requested
/// dimensions. Rational entries are strings (`"2"`, `"-1/3"`, `"0.5"`) or
/// plain integers.
pub fn parse_input_document(text: &str) -> Result<InputDocument> {
    let root: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::parse("input document must be a JSON object"))?;
    let seed = match obj.get("seed") {
        None => 0,
        Some(v) => v
            .as_u64()
            .ok_or_else(|| Error::parse("seed must be a nonnegative integer"))?,
    };
    if let Some(g) = obj.get("generic") {
        let gobj = g
            .as_object()
            .ok_or_else(|| Error::parse("\"generic\" must be an object"))?;
        let ambient_dim = value_as_usize(
            gobj.get("ambient_dim")
                .ok_or_else(|| Error::parse("generic input needs \"ambient_dim\""))?,
            "ambient_dim",
        )?;
        let dims_v = gobj
            .get("dims")
            .and_then(|d| d.as_array())
            .ok_or_else(|| Error::parse("generic input needs a \"dims\" array"))?;
        let dims = dims_v
            .iter()
            .map(|d| value_as_usize(d, "dims entry"))
            .collect::<Result<Vec<_>>>()?;
        return Ok(InputDocument {
            source: ArrangementSource::Generic { ambient_dim, dims },
            seed,
        });
    }
    let ambient_dim = value_as_usize(
        obj.get("ambient_dim")
            .ok_or_else(|| Error::parse("input needs \"ambient_dim\""))?,
        "ambient_dim",
    )?;
    let subs_v = obj
        .get("subspaces")
        .and_then(|s| s.as_array())
        .ok_or_else(|| Error::parse("input needs a \"subspaces\" array"))?;
    let mut subspaces = Vec::with_capacity(subs_v.len());
    for sub in subs_v {
        let vectors_v = sub
            .as_array()
            .ok_or_else(|| Error::parse("each subspace must be an array of vectors"))?;
        let mut vectors = Vec::with_capacity(vectors_v.len());
        for vec_v in vectors_v {
            let entries_v = vec_v
                .as_array()
                .ok_or_else(|| Error::parse("each vector must be an array of entries"))?;
            let v = entries_v
                .iter()
                .map(value_as_rat)
                .collect::<Result<Vec<_>>>()?;
            vectors.push(v);
        }
        subspaces.push(vectors);
    }
    Ok(InputDocument {
        source: ArrangementSource::Explicit {
            ambient_dim,
            subspaces,
        },
        seed,
    })
}

/// Build the arrangement a document describes; the `generic` shorthand
/// samples a certified linearly general arrangement from the seed.
pub fn load_arrangement(doc: &InputDocument) -> Result<Arrangement> {
    match &doc.source {
        ArrangementSource::Explicit {
            ambient_dim,
            subspaces,
        } => Arrangement::new(*ambient_dim, subspaces.clone()),
        ArrangementSource::Generic { ambient_dim, dims } => {
            crate::sampling::linearly_general(*ambient_dim, dims, doc.seed)
        }
    }
}
