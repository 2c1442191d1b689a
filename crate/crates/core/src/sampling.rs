//! Seeded arrangement samplers: linearly general arrangements of
//! prescribed dimensions (used by the `generic` input shorthand) and a
//! mixed generator for test suites that deliberately produces repeated
//! and nested subspaces.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{compute_rank_function, Arrangement};
use crate::combi::members;
use crate::error::{Error, Result};
use crate::linalg::{span_dim, Rat};

fn random_vectors(
    rng: &mut ChaCha8Rng,
    count: usize,
    dim: usize,
    bound: i64,
) -> Vec<Vec<Rat>> {
    loop {
        let vectors: Vec<Vec<Rat>> = (0..count)
            .map(|_| {
                (0..dim)
                    .map(|_| Rat::from_integer(rng.random_range(-bound..=bound).into()))
                    .collect()
            })
            .collect();
        if span_dim(&vectors).expect("uniform dimension") == count {
            return vectors;
        }
    }
}

/// Sample an arrangement with `rk(A) = min(Σ_{i∈A} d_i, d)` for every
/// subset: as unconstrained as the ambient space allows. Coefficients are
/// integers in `[-B, B]` with `B` doubling on failure; twenty failures
/// mean a bug, not bad luck.
pub fn linearly_general(ambient_dim: usize, dims: &[usize], seed: u64) -> Result<Arrangement> {
    if dims.is_empty() {
        return Err(Error::input("at least one subspace dimension is required"));
    }
    if dims.contains(&0) {
        return Err(Error::input("subspace dimensions must be positive"));
    }
    if dims.iter().any(|&d| d > ambient_dim) {
        return Err(Error::input(
            "subspace dimension exceeds the ambient dimension",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: i64 = 10;
    const ATTEMPTS: u32 = 20;
    for _ in 0..ATTEMPTS {
        let subspaces: Vec<Vec<Vec<Rat>>> = dims
            .iter()
            .map(|&di| random_vectors(&mut rng, di, ambient_dim, bound))
            .collect();
        let arr = Arrangement::new(ambient_dim, subspaces)?;
        let rk = compute_rank_function(&arr);
        let general = (1..1u32 << dims.len()).all(|mask| {
            let sum: usize = members(mask).iter().map(|&i| dims[i]).sum();
            rk.rank(mask) == sum.min(ambient_dim)
        });
        if general {
            return Ok(arr);
        }
        bound *= 2;
    }
    Err(Error::Genericity {
        attempts: ATTEMPTS,
        seed,
        bound,
    })
}

/// Deterministic mixed test arrangements: up to four subspaces of
/// dimension at most three in ambient dimension at most six, with
/// repeated and nested subspaces appearing regularly.
pub fn random_arrangement(seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1));
    let n = rng.random_range(1..=4usize);
    let d = rng.random_range(2..=6usize);
    let mut subspaces: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mode = if i == 0 { 0 } else { rng.random_range(0..4u32) };
        let sub = match mode {
            // repeat an earlier subspace verbatim
            1 => subspaces[rng.random_range(0..i)].clone(),
            // nest strictly inside an earlier subspace when possible
            2 => {
                let donor = &subspaces[rng.random_range(0..i)];
                let keep = rng.random_range(1..=donor.len());
                donor[..keep].to_vec()
            }
            _ => {
                let di = rng.random_range(1..=3.min(d));
                random_vectors(&mut rng, di, d, 3)
            }
        };
        subspaces.push(sub);
    }
    Arrangement::new(d, subspaces).expect("sampler produces valid arrangements")
}
