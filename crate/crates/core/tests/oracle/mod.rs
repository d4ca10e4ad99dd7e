//! Brute-force references for the integration tests. Everything here goes
//! through dense matrices built with Kronecker products, never through the
//! library's bit-twiddling paths.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `photon ⊗ spin₀ ⊗ …`, each amplitude computed from its decoded bits.
pub fn kron_reference(photon: [C64; 2], spins: &[[C64; 2]]) -> Vec<C64> {
    let n = spins.len();
    (0..1usize << (n + 1))
        .map(|idx| {
            let p = (idx >> n) & 1;
            spins
                .iter()
                .enumerate()
                .fold(photon[p], |acc, (k, s)| acc * s[(idx >> (n - 1 - k)) & 1])
        })
        .collect()
}

fn eye(d: usize) -> DMatrix<C64> {
    DMatrix::identity(d, d)
}

fn proj(bit: usize) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(2, 2);
    m[(bit, bit)] = c(1.0, 0.0);
    m
}

/// `photon_op ⊗ I ⊗ … ⊗ spin_op(at k) ⊗ … ⊗ I` over `n` spins.
fn embed(photon_op: &DMatrix<C64>, spin_op: &DMatrix<C64>, n: usize, k: usize) -> DMatrix<C64> {
    let mut m = photon_op.clone();
    for j in 0..n {
        let factor = if j == k { spin_op.clone() } else { eye(2) };
        m = m.kronecker(&factor);
    }
    m
}

/// Hot-sector projector `|L⟩⟨L|⊗|↑⟩⟨↑|_k + |R⟩⟨R|⊗|↓⟩⟨↓|_k`.
pub fn hot_projector(n: usize, k: usize) -> DMatrix<C64> {
    embed(&proj(1), &proj(0), n, k) + embed(&proj(0), &proj(1), n, k)
}

/// `exp(iφ H)` for the diagonal projector `H`.
pub fn ideal_gate(n: usize, k: usize, phi: f64) -> DMatrix<C64> {
    let h = hot_projector(n, k);
    let dim = h.nrows();
    let mut u = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        u[(i, i)] = (c(0.0, phi) * h[(i, i)]).exp();
    }
    u
}

/// `r·H + r₀·(I − H)`.
pub fn physical_gate(n: usize, k: usize, r: C64, r0: C64) -> DMatrix<C64> {
    let h = hot_projector(n, k);
    let dim = h.nrows();
    h.map(|x| x * r) + (eye(dim) - hot_projector(n, k)).map(|x| x * r0)
}

pub fn apply(m: &DMatrix<C64>, v: &[C64]) -> Vec<C64> {
    let out = m * DVector::from_column_slice(v);
    out.iter().copied().collect()
}

/// `(⟨b| ⊗ I) |ψ⟩`, unnormalized.
pub fn photon_overlap(state: &[C64], basis: [C64; 2], n: usize) -> Vec<C64> {
    let bra = DMatrix::from_row_slice(1, 2, &[basis[0].conj(), basis[1].conj()]);
    let m = bra.kronecker(&eye(1 << n));
    apply(&m, state)
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

pub fn normalized(v: &[C64]) -> Vec<C64> {
    let s = norm_sqr(v).sqrt();
    v.iter().map(|a| a / s).collect()
}

/// Reduced density matrix of the spins in `keep`, built by explicit sums.
pub fn reduced_density(state: &[C64], n: usize, keep: &[usize]) -> DMatrix<C64> {
    let bits = |idx: usize, set: &[usize]| {
        set.iter()
            .fold(0usize, |acc, &k| (acc << 1) | ((idx >> (n - 1 - k)) & 1))
    };
    let rest: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let d = 1 << keep.len();
    let mut rho = DMatrix::zeros(d, d);
    for (i, a) in state.iter().enumerate() {
        for (j, b) in state.iter().enumerate() {
            if bits(i, &rest) == bits(j, &rest) {
                rho[(bits(i, keep), bits(j, keep))] += a * b.conj();
            }
        }
    }
    rho
}

/// Entropy from diagonalizing the reduced density matrix.
pub fn entropy_by_eigen(state: &[C64], n: usize, keep: &[usize]) -> f64 {
    let rho = reduced_density(&normalized(state), n, keep);
    let eig = SymmetricEigen::new(rho);
    eig.eigenvalues
        .iter()
        .filter(|&&p| p > 1e-300)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Wootters' pure-state form `|⟨ψ|σy⊗σy|ψ*⟩|`.
pub fn concurrence_spin_flip(state: &[C64]) -> f64 {
    let psi = normalized(state);
    let sy = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    let flip = sy.kronecker(&sy);
    let conj: Vec<C64> = psi.iter().map(|a| a.conj()).collect();
    let flipped = apply(&flip, &conj);
    psi.iter()
        .zip(&flipped)
        .map(|(a, b)| a.conj() * b)
        .sum::<C64>()
        .norm()
}

pub fn overlap_fidelity(a: &[C64], b: &[C64]) -> f64 {
    let ov: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    ov.norm_sqr() / (norm_sqr(a) * norm_sqr(b))
}

/// Dense simulation of the whole chain.
pub fn chain_dense(photon: [C64; 2], spins: &[[C64; 2]], gates: &[DMatrix<C64>]) -> Vec<C64> {
    let mut v = normalized(&kron_reference(photon, spins));
    for g in gates {
        v = apply(g, &v);
    }
    v
}

/// Random normalized spin amplitudes.
pub fn random_spin<R: Rng>(rng: &mut R) -> [C64; 2] {
    loop {
        let mut u = || rng.gen_range(-1.0..1.0);
        let v = [c(u(), u()), c(u(), u())];
        let n = norm_sqr(&v);
        if n > 1e-3 {
            let s = n.sqrt();
            return [v[0] / s, v[1] / s];
        }
    }
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
