//! Oracles written against plain integer arithmetic mod p, sharing no code
//! with the library beyond reading its data structures.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use msrd::{FieldTower, FqLinearCode, MatrixTuple};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn tower(q: u64, m: usize) -> Arc<FieldTower> {
    Arc::new(FieldTower::for_q(q, m).unwrap())
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero mod a prime")
}

/// Rank over GF(p) by textbook row reduction.
pub fn naive_rank(p: u32, mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn block_rows(t: &MatrixTuple, b: usize) -> Vec<Vec<u32>> {
    let blk = &t.blocks()[b];
    (0..blk.rows()).map(|r| blk.row(r).to_vec()).collect()
}

pub fn naive_weight(p: u32, t: &MatrixTuple) -> usize {
    (0..t.blocks().len()).map(|b| naive_rank(p, block_rows(t, b))).sum()
}

/// Weight histogram of a code over a prime field, by enumerating every
/// coefficient vector.
pub fn naive_distribution(code: &FqLinearCode) -> BTreeMap<usize, u64> {
    let p = code.tower().q();
    assert_eq!(code.tower().e(), 1, "naive oracle needs a prime base field");
    let basis: Vec<Vec<Vec<Vec<u32>>>> = code
        .basis()
        .iter()
        .map(|t| (0..t.blocks().len()).map(|b| block_rows(t, b)).collect())
        .collect();
    let shapes: Vec<(usize, usize)> = code.profile().blocks().to_vec();
    let k = basis.len();
    let total = (p as u64).pow(k as u32);
    let mut hist = BTreeMap::new();
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(k);
        let mut rest = idx;
        for _ in 0..k {
            coeffs.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        let mut w = 0;
        for (b, &(rows, cols)) in shapes.iter().enumerate() {
            let mut acc = vec![vec![0u32; cols]; rows];
            for (c, bt) in coeffs.iter().zip(&basis) {
                if *c == 0 {
                    continue;
                }
                for (ar, br) in acc.iter_mut().zip(&bt[b]) {
                    for (a, x) in ar.iter_mut().zip(br) {
                        *a = (*a + c * x) % p;
                    }
                }
            }
            w += naive_rank(p, acc);
        }
        *hist.entry(w).or_insert(0) += 1;
    }
    hist
}

pub fn naive_min_distance(code: &FqLinearCode) -> usize {
    *naive_distribution(code).keys().find(|&&w| w > 0).expect("nonzero code")
}

/// Largest ambient dimension left after deleting `d - 1` columns in the
/// worst way, by trying every distribution of deletions over the blocks.
pub fn naive_bound(blocks: &[(usize, usize)], d: usize) -> usize {
    fn go(blocks: &[(usize, usize)], left: usize) -> Option<usize> {
        match blocks.split_first() {
            None => (left == 0).then_some(0),
            Some((&(m, n), rest)) => (0..=n.min(left))
                .filter_map(|del| go(rest, left - del).map(|r| r + m * (n - del)))
                .min(),
        }
    }
    go(blocks, d - 1).expect("d - 1 <= total columns")
}

/// `count` random elements of GF(q^m) independent over GF(q).
pub fn independent(tw: &FieldTower, count: usize, rng: &mut ChaCha8Rng) -> Vec<msrd::FieldElement> {
    loop {
        let xs: Vec<_> = (0..count)
            .map(|_| tw.element(rng.gen_range(1..tw.order())).unwrap())
            .collect();
        let rows: Vec<Vec<u32>> = xs.iter().map(|&x| tw.coords(x)).collect();
        if naive_rank(tw.p(), rows) == count {
            return xs;
        }
    }
}

/// Multiplication in GF(p)[x]/(f) on little-endian digit vectors.
pub fn naive_poly_mul(p: u32, f: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let m = f.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (m..2 * m).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &fi) in f.iter().enumerate() {
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + (p - c) * fi % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Every `(q, m)` with `q^m <= limit`.
pub fn towers_upto(limit: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for q in 2..=limit {
        if msrd::gf::prime_power(q).is_none() {
            continue;
        }
        let mut m = 1;
        while q.pow(m as u32) <= limit {
            out.push((q, m));
            m += 1;
        }
    }
    out
}

/// Ring axioms on all pairs, inverses, and agreement with the naive
/// polynomial product when the base field is prime. Triples are checked for
/// associativity and distributivity on the given list.
pub fn check_field(tw: &FieldTower, triples: &[(u64, u64, u64)]) -> Result<(), String> {
    let e = |c: u64| tw.element(c).unwrap();
    let n = tw.order();
    let zero = e(0);
    let one = e(1);
    for a in 0..n {
        let x = e(a);
        if tw.add(x, zero) != x || tw.mul(x, one) != x || tw.add(x, tw.neg(x)) != zero {
            return Err(format!("identity or negation fails at {a}"));
        }
        if a != 0 && tw.mul(x, tw.inv(x).unwrap()) != one {
            return Err(format!("inverse fails at {a}"));
        }
        for b in 0..n {
            let y = e(b);
            if tw.add(x, y) != tw.add(y, x) || tw.mul(x, y) != tw.mul(y, x) {
                return Err(format!("commutativity fails at ({a}, {b})"));
            }
            if tw.e() == 1 {
                let want = naive_poly_mul(tw.p(), tw.ext_modulus(), &tw.digits(x), &tw.digits(y));
                if tw.digits(tw.mul(x, y)) != want {
                    return Err(format!("product ({a}, {b}) disagrees with the naive oracle"));
                }
            }
        }
    }
    for &(a, b, c) in triples {
        let (x, y, z) = (e(a % n), e(b % n), e(c % n));
        if tw.mul(tw.mul(x, y), z) != tw.mul(x, tw.mul(y, z)) || tw.add(tw.add(x, y), z) != tw.add(x, tw.add(y, z)) {
            return Err(format!("associativity fails at ({a}, {b}, {c})"));
        }
        if tw.mul(x, tw.add(y, z)) != tw.add(tw.mul(x, y), tw.mul(x, z)) {
            return Err(format!("distributivity fails at ({a}, {b}, {c})"));
        }
    }
    Ok(())
}

/// All triples when the field is small, `samples` random ones otherwise.
pub fn triples_for(order: u64, samples: usize, rng: &mut ChaCha8Rng) -> Vec<(u64, u64, u64)> {
    if order.pow(3) <= 1 << 18 {
        let r = 0..order;
        r.clone()
            .flat_map(|a| r.clone().flat_map(move |b| (0..order).map(move |c| (a, b, c))))
            .collect()
    } else {
        (0..samples)
            .map(|_| (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order)))
            .collect()
    }
}

/// Norm lands in GF(q), is multiplicative, and every nonzero value of
/// GF(q) has `(q^m - 1)/(q - 1)` preimages.
pub fn check_norm(tw: &FieldTower) -> Result<(), String> {
    let q = tw.q() as u64;
    let n = tw.order();
    let mut fibers = vec![0u64; q as usize];
    for a in 1..n {
        let x = tw.element(a).unwrap();
        let nx = tw.norm(x);
        let v = tw.subfield_value(nx).ok_or(format!("norm of {a} leaves GF(q)"))?;
        fibers[v as usize] += 1;
        for b in 1..n {
            let y = tw.element(b).unwrap();
            if tw.norm(tw.mul(x, y)) != tw.mul(nx, tw.norm(y)) {
                return Err(format!("norm not multiplicative at ({a}, {b})"));
            }
        }
    }
    let want = (n - 1) / (q - 1);
    if fibers[0] != 0 || fibers[1..].iter().any(|&f| f != want) {
        return Err(format!("fiber sizes {fibers:?}, expected {want} each"));
    }
    Ok(())
}

pub fn random_matrix(p: u32, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect()).collect()
}

/// Random disjoint pieces: split rows and columns into random groups and
/// keep a random nonempty subset of the products.
pub fn random_pieces(m: usize, t: usize, rng: &mut ChaCha8Rng) -> Vec<(Vec<usize>, Vec<usize>)> {
    let groups = |len: usize, rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(1..=len);
        let mut g: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..len {
            g[rng.gen_range(0..k)].push(i);
        }
        g.retain(|v| !v.is_empty());
        g
    };
    let (xs, ys) = (groups(m, rng), groups(t, rng));
    let mut pieces = Vec::new();
    for x in &xs {
        for y in &ys {
            if rng.gen_bool(0.7) {
                pieces.push((x.clone(), y.clone()));
            }
        }
    }
    if pieces.is_empty() {
        pieces.push((xs[0].clone(), ys[0].clone()));
    }
    pieces
}

/// `rank(C) <= Σ rank(C[X_s, Y_s])` for `C` supported on the pieces.
pub fn check_subadditivity(p: u32, c: &[Vec<u32>], pieces: &[(Vec<usize>, Vec<usize>)]) -> Result<(), String> {
    let mut masked = vec![vec![0u32; c[0].len()]; c.len()];
    for (x, y) in pieces {
        for &i in x {
            for &j in y {
                masked[i][j] = c[i][j];
            }
        }
    }
    let total: usize = pieces
        .iter()
        .map(|(x, y)| naive_rank(p, x.iter().map(|&i| y.iter().map(|&j| masked[i][j]).collect()).collect()))
        .sum();
    let whole = naive_rank(p, masked);
    if whole > total {
        return Err(format!("rank {whole} exceeds piece ranks {total} for {pieces:?}"));
    }
    Ok(())
}

/// Exhaustive `wt(φ(λ)) >= rank(M(λ))` over `V`, with naive ranks.
pub fn check_phi(tw: &Arc<FieldTower>, partition: &msrd::extenders::MatrixPartition) -> Result<usize, String> {
    let phi = msrd::extenders::phi_build(tw, partition).map_err(|e| e.to_string())?;
    let q = tw.q() as u64;
    let size = q.pow(phi.dim() as u32);
    let lp = msrd::LengthPartition::new(vec![partition.t()], tw.m()).unwrap();
    for idx in 0..size {
        let mut rest = idx;
        let mut lambda = vec![msrd::FieldElement::ZERO; partition.t()];
        for v in &phi.v_basis {
            let c = (rest % q) as u32;
            rest /= q;
            for (l, &x) in lambda.iter_mut().zip(v) {
                *l = tw.add(*l, tw.scale(c, x));
            }
        }
        let image = phi.apply(tw, &lambda).map_err(|e| e.to_string())?;
        let before = naive_weight(tw.p(), &msrd::matrix_repr(tw, &lambda, &lp).unwrap());
        if naive_weight(tw.p(), &image) < before {
            return Err(format!("weight drops at index {idx}"));
        }
    }
    Ok(size as usize)
}

/// Fixed-seed proptest settings; `MSRD_TEST_SEED` overrides the seed.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    let seed = std::env::var("MSRD_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Default::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
