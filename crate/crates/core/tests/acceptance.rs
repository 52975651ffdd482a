//! One PASS/FAIL line per acceptance criterion. Distances, dimensions and
//! bounds are recomputed by the naive oracles in `common`; the library's own
//! verdicts are only compared against them.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use msrd::combiners::{glue_bases, stack_product, GlueSpec, StackSpec};
use msrd::extenders::{
    build_lattice_t2, build_lattice_t3, check_one_weight, extend_lattice, extend_systematic, lattice_distances,
    MatrixPartition,
};
use msrd::format::CodeFile;
use msrd::msrd_gen::{build_lrs, build_msrd, select_beta, validate_beta};
use msrd::sumrank::bound_in_order;
use msrd::{singleton_bound, BlockProfile, FqLinearCode, FqmLinearCode, LengthPartition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;
const SUITE_LIMIT: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;
/// Id, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Naive distance, dimension and bound; fails unless the code meets the bound
/// with the expected values and the library agrees.
fn certify(code: &FqLinearCode, d: usize, dim: usize, codewords: u64) -> Outcome {
    let dist = naive_distribution(code);
    let total: u64 = dist.values().sum();
    ensure(total == codewords, || format!("enumerated {total} codewords, expected {codewords}"))?;
    let nd = *dist.keys().find(|&&w| w > 0).unwrap();
    let bound = naive_bound(code.profile().blocks(), nd);
    ensure((nd, code.dim(), bound) == (d, dim, dim), || {
        format!("got d={nd} dim={} bound={bound}, expected d={d} dim={dim} bound={dim}", code.dim())
    })?;
    let cert = code.is_msrd().map_err(|e| e.to_string())?;
    ensure(cert.d == nd && cert.bound == bound && cert.msrd, || format!("library certificate {cert} disagrees"))?;
    Ok(format!("d={nd} dim={dim} bound={bound} over {total} codewords"))
}

fn gf9() -> Arc<msrd::FieldTower> {
    tower(3, 2)
}

fn lrs_fq() -> FqLinearCode {
    build_lrs(&gf9(), 2, 2).unwrap().to_fq_linear()
}

fn c1_base_lrs() -> Outcome {
    certify(&lrs_fq(), 3, 4, 81)
}

fn c2_general_mu2() -> Outcome {
    let tw = gf9();
    let beta = select_beta(&tw, 2, 1, 2).map_err(|e| e.to_string())?;
    validate_beta(&tw, &beta).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<u32>> = beta.beta.iter().map(|&b| tw.coords(b)).collect();
    ensure(naive_rank(3, rows) == 2, || "H_1 and H_2 intersect".into())?;
    let code = build_msrd(&tw, 2, 1, 2).map_err(|e| e.to_string())?.to_fq_linear();
    let line = certify(&code, 3, 4, 81)?;
    let codes: Vec<u32> = beta.beta.iter().map(|b| b.code()).collect();
    Ok(format!("beta={codes:?} {line}"))
}

fn c3_stack() -> Outcome {
    let code = stack_product(&StackSpec::new(vec![lrs_fq(), lrs_fq()]).map_err(|e| e.to_string())?);
    ensure(code.profile().blocks() == [(4, 2), (4, 2)], || format!("profile {}", code.profile()))?;
    certify(&code, 3, 8, 6561)
}

/// Full-distance line on one `m × m` block and a line on an `m × n` block.
fn random_glue(rng: &mut ChaCha8Rng) -> (FqLinearCode, FqLinearCode) {
    let &(q, m) = [(2u64, 2usize), (2, 3), (3, 2), (5, 2)].choose(rng).unwrap();
    let tw = tower(q, m);
    let line = |n: usize, rng: &mut ChaCha8Rng| {
        let g = vec![independent(&tw, n, rng)];
        let c = FqmLinearCode::new(tw.clone(), LengthPartition::new(vec![n], m).unwrap(), g)
            .unwrap()
            .to_fq_linear();
        let mut order: Vec<usize> = (0..c.dim()).collect();
        order.shuffle(rng);
        c.with_basis_order(&order).unwrap()
    };
    let c1 = line(m, rng);
    let n2 = rng.gen_range(1..=m);
    (c1, line(n2, rng))
}

fn c4_glue() -> Outcome {
    let tw = gf9();
    let line = |g: Vec<u64>| {
        let g = vec![g.into_iter().map(|c| tw.element(c).unwrap()).collect()];
        FqmLinearCode::new(tw.clone(), LengthPartition::new(vec![2], 2).unwrap(), g)
            .unwrap()
            .to_fq_linear()
    };
    let (a, b) = (line(vec![1, 3]), line(vec![1, 4]));
    let full = glue_bases(&GlueSpec::new(a, b).map_err(|e| e.to_string())?);
    let line = certify(&full, 4, 2, 9)?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let trials = 120;
    for i in 0..trials {
        let (c1, c2) = random_glue(&mut rng);
        let (d1, d2) = (naive_min_distance(&c1), naive_min_distance(&c2));
        let g = glue_bases(&GlueSpec::new(c1, c2).unwrap());
        let d = naive_min_distance(&g);
        ensure(d >= d1 + d2, || format!("trial {i}: d={d} < {d1}+{d2}"))?;
    }
    Ok(format!("{line}; {trials} random glues keep d >= d1+d2"))
}

fn lattice_line(spec: &msrd::extenders::LatticeSpec, d: usize) -> Outcome {
    let members = lattice_distances(spec).map_err(|e| e.to_string())?;
    let base_dim = members[0].dim;
    let m = spec.m();
    for mem in &members {
        ensure(mem.distance + mem.subset.len() == d, || format!("member {:?} has d={}", mem.subset, mem.distance))?;
        ensure(mem.dim == base_dim + m * mem.subset.len(), || format!("member {:?} has dim {}", mem.subset, mem.dim))?;
    }
    Ok(format!("{} lattice codes with d=4-|I|", members.len()))
}

fn c5_lattice_t2() -> Outcome {
    let rows = build_lattice_t2(&gf9(), 1, 2, 1).map_err(|e| e.to_string())?;
    let spec = rows.spec(vec![(2, 1), (2, 1)], vec![1, 2]).map_err(|e| e.to_string())?;
    let lat = lattice_line(&spec, 4)?;
    let code = extend_lattice(&spec).map_err(|e| e.to_string())?;
    Ok(format!("{lat}; {}", certify(&code, 4, 6, 729)?))
}

fn c6_lattice_t3() -> Outcome {
    let rows = build_lattice_t3(&tower(2, 3), 1, 3).map_err(|e| e.to_string())?;
    let spec = rows
        .spec(vec![(3, 1), (2, 1), (1, 1), (1, 1)], vec![1, 3, 4])
        .map_err(|e| e.to_string())?;
    let lat = lattice_line(&spec, 4)?;
    let code = extend_lattice(&spec).map_err(|e| e.to_string())?;
    Ok(format!("{lat}; {}", certify(&code, 4, 7, 128)?))
}

fn c7_one_weight() -> Outcome {
    let rows = build_lattice_t2(&tower(2, 2), 1, 2, 0).map_err(|e| e.to_string())?;
    let spec = rows.spec(vec![(2, 1), (2, 1)], vec![1, 2]).map_err(|e| e.to_string())?;
    let code = extend_lattice(&spec).map_err(|e| e.to_string())?;
    let dist = naive_distribution(&code);
    ensure(dist == BTreeMap::from([(0, 1), (3, 15)]), || format!("distribution {dist:?}"))?;
    let rep = check_one_weight(&code, &spec.breakpoints, &rows.beta).map_err(|e| e.to_string())?;
    ensure(rep.criterion && rep.one_weight, || format!("criterion={} oracle={}", rep.criterion, rep.one_weight))?;
    Ok(format!("distribution {} and criterion agree", rep.distribution))
}

fn c8_systematic() -> Outcome {
    let d0 = build_lrs(&gf9(), 2, 2).map_err(|e| e.to_string())?;
    let pieces = MatrixPartition::new(2, 2, vec![(vec![0, 1], vec![0]), (vec![0], vec![1]), (vec![1], vec![1])])
        .map_err(|e| e.to_string())?;
    let code = extend_systematic(&d0, 2, &pieces).map_err(|e| e.to_string())?;
    let line = certify(&code, 3, 4, 81)?;
    let control = extend_systematic(&d0, 2, &MatrixPartition::trivial(2, 2)).map_err(|e| e.to_string())?;
    let (a, b) = (naive_distribution(&control), naive_distribution(&d0.to_fq_linear()));
    ensure(a == b, || format!("trivial partition gives {a:?}, input has {b:?}"))?;
    Ok(format!("{line}; trivial partition reproduces {b:?}"))
}

fn c9_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let towers = towers_upto(256);
    for &(q, m) in &towers {
        let tw = tower(q, m);
        let triples = triples_for(tw.order(), 20_000, &mut rng);
        check_field(&tw, &triples).map_err(|e| format!("GF({q}^{m}): {e}"))?;
    }
    let mut norms = 0;
    for &(q, m) in towers.iter().filter(|&&(q, m)| m > 1 && q.pow(m as u32) <= 81) {
        check_norm(&tower(q, m)).map_err(|e| format!("GF({q}^{m}) norm: {e}"))?;
        norms += 1;
    }

    for _ in 0..300 {
        let &(q, m) = [(2u64, 2usize), (3, 2), (2, 3)].choose(&mut rng).unwrap();
        let tw = tower(q, m);
        let blocks = rng.gen_range(1..=3);
        let parts: Vec<usize> = (0..blocks).map(|_| rng.gen_range(1..=m)).collect();
        let lp = LengthPartition::new(parts.clone(), m).unwrap();
        let draw = |rng: &mut ChaCha8Rng| -> Vec<msrd::FieldElement> {
            (0..lp.length()).map(|_| tw.element(rng.gen_range(0..tw.order())).unwrap()).collect()
        };
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        let sum: Vec<_> = x.iter().zip(&y).map(|(&a, &b)| tw.add(a, b)).collect();
        let wt = |v: &[msrd::FieldElement]| naive_weight(tw.p(), &msrd::matrix_repr(&tw, v, &lp).unwrap());
        ensure(wt(&sum) <= wt(&x) + wt(&y), || "triangle inequality fails".into())?;
        ensure((wt(&x) == 0) == x.iter().all(|&a| a == msrd::FieldElement::ZERO), || "zero weight".into())?;
        let c = rng.gen_range(1..q as u32);
        let scaled: Vec<_> = x.iter().map(|&a| tw.scale(c, a)).collect();
        ensure(wt(&scaled) == wt(&x), || "scaling changes weight".into())?;
        let lib = msrd::sumrank_weight(tw.base(), &msrd::matrix_repr(&tw, &x, &lp).unwrap());
        ensure(lib == wt(&x), || "library weight disagrees".into())?;
        let other = Arc::new(tw.with_basis(independent(&tw, m, &mut rng)).unwrap());
        let w2 = naive_weight(tw.p(), &msrd::matrix_repr(&other, &x, &lp).unwrap());
        ensure(w2 == wt(&x), || "weight depends on the basis".into())?;
    }

    let samples = 1500;
    for _ in 0..samples {
        let p = *[2u32, 3, 5].choose(&mut rng).unwrap();
        let (m, t) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let c = random_matrix(p, m, t, &mut rng);
        let pieces = random_pieces(m, t, &mut rng);
        MatrixPartition::new(m, t, pieces.clone()).map_err(|e| e.to_string())?;
        check_subadditivity(p, &c, &pieces)?;
    }

    let mut phis = 0;
    let partitions = [
        (3, 2, MatrixPartition::new(2, 2, vec![(vec![0, 1], vec![0]), (vec![0], vec![1]), (vec![1], vec![1])]).unwrap()),
        (3, 2, MatrixPartition::trivial(2, 2)),
        (2, 2, MatrixPartition::new(2, 2, vec![(vec![0], vec![0, 1])]).unwrap()),
        (2, 3, MatrixPartition::new(3, 2, vec![(vec![0, 1], vec![0, 1]), (vec![2], vec![0, 1])]).unwrap()),
    ];
    for (q, m, p) in &partitions {
        phis += check_phi(&tower(*q, *m), p)?;
    }

    for _ in 0..300 {
        let len = rng.gen_range(1..=5);
        let mut blocks: Vec<(usize, usize)> = (0..len)
            .map(|_| {
                let m = rng.gen_range(1..=4);
                (m, rng.gen_range(1..=m))
            })
            .collect();
        blocks.sort_by_key(|b| std::cmp::Reverse(b.0));
        let total: usize = blocks.iter().map(|b| b.1).sum();
        let d = rng.gen_range(1..=total);
        let want = naive_bound(&blocks, d);
        let got = singleton_bound(&BlockProfile::new(blocks.clone()).unwrap().canonicalize(), d).unwrap();
        ensure(got == want, || format!("bound of {blocks:?} at d={d}: {got} vs {want}"))?;
        // shuffle within runs of equal row count
        let mut i = 0;
        while i < blocks.len() {
            let j = (i..blocks.len()).find(|&j| blocks[j].0 != blocks[i].0).unwrap_or(blocks.len());
            blocks[i..j].shuffle(&mut rng);
            i = j;
        }
        let again = bound_in_order(&BlockProfile::new(blocks.clone()).unwrap(), d).unwrap();
        ensure(again == got, || format!("bound changes under permutation of {blocks:?}"))?;
    }

    let grid = grid_files();
    for (name, f) in &grid {
        let text = f.serialize();
        let back = CodeFile::parse(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(&back == f && back.serialize() == text, || format!("{name} does not round-trip"))?;
    }

    Ok(format!(
        "{} fields, {norms} norm maps, {samples} partition samples, {phis} vectors in V, {} round trips",
        towers.len(),
        grid.len()
    ))
}

fn grid_files() -> Vec<(&'static str, CodeFile)> {
    let tw = gf9();
    let lrs = build_lrs(&tw, 2, 2).unwrap();
    let t2 = build_lattice_t2(&tw, 1, 2, 1).unwrap();
    let t3 = build_lattice_t3(&tower(2, 3), 1, 3).unwrap();
    vec![
        ("lrs", CodeFile::generator(lrs.clone())),
        ("msrd-general", CodeFile::generator(build_msrd(&tw, 2, 1, 2).unwrap())),
        ("dual", CodeFile::generator(lrs.dual())),
        ("stack", CodeFile::basis(stack_product(&StackSpec::new(vec![lrs_fq(), lrs_fq()]).unwrap()))),
        (
            "cons3-t2",
            CodeFile::basis(extend_lattice(&t2.spec(vec![(2, 1), (2, 1)], vec![1, 2]).unwrap()).unwrap())
                .with_meta("breakpoints", "1,2"),
        ),
        (
            "cons3-t3",
            CodeFile::basis(
                extend_lattice(&t3.spec(vec![(3, 1), (2, 1), (1, 1), (1, 1)], vec![1, 3, 4]).unwrap()).unwrap(),
            ),
        ),
        (
            "cons4",
            CodeFile::basis(extend_systematic(&lrs, 2, &MatrixPartition::trivial(2, 2)).unwrap()),
        ),
    ]
}

fn c10_dual() -> Outcome {
    let dual = build_lrs(&gf9(), 2, 2).unwrap().dual();
    ensure(dual.dim() == 2, || format!("dual has dimension {}", dual.dim()))?;
    let line = certify(&dual.to_fq_linear(), 3, 4, 81)?;
    Ok(format!("GF(9)-dim 2, {line}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "base LRS q=3 m=2 r=2 k=2", 1, c1_base_lrs),
        (2, "general generator mu=2 q=3 m=2 r=1 k=2", 1, c2_general_mu2),
        (3, "stack of two LRS copies", 5, c3_stack),
        (4, "glue of two GF(9) lines", 1, c4_glue),
        (5, "lattice extension t=2", 2, c5_lattice_t2),
        (6, "lattice extension t=3", 1, c6_lattice_t3),
        (7, "one-weight extension q=2", 1, c7_one_weight),
        (8, "systematic extension with three pieces", 1, c8_systematic),
        (9, "property suites (seeded)", 20, c9_properties),
        (10, "dual of the base LRS", 1, c10_dual),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let limit = Duration::from_secs(limit);
        let verdict = match outcome {
            Ok(detail) if took < limit => format!("PASS {detail}"),
            Ok(detail) => format!("FAIL over time limit {limit:?}: {detail}"),
            Err(e) => format!("FAIL {e}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("[{id:>2}] {name}: {verdict} ({:.2}s)", took.as_secs_f64());
    }
    let total = suite.elapsed();
    let ok = total < SUITE_LIMIT;
    if !ok {
        failed += 1;
    }
    println!(
        "[ *] whole suite under {}s: {} ({:.2}s)",
        SUITE_LIMIT.as_secs(),
        if ok { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
