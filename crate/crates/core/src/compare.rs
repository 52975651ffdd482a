//! Sweep over small instances of every construction: build, verify by
//! oracle, and tabulate against the Singleton bound.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::codes::FqLinearCode;
use crate::combiners::{glue_bases, stack_product, GlueSpec, StackSpec};
use crate::error::Result;
use crate::extenders::{build_lattice_t2, build_lattice_t3, extend_lattice, extend_systematic, MatrixPartition};
use crate::gf::FieldTower;
use crate::msrd_gen::{build_lrs, build_msrd};
use crate::sumrank::LengthPartition;
use crate::FqmLinearCode;

/// Default limit on the total number of codewords enumerated by a sweep.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareRow {
    pub construction: String,
    pub q: u32,
    pub profile: String,
    pub blocks: Vec<(usize, usize)>,
    pub dim: usize,
    /// `None` when the row was skipped.
    pub d: Option<usize>,
    pub bound: Option<usize>,
    pub msrd: Option<bool>,
    pub runtime: Duration,
}

impl CompareRow {
    pub fn skipped(&self) -> bool {
        self.d.is_none()
    }
}

struct Instance {
    name: &'static str,
    code: FqLinearCode,
}

fn tower(q: u64, m: usize) -> Result<Arc<FieldTower>> {
    Ok(Arc::new(FieldTower::for_q(q, m)?))
}

/// The fixed instance grid. Each extension family has a row the other
/// cannot produce. The second `cons4` row has a `(2,2)` ext block, 4 cells
/// in one group while lattice groups hold at most `m = 2`. The `cons3-t3`
/// row would need a systematic input on `(3,3) (3,3)` over GF(8) at distance
/// 4, i.e. two trivially intersecting 3-dimensional subspaces of GF(8).
fn instances() -> Result<Vec<Instance>> {
    let gf9 = tower(3, 2)?;
    let gf4 = tower(2, 2)?;
    let gf8 = tower(2, 3)?;
    let lrs9 = build_lrs(&gf9, 2, 2)?;
    let line = FqmLinearCode::new(
        gf9.clone(),
        LengthPartition::new(vec![2], 2)?,
        vec![vec![gf9.element(1)?, gf9.element(3)?]],
    )?
    .to_fq_linear();
    let t2 = build_lattice_t2(&gf9, 1, 2, 1)?;
    let t3 = build_lattice_t3(&gf8, 1, 3)?;
    let ow = build_lattice_t2(&gf4, 1, 2, 0)?;
    let pieces = MatrixPartition::new(2, 2, vec![(vec![0, 1], vec![0]), (vec![0], vec![1]), (vec![1], vec![1])])?;
    Ok(vec![
        Instance { name: "lrs", code: lrs9.to_fq_linear() },
        Instance { name: "lrs", code: build_lrs(&gf8, 3, 1)?.to_fq_linear() },
        Instance { name: "lrs", code: build_lrs(&gf4, 2, 1)?.to_fq_linear() },
        Instance { name: "msrd-general", code: build_msrd(&gf9, 2, 1, 2)?.to_fq_linear() },
        Instance { name: "dual", code: lrs9.dual().to_fq_linear() },
        Instance {
            name: "stack",
            code: stack_product(&StackSpec::new(vec![lrs9.to_fq_linear(), lrs9.to_fq_linear()])?),
        },
        Instance { name: "glue", code: glue_bases(&GlueSpec::new(line.clone(), line)?) },
        Instance {
            name: "cons3-t2",
            code: extend_lattice(&t2.spec(vec![(2, 1), (2, 1)], vec![1, 2])?)?,
        },
        Instance {
            name: "cons3-t2",
            code: extend_lattice(&ow.spec(vec![(2, 1), (2, 1)], vec![1, 2])?)?,
        },
        Instance {
            name: "cons3-t3",
            code: extend_lattice(&t3.spec(vec![(3, 1), (2, 1), (1, 1), (1, 1)], vec![1, 3, 4])?)?,
        },
        Instance { name: "cons4", code: extend_systematic(&lrs9, 2, &pieces)? },
        Instance {
            name: "cons4",
            code: extend_systematic(&build_lrs(&gf9, 2, 3)?, 2, &MatrixPartition::trivial(2, 2))?,
        },
    ])
}

/// Builds and verifies the grid. Rows whose enumeration would push the
/// running total past `budget` (in list order) are skipped. `q_filter`
/// keeps only one base field size. Rows are sorted by `(q, profile)`.
pub fn compare(budget: u128, q_filter: Option<u32>) -> Result<Vec<CompareRow>> {
    let mut spent: u128 = 0;
    let mut plan = Vec::new();
    for inst in instances()? {
        let q = inst.code.tower().q();
        if q_filter.is_some_and(|f| f != q) {
            continue;
        }
        let cost = inst.code.size();
        let run = spent + cost <= budget;
        if run {
            spent += cost;
        }
        plan.push((inst, run));
    }
    let mut rows: Vec<CompareRow> = plan
        .into_par_iter()
        .map(|(inst, run)| {
            let code = &inst.code;
            let mut row = CompareRow {
                construction: inst.name.to_string(),
                q: code.tower().q(),
                profile: code.profile().to_string(),
                blocks: code.profile().blocks().to_vec(),
                dim: code.dim(),
                d: None,
                bound: None,
                msrd: None,
                runtime: Duration::ZERO,
            };
            if run {
                let start = Instant::now();
                let cert = code.is_msrd_with_guard(u128::MAX)?;
                row.runtime = start.elapsed();
                row.d = Some(cert.d);
                row.bound = Some(cert.bound);
                row.msrd = Some(cert.msrd);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| (a.q, &a.blocks, &a.construction).cmp(&(b.q, &b.blocks, &b.construction)));
    Ok(rows)
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "skipped".to_string(), |x| x.to_string())
}

/// Aligned text table; the runtime column only appears with `timings`.
pub fn render_table(rows: &[CompareRow], timings: bool) -> String {
    let mut header = vec!["construction", "q", "profile", "d", "dim", "bound", "msrd"];
    if timings {
        header.push("ms");
    }
    let mut body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![
                r.construction.clone(),
                r.q.to_string(),
                r.profile.clone(),
                cell(r.d),
                r.dim.to_string(),
                cell(r.bound),
                cell(r.msrd),
            ];
            if timings {
                v.push(format!("{:.1}", r.runtime.as_secs_f64() * 1e3));
            }
            v
        })
        .collect();
    body.insert(0, header.iter().map(|s| s.to_string()).collect());
    let widths: Vec<usize> = (0..body[0].len())
        .map(|c| body.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    body.iter()
        .map(|r| {
            let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            line.join("  ").trim_end().to_string() + "\n"
        })
        .collect()
}

pub fn render_csv(rows: &[CompareRow], timings: bool) -> String {
    let mut out = String::from("construction,q,profile,d,dim,bound,msrd");
    if timings {
        out.push_str(",runtime_ms");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},\"{}\",{},{},{},{}",
            r.construction,
            r.q,
            r.profile,
            cell(r.d),
            r.dim,
            cell(r.bound),
            cell(r.msrd)
        ));
        if timings {
            out.push_str(&format!(",{:.3}", r.runtime.as_secs_f64() * 1e3));
        }
        out.push('\n');
    }
    out
}
