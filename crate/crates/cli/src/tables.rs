//! Table outputs for the non-verify subcommands: growth and distortion
//! profiles, filling-scale experiments, root-system inspection, and the
//! exponent-sequence reports. Each renders to CSV (fixed column contracts)
//! or deterministic JSON.

use crate::config::UsageError;
use crate::suites::f9;
use coarse_toolkit::asymptotics::{
    extension_impossibility, phi_family_report, verify_beta_conditions, BetaSequence, PhiFamily,
};
use coarse_toolkit::filling::{filling_scaling_experiment, ScalingFamily};
use coarse_toolkit::rational::rat_str;
use coarse_toolkit::spaces::{growth_table, horosphere_gap, EmbeddingMap, ModelSpace, Point};
use coarse_toolkit::weyl::RootSystem;
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

fn to_json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("table serializes");
    s.push('\n');
    s
}

/// `spaces growth`: ε-volume bounds per radius. CSV columns `r,lower,upper`.
pub fn growth(
    space: &ModelSpace,
    eps: f64,
    rmax: u32,
    format: TableFormat,
) -> Result<String, UsageError> {
    let radii: Vec<u32> = (0..=rmax).collect();
    let table =
        growth_table(space, eps, &radii).map_err(|e| UsageError(format!("growth: {e}")))?;
    match format {
        TableFormat::Csv => {
            let mut out = String::from("r,lower,upper\n");
            for row in &table.rows {
                out.push_str(&format!("{},{},{}\n", row.r, row.lower, row.upper));
            }
            Ok(out)
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| json!({"r": row.r, "lower": row.lower, "upper": row.upper}))
                .collect();
            Ok(to_json_line(&json!({
                "table": "growth",
                "space": space.name(),
                "eps": f9(eps),
                "rows": rows,
            })))
        }
    }
}

/// `spaces distort`: image distance vs 2·ln r along a doubling radius
/// ladder. CSV columns `r,d_image,2ln_r,gap`.
pub fn distort(map: &EmbeddingMap, rmax: u64, format: TableFormat) -> Result<String, UsageError> {
    let source_dim = match map {
        EmbeddingMap::Horosphere { n } => *n,
        _ => {
            return Err(UsageError(
                "distortion table is defined for horosphere maps (horo1, horo2, horo3)"
                    .to_string(),
            ))
        }
    };
    let mut radii: Vec<u64> = Vec::new();
    let mut r = 1u64;
    while r <= rmax {
        radii.push(r);
        r *= 2;
    }
    if *radii.last().unwrap_or(&0) != rmax {
        radii.push(rmax);
    }
    let point = |k: u64| {
        let mut coords = vec![0i64; source_dim];
        coords[0] = k as i64;
        Point::lattice(&coords)
    };
    let mut rows = Vec::new();
    for &r in &radii {
        let d = map
            .image_distance(&point(0), &point(r))
            .map_err(|e| UsageError(format!("distort: {e}")))?;
        let two_ln = 2.0 * (r as f64).ln();
        rows.push((r, d, two_ln, horosphere_gap(r as f64)));
    }
    match format {
        TableFormat::Csv => {
            let mut out = String::from("r,d_image,2ln_r,gap\n");
            for (r, d, two_ln, gap) in &rows {
                out.push_str(&format!("{},{},{},{}\n", r, f9(*d), f9(*two_ln), f9(*gap)));
            }
            Ok(out)
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(r, d, two_ln, gap)| {
                    json!({"r": r, "d_image": f9(*d), "2ln_r": f9(*two_ln), "gap": f9(*gap)})
                })
                .collect();
            Ok(to_json_line(&json!({
                "table": "distort",
                "map": map.name(),
                "rows": rows,
            })))
        }
    }
}

/// `filling scale`: fill mass per cycle size on a doubling ladder from
/// lmin to lmax. CSV columns `ell,fill_mass`.
pub fn scale(
    family: ScalingFamily,
    lmin: u64,
    lmax: u64,
    format: TableFormat,
) -> Result<String, UsageError> {
    if lmin == 0 || lmin > lmax {
        return Err(UsageError("need 0 < lmin <= lmax".to_string()));
    }
    let mut sizes = Vec::new();
    let mut ell = lmin;
    while ell <= lmax {
        sizes.push(ell);
        ell *= 2;
    }
    if *sizes.last().unwrap() != lmax {
        sizes.push(lmax);
    }
    let table = filling_scaling_experiment(family, &sizes)
        .map_err(|e| UsageError(format!("scale: {e}")))?;
    match format {
        TableFormat::Csv => {
            let mut out = String::from("ell,fill_mass\n");
            for row in &table.rows {
                out.push_str(&format!("{},{}\n", row.ell as u64, row.fill_mass as u64));
            }
            Ok(out)
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| json!({"ell": row.ell as u64, "fill_mass": row.fill_mass as u64}))
                .collect();
            Ok(to_json_line(&json!({
                "table": "scale",
                "family": match family {
                    ScalingFamily::Z2Rectangles => "z2",
                    ScalingFamily::TreeEndpoints => "tree",
                },
                "exponent": table.exponent.map(f9),
                "rows": rows,
            })))
        }
    }
}

/// `weyl inspect`: the root system's exact data as JSON.
pub fn inspect(rs: &RootSystem) -> String {
    let vecs = |vs: &[coarse_toolkit::chain_calculus::Vector]| -> Vec<Vec<String>> {
        vs.iter()
            .map(|v| v.coords().iter().map(rat_str).collect())
            .collect()
    };
    let gram: Vec<Vec<String>> = rs
        .basis_gram()
        .iter()
        .map(|row| row.iter().map(rat_str).collect())
        .collect();
    let sg = coarse_toolkit::weyl::sector_generators(rs).expect("supported system");
    to_json_line(&json!({
        "table": "weyl-inspect",
        "label": rs.label(),
        "ambient_dim": rs.ambient_dim(),
        "rank": rs.rank(),
        "root_count": rs.roots().len(),
        "simple_basis": vecs(rs.simple_basis()),
        "sector_generators": vecs(sg.generators()),
        "basis_gram": gram,
    }))
}

/// `asym beta`: the generated sequence with its condition and
/// impossibility reports.
pub fn beta(seq: &BetaSequence) -> String {
    let conditions = verify_beta_conditions(seq);
    let imp = extension_impossibility(seq);
    let rows: Vec<serde_json::Value> = conditions
        .rows
        .iter()
        .map(|r| {
            json!({
                "p": r.p,
                "positivity": r.positivity,
                "monotonicity": r.monotonicity,
                "recursion": r.recursion,
                "admissibility": r.admissibility,
                "strictness": r.strictness,
            })
        })
        .collect();
    let rstr = |xs: &[coarse_toolkit::rational::Rat]| -> Vec<String> {
        xs.iter().map(rat_str).collect()
    };
    to_json_line(&json!({
        "table": "asym-beta",
        "k": seq.len(),
        "raw": rstr(seq.raw()),
        "normalized": rstr(seq.normalized()),
        "partial_sums": rstr(seq.partial_sums()),
        "scale_constant": rat_str(&seq.scale_constant()),
        "conditions": rows,
        "all_pass": conditions.all_pass,
        "impossibility": {
            "differences": rstr(&imp.differences),
            "strictly_increasing": imp.strictly_increasing,
            "factorial_pattern": imp.factorial_pattern,
            "remark_holds": imp.remark_holds,
            "lower_bound": rat_str(&imp.lower_bound),
        },
    }))
}

/// `asym phi`: the φ-family profile over a grid.
pub fn phi(family: &PhiFamily, k: usize, grid: &[f64], label: &str) -> Result<String, UsageError> {
    let report =
        phi_family_report(family, k, grid).map_err(|e| UsageError(format!("phi: {e}")))?;
    let rows: Vec<serde_json::Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "d": f9(row.d),
                "phi": row.phi.iter().map(|x| f9(*x)).collect::<Vec<_>>(),
                "consecutive_ratios": row
                    .consecutive_ratios
                    .iter()
                    .map(|x| f9(*x))
                    .collect::<Vec<_>>(),
                "product_ratios": row
                    .product_ratios
                    .iter()
                    .map(|(p, v)| json!({"p": p, "ratio": f9(*v)}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let verdicts: Vec<serde_json::Value> = report
        .product_decreasing_tail
        .iter()
        .map(|(p, ok)| json!({"p": p, "decreasing_tail": ok}))
        .collect();
    Ok(to_json_line(&json!({
        "table": "asym-phi",
        "family": label,
        "k": k,
        "rows": rows,
        "phi_increasing": report.phi_increasing,
        "ratios_decreasing_tail": report.ratios_decreasing_tail,
        "product_decreasing_tail": verdicts,
        "demonstrated": report.demonstrated,
    })))
}
