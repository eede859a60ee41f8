//! End-to-end orchestration: superpotential → decomposition → loci →
//! invariants, with JSON-lines records, table rendering, and grouping of
//! algebras into boxes by invariant signature.

use crate::catalog::AlgebraSpec;
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::invariants::{
    base_change, dimdeg_pc, reduced_subscheme, refine_over_extension, singular_subscheme,
    DimDegMultiset, Scheme,
};
use crate::loci::{locus_000, locus_020, locus_101, locus_210, locus_400, Locus};
use crate::polyring::parse_poly;
use crate::scalar::Scalar;
use crate::superpotential::{compute_superpotential, SuperpotentialResult};
use crate::tensor::{Partition, Tensor4};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Zero,
    Nonzero,
    Budget,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub algebra: String,
    pub lambda: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_singular: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<String>,
    pub seed: u64,
}

pub const BUDGET_MARKER: &str = "*****";

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSignature {
    pub algebra: String,
    pub seed: u64,
    pub reports: Vec<LambdaReport>,
}

#[derive(Clone, Debug)]
pub struct PipelineFlags {
    pub seed: u64,
    pub budget_steps: u64,
    pub extend: Option<String>,
    pub auto_extend: bool,
}

impl Default for PipelineFlags {
    fn default() -> Self {
        PipelineFlags {
            seed: 1,
            budget_steps: 50_000_000,
            extend: None,
            auto_extend: false,
        }
    }
}

pub const ALL_LAMBDAS: [Partition; 5] = [
    Partition::P4_,
    Partition::P31,
    Partition::P22,
    Partition::P211,
    Partition::P1111,
];

pub fn lambda_by_label(label: &str) -> Option<Partition> {
    ALL_LAMBDAS.iter().copied().find(|l| l.label() == label)
}

pub fn build_locus(w: &Tensor4, lambda: Partition) -> Result<Option<Locus>> {
    match lambda {
        Partition::P4_ => Ok(Some(locus_400(w))),
        Partition::P22 => locus_020(w).map(Some),
        Partition::P211 => locus_101(w).map(Some),
        Partition::P31 => locus_210(w).map(Some),
        Partition::P1111 => Ok(None),
    }
}

/// Full pipeline for one algebra over a chosen set of partitions.
pub fn run_pipeline(
    spec: &AlgebraSpec,
    lambdas: &[Partition],
    flags: &PipelineFlags,
) -> Result<InvariantSignature> {
    let rel = spec.relation_space()?;
    let sp = compute_superpotential(&rel)?;
    let mut reports = vec![];
    for &l in lambdas {
        reports.push(lambda_report(spec, &sp, l, flags)?);
    }
    Ok(InvariantSignature {
        algebra: spec.name.clone(),
        seed: flags.seed,
        reports,
    })
}

fn lambda_report(
    spec: &AlgebraSpec,
    sp: &SuperpotentialResult,
    lambda: Partition,
    flags: &PipelineFlags,
) -> Result<LambdaReport> {
    let mut report = LambdaReport {
        algebra: spec.name.clone(),
        lambda: lambda.label().to_string(),
        status: Status::Ok,
        scheme: None,
        reduced: None,
        singular: None,
        reduced_singular: None,
        extension: None,
        seed: flags.seed,
    };
    if lambda == Partition::P1111 {
        let c = locus_000(&sp.w);
        report.status = if c.is_zero() {
            Status::Zero
        } else {
            Status::Nonzero
        };
        return Ok(report);
    }
    let locus = build_locus(&sp.w, lambda)?.expect("geometric lambda");
    if locus.zero_flag {
        report.status = Status::Zero;
        return Ok(report);
    }
    let mut x = Scheme::from_locus(&locus).unwrap();
    let mut budget = Budget::new(flags.budget_steps);

    if let Some(minpoly_text) = &flags.extend {
        let coeffs = parse_minpoly(&x, minpoly_text)?;
        x = base_change(&x, &coeffs)?;
        report.extension = Some(render_minpoly(&coeffs));
    } else if flags.auto_extend {
        match refine_over_extension(&x, flags.seed, &mut budget) {
            Ok(refined) => {
                if let Some(m) = &refined.extension {
                    report.extension = Some(render_minpoly(m));
                }
                x = refined.scheme;
            }
            Err(Error::BudgetExceeded { .. }) => {
                report.status = Status::Budget;
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    }

    let mut run = |f: &mut dyn FnMut(&mut Budget) -> Result<DimDegMultiset>,
                   budget: &mut Budget|
     -> (Option<String>, bool) {
        match f(budget) {
            Ok(m) => (Some(m.to_string()), false),
            Err(Error::BudgetExceeded { .. }) => (Some(BUDGET_MARKER.to_string()), true),
            Err(e) => panic!("pipeline failure: {e}"),
        }
    };

    let seed = flags.seed;
    let xc = x.clone();
    let (scheme_m, b1) = run(&mut |b| dimdeg_pc(&xc, seed, b), &mut budget);
    report.scheme = scheme_m;
    let (reduced_m, b2) = run(
        &mut |b| {
            let r = reduced_subscheme(&xc, seed, b)?;
            dimdeg_pc(&r, seed, b)
        },
        &mut budget,
    );
    report.reduced = reduced_m;
    let (sing_m, b3) = run(
        &mut |b| {
            let s = singular_subscheme(&xc, b)?;
            dimdeg_pc(&s, seed, b)
        },
        &mut budget,
    );
    report.singular = sing_m;
    let (rs_m, b4) = run(
        &mut |b| {
            let s = singular_subscheme(&xc, b)?;
            let rs = reduced_subscheme(&s, seed, b)?;
            dimdeg_pc(&rs, seed, b)
        },
        &mut budget,
    );
    report.reduced_singular = rs_m;
    if b1 || b2 || b3 || b4 {
        report.status = Status::Budget;
    }
    Ok(report)
}

fn parse_minpoly(x: &Scheme, text: &str) -> Result<Vec<Scalar>> {
    // univariate in z over the scheme's tower
    let tower = x.tower();
    let zring = crate::polyring::PolyRing::new(&tower, vec![vec!["z"]]);
    let p = parse_poly(&zring, text)?;
    let d = p.terms.iter().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Scalar::zero(&tower); d + 1];
    for (e, c) in &p.terms {
        coeffs[e[0] as usize] = c.clone();
    }
    Ok(coeffs)
}

pub fn render_minpoly(coeffs: &[Scalar]) -> String {
    let mut parts = vec![];
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = format!("{}", c);
        let coef = if cs == "1" && i > 0 {
            String::new()
        } else if cs.contains('+') || cs.contains(" - ") || cs.contains('/') {
            format!("({})*", cs)
        } else {
            format!("{}*", cs)
        };
        let var = match i {
            0 => {
                if coef.is_empty() {
                    "1".to_string()
                } else {
                    coef.trim_end_matches('*').to_string()
                }
            }
            1 => format!("{}z", coef),
            _ => format!("{}z^{}", coef, i),
        };
        parts.push(var);
    }
    parts.join(" + ").replace("+ -", "- ")
}

// ---------------------------------------------------------------------------
// rendering
// ---------------------------------------------------------------------------

pub fn render_table(sig: &InvariantSignature) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra: {}\n", sig.algebra));
    out.push_str(&format!(
        "{:<8} {:<28} {:<28} {:<28} {:<28}\n",
        "lambda", "X", "reduced", "singular", "reduced singular"
    ));
    for r in &sig.reports {
        let cell = |v: &Option<String>| -> String {
            match (&r.status, v) {
                (Status::Zero, _) => "0".to_string(),
                (Status::Nonzero, _) => "nonzero".to_string(),
                (_, Some(s)) => s.clone(),
                (_, None) => String::new(),
            }
        };
        out.push_str(&format!(
            "{:<8} {:<28} {:<28} {:<28} {:<28}\n",
            r.lambda,
            cell(&r.scheme),
            cell(&r.reduced),
            cell(&r.singular),
            cell(&r.reduced_singular)
        ));
        if let Some(e) = &r.extension {
            out.push_str(&format!("         extension: {}\n", e));
        }
    }
    out
}

pub fn render_jsonl(sig: &InvariantSignature) -> String {
    let mut out = String::new();
    for r in &sig.reports {
        out.push_str(&serde_json::to_string(r).expect("serialize"));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// boxes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BoxGroup {
    pub algebras: Vec<String>,
    pub incomparable: bool,
}

/// Group signatures into equivalence classes; signatures with budget markers
/// compare only on their completed entries and are flagged incomparable.
pub fn group_boxes(sigs: &[InvariantSignature]) -> Vec<BoxGroup> {
    let mut keyed: Vec<(String, bool, String)> = sigs
        .iter()
        .map(|s| {
            let mut parts = vec![];
            let mut incomparable = false;
            for r in &s.reports {
                let complete = r.status != Status::Budget;
                if !complete {
                    incomparable = true;
                }
                let cell = |v: &Option<String>| -> String {
                    match (&r.status, v) {
                        (Status::Zero, _) => "0".into(),
                        (Status::Nonzero, _) => "nonzero".into(),
                        (Status::Budget, _) => BUDGET_MARKER.into(),
                        (_, Some(x)) => x.clone(),
                        (_, None) => String::new(),
                    }
                };
                if complete {
                    parts.push(format!(
                        "{}:{}|{}|{}|{}",
                        r.lambda,
                        cell(&r.scheme),
                        cell(&r.reduced),
                        cell(&r.singular),
                        cell(&r.reduced_singular)
                    ));
                }
            }
            parts.sort();
            (s.algebra.clone(), incomparable, parts.join(";"))
        })
        .collect();
    keyed.sort_by(|a, b| a.2.cmp(&b.2).then(a.0.cmp(&b.0)));
    let mut out: Vec<BoxGroup> = vec![];
    let mut keys: Vec<String> = vec![];
    for (name, inc, key) in keyed {
        if let Some(pos) = keys.iter().position(|k| *k == key) {
            out[pos].algebras.push(name);
            out[pos].incomparable |= inc;
        } else {
            keys.push(key);
            out.push(BoxGroup {
                algebras: vec![name],
                incomparable: inc,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_builtin;

    #[test]
    fn polyring_pipeline_zeroes() {
        let spec = load_builtin("polyring").unwrap();
        let sig = run_pipeline(
            &spec,
            &ALL_LAMBDAS,
            &PipelineFlags::default(),
        )
        .unwrap();
        for r in &sig.reports {
            if r.lambda == "000" {
                assert_eq!(r.status, Status::Nonzero);
            } else {
                assert_eq!(r.status, Status::Zero, "lambda {}", r.lambda);
            }
        }
        // determinism: byte-identical JSON on a second run
        let sig2 = run_pipeline(&spec, &ALL_LAMBDAS, &PipelineFlags::default()).unwrap();
        assert_eq!(render_jsonl(&sig), render_jsonl(&sig2));
    }

    #[test]
    fn boxes_grouping() {
        let mk = |name: &str, key: &str| InvariantSignature {
            algebra: name.into(),
            seed: 1,
            reports: vec![LambdaReport {
                algebra: name.into(),
                lambda: "400".into(),
                status: Status::Ok,
                scheme: Some(key.into()),
                reduced: Some(key.into()),
                singular: Some(key.into()),
                reduced_singular: Some(key.into()),
                extension: None,
                seed: 1,
            }],
        };
        let sigs = vec![mk("a", "[2,1]"), mk("b", "[2,2]"), mk("c", "[2,1]")];
        let boxes = group_boxes(&sigs);
        assert_eq!(boxes.len(), 2);
        let sizes: Vec<usize> = boxes.iter().map(|b| b.algebras.len()).collect();
        assert!(sizes.contains(&2) && sizes.contains(&1));
    }
}
