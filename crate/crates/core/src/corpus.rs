//! Runs the verification suite over the catalog and a directory of input
//! files, producing a deterministic summary.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{CatalogEntry, CATALOG_FILES};
use crate::error::Error;
use crate::format::Spec;
use crate::fp1::{
    bi_fp_report, cs_fp1_certificate, kobayashi_agreement, kobayashi_check, minimal_ideal_certificate_transfer,
    minimal_ru_genset, semilattice_fp_report,
};
use crate::report::SCHEMA_VERSION;
use crate::resolution::{resolve, resolve_monoid, verify_exact, with_top_generators, MonoidRing};
use crate::semigroup::{idempotents, minimal_ideal, ElementSet, FiniteSemigroup};
use crate::transfer::{completely_simple_pipeline, ideal_lift, maximal_subgroup_restrict};

/// Seed for the sampled criterion check on monoids above the exhaustive limit.
const AGREEMENT_SEED: u64 = 0x5eed;
const AGREEMENT_SAMPLES: usize = 256;
/// Largest witness size searched for.
const WITNESS_CAP: usize = 4;
/// Longest length used for the completely simple pipeline, whose output
/// ranks grow quadratically in the degree.
const PIPELINE_LENGTH_CAP: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub name: String,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid_order: Option<usize>,
    pub ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_witness: Option<Vec<String>>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub schema: u32,
    pub length: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
    pub cases: Vec<CaseSummary>,
}

fn zero_of(s: &FiniteSemigroup) -> Option<usize> {
    s.elements().find(|&z| s.elements().all(|x| s.mul(z, x) == z && s.mul(x, z) == z))
}

fn checks_for(entry: &CatalogEntry, n: usize, case: &mut CaseSummary) -> Result<(), Error> {
    let u = &entry.semigroup;
    let m = Arc::new(entry.monoid());
    case.monoid_order = Some(m.order());
    let mut check = |name: &str, ok: bool| {
        case.checks.insert(name.to_string(), ok);
    };

    let res = resolve_monoid(&m, n)?;
    check("resolution_exact", verify_exact(&res).all_pass());
    let ranks = res.ranks();

    let agreement = kobayashi_agreement(&m, AGREEMENT_SAMPLES, AGREEMENT_SEED)?;
    check("kobayashi_agreement", agreement.disagreements.is_empty());
    let all: ElementSet = m.elements().collect();
    check("whole_monoid_witness", kobayashi_check(&m, &all)?.passes());
    let minimal = minimal_ru_genset(&m, WITNESS_CAP.min(m.order()))?;
    let transfer = minimal_ideal_certificate_transfer(&m, minimal.as_ref().map_or(&all, |w| &w.subset))?;
    check("minimal_ideal_transfer", transfer.witness.passes());

    if let Some(z) = zero_of(&m).filter(|_| m.order() > 1) {
        let ring = Arc::new(MonoidRing::sub(m.clone(), &[z].into(), z)?);
        let lifted = ideal_lift(&with_top_generators(&resolve(ring, n, None)?)?)?;
        check("ideal_lift_from_zero", lifted.report.passed);
    }

    if entry.is_completely_simple() {
        check("cs_fp1_certificate", cs_fp1_certificate(u)?.passed);
        let run = completely_simple_pipeline(u, n.min(PIPELINE_LENGTH_CAP))?;
        check("completely_simple_pipeline", run.report.passed);
        let j = minimal_ideal(&m);
        let e = *idempotents(&m).iter().find(|x| j.contains(x)).expect("the minimal ideal has an idempotent");
        let restricted = maximal_subgroup_restrict(&with_top_generators(&res)?, e)?;
        check("maximal_subgroup_restrict", restricted.report.passed);
    }

    if let Spec::Semilattice(data) = &entry.spec {
        let r = semilattice_fp_report(data, n)?;
        check("semilattice_lift", r.passed && r.verdicts_agree);
    }

    check("bi_fp", bi_fp_report(&m, n)?.bi_fp);
    case.ranks = ranks;
    case.minimal_witness = minimal.map(|w| w.names);
    Ok(())
}

/// Parses `text` and runs every applicable check at length `n`.
pub fn run_case(name: &str, source: &str, text: &str, n: usize) -> CaseSummary {
    let mut case = CaseSummary {
        name: name.to_string(),
        source: source.to_string(),
        kind: None,
        monoid_order: None,
        ranks: Vec::new(),
        minimal_witness: None,
        checks: BTreeMap::new(),
        error: None,
        passed: false,
    };
    let outcome = CatalogEntry::parse(name, text).map_err(Error::from).and_then(|entry| {
        case.kind = Some(entry.spec.kind().to_string());
        checks_for(&entry, n, &mut case)
    });
    if let Err(e) = outcome {
        case.error = Some(e.to_string());
    }
    case.passed = case.error.is_none() && case.checks.values().all(|&ok| ok);
    case
}

/// Runs the catalog plus every regular file in `dir`, in name order.
pub fn corpus_run(dir: Option<&Path>, n: usize) -> Result<CorpusSummary, Error> {
    let mut inputs: Vec<(String, String, String)> =
        CATALOG_FILES.iter().map(|(name, text)| (name.to_string(), "catalog".to_string(), text.to_string())).collect();
    if let Some(dir) = dir {
        for item in std::fs::read_dir(dir)? {
            let path = item?.path();
            if !path.is_file() {
                continue;
            }
            let name = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
            // unreadable files become failing cases rather than aborting the run
            let text = std::fs::read_to_string(&path).unwrap_or_default();
            inputs.push((name, "file".to_string(), text));
        }
    }
    inputs.sort();
    let cases: Vec<CaseSummary> = inputs.iter().map(|(name, source, text)| run_case(name, source, text, n)).collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    Ok(CorpusSummary {
        schema: SCHEMA_VERSION,
        length: n,
        total: cases.len(),
        passed,
        failed: cases.len() - passed,
        all_passed: passed == cases.len(),
        cases,
    })
}
