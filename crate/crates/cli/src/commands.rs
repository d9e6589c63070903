use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use monores::catalog::catalog_entry;
use monores::corpus::corpus_run;
use monores::format::{cayley_dot, egg_box_dot, parse_spec, Spec};
use monores::fp1::{
    bi_fp_report, cs_fp1_certificate, kobayashi_agreement, minimal_ideal_certificate_transfer, minimal_ru_genset,
    semilattice_fp_report, AgreementReport, CsFp1Certificate, Fp1Witness, MinimalIdealTransfer,
};
use monores::report::{analyze as analyze_semigroup, resolution_report, to_json, Envelope};
use monores::resolution::{resolve as resolve_ring, resolve_monoid, verify_exact, with_top_generators, MonoidRing};
use monores::semigroup::{
    adjoin_identity, idempotents, is_completely_simple, is_two_sided_ideal, minimal_ideal, monoid_completion,
    two_sided_identity_of, ElementSet, FiniteSemigroup,
};
use monores::transfer::{
    completely_simple_pipeline, cs_descend, ideal_lift, left_group_lift, maximal_subgroup_restrict, BundleReport,
    DecompositionContext, TransferBundle, TransferError,
};
use monores::Error;

use crate::{Common, Construction};

/// Kobayashi agreement sampling above the exhaustive limit.
const AGREEMENT_SAMPLES: usize = 256;
const AGREEMENT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Library(#[from] Error),
}

impl From<TransferError> for CommandError {
    fn from(e: TransferError) -> Self {
        CommandError::Library(e.into())
    }
}

/// A rendered report in every format the command supports.
pub struct Output {
    pub passed: bool,
    pub json: String,
    pub text: String,
    pub dot: Option<String>,
}

impl Output {
    fn new<T: Serialize>(command: &str, input: &str, passed: bool, report: T, text: String) -> Self {
        let json = to_json(&Envelope::new(command, Some(input.to_string()), passed, report));
        Output { passed, json, text, dot: None }
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn load(input: &str) -> Result<Spec, CommandError> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog_entry(name)
            .map(|e| e.spec)
            .ok_or_else(|| CommandError::Usage(format!("no catalog entry `{name}`")));
    }
    let text = std::fs::read_to_string(input).map_err(|e| CommandError::Io(format!("{input}: {e}")))?;
    parse_spec(&text).map_err(|e| CommandError::Usage(format!("{input}: {e}")))
}

fn semigroup_of(c: &Common) -> Result<(Spec, FiniteSemigroup), CommandError> {
    let spec = load(&c.input)?;
    let s = spec.semigroup().map_err(|e| CommandError::Usage(format!("{}: {e}", c.input)))?;
    let s = if c.opposite { s.opposite() } else { s };
    Ok((spec, s))
}

fn element(s: &FiniteSemigroup, one_based: usize) -> Result<usize, CommandError> {
    if (1..=s.order()).contains(&one_based) {
        Ok(one_based - 1)
    } else {
        Err(CommandError::Usage(format!("element {one_based} outside 1..={}", s.order())))
    }
}

pub fn analyze(c: &Common) -> Result<Output, CommandError> {
    let (_, s) = semigroup_of(c)?;
    let a = analyze_semigroup(&s);
    let mut text = String::new();
    let _ = writeln!(text, "order: {}", a.order);
    let _ = writeln!(text, "identity: {}", a.identity.as_deref().unwrap_or("none"));
    let _ = writeln!(text, "commutative: {}", a.commutative);
    let _ = writeln!(text, "idempotents: {}", a.idempotents.join(" "));
    for (label, classes) in [("R", &a.r_classes), ("L", &a.l_classes), ("H", &a.h_classes), ("D", &a.d_classes)] {
        let shown: Vec<String> = classes.iter().map(|c| format!("{{{}}}", c.join(" "))).collect();
        let _ = writeln!(text, "{label}-classes ({}): {}", classes.len(), shown.join(" "));
    }
    let _ = writeln!(text, "completely simple: {}", a.completely_simple);
    let _ = writeln!(text, "minimal ideal: {}", a.minimal_ideal.join(" "));
    let mut out = Output::new("analyze", &c.input, true, a, text);
    out.dot = Some(egg_box_dot(&s));
    Ok(out)
}

pub fn resolve(c: &Common) -> Result<Output, CommandError> {
    let (_, s) = semigroup_of(c)?;
    let m = Arc::new(monoid_completion(&s));
    let r = resolution_report(&resolve_monoid(&m, c.length).map_err(Error::from)?);
    let mut text = format!("monoid order: {}\nranks: {:?}\nsurjective: {}\n", r.ring_order, r.ranks, r.surjective);
    for d in &r.degrees {
        let exact = d.exact.map_or("-", pass_word);
        let _ = writeln!(text, "degree {}: rank {} exact {exact}", d.degree, d.rank);
    }
    let _ = writeln!(text, "{}", pass_word(r.exact));
    Ok(Output::new("resolve", &c.input, r.exact, r.clone(), text))
}

#[derive(Debug, Serialize)]
struct TransferOutput {
    input_ranks: Vec<usize>,
    output_ranks: Vec<usize>,
    output_exact: bool,
    bundle: BundleReport,
}

fn bundle_text(b: &BundleReport, input_ranks: &[usize], output_ranks: &[usize], exact: bool) -> String {
    let mut text = format!("construction: {}\n", b.construction);
    for (k, v) in &b.context {
        let _ = writeln!(text, "{k}: {v}");
    }
    let _ = writeln!(text, "input ranks: {input_ranks:?}\noutput ranks: {output_ranks:?}");
    for f in b.failing_checks() {
        let _ = writeln!(text, "failed: {f}");
    }
    let _ = writeln!(text, "{}", pass_word(b.passed && exact));
    text
}

fn transfer_output(input: &str, result: Result<TransferBundle, TransferError>) -> Result<Output, CommandError> {
    let (bundle, input_ranks, output_ranks, exact) = match result {
        Ok(t) => {
            let exact = verify_exact(&t.output).all_pass();
            (t.report, t.input.ranks(), t.output.ranks(), exact)
        }
        // the report of a failed verification is still written
        Err(TransferError::VerificationFailed(report)) => (*report, Vec::new(), Vec::new(), false),
        Err(e) => return Err(e.into()),
    };
    let passed = bundle.passed && exact;
    let text = bundle_text(&bundle, &input_ranks, &output_ranks, exact);
    let report = TransferOutput { input_ranks, output_ranks, output_exact: exact, bundle };
    Ok(Output::new("transfer", input, passed, report, text))
}

/// `U¹` for a completely simple input, otherwise the input itself.
fn u_one(s: &FiniteSemigroup) -> FiniteSemigroup {
    if is_completely_simple(s) {
        adjoin_identity(s)
    } else {
        s.clone()
    }
}

pub fn transfer(
    c: &Common,
    construction: Construction,
    ideal: &[usize],
    idempotent: Option<usize>,
) -> Result<Output, CommandError> {
    let (_, s) = semigroup_of(c)?;
    let n = c.length;
    let chosen = idempotent.map(|e| element(&s, e)).transpose()?;
    match construction {
        Construction::Pipeline => {
            let run = completely_simple_pipeline(&s, n);
            let run = match run {
                Ok(run) => run,
                Err(TransferError::VerificationFailed(_)) => return transfer_output(&c.input, run.map(|r| r.lift)),
                Err(e) => return Err(e.into()),
            };
            let r = run.report;
            let text = format!(
                "group ranks: {:?}\nlift ranks: {:?}\nmonoid ranks: {:?}\ndescent ranks: {:?}\n{}\n",
                r.group_ranks,
                r.lift_ranks,
                r.monoid_ranks,
                r.descent_ranks,
                pass_word(r.passed)
            );
            Ok(Output::new("pipeline", &c.input, r.passed, r.clone(), text))
        }
        Construction::Ideal => {
            let m = Arc::new(monoid_completion(&s));
            let j: ElementSet = if ideal.is_empty() {
                minimal_ideal(&m)
            } else {
                ideal.iter().map(|&x| element(&m, x)).collect::<Result<_, _>>()?
            };
            if !is_two_sided_ideal(&m, &j) {
                return Err(TransferError::NotAnIdeal.into());
            }
            let unit = two_sided_identity_of(&m, &j).ok_or(TransferError::NoTwoSidedIdentity)?;
            let ring = Arc::new(MonoidRing::sub(m.clone(), &j, unit).map_err(Error::from)?);
            let res = resolve_ring(ring, n, None).and_then(|r| with_top_generators(&r)).map_err(Error::from)?;
            transfer_output(&c.input, ideal_lift(&res))
        }
        Construction::Phi => {
            let m = Arc::new(monoid_completion(&s));
            let j = minimal_ideal(&m);
            let e = match chosen {
                Some(e) => e,
                None => *idempotents(&m)
                    .iter()
                    .find(|x| j.contains(x))
                    .ok_or_else(|| CommandError::Usage("the minimal ideal has no idempotent".into()))?,
            };
            let res = resolve_monoid(&m, n).and_then(|r| with_top_generators(&r)).map_err(Error::from)?;
            transfer_output(&c.input, maximal_subgroup_restrict(&res, e))
        }
        Construction::CsDescend => {
            let ctx = DecompositionContext::new(Arc::new(u_one(&s)), chosen)?;
            let res = resolve_monoid(&ctx.s, n).and_then(|r| with_top_generators(&r)).map_err(Error::from)?;
            transfer_output(&c.input, cs_descend(&res, &ctx))
        }
        Construction::LeftGroup => {
            let ctx = DecompositionContext::new(Arc::new(u_one(&s)), chosen)?;
            let res =
                resolve_ring(ctx.h_ring.clone(), n, None).and_then(|r| with_top_generators(&r)).map_err(Error::from)?;
            transfer_output(&c.input, left_group_lift(&res, &ctx))
        }
    }
}

#[derive(Debug, Serialize)]
struct Fp1Output {
    monoid_order: usize,
    minimal_witness: Option<Fp1Witness>,
    agreement: AgreementReport,
    minimal_ideal_transfer: MinimalIdealTransfer,
    #[serde(skip_serializing_if = "Option::is_none")]
    completely_simple: Option<CsFp1Certificate>,
}

pub fn fp1(c: &Common, cap: usize) -> Result<Output, CommandError> {
    let (_, s) = semigroup_of(c)?;
    let m = monoid_completion(&s);
    let lib = |e: monores::fp1::Fp1Error| CommandError::Library(e.into());
    let minimal = minimal_ru_genset(&m, cap.min(m.order())).map_err(lib)?;
    let agreement = kobayashi_agreement(&m, AGREEMENT_SAMPLES, AGREEMENT_SEED).map_err(lib)?;
    let all: ElementSet = m.elements().collect();
    let generators = minimal.as_ref().map_or(&all, |w| &w.subset);
    let transfer = minimal_ideal_certificate_transfer(&m, generators).map_err(lib)?;
    let certificate = if is_completely_simple(&s) { Some(cs_fp1_certificate(&s).map_err(lib)?) } else { None };
    let passed = agreement.disagreements.is_empty()
        && transfer.witness.passes()
        && certificate.as_ref().map_or(true, |c| c.passed);

    let mut text = format!("monoid order: {}\n", m.order());
    match &minimal {
        Some(w) => {
            let _ = writeln!(text, "minimal witness: {{{}}}", w.names.join(" "));
        }
        None => {
            let _ = writeln!(text, "minimal witness: none of size <= {cap}");
        }
    }
    let _ = writeln!(
        text,
        "criterion agreement: {} subsets, {} passing, {} disagreements{}",
        agreement.subsets_checked,
        agreement.passing_subsets,
        agreement.disagreements.len(),
        if agreement.exhaustive { " (exhaustive)" } else { " (sampled)" }
    );
    let _ = writeln!(text, "minimal ideal witness: {{{}}}", transfer.witness.names.join(" "));
    if let Some(cert) = &certificate {
        let _ = writeln!(text, "completely simple certificate: {}", pass_word(cert.passed));
    }
    let _ = writeln!(text, "{}", pass_word(passed));

    let dot = cayley_dot(&m, generators);
    let report = Fp1Output {
        monoid_order: m.order(),
        minimal_witness: minimal,
        agreement,
        minimal_ideal_transfer: transfer,
        completely_simple: certificate,
    };
    let mut out = Output::new("fp1", &c.input, passed, report, text);
    out.dot = Some(dot);
    Ok(out)
}

pub fn semilattice(c: &Common) -> Result<Output, CommandError> {
    let (spec, _) = semigroup_of(c)?;
    let Spec::Semilattice(data) = spec else {
        return Err(CommandError::Usage(format!("{}: not a strong semilattice input", c.input)));
    };
    let r = semilattice_fp_report(&data, c.length).map_err(|e| CommandError::Library(e.into()))?;
    let passed = r.passed && r.verdicts_agree;
    let text = format!(
        "order: {}\nminimum component order: {}\nlift ranks: {:?}\ndirect ranks: {:?}\nverdicts agree: {}\n{}\n",
        r.order,
        r.minimum_order,
        r.lift_ranks,
        r.direct_ranks,
        r.verdicts_agree,
        pass_word(passed)
    );
    Ok(Output::new("semilattice", &c.input, passed, r.clone(), text))
}

pub fn bi(c: &Common) -> Result<Output, CommandError> {
    let (_, s) = semigroup_of(c)?;
    let m = monoid_completion(&s);
    let r = bi_fp_report(&m, c.length).map_err(|e| CommandError::Library(e.into()))?;
    let text = format!(
        "left ranks: {:?}\nright ranks: {:?}\nsides identical: {}\n{}\n",
        r.left.ranks,
        r.right.ranks,
        r.sides_identical,
        pass_word(r.bi_fp)
    );
    Ok(Output::new("bi", &c.input, r.bi_fp, r.clone(), text))
}

pub fn corpus(dir: Option<&Path>, n: usize) -> Result<Output, CommandError> {
    let summary = corpus_run(dir, n)?;
    let mut text = String::new();
    for case in &summary.cases {
        let _ = writeln!(text, "{} {} ({})", pass_word(case.passed), case.name, case.source);
    }
    let _ = writeln!(text, "{}/{} passed", summary.passed, summary.total);
    let passed = summary.all_passed;
    let json = to_json(&summary);
    Ok(Output { passed, json, text, dot: None })
}
