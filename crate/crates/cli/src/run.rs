//! One function per subcommand; each fills a [`Report`] and sets its status.

use std::time::Instant;

use serde_json::{json, Value};

use izclose::construct::Obstruction;
use izclose::grammar::{render_ideal, render_matrix};
use izclose::{
    classify, decompose_nonexis, minimal_generators, module_closure, newton_closure, parse_ideal,
    parse_matrix, row_integrality_filter, verify_witness, Certificate, CertificateKind,
    ClassificationResult, ConstructError, FamilyParams, GrammarError, ModuleError, ModuleMat,
    Settings, Staircase, Verdict,
};

use crate::report::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Witness,
    VerifyModule,
    ClosureIdeal,
    ClosureModule,
    Factor,
    Decompose,
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Witness => "witness",
            Command::VerifyModule => "verify-module",
            Command::ClosureIdeal => "closure-ideal",
            Command::ClosureModule => "closure-module",
            Command::Factor => "factor",
            Command::Decompose => "decompose",
            Command::Render => "render",
        }
    }

    fn takes_matrix(self) -> bool {
        matches!(self, Command::VerifyModule | Command::ClosureModule | Command::Decompose)
    }
}

pub struct Job<'a> {
    pub command: Command,
    pub input: &'a str,
    /// Target ideal for `verify-module`; defaults to the closure of the minors.
    pub ideal: Option<&'a str>,
    pub settings: Settings,
}

/// Failure of a pipeline step, already classified by exit status.
struct Failure {
    status: Status,
    message: String,
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        let status = match &e {
            ModuleError::RankDeficient
            | ModuleError::NotMonomialClosure
            | ModuleError::NotInFamily { .. } => Status::PreconditionViolation,
            ModuleError::Parse(_) => Status::ParseError,
            _ => Status::VerificationFailed,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Module(m) => m.into(),
            ConstructError::NotClosed | ConstructError::OrderTooSmall(_) | ConstructError::NotContracted => Failure {
                status: Status::PreconditionViolation,
                message: e.to_string(),
            },
            other => Failure {
                status: Status::VerificationFailed,
                message: other.to_string(),
            },
        }
    }
}

enum Parsed {
    Ideal(Staircase),
    Matrix(ModuleMat),
}

pub fn run(job: &Job) -> Report {
    let s = job.settings;
    let mut report = Report::new(job.command.name(), job.input, s.seed, s.degree_bound);
    let t0 = Instant::now();
    let parsed = if job.command.takes_matrix() {
        parse_matrix(job.input).map(Parsed::Matrix)
    } else {
        parse_ideal(job.input).map(Parsed::Ideal)
    };
    let target = job.ideal.map(parse_ideal).transpose();
    report.timings.parse_ms = ms(t0);
    let (parsed, target) = match (parsed, target) {
        (Ok(p), Ok(t)) => (p, t),
        (Err(e), _) | (_, Err(e)) => {
            grammar_failure(&mut report, e);
            return report;
        }
    };

    let t1 = Instant::now();
    let outcome = match parsed {
        Parsed::Ideal(i) => match job.command {
            Command::Classify => run_classify(&mut report, &i, s, false),
            Command::Witness => run_classify(&mut report, &i, s, true),
            Command::ClosureIdeal => run_closure_ideal(&mut report, &i),
            Command::Factor => run_factor(&mut report, &i),
            Command::Render => run_render(&mut report, &i),
            _ => unreachable!("matrix commands parse a matrix"),
        },
        Parsed::Matrix(m) => match job.command {
            Command::VerifyModule => run_verify(&mut report, &m, target),
            Command::ClosureModule => run_closure_module(&mut report, &m),
            Command::Decompose => run_decompose(&mut report, &m),
            _ => unreachable!("ideal commands parse an ideal"),
        },
    };
    report.timings.run_ms = ms(t1);
    if let Err(f) = outcome {
        report.fail(f.status, f.message, None);
    }
    report
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn grammar_failure(report: &mut Report, e: GrammarError) {
    match &e {
        GrammarError::Parse(p) => report.fail(Status::ParseError, e.to_string(), Some(p.into())),
        GrammarError::Module(ModuleError::Parse(p)) => {
            report.fail(Status::ParseError, e.to_string(), Some(p.into()))
        }
        GrammarError::NotMPrimary => report.fail(Status::PreconditionViolation, e.to_string(), None),
        GrammarError::Module(m) => {
            let f = Failure::from(m.clone());
            report.fail(f.status, f.message, None)
        }
    }
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "kind": c.kind.name(),
        "predicates": c.predicates,
        "details": c.details,
    })
}

fn matrix_json(m: &ModuleMat) -> Value {
    json!({
        "matrix": render_matrix(m),
        "columns": m.ncols(),
    })
}

fn run_classify(report: &mut Report, i: &Staircase, s: Settings, want_witness: bool) -> Result<(), Failure> {
    let r: ClassificationResult = classify(i, s)?;
    report.verdict = Some(verdict_name(r.verdict).to_string());
    report.branch = Some(r.branch.name().to_string());
    report.put("ideal", render_ideal(i));
    report.put("order", i.order());
    report.line(format!("ideal   {}", render_ideal(i)));
    report.line(format!("verdict {}", verdict_name(r.verdict)));
    report.line(format!("branch  {}", r.branch.name()));
    if let Some(w) = &r.witness {
        let (min, _) = minimal_generators(&w.module, i)?;
        let mut wj = matrix_json(&min);
        wj["construction"] = json!(render_matrix(&w.module));
        wj["mu"] = json!(w.checks.mu);
        wj["checks"] = json!(w.checks);
        report.put("witness", wj);
        report.put("certificate", certificate_json(&w.certificate));
        report.line(format!("witness {}", render_matrix(&min)));
        report.line(format!("mu      {}", w.checks.mu));
        report.line(format!(
            "certificate {}: {}",
            w.certificate.kind.name(),
            w.certificate.predicates.join(", ")
        ));
    }
    if let Some(o) = &r.obstruction {
        obstruction(report, o);
    }
    if let Some(h) = &r.repair_hint {
        report.put("repair_hint", render_ideal(h));
        report.line(format!("closure {}", render_ideal(h)));
    }
    match r.verdict {
        Verdict::Exists => report.set_status(Status::Exists),
        Verdict::NotExists => report.set_status(Status::NotExists),
        Verdict::Rejected => {
            return Err(Failure {
                status: Status::PreconditionViolation,
                message: "the ideal is not integrally closed".into(),
            })
        }
    }
    if want_witness && r.witness.is_none() {
        report.line("no witness: no indecomposable integrally closed module has these minors");
    }
    Ok(())
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Exists => "EXISTS",
        Verdict::NotExists => "NOT_EXISTS",
        Verdict::Rejected => "REJECTED",
    }
}

fn obstruction(report: &mut Report, o: &Obstruction) {
    let d = &o.decomposition;
    report.put(
        "obstruction",
        json!({
            "m": o.params.m,
            "n": o.params.n,
            "canonical_module": render_matrix(&o.canonical_module),
            "canonical_closed": o.canonical_closed,
            "summands": [render_ideal(&d.summands.0), render_ideal(&d.summands.1)],
            "block": d.block,
        }),
    );
    report.put("transcript", json!(d.transcript));
    report.line(format!("canonical {}", render_matrix(&o.canonical_module)));
    report.line(format!(
        "splits as ({}) + ({}) in {} steps",
        render_ideal(&d.summands.0),
        render_ideal(&d.summands.1),
        d.transcript.len()
    ));
}

fn run_closure_ideal(report: &mut Report, i: &Staircase) -> Result<(), Failure> {
    let c = newton_closure(i.corners().iter().copied()).map_err(|e| Failure {
        status: Status::PreconditionViolation,
        message: e.to_string(),
    })?;
    let closed = c == *i;
    report.put("closure", render_ideal(&c));
    report.put("closed", closed);
    report.put("colength", c.colength());
    report.line(format!("closure {}", render_ideal(&c)));
    report.line(format!("closed  {closed}"));
    Ok(())
}

fn run_factor(report: &mut Report, i: &Staircase) -> Result<(), Failure> {
    let factors = i.zariski_factor().map_err(|e| Failure {
        status: Status::PreconditionViolation,
        message: e.to_string(),
    })?;
    let list: Vec<Value> = factors
        .iter()
        .map(|f| {
            json!({
                "ideal": render_ideal(&f.ideal()),
                "d": f.d,
                "e": f.e,
                "multiplicity": f.mult,
            })
        })
        .collect();
    report.put("factors", list);
    report.line(format!("ideal {}", render_ideal(i)));
    for f in &factors {
        report.line(format!("  ({})^{}", render_ideal(&f.ideal()), f.mult));
    }
    Ok(())
}

fn run_render(report: &mut Report, i: &Staircase) -> Result<(), Failure> {
    let grid = i.render_ascii();
    report.put("ideal", render_ideal(i));
    report.put("grid", grid.clone());
    report.line(grid);
    Ok(())
}

fn run_verify(report: &mut Report, m: &ModuleMat, target: Option<Staircase>) -> Result<(), Failure> {
    let i = match target {
        Some(i) => i,
        None => m.minors_closure()?,
    };
    if !i.is_integrally_closed() {
        return Err(Failure {
            status: Status::PreconditionViolation,
            message: format!("target ideal {} is not integrally closed", render_ideal(&i)),
        });
    }
    let kinds = [
        CertificateKind::Decom,
        CertificateKind::Image,
        CertificateKind::SimpleClash,
        CertificateKind::FactorClash,
    ];
    let cert = kinds
        .iter()
        .find_map(|&k| izclose::certify_indecomposable(m, &i, k).ok());
    let kind = cert.as_ref().map_or(CertificateKind::Decom, |c| c.kind);
    let checks = verify_witness(m, &i, kind)?;
    report.put("ideal", render_ideal(&i));
    report.put("module", matrix_json(m));
    report.put("checks", json!(checks));
    if let Some(c) = &cert {
        report.put("certificate", certificate_json(c));
    }
    report.line(format!("module  {}", render_matrix(m)));
    report.line(format!("ideal   {}", render_ideal(&i)));
    report.line(format!("in mF              {}", checks.in_mf));
    report.line(format!("integrally closed  {}", checks.integrally_closed));
    report.line(format!("minors equal I     {}", checks.minors_equal));
    report.line(format!("mu = ord + 2       {} (mu = {})", checks.mu_is_order_plus_two, checks.mu));
    report.line(format!(
        "certificate        {}",
        cert.as_ref().map_or("none".to_string(), |c| c.kind.name().to_string())
    ));
    report.set_status(if checks.all_pass() {
        Status::Ok
    } else {
        Status::VerificationFailed
    });
    Ok(())
}

fn run_closure_module(report: &mut Report, m: &ModuleMat) -> Result<(), Failure> {
    let ibar = m.minors_closure()?;
    let r = module_closure(m, &ibar)?;
    let (min, mu) = minimal_generators(&r.closure_gens, &ibar)?;
    let mut filter = true;
    for v in min.cols() {
        filter &= row_integrality_filter(v, m)?;
    }
    report.put("minors_closure", render_ideal(&ibar));
    report.put("closed", r.closed);
    report.put("closure", matrix_json(&min));
    report.put(
        "new_elements",
        r.new_elements.iter().map(|c| json!([c[0], c[1]])).collect::<Vec<_>>(),
    );
    report.put("mu", mu);
    report.put("order", ibar.order());
    report.put("mu_law", mu == ibar.order() as usize + 2);
    report.put("row_filter", filter);
    report.put("cutoff", r.cutoff);
    report.line(format!("module  {}", render_matrix(m)));
    report.line(format!("closed  {}", r.closed));
    report.line(format!("closure {}", render_matrix(&min)));
    for c in &r.new_elements {
        report.line(format!("new     ({}, {})", c[0], c[1]));
    }
    report.line(format!("mu      {mu} (order {})", ibar.order()));
    report.set_status(if filter {
        Status::Ok
    } else {
        Status::VerificationFailed
    });
    Ok(())
}

fn run_decompose(report: &mut Report, m: &ModuleMat) -> Result<(), Failure> {
    let ibar = m.minors_closure()?;
    let params = FamilyParams {
        m: ibar.x_extent(),
        n: ibar.y_extent(),
    };
    let d = decompose_nonexis(m, params)?;
    report.put("m", params.m);
    report.put("n", params.n);
    report.put(
        "summands",
        json!([render_ideal(&d.summands.0), render_ideal(&d.summands.1)]),
    );
    report.put("block", d.block.clone());
    report.put("transcript", json!(d.transcript));
    report.line(format!("module  {}", render_matrix(m)));
    report.line(format!(
        "splits as ({}) + ({})",
        render_ideal(&d.summands.0),
        render_ideal(&d.summands.1)
    ));
    report.line(format!("block   {}", d.block));
    report.line(format!("{} replayed steps", d.transcript.len()));
    Ok(())
}
