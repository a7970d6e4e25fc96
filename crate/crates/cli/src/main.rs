//! Command-line driver: parse documents, dispatch to the library,
//! print deterministic reports on stdout. Timing goes to stderr so
//! report bytes are reproducible. Exit codes: 0 pass, 1 failing
//! verdict, 2 usage or parse errors.

mod format;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num::{BigInt, One};
use sha2::{Digest, Sha256};

use format::{
    fan_document, parse_document, parse_qvec, render_document, render_qvec, render_zvec,
    Document,
};
use tropkit::cone::Cone;
use tropkit::fan::Fan;
use tropkit::geomtrop::{
    geometric_tropicalization, hubsch_check, schoen_certificate, BoundaryData,
};
use tropkit::lattice::LatticeContext;
use tropkit::polyhedron::Complex;
use tropkit::toric::{
    chart_presentation, properness_support_check, tcone_build, AdmissibleFan,
};
use tropkit::tropical::{
    initial_form, is_in_tropicalization_certificate, is_tropical_point,
    tropical_hypersurface, Certificate, ValuedPoly,
};
use tropkit::{Int, QVec, Rat};

const DEFAULT_MAX_RANK: usize = 8;
const DEFAULT_MAX_BOX: usize = 100_000;

fn max_rank() -> usize {
    std::env::var("TROPKIT_MAX_RANK")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_RANK)
}

fn max_box() -> usize {
    std::env::var("TROPKIT_MAX_BOX")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_BOX)
}

#[derive(Parser)]
#[command(name = "tropkit", version, about = "Exact tropical/polyhedral toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Polyhedral fan operations
    #[command(subcommand)]
    Fan(FanCmd),
    /// Valued polynomials and tropical hypersurfaces
    #[command(subcommand)]
    Trop(TropCmd),
    /// Geometric tropicalization and rigidity certificates
    #[command(subcommand)]
    Geomtrop(GeomtropCmd),
    /// Toric schemes over a discrete valuation ring
    #[command(subcommand)]
    Toric(ToricCmd),
    /// The fan over a polyhedral complex
    #[command(subcommand)]
    Tcone(TconeCmd),
}

#[derive(Args)]
struct ConeSelect {
    /// Ray generator of the selected cone (repeatable), e.g. `--ray 1,0`
    #[arg(long = "ray")]
    rays: Vec<String>,
    /// Lineality generator of the selected cone (repeatable)
    #[arg(long = "lin")]
    lins: Vec<String>,
}

#[derive(Subcommand)]
enum FanCmd {
    /// Check the fan axioms on a cone list
    Validate { input: String },
    /// Does the first fan refine the second?
    Refines { fine: String, coarse: String },
    /// Common refinement of two fans with equal support
    CommonRefinement { a: String, b: String },
    /// Subfan of cones having the given cone as a face
    Star {
        input: String,
        #[command(flatten)]
        cone: ConeSelect,
    },
    /// Greedy merge of cones to a coarser fan structure
    Coarsen { input: String },
    /// Maximal linear space translating the support into itself
    TranslationSpace { input: String },
}

#[derive(Subcommand)]
enum TropCmd {
    /// Tropical hypersurface of a valued polynomial
    Hypersurface {
        input: String,
        /// Compare against the min-attained-twice grid oracle
        #[arg(long)]
        oracle_check: bool,
    },
    /// Terms attaining the tropical minimum at a point
    InitialForm {
        input: String,
        /// Evaluation point, comma-separated rationals
        #[arg(long)]
        at: String,
    },
    /// Monomial-initial-form exclusion certificate
    Certificate {
        /// Generator polynomial documents
        inputs: Vec<String>,
        #[arg(long)]
        at: String,
    },
}

#[derive(Subcommand)]
enum GeomtropCmd {
    /// Cones spanned by divisorial valuations, with fan status
    Build { input: String },
    /// Lattice-checkable certificates for the smoothness conditions
    SchoenCheck { input: String },
    /// Translation-rigidity of all projected stars
    HubschCheck { input: String },
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Is every generator at nonnegative t-height?
    Admissible {
        input: String,
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// Special fiber components, multiplicities, reduction index
    Analyze {
        input: String,
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// Same fan over the lattice with t-step multiplied by the factor
    Rescale {
        input: String,
        #[arg(long)]
        factor: String,
    },
    /// Monoid presentation of the chart at a cone of the fan
    Chart {
        input: String,
        /// Index into the face closure of the validated fan
        #[arg(long, default_value_t = 0)]
        cone_index: usize,
    },
    /// Subfan at t-height zero, re-expressed one rank lower
    GenericFiber { input: String },
}

#[derive(Subcommand)]
enum TconeCmd {
    /// Fan over a polyhedral complex, one rank higher
    Build { input: String },
    /// Slice a fan at t-height one
    Slice { input: String },
    /// Does the fan support contain the fan over the complex?
    Properness { fan: String, complex: String },
}

struct Input {
    name: String,
    doc: Document,
    digest: String,
}

fn read_input(path: &str) -> Result<Input, String> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("-: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let doc = parse_document(&text, max_rank()).map_err(|e| format!("{path}: {e}"))?;
    Ok(Input { name: path.to_string(), doc, digest })
}

struct Report {
    lines: Vec<String>,
    exit: u8,
}

impl Report {
    fn new(command: &str, inputs: &[&Input]) -> Report {
        let mut lines = vec![format!("tropkit report v1"), format!("command: {command}")];
        for i in inputs {
            lines.push(format!("input {} sha256 {}", i.name, i.digest));
        }
        Report { lines, exit: 0 }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn document(&mut self, doc: &Document) {
        self.lines.push("---".into());
        let rendered = render_document(doc);
        self.lines.push(rendered.trim_end().to_string());
    }

    fn fail(&mut self) {
        self.exit = 1;
    }

    fn print(self) -> ExitCode {
        for l in &self.lines {
            println!("{l}");
        }
        ExitCode::from(self.exit)
    }
}

fn parse_scale(s: &str) -> Result<Int, String> {
    let d: BigInt = s.parse().map_err(|_| format!("bad scale {s:?}"))?;
    if d <= BigInt::from(0) {
        return Err("scale must be positive".into());
    }
    Ok(d)
}

fn doc_fan_cones(doc: &Document) -> Result<(usize, Vec<Cone>), String> {
    match doc {
        Document::Fan { rank, cones } => Ok((*rank, cones.clone())),
        Document::AdmissibleFan { rank, cones, .. } => Ok((*rank, cones.clone())),
        d => Err(format!("expected a fan document, got {}", d.kind())),
    }
}

fn doc_admissible(doc: &Document, flag_scale: Option<&Int>) -> Result<AdmissibleFan, String> {
    let (rank, cones, scale) = match doc {
        Document::Fan { rank, cones } => {
            (*rank, cones.clone(), flag_scale.cloned().unwrap_or_else(Int::one))
        }
        Document::AdmissibleFan { rank, cones, scale } => {
            (*rank, cones.clone(), flag_scale.cloned().unwrap_or_else(|| scale.clone()))
        }
        d => return Err(format!("expected a fan document, got {}", d.kind())),
    };
    let fan = Fan::validate(rank, cones).map_err(|e| format!("not a fan: {e}"))?;
    let ctx = LatticeContext::new(rank, scale).map_err(|e| e.to_string())?;
    AdmissibleFan::new(fan, ctx).map_err(|e| e.to_string())
}

fn doc_complex(doc: &Document) -> Result<Complex, String> {
    match doc {
        Document::Complex(c) => Ok(c.clone()),
        d => Err(format!("expected a complex document, got {}", d.kind())),
    }
}

fn doc_poly(doc: &Document) -> Result<ValuedPoly, String> {
    match doc {
        Document::Polynomial(p) => Ok(p.clone()),
        d => Err(format!("expected a polynomial document, got {}", d.kind())),
    }
}

fn doc_boundary(doc: &Document) -> Result<BoundaryData, String> {
    match doc {
        Document::Boundary(b) => Ok(b.clone()),
        d => Err(format!("expected a boundary document, got {}", d.kind())),
    }
}

fn select_cone(rank: usize, sel: &ConeSelect) -> Result<Cone, String> {
    let parse_all = |ss: &[String]| -> Result<Vec<QVec>, String> {
        ss.iter()
            .map(|s| parse_qvec(s, rank, 0).map_err(|e| e.message.clone()))
            .collect()
    };
    let rays = parse_all(&sel.rays)?;
    let lins = parse_all(&sel.lins)?;
    Cone::from_rays_q(rank, &rays, &lins).map_err(|e| e.to_string())
}

fn cone_summary(c: &Cone) -> String {
    let mut s = String::new();
    if c.is_zero() {
        return "origin".into();
    }
    if !c.rays().is_empty() {
        s.push_str("rays");
        for r in c.rays() {
            s.push(' ');
            s.push_str(&render_zvec(r));
        }
    }
    if !c.lineality().is_empty() {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str("lineality");
        for l in c.lineality() {
            s.push(' ');
            s.push_str(&render_zvec(l));
        }
    }
    s
}

fn run_fan(cmd: &FanCmd) -> Result<Report, String> {
    match cmd {
        FanCmd::Validate { input } => {
            let inp = read_input(input)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let mut rep = Report::new("fan validate", &[&inp]);
            match Fan::validate(rank, cones) {
                Ok(fan) => {
                    rep.line("verdict: valid fan");
                    rep.line(format!("maximal cones: {}", fan.maximal_cones().len()));
                    rep.line(format!("closure cones: {}", fan.face_closure().len()));
                    rep.document(&fan_document(&fan));
                }
                Err(tropkit::Error::NotAFan { first, second, intersection_rays }) => {
                    rep.line("verdict: not a fan");
                    rep.line(format!("violation: cones {first} and {second}"));
                    let rays: Vec<String> =
                        intersection_rays.iter().map(|r| render_zvec(r)).collect();
                    rep.line(format!("intersection rays: {}", rays.join(" ")));
                    rep.fail();
                }
                Err(e) => return Err(e.to_string()),
            }
            Ok(rep)
        }
        FanCmd::Refines { fine, coarse } => {
            let a = read_input(fine)?;
            let b = read_input(coarse)?;
            let (ra, ca) = doc_fan_cones(&a.doc)?;
            let (rb, cb) = doc_fan_cones(&b.doc)?;
            let fa = Fan::validate(ra, ca).map_err(|e| format!("{fine}: {e}"))?;
            let fb = Fan::validate(rb, cb).map_err(|e| format!("{coarse}: {e}"))?;
            let mut rep = Report::new("fan refines", &[&a, &b]);
            if fa.refines(&fb).map_err(|e| e.to_string())? {
                rep.line("verdict: refines");
            } else {
                rep.line("verdict: does not refine");
                rep.fail();
            }
            Ok(rep)
        }
        FanCmd::CommonRefinement { a, b } => {
            let ia = read_input(a)?;
            let ib = read_input(b)?;
            let (ra, ca) = doc_fan_cones(&ia.doc)?;
            let (rb, cb) = doc_fan_cones(&ib.doc)?;
            let fa = Fan::validate(ra, ca).map_err(|e| format!("{a}: {e}"))?;
            let fb = Fan::validate(rb, cb).map_err(|e| format!("{b}: {e}"))?;
            let mut rep = Report::new("fan common-refinement", &[&ia, &ib]);
            match fa.common_refinement(&fb) {
                Ok(cr) => {
                    rep.line(format!("maximal cones: {}", cr.maximal_cones().len()));
                    rep.document(&fan_document(&cr));
                }
                Err(tropkit::Error::SupportMismatch { witness }) => {
                    rep.line("verdict: supports differ");
                    rep.line(format!("witness: {}", render_zvec(&witness)));
                    rep.fail();
                }
                Err(e) => return Err(e.to_string()),
            }
            Ok(rep)
        }
        FanCmd::Star { input, cone } => {
            let inp = read_input(input)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let fan = Fan::validate(rank, cones).map_err(|e| format!("{input}: {e}"))?;
            let sigma = select_cone(rank, cone)?;
            let mut rep = Report::new("fan star", &[&inp]);
            rep.line(format!("at: {}", cone_summary(&sigma)));
            match fan.star(&sigma) {
                Ok(star) => {
                    rep.line(format!("maximal cones: {}", star.maximal_cones().len()));
                    rep.document(&fan_document(&star));
                }
                Err(tropkit::Error::ConeNotInFan) => {
                    rep.line("verdict: cone is not in the fan");
                    rep.fail();
                }
                Err(e) => return Err(e.to_string()),
            }
            Ok(rep)
        }
        FanCmd::Coarsen { input } => {
            let inp = read_input(input)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let fan = Fan::validate(rank, cones).map_err(|e| format!("{input}: {e}"))?;
            let (coarse, fixpoint) = fan.coarsen();
            let mut rep = Report::new("fan coarsen", &[&inp]);
            rep.line(format!("fixpoint: {fixpoint}"));
            rep.line(format!("maximal cones: {}", coarse.maximal_cones().len()));
            rep.document(&fan_document(&coarse));
            Ok(rep)
        }
        FanCmd::TranslationSpace { input } => {
            let inp = read_input(input)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let fan = Fan::validate(rank, cones).map_err(|e| format!("{input}: {e}"))?;
            let basis = fan.support_translation_space();
            let mut rep = Report::new("fan translation-space", &[&inp]);
            rep.line(format!("rank: {}", basis.len()));
            for b in &basis {
                rep.line(format!("basis {}", render_zvec(b)));
            }
            Ok(rep)
        }
    }
}

fn run_trop(cmd: &TropCmd) -> Result<Report, String> {
    match cmd {
        TropCmd::Hypersurface { input, oracle_check } => {
            let inp = read_input(input)?;
            let f = doc_poly(&inp.doc)?;
            let hyp = tropical_hypersurface(&f).map_err(|e| e.to_string())?;
            let mut rep = Report::new("trop hypersurface", &[&inp]);
            rep.line(format!("monomial input: {}", hyp.monomial_input));
            rep.line(format!("cells: {}", hyp.complex.cells().len()));
            if *oracle_check {
                if f.rank() > 3 {
                    rep.line("oracle: skipped (rank above 3)");
                } else {
                    let mut probes = 0usize;
                    let grid: Vec<Rat> =
                        (-6..=6).map(|k| Rat::new(Int::from(k), Int::from(2))).collect();
                    let mut idx = vec![0usize; f.rank()];
                    let mut agree = true;
                    loop {
                        let w: QVec = idx.iter().map(|&i| grid[i].clone()).collect();
                        if hyp.complex.contains_q(&w)
                            != is_tropical_point(&f, &w).map_err(|e| e.to_string())?
                        {
                            agree = false;
                            rep.line(format!("oracle disagreement at {}", render_qvec(&w)));
                            break;
                        }
                        probes += 1;
                        let mut carry = 0;
                        while carry < idx.len() {
                            idx[carry] += 1;
                            if idx[carry] < grid.len() {
                                break;
                            }
                            idx[carry] = 0;
                            carry += 1;
                        }
                        if carry == idx.len() {
                            break;
                        }
                    }
                    if agree {
                        rep.line(format!("oracle: agreement on {probes} probe points"));
                    } else {
                        rep.fail();
                    }
                }
            }
            rep.document(&Document::Complex(hyp.complex.clone()));
            Ok(rep)
        }
        TropCmd::InitialForm { input, at } => {
            let inp = read_input(input)?;
            let f = doc_poly(&inp.doc)?;
            let w = parse_qvec(at, f.rank(), 0).map_err(|e| e.message)?;
            let inf = initial_form(&f, &w).map_err(|e| e.to_string())?;
            let mut rep = Report::new("trop initial-form", &[&inp]);
            rep.line(format!("at: {}", render_qvec(&w)));
            rep.line(format!("surviving terms: {}", inf.terms.len()));
            rep.line(format!("monomial: {}", inf.is_monomial()));
            for t in &inf.terms {
                rep.line(format!(
                    "term exp {} val {} res {}",
                    render_zvec(&t.exponent),
                    format::render_rat(&t.valuation),
                    t.residue
                ));
            }
            Ok(rep)
        }
        TropCmd::Certificate { inputs, at } => {
            if inputs.is_empty() {
                return Err("at least one generator document is required".into());
            }
            let ins: Vec<Input> = inputs.iter().map(|p| read_input(p)).collect::<Result<_, _>>()?;
            let gens: Vec<ValuedPoly> =
                ins.iter().map(|i| doc_poly(&i.doc)).collect::<Result<_, _>>()?;
            let w = parse_qvec(at, gens[0].rank(), 0).map_err(|e| e.message)?;
            let refs: Vec<&Input> = ins.iter().collect();
            let mut rep = Report::new("trop certificate", &refs);
            rep.line(format!("at: {}", render_qvec(&w)));
            match is_in_tropicalization_certificate(&gens, &w).map_err(|e| e.to_string())? {
                Certificate::Excluded { index, exponent } => {
                    rep.line("verdict: excluded");
                    rep.line(format!("witness: generator {index}"));
                    rep.line(format!("monomial exponent: {}", render_zvec(&exponent)));
                }
                Certificate::Undetermined => {
                    rep.line("verdict: undetermined");
                }
            }
            Ok(rep)
        }
    }
}

fn run_geomtrop(cmd: &GeomtropCmd) -> Result<Report, String> {
    match cmd {
        GeomtropCmd::Build { input } => {
            let inp = read_input(input)?;
            let data = doc_boundary(&inp.doc)?;
            let gt = geometric_tropicalization(&data).map_err(|e| e.to_string())?;
            let mut rep = Report::new("geomtrop build", &[&inp]);
            for sc in &gt.cones {
                let ids: Vec<&str> = sc
                    .stratum
                    .iter()
                    .map(|&k| data.divisors()[k].id.as_str())
                    .collect();
                rep.line(format!(
                    "stratum [{}] cone {} strictly-simplicial {}",
                    ids.join(" "),
                    cone_summary(&sc.cone),
                    sc.strictly_simplicial
                ));
            }
            match &gt.fan_status {
                Ok(fan) => {
                    rep.line("fan: valid");
                    rep.document(&fan_document(fan));
                }
                Err(e) => {
                    rep.line(format!("fan: invalid ({e})"));
                    rep.fail();
                }
            }
            Ok(rep)
        }
        GeomtropCmd::SchoenCheck { input } => {
            let inp = read_input(input)?;
            let data = doc_boundary(&inp.doc)?;
            let cert = schoen_certificate(&data).map_err(|e| e.to_string())?;
            let mut rep = Report::new("geomtrop schoen-check", &[&inp]);
            rep.line(format!("condition 1: {}", cert.condition1_note));
            for e in &cert.condition2 {
                let ids: Vec<&str> = e
                    .stratum
                    .iter()
                    .map(|&k| data.divisors()[k].id.as_str())
                    .collect();
                let sol = match &e.solution {
                    Some(m) => format!("solution {}", render_zvec(m)),
                    None => "infeasible".into(),
                };
                rep.line(format!(
                    "condition 2 stratum [{}] pivot {} {}",
                    ids.join(" "),
                    data.divisors()[e.pivot].id,
                    sol
                ));
            }
            rep.line(format!(
                "condition 2 feasible everywhere: {}",
                cert.all_condition2_feasible
            ));
            rep.line(format!(
                "strictly simplicial everywhere: {}",
                cert.all_strictly_simplicial
            ));
            let fan_ok = cert.fan_status.is_ok();
            match &cert.fan_status {
                Ok(_) => rep.line("condition 3 fan: valid"),
                Err(e) => rep.line(format!("condition 3 fan: invalid ({e})")),
            }
            if fan_ok && cert.all_condition2_feasible && cert.all_strictly_simplicial {
                rep.line("verdict: certified (conditions 2 and 3; condition 1 not machine-checked)");
            } else {
                rep.line("verdict: not certified");
                rep.fail();
            }
            Ok(rep)
        }
        GeomtropCmd::HubschCheck { input } => {
            let inp = read_input(input)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let fan = Fan::validate(rank, cones).map_err(|e| format!("{input}: {e}"))?;
            let report = hubsch_check(&fan).map_err(|e| e.to_string())?;
            let mut rep = Report::new("geomtrop hubsch-check", &[&inp]);
            for r in &report.per_cone {
                rep.line(format!(
                    "cone {} translation-rank {}",
                    cone_summary(&r.cone),
                    r.translation_rank
                ));
            }
            rep.line(format!("rigid: {}", report.rigid));
            let minimal = match report.minimal {
                Some(m) => m.to_string(),
                None => "undetermined".into(),
            };
            rep.line(format!("minimal fan structure: {minimal}"));
            if report.passes {
                rep.line("verdict: PASS");
            } else {
                rep.line("verdict: FAIL");
                rep.fail();
            }
            Ok(rep)
        }
    }
}

fn run_toric(cmd: &ToricCmd) -> Result<Report, String> {
    match cmd {
        ToricCmd::Admissible { input, scale } => {
            let inp = read_input(input)?;
            let d = parse_scale(scale)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let fan = Fan::validate(rank, cones).map_err(|e| format!("{input}: {e}"))?;
            let mut rep = Report::new("toric admissible", &[&inp]);
            rep.line(format!("scale: {d}"));
            match fan.admissibility_witness() {
                None => rep.line("verdict: admissible"),
                Some(w) => {
                    rep.line("verdict: not admissible");
                    rep.line(format!("witness: {}", render_zvec(&w)));
                    rep.fail();
                }
            }
            Ok(rep)
        }
        ToricCmd::Analyze { input, scale } => {
            let inp = read_input(input)?;
            let d = parse_scale(scale)?;
            let flag = if matches!(inp.doc, Document::AdmissibleFan { .. }) && scale == "1" {
                None
            } else {
                Some(d)
            };
            let af = doc_admissible(&inp.doc, flag.as_ref())?;
            let report = af.special_fiber_report().map_err(|e| e.to_string())?;
            let mut rep = Report::new("toric analyze", &[&inp]);
            rep.line(format!("scale: {}", af.ctx().scale));
            for c in &report.components {
                rep.line(format!(
                    "component v {} multiplicity {}",
                    render_zvec(&c.v),
                    c.multiplicity
                ));
            }
            rep.line(format!("reduced: {}", report.reduced));
            rep.line(format!("reduction index: {}", report.reduction_index));
            Ok(rep)
        }
        ToricCmd::Rescale { input, factor } => {
            let inp = read_input(input)?;
            let d = parse_scale(factor)?;
            let af = doc_admissible(&inp.doc, None)?;
            let rescaled = af.rescale(&d).map_err(|e| e.to_string())?;
            let mut rep = Report::new("toric rescale", &[&inp]);
            rep.line(format!("factor: {d}"));
            rep.line(format!("scale: {}", rescaled.ctx().scale));
            rep.document(&Document::AdmissibleFan {
                rank: rescaled.fan().rank(),
                scale: rescaled.ctx().scale.clone(),
                cones: rescaled.fan().maximal_cones().to_vec(),
            });
            Ok(rep)
        }
        ToricCmd::Chart { input, cone_index } => {
            let inp = read_input(input)?;
            let af = doc_admissible(&inp.doc, None)?;
            let closure = af.fan().face_closure();
            let sigma = closure
                .get(*cone_index)
                .ok_or_else(|| {
                    format!("cone index {cone_index} out of range (closure has {})", closure.len())
                })?
                .clone();
            let mut rep = Report::new("toric chart", &[&inp]);
            rep.line(format!("cone {cone_index}: {}", cone_summary(&sigma)));
            match chart_presentation(&sigma, af.ctx(), max_box()) {
                Ok(p) => {
                    for g in &p.generators {
                        let tag = if p.units.contains(g) { " unit" } else { "" };
                        rep.line(format!("generator {}{}", render_zvec(g), tag));
                    }
                    rep.line(format!("marked {}", render_zvec(&p.marked)));
                    rep.line("relation: chi^marked = t");
                }
                Err(e) => {
                    rep.line(format!("verdict: chart unavailable ({e})"));
                    rep.fail();
                }
            }
            Ok(rep)
        }
        ToricCmd::GenericFiber { input } => {
            let inp = read_input(input)?;
            let af = doc_admissible(&inp.doc, None)?;
            let sub = af.generic_fiber_subfan().map_err(|e| e.to_string())?;
            let mut rep = Report::new("toric generic-fiber", &[&inp]);
            rep.line(format!("maximal cones: {}", sub.maximal_cones().len()));
            rep.document(&fan_document(&sub));
            Ok(rep)
        }
    }
}

fn run_tcone(cmd: &TconeCmd) -> Result<Report, String> {
    match cmd {
        TconeCmd::Build { input } => {
            let inp = read_input(input)?;
            let cx = doc_complex(&inp.doc)?;
            let mut rep = Report::new("tcone build", &[&inp]);
            match tcone_build(&cx) {
                Ok(t) => {
                    rep.line(format!("maximal cones: {}", t.fan.maximal_cones().len()));
                    rep.document(&fan_document(&t.fan));
                }
                Err(e) => {
                    rep.line(format!("verdict: cones violate the fan axioms ({e})"));
                    rep.fail();
                }
            }
            Ok(rep)
        }
        TconeCmd::Slice { input } => {
            let inp = read_input(input)?;
            let (rank, cones) = doc_fan_cones(&inp.doc)?;
            let fan = Fan::validate(rank, cones).map_err(|e| format!("{input}: {e}"))?;
            let mut rep = Report::new("tcone slice", &[&inp]);
            match fan.slice_at_height_one() {
                Ok(cx) => {
                    rep.line(format!("cells: {}", cx.cells().len()));
                    rep.document(&Document::Complex(cx));
                }
                Err(tropkit::Error::NotAdmissible(w)) => {
                    rep.line("verdict: not admissible");
                    rep.line(format!("witness: {}", render_zvec(&w)));
                    rep.fail();
                }
                Err(e) => return Err(e.to_string()),
            }
            Ok(rep)
        }
        TconeCmd::Properness { fan, complex } => {
            let fi = read_input(fan)?;
            let ci = read_input(complex)?;
            let af = doc_admissible(&fi.doc, None)?;
            let cx = doc_complex(&ci.doc)?;
            let r = properness_support_check(&af, &cx).map_err(|e| e.to_string())?;
            let mut rep = Report::new("tcone properness", &[&fi, &ci]);
            if r.proper {
                rep.line("verdict: proper (support contains the fan over the complex)");
            } else {
                rep.line("verdict: not proper");
                if let Some(w) = &r.witness {
                    rep.line(format!("witness: {}", render_zvec(w)));
                }
                rep.fail();
            }
            rep.line(format!("supports equal: {}", r.support_equal));
            if let Some(w) = &r.excess_witness {
                rep.line(format!("excess witness: {}", render_zvec(w)));
            }
            Ok(rep)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.cmd {
        Cmd::Fan(c) => run_fan(c),
        Cmd::Trop(c) => run_trop(c),
        Cmd::Geomtrop(c) => run_geomtrop(c),
        Cmd::Toric(c) => run_toric(c),
        Cmd::Tcone(c) => run_tcone(c),
    };
    match result {
        Ok(rep) => {
            let code = rep.print();
            eprintln!("elapsed: {:?}", start.elapsed());
            code
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
