use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use so3wb_core::charclass::{self, WeightBundle};
use so3wb_core::exforms::{self, KForm};
use so3wb_core::liealg::{self, AlgebraKind, AlgebraModel};
use so3wb_core::repring::{Character, VirtualRep};
use so3wb_core::torsion::{self, DEFAULT_SEED};
use so3wb_core::verify;
use so3wb_core::{Error, Workbench, DEFAULT_RESOLUTION};

#[derive(Parser)]
#[command(name = "so3wb", version, about = "Exact checks for SO(3)-structures on 8-manifolds")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized case sampler.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Grid resolution of the pencil scan.
    #[arg(long, global = true, default_value_t = DEFAULT_RESOLUTION)]
    resolution: u32,

    /// Run on a deliberately wrong V/W split (test fixture).
    #[arg(long, global = true, hide = true)]
    corrupt_basis: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Representation ring of SO(3).
    #[command(subcommand)]
    Rep(RepCmd),
    /// Subalgebras of so(8).
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Invariant forms, Hodge star and stabilizers.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Characteristic classes and almost complex structures.
    #[command(subcommand)]
    Charclass(CharCmd),
    /// Intrinsic torsion and the invariant-torsion cases.
    #[command(subcommand)]
    Torsion(TorsionCmd),
    /// Recompute every published identity and compare.
    VerifyPaper,
    /// Print the frozen conventions.
    Conventions,
}

#[derive(Subcommand)]
enum RepCmd {
    /// Normalize a representation, or decompose a comma-separated weight list.
    Decompose { input: String },
    /// Clebsch–Gordan product.
    Tensor { a: String, b: String },
    /// Exterior or symmetric power.
    Power(PowerArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PowerSel {
    #[arg(long)]
    ext: Option<usize>,
    #[arg(long)]
    sym: Option<usize>,
}

#[derive(Args)]
struct PowerArgs {
    #[command(flatten)]
    sel: PowerSel,
    rep: String,
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Build an algebra: g, so3so5, su3, sp2sp1, sp2sp1-asd, so8.
    Build { kind: String },
    /// Intersection of two algebras.
    Intersect { a: String, b: String },
    /// Complement identities (all three), or the complement of one algebra.
    Complement { kind: Option<String> },
    /// Isotypes of the quotient by g and of the complement.
    Isotypes { kind: String },
}

#[derive(Subcommand)]
enum FormsCmd {
    /// Invariant forms in each degree.
    Invariants,
    /// Hodge star of a named invariant form or an e-notation form.
    Star { form: String },
    /// Stabilizer subalgebra of a form.
    Stabilizer { form: String },
    /// Stabilizer dimensions along the pencil γ + t·*γ.
    Pencil,
}

#[derive(Subcommand)]
enum CharCmd {
    /// Classes of a weight bundle (default: the tangent bundle).
    Report { weights: Option<String> },
    /// The almost complex structures and their types.
    Acs,
}

#[derive(Subcommand)]
enum TorsionCmd {
    /// Relative torsion table and cyclic identities.
    Table,
    /// The four families, with a seeded sample run.
    Cases {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Classify a pair of 2×2 matrices, rows separated by ';'.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

/// What every command produces.
#[derive(Serialize)]
struct Report {
    command: String,
    result: Value,
    anchors: Vec<String>,
    passed: bool,
    #[serde(skip)]
    text: String,
    #[serde(skip)]
    failures: Vec<String>,
}

impl Report {
    fn new(command: String, result: impl Serialize, text: String) -> Self {
        Report {
            command,
            result: to_value(result),
            anchors: Vec::new(),
            passed: true,
            text,
            failures: Vec::new(),
        }
    }

    fn anchor(mut self, a: &str) -> Self {
        self.anchors.push(a.to_string());
        self
    }

    fn expect(mut self, ok: bool, anchor: &str) -> Self {
        if !ok {
            self.passed = false;
            self.failures.push(anchor.to_string());
        }
        self.anchor(anchor)
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Failure modes: bad input is a usage error, anything else a failed check.
enum Fail {
    Usage(String),
    Check(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownTag(_) | Error::Degree(_) => Fail::Usage(e.to_string()),
            e => Fail::Check(e.to_string()),
        }
    }
}

type Out = Result<Report, Fail>;

fn parse_rep(s: &str) -> Result<VirtualRep, Fail> {
    Ok(s.parse::<VirtualRep>()?)
}

fn rep_cmd(c: &RepCmd, cmd: String) -> Out {
    let r = match c {
        RepCmd::Decompose { input } => {
            let r = if input.contains('S') || input.trim() == "0" {
                parse_rep(input)?
            } else {
                let ws = input
                    .split(',')
                    .map(|w| {
                        w.trim()
                            .parse::<i64>()
                            .map_err(|_| Fail::Usage(format!("invalid weight '{w}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Character::from_weights(ws).decompose()?
            };
            r
        }
        RepCmd::Tensor { a, b } => parse_rep(a)?.tensor(&parse_rep(b)?),
        RepCmd::Power(p) => {
            let base = parse_rep(&p.rep)?;
            match (p.sel.ext, p.sel.sym) {
                (Some(k), _) => base.exterior_power(k)?,
                (_, Some(k)) => base.symmetric_power(k)?,
                _ => unreachable!("clap enforces one of --ext/--sym"),
            }
        }
    };
    let text = format!("{r}  (dim {})", r.dim());
    Ok(Report::new(cmd, &r, text).anchor("Λ²(S²⊕S⁴) = 2S⁶⊕S⁴⊕3S²"))
}

fn kind(s: &str) -> Result<AlgebraKind, Fail> {
    Ok(s.parse::<AlgebraKind>()?)
}

fn alg_cmd(wb: &Workbench, c: &AlgCmd, cmd: String) -> Out {
    let g = &wb.algebra(AlgebraKind::G)?.space;
    match c {
        AlgCmd::Build { kind: k } => {
            let a: &AlgebraModel = wb.algebra(kind(k)?)?;
            let r = a.report();
            let text = format!(
                "{}: dim {}, bracket-closed {}, contains g {}",
                r.name, r.dim, r.bracket_closed, r.contains_g
            );
            let ok = r.bracket_closed && r.contains_g && r.dim == a.kind.expected_dim();
            Ok(Report::new(cmd, &r, text).expect(ok, "the complements in so(8)"))
        }
        AlgCmd::Intersect { a, b } => {
            let (ka, kb) = (kind(a)?, kind(b)?);
            let x = wb.algebra(ka)?.space.intersect(&wb.algebra(kb)?.space)?;
            let equals_g = &x == g;
            let text = format!("{ka} ∩ {kb}: dim {}, equals g: {equals_g}", x.dim());
            let res = json!({"a": ka.tag(), "b": kb.tag(), "dim": x.dim(), "equals_g": equals_g});
            // Only pairs of the three intermediate algebras are claimed to meet in g.
            let claimed = [ka, kb].iter().all(|k| AlgebraKind::INTERMEDIATE.contains(k)) && ka != kb;
            Ok(Report::new(cmd, res, text).expect(equals_g || !claimed, "𝒢 = PSU(3) ∩ Sp(2)Sp(1)"))
        }
        AlgCmd::Complement { kind: None } => {
            let r = liealg::verify_complement_theorem(wb)?;
            let mut text = String::new();
            for c in &r.checks {
                let _ = writeln!(
                    text,
                    "{}^⊥ = {}/g ⊕ {}/g: {} = {} + {}, holds {}",
                    c.target,
                    c.summands.0,
                    c.summands.1,
                    c.target_dim,
                    c.summand_dims.0,
                    c.summand_dims.1,
                    c.projected_equal
                );
            }
            let qd: Vec<String> = r.quotient_dims.iter().map(|q| q.1.to_string()).collect();
            let _ = write!(
                text,
                "g^⊥ = ⊕ gᵢ/g: {} = {}, holds {}",
                r.g_perp_dim,
                qd.join(" + "),
                r.g_perp_is_direct_sum
            );
            let holds = r.holds;
            Ok(Report::new(cmd, &r, text).expect(holds, "the complements in so(8)"))
        }
        AlgCmd::Complement { kind: Some(k) } => {
            let k = kind(k)?;
            let s = liealg::complement(wb, k)?;
            let iso = liealg::subspace_isotypes(wb, &s)?;
            let text = format!("{k}^⊥: dim {}, {iso}", s.dim());
            Ok(
                Report::new(cmd, json!({"algebra": k.tag(), "dim": s.dim(), "isotypes": iso}), text)
                    .anchor("su(3)^⊥ = 2S⁶ ⊕ 2S²"),
            )
        }
        AlgCmd::Isotypes { kind: k } => {
            let k = kind(k)?;
            let own = liealg::subspace_isotypes(wb, &wb.algebra(k)?.space)?;
            let quot = if k == AlgebraKind::G {
                VirtualRep::zero()
            } else {
                liealg::quotient_isotypes(wb, k)?
            };
            let comp = liealg::complement_isotypes(wb, k)?;
            let text = format!("{k}: {own}\n{k}/g: {quot}\n{k}^⊥: {comp}");
            let res = json!({"algebra": k.tag(), "isotypes": own, "quotient": quot, "complement": comp});
            Ok(Report::new(cmd, res, text).anchor("su(3)^⊥ = 2S⁶ ⊕ 2S²"))
        }
    }
}

fn form_arg(wb: &Workbench, s: &str) -> Result<KForm, Fail> {
    if let Some(f) = wb.invariant_forms()?.get(s.trim()) {
        return Ok(f.clone());
    }
    Ok(exforms::parse_kform(s)?)
}

fn forms_cmd(wb: &Workbench, c: &FormsCmd, cmd: String, resolution: u32) -> Out {
    const ANCHOR: &str = "stabilises certain exterior differential forms";
    match c {
        FormsCmd::Invariants => {
            let dims: Vec<usize> = (0..=8)
                .map(|k| wb.invariant_subspace(k).map(|s| s.dim()))
                .collect::<Result<_, _>>()?;
            let f = wb.invariant_forms()?;
            let mut text = format!("invariant dims by degree: {dims:?}\n");
            let mut forms = serde_json::Map::new();
            for (name, form) in f.named() {
                let _ = writeln!(text, "{name:>6} = {form}");
                forms.insert(name.to_string(), to_value(form));
            }
            let norms: Vec<String> = f.norm_sq.iter().map(|q| q.to_string()).collect();
            let _ = write!(text, "|alpha|², |beta|², |gamma|² = {}", norms.join(", "));
            let res = json!({"dims": dims, "forms": forms, "norm_sq": norms});
            Ok(Report::new(cmd, res, text).anchor(ANCHOR))
        }
        FormsCmd::Star { form } => {
            let f = form_arg(wb, form)?;
            let s = exforms::hodge_star(&f);
            let text = format!("*({f}) = {s}");
            Ok(Report::new(cmd, json!({"input": f, "star": s}), text).anchor(ANCHOR))
        }
        FormsCmd::Stabilizer { form } => {
            let f = form_arg(wb, form)?;
            let s = exforms::stabilizer(&f);
            let g = &wb.algebra(AlgebraKind::G)?.space;
            let closed = liealg::is_bracket_closed(&s);
            let contains_g = s.contains_subspace(g);
            let text = format!(
                "stabilizer of {f}: dim {}, bracket-closed {closed}, contains g {contains_g}",
                s.dim()
            );
            let res = json!({"form": f, "dim": s.dim(), "bracket_closed": closed, "contains_g": contains_g});
            Ok(Report::new(cmd, res, text).anchor(ANCHOR))
        }
        FormsCmd::Pencil => {
            let scan = if resolution == DEFAULT_RESOLUTION {
                wb.pencil_scan()?.clone()
            } else {
                exforms::pencil_scan(&wb.gamma_pencil(resolution)?, wb.exec)?
            };
            let mut text = format!(
                "{} rays, generic stabilizer dim {}\n",
                scan.rays.len(),
                scan.generic_dim
            );
            for j in &scan.jumps {
                let _ = writeln!(text, "jump at t = {}: dim {}", j.slope, j.stabilizer_dim);
            }
            let ok = scan.jumps.len() == 2 && scan.jumps.iter().all(|j| j.stabilizer_dim == 13);
            Ok(Report::new(cmd, &scan, text.trim_end().to_string())
                .expect(ok, "Ω = γ + *γ")
                .anchor("Ω′ = γ − *γ"))
        }
    }
}

fn char_cmd(c: &CharCmd, cmd: String) -> Out {
    match c {
        CharCmd::Report { weights } => {
            let b = match weights {
                Some(w) => w.parse::<WeightBundle>()?,
                None => WeightBundle::tangent(),
            };
            let r = charclass::report(&b)?;
            let mut text = format!(
                "weights {}\nch = {}\np1 = {}\np2 = {}\ne = {}\n",
                r.weights, r.ch, r.p1, r.p2, r.euler
            );
            let _ = writeln!(
                text,
                "4p2 = p1²: {}; e = 0: {}; divisibility: {}",
                r.relations.four_p2_eq_p1sq, r.relations.euler_zero, r.relations.divisibility
            );
            for g in &r.genera {
                let _ = writeln!(text, "{:?}: {}", g.genus, g.value);
            }
            Ok(Report::new(cmd, &r, text.trim_end().to_string())
                .anchor("p₁² ∈ 8640 ℤ")
                .anchor("e(TM⁸) = 0"))
        }
        CharCmd::Acs => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for (name, j) in charclass::base_structures() {
                let mut r = charclass::acs_classify(&j)?;
                r.name = Some(name.to_string());
                let _ = writeln!(
                    text,
                    "{name}: {} {:?}, conjugate {:?}",
                    r.weights, r.kind, r.conjugate_kind
                );
                rows.push(r);
            }
            Ok(Report::new(cmd, &rows, text.trim_end().to_string())
                .anchor("The almost complex structure is defined by selecting"))
        }
    }
}

fn torsion_cmd(wb: &Workbench, c: &TorsionCmd, cmd: String, seed: u64) -> Out {
    match c {
        TorsionCmd::Table => {
            let t = torsion::torsion_table(wb)?;
            let cyc = torsion::verify_cyclic_identities(wb)?;
            let mut text = String::new();
            let mut ok = true;
            for r in &t.rows {
                ok &= r.routes_agree;
                let _ = writeln!(
                    text,
                    "{:<7} {:<40} dim {}",
                    r.group.to_string(),
                    r.space.rep.to_string(),
                    r.space.dim
                );
                if let Some(n) = &r.note {
                    let _ = writeln!(text, "        {n}");
                }
            }
            let _ = write!(text, "cyclic identities hold: {}", cyc.holds);
            ok &= cyc.holds;
            let res = json!({"table": t, "cyclic": cyc});
            Ok(Report::new(cmd, res, text)
                .anchor("This space has dimension 200")
                .expect(ok, "lives in the direct sum of the following modules"))
        }
        TorsionCmd::Cases { samples } => {
            let fams = torsion::enumerate_invariant_cases();
            let s = torsion::sample_cases(*samples, seed, wb.exec);
            let mut text = String::new();
            for f in &fams {
                let _ = writeln!(text, "{}: {}", f.family, f.conditions.join(", "));
                for (name, d) in &f.differentials {
                    let _ = writeln!(text, "    {name} = {d}");
                }
            }
            let _ = write!(
                text,
                "{} samples (seed {:#x}): {:?}, all consistent: {}",
                s.samples,
                s.seed,
                s.per_family,
                s.holds()
            );
            let ok = s.holds() && fams.iter().all(|f| f.ba_zero);
            Ok(Report::new(cmd, json!({"families": fams, "sampling": s}), text)
                .expect(ok, "one of the following four sets of differential equations"))
        }
        TorsionCmd::Classify { a, b } => {
            let c = torsion::case_classify(&torsion::parse_mat2(a)?, &torsion::parse_mat2(b)?);
            let mut text = c.tag();
            if let Some(m) = &c.m {
                let _ = write!(text, " (m = {m})");
            }
            if let Some(r) = &c.reason {
                let _ = write!(text, ": {r}");
            }
            Ok(Report::new(cmd, &c, text).anchor("one of the following four sets of differential equations"))
        }
    }
}

const CONVENTIONS: &[(&str, &str)] = &[
    ("field", "exact arithmetic over Q(sqrt 3); no floating point"),
    (
        "basis",
        "su(3) in Gell-Mann form; e1..e3 antisymmetric, spanning V = so(3) ≅ S2; e4..e8 symmetric, spanning W ≅ S4",
    ),
    ("so(8)", "28 coordinates X_ij, i < j; invariant form -tr(XY)"),
    (
        "so(3)",
        "e_i = 2 ad(L_i) with [e1,e2] = 2e3 cyclically; Casimir acts on S^n by -n(n+2)",
    ),
    ("action on forms", "X acts on Λ¹ by -Xᵀ and on Λᵏ as a derivation"),
    ("orientation", "e1^e2^...^e8; * defined by a ^ *b = <a,b> vol"),
    (
        "form normalization",
        "alpha, beta, gamma scaled to first nonzero coefficient 1; norms² 1, 15/4, 15",
    ),
    (
        "pencil",
        "gamma + t *gamma over slopes p/q with |p|, q <= resolution, plus inf",
    ),
    (
        "sp2sp1",
        "stabilizer of the self-dual form gamma + *gamma; sp2sp1-asd for gamma - *gamma",
    ),
    (
        "sampling",
        "ChaCha8 per shard, seeded by --seed, stream = shard index, 16 shards",
    ),
];

fn run(cli: &Cli) -> Out {
    let wb = if cli.corrupt_basis {
        Workbench::corrupted()
    } else {
        Workbench::reference()
    };
    let cmd: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match &cli.cmd {
        Cmd::Rep(c) => rep_cmd(c, cmd),
        Cmd::Alg(c) => alg_cmd(&wb, c, cmd),
        Cmd::Forms(c) => forms_cmd(&wb, c, cmd, cli.resolution),
        Cmd::Charclass(c) => char_cmd(c, cmd),
        Cmd::Torsion(c) => torsion_cmd(&wb, c, cmd, cli.seed),
        Cmd::VerifyPaper => {
            let v = verify::verify_paper(&wb, cli.seed);
            let mut r = Report::new(cmd, &v, v.to_string());
            let mut anchors: Vec<String> = Vec::new();
            for c in &v.checks {
                if !anchors.iter().any(|a| a == c.anchor) {
                    anchors.push(c.anchor.to_string());
                }
            }
            r.anchors = anchors;
            r.passed = v.passed;
            r.failures = v.failures().map(|c| c.anchor.to_string()).collect();
            r.failures.dedup();
            Ok(r)
        }
        Cmd::Conventions => {
            let text = CONVENTIONS
                .iter()
                .map(|(k, v)| format!("{k:<19} {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            let res: serde_json::Map<String, Value> =
                CONVENTIONS.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            Ok(Report::new(cmd, res, text))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            } else {
                println!("{}", r.text);
            }
            for a in &r.failures {
                eprintln!("check failed: {a}");
            }
            ExitCode::from(if r.passed { 0 } else { 1 })
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
    }
}
