use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use wbck_algebra::adjunction::{condition_s_product_of, groupoid_profile};
use wbck_algebra::axioms::{self, AlgebraClass, AxiomId};
use wbck_algebra::enumerate::enumerate_posets;
use wbck_algebra::hunt::{hunt, Assumption, HuntQuery, HuntVerdict, Target};
use wbck_algebra::search::enumerate_imp_tables;
use wbck_algebra::sectional::{derive_j_implication, derive_m_implication};
use wbck_algebra::structure::{StructureError, StructureFile};
use wbck_algebra::verify::{self, SuiteConfig};
use wbck_algebra::{Error, Exec, Law, OrderClass, OrderedAlgebra, Report, Verdict, Witness};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "wbck", version, about = "Finite ordered-algebra workbench")]
struct Cli {
    /// Worker threads for enumeration and hunting (1 = sequential).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check class membership of the algebra in a structure file.
    Check {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long, value_enum)]
        report: Option<ReportMode>,
    },
    /// Add a derived operation and print the augmented structure file.
    Derive {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: DerivedOp,
    },
    /// List posets up to isomorphism, optionally with implication tables.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "poset")]
        class: String,
        #[arg(long)]
        with_op: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Search for the smallest algebra satisfying the assumptions and
    /// violating the target law.
    Hunt {
        #[arg(long)]
        size_max: usize,
        #[arg(long, default_value = "poset")]
        class: String,
        #[arg(long)]
        assume: Vec<String>,
        #[arg(long)]
        refute: String,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Run the theorem sweeps.
    VerifyPaper {
        #[arg(long, default_value_t = 4)]
        size_max: usize,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportMode {
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum DerivedOp {
    JImp,
    MImp,
    Product,
}

/// A failed command: exit code plus message for standard error.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BoundExceeded { .. } | Error::Timeout => EXIT_BOUND,
            _ => EXIT_INPUT,
        };
        Failure(code, e.to_string())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Failure {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INPUT, msg.into())
}

struct Output {
    stdout: String,
    summary: String,
    code: u8,
}

fn load(path: &Path) -> Result<StructureFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(StructureFile::parse(&text)?)
}

fn setup_exec(jobs: Option<usize>) -> Result<Exec, Failure> {
    match jobs {
        Some(0) => Err(input_error("--jobs must be at least 1")),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(k) => {
            rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(|e| input_error(e.to_string()))?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::Parallel),
    }
}

fn parse_class(s: &str) -> Result<AlgebraClass, Failure> {
    AlgebraClass::parse(s).ok_or_else(|| input_error(format!("unknown class `{s}`")))
}

fn parse_order(s: &str) -> Result<OrderClass, Failure> {
    OrderClass::parse(s).ok_or_else(|| input_error(format!("unknown order class `{s}`")))
}

fn parse_law(s: &str) -> Result<Law, Failure> {
    Law::parse(s).map_err(|e| input_error(format!("law `{s}`: {e}")))
}

fn flag(law: &str, holds: bool) -> Verdict {
    Verdict { law: law.into(), holds, witness: None, note: None }
}

/// Verdicts for membership of `a` in `class`. The product for pocrig and
/// pocrim is the file's `mul` table, or the condition-S product if absent.
fn class_report(a: &OrderedAlgebra, class: AlgebraClass) -> Result<Report, Failure> {
    let p = a.poset();
    let mut r = axioms::check_axioms(a, class.axioms())?;
    if class == AlgebraClass::Heyting {
        r.push(flag("LATTICE", p.classify_order().is_lattice));
    }
    if class.needs_product() {
        let imp = a.imp()?;
        let mul = match a.mul_opt() {
            Some(m) => m.clone(),
            None => match condition_s_product_of(p, imp) {
                Ok(m) => m,
                Err((x, y)) => {
                    r.push(Verdict::fails("CONDITION-S", Witness::new(&["x", "y"], vec![x, y])));
                    return Ok(r);
                }
            },
        };
        let g = groupoid_profile(p, a.unit(), &mul);
        r.push(flag("COMMUTATIVE", g.commutative));
        r.push(flag("INTEGRAL", g.integral));
        r.push(flag("ISOTONE", g.isotone));
        r.push(flag("RESIDUATED", g.residual.as_ref() == Some(imp)));
        if class == AlgebraClass::Pocrim {
            r.push(flag("ASSOCIATIVE", g.associative));
        }
    }
    Ok(r)
}

fn check(file: &Path, class: &str, full: bool) -> Result<Output, Failure> {
    let s = load(file)?;
    let class = parse_class(class)?;
    let a = s.to_algebra()?;
    a.imp()?;
    let r = class_report(&a, class)?;
    let holds = r.all_hold();
    let mut stdout = String::new();
    if full {
        stdout.push_str(&r.render(a.poset()));
        let mut rest = Report::new();
        for id in AxiomId::ALL {
            if r.get(id.name()).is_none() {
                if let Ok(more) = axioms::check_axiom(&a, id) {
                    rest.extend(more);
                }
            }
        }
        stdout.push_str(&rest.render(a.poset()));
    } else if let Some(v) = r.first_failure() {
        stdout.push_str(&Report::from_iter([v.clone()]).render(a.poset()));
    }
    stdout.push_str(&format!("class {} {}\n", class.name(), if holds { "holds" } else { "fails" }));
    let summary = format!("{}: {} {}", s.name, class.name(), if holds { "holds" } else { "fails" });
    Ok(Output { stdout, summary, code: if holds { EXIT_HOLDS } else { EXIT_FAILS } })
}

fn derive(file: &Path, op: DerivedOp) -> Result<Output, Failure> {
    let mut s = load(file)?;
    let p = s.poset.clone();
    let failed = |msg: String| Ok(Output { stdout: String::new(), summary: msg, code: EXIT_FAILS });
    match op {
        DerivedOp::JImp => {
            let j = derive_j_implication(&p)?;
            match j.table {
                Some(t) if j.report.all_hold() => s.imp = Some(t),
                _ => return failed(format!("j-implication invalid:\n{}", j.report.render(&p))),
            }
        }
        DerivedOp::MImp => match derive_m_implication(&p)? {
            Some(t) => s.imp = Some(t),
            None => return failed("m-implication undefined: poset is not sectionally pseudocomplemented".into()),
        },
        DerivedOp::Product => {
            let a = s.to_algebra()?;
            match condition_s_product_of(&p, a.imp()?) {
                Ok(m) => s.mul = Some(m),
                Err((x, y)) => {
                    return failed(format!(
                        "condition S fails: {{z : {} <= {} -> z}} has no least element",
                        p.name(x),
                        p.name(y)
                    ))
                }
            }
        }
    }
    if s.top.is_none() {
        s.top = p.top();
    }
    Ok(Output { stdout: s.serialize(), summary: format!("{}: derived", s.name), code: EXIT_HOLDS })
}

fn enumerate(size: usize, class: &str, with_op: Option<&str>, count_only: bool, exec: Exec) -> Result<Output, Failure> {
    let order = parse_order(class)?;
    let with = with_op.map(parse_class).transpose()?;
    if with.is_some_and(AlgebraClass::needs_product) {
        return Err(input_error("--with-op takes an implication class"));
    }
    let posets = enumerate_posets(size, order, exec)?;
    let mut stdout = String::new();
    let mut count = 0;
    for (i, p) in posets.iter().enumerate() {
        match with {
            None => {
                count += 1;
                if !count_only {
                    let s = StructureFile {
                        name: format!("p{size}_{i}"),
                        poset: p.clone(),
                        top: p.top(),
                        imp: None,
                        mul: None,
                        join: None,
                        meet: None,
                    };
                    stdout.push_str(&s.serialize());
                }
            }
            Some(c) => {
                if p.top().is_none() || (c == AlgebraClass::Heyting && !p.classify_order().is_lattice) {
                    continue;
                }
                let tables = enumerate_imp_tables(p, c.axioms(), exec)?;
                for (k, t) in tables.into_iter().enumerate() {
                    count += 1;
                    if !count_only {
                        let a = OrderedAlgebra::implicative(p.clone(), t)?;
                        stdout.push_str(&StructureFile::from_algebra(format!("p{size}_{i}_{k}"), &a).serialize());
                    }
                }
            }
        }
    }
    if count_only {
        stdout.push_str(&format!("{count}\n"));
    }
    Ok(Output { stdout, summary: format!("{count} structures of size {size}"), code: EXIT_HOLDS })
}

fn parse_assumption(s: &str) -> Result<Assumption, Failure> {
    if let Some(c) = AlgebraClass::parse(s) {
        return Ok(Assumption::Class(c));
    }
    if let Ok(id) = AxiomId::from_str(s) {
        return Ok(Assumption::Axiom(id));
    }
    parse_law(s).map(Assumption::Law)
}

fn parse_target(s: &str) -> Result<Target, Failure> {
    if let Ok(id) = AxiomId::from_str(s) {
        return Ok(Target::Axiom(id));
    }
    parse_law(s).map(Target::Law)
}

fn run_hunt(
    size_max: usize,
    class: &str,
    assume: &[String],
    refute: &str,
    timeout: Option<f64>,
    exec: Exec,
) -> Result<Output, Failure> {
    let assume = assume.iter().map(|s| parse_assumption(s)).collect::<Result<Vec<_>, _>>()?;
    let refute = parse_target(refute)?;
    let mut q = HuntQuery::new(size_max, assume, refute);
    q.order = parse_order(class)?;
    if let Some(secs) = timeout {
        let d = Duration::try_from_secs_f64(secs).map_err(|e| input_error(format!("--timeout: {e}")))?;
        q.deadline = Some(Instant::now() + d);
    }
    match hunt(&q, exec)? {
        HuntVerdict::Exhausted(n) => Ok(Output {
            stdout: format!("exhausted {n}\n"),
            summary: format!("no countermodel to {} up to size {n}", q.refute),
            code: EXIT_HOLDS,
        }),
        HuntVerdict::Countermodel(c) => {
            let a = &c.algebra;
            let mut stdout = format!("countermodel {}\n", c.witness.display(a.poset()));
            stdout.push_str(
                &StructureFile::from_algebra(format!("counter{}_{}", a.size(), c.canonical_index), a).serialize(),
            );
            Ok(Output {
                stdout,
                summary: format!("{} fails on a {}-element algebra", q.refute, a.size()),
                code: EXIT_FAILS,
            })
        }
    }
}

fn verify_paper(size_max: usize, only: Option<u8>, exec: Exec) -> Result<Output, Failure> {
    let cfg = SuiteConfig::new(size_max, exec);
    let start = Instant::now();
    let ids: Vec<u8> = match only {
        Some(id) => vec![id],
        None => verify::CRITERIA.to_vec(),
    };
    let mut stdout = String::new();
    let mut passed = 0;
    for &id in &ids {
        let o = verify::run_criterion(id, &cfg)?;
        eprintln!("criterion {id}: {:.2?}", o.elapsed);
        passed += usize::from(o.passed());
        stdout.push_str(&format!("{o}\n"));
    }
    let elapsed = start.elapsed();
    let in_time = only.is_some() || elapsed <= verify::SUITE_TIME_LIMIT;
    let ok = passed == ids.len() && in_time;
    Ok(Output {
        stdout,
        summary: format!("{passed}/{} criteria passed in {elapsed:.2?}", ids.len()),
        code: if ok { EXIT_HOLDS } else { EXIT_FAILS },
    })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let exec = setup_exec(cli.jobs)?;
    match cli.command {
        Command::Check { file, class, report } => check(&file, &class, report.is_some()),
        Command::Derive { file, op } => derive(&file, op),
        Command::Enumerate { size, class, with_op, count_only } => {
            enumerate(size, &class, with_op.as_deref(), count_only, exec)
        }
        Command::Hunt { size_max, class, assume, refute, timeout } => {
            run_hunt(size_max, &class, &assume, &refute, timeout, exec)
        }
        Command::VerifyPaper { size_max, only } => verify_paper(size_max, only, exec),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS });
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn go(args: &[&str]) -> (u8, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("wbck").chain(args.iter().copied())).unwrap();
        match run(cli) {
            Ok(o) => (o.code, o.stdout, o.summary),
            Err(Failure(code, msg)) => (code, String::new(), msg),
        }
    }

    fn temp_file(name: &str, text: &str) -> String {
        let path = std::env::temp_dir().join(format!("wbck-{}-{name}", std::process::id()));
        fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn m2_is_heyting() {
        let (code, out, _) = go(&["check", &fixture("m2.alg"), "--class", "heyting"]);
        assert_eq!(code, EXIT_HOLDS);
        assert_eq!(out, "class heyting holds\n");
    }

    #[test]
    fn n5_is_not_relpc() {
        let (code, out, summary) = go(&["check", &fixture("n5.alg"), "--class", "relpc"]);
        assert_eq!(code, EXIT_FAILS);
        assert_eq!(out, "RPC-9 fails x=a y=b u=c\nclass relpc fails\n");
        assert_eq!(summary, "n5: relpc fails");
        let (code, _, _) = go(&["check", &fixture("n5.alg"), "--class", "sjp"]);
        assert_eq!(code, EXIT_HOLDS);
    }

    #[test]
    fn full_report_lists_every_axiom() {
        let (code, out, _) = go(&["check", &fixture("m2.alg"), "--class", "wbck", "--report", "full"]);
        assert_eq!(code, EXIT_HOLDS);
        for id in AxiomId::ALL {
            assert!(out.contains(id.name()), "{id}");
        }
    }

    #[test]
    fn derive_reproduces_fixture() {
        let (code, out, _) = go(&["derive", &fixture("n5_order.alg"), "--op", "j-imp"]);
        assert_eq!(code, EXIT_HOLDS);
        assert_eq!(out, fs::read_to_string(fixture("n5.alg")).unwrap());
    }

    #[test]
    fn m2_product_is_meet_and_pocrig() {
        let (code, out, _) = go(&["derive", &fixture("m2.alg"), "--op", "product"]);
        assert_eq!(code, EXIT_HOLDS);
        let s = StructureFile::parse(&out).unwrap();
        assert_eq!(s.mul, Some(wbck_algebra::OpTable::meet_of(&s.poset).unwrap()));
        let path = temp_file("m2mul.alg", &out);
        assert_eq!(go(&["check", &path, "--class", "pocrig"]).0, EXIT_HOLDS);
        assert_eq!(go(&["check", &path, "--class", "pocrim"]).0, EXIT_HOLDS);
    }

    #[test]
    fn enumerate_counts_and_files() {
        assert_eq!(go(&["enumerate", "--size", "4", "--class", "lattice", "--count-only"]).1, "2\n");
        assert_eq!(go(&["enumerate", "--size", "5", "--count-only"]).1, "63\n");
        let (code, out, _) = go(&["enumerate", "--size", "3", "--with-op", "wbck"]);
        assert_eq!(code, EXIT_HOLDS);
        let files: Vec<&str> = out.split_inclusive("end\n").collect();
        assert!(!files.is_empty());
        for f in files {
            let a = StructureFile::parse(f).unwrap().to_algebra().unwrap();
            assert!(axioms::classify(&a).unwrap().wbck);
        }
    }

    #[test]
    fn hunt_exhausts_refl() {
        let (code, out, _) = go(&["hunt", "--size-max", "3", "--assume", "wbck", "--refute", "x -> x = 1"]);
        assert_eq!(code, EXIT_HOLDS);
        assert_eq!(out, "exhausted 3\n");
    }

    #[test]
    fn hunt_accepts_laws_as_assumptions() {
        let (code, out, _) =
            go(&["hunt", "--size-max", "3", "--assume", "x <= y -> x", "--assume", "le-to", "--refute", "refl"]);
        assert_eq!(code, EXIT_HOLDS, "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["hunt", "--size-max", "9", "--refute", "refl"]).0, EXIT_BOUND);
        assert_eq!(go(&["hunt", "--size-max", "6", "--refute", "bck1", "--timeout", "0"]).0, EXIT_BOUND);
        assert_eq!(go(&["enumerate", "--size", "9", "--count-only"]).0, EXIT_BOUND);
        assert_eq!(go(&["enumerate", "--size", "0", "--count-only"]).0, EXIT_INPUT);
        assert_eq!(go(&["check", &fixture("m2.alg"), "--class", "nonsense"]).0, EXIT_INPUT);
        assert_eq!(go(&["check", &fixture("missing.alg"), "--class", "wbck"]).0, EXIT_INPUT);
        assert_eq!(go(&["hunt", "--size-max", "3", "--refute", "x -> = 1"]).0, EXIT_INPUT);
        assert_eq!(go(&["--jobs", "0", "enumerate", "--size", "2"]).0, EXIT_INPUT);
        assert_eq!(go(&["check", &fixture("n5_order.alg"), "--class", "wbck"]).0, EXIT_INPUT);
    }

    #[test]
    fn structure_errors_are_input_errors() {
        let anti = temp_file("anti.alg", "algebra bad\nelements 2 a b\nleq a b\nleq b a\nend\n");
        let (code, _, msg) = go(&["check", &anti, "--class", "wbck"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(msg.contains('a') && msg.contains('b'), "{msg}");
        let shape = temp_file("shape.alg", "algebra bad\nelements 3 a b c\nop imp\na b\na b\na b\nend\n");
        let (code, _, msg) = go(&["check", &shape, "--class", "wbck"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(msg.contains("3x2"), "{msg}");
        let name = temp_file("name.alg", "algebra bad\nelements 2 a b\nleq a q\nend\n");
        let (code, _, msg) = go(&["check", &name, "--class", "wbck"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(msg.contains('q'), "{msg}");
    }

    #[test]
    fn reports_are_deterministic() {
        let args = ["hunt", "--size-max", "4", "--assume", "wbck", "--refute", "bck1"];
        let first = go(&args);
        assert_eq!(first.0, EXIT_FAILS);
        assert_eq!(go(&args), first);
        assert_eq!(first.1, fs::read_to_string(fixture("hunt_bck1.out")).unwrap());
    }
}
