use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::Serialize;

use ptflab::bits::exhaustion_limit;
use ptflab::boolean::{
    oddmaxbit, random_decision_list, random_parity, random_rdl, random_tree, Concept, DecisionList,
};
use ptflab::parity::{holdout_error, learn_parity as run_parity, success_frequency, ParityReport, ParityTask};
use ptflab::poly::IntPoly;
use ptflab::ptf::{
    compose_ptf, main_block_length, main_ptf, outer_ptf, rdl_ptf, rows_to_csv, tradeoff_profile, tree_ptf,
    verify_ptf_exhaustive, Construction, Family, Ptf, PtfMeta, VerifyReport,
};
use ptflab::rng::SeedSplitter;
use ptflab::winnow::{
    expanded_winnow_for_list, run_learner, winnow_record, Arithmetic, ExpandedWinnow, HalvingLearner,
    LearnerConfig, ListLearner, MistakeRecord, Teacher, HALVING_MAX_K, HALVING_MAX_N, RECORD_CSV_HEADER,
};

use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConceptKind {
    Oddmaxbit,
    Random,
    RandomRdl,
    RandomTree,
    File,
}

#[derive(Debug, Clone, Args)]
pub struct ConceptArgs {
    #[arg(long, value_enum, default_value = "random")]
    kind: ConceptKind,
    /// List length.
    #[arg(long)]
    k: Option<usize>,
    /// Number of variables (defaults to k).
    #[arg(long)]
    n: Option<usize>,
    /// Conjunction width for random-rdl.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Leaf budget for random-tree.
    #[arg(long, default_value_t = 16)]
    leaves: usize,
    /// Concept JSON for --kind file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ConceptArgs {
    fn build(&self) -> anyhow::Result<Concept> {
        let need_k = || self.k.context("--k is required for this concept kind");
        let concept = match self.kind {
            ConceptKind::Oddmaxbit => {
                let k = need_k()?;
                let list = oddmaxbit(k)?;
                match self.n {
                    Some(n) if n != k => DecisionList::new(n, list.items().to_vec(), list.default_label())?.into(),
                    _ => list.into(),
                }
            }
            ConceptKind::Random => {
                let k = need_k()?;
                random_decision_list(k, self.n.unwrap_or(k), self.seed)?.into()
            }
            ConceptKind::RandomRdl => {
                let k = need_k()?;
                random_rdl(k, self.n.unwrap_or(k), self.r, self.seed)?.into()
            }
            ConceptKind::RandomTree => {
                let n = self.n.or(self.k).context("--n is required for random-tree")?;
                random_tree(n, self.leaves, self.seed)?.into()
            }
            ConceptKind::File => {
                let path = self.file.as_ref().context("--file is required for --kind file")?;
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Concept::from_json(&text)?
            }
        };
        Ok(concept)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Outer,
    Compose,
    Main,
    Rdl,
    Tree,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    concept: ConceptArgs,
    /// Block length (defaults to the main choice for k).
    #[arg(long)]
    h: Option<usize>,
    /// Defaults to main for lists, rdl for r-decision lists, tree for trees.
    #[arg(long, value_enum)]
    construction: Option<ConstructionArg>,
    /// Directory for concept.json, ptf.txt and report.json.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_verify: bool,
    /// Test hook: shift the constant term so the polynomial is negative everywhere.
    #[arg(long, hide = true)]
    corrupt_constant: bool,
}

#[derive(Serialize)]
struct ConstructReport<'a> {
    ptf: &'a PtfMeta,
    verify: Option<VerifyReport>,
}

fn build_ptf(concept: &Concept, construction: Option<ConstructionArg>, h: Option<usize>) -> anyhow::Result<Ptf> {
    let block = |k: usize| h.unwrap_or_else(|| main_block_length(k));
    Ok(match (concept, construction) {
        (Concept::DecisionList(l), None | Some(ConstructionArg::Main)) => {
            if h.is_some() && construction.is_none() {
                compose_ptf(l, block(l.len()))?
            } else {
                main_ptf(l)?
            }
        }
        (Concept::DecisionList(l), Some(ConstructionArg::Outer)) => outer_ptf(l, block(l.len()))?,
        (Concept::DecisionList(l), Some(ConstructionArg::Compose)) => compose_ptf(l, block(l.len()))?,
        (Concept::DecisionList(l), Some(ConstructionArg::Rdl)) => rdl_ptf(&l.to_rdl(), block(l.len()))?,
        (Concept::RDecisionList(l), None | Some(ConstructionArg::Rdl)) => rdl_ptf(l, block(l.len()))?,
        (Concept::DecisionTree(t), None | Some(ConstructionArg::Tree)) => tree_ptf(t)?,
        (other, c) => bail!("construction {c:?} does not apply to a {} concept", kind_name(other)),
    })
}

fn kind_name(c: &Concept) -> &'static str {
    match c {
        Concept::DecisionList(_) => "decision list",
        Concept::ModifiedDecisionList(_) => "modified decision list",
        Concept::RDecisionList(_) => "r-decision list",
        Concept::DecisionTree(_) => "decision tree",
        Concept::Parity(_) => "parity",
    }
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn construct(args: ConstructArgs) -> anyhow::Result<Outcome> {
    let concept = args.concept.build()?;
    let mut ptf = build_ptf(&concept, args.construction, args.h)?;
    if args.corrupt_constant {
        let n = ptf.poly.n();
        let weight: num_bigint::BigInt = ptf.poly.weight();
        let shift = IntPoly::constant(n, -(weight + 1u32));
        ptf.poly = ptf.poly.add(&shift)?;
    }
    let verify = if args.no_verify { None } else { Some(verify_ptf_exhaustive(&ptf, &concept, exhaustion_limit())?) };
    if let Some(dir) = &args.out {
        write_file(&dir.join("concept.json"), &format!("{}\n", concept.to_json()))?;
        write_file(&dir.join("ptf.txt"), &ptf.poly.to_string())?;
        write_file(&dir.join("report.json"), &pretty(&ConstructReport { ptf: &ptf.meta, verify: verify.clone() }))?;
    }
    let m = &ptf.meta;
    println!(
        "construction={:?} k={} n={} h={} degree={} log2_weight={:.6}",
        m.construction,
        m.k,
        m.n,
        m.h.map_or("-".to_string(), |h| h.to_string()),
        ptf.degree(),
        m.log2_weight
    );
    match verify {
        Some(r) if !r.valid => Ok(Outcome::Failure(format!(
            "{} of {} inputs wrong ({} zero), first witness {}",
            r.mismatches,
            r.domain_size,
            r.zero_hits,
            r.first_witness.unwrap_or_default()
        ))),
        Some(r) => {
            println!("verified on all {} inputs", r.domain_size);
            Ok(Outcome::Success)
        }
        None => Ok(Outcome::Success),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TeacherArg {
    Adversarial,
    Iid,
}

impl From<TeacherArg> for Teacher {
    fn from(t: TeacherArg) -> Teacher {
        match t {
            TeacherArg::Adversarial => Teacher::Adversarial,
            TeacherArg::Iid => Teacher::Iid,
        }
    }
}

#[derive(Debug, Args)]
pub struct LearnDlArgs {
    #[command(flatten)]
    concept: ConceptArgs,
    #[arg(long, value_enum, default_value = "adversarial")]
    teacher: TeacherArg,
    #[arg(long, default_value_t = 1_000_000)]
    max_trials: u64,
    /// Feature degree (defaults to the degree of the main construction for k).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value = "3/2")]
    alpha: String,
    /// Threshold (defaults to the feature count).
    #[arg(long)]
    theta: Option<String>,
    /// Use f64 weights instead of exact ones.
    #[arg(long)]
    float: bool,
    /// JSON record path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a one-row CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_ratio(text: &str, what: &str) -> anyhow::Result<num_rational::BigRational> {
    text.trim().parse().map_err(|_| anyhow::anyhow!("{what} must be a rational like 3/2, got {text:?}"))
}

pub fn learn_dl(args: LearnDlArgs) -> anyhow::Result<Outcome> {
    let concept = args.concept.build()?;
    let n = concept.n();
    let list_len = match &concept {
        Concept::DecisionList(l) => Some(l.len()),
        _ => None,
    };
    let d = match (args.d, list_len) {
        (Some(d), _) => d,
        (None, Some(k)) => expanded_winnow_for_list(k.max(1), n)?.d,
        (None, None) => bail!("--d is required for concepts other than decision lists"),
    };
    let config = LearnerConfig {
        d,
        alpha: parse_ratio(&args.alpha, "--alpha")?,
        theta: args.theta.as_deref().map(|t| parse_ratio(t, "--theta")).transpose()?,
        arithmetic: if args.float { Arithmetic::Float } else { Arithmetic::Exact },
    };
    let seed = args.concept.seed;
    let mut learner = ExpandedWinnow::new(n, &config)?;
    let counts = run_learner(&mut learner, &concept, args.teacher.into(), args.max_trials, seed)?;
    let mut record = winnow_record(&learner, counts, args.teacher.into(), args.max_trials, seed);
    if let Concept::DecisionList(l) = &concept {
        if l.len() >= 2 {
            record = record.with_target(&main_ptf(l)?.poly);
        }
    }
    match &args.out {
        Some(path) => write_file(path, &pretty(&record))?,
        None => print!("{}", pretty(&record)),
    }
    if let Some(path) = &args.csv {
        write_file(path, &format!("{RECORD_CSV_HEADER}\n{}\n", record.csv_row()))?;
    }
    eprintln!("mistakes={} trials={} final_consistent={:?}", record.mistakes, record.trials, record.final_consistent);
    Ok(match record.final_consistent {
        Some(false) => Outcome::Failure(format!("not consistent after {} trials", record.trials)),
        _ => Outcome::Success,
    })
}

#[derive(Debug, Args)]
pub struct LearnParityArgs {
    #[arg(long)]
    n: usize,
    /// Size of the target parity.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to 100 n.
    #[arg(long)]
    max_trials: Option<u64>,
    /// Fresh examples used to estimate the error of the hypothesis.
    #[arg(long, default_value_t = 10_000)]
    holdout: usize,
    /// Extra restriction trials on the same sample to estimate the success frequency.
    #[arg(long, default_value_t = 0)]
    freq_trials: u64,
    /// Write the drawn sample here (`bits label` per line).
    #[arg(long)]
    sample_out: Option<PathBuf>,
    /// JSON report path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn learn_parity(args: LearnParityArgs) -> anyhow::Result<Outcome> {
    let seeds = SeedSplitter::new(args.seed);
    let target = random_parity(args.k, args.n, seeds.child(0))?;
    let task = ParityTask {
        n: args.n,
        k: args.k,
        eps: args.eps,
        delta: args.delta,
        seed: seeds.child(1),
        max_trials: args.max_trials,
    };
    let oracle = |x: &[bool]| target.eval(x).expect("oracle inputs have length n");
    let run = match run_parity(oracle, &task) {
        Ok(run) => run,
        Err(ptflab::Error::TrialsExhausted(t)) => {
            return Ok(Outcome::Failure(format!("no consistent restriction in {t} trials")))
        }
        Err(e) => return Err(e.into()),
    };
    let err = holdout_error(&run.hypothesis, &target, args.holdout, seeds.child(2));
    let frequency = if args.freq_trials > 0 {
        Some((success_frequency(&run.sample, args.k, args.freq_trials, seeds.child(3))?, args.freq_trials))
    } else {
        None
    };
    let report = ParityReport::new(&run, args.k, frequency, err)?;
    if let Some(path) = &args.sample_out {
        write_file(path, &run.sample.to_text())?;
    }
    match &args.out {
        Some(path) => write_file(path, &pretty(&report))?,
        None => print!("{}", pretty(&report)),
    }
    eprintln!(
        "weight={} (l={}) trials={} holdout_error={:.4}{}",
        run.hypothesis.weight(),
        run.ell,
        report.trials_used,
        err,
        if run.used_standard { " via the plain learner" } else { "" }
    );
    Ok(Outcome::Success)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Oddmaxbit,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileConstruction {
    Compose,
    Outer,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, value_enum, default_value = "oddmaxbit")]
    family: FamilyArg,
    /// List lengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    ks: Vec<usize>,
    /// Block lengths, comma separated; pairs with h > k are skipped.
    #[arg(long, value_delimiter = ',', required = true)]
    hs: Vec<usize>,
    #[arg(long, value_enum, default_value = "compose")]
    construction: ProfileConstruction,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_verify: bool,
    /// CSV path (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the rows as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

pub fn profile(args: ProfileArgs) -> anyhow::Result<Outcome> {
    let family = match args.family {
        FamilyArg::Oddmaxbit => Family::Oddmaxbit,
        FamilyArg::Random => Family::Random { seed: args.seed },
    };
    let construction = match args.construction {
        ProfileConstruction::Compose => Construction::Compose,
        ProfileConstruction::Outer => Construction::Outer,
    };
    let rows = tradeoff_profile(family, &args.ks, &args.hs, construction, !args.no_verify)?;
    let csv = rows_to_csv(&rows);
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &args.json {
        write_file(path, &pretty(&rows))?;
    }
    let failed: Vec<String> =
        rows.iter().filter(|r| r.verified == Some(false)).map(|r| format!("k={} h={}", r.k, r.h)).collect();
    if failed.is_empty() {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::Failure(format!("verification failed for {}", failed.join(", "))))
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_trials: u64,
    /// JSON table path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV table path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// One algorithm's result on the shared target, adversarial teacher.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub algorithm: String,
    /// "ok", or "infeasible" when the algorithm is not run at this size.
    pub status: String,
    pub mistakes: Option<u64>,
    pub final_consistent: Option<bool>,
    pub d: Option<usize>,
    pub num_features: Option<usize>,
    /// Full record for the Winnow rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record: Option<MistakeRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonTable {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub target: serde_json::Value,
    pub rows: Vec<ComparisonRow>,
}

fn plain_row(name: &str, counts: ptflab::winnow::RunCounts) -> ComparisonRow {
    ComparisonRow {
        algorithm: name.to_string(),
        status: "ok".to_string(),
        mistakes: Some(counts.mistakes),
        final_consistent: counts.final_consistent,
        d: None,
        num_features: None,
        record: None,
    }
}

pub fn compare(args: CompareArgs) -> anyhow::Result<Outcome> {
    let list = random_decision_list(args.k, args.n, args.seed)?;
    let concept: Concept = list.clone().into();
    let teacher = Teacher::Adversarial;
    let mut rows = Vec::new();
    let mut times = Vec::new();

    let start = Instant::now();
    let mut baseline = ListLearner::new(args.n);
    rows.push(plain_row("list_learner", run_learner(&mut baseline, &concept, teacher, args.max_trials, args.seed)?));
    times.push(start.elapsed());

    let start = Instant::now();
    if args.k <= HALVING_MAX_K && args.n <= HALVING_MAX_N {
        let mut halving = HalvingLearner::new(args.n, args.k)?;
        rows.push(plain_row("halving", run_learner(&mut halving, &concept, teacher, args.max_trials, args.seed)?));
    } else {
        rows.push(ComparisonRow {
            algorithm: "halving".to_string(),
            status: "infeasible".to_string(),
            mistakes: None,
            final_consistent: None,
            d: None,
            num_features: None,
            record: None,
        });
    }
    times.push(start.elapsed());

    let expanded = expanded_winnow_for_list(args.k.max(1), args.n)?;
    for (name, config) in [("winnow", LearnerConfig::balanced(1)), ("expanded_winnow", expanded)] {
        let start = Instant::now();
        let mut learner = ExpandedWinnow::new(args.n, &config)?;
        let counts = run_learner(&mut learner, &concept, teacher, args.max_trials, args.seed)?;
        let mut record = winnow_record(&learner, counts, teacher, args.max_trials, args.seed);
        if list.len() >= 2 {
            record = record.with_target(&main_ptf(&list)?.poly);
        }
        rows.push(ComparisonRow {
            algorithm: name.to_string(),
            status: "ok".to_string(),
            mistakes: Some(record.mistakes),
            final_consistent: record.final_consistent,
            d: Some(record.d),
            num_features: Some(record.num_features),
            record: Some(record),
        });
        times.push(start.elapsed());
    }

    let table = ComparisonTable {
        k: args.k,
        n: args.n,
        seed: args.seed,
        target: serde_json::from_str(&concept.to_json())?,
        rows,
    };
    if let Some(path) = &args.out {
        write_file(path, &pretty(&table))?;
    }
    if let Some(path) = &args.csv {
        let mut csv = String::from("algorithm,status,mistakes,final_consistent,d,num_features\n");
        for r in &table.rows {
            let opt = |v: Option<String>| v.unwrap_or_default();
            writeln!(
                csv,
                "{},{},{},{},{},{}",
                r.algorithm,
                r.status,
                opt(r.mistakes.map(|m| m.to_string())),
                opt(r.final_consistent.map(|b| b.to_string())),
                opt(r.d.map(|d| d.to_string())),
                opt(r.num_features.map(|n| n.to_string()))
            )
            .expect("writing to a String");
        }
        write_file(path, &csv)?;
    }
    println!("{:<16} {:>10} {:>9} {:>12}", "algorithm", "mistakes", "features", "wall_ms");
    for (r, t) in table.rows.iter().zip(&times) {
        let mistakes = r.mistakes.map_or(r.status.clone(), |m| m.to_string());
        let features = r.num_features.map_or("-".to_string(), |f| f.to_string());
        println!("{:<16} {:>10} {:>9} {:>12.1}", r.algorithm, mistakes, features, t.as_secs_f64() * 1e3);
    }
    let inconsistent: Vec<&str> =
        table.rows.iter().filter(|r| r.final_consistent == Some(false)).map(|r| r.algorithm.as_str()).collect();
    if inconsistent.is_empty() {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::Failure(format!("not consistent: {}", inconsistent.join(", "))))
    }
}
