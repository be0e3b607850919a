//! Command-line front end. Every command prints a JSON report (sorted keys,
//! no timing, so reruns are byte-identical) and exits with 0 when the checked
//! property holds, 1 when it fails with a witness, 2 on input errors and 3
//! when a resource cap is exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use chromatic::condition::gap;
use chromatic::consistency::{check_cycle_consistency_capped, check_prefix_independence, mp_counterexample_report, Witness};
use chromatic::ds::{classify_ds, ds_cycle_consistency_demo, gap_automaton, greedy_expansion, infinite_gap_sequence, DsVerdict};
use chromatic::games::{
    lift_experiment, product_game, solve_parity, strategy_project, verify_strategy, Arena, Player, StrategyCheck,
};
use chromatic::io::{self, parse_rational};
use chromatic::scalar::{max_ds, ExactScalar};
use chromatic::synthesis::{synthesize, verify_synthesis_capped, SynthesisCheck, SynthesisOptions};
use chromatic::{dot, ConditionSpec, Error, ParityAutomaton, Rational, Skeleton, DEFAULT_SUPPORT_CAP};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value as Json};
use sha2::{Digest, Sha256};
use thiserror::Error as ThisError;

#[derive(Parser, Debug)]
#[command(name = "chromatic", version, about = "Skeleton-relative analysis of winning conditions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Skeleton operations.
    #[command(subcommand)]
    Skel(SkelCmd),
    /// Condition residuals and right congruence.
    #[command(subcommand)]
    Cond(CondCmd),
    /// Prefix-independence and cycle-consistency checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Synthesize a parity automaton for a condition on top of a skeleton.
    Synthesize(SynthArgs),
    /// Check a parity automaton against a condition.
    Verify(VerifyArgs),
    /// Parity games on arenas.
    #[command(subcommand)]
    Game(GameCmd),
    /// Discounted-sum analysis.
    #[command(subcommand)]
    Ds(DsCmd),
    /// Executable counterexamples.
    #[command(subcommand)]
    Demo(DemoCmd),
    /// Graphviz export.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Subcommand, Debug)]
enum SkelCmd {
    /// Reachable product of two or more skeletons.
    Product {
        #[arg(long = "skeleton", required = true, num_args = 1)]
        skeletons: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// States visited while reading a word.
    Run {
        #[arg(long)]
        skeleton: PathBuf,
        /// Comma-separated colors; empty for the empty word.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        word: String,
    },
    /// Cycle supports in canonical order.
    Supports {
        #[arg(long)]
        skeleton: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CondCmd {
    /// Compare the residuals of two words.
    Residuals {
        #[arg(long)]
        condition: PathBuf,
        /// Two comma-separated words.
        #[arg(long = "word", num_args = 1, allow_hyphen_values = true, required = true)]
        words: Vec<String>,
    },
    /// Minimal-state automaton of the right congruence.
    RcAutomaton {
        #[arg(long)]
        condition: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    PrefixIndependence(CheckArgs),
    CycleConsistency(CheckArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    condition: PathBuf,
    #[arg(long)]
    skeleton: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the produced document here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a Graphviz rendering here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long)]
    condition: PathBuf,
    #[arg(long)]
    skeleton: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    cap: usize,
    /// Give transitions on no cycle the priority of the cycles they lead to.
    #[arg(long)]
    allow_transient: bool,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    condition: PathBuf,
    /// Parity automaton document.
    #[arg(long)]
    automaton: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum GameCmd {
    /// Solve the product of an arena with a parity automaton.
    Solve {
        #[arg(long)]
        arena: PathBuf,
        #[arg(long)]
        automaton: PathBuf,
        /// Player whose projected strategy `--out` receives.
        #[arg(long, default_value = "P1")]
        player: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check that a strategy wins wherever its player can win.
    Verify {
        #[arg(long)]
        arena: PathBuf,
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
    },
    /// Projected strategies on random arenas for both players.
    LiftExperiment {
        #[arg(long)]
        condition: PathBuf,
        #[arg(long)]
        skeleton: PathBuf,
        /// Number of arenas.
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 8)]
        max_states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct DsParams {
    /// Discount factor `p/q`.
    #[arg(long)]
    lambda: String,
    /// Colors range over `-k..=k`.
    #[arg(long)]
    k: i64,
}

#[derive(Subcommand, Debug)]
enum DsCmd {
    /// Whether the right congruence has finite index.
    Classify(DsParams),
    /// Gap automaton (right-congruence automaton).
    GapAutomaton {
        #[command(flatten)]
        params: DsParams,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Greedy expansion of `x` in base `1/λ`.
    Greedy {
        #[command(flatten)]
        params: DsParams,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 16)]
        digits: usize,
    },
    /// The gap sequence showing infinite index.
    Gaps {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Random interleavings of same-valued cycles keep their value.
    DemoCc {
        #[command(flatten)]
        params: DsParams,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCmd {
    /// Mean payoff is not cycle-consistent.
    Mp {
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ExportCmd {
    /// Graphviz rendering of one document.
    Dot {
        #[arg(long, group = "input")]
        skeleton: Option<PathBuf>,
        #[arg(long, group = "input")]
        automaton: Option<PathBuf>,
        #[arg(long, group = "input")]
        arena: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Output { code, stdout, stderr };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let mut ctx = Ctx {
        inputs: BTreeMap::new(),
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(Done::Report { passed, body }) => {
            let report = ctx.report(&echo, body);
            Output {
                code: if passed { 0 } else { 1 },
                stdout: io::to_canonical_string(&report),
                stderr: String::new(),
            }
        }
        Ok(Done::Text(text)) => Output {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

enum Done {
    Report { passed: bool, body: Map<String, Json> },
    Text(String),
}

fn ok(body: Json) -> CliResult<Done> {
    verdict(true, body)
}

fn verdict(passed: bool, body: Json) -> CliResult<Done> {
    let Json::Object(body) = body else {
        unreachable!("report bodies are objects")
    };
    Ok(Done::Report { passed, body })
}

struct Ctx {
    inputs: BTreeMap<String, Json>,
}

impl Ctx {
    fn read(&mut self, role: &str, path: &Path) -> CliResult<Json> {
        let bytes = fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let digest = hex::encode(Sha256::digest(&bytes));
        self.inputs.insert(
            role.to_string(),
            json!({"path": path.display().to_string(), "sha256": digest}),
        );
        let text = String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{}: not UTF-8", path.display())))?;
        Ok(io::parse(&text)?)
    }

    fn condition(&mut self, path: &Path) -> CliResult<ConditionSpec> {
        let v = self.read("condition", path)?;
        Ok(io::condition_from_json(&v)?)
    }

    fn skeleton(&mut self, role: &str, path: &Path) -> CliResult<Skeleton> {
        let v = self.read(role, path)?;
        Ok(io::skeleton_like_from_json(&v)?)
    }

    fn automaton(&mut self, path: &Path) -> CliResult<ParityAutomaton> {
        let v = self.read("automaton", path)?;
        Ok(io::parity_from_json(&v)?)
    }

    fn arena(&mut self, path: &Path) -> CliResult<Arena> {
        let v = self.read("arena", path)?;
        Ok(io::arena_from_json(&v)?)
    }

    fn report(&self, echo: &str, mut body: Map<String, Json>) -> Json {
        body.insert("format".into(), json!(io::FORMAT));
        body.insert("type".into(), json!("report"));
        body.insert("command".into(), json!(echo));
        body.insert("inputs".into(), json!(self.inputs));
        Json::Object(body)
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the document and its rendering where requested.
fn emit(out: &OutArgs, doc: &Json, dot: impl FnOnce() -> String) -> CliResult<()> {
    if let Some(p) = &out.out {
        write_file(p, &io::to_canonical_string(doc))?;
    }
    if let Some(p) = &out.dot {
        write_file(p, &dot())?;
    }
    Ok(())
}

fn split_word(w: &str) -> Vec<String> {
    if w.trim().is_empty() {
        Vec::new()
    } else {
        w.split(',').map(|c| c.trim().to_string()).collect()
    }
}

fn lambda_of(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> CliResult<Done> {
    match cmd {
        Command::Skel(c) => skel(c, ctx),
        Command::Cond(c) => cond(c, ctx),
        Command::Check(c) => check(c, ctx),
        Command::Synthesize(a) => synth(a, ctx),
        Command::Verify(a) => {
            let c = ctx.condition(&a.condition)?;
            let d = ctx.automaton(&a.automaton)?;
            let r = verify_synthesis_capped(&d, &c, a.samples, a.seed, a.cap)?;
            verdict(
                r.passed(),
                json!({"verdict": pass_str(r.passed()), "seed": a.seed, "check": check_json(&r)}),
            )
        }
        Command::Game(c) => game(c, ctx),
        Command::Ds(c) => ds(c, ctx),
        Command::Demo(DemoCmd::Mp { n }) => {
            let r = mp_counterexample_report(n)?;
            let rows: Vec<Json> = r
                .rows
                .iter()
                .map(|row| {
                    json!({"n": row.n, "mean_payoff": row.mean_payoff.to_string(),
                        "zero_position": row.zero_position, "running_sum": row.running_sum})
                })
                .collect();
            verdict(
                r.claims_hold(),
                json!({"verdict": pass_str(r.claims_hold()), "n_max": n, "rows": rows,
                    "cycles_losing": r.cycles_losing, "returns_to_zero": r.returns_to_zero}),
            )
        }
        Command::Export(ExportCmd::Dot {
            skeleton,
            automaton,
            arena,
            out,
        }) => {
            let text = if let Some(p) = automaton {
                dot::parity_dot(&ctx.automaton(&p)?)
            } else if let Some(p) = arena {
                dot::arena_dot(&ctx.arena(&p)?)
            } else if let Some(p) = skeleton {
                let v = ctx.read("skeleton", &p)?;
                match io::parity_from_json(&v) {
                    Ok(a) => dot::parity_dot(&a),
                    Err(_) => dot::skeleton_dot(&io::skeleton_from_json(&v)?),
                }
            } else {
                return Err(CliError::Usage("one of --skeleton, --automaton, --arena is required".into()));
            };
            match out {
                Some(p) => {
                    write_file(&p, &text)?;
                    ok(json!({"written": p.display().to_string()}))
                }
                None => Ok(Done::Text(text)),
            }
        }
    }
}

fn pass_str(p: bool) -> &'static str {
    if p {
        "pass"
    } else {
        "fail"
    }
}

fn skel(c: SkelCmd, ctx: &mut Ctx) -> CliResult<Done> {
    match c {
        SkelCmd::Product { skeletons, out } => {
            if skeletons.len() < 2 {
                return Err(CliError::Usage("product needs at least two --skeleton".into()));
            }
            let mut acc = ctx.skeleton("skeleton0", &skeletons[0])?;
            for (i, p) in skeletons.iter().enumerate().skip(1) {
                let m = ctx.skeleton(&format!("skeleton{i}"), p)?;
                acc = acc.product(&m)?;
            }
            let doc = io::skeleton_to_json(&acc);
            emit(&out, &doc, || dot::skeleton_dot(&acc))?;
            ok(json!({"states": acc.num_states(), "skeleton": doc}))
        }
        SkelCmd::Run { skeleton, word } => {
            let m = ctx.skeleton("skeleton", &skeleton)?;
            let w = split_word(&word);
            let run = m.run(&w)?;
            let names: Vec<&str> = run.iter().map(|&s| m.state_name(s)).collect();
            ok(json!({"word": w, "states": names}))
        }
        SkelCmd::Supports { skeleton, cap } => {
            let m = ctx.skeleton("skeleton", &skeleton)?;
            let s = chromatic::support::enumerate_cycle_supports(&m, cap)?;
            let list: Vec<String> = s.iter().map(|x| x.describe(&m)).collect();
            ok(json!({"count": s.len(), "supports": list}))
        }
    }
}

fn cond(c: CondCmd, ctx: &mut Ctx) -> CliResult<Done> {
    match c {
        CondCmd::Residuals { condition, words } => {
            if words.len() != 2 {
                return Err(CliError::Usage("give exactly two --word".into()));
            }
            let c = ctx.condition(&condition)?;
            let (w1, w2) = (split_word(&words[0]), split_word(&words[1]));
            let order = c.residual_compare(&w1, &w2)?;
            ok(json!({"first": w1, "second": w2, "order": order.to_string()}))
        }
        CondCmd::RcAutomaton { condition, out } => {
            let c = ctx.condition(&condition)?;
            let m = c.right_congruence_automaton()?;
            let doc = io::skeleton_to_json(&m);
            emit(&out, &doc, || dot::skeleton_dot(&m))?;
            ok(json!({"states": m.num_states(), "skeleton": doc}))
        }
    }
}

fn witness_json(w: &Witness) -> Json {
    match w {
        Witness::Prefixes { state, first, second } => {
            json!({"kind": "prefixes", "state": state, "first": first, "second": second})
        }
        Witness::Supports {
            state,
            access,
            value,
            first,
            second,
            first_walk,
            second_walk,
            union_walk,
        } => json!({
            "kind": "supports", "state": state, "access": access, "value": value.to_string(),
            "first": first, "second": second, "first_walk": first_walk,
            "second_walk": second_walk, "union_walk": union_walk,
        }),
    }
}

fn check(c: CheckCmd, ctx: &mut Ctx) -> CliResult<Done> {
    let (name, a) = match c {
        CheckCmd::PrefixIndependence(a) => ("prefix-independence", a),
        CheckCmd::CycleConsistency(a) => ("cycle-consistency", a),
    };
    let cond = ctx.condition(&a.condition)?;
    let m = ctx.skeleton("skeleton", &a.skeleton)?;
    let r = if name == "prefix-independence" {
        check_prefix_independence(&cond, &m)?
    } else {
        check_cycle_consistency_capped(&cond, &m, a.cap)?
    };
    let mut body = json!({"check": name, "verdict": r.verdict.to_string()});
    if let Some(w) = &r.witness {
        body["witness"] = witness_json(w);
        body["rechecked"] = json!(w.recheck(&cond, &m)?);
    }
    verdict(r.passed(), body)
}

fn check_json(r: &SynthesisCheck) -> Json {
    json!({
        "supports_checked": r.supports_checked,
        "support_mismatch": r.support_mismatch.as_ref().map(|s| json!({
            "support": s.description, "value": s.value.to_string(), "max_priority": s.max_priority,
        })),
        "lassos_checked": r.lassos_checked,
        "lasso_mismatches": r.lasso_mismatches,
        "first_lasso_mismatch": r.first_lasso_mismatch.as_ref().map(|l| json!({
            "prefix": l.lasso.prefix, "period": l.lasso.period,
            "value": l.value.to_string(), "accepted": l.accepted,
        })),
    })
}

fn synth(a: SynthArgs, ctx: &mut Ctx) -> CliResult<Done> {
    let cond = ctx.condition(&a.condition)?;
    let m = ctx.skeleton("skeleton", &a.skeleton)?;
    let opts = SynthesisOptions {
        cap: a.cap,
        allow_transient: a.allow_transient,
        samples: a.samples,
        seed: a.seed,
    };
    let s = match synthesize(&cond, &m, &opts) {
        Ok(s) => s,
        Err(e) => {
            // a failed precondition is a property of the input, not an error
            let stage = match &e {
                Error::Stage { stage, .. } => Some(*stage),
                _ => None,
            };
            if let (Some(stage), Error::Precondition { check, detail }) = (stage, e.root()) {
                return verdict(
                    false,
                    json!({"verdict": "fail", "stage": stage, "precondition": check, "detail": detail}),
                );
            }
            return Err(e.into());
        }
    };
    let sk = s.automaton.skeleton();
    let t = &s.table;
    let classes: Vec<Json> = t
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let members: Vec<String> = c.members.iter().map(|&j| t.supports[j].describe(sk)).collect();
            json!({"id": i, "representative": c.representative.describe(sk), "value": c.value.to_string(),
                "priority": s.p_gamma[i], "members": members})
        })
        .collect();
    let hasse: Vec<Json> = t
        .hasse()
        .iter()
        .map(|&(x, y)| json!([t.classes[x].representative.describe(sk), t.classes[y].representative.describe(sk)]))
        .collect();
    let doc = io::parity_to_json(&s.automaton);
    emit(&a.out, &doc, || dot::parity_dot(&s.automaton))?;
    verdict(
        s.check.passed(),
        json!({"verdict": pass_str(s.check.passed()), "seed": a.seed, "classes": classes, "hasse": hasse,
            "automaton": doc, "check": check_json(&s.check)}),
    )
}

fn strategy_check_json(r: &StrategyCheck) -> Json {
    json!({
        "verdict": pass_str(r.passed()), "winnable": r.winnable, "kept": r.kept,
        "witness": r.witness.as_ref().map(|w| json!({
            "arena_state": w.arena_state, "automaton_state": w.automaton_state,
            "memory_state": w.memory_state, "prefix": w.prefix, "period": w.period,
        })),
    })
}

fn game(c: GameCmd, ctx: &mut Ctx) -> CliResult<Done> {
    match c {
        GameCmd::Solve {
            arena,
            automaton,
            player,
            out,
        } => {
            let a = ctx.arena(&arena)?;
            let d = ctx.automaton(&automaton)?;
            let player: Player = player.parse()?;
            let pg = product_game(&a, &d)?;
            let sol = solve_parity(&pg.game);
            let states: Vec<Json> = (0..pg.game.num_states())
                .map(|v| {
                    let e = a.edges()[pg.arena_edge[sol.strategy[v]]];
                    json!({"state": pg.game.states()[v], "owner": pg.game.owner(v).to_string(),
                        "winner": sol.winner[v].to_string(),
                        "move": [a.color_name(e.color), a.states()[e.dst]]})
                })
                .collect();
            let mut strategies = Map::new();
            for p in [Player::P1, Player::P2] {
                let s = strategy_project(&a, &pg, d.skeleton(), &sol.strategy, p)?;
                let doc = io::strategy_to_json(&a, &s);
                if p == player {
                    emit(&out, &doc, || dot::arena_dot(&a))?;
                }
                strategies.insert(p.to_string(), doc);
            }
            ok(json!({"states": states, "strategies": strategies,
                "p1_region": sol.region(Player::P1).len(), "p2_region": sol.region(Player::P2).len()}))
        }
        GameCmd::Verify {
            arena,
            automaton,
            strategy,
        } => {
            let a = ctx.arena(&arena)?;
            let d = ctx.automaton(&automaton)?;
            let v = ctx.read("strategy", &strategy)?;
            let s = io::strategy_from_json(&a, &v)?;
            let r = verify_strategy(&a, &d, &s, s.player)?;
            verdict(r.passed(), strategy_check_json(&r))
        }
        GameCmd::LiftExperiment {
            condition,
            skeleton,
            samples,
            max_states,
            seed,
        } => {
            let cond = ctx.condition(&condition)?;
            let m = ctx.skeleton("skeleton", &skeleton)?;
            let r = lift_experiment(&cond, &m, samples, max_states, seed)?;
            let failures: Vec<Json> = r
                .failures
                .iter()
                .map(|f| json!({"arena": f.arena, "player": f.player.to_string(),
                    "witness": f.witness.as_ref().map(|w| json!({"prefix": w.prefix, "period": w.period}))}))
                .collect();
            verdict(
                r.passed(),
                json!({"verdict": pass_str(r.passed()), "seed": seed, "arenas": r.arenas,
                    "max_states": max_states, "automaton_states": r.automaton_states,
                    "p1_passed": r.p1_passed, "p2_passed": r.p2_passed, "failures": failures}),
            )
        }
    }
}

fn ds(c: DsCmd, ctx: &mut Ctx) -> CliResult<Done> {
    let _ = ctx;
    match c {
        DsCmd::Classify(p) => {
            let lambda = lambda_of(&p.lambda)?;
            let r = classify_ds(&lambda, p.k)?;
            let mut body = json!({"lambda": lambda.to_string(), "k": p.k, "verdict": r.verdict.to_string()});
            if r.verdict != DsVerdict::InfiniteIndex {
                let g = gap_automaton(&lambda, p.k)?;
                body["automaton"] = io::skeleton_to_json(&g.skeleton);
            }
            ok(body)
        }
        DsCmd::GapAutomaton { params, out } => {
            let lambda = lambda_of(&params.lambda)?;
            let g = gap_automaton(&lambda, params.k)?;
            let doc = io::skeleton_to_json(&g.skeleton);
            emit(&out, &doc, || dot::skeleton_dot(&g.skeleton))?;
            let gaps: BTreeMap<&str, String> = g
                .skeleton
                .states()
                .iter()
                .zip(&g.gaps)
                .map(|(s, v)| (s.as_str(), v.to_string()))
                .collect();
            ok(json!({"lambda": lambda.to_string(), "k": params.k, "states": g.skeleton.num_states(),
                "gaps": gaps, "automaton": doc}))
        }
        DsCmd::Greedy { params, x, digits } => {
            let lambda = lambda_of(&params.lambda)?;
            let x = lambda_of(&x)?;
            let r = greedy_expansion(&x, &lambda, params.k, digits)?;
            let bound = max_ds(&lambda, params.k) * ExactScalar::pow(&lambda, digits);
            let within = -bound.clone() <= r.remainder && r.remainder <= bound;
            verdict(
                within,
                json!({"x": x.to_string(), "lambda": lambda.to_string(), "k": params.k, "digits": r.digits,
                    "remainder": r.remainder.to_string(), "tail_bound": bound.to_string(),
                    "within_bound": within}),
            )
        }
        DsCmd::Gaps { lambda, terms } => {
            let lambda = lambda_of(&lambda)?;
            let r = infinite_gap_sequence(&lambda, terms)?;
            let gaps: Vec<String> = r.gaps.iter().map(|g| g.to_string()).collect();
            // independent recomputation from the colors
            let k = r.colors.iter().map(|c| c.abs()).max().unwrap_or(1).max(1) + 1;
            let recomputed = (1..=r.colors.len()).all(|i| gap(&r.colors[..i], &lambda, k).finite() == Some(&r.gaps[i - 1]));
            verdict(
                r.all_checks_pass() && recomputed,
                json!({"lambda": lambda.to_string(), "colors": r.colors, "gaps": gaps,
                    "pairwise_distinct": r.pairwise_distinct, "denominators_exact": r.denominators_exact,
                    "bounded": r.bounded, "recomputed": recomputed}),
            )
        }
        DsCmd::DemoCc { params, samples, seed } => {
            let lambda = lambda_of(&params.lambda)?;
            let r = ds_cycle_consistency_demo(&lambda, params.k, samples, seed)?;
            let failures: Vec<Json> = r
                .failures
                .iter()
                .map(|f| json!({"sample": f.sample, "prefix": f.prefix, "family": f.family, "pre": f.pre,
                    "rep": f.rep, "expected": f.outcome.expected.to_string(), "value": f.outcome.value.to_string()}))
                .collect();
            verdict(
                r.passed(),
                json!({"verdict": pass_str(r.passed()), "seed": seed, "samples": r.samples, "vacuous": r.vacuous,
                    "consistent": r.consistent, "resolved_by_interval": r.resolved_by_interval,
                    "resolved_exactly": r.resolved_exactly, "failures": failures}),
            )
        }
    }
}
