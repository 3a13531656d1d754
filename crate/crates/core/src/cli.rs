//! The `sk` command line.
//!
//! Exit status: 0 on success, 1 when something was refuted or could not be
//! established (invalid inequality, disagreement, failed corpus check,
//! non-inductive input), 2 on usage and input errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{check_frame, mix_counterexample};
use crate::correspond::{correspondent, frames_for, oracle_equivalence, OracleVerdict};
use crate::corpus;
use crate::error::Error;
use crate::formula::{Inequality, VarOrderType};
use crate::gentree::{find_witnesses, is_inductive, is_sahlqvist, DependencyOrder, Mode};
use crate::semantics::{counterexample, enumerate_frames, transfer_check, EnumOptions, Frame, ValuationKind};
use crate::signature::Signature;
use crate::translate::{gmt, tau_eps_ineq, Options, Variant};

#[derive(Parser, Debug)]
#[command(name = "sk", about = "Sahlqvist and inductive inequalities for DLE logics", version)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Builtin signature name, `target:NAME`, or a JSON signature file.
    #[arg(long)]
    sig: String,
    #[arg(long)]
    ineq: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sahlqvist / inductive classification.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "both", value_parser = ["sahlqvist", "inductive", "both"])]
        mode: String,
        /// Check a single order-type, e.g. `p=1,q=d`.
        #[arg(long)]
        eps: Option<String>,
        /// Dependency order for --eps, e.g. `q<p`.
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, default_value_t = crate::gentree::DEFAULT_VAR_BOUND)]
        max_vars: usize,
    },
    /// Translate into the classical target language.
    Translate {
        #[command(flatten)]
        input: Input,
        #[arg(long, required_unless_present = "variant")]
        eps: Option<String>,
        #[arg(long)]
        no_s4_prefix: bool,
        /// Non-parametric translation: tau, sigma, tau_prime or sigma_prime.
        #[arg(long, conflicts_with = "eps", value_parser = ["tau", "sigma", "tau_prime", "sigma_prime"])]
        variant: Option<String>,
    },
    /// Validity of an inequality on one frame.
    Modelcheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        frame: String,
        #[arg(long, default_value = "persistent", value_parser = ["persistent", "classical"])]
        kind: String,
    },
    /// Compare validity of an inequality and of its translation on all small frames.
    TransferCheck {
        #[command(flatten)]
        input: Input,
        /// Defaults to every witnessing order-type.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
    },
    /// First-order correspondent.
    Correspond {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        eps: Option<String>,
        /// Check the correspondent against every frame up to N worlds.
        #[arg(long, value_name = "N")]
        verify: Option<usize>,
        /// Print the reduction steps.
        #[arg(long)]
        trace: bool,
    },
    /// Complex algebras and their Boolean companions.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Batch regression files.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Subcommand, Debug)]
enum AlgebraCommand {
    /// The distributive lattice where the embedding diagram commutes but mix fails.
    DemoMix,
    /// Diagram, adjunction and S4 checks for one frame or all small frames.
    Check {
        #[arg(long)]
        sig: String,
        #[arg(long, conflicts_with = "max_worlds", required_unless_present = "max_worlds")]
        frame: Option<String>,
        #[arg(long)]
        max_worlds: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    Run { file: String },
}

struct Outcome {
    ok: bool,
    text: String,
    data: Value,
}

fn usage_error(e: &Error) -> bool {
    !matches!(e, Error::NotInductive(_) | Error::Unsupported(_) | Error::BoundExceeded { .. })
}

fn eps_of(text: &str, vars: &[String]) -> Result<VarOrderType, Error> {
    let e = VarOrderType::parse(text)?;
    e.covers(vars)?;
    Ok(e)
}

fn parse_input(i: &Input) -> Result<(Signature, Inequality), Error> {
    let sig = Signature::resolve(&i.sig)?;
    let ineq = Inequality::parse(&i.ineq, &sig)?;
    Ok((sig, ineq))
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, pos: 0, msg: format!("{path}: {e}") })
}

fn load_frame(path: &str, sig: &Signature) -> Result<Frame, Error> {
    let fr = Frame::from_json(&read(path)?, &sig.source()?)?;
    fr.validate().map_err(|v| Error::Frame(v.join("; ")))?;
    Ok(fr)
}

fn execute(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Classify { input, mode, eps, omega, max_vars } => {
            let (sig, ineq) = parse_input(&input)?;
            if let Some(e) = eps {
                let vars = ineq.variables();
                let eps = eps_of(&e, &vars)?;
                let (s, sd) = is_sahlqvist(&ineq, &eps, &sig)?;
                let omega = DependencyOrder::parse(omega.as_deref().unwrap_or(""))?;
                let (i, id) = is_inductive(&ineq, &eps, &omega, &sig)?;
                let mut text = format!("inequality: {ineq}\neps: {}\nsahlqvist: {s}\ninductive ({{{omega}}}): {i}\n", eps.render(&vars));
                for d in sd.iter().chain(&id) {
                    text.push_str(&format!("  {d}\n"));
                }
                return Ok(Outcome {
                    ok: true,
                    text,
                    data: json!({
                        "inequality": ineq.to_string(),
                        "eps": eps.render(&vars),
                        "sahlqvist": s,
                        "inductive": i,
                        "diagnostics": sd.into_iter().chain(id).collect::<Vec<_>>(),
                    }),
                });
            }
            let mode = match mode.as_str() {
                "sahlqvist" => Mode::Sahlqvist,
                "inductive" => Mode::Inductive,
                _ => Mode::Both,
            };
            let rep = find_witnesses(&ineq, &sig, mode, max_vars)?;
            Ok(Outcome { ok: true, text: rep.to_string(), data: rep.to_json() })
        }
        Command::Translate { input, eps, no_s4_prefix, variant } => {
            let sig = Signature::resolve(&input.sig)?;
            if let Some(v) = variant {
                let v = Variant::parse(&v).expect("checked by clap");
                let parsed = Inequality::parse(&input.ineq, &sig)?;
                let t = Inequality::new(gmt(&parsed.lhs, v)?, gmt(&parsed.rhs, v)?);
                return Ok(Outcome { ok: true, text: format!("{t}\n"), data: json!({ "translated": t.to_string() }) });
            }
            let ineq = Inequality::parse(&input.ineq, &sig)?;
            let eps = eps_of(eps.as_deref().unwrap_or(""), &ineq.variables())?;
            let t = tau_eps_ineq(&ineq, &eps, &sig, Options { s4_prefix: !no_s4_prefix })?;
            Ok(Outcome {
                ok: true,
                text: format!("{t}\n"),
                data: json!({ "inequality": ineq.to_string(), "eps": eps.to_string(), "translated": t.to_string() }),
            })
        }
        Command::Modelcheck { input, frame, kind } => {
            let (sig, ineq) = parse_input(&input)?;
            let fr = load_frame(&frame, &sig)?;
            let kind = ValuationKind::parse(&kind).expect("checked by clap");
            let cx = counterexample(&ineq, &sig, &fr, kind)?;
            let text = match &cx {
                None => format!("valid on {fr}\n"),
                Some(v) => format!("invalid on {fr}\ncounterexample: {v}\n"),
            };
            Ok(Outcome {
                ok: cx.is_none(),
                text,
                data: json!({
                    "inequality": ineq.to_string(),
                    "valid": cx.is_none(),
                    "counterexample": cx.map(|v| v.values),
                }),
            })
        }
        Command::TransferCheck { input, eps, max_worlds } => {
            let (sig, ineq) = parse_input(&input)?;
            let vars = ineq.variables();
            let epss = match eps {
                Some(e) => vec![eps_of(&e, &vars)?],
                None => find_witnesses(&ineq, &sig, Mode::Both, crate::gentree::DEFAULT_VAR_BOUND)?
                    .witnesses
                    .into_iter()
                    .map(|w| w.eps)
                    .collect(),
            };
            if epss.is_empty() {
                return Err(Error::NotInductive(format!("no witnessing order-type for {ineq}")));
            }
            let (frames, _) = frames_for(&ineq, &sig, max_worlds)?;
            let mut text = String::new();
            let mut bad = Vec::new();
            for e in &epss {
                let mut fails = 0;
                for fr in &frames {
                    let r = transfer_check(&ineq, e, &sig, fr)?;
                    if !r.agree {
                        fails += 1;
                        text.push_str(&format!(
                            "  disagreement at {}: {fr} (inequality valid: {}, translation valid: {})\n",
                            e.render(&vars),
                            r.dle_valid,
                            r.bae_valid
                        ));
                        bad.push(json!({ "eps": e.render(&vars), "frame": fr.to_json(&sig.source()?), "dle_valid": r.dle_valid, "bae_valid": r.bae_valid }));
                    }
                }
                text.push_str(&format!("{} eps {}: {} frames, {fails} disagreements\n", if fails == 0 { "pass" } else { "FAIL" }, e.render(&vars), frames.len()));
            }
            Ok(Outcome {
                ok: bad.is_empty(),
                text,
                data: json!({
                    "inequality": ineq.to_string(),
                    "eps": epss.iter().map(|e| e.render(&vars)).collect::<Vec<_>>(),
                    "frames": frames.len(),
                    "disagreements": bad,
                }),
            })
        }
        Command::Correspond { input, eps, verify, trace } => {
            let (sig, ineq) = parse_input(&input)?;
            let eps = eps.map(|e| eps_of(&e, &ineq.variables())).transpose()?;
            let c = correspondent(&ineq, &sig, eps.as_ref())?;
            let mut text = String::new();
            if trace {
                text.push_str(&format!("translated: {}\n", c.translated));
                for s in &c.reduction.steps {
                    text.push_str(&s.to_string());
                }
            }
            text.push_str(&format!("{}\n", c.fo));
            let mut data = c.to_json();
            let mut ok = true;
            if let Some(n) = verify {
                let v = oracle_equivalence(&ineq, &sig, &c.fo, n)?;
                ok = v.verified();
                let (line, jv) = match v {
                    OracleVerdict::Verified { frames } => (format!("verified on {frames} frames up to {n} worlds"), json!({ "verified": true, "frames": frames })),
                    OracleVerdict::Refuted { frame, inequality_valid } => (
                        format!("REFUTED on {frame} (inequality valid: {inequality_valid})"),
                        json!({ "verified": false, "frame": frame.to_json(&sig.source()?), "inequality_valid": inequality_valid }),
                    ),
                };
                text.push_str(&line);
                text.push('\n');
                data["oracle"] = jv;
            }
            if trace {
                data["steps"] = json!(c.reduction.steps.iter().map(|s| json!({ "rule": s.rule, "state": s.state.iter().map(|q| q.to_string()).collect::<Vec<_>>() })).collect::<Vec<_>>());
            }
            Ok(Outcome { ok, text, data })
        }
        Command::Algebra(AlgebraCommand::DemoMix) => {
            let r = mix_counterexample();
            Ok(Outcome {
                ok: r.ok,
                text: format!("{r}\n"),
                data: json!({
                    "lines": r.lines,
                    "box_le_a": r.box_le_a,
                    "box_le_d": r.box_le_d,
                    "box_le_x": r.box_le_x,
                    "diagram_commutes": r.diagram_commutes,
                    "mix_lhs": r.mix_lhs,
                    "mix_rhs": r.mix_rhs,
                }),
            })
        }
        Command::Algebra(AlgebraCommand::Check { sig, frame, max_worlds }) => {
            let sig = Signature::resolve(&sig)?;
            let frames = match (frame, max_worlds) {
                (Some(path), _) => vec![load_frame(&path, &sig)?],
                (None, Some(n)) => enumerate_frames(&sig.source()?, n, &EnumOptions::default())?,
                (None, None) => unreachable!("clap requires one"),
            };
            let mut rep = crate::algebra::CheckReport::default();
            for fr in &frames {
                rep.merge(check_frame(fr, &sig.source()?)?);
            }
            Ok(Outcome {
                ok: rep.ok(),
                text: format!("{} frames\n{rep}\n", frames.len()),
                data: json!({ "frames": frames.len(), "checked": rep.checked, "failures": rep.failures }),
            })
        }
        Command::Corpus(CorpusCommand::Run { file }) => {
            let entries = corpus::parse(&read(&file)?)?;
            let rep = corpus::run(&entries);
            Ok(Outcome {
                ok: rep.ok(),
                text: format!("{rep}\n"),
                data: serde_json::to_value(&rep).expect("serializable"),
            })
        }
    }
}

fn name_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::Translate { .. } => "translate",
        Command::Modelcheck { .. } => "modelcheck",
        Command::TransferCheck { .. } => "transfer-check",
        Command::Correspond { .. } => "correspond",
        Command::Algebra(AlgebraCommand::DemoMix) => "algebra demo-mix",
        Command::Algebra(AlgebraCommand::Check { .. }) => "algebra check",
        Command::Corpus(_) => "corpus run",
    }
}

/// Run with `args` (including the program name) and return the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let json = cli.json;
    let command = name_of(&cli.command);
    match execute(cli.command) {
        Ok(o) => {
            if json {
                let mut env = json!({ "command": command, "ok": o.ok });
                if let (Value::Object(env), Value::Object(data)) = (&mut env, o.data) {
                    env.extend(data);
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("json"));
            } else {
                let _ = write!(out, "{}", o.text);
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if json {
                let env = json!({ "command": command, "ok": false, "error": e.to_string() });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("json"));
            }
            let _ = writeln!(err, "sk {command}: {e}");
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

