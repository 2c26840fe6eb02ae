//! Command tree and parameter resolution.

use std::path::PathBuf;

use clap::parser::ValueSource;
use clap::{Arg, ArgAction, ArgMatches, Command as ClapCommand};

use crate::error::CliError;
use crate::params::{self, schema, Command, KickMode, Params};

pub const OUT_ENV: &str = "SPECSTATE_OUT";
const DEFAULT_SEED: u64 = 1;

fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

fn with_params(mut cmd: ClapCommand, c: Command) -> ClapCommand {
    for p in schema(c) {
        let mut arg = Arg::new(p.key)
            .long(flag_name(p.key))
            .value_name("VALUE")
            .allow_negative_numbers(true)
            .help(format!("{} [default: {}]", p.help, p.default));
        if p.key.contains('_') {
            arg = arg.alias(p.key);
        }
        cmd = cmd.arg(arg);
    }
    cmd
}

pub fn build() -> ClapCommand {
    let common = [
        Arg::new("seed")
            .long("seed")
            .global(true)
            .value_parser(clap::value_parser!(u64))
            .help("master seed [default: 1, or the preset's]"),
        Arg::new("preset").long("preset").global(true).help("named parameter set"),
        Arg::new("config")
            .long("config")
            .global(true)
            .value_parser(clap::value_parser!(PathBuf))
            .help("flat `key = value` parameter file"),
        Arg::new("set")
            .long("set")
            .global(true)
            .action(ArgAction::Append)
            .value_name("KEY=VALUE")
            .help("override one parameter (repeatable)"),
        Arg::new("out")
            .long("out")
            .global(true)
            .env(OUT_ENV)
            .default_value("out")
            .value_parser(clap::value_parser!(PathBuf))
            .help("output directory"),
        Arg::new("threads")
            .long("threads")
            .global(true)
            .value_parser(clap::value_parser!(usize))
            .help("worker threads (outputs do not depend on it)"),
    ];
    let kicks = ClapCommand::new("kicks")
        .about("Cauchy-kick measurement model")
        .subcommand_required(true)
        .subcommand(with_params(
            ClapCommand::new("probs").about("outcome probabilities over the entry angle"),
            Command::Kicks(KickMode::Probs),
        ))
        .subcommand(with_params(
            ClapCommand::new("expectation").about("conditional kick expectations"),
            Command::Kicks(KickMode::Expectation),
        ))
        .subcommand(with_params(
            ClapCommand::new("selfavg").about("self-averaging test of batch means"),
            Command::Kicks(KickMode::Selfavg),
        ))
        .subcommand(with_params(
            ClapCommand::new("optimize").about("entry angle maximizing the detection signal"),
            Command::Kicks(KickMode::Optimize),
        ));
    ClapCommand::new("specstate")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Special-state numerics: decay, special states, cat map, kicks, magnet fields")
        .subcommand_required(true)
        .args(common)
        .subcommand(with_params(
            ClapCommand::new("decay").about("survival of a level coupled to a band"),
            Command::Decay,
        ))
        .subcommand(with_params(
            ClapCommand::new("special").about("special states of the reduced propagator"),
            Command::Special,
        ))
        .subcommand(with_params(
            ClapCommand::new("catmap").about("two-time boundary value experiment on the cat map"),
            Command::Catmap,
        ))
        .subcommand(kicks)
        .subcommand(with_params(
            ClapCommand::new("fields").about("two-wire magnet entrance field"),
            Command::Fields,
        ))
        .subcommand(ClapCommand::new("presets").about("list the named parameter sets"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    pub seed: u64,
    pub preset: Option<String>,
    pub out: PathBuf,
    pub threads: Option<usize>,
}

pub enum Invocation {
    Run(RunConfig),
    ListPresets,
}

fn split_kv(raw: &str) -> Result<(&str, &str), CliError> {
    raw.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| CliError::Validation(format!("--set expects KEY=VALUE, got {raw:?}")))
}

fn parse_seed(raw: &str) -> Result<u64, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("seed: {raw:?} is not a 64-bit unsigned integer")))
}

/// Resolve defaults < preset < config file < `--set` < explicit flags.
pub fn resolve(m: &ArgMatches) -> Result<Invocation, CliError> {
    let (command, sub) = match m.subcommand() {
        Some(("presets", _)) => return Ok(Invocation::ListPresets),
        Some(("kicks", k)) => {
            let (name, sub) = k.subcommand().expect("kicks mode is required");
            let mode = match name {
                "probs" => KickMode::Probs,
                "expectation" => KickMode::Expectation,
                "selfavg" => KickMode::Selfavg,
                _ => KickMode::Optimize,
            };
            (Command::Kicks(mode), sub)
        }
        Some((name, sub)) => (Command::from_name(name).expect("known subcommand"), sub),
        None => unreachable!("subcommand is required"),
    };

    let mut params = Params::defaults(command);
    let mut seed = DEFAULT_SEED;
    let mut preset_name = m.get_one::<String>("preset").cloned();

    let config = match m.get_one::<PathBuf>("config") {
        Some(path) => params::read_config(path)?,
        None => Vec::new(),
    };
    if preset_name.is_none() {
        preset_name = config
            .iter()
            .find(|(k, _)| k == "preset")
            .map(|(_, v)| v.clone())
            .filter(|v| !v.is_empty());
    }

    if let Some(name) = &preset_name {
        let pr = params::preset(name)?;
        if !pr.commands.contains(&command) {
            return Err(CliError::Validation(format!(
                "preset {name:?} does not apply to `{}`",
                command.name()
            )));
        }
        seed = pr.seed;
        for (k, v) in pr.values {
            params.set(k, v)?;
        }
    }

    for (k, v) in &config {
        match k.as_str() {
            "seed" => seed = parse_seed(v)?,
            "command" => {
                if v != command.name() {
                    return Err(CliError::Validation(format!(
                        "config is for `{v}`, not `{}`",
                        command.name()
                    )));
                }
            }
            "version" | "preset" => {}
            _ => params.set(k, v)?,
        }
    }

    if let Some(sets) = m.get_many::<String>("set") {
        for raw in sets {
            let (k, v) = split_kv(raw)?;
            if k == "seed" {
                seed = parse_seed(v)?;
            } else {
                params.set(k, v)?;
            }
        }
    }

    for p in schema(command) {
        if sub.value_source(p.key) == Some(ValueSource::CommandLine) {
            let raw = sub.get_one::<String>(p.key).expect("flag has a value");
            params.set(p.key, raw)?;
        }
    }
    if let Some(&s) = m.get_one::<u64>("seed") {
        seed = s;
    }

    Ok(Invocation::Run(RunConfig {
        params,
        seed,
        preset: preset_name,
        out: m.get_one::<PathBuf>("out").cloned().unwrap_or_else(|| "out".into()),
        threads: m.get_one::<usize>("threads").copied(),
    }))
}
