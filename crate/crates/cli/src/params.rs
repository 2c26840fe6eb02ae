//! Typed run parameters, presets and the flat `key = value` config format.

use std::fmt;
use std::path::Path;

use crate::error::CliError;
use crate::output::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KickMode {
    Probs,
    Expectation,
    Selfavg,
    Optimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Decay,
    Special,
    Catmap,
    Kicks(KickMode),
    Fields,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Decay,
        Command::Special,
        Command::Catmap,
        Command::Kicks(KickMode::Probs),
        Command::Kicks(KickMode::Expectation),
        Command::Kicks(KickMode::Selfavg),
        Command::Kicks(KickMode::Optimize),
        Command::Fields,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Decay => "decay",
            Command::Special => "special",
            Command::Catmap => "catmap",
            Command::Kicks(KickMode::Probs) => "kicks probs",
            Command::Kicks(KickMode::Expectation) => "kicks expectation",
            Command::Kicks(KickMode::Selfavg) => "kicks selfavg",
            Command::Kicks(KickMode::Optimize) => "kicks optimize",
            Command::Fields => "fields",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Float,
    Text(&'static [&'static str]),
    FloatList,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
    Text(String),
    FloatList(Vec<f64>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(v) => f.write_str(&fmt_f64(*v)),
            Value::Text(s) => f.write_str(s),
            Value::FloatList(v) => {
                let parts: Vec<String> = v.iter().map(|x| fmt_f64(*x)).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

fn parse_float(raw: &str) -> Option<f64> {
    let raw = raw.trim();
    // `2pi/300`, `pi/2`, `1/70` style literals
    let (num, den) = match raw.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (raw, None),
    };
    let atom = |s: &str| -> Option<f64> {
        if let Some(k) = s.strip_suffix("pi") {
            let k = k.trim();
            let k = if k.is_empty() { 1.0 } else { k.parse::<f64>().ok()? };
            Some(k * std::f64::consts::PI)
        } else {
            s.parse::<f64>().ok()
        }
    };
    let v = match den {
        Some(d) => atom(num)? / atom(d)?,
        None => atom(num)?,
    };
    v.is_finite().then_some(v)
}

impl Kind {
    pub fn parse(self, key: &str, raw: &str) -> Result<Value, CliError> {
        let bad = |what: &str| CliError::Validation(format!("{key}: cannot parse {raw:?} as {what}"));
        match self {
            Kind::Int => {
                let t = raw.trim();
                let v = t.parse::<u64>().ok().or_else(|| {
                    let f = t.parse::<f64>().ok()?;
                    (f >= 0.0 && f.fract() == 0.0 && f < 1.8e19).then_some(f as u64)
                });
                v.map(Value::Int).ok_or_else(|| bad("a non-negative integer"))
            }
            Kind::Float => parse_float(raw).map(Value::Float).ok_or_else(|| bad("a number")),
            Kind::Text(choices) => {
                let t = raw.trim();
                if choices.contains(&t) {
                    Ok(Value::Text(t.to_string()))
                } else {
                    Err(CliError::Validation(format!(
                        "{key}: {t:?} is not one of {}",
                        choices.join(", ")
                    )))
                }
            }
            Kind::FloatList => {
                let t = raw.trim();
                if t.is_empty() {
                    return Ok(Value::FloatList(Vec::new()));
                }
                t.split(',')
                    .map(|p| parse_float(p).ok_or_else(|| bad("a comma-separated list of numbers")))
                    .collect::<Result<_, _>>()
                    .map(Value::FloatList)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Param {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

const fn p(key: &'static str, kind: Kind, default: &'static str, help: &'static str) -> Param {
    Param {
        key,
        kind,
        default,
        help,
    }
}

const LAYOUTS: &[&str] = &["grouped", "random"];
const FAMILIES: &[&str] = &["cauchy", "gaussian", "both"];
const MODES: &[&str] = &["sorted", "total"];
const PROB_METHODS: &[&str] = &["closed", "numeric"];
const EXP_METHODS: &[&str] = &["series", "closed"];

pub fn schema(cmd: Command) -> Vec<Param> {
    use Kind::*;
    match cmd {
        Command::Decay => vec![
            p("excited", Int, "1", "number of initially excited levels n"),
            p("band_levels", Int, "100", "number of band levels N"),
            p("spacing", Float, "2pi/300", "band level spacing"),
            p("coupling", Float, "1/70", "constant coupling phi"),
            p("level_energy", Float, "0", "energy of the excited levels"),
            p("t_max", Float, "400", "last time point"),
            p("dt", Float, "0.1", "time step of the output grid"),
        ],
        Command::Special => vec![
            p("excited", Int, "10", "number of excited levels n"),
            p("band_levels", Int, "100", "number of band levels N"),
            p("band_width", Float, "2", "band width W"),
            p("coupling", Float, "0.02", "coupling magnitude g"),
            p("level_energy", Float, "0", "energy of the excited levels"),
            p("t0", Float, "16", "selection time"),
            p("layout", Text(LAYOUTS), "grouped", "coupling phases: grouped positions or random"),
            p("groups", Int, "5", "number of sites for the grouped layout"),
            p("t_max", Float, "40", "last time point of trace.csv"),
            p("dt", Float, "0.1", "time step of trace.csv"),
            p("epsilon", Float, "0.1", "cluster half-width around 0 and 1"),
        ],
        Command::Catmap => vec![
            p("n_points", Int, "250", "surviving points requested"),
            p("grains", Int, "100", "number of equal-area coarse grains"),
            p("horizon", Int, "19", "steps between the two boundary times"),
            p("init_x0", Float, "0", "initial box"),
            p("init_x1", Float, "0.1", "initial box"),
            p("init_y0", Float, "0", "initial box"),
            p("init_y1", Float, "0.1", "initial box"),
            p("final_x0", Float, "0", "final box"),
            p("final_x1", Float, "0.1", "final box"),
            p("final_y0", Float, "0", "final box"),
            p("final_y1", Float, "0.1", "final box"),
            p("snapshot_times", FloatList, "0,1,2,4,5,8", "times written to snapshots.csv"),
            p("budget", Int, "10000000", "candidate budget"),
        ],
        Command::Kicks(KickMode::Probs) => vec![
            p("a", Float, "1e-4", "Cauchy scale"),
            p("theta_points", Int, "181", "angles on [0, pi]"),
            p("method", Text(PROB_METHODS), "closed", "closed-form or numeric wrapped sums"),
            p("n_max", Int, "10000", "branch cutoff for the numeric method"),
        ],
        Command::Kicks(KickMode::Expectation) => vec![
            p("a", Float, "1e-6", "Cauchy scale"),
            p("theta_points", Int, "19", "angles on [0, pi]"),
            p("method", Text(EXP_METHODS), "series", "paired series or small-a closed form"),
            p("n_max", Int, "1000000", "series cutoff"),
        ],
        Command::Kicks(KickMode::Selfavg) => vec![
            p("a", Float, "0.01", "Cauchy scale (Gaussian standard deviation)"),
            p("batch", Int, "100", "draws per batch mean"),
            p("repeats", Int, "10000", "number of batch means"),
            p("family", Text(FAMILIES), "both", "sampled family"),
        ],
        Command::Kicks(KickMode::Optimize) => vec![p(
            "mode",
            Text(MODES),
            "sorted",
            "signal for outcome-sorted or all particles",
        )],
        Command::Fields => vec![
            p("s", Float, "0.003", "half-separation of the wires (m)"),
            p("length", Float, "0.05", "length of the straight wires (m)"),
            p("current", Float, "100", "loop current (A)"),
            p("z", Float, "0.004", "trajectory height (m)"),
            p("x", Float, "0", "transverse offset of the trajectory (m)"),
            p("y_min", Float, "-0.08", "first trajectory point (m)"),
            p("y_max", Float, "0", "last trajectory point (m)"),
            p("points", Int, "161", "trajectory samples"),
            p("n_nodes", Int, "2000", "Simpson intervals per contour piece"),
            p("delta_t", Float, "1e-6", "interaction time for the estimates (s)"),
            p("path_length", Float, "0.1", "path length for the electric-field estimate (m)"),
        ],
    }
}

/// Resolved parameters in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub command: Command,
    entries: Vec<(&'static str, Kind, Value)>,
}

impl Params {
    pub fn defaults(command: Command) -> Self {
        let entries = schema(command)
            .into_iter()
            .map(|p| {
                let v = p
                    .kind
                    .parse(p.key, p.default)
                    .unwrap_or_else(|e| panic!("bad default for {}: {e}", p.key));
                (p.key, p.kind, v)
            })
            .collect();
        Self { command, entries }
    }

    pub fn set(&mut self, key: &str, raw: &str) -> Result<(), CliError> {
        let command = self.command;
        let entry = self
            .entries
            .iter_mut()
            .find(|e| e.0 == key)
            .ok_or_else(|| {
                CliError::Validation(format!("unknown key {key:?} for `{}`", command.name()))
            })?;
        entry.2 = entry.1.parse(key, raw)?;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Value)> {
        self.entries.iter().map(|e| (e.0, &e.2))
    }

    fn get(&self, key: &str) -> &Value {
        self.entries
            .iter()
            .find(|e| e.0 == key)
            .map(|e| &e.2)
            .unwrap_or_else(|| panic!("no parameter {key} for {}", self.command.name()))
    }

    pub fn f64(&self, key: &str) -> f64 {
        match self.get(key) {
            Value::Float(v) => *v,
            Value::Int(v) => *v as f64,
            other => panic!("{key} is not numeric: {other:?}"),
        }
    }

    pub fn u64(&self, key: &str) -> u64 {
        match self.get(key) {
            Value::Int(v) => *v,
            other => panic!("{key} is not an integer: {other:?}"),
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        usize::try_from(self.u64(key))
            .map_err(|_| CliError::Validation(format!("{key} is too large")))
    }

    pub fn text(&self, key: &str) -> &str {
        match self.get(key) {
            Value::Text(s) => s,
            other => panic!("{key} is not text: {other:?}"),
        }
    }

    pub fn list(&self, key: &str) -> &[f64] {
        match self.get(key) {
            Value::FloatList(v) => v,
            other => panic!("{key} is not a list: {other:?}"),
        }
    }
}

pub struct Preset {
    pub name: &'static str,
    pub commands: &'static [Command],
    pub seed: u64,
    pub values: &'static [(&'static str, &'static str)],
    pub about: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1",
        commands: &[Command::Decay],
        seed: 1,
        values: &[
            ("excited", "1"),
            ("band_levels", "100"),
            ("spacing", "2pi/300"),
            ("coupling", "1/70"),
            ("t_max", "400"),
            ("dt", "0.1"),
        ],
        about: "single level decaying into a 100-level band: Zeno, exponential, recurrence",
    },
    Preset {
        name: "fig2",
        commands: &[Command::Special],
        seed: 2,
        values: &[
            ("excited", "10"),
            ("band_levels", "100"),
            ("band_width", "2"),
            ("coupling", "0.02"),
            ("t0", "16"),
            ("layout", "grouped"),
            ("groups", "5"),
        ],
        about: "10 levels into a 100-level band; special states at t0 = 16",
    },
    Preset {
        name: "fig3-5",
        commands: &[Command::Catmap],
        seed: 3,
        values: &[
            ("n_points", "250"),
            ("grains", "100"),
            ("horizon", "19"),
            ("snapshot_times", "0,1,2,4,5,8,11,14,15,17,18,19"),
        ],
        about: "250-point cat-map gas constrained to regather at t = 19",
    },
    Preset {
        name: "fig6",
        commands: &[Command::Catmap],
        seed: 6,
        values: &[
            ("n_points", "250"),
            ("grains", "100"),
            ("horizon", "19"),
            ("snapshot_times", "0,19"),
        ],
        about: "entropy with and without the time-19 constraint, 100 grains",
    },
    Preset {
        name: "angle-scan",
        commands: &[
            Command::Kicks(KickMode::Probs),
            Command::Kicks(KickMode::Expectation),
            Command::Kicks(KickMode::Optimize),
        ],
        seed: 7,
        values: &[],
        about: "entry-angle scans of probabilities, expectations and signal",
    },
    Preset {
        name: "field-profile",
        commands: &[Command::Fields],
        seed: 8,
        values: &[
            ("s", "0.003"),
            ("length", "0.05"),
            ("current", "100"),
            ("z", "0.004"),
            ("y_min", "-0.08"),
            ("y_max", "0"),
            ("points", "161"),
        ],
        about: "entrance field of the two-wire magnet at s/z = 0.75",
    },
];

pub fn preset(name: &str) -> Result<&'static Preset, CliError> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        CliError::Validation(format!("unknown preset {name:?}; known: {}", names.join(", ")))
    })
}

/// Entries of a flat `key = value` file. `#` starts a comment.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Validation(format!("config line {}: expected `key = value`", no + 1))
        })?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_parse_for_every_command() {
        for c in Command::ALL {
            let p = Params::defaults(c);
            assert_eq!(p.iter().count(), schema(c).len());
        }
    }

    #[test]
    fn presets_are_consistent() {
        for pr in PRESETS {
            for &c in pr.commands {
                let mut p = Params::defaults(c);
                for (k, v) in pr.values {
                    p.set(k, v).unwrap();
                }
            }
        }
        assert_eq!(preset("fig1").unwrap().values[1], ("band_levels", "100"));
        assert!(preset("fig9").is_err());
    }

    #[test]
    fn float_literals() {
        assert_eq!(parse_float("2pi/300"), Some(2.0 * std::f64::consts::PI / 300.0));
        assert_eq!(parse_float("1/70"), Some(1.0 / 70.0));
        assert_eq!(parse_float("pi"), Some(std::f64::consts::PI));
        assert_eq!(parse_float("1e-4"), Some(1e-4));
        assert_eq!(parse_float("abc"), None);
        assert_eq!(parse_float("1/0"), None);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut p = Params::defaults(Command::Decay);
        assert!(matches!(p.set("bogus", "1"), Err(CliError::Validation(_))));
        assert!(p.set("dt", "x").is_err());
        assert!(p.set("dt", "0.5").is_ok());
    }

    #[test]
    fn config_format() {
        let entries = parse_config("# header\na = 1\n\n b=2 # trailing\n").unwrap();
        assert_eq!(entries, vec![("a".into(), "1".into()), ("b".into(), "2".into())]);
        assert!(parse_config("novalue").is_err());
    }
}
