mod app;
mod error;
mod output;
mod params;
mod run;

use std::io::Write;
use std::process::ExitCode;

use app::{Invocation, RunConfig};
use error::CliError;
use output::OutDir;

fn write_manifest(cfg: &RunConfig, out: &mut OutDir) -> Result<(), CliError> {
    let mut lines = vec![
        ("command".to_string(), cfg.params.command.name().to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("seed".to_string(), cfg.seed.to_string()),
        ("preset".to_string(), cfg.preset.clone().unwrap_or_default()),
    ];
    lines.extend(cfg.params.iter().map(|(k, v)| (k.to_string(), v.to_string())));
    out.text("manifest.txt", &lines)
}

fn run(cfg: &RunConfig) -> Result<(), CliError> {
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Validation(format!("threads: {e}")))?;
    }
    let mut out = OutDir::create(&cfg.out)?;
    let lines = run::execute(cfg, &mut out)?;
    write_manifest(cfg, &mut out)?;
    // a closed stdout (e.g. `| head`) must not turn a finished run into a failure
    let mut stdout = std::io::stdout().lock();
    for (k, v) in lines {
        let _ = writeln!(stdout, "{k} = {v}");
    }
    for f in out.written() {
        let _ = writeln!(stdout, "wrote {}", cfg.out.join(f).display());
    }
    Ok(())
}

fn list_presets() {
    let mut stdout = std::io::stdout().lock();
    for p in params::PRESETS {
        let cmds: Vec<&str> = p.commands.iter().map(|c| c.name()).collect();
        let _ = writeln!(stdout, "{:<14} {:<40} {}", p.name, cmds.join(" | "), p.about);
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("{}", e.record());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let matches = match app::build().try_get_matches() {
        Ok(m) => m,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(CliError::Validation(e.render().to_string().trim().to_string())),
    };
    match app::resolve(&matches) {
        Ok(Invocation::ListPresets) => {
            list_presets();
            ExitCode::SUCCESS
        }
        Ok(Invocation::Run(cfg)) => match run(&cfg) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        },
        Err(e) => fail(e),
    }
}
