mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format, RunArgs, SamplerArg};
use commands::CliError;
use flagrank_core::orbitrank::{RankConfig, Sampler};

fn rank_config(a: &RunArgs) -> Result<RankConfig, CliError> {
    let seed = match std::env::var("FLAGRANK_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("FLAGRANK_SEED={s:?} is not an unsigned integer")))?,
        Err(_) => a.seed,
    };
    Ok(RankConfig {
        seed,
        retries: a.retries as usize,
        height: a.height,
        word_length: a.word_length.map(|w| w as usize),
        sampler: match a.sampler {
            SamplerArg::Nilradical => Sampler::Nilradical,
            SamplerArg::Word => Sampler::Word,
        },
    })
}

fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let config = rank_config(&cli.config)?;
    match &cli.command {
        Command::Classify(a) => commands::classify(a, &config),
        Command::Table(a) => commands::table(a, &config, cli.config.max_rank as usize),
        Command::Decompose(a) => commands::decompose(a, &config),
        Command::VerifyInvariants(a) => commands::verify_invariants(a, &config),
        Command::Certify(a) => commands::certify(a, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.config.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable report") + "\n",
                Format::Markdown => out.markdown,
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
