mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::args::Cli;
use crate::report::{summary, write_file, Context};

/// Flags that only choose where output goes; left out of the inputs digest.
const OUTPUT_FLAGS: [&str; 3] = ["--out", "--dot", "--json"];

fn digest_args(argv: &[String]) -> Vec<String> {
    let mut kept = Vec::new();
    let mut skip_value = false;
    for arg in argv {
        if skip_value {
            skip_value = false;
            continue;
        }
        let flag = arg.split('=').next().unwrap_or(arg);
        if OUTPUT_FLAGS.contains(&flag) {
            skip_value = flag != "--json" && !arg.contains('=');
            continue;
        }
        kept.push(arg.clone());
    }
    kept
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut ctx = Context::new(digest_args(&argv));
    let start = Instant::now();
    if let Err(e) = commands::run(&cli, &mut ctx) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let passed = ctx.passed();
    let (mut report, dot) = ctx.finish(elapsed);
    report.command = argv;
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    let written = cli.out.as_ref().map(|path| write_file(path, &text));
    let dot_written = match (&cli.dot, dot) {
        (Some(path), Some(d)) => Some(write_file(path, &d)),
        (Some(_), None) => {
            eprintln!("note: this command has no DOT drawing");
            None
        }
        _ => None,
    };
    for result in written.into_iter().chain(dot_written) {
        if let Err(e) = result {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{text}");
    } else if cli.out.is_none() {
        print!("{}", summary(&report));
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
