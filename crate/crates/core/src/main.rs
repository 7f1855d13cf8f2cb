use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mahler_core::cli::{exit_code, render_text, run, Args, Format, InputDoc};

fn main() -> ExitCode {
    let args = Args::parse();
    let result = InputDoc::from_args(&args).and_then(|doc| run(&doc).map(|r| (doc.format, r)));
    match result {
        Ok((format, report)) => {
            let out = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => render_text(&report),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
