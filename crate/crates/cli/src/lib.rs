//! Library side of the `iet` command-line tool: input loading, random
//! instance generation, verification suites, and output formatting.

pub mod commands;
pub mod float;
pub mod gen;
pub mod input;
pub mod render;
pub mod suites;

use clap::Parser;

/// Parse arguments, run the chosen subcommand, and map the outcome to an
/// exit code: 0 on success (all checks passing where the command certifies
/// something), 1 when a computation fails or a certification does not hold,
/// 2 on a usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            1
        }
    }
}
