use std::process::ExitCode;

use clap::Parser;

use ncalg_cli::{render, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::iter::once("ncalg".to_string()).chain(std::env::args().skip(1)).collect();
    let report = cli.run(echo);
    let text = render(&report, cli.format);
    if report.status == Status::Error && cli.format == ncalg_cli::Format::Csv {
        eprint!("{}", report.to_text());
    }
    print!("{text}");
    ExitCode::from(report.status.exit_code() as u8)
}
