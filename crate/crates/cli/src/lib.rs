//! Command surface of the `ncalg` binary. Every subcommand produces a
//! [`Report`]; the exit status is derived from it.

pub mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Report, Status, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Graded,
    Cumulative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitRules {
    Rules,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitPresentation {
    Presentation,
}

#[derive(Debug, Parser)]
#[command(name = "ncalg", version, about = "Graded noncommutative algebras over the rationals")]
pub struct Cli {
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Presentation file, or `builtin:U` / `builtin:A`.
    pub file: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complete the rewriting system of a presentation up to a degree.
    Complete {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_degree: u32,
        /// List the rules.
        #[arg(long, value_enum)]
        emit: Option<EmitRules>,
    },
    /// Normal-word counts per degree.
    Growth {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "graded")]
        flavor: FlavorArg,
    },
    /// Label the growth of a presentation from its cumulative counts.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_degree: u32,
    },
    /// Presentation of the degree-d Veronese subalgebra and its relation rank.
    Veronese {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        d: u32,
        /// Also complete the letter presentation to this letter degree and
        /// compare its counts with the source.
        #[arg(long)]
        max_letter_degree: Option<u32>,
        /// Solve the linear relations and remove the solved letters.
        #[arg(long)]
        eliminate: bool,
        #[arg(long, value_enum)]
        emit: Option<EmitPresentation>,
    },
    /// Compare the product formula for a Lie algebra with counts of an
    /// associative presentation.
    PbwCheck {
        /// Lie algebra, `builtin:L`.
        #[arg(long)]
        lie: String,
        /// Presentation file of the enveloping algebra, or a builtin.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Jacobi identity, antisymmetry and matrix model of the built-in Lie algebra.
    LieCheck {
        /// Name of the Lie algebra, `L`.
        #[arg(long)]
        builtin: String,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        matrix_indices: Option<u32>,
    },
    /// Check a list of named relations against the computed Veronese relations.
    VerifyAppendix {
        /// Relation list, or `builtin:V4U`.
        #[arg(long)]
        data: String,
        /// Presentation whose Veronese subalgebra the list describes.
        #[arg(long, default_value = "builtin:U")]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        d: u32,
        /// Members required for success; all listed lines by default.
        #[arg(long)]
        min_members: Option<usize>,
    },
    /// The partition number p(n).
    Partition {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Closed-form count of normal words of degree n of the built-in monoid
    /// algebra A.
    KobayashiCount {
        n: u64,
        /// Compare degrees 0..=n with normal-word counts.
        #[arg(long)]
        table: bool,
    },
}

impl Cli {
    /// Runs the command; errors become a report with status `error`.
    pub fn run(&self, echo: Vec<String>) -> Report {
        let mut report = Report::new(echo);
        if let Err(e) = commands::dispatch(&self.command, &mut report) {
            report.fail_with(e);
        }
        report
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv(),
    }
}
