use clap::{Parser, Subcommand, ValueEnum};
use fourier_cli::commands::{
    cmd_calgebra, cmd_check_all, cmd_classify, cmd_duality, cmd_generate, cmd_integrality,
    cmd_modular, cmd_reconstruct, cmd_rescale, cmd_screen, cmd_verify, parse_factor_list,
    parse_parameter, CliError, GenerateKind, GlobalOpts, Outcome,
};
use fourier_cli::document::DocumentForm;

/// Exact verification, rescaling, and classification of Fourier matrices.
///
/// Inputs are plain-text documents of comma-separated exact scalar
/// expressions such as `1/2 + 3/2*E(8)^3`; `#` starts a comment.  Exit
/// status: 0 when every check passes, 1 when a check fails, 2 for
/// unusable input or invocation.
#[derive(Parser)]
#[command(name = "fmat", version, max_term_width = 100)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Require structure constants to be nonnegative integers rather
    /// than arbitrary integers.
    #[arg(long, global = true)]
    strict_nonnegative: bool,
    /// Cap, in bits, for interval refinement when deciding signs of real
    /// exact values.
    #[arg(long, global = true, default_value_t = 4096)]
    max_precision_bits: u32,
    #[command(subcommand)]
    command: Command,
}

/// How the entries of a matrix file are scaled.
#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    /// Symmetric unitary matrix with positive first column.
    #[value(name = "S")]
    Fourier,
    /// First-column-normalized matrix (sᵢⱼ = Sᵢⱼ/Sᵢ₀).
    #[value(name = "s")]
    Normalized,
    /// Unnormalized table (pᵢⱼ = sᵢⱼ·s₀ⱼ), e.g. a character table.
    #[value(name = "P")]
    Table,
    /// Sparse structure constants with a `rank:` header.
    #[value(name = "lambda-table")]
    LambdaTable,
    /// A single row of degrees.
    #[value(name = "degrees")]
    Degrees,
}

impl From<FormArg> for DocumentForm {
    fn from(arg: FormArg) -> DocumentForm {
        match arg {
            FormArg::Fourier => DocumentForm::Fourier,
            FormArg::Normalized => DocumentForm::Normalized,
            FormArg::Table => DocumentForm::Table,
            FormArg::LambdaTable => DocumentForm::LambdaTable,
            FormArg::Degrees => DocumentForm::Degrees,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining axioms on a matrix.
    Verify {
        /// Form of the input when the file has no `form:` header.
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        /// Input file, or `-` for stdin.
        #[arg(default_value = "-")]
        file: String,
    },
    /// Check a matrix pair (S, T) as a modular datum.
    Modular {
        /// Form of the S input when it has no `form:` header.
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        /// File holding S.
        s_file: String,
        /// File holding the diagonal matrix T.
        t_file: String,
    },
    /// Convert between the S, s, and P scalings of a matrix.
    Rescale {
        /// Target form.
        #[arg(long, value_enum)]
        to: FormArg,
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
    /// Build the algebra spanned by the columns and check its axioms.
    Calgebra {
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
    /// Compute P·conj(P) and compare the dual degrees with the original.
    Duality {
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
    /// Test the integral rescaled-structure-constant condition.
    Integrality {
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
    /// Rebuild the unitary matrix from a table and re-verify the axioms.
    Reconstruct {
        #[arg(long, value_enum, default_value = "P")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
    /// Reject degree vectors no Fourier matrix can realize.
    Screen {
        /// A degrees file, `-` for stdin, or an inline vector like `1,2,2`.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Decide the column group of a homogeneous or prime-order matrix.
    Classify {
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
    /// Emit a known table in the document format.
    Generate {
        #[command(subcommand)]
        kind: GenerateCommand,
    },
    /// Run every verification on one input and report the full ledger.
    CheckAll {
        #[arg(long, value_enum, default_value = "S")]
        form: FormArg,
        #[arg(default_value = "-")]
        file: String,
    },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Character table of the abelian group with the given cyclic factors.
    Abelian {
        /// Comma-separated factor orders, e.g. `2,2` or `4`.
        factors: String,
    },
    /// The 2×2 table [[1, n], [1, -1]] for a positive rational n.
    Rank2 {
        /// The parameter n, e.g. `4` or `3/2`.
        parameter: String,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let opts = GlobalOpts { json: cli.json, strict_nonnegative: cli.strict_nonnegative };
    match cli.command {
        Command::Verify { form, file } => cmd_verify(&opts, form.into(), &file),
        Command::Modular { form, s_file, t_file } => {
            cmd_modular(&opts, form.into(), &s_file, &t_file)
        }
        Command::Rescale { to, form, file } => cmd_rescale(&opts, form.into(), to.into(), &file),
        Command::Calgebra { form, file } => cmd_calgebra(&opts, form.into(), &file),
        Command::Duality { form, file } => cmd_duality(&opts, form.into(), &file),
        Command::Integrality { form, file } => cmd_integrality(&opts, form.into(), &file),
        Command::Reconstruct { form, file } => cmd_reconstruct(&opts, form.into(), &file),
        Command::Screen { input } => cmd_screen(&opts, &input),
        Command::Classify { form, file } => cmd_classify(&opts, form.into(), &file),
        Command::Generate { kind } => {
            let kind = match kind {
                GenerateCommand::Abelian { factors } => {
                    GenerateKind::Abelian { factors: parse_factor_list(&factors)? }
                }
                GenerateCommand::Rank2 { parameter } => {
                    GenerateKind::Rank2 { parameter: parse_parameter(&parameter)? }
                }
            };
            cmd_generate(&opts, kind)
        }
        Command::CheckAll { form, file } => cmd_check_all(&opts, form.into(), &file),
    }
}

fn main() {
    let cli = Cli::parse();
    fourier_core::set_sign_precision_cap(cli.max_precision_bits);
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.render(json));
            std::process::exit(i32::from(outcome.exit));
        }
        Err(err) => {
            eprintln!("fmat: error: {err}");
            std::process::exit(2);
        }
    }
}
