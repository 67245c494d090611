//! Command-line surface for the Fibonacci partition toolkit.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use fibpart::precision::to_decimal_string;
use fibpart::{
    a_exact, b_log_average, bounds, fib, mean, oracle, r_exact, ratio_series,
    ZeckendorfExpansion,
};

#[derive(Parser)]
#[command(
    name = "fibpart",
    about = "Partitions into distinct Fibonacci numbers (OEIS A000119): \
             exact counts, summatory values, and certified asymptotic bounds",
    version
)]
struct Cli {
    /// Significant decimal digits for high-precision output.
    #[arg(long, global = true, default_value_t = 50, env = "FIBPART_DIGITS")]
    digits: u32,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// The m-th Fibonacci number (F1 = F2 = 1).
    Fib { m: u64 },
    /// Zeckendorf expansion of N as a JSON array of indices, largest first.
    Zeck { n: String },
    /// R(H): partitions of H into distinct Fibonacci numbers.
    R { h: String },
    /// A(H) = R(0) + R(1) + ... + R(H).
    A { h: String },
    /// M(H) = A(H)/H as an exact rational.
    Mean { h: String },
    /// B(H), the logarithmic average of R(n)/n^lambda over n <= H.
    Bavg { h: u64 },
    /// CSV of A(H)/H^lambda for H = 1..limit.
    RatioSeries {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// Certified enclosures of c1 and c2 from a depth-bounded subdivision.
    Bounds {
        #[arg(long, default_value_t = 27)]
        depth: u32,
    },
    /// Check every formula path against brute force for H <= limit.
    Verify {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// CSV of brute-force R and A values for n = 0..limit.
    OracleDump {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("fibpart: cannot open {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(BufWriter::new(io::stdout())),
    };
    match run(&cli, &mut out) {
        Ok(code) => {
            if let Err(e) = out.flush() {
                eprintln!("fibpart: write error: {e}");
                return ExitCode::from(1);
            }
            code
        }
        Err(e) => {
            eprintln!("fibpart: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_big(s: &str) -> Result<BigUint, Box<dyn std::error::Error>> {
    Ok(s.parse::<BigUint>()
        .map_err(|_| format!("'{s}' is not a non-negative decimal integer"))?)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let digits = cli.digits;
    match &cli.command {
        Command::Fib { m } => {
            let value = fib(*m)?;
            emit_scalar(out, cli.format, "fib", &value.to_string())?;
        }
        Command::Zeck { n } => {
            let z = ZeckendorfExpansion::encode(&parse_big(n)?)?;
            let json = serde_json::to_string(z.indices())?;
            writeln!(out, "{json}")?;
        }
        Command::R { h } => {
            let value = r_exact(&parse_big(h)?);
            emit_scalar(out, cli.format, "r", &value.to_string())?;
        }
        Command::A { h } => {
            let value = a_exact(&parse_big(h)?);
            emit_scalar(out, cli.format, "a", &value.to_string())?;
        }
        Command::Mean { h } => {
            let value = mean(&parse_big(h)?)?;
            emit_scalar(out, cli.format, "mean", &value.to_string())?;
        }
        Command::Bavg { h } => {
            let value = b_log_average(*h, digits)?;
            emit_scalar(out, cli.format, "bavg", &to_decimal_string(&value, digits))?;
        }
        Command::RatioSeries { limit } => {
            writeln!(out, "H,ratio")?;
            for (h, ratio) in ratio_series(*limit, digits)? {
                writeln!(out, "{h},{}", to_decimal_string(&ratio, digits))?;
            }
        }
        Command::Bounds { depth } => {
            if cli.format == Format::Csv {
                writeln!(out, "pattern,v_num,v_den,w,L,U")?;
                for row in fibpart::asymptotics::endpoint_rows(*depth, digits)? {
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        row.pattern.csv_field(),
                        row.v.numer(),
                        row.v.denom(),
                        to_decimal_string(&row.w, digits),
                        row.lower.map_or(String::new(), |l| to_decimal_string(&l, digits)),
                        row.upper.map_or(String::new(), |u| to_decimal_string(&u, digits)),
                    )?;
                }
            } else {
                let report = bounds(*depth, digits)?;
                writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json())?)?;
            }
        }
        Command::Verify { limit } => {
            let mismatches = oracle::verify_formulas(*limit)?;
            if mismatches.is_empty() {
                writeln!(out, "ok: all formula paths match brute force for 0 <= H <= {limit}")?;
            } else {
                for m in &mismatches {
                    writeln!(
                        out,
                        "MISMATCH H={} {}: expected {}, got {}",
                        m.h, m.quantity, m.expected, m.actual
                    )?;
                }
                out.flush()?;
                return Ok(ExitCode::from(1));
            }
        }
        Command::OracleDump { limit } => {
            let table = oracle::build_oracle(*limit)?;
            writeln!(out, "n,R,A")?;
            for n in 0..=*limit {
                writeln!(out, "{n},{},{}", table.r(n), table.a(n))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_scalar(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    value: &str,
) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::json!({ "command": command, "value": value })),
        _ => writeln!(out, "{value}"),
    }
}
