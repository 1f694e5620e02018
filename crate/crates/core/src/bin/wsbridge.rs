use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wsbridge::corpus::{run_corpus, CorpusReport, Outcome};
use wsbridge::token::debug_dump;
use wsbridge::wellformed::check_wellformed;
use wsbridge::{Error, Frontend, SourcePos};

const EXIT_CORPUS_FAILURES: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_DIAGNOSTICS: u8 = 3;

#[derive(Parser)]
#[command(name = "wsbridge", version, about = "Indentation-aware Mini-Python frontend")]
struct Cli {
    /// Tab stop used for indentation columns (overrides WSBRIDGE_TABSTOP).
    #[arg(long, global = true)]
    tab_stop: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the token stream of a file.
    Tokens {
        path: PathBuf,
        /// Lexer output, before indentation processing.
        #[arg(long, conflicts_with = "processed")]
        raw: bool,
        /// Stream after indentation processing (the default).
        #[arg(long)]
        processed: bool,
    },
    /// Parse a file and print its syntax tree.
    Parse {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also run the post-parse checks and print their diagnostics.
        #[arg(long)]
        check: bool,
        /// Input already carries explicit delimiter glyphs.
        #[arg(long)]
        delimited: bool,
    },
    /// Print a file with explicit block and statement delimiters.
    Render { path: PathBuf },
    /// Parse every .py file under a directory.
    Corpus {
        dir: PathBuf,
        /// Print the results as JSON instead of text.
        #[arg(long)]
        report: bool,
        /// Leave a grammar component out (repeatable).
        #[arg(long, value_name = "COMPONENT")]
        without: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Sexpr,
}

fn read_source(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn location(path: &Path, pos: Option<SourcePos>) -> String {
    match pos {
        Some(p) => format!("{}:{}:{}", path.display(), p.line, p.column),
        None => path.display().to_string(),
    }
}

fn report_error(path: &Path, e: &Error) -> ExitCode {
    eprintln!("{}: {} {}", location(path, e.pos()), e.code(), e);
    ExitCode::from(EXIT_ERROR)
}

fn io_error(path: &Path, e: &io::Error) -> ExitCode {
    eprintln!("{}: IO {e}", path.display());
    ExitCode::from(EXIT_ERROR)
}

fn tab_stop(cli: Option<u32>) -> Option<u32> {
    cli.or_else(|| std::env::var("WSBRIDGE_TABSTOP").ok()?.trim().parse().ok())
}

fn configure(fe: Frontend, stop: Option<u32>) -> Frontend {
    match stop {
        Some(n) => fe.with_tab_stop(n),
        None => fe,
    }
}

fn emit(text: &str) -> ExitCode {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        // closed pipe and similar
        Err(_) => ExitCode::from(EXIT_ERROR),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stop = tab_stop(cli.tab_stop);
    match cli.command {
        Command::Tokens { path, raw, .. } => {
            let fe = configure(Frontend::minipython(), stop);
            let src = match read_source(&path) {
                Ok(s) => s,
                Err(e) => return io_error(&path, &e),
            };
            let tokens = if raw {
                fe.raw_tokens(&src)
            } else {
                fe.processed_tokens(&src)
            };
            match tokens {
                Ok(t) => emit(&debug_dump(&t)),
                Err(e) => report_error(&path, &e),
            }
        }
        Command::Parse {
            path,
            format,
            check,
            delimited,
        } => {
            let fe = configure(Frontend::minipython(), stop);
            let src = match read_source(&path) {
                Ok(s) => s,
                Err(e) => return io_error(&path, &e),
            };
            let parsed = if delimited {
                fe.parse_delimited(&src)
            } else {
                fe.parse(&src)
            };
            let module = match parsed {
                Ok(m) => m,
                Err(e) => return report_error(&path, &e),
            };
            let mut text = match format {
                Format::Json => module.to_json(),
                Format::Sexpr => module.to_sexpr(),
            };
            text.push('\n');
            let status = emit(&text);
            if status != ExitCode::SUCCESS || !check {
                return status;
            }
            let diags = check_wellformed(&module);
            for d in &diags {
                eprintln!("{}: {} {}", location(&path, Some(d.span.start)), d.code, d.message);
            }
            if diags.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_DIAGNOSTICS)
            }
        }
        Command::Render { path } => {
            let fe = configure(Frontend::minipython(), stop);
            let src = match read_source(&path) {
                Ok(s) => s,
                Err(e) => return io_error(&path, &e),
            };
            match fe.render(&src) {
                Ok(text) => emit(&text),
                Err(e) => report_error(&path, &e),
            }
        }
        Command::Corpus {
            dir,
            report,
            without,
        } => {
            let excluded: Vec<&str> = without.iter().map(String::as_str).collect();
            let fe = match Frontend::minipython_without(&excluded) {
                Ok(fe) => configure(fe, stop),
                Err(e) => {
                    eprintln!("wsbridge: {} {}", e.code(), e);
                    return ExitCode::from(EXIT_ERROR);
                }
            };
            let result = match run_corpus(&dir, &fe) {
                Ok(r) => r,
                Err(e) => return io_error(&dir, &e),
            };
            let text = if report {
                json_report(&result)
            } else {
                text_report(&result)
            };
            let status = emit(&text);
            if status != ExitCode::SUCCESS {
                status
            } else if result.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CORPUS_FAILURES)
            }
        }
    }
}

fn text_report(result: &CorpusReport) -> String {
    let mut text = String::new();
    for f in &result.files {
        match &f.outcome {
            Outcome::Pass => text.push_str(&format!("PASS {}\n", f.path.display())),
            Outcome::Fail { code, message, pos } => {
                let tag = match &f.manifest.expect {
                    Some(exp) if exp == code => format!(" (expected {exp})"),
                    Some(exp) => format!(" (expected {exp}, MISMATCH)"),
                    None => String::new(),
                };
                text.push_str(&format!(
                    "FAIL {}: {code} {message}{tag}\n",
                    location(&f.path, *pos)
                ));
            }
        }
    }
    text.push_str(&result.summary());
    text.push('\n');
    text
}

fn json_report(result: &CorpusReport) -> String {
    let value = serde_json::json!({
        "files": result.files,
        "passed": result.passed(),
        "total": result.total(),
        "summary": result.summary(),
    });
    let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
    text.push('\n');
    text
}
