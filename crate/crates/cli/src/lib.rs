//! The `braidbox` command line.
//!
//! Every subcommand is a thin adapter over the library: words go through
//! [`BraidWord::parse`], and output is the library's own text or JSON form.
//! Exit status is 0 on success, 2 for unreadable input and 1 for errors
//! raised by the mathematics.

mod server;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use braidbox::diagram::{render_braid, RenderOptions};
use braidbox::quandle::braid_act;
use braidbox::tpage::t_normalize;
use braidbox::{BraidWord, EndoImages, Error, FreeWord, Motion, QuandleElement};
use clap::{Args, Parser, Subcommand};

pub use server::{serve_http, serve_lines};

#[derive(Parser, Debug)]
#[command(name = "braidbox", version, about = "Braid words, motions and the virtual braid box")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    /// Number of strands.
    #[arg(short = 'n', long = "strands")]
    pub n: usize,
    /// Braid word as signed integers, e.g. "1 -2 1".
    #[arg(allow_hyphen_values = true)]
    pub word: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two words give the same braid.
    Equal {
        #[arg(short = 'n', long = "strands")]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Apply the braid's action to a free-group word.
    Act {
        #[command(flatten)]
        braid: WordArgs,
        /// Free word such as "x1 x2^-1".
        #[arg(long = "word", allow_hyphen_values = true)]
        free: String,
    },
    /// Print the images of the free generators.
    Images(WordArgs),
    /// Read a braid word off a motion file ("-" for stdin).
    Compile { motion: PathBuf },
    /// Report loop, genericity and crossing events of a motion file.
    Validate { motion: PathBuf },
    /// Write the canonical motion realising a word.
    ToMotion {
        #[command(flatten)]
        braid: WordArgs,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Write a motion realising a word inside the T.
    TNormalize {
        #[command(flatten)]
        braid: WordArgs,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Render a braid diagram as SVG.
    Render {
        #[command(flatten)]
        braid: WordArgs,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 40.0)]
        strand_gap: f64,
        #[arg(long, default_value_t = 40.0)]
        slot_height: f64,
        #[arg(long, default_value_t = 3.0)]
        stroke_width: f64,
        #[arg(long, default_value_t = 12.0)]
        under_gap: f64,
    },
    /// Act on a tuple of free-quandle elements (the generators by default).
    QuandleAct {
        #[command(flatten)]
        braid: WordArgs,
        /// One element per strand, e.g. --element "x2 * q1".
        #[arg(long = "element", allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Run the box engine over HTTP or line-delimited JSON on stdio.
    Serve {
        #[arg(long, conflicts_with = "stdio")]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long)]
        stdio: bool,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_parse_error() || matches!(e, Error::InvalidMotion(_)) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        })
    }
}

fn emit(out: &mut dyn Write, output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn parse_word(args: &WordArgs) -> Result<BraidWord, Failure> {
    Ok(BraidWord::parse(&args.word, args.n)?)
}

/// Executes a parsed command, writing results to `out`.
pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Equal { n, a, b } => {
            let a = BraidWord::parse(&a, n)?;
            let b = BraidWord::parse(&b, n)?;
            writeln!(out, "{}", a.equal(&b)?)?;
        }
        Command::Act { braid, free } => {
            let word = parse_word(&braid)?;
            let free = FreeWord::parse(&free, braid.n)?;
            writeln!(out, "{}", EndoImages::artin_image(&word).apply(&free)?)?;
        }
        Command::Images(args) => {
            let word = parse_word(&args)?;
            for (i, image) in EndoImages::artin_image(&word).images().iter().enumerate() {
                writeln!(out, "x{} -> {image}", i + 1)?;
            }
        }
        Command::Compile { motion } => {
            let motion = Motion::from_json(&read_input(&motion)?)?;
            writeln!(out, "{}", motion.compile()?)?;
        }
        Command::Validate { motion } => {
            let motion = Motion::from_json(&read_input(&motion)?)?;
            let report = motion.validate();
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serialises")
            )?;
        }
        Command::ToMotion { braid, output } => {
            let motion = Motion::from_braid(&parse_word(&braid)?);
            emit(out, output.as_deref(), &(motion.to_json() + "\n"))?;
        }
        Command::TNormalize { braid, output } => {
            let motion = t_normalize(&parse_word(&braid)?);
            emit(out, output.as_deref(), &(motion.to_json() + "\n"))?;
        }
        Command::Render {
            braid,
            output,
            strand_gap,
            slot_height,
            stroke_width,
            under_gap,
        } => {
            let word = parse_word(&braid)?;
            let opts = RenderOptions::new(strand_gap, slot_height, stroke_width, under_gap)
                .map_err(|e| Failure {
                    code: 2,
                    message: e.to_string(),
                })?;
            emit(out, output.as_deref(), &render_braid(&word, &opts))?;
        }
        Command::QuandleAct { braid, elements } => {
            let word = parse_word(&braid)?;
            let tuple = if elements.is_empty() {
                QuandleElement::generators(braid.n)
            } else {
                elements
                    .iter()
                    .map(|e| QuandleElement::parse(e, braid.n))
                    .collect::<Result<_, _>>()?
            };
            if tuple.len() != braid.n {
                return Err(Failure {
                    code: 2,
                    message: format!("expected {} elements, got {}", braid.n, tuple.len()),
                });
            }
            for q in braid_act(&word, &tuple)? {
                writeln!(out, "{q}")?;
            }
        }
        Command::Serve { port, host, stdio } => {
            if stdio {
                let stdin = io::stdin();
                serve_lines(stdin.lock(), out)?;
            } else {
                let addr = format!("{host}:{}", port.unwrap_or(8080));
                let server = tiny_http::Server::http(&addr).map_err(|e| Failure {
                    code: 1,
                    message: format!("cannot listen on {addr}: {e}"),
                })?;
                writeln!(out, "listening on http://{addr}")?;
                out.flush()?;
                serve_http(server);
            }
        }
    }
    Ok(())
}

/// Parses `argv` and runs it. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
