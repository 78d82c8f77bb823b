use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use stepseq::generators::{
    greedy_with_limit, humble_with_limit, materialize, recursive_r_with_limit, stream_for_c,
    stream_for_j,
};
use stepseq::graycode::{
    brgc, nesting_violation, restrict_to_k_with_limit, to_ordering_with_limit,
};
use stepseq::search::{census_m4, enumerate, for_each, Filter, SearchConfig};
use stepseq::sequence::verify_with_limit;
use stepseq::text::{format_word, parse_moves, WordFormat};
use stepseq::transforms::{commutations, complement, orbit_closure, reverse, OrbitOps};
use stepseq::{Error, SteppingSequence};

use crate::{Cli, Command, Format, GlobalOpts, Method, OrbitGen, TransformOp};

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            e if e.is_resource() => EXIT_RESOURCE,
            Error::NotStepping(_) => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: err.to_string(),
        }
    }
}

type CmdResult = Result<ExitCode, CliError>;

pub fn run(cli: Cli) -> CmdResult {
    let mut out = open_output(&cli.global)?;
    let result = dispatch(cli, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        // A closed pipe downstream (e.g. `| head`) is not a failure.
        Err(e) if e.message.contains("Broken pipe") => Ok(ExitCode::SUCCESS),
        other => other,
    }
}

fn open_output(global: &GlobalOpts) -> Result<Box<dyn Write>, CliError> {
    Ok(match &global.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::with_capacity(1 << 16, io::stdout().lock())),
    })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    let g = &cli.global;
    match cli.command {
        Command::Generate { m, method, stream } => generate(g, out, m, method, stream),
        Command::Verify { m, input } => verify(g, out, m, input.as_deref()),
        Command::Enumerate {
            m,
            contiguous,
            strong,
            count_only,
            threads,
        } => {
            let filter = match (contiguous, strong) {
                (_, true) => Filter::StronglyContiguous,
                (true, false) => Filter::Contiguous,
                _ => Filter::All,
            };
            enumerate_cmd(g, out, m, filter, count_only, threads)
        }
        Command::Transform { m, op, ops, input } => transform(out, m, op, &ops, input.as_deref()),
        Command::Graycode { m, format, input } => graycode(g, out, m, format, input.as_deref()),
        Command::Ksubsets { m, k, input } => ksubsets(g, out, m, k, input.as_deref()),
        Command::CheckBrgc { m } => check_brgc(out, m),
        Command::CensusM4 { list } => census(out, list),
        Command::Bench { m } => bench(g, out, m),
    }
}

fn read_input(input: Option<&Path>) -> Result<String, CliError> {
    let mut text = String::new();
    match input {
        Some(p) if p != Path::new("-") => {
            BufReader::new(File::open(p)?).read_to_string(&mut text)?;
        }
        _ => {
            io::stdin().lock().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

/// Nonempty lines of the input as sequences for `m`. An input without any
/// nonempty line is the empty sequence.
fn read_sequences(m: usize, input: Option<&Path>) -> Result<Vec<SteppingSequence>, CliError> {
    let text = read_input(input)?;
    let mut seqs = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        seqs.push(SteppingSequence::new(m, parse_moves(line)?)?);
    }
    if seqs.is_empty() {
        seqs.push(SteppingSequence::new(m, Vec::new())?);
    }
    Ok(seqs)
}

/// Space-separated moves with no per-token allocation.
fn write_moves<I: Iterator<Item = u8>>(out: &mut dyn Write, moves: I) -> io::Result<()> {
    let mut first = true;
    let mut buf = Vec::with_capacity(1 << 16);
    for mv in moves {
        if !first {
            buf.push(b' ');
        }
        first = false;
        if mv >= 10 {
            buf.push(b'0' + mv / 10);
        }
        buf.push(b'0' + mv % 10);
        if buf.len() >= (1 << 16) - 4 {
            out.write_all(&buf)?;
            buf.clear();
        }
    }
    buf.push(b'\n');
    out.write_all(&buf)
}

fn generate(
    g: &GlobalOpts,
    out: &mut dyn Write,
    m: usize,
    method: Method,
    stream: bool,
) -> CmdResult {
    if stream {
        match method {
            Method::ForC => write_moves(out, stream_for_c(m)?)?,
            Method::ForJ => write_moves(out, stream_for_j(m)?)?,
            _ => return Err(CliError::usage("--stream requires --method for-c or for-j")),
        }
        return Ok(ExitCode::SUCCESS);
    }
    let seq = match method {
        Method::Recursive => recursive_r_with_limit(m, g.limit_materialize)?,
        Method::Greedy => greedy_with_limit(m, g.limit_greedy)?,
        Method::Humble => humble_with_limit(m, g.limit_greedy)?,
        Method::ForC => materialize(stream_for_c(m)?, g.limit_materialize)?,
        Method::ForJ => materialize(stream_for_j(m)?, g.limit_materialize)?,
    };
    write_moves(out, seq.moves().iter().copied())?;
    Ok(ExitCode::SUCCESS)
}

fn verify(g: &GlobalOpts, out: &mut dyn Write, m: usize, input: Option<&Path>) -> CmdResult {
    let mut all_valid = true;
    for seq in read_sequences(m, input)? {
        let report = verify_with_limit(&seq, g.limit_verify)?;
        match report.failure {
            None => writeln!(out, "valid")?,
            Some(f) => {
                all_valid = false;
                writeln!(out, "invalid: {f}")?;
            }
        }
    }
    Ok(if all_valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVALID)
    })
}

fn enumerate_cmd(
    g: &GlobalOpts,
    out: &mut dyn Write,
    m: usize,
    filter: Filter,
    count_only: bool,
    threads: usize,
) -> CmdResult {
    let mut config = SearchConfig::new(m, filter).threads(threads);
    config.node_budget = g.budget;
    config.validate()?;
    if count_only {
        let outcome = enumerate(&config)?;
        writeln!(out, "{}", outcome.count)?;
    } else if config.threads == 1 {
        let mut io_err = None;
        for_each(m, filter, g.budget, |moves| {
            if io_err.is_none() {
                io_err = write_moves(out, moves.iter().copied()).err();
            }
        })?;
        if let Some(e) = io_err {
            return Err(e.into());
        }
    } else {
        let outcome = enumerate(&config.collect())?;
        for s in outcome.sequences.unwrap_or_default() {
            write_moves(out, s.moves().iter().copied())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn transform(
    out: &mut dyn Write,
    m: usize,
    op: TransformOp,
    gens: &[OrbitGen],
    input: Option<&Path>,
) -> CmdResult {
    let seqs = read_sequences(m, input)?;
    let mut emit = |s: &SteppingSequence| write_moves(out, s.moves().iter().copied());
    match op {
        TransformOp::Reverse => seqs.iter().try_for_each(|s| emit(&reverse(s)))?,
        TransformOp::Complement => seqs.iter().try_for_each(|s| emit(&complement(s)))?,
        TransformOp::Commutations => seqs
            .iter()
            .flat_map(commutations)
            .try_for_each(|s| emit(&s))?,
        TransformOp::Orbit => {
            let ops = OrbitOps {
                reverse: gens.contains(&OrbitGen::Reverse),
                complement: gens.contains(&OrbitGen::Complement),
                commutation: gens.contains(&OrbitGen::Commutation),
            };
            orbit_closure(&seqs, ops)?.iter().try_for_each(emit)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// The sequence from `input`, or `R_m` when none is given.
fn source_sequence(
    g: &GlobalOpts,
    m: usize,
    input: Option<&Path>,
) -> Result<SteppingSequence, CliError> {
    match input {
        Some(_) => Ok(read_sequences(m, input)?.swap_remove(0)),
        None if m == 1 => Ok(SteppingSequence::new(1, Vec::new())?),
        None => Ok(recursive_r_with_limit(m, g.limit_materialize)?),
    }
}

fn graycode(
    g: &GlobalOpts,
    out: &mut dyn Write,
    m: usize,
    format: Format,
    input: Option<&Path>,
) -> CmdResult {
    let seq = source_sequence(g, m, input)?;
    let ordering = to_ordering_with_limit(&seq, g.limit_verify)?;
    let format = match format {
        Format::Binary => WordFormat::Binary,
        Format::Decimal => WordFormat::Decimal,
    };
    for &w in ordering.words() {
        writeln!(out, "{}", format_word(w, m, format))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn ksubsets(
    g: &GlobalOpts,
    out: &mut dyn Write,
    m: usize,
    k: usize,
    input: Option<&Path>,
) -> CmdResult {
    let seq = source_sequence(g, m, input)?;
    for s in restrict_to_k_with_limit(&seq, k, g.limit_verify)?.sets {
        writeln!(out, "{s}")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn check_brgc(out: &mut dyn Write, m: usize) -> CmdResult {
    let ordering = brgc(m)?;
    match nesting_violation(&ordering) {
        None => writeln!(out, "no nesting violation")?,
        Some(v) => {
            writeln!(
                out,
                "violation at position {}: {} {}",
                v.position,
                v.word.to_binary(m),
                v.word
            )?;
            let family: Vec<String> = v.family.iter().map(|s| s.to_string()).collect();
            writeln!(out, "family: {}", family.join(" "))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn census(out: &mut dyn Write, list: bool) -> CmdResult {
    let c = census_m4()?;
    let classes = [
        ("total", &c.all),
        ("combinator-products", &c.combinator_products),
        ("commutation-closure", &c.commutation_closure),
        ("combinator-orbit", &c.combinator_orbit),
        ("remaining-orbit", &c.remaining_orbit),
        ("reverse-equals-complement", &c.reverse_equals_complement),
    ];
    for (name, members) in classes {
        writeln!(out, "{name} {}", members.len())?;
        if list {
            for s in members.iter() {
                writeln!(out, "  {s}")?;
            }
        }
    }
    writeln!(out, "orbits-disjoint {}", c.orbits_disjoint)?;
    Ok(ExitCode::SUCCESS)
}

fn bench(g: &GlobalOpts, out: &mut dyn Write, m: usize) -> CmdResult {
    fn report(
        out: &mut dyn Write,
        name: &str,
        tokens: u64,
        checksum: u64,
        start: Instant,
    ) -> io::Result<()> {
        let secs = start.elapsed().as_secs_f64();
        writeln!(
            out,
            "{name:<10} {tokens} tokens in {secs:.3} s ({:.3e} tokens/s, checksum {checksum})",
            tokens as f64 / secs.max(1e-9)
        )
    }

    let start = Instant::now();
    let r = recursive_r_with_limit(m, g.limit_materialize)?;
    let sum = r.moves().iter().map(|&i| i as u64).sum();
    report(out, "recursive", r.len() as u64, sum, start)?;
    drop(r);

    let start = Instant::now();
    let (n, sum) = stream_for_c(m)?.fold((0u64, 0u64), |(n, s), i| (n + 1, s + i as u64));
    report(out, "for-c", n, sum, start)?;

    let start = Instant::now();
    let (n, sum) = stream_for_j(m)?.fold((0u64, 0u64), |(n, s), i| (n + 1, s + i as u64));
    report(out, "for-j", n, sum, start)?;
    Ok(ExitCode::SUCCESS)
}
