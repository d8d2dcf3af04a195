//! Command-line front-end.
//!
//! Exit codes: 0 when the computed statement holds (or for plain reports),
//! 1 when a verification fails, 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmat_core::gmatrix::one_matrix_report;
use grassmat_core::identities::{
    charge_table, deduce_one_matrix_relations, relation_rank, relation_rank_unchecked, verify_identity_at,
    IdentityKind, IdentitySpec, MAX_N,
};
use grassmat_core::qindex::{
    andrews_ct_check, dynkin_series_report, hilbert_series_by_rank, invariant_index, molien_weyl_index, HilbertMode,
    QSeries, VariableSpec,
};
use grassmat_core::symfun::{codimension, count_d_good, factorial};
use grassmat_core::{Error, Letter};
use serde::Serialize;
use serde_json::json;

use crate::formats::{charge_rows_json, charge_table_text, identity_json, kind_name, series_json};
use crate::sexpr::term_to_sexpr;

/// Largest `m` for which the CLI enumerates `S_m` without `--force`.
pub const MAX_PERM_POINTS: usize = 9;
/// Largest torus rank for the constant-term checks without `--force`.
pub const MAX_TORUS_N: usize = 3;
/// Largest q-order for the constant-term checks without `--force`.
pub const MAX_TORUS_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "grassmat", version, about = "Trace identities and invariants of bosonic and fermionic matrices")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Lift the size caps.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Ch,
    T,
}

#[derive(Args, Debug)]
struct IdentityArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    e: usize,
    #[arg(long)]
    f: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Ch)]
    kind: KindArg,
}

#[derive(Subcommand, Debug)]
enum IdentityCmd {
    /// Print the identity.
    Gen(IdentityArgs),
    /// Evaluate it on generic matrices.
    Verify {
        #[command(flatten)]
        id: IdentityArgs,
        /// Matrix size (default n).
        #[arg(long)]
        size: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Invariants,
    Equivariants,
    Free,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cayley-Hamilton identities and trace relations.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// One-matrix consequences of the identities.
    #[command(name = "deduce-11")]
    Deduce11 {
        #[arg(long)]
        n: usize,
    },
    /// Span of the multilinear trace monomials against the codimension.
    Ranks {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Trace monomials graded by charge.
    Charges {
        #[arg(long)]
        lmax: usize,
        /// Also compute ranks on generic matrices of this size.
        #[arg(long = "rank-at")]
        rank_at: Option<usize>,
        #[arg(long)]
        traceless: bool,
    },
    /// Count permutations without a decreasing subsequence of length d.
    Goodperms {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Codimensions, kernel dimensions and good-permutation counts.
    Codim {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Index of the invariants (Molien-Weyl constant term).
    Index {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
        /// Charges of bosonic matrices (default: none).
        #[arg(long, value_delimiter = ',')]
        bos: Vec<usize>,
        /// Charges of fermionic matrices (default: one of each charge 1..=order).
        #[arg(long, value_delimiter = ',')]
        ferm: Vec<usize>,
    },
    /// Constant-term identity for the q-Pochhammer products.
    Andrews {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
    },
    /// Graded dimensions by rank computation.
    Series {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
        /// Charges of bosonic matrices y1, y2, ...
        #[arg(long, value_delimiter = ',')]
        bos: Vec<usize>,
        /// Charges of fermionic matrices x1, x2, ... (default: 1).
        #[arg(long, value_delimiter = ',')]
        ferm: Vec<usize>,
        #[arg(long)]
        traceless: bool,
    },
    /// Facts about one fermionic matrix and its graded dimensions.
    Dynkin {
        #[arg(long)]
        n: usize,
    },
}

/// Output of a subcommand before it is written.
struct Outcome {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { what, value, cap } => {
                let flag = match what {
                    "charge" => "lmax",
                    w => w,
                };
                Failure::Usage(format!("--{flag} {value} exceeds the cap {cap}; pass --force to lift it"))
            }
            Error::BadArity { e, f, n } => Failure::Usage(format!("--e {e} --f {f} --n {n}: need e + f = n + 1")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn capped(flag: &str, value: usize, cap: usize, force: bool) -> Result<(), Failure> {
    if value > cap && !force {
        return Err(usage(format!("--{flag} {value} exceeds the cap {cap}; pass --force to lift it")));
    }
    Ok(())
}

fn report(text: String, json: impl Serialize, ok: bool) -> Outcome {
    Outcome { text, json: serde_json::to_value(json).expect("serializable"), ok }
}

fn identity(cmd: IdentityCmd, force: bool) -> Result<Outcome, Failure> {
    let (args, size, verify) = match cmd {
        IdentityCmd::Gen(a) => (a, None, false),
        IdentityCmd::Verify { id, size } => (id, size, true),
    };
    let kind = match args.kind {
        KindArg::Ch => IdentityKind::CH,
        KindArg::T => IdentityKind::T,
    };
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    capped("n", args.n, MAX_N, force)?;
    let spec = IdentitySpec::new(kind, args.e, args.f, args.n)?;
    let header = format!("{}[e={},f={},n={}]", kind_name(kind), args.e, args.f, args.n);
    if !verify {
        let expr = spec.generate();
        let mut text = format!("{header} {} terms\n", expr.len());
        for (t, c) in expr.terms() {
            let _ = writeln!(text, "{}", term_to_sexpr(t, c));
        }
        return Ok(report(text, identity_json(&spec, &expr, None), true));
    }
    let size = size.unwrap_or(args.n);
    if size == 0 {
        return Err(usage("--size must be at least 1"));
    }
    capped("size", size, MAX_N + 1, force)?;
    let v = verify_identity_at(&spec, size);
    let text = if v.zero {
        "zero\n".to_string()
    } else {
        format!("nonzero ({} nonzero coefficients at size {size})\n", v.witness_terms)
    };
    let mut j = serde_json::to_value(identity_json(&spec, &v.expression, Some(v.zero))).expect("serializable");
    j["size"] = json!(size);
    Ok(Outcome { text, json: j, ok: v.zero })
}

fn deduce(n: usize) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let r = deduce_one_matrix_relations(n)?;
    let verdict = |z: bool| if z { "zero" } else { "nonzero" };
    let text = format!(
        "n = {n}\nnilpotency: {} -> {}\ntrace relation: {} -> {}\n",
        r.nilpotency,
        verdict(r.nilpotency_zero),
        r.trace_relation,
        verdict(r.trace_relation_zero)
    );
    let j = json!({
        "n": n,
        "nilpotency": { "expression": r.nilpotency.to_string(), "verdict": verdict(r.nilpotency_zero) },
        "trace_relation": { "expression": r.trace_relation.to_string(), "verdict": verdict(r.trace_relation_zero) },
    });
    Ok(Outcome { text, json: j, ok: r.holds() })
}

fn ranks(m: usize, n: usize, force: bool) -> Result<Outcome, Failure> {
    if m == 0 || n == 0 {
        return Err(usage("--m and --n must be at least 1"));
    }
    let c = codimension(m, n);
    let mut text = format!("{:>2} {:>2} {:>2} {:>2} {:>6} {:>6} {:>6}\n", "m", "e", "f", "n", "span", "kernel", "c_m");
    let mut rows = Vec::new();
    let mut ok = true;
    for e in 0..=m {
        let r = if force { relation_rank_unchecked(m, e, m - e, n)? } else { relation_rank(m, e, m - e, n)? };
        ok &= r.span_dim as u128 == c;
        let _ = writeln!(text, "{:>2} {:>2} {:>2} {:>2} {:>6} {:>6} {:>6}", m, e, m - e, n, r.span_dim, r.kernel_dim, c);
        rows.push(json!({ "m": m, "e": e, "f": m - e, "n": n, "span": r.span_dim, "kernel": r.kernel_dim, "codimension": c.to_string() }));
    }
    Ok(Outcome { text, json: json!(rows), ok })
}

fn charges(lmax: usize, rank_at: Option<usize>, traceless: bool, force: bool) -> Result<Outcome, Failure> {
    if lmax == 0 {
        return Err(usage("--lmax must be at least 1"));
    }
    if rank_at == Some(0) {
        return Err(usage("--rank-at must be at least 1"));
    }
    let rows = charge_table(lmax, rank_at, traceless, force)?;
    let mut text = charge_table_text(&rows);
    let first_drop = rank_at.map(|_| {
        rows.iter().find_map(|r| {
            let (_, b, f) = r.rank_at?;
            (b < r.bosonic.len() || f < r.fermionic.len()).then_some(r.charge)
        })
    });
    if let (Some(n), Some(d)) = (rank_at, first_drop) {
        match d {
            Some(l) => {
                let _ = writeln!(text, "first relation at n = {n}: charge {l}");
            }
            None => {
                let _ = writeln!(text, "no relation at n = {n} up to charge {lmax}");
            }
        }
    }
    let mut j = json!({ "rows": charge_rows_json(&rows), "traceless": traceless });
    if let Some(d) = first_drop {
        j["first_relation_charge"] = json!(d);
    }
    Ok(Outcome { text, json: j, ok: true })
}

fn goodperms(m: usize, d: usize, force: bool) -> Result<Outcome, Failure> {
    capped("m", m, MAX_PERM_POINTS, force)?;
    let g = count_d_good(m, d);
    Ok(report(format!("m = {m}, d = {d}: {g} good permutations\n"), json!({ "m": m, "d": d, "good": g.to_string() }), true))
}

fn codim(m: usize, n: usize, force: bool) -> Result<Outcome, Failure> {
    capped("m", m, MAX_PERM_POINTS, force)?;
    let mut text = format!("{:>2} {:>2} {:>8} {:>8} {:>8}\n", "m", "n", "c_m", "kernel", "good");
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=m {
        let c = codimension(k, n);
        let kernel = factorial(k) - c;
        let good = count_d_good(k, n + 1);
        ok &= good == c;
        let _ = writeln!(text, "{k:>2} {n:>2} {c:>8} {kernel:>8} {good:>8}");
        rows.push(json!({ "m": k, "n": n, "codimension": c.to_string(), "kernel": kernel.to_string(), "good": good.to_string() }));
    }
    Ok(Outcome { text, json: json!(rows), ok })
}

fn series_outcome(s: &QSeries) -> Outcome {
    report(format!("{}\n", s.polynomial()), series_json(s), true)
}

fn index(n: usize, order: usize, bos: Vec<usize>, ferm: Vec<usize>, force: bool) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if bos.iter().chain(&ferm).any(|&c| c == 0) {
        return Err(usage("charges must be positive"));
    }
    let s = if bos.is_empty() && ferm.is_empty() {
        molien_weyl_index(n, order, force)?
    } else {
        capped("n", n, MAX_TORUS_N, force)?;
        capped("order", order, MAX_TORUS_ORDER, force)?;
        invariant_index(n, &bos, &ferm, order)
    };
    Ok(series_outcome(&s))
}

fn andrews(n: usize, order: usize, force: bool) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    capped("n", n, MAX_TORUS_N, force)?;
    capped("order", order, MAX_TORUS_ORDER, force)?;
    let r = andrews_ct_check(n, order);
    let text = format!(
        "split:       {}\nsymmetrized: {}\nexpected:    {}\n{}\n",
        r.split.polynomial(),
        r.symmetrized.polynomial(),
        r.expected.polynomial(),
        if r.holds() { "equal" } else { "different" }
    );
    let j = json!({
        "n": n,
        "split": series_json(&r.split),
        "symmetrized": series_json(&r.symmetrized),
        "expected": series_json(&r.expected),
        "holds": r.holds(),
    });
    Ok(Outcome { text, json: j, ok: r.holds() })
}

fn variables(bos: &[usize], ferm: &[usize], traceless: bool) -> Result<VariableSpec, Failure> {
    if bos.iter().chain(ferm).any(|&c| c == 0) {
        return Err(usage("charges must be positive"));
    }
    let mut letters: Vec<(Letter, usize)> = bos.iter().enumerate().map(|(i, &c)| (Letter::Y(i as u32 + 1), c)).collect();
    let ferm: &[usize] = if bos.is_empty() && ferm.is_empty() { &[1] } else { ferm };
    letters.extend(ferm.iter().enumerate().map(|(i, &c)| (Letter::X(i as u32 + 1), c)));
    Ok(VariableSpec { letters, traceless })
}

fn dynkin(n: usize, force: bool) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    capped("n", n, MAX_N, force)?;
    let one = one_matrix_report(n);
    let s = dynkin_series_report(n)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let text = format!(
        "n = {n}\n\
         tr(xi^2k) = 0 for k <= n+1: {}\n\
         xi^2n = 0: {}\n\
         xi^(2n-1) != 0: {}\n\
         odd-power relation residual is zero: {}\n\
         invariants:   {}  expected {}  match: {}\n\
         equivariants: {}\n\
         free-module reading: {}  match: {}\n\
         literal reading:     {}  match: {}\n",
        yes(one.nonzero_even_traces.is_empty()),
        yes(one.top_power_zero),
        yes(one.below_top_nonzero),
        yes(one.dynkin_residual_zero),
        s.invariants.polynomial(),
        s.invariants_expected,
        yes(s.invariants_match()),
        s.equivariants.polynomial(),
        s.free_module_reading,
        yes(s.free_module_reading_matches()),
        s.literal_reading,
        yes(s.literal_reading_matches()),
    );
    let ok = one.holds() && s.invariants_match() && s.free_module_reading_matches();
    let j = json!({
        "n": n,
        "even_traces_vanish": one.nonzero_even_traces.is_empty(),
        "top_power_zero": one.top_power_zero,
        "below_top_nonzero": one.below_top_nonzero,
        "residual_zero": one.dynkin_residual_zero,
        "invariants": series_json(&s.invariants),
        "invariants_expected": s.invariants_expected.to_string(),
        "equivariants": series_json(&s.equivariants),
        "free_module_reading": s.free_module_reading.to_string(),
        "free_module_reading_matches": s.free_module_reading_matches(),
        "literal_reading": s.literal_reading.to_string(),
        "literal_reading_matches": s.literal_reading_matches(),
    });
    Ok(Outcome { text, json: j, ok })
}

fn dispatch(cmd: Cmd, force: bool) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Identity(c) => identity(c, force),
        Cmd::Deduce11 { n } => deduce(n),
        Cmd::Ranks { m, n } => ranks(m, n, force),
        Cmd::Charges { lmax, rank_at, traceless } => charges(lmax, rank_at, traceless, force),
        Cmd::Goodperms { m, d } => goodperms(m, d, force),
        Cmd::Codim { m, n } => codim(m, n, force),
        Cmd::Index { n, order, bos, ferm } => index(n, order, bos, ferm, force),
        Cmd::Andrews { n, order } => andrews(n, order, force),
        Cmd::Series { mode, n, order, bos, ferm, traceless } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let vars = variables(&bos, &ferm, traceless)?;
            let mode = match mode {
                ModeArg::Invariants => HilbertMode::Invariants,
                ModeArg::Equivariants => HilbertMode::Equivariants,
                ModeArg::Free => HilbertMode::Free,
            };
            Ok(series_outcome(&hilbert_series_by_rank(mode, n, &vars, order, force)?))
        }
        Cmd::Dynkin { n } => dynkin(n, force),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    if cli.force {
        let _ = writeln!(err, "warning: --force lifts the size caps; the computation may take very long");
    }
    if cli.threads == Some(0) {
        let _ = writeln!(err, "error: --threads must be at least 1");
        return 2;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return 2;
        }
    };
    let force = cli.force;
    let format = cli.format;
    let cmd = cli.cmd;
    match pool.install(|| dispatch(cmd, force)) {
        Ok(o) => {
            let body = match format {
                Format::Text => o.text,
                Format::Json => serde_json::to_string_pretty(&o.json).expect("serializable") + "\n",
            };
            let _ = out.write_all(body.as_bytes());
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
