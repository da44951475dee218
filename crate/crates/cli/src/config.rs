//! Command-line surface and the flattened run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpspec_core::Variant;
use serde::Serialize;

pub const DEFAULT_DENSE_CAP: u64 = 1500;
pub const DEFAULT_CHAR_CAP: u64 = 300_000;
pub const DEFAULT_CODEWORD_CAP: u64 = 10_000;
pub const DEFAULT_ELL_MAX: u32 = 100;
pub const DEFAULT_VERIFY_MAX_Q: u64 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

fn parse_variant(s: &str) -> Result<Variant, gpspec_core::Error> {
    s.parse()
}

#[derive(Debug, Parser)]
#[command(name = "gpspec", version, about = "Spectra and energies of generalized Paley graphs Γ(k, q), k ∈ {3, 4}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Append-only JSON-lines result cache.
    #[arg(long, global = true, env = "GPSPEC_CACHE")]
    pub cache: Option<PathBuf>,

    /// Largest q for explicit graphs and dense eigenvalues.
    #[arg(long, global = true, env = "GPSPEC_DENSE_CAP", default_value_t = DEFAULT_DENSE_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub dense_cap: u64,

    /// Largest q for character sums.
    #[arg(long, global = true, env = "GPSPEC_CHAR_CAP", default_value_t = DEFAULT_CHAR_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub char_cap: u64,

    /// Largest q for code weight enumeration.
    #[arg(long, global = true, env = "GPSPEC_CODEWORD_CAP", default_value_t = DEFAULT_CODEWORD_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub codeword_cap: u64,

    /// Last level searched by `family`.
    #[arg(long, global = true, env = "GPSPEC_ELL_MAX", default_value_t = DEFAULT_ELL_MAX)]
    pub ell_max: u32,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Spectrum of a graph, from the closed forms or a lift.
    Spectrum(GraphArgs),
    /// Energy, with bounds or the exact formula where they apply.
    Energy(GraphArgs),
    /// Whether the graph and its complement have equal energy.
    Equienergetic(GraphArgs),
    /// Lifted coefficient pairs and eigenvalues for every level up to --lift.
    Lift(LiftArgs),
    /// Levels at which lifted graphs are equienergetic with their complements.
    Family(FamilyArgs),
    /// Closed forms against the brute-force oracles.
    Verify(VerifyArgs),
    /// The three reference lift tables.
    Tables(TablesArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(3..=4))]
    pub k: u32,
    #[arg(short = 'p')]
    pub p: u64,
    /// Exponent of q = p^m.
    #[arg(short = 'm', required_unless_present = "lift", conflicts_with = "lift")]
    pub m: Option<u32>,
    /// Base exponent of the k = 3 lift (defaults to the minimal one).
    #[arg(short = 't', conflicts_with = "m")]
    pub t: Option<u32>,
    /// Offset of the k = 3 lift.
    #[arg(short = 's', conflicts_with = "m")]
    pub s: Option<u32>,
    /// Lift level ℓ: q = p^{3(tℓ+s)} for k = 3, p^{4ℓ} for k = 4.
    #[arg(long = "lift", value_name = "L")]
    pub lift: Option<u32>,
    #[arg(long, default_value = "gp", value_parser = parse_variant)]
    pub variant: Variant,
    /// Also check against the oracles; exit 1 on mismatch.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(3..=4))]
    pub k: u32,
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 't')]
    pub t: Option<u32>,
    #[arg(short = 's')]
    pub s: Option<u32>,
    #[arg(long = "lift", value_name = "L")]
    pub lift: u32,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(3..=4))]
    pub k: u32,
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 't')]
    pub t: Option<u32>,
    #[arg(short = 's')]
    pub s: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check one graph; without -k/-p/-m every in-scope q <= --max-q is checked.
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(3..=4), requires_all = ["p", "m"])]
    pub k: Option<u32>,
    #[arg(short = 'p', requires_all = ["k", "m"])]
    pub p: Option<u64>,
    #[arg(short = 'm', requires_all = ["k", "p"])]
    pub m: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_VERIFY_MAX_Q, conflicts_with = "k")]
    pub max_q: u64,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Only this table.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: Option<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Spectrum,
    Energy,
    Equienergetic,
    Lift,
    Family,
    Verify,
    Tables,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub dense: u64,
    pub character: u64,
    pub codeword: u64,
    pub ell_max: u32,
}

/// Everything a run depends on. Serialized (without the cache path) as the
/// cache key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub k: Option<u32>,
    pub p: Option<u64>,
    pub m: Option<u32>,
    pub t: Option<u32>,
    pub s: Option<u32>,
    pub lift: Option<u32>,
    #[serde(serialize_with = "variant_name")]
    pub variant: Variant,
    pub verify: bool,
    pub max_q: Option<u64>,
    pub table: Option<u8>,
    pub format: Format,
    pub caps: Caps,
    #[serde(skip)]
    pub cache: Option<PathBuf>,
}

fn variant_name<S: serde::Serializer>(v: &Variant, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(v.name())
}

impl RunConfig {
    fn base(command: Command, cli: &Cli) -> Self {
        RunConfig {
            command,
            k: None,
            p: None,
            m: None,
            t: None,
            s: None,
            lift: None,
            variant: Variant::Gp,
            verify: false,
            max_q: None,
            table: None,
            format: cli.format,
            caps: Caps {
                dense: cli.dense_cap,
                character: cli.char_cap,
                codeword: cli.codeword_cap,
                ell_max: cli.ell_max,
            },
            cache: cli.cache.clone(),
        }
    }

    pub fn cache_key(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

impl From<&Cli> for RunConfig {
    fn from(cli: &Cli) -> Self {
        let graph = |command, g: &GraphArgs| RunConfig {
            k: Some(g.k),
            p: Some(g.p),
            m: g.m,
            t: g.t,
            s: g.s,
            lift: g.lift,
            variant: g.variant,
            verify: g.verify,
            ..RunConfig::base(command, cli)
        };
        match &cli.command {
            Cmd::Spectrum(g) => graph(Command::Spectrum, g),
            Cmd::Energy(g) => graph(Command::Energy, g),
            Cmd::Equienergetic(g) => graph(Command::Equienergetic, g),
            Cmd::Lift(a) => RunConfig {
                k: Some(a.k),
                p: Some(a.p),
                t: a.t,
                s: a.s,
                lift: Some(a.lift),
                ..RunConfig::base(Command::Lift, cli)
            },
            Cmd::Family(a) => RunConfig {
                k: Some(a.k),
                p: Some(a.p),
                t: a.t,
                s: a.s,
                ..RunConfig::base(Command::Family, cli)
            },
            Cmd::Verify(a) => RunConfig {
                k: a.k,
                p: a.p,
                m: a.m,
                max_q: a.k.is_none().then_some(a.max_q),
                ..RunConfig::base(Command::Verify, cli)
            },
            Cmd::Tables(a) => RunConfig { table: a.table, ..RunConfig::base(Command::Tables, cli) },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::from(&Cli::try_parse_from(args).unwrap())
    }

    #[test]
    fn graph_flags() {
        let c = cfg(&["gpspec", "spectrum", "-k", "3", "-p", "7", "-m", "3", "--variant", "gpsum-comp"]);
        assert_eq!((c.command, c.k, c.p, c.m, c.variant), (Command::Spectrum, Some(3), Some(7), Some(3), Variant::GpSumComplement));
        let c = cfg(&["gpspec", "spectrum", "-k", "3", "-p", "7", "-t", "3", "-s", "1", "--lift", "2", "--format", "json"]);
        assert_eq!((c.t, c.s, c.lift, c.m, c.format), (Some(3), Some(1), Some(2), None, Format::Json));
    }

    #[test]
    fn rejects_bad_combinations() {
        for args in [
            &["gpspec", "spectrum", "-k", "3", "-p", "7"][..],
            &["gpspec", "spectrum", "-k", "3", "-p", "7", "-m", "3", "--lift", "2"],
            &["gpspec", "spectrum", "-k", "5", "-p", "7", "-m", "3"],
            &["gpspec", "spectrum", "-k", "3", "-p", "7", "-m", "3", "--variant", "odd"],
            &["gpspec", "spectrum", "-k", "3", "-p", "7", "-m", "3", "-s", "1"],
            &["gpspec", "verify", "-k", "3"],
            &["gpspec", "tables", "--table", "4"],
            &["gpspec", "tables", "--dense-cap", "0"],
            &["gpspec"],
        ] {
            assert!(Cli::try_parse_from(args).is_err(), "{args:?}");
        }
    }

    #[test]
    fn cache_key_ignores_cache_path() {
        let a = cfg(&["gpspec", "tables", "--cache", "/tmp/a"]);
        let b = cfg(&["gpspec", "tables", "--cache", "/tmp/b"]);
        assert_eq!(a.cache_key(), b.cache_key());
        assert_ne!(a.cache_key(), cfg(&["gpspec", "tables", "--table", "1"]).cache_key());
        assert!(a.cache_key().starts_with(r#"{"command":"tables""#));
    }
}
