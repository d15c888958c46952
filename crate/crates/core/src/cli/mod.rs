//! Text formats and the command dispatcher behind the `gsite` binary.
//!
//! Exit statuses: `0` the property holds or the artifact was produced, `1`
//! the property fails (the report carries a witness), `2` structural,
//! resource or usage errors.

mod catfile;
mod commands;
mod diag;
mod gtopfile;
mod witfile;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use catfile::{parse_category_file, parse_category_source, serialize_category};
pub use commands::run_command;
pub use diag::{Diagnostic, DiagnosticCode, Diagnostics, SourceSpan};
pub use gtopfile::{parse_sieve_literal, parse_topology_file, serialize_topology};
pub use witfile::{parse_witness_file, serialize_witness_file, witness_line, HomEntry, WitnessFile};

use crate::algebra::AlgebraKind;
use crate::config::Config;
use crate::gtopology::TopologyKind;

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// One parsed invocation.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "gsite",
    version,
    about = "Finite sites: categories, sieves, topologies and group objects"
)]
pub struct CommandRequest {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Check inputs (category laws, topology axioms, witness laws) before use.
    #[arg(long, global = true, overrides_with = "no_verify")]
    pub verify: bool,
    #[arg(long, global = true)]
    pub no_verify: bool,
    /// Maximum number of sieves at one object.
    #[arg(long, global = true, value_name = "N")]
    pub cap_sieves: Option<usize>,
    /// Maximum hom-set size.
    #[arg(long, global = true, value_name = "N")]
    pub cap_homs: Option<usize>,
    /// Maximum number of candidates in exhaustive searches.
    #[arg(long, global = true, value_name = "N")]
    pub cap_search: Option<usize>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the produced artifact here instead of into the report.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

impl Options {
    /// Environment defaults overridden by flags.
    pub fn config(&self) -> Config {
        let mut cfg = Config::from_env();
        if let Some(v) = self.cap_sieves {
            cfg.cap_sieves = v;
        }
        if let Some(v) = self.cap_homs {
            cfg.cap_homs = v;
        }
        if let Some(v) = self.cap_search {
            cfg.cap_search = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg
    }

    pub fn verifying(&self) -> bool {
        !self.no_verify
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
}

/// Where a topology comes from: `.gtop` files and named builders, in that order.
#[derive(Debug, Clone, Default, Args)]
pub struct TopologyArgs {
    /// A `.gtop` file.
    #[arg(long, short = 't', value_name = "PATH")]
    pub topology: Vec<PathBuf>,
    /// A named builder: trivial, discrete, dense or atomic.
    #[arg(long, short = 'k', value_name = "KIND")]
    pub kind: Vec<TopologyKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Monoid,
    Group,
}

impl From<Structure> for AlgebraKind {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Monoid => AlgebraKind::Monoid,
            Structure::Group => AlgebraKind::Group,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MulArg {
    Join,
    Meet,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Verb {
    /// Parse a `.cat` file and check the category laws.
    Validate { category: PathBuf },
    /// Write a divisor poset, a finite-set category or a product category.
    #[command(group = clap::ArgGroup::new("source").required(true))]
    MakeCategory {
        /// The divisor poset of N.
        #[arg(long, group = "source", value_name = "N")]
        divisors: Option<u64>,
        /// Finite sets, as `name:size` or `size`, comma separated.
        #[arg(long, group = "source", value_delimiter = ',', value_name = "LIST")]
        carriers: Vec<String>,
        /// The product of two table categories.
        #[arg(long, group = "source", num_args = 2, value_names = ["A", "B"])]
        product_of: Vec<PathBuf>,
    },
    /// Write a named topology as a `.gtop` file.
    MakeTopology {
        category: PathBuf,
        #[arg(long, short = 'k', value_name = "KIND")]
        kind: TopologyKind,
    },
    /// Check the three axioms.
    CheckTopology {
        category: PathBuf,
        #[command(flatten)]
        topology: TopologyArgs,
    },
    /// Pull a sieve, or the covers at the codomain, back along an arrow.
    Pullback {
        category: PathBuf,
        #[arg(long, short = 'a', value_name = "ARROW")]
        arrow: String,
        /// A sieve literal such as `{2->4}`; defaults to the covers at the codomain.
        #[arg(long, value_name = "SIEVE")]
        sieve: Option<String>,
        #[command(flatten)]
        topology: TopologyArgs,
    },
    /// Is `J(dom f)` contained in `f*(J(cod f))`?
    CheckContinuous {
        category: PathBuf,
        #[arg(long, short = 'a', value_name = "ARROW")]
        arrow: String,
        #[command(flatten)]
        topology: TopologyArgs,
    },
    /// The largest local topology at an object making a family of arrows continuous.
    InitialTopology {
        category: PathBuf,
        #[arg(long, value_name = "OBJECT")]
        object: String,
        #[arg(long = "arrow", short = 'a', value_name = "ARROW")]
        arrows: Vec<String>,
        #[command(flatten)]
        topology: TopologyArgs,
    },
    /// List every topology on a small category.
    EnumerateTopologies { category: PathBuf },
    /// The intersection of two topologies.
    Meet {
        category: PathBuf,
        #[command(flatten)]
        topology: TopologyArgs,
    },
    /// The topology generated by two topologies.
    Join {
        category: PathBuf,
        #[command(flatten)]
        topology: TopologyArgs,
    },
    /// Search for monoid or group objects.
    FindObjects {
        category: PathBuf,
        #[arg(long, value_enum)]
        structure: Structure,
    },
    /// Check the monoid or group laws for every witness in a `.wit` file.
    CheckObject {
        category: PathBuf,
        witness: PathBuf,
        /// Also check commutativity.
        #[arg(long)]
        abelian: bool,
    },
    /// Check every `hom` line of a `.wit` file.
    CheckHom { category: PathBuf, witness: PathBuf },
    /// Topological monoid or group objects.
    CheckGtop {
        category: PathBuf,
        /// Witness file for the object-level reading.
        witness: Option<PathBuf>,
        #[command(flatten)]
        topology: TopologyArgs,
        /// Treat a poset operation as a functor `C x C -> C` instead.
        #[arg(long, requires = "mul")]
        functor_level: bool,
        #[arg(long, value_enum)]
        mul: Option<MulArg>,
        /// Unit object; defaults to the bottom for join and the top for meet.
        #[arg(long, value_name = "OBJECT")]
        unit: Option<String>,
        /// Topology on the product category, as a `.gtop` file.
        #[arg(long, value_name = "PATH", conflicts_with = "product_kind")]
        product_topology: Option<PathBuf>,
        /// Topology on the product category, as a named builder.
        #[arg(long, value_name = "KIND")]
        product_kind: Option<TopologyKind>,
        /// A subposet whose inclusion square should commute.
        #[arg(long, value_name = "PATH")]
        submonoid: Option<PathBuf>,
    },
}

/// Exit status and report text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub report: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CommandRequest::try_parse_from(args) {
        Ok(req) => run_command(&req),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_ERROR } else { EXIT_HOLDS };
            Outcome {
                status,
                report: e.render().to_string(),
            }
        }
    }
}
