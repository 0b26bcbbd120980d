//! The `symloop` command line.
//!
//! Every subcommand is a pure function of its flags, input files and seed.
//! Domain errors print a single `error[Code]: message` line and exit 1;
//! usage errors exit 2.

pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bottcycles::{self, BasedCoproduct, Certified, PlaneFamily};
use crate::csring::{self, IntersectionRing};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::products;
use crate::rational::{RatVec, Rational};
use crate::rootspace::{self, SymmetricSpaceData, ValidationOptions};
use crate::{geodesics, spectrum, weyl};

pub use svg::{emit_svg, PlotSpec};

#[derive(Debug, Parser)]
#[command(
    name = "symloop",
    version,
    about = "Closed geodesics and loop-space bookkeeping for compact symmetric spaces"
)]
struct Cli {
    /// Run batch work on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpaceArg {
    /// Catalog name (sphere(3), cpn(2), gr2c4, a*b) or a space file.
    #[arg(long, conflicts_with = "product")]
    space: Option<String>,
    /// Product of two spaces, `s1,s2`.
    #[arg(long)]
    product: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the invariants of a space definition.
    Validate {
        #[command(flatten)]
        space: SpaceArg,
        /// Also check root-system closure and Cartan integrality.
        #[arg(long)]
        strict: bool,
        /// With --strict, also require a reduced root system.
        #[arg(long, requires = "strict")]
        reduced: bool,
    },
    /// Summarize a space: roots, lattice, Weyl group.
    Info {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Conjugate points, index and nullity of the closed geodesic t -> tH.
    Geodesic {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
    },
    /// Critical manifolds of the energy functional up to a bound.
    Enumerate {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        energy: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Chas-Sullivan product of two completing-manifold classes.
    CsProduct {
        #[command(flatten)]
        space: SpaceArg,
        /// Prime lattice direction.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        /// Intersection ring: `two-class` (default), `s2xs3`, or a ring file.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value = "Sigma")]
        a: String,
        #[arg(long, default_value_t = 1)]
        k1: u64,
        #[arg(long, default_value = "Sigma")]
        b: String,
        #[arg(long, default_value_t = 1)]
        k2: u64,
    },
    /// Degrees of the powers of the fundamental completing class.
    Power {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
    },
    /// Build a lattice-avoiding polygon certificate for a plane family.
    Bott {
        #[command(flatten)]
        space: SpaceArg,
        /// Planes as `root:level,root:level,...`.
        #[arg(long, allow_hyphen_values = true)]
        planes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the certificate file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file independently of its construction.
    VerifyCert {
        /// Space override; defaults to the catalog name stored in the file.
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Compose two spaces and check additivity for a pair of directions.
    Product {
        /// The two factors, `s1,s2`.
        #[arg(long)]
        product: String,
        #[arg(long = "H1", allow_hyphen_values = true)]
        h1: String,
        #[arg(long = "H2", allow_hyphen_values = true)]
        h2: String,
    },
    /// Draw the flat of a rank-two space as SVG.
    Plot {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        out: PathBuf,
        /// Half-width of the square box centered at the origin.
        #[arg(long = "box", default_value = "3")]
        half_width: String,
        #[arg(long, default_value = "1/20")]
        dot_radius: String,
        #[arg(long)]
        no_chamber: bool,
        /// Dash pattern per root, separated by `;`.
        #[arg(long)]
        styles: Option<String>,
    },
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let mut buf = String::new();
    match dispatch(cli.command, exec, &mut buf) {
        Ok(()) => {
            let _ = out.write_all(buf.as_bytes());
            0
        }
        Err(e) => {
            let _ = out.write_all(buf.as_bytes());
            let _ = writeln!(err, "error[{}]: {}", e.code(), e);
            1
        }
    }
}

fn resolve_one(spec: &str) -> Result<SymmetricSpaceData> {
    let path = Path::new(spec.trim());
    if path.is_file() {
        rootspace::load_space_file(path)
    } else {
        rootspace::catalog(spec)
    }
}

fn split_pair(spec: &str) -> Result<(SymmetricSpaceData, SymmetricSpaceData)> {
    let (a, b) = spec
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("--product expects `s1,s2`, got `{spec}`")))?;
    Ok((resolve_one(a)?, resolve_one(b)?))
}

impl SpaceArg {
    fn resolve(&self) -> Result<Option<SymmetricSpaceData>> {
        match (&self.space, &self.product) {
            (Some(s), _) => resolve_one(s).map(Some),
            (None, Some(p)) => {
                let (a, b) = split_pair(p)?;
                Ok(Some(products::compose(&a, &b).space))
            }
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<SymmetricSpaceData> {
        self.resolve()?
            .ok_or_else(|| Error::Parse("one of --space or --product is required".into()))
    }
}

fn parse_h(space: &SymmetricSpaceData, s: &str) -> Result<RatVec> {
    let h = RatVec::parse_list(s)?;
    space.check_dim(&h)?;
    Ok(h)
}

fn load_ring(
    spec: Option<&str>,
    space: &SymmetricSpaceData,
    h: &RatVec,
) -> Result<IntersectionRing> {
    match spec {
        None | Some("two-class") => {
            let sigma = space.dim_n() + geodesics::mu(space, h)?;
            Ok(IntersectionRing::two_class(sigma))
        }
        Some("s2xs3") => Ok(IntersectionRing::s2_times_s3()),
        Some(path) => csring::load_ring_file(Path::new(path)),
    }
}

fn dispatch(cmd: Command, exec: Execution, out: &mut String) -> Result<()> {
    use std::fmt::Write as _;
    match cmd {
        Command::Validate {
            space,
            strict,
            reduced,
        } => {
            let space = space.require()?;
            let report = rootspace::validate_with(
                &space,
                ValidationOptions {
                    strict,
                    allow_nonreduced: !reduced,
                },
            );
            let _ = writeln!(out, "space: {}", space.name());
            let _ = writeln!(out, "{report}");
            if !report.passed() {
                let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
                return Err(Error::ValidationFailed(failed.join(", ")));
            }
        }
        Command::Info { space } => {
            let space = space.require()?;
            let _ = writeln!(out, "{space}");
            let simple: Vec<String> = weyl::simple_roots(&space)
                .into_iter()
                .map(|r| space.root_label(r))
                .collect();
            let _ = writeln!(out, "simple roots: {}", simple.join(" "));
            let group = weyl::generate_group_with(&space, weyl::DEFAULT_GROUP_CAP, exec)?;
            let _ = writeln!(out, "weyl group order: {}", group.order());
        }
        Command::Geodesic { space, h } => {
            let space = space.require()?;
            let h = parse_h(&space, &h)?;
            let report = geodesics::report(&space, &h)?;
            let _ = writeln!(out, "{}", report.render(&space));
        }
        Command::Enumerate {
            space,
            energy,
            format,
        } => {
            let space = space.require()?;
            let bound: Rational = energy
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad energy bound `{energy}`")))?;
            let ledger = spectrum::enumerate_critical_with(&space, bound, exec)?;
            let text = match format {
                Format::Table => ledger.render_table(),
                Format::Records => ledger.render_records(),
            };
            out.push_str(&text);
            if !text.ends_with('\n') {
                out.push('\n');
            }
        }
        Command::CsProduct {
            space,
            h,
            ring,
            a,
            k1,
            b,
            k2,
        } => {
            let space = Arc::new(space.require()?);
            let h = parse_h(&space, &h)?;
            let ring = Arc::new(load_ring(ring.as_deref(), &space, &h)?);
            let c1 = csring::make_class(&space, &ring, &h, k1, &ring.element(&a)?)?;
            let c2 = csring::make_class(&space, &ring, &h, k2, &ring.element(&b)?)?;
            let verdict = csring::cs_product(&c1, &c2)?;
            let _ = writeln!(out, "space: {}", space.name());
            let _ = writeln!(out, "c1: {c1}");
            let _ = writeln!(out, "c2: {c2}");
            let _ = writeln!(out, "degree: {}", verdict.degree);
            let _ = writeln!(out, "status: {}", verdict.status);
            match &verdict.leading {
                Some(c) => {
                    let _ = writeln!(out, "leading: {c}");
                }
                None => {
                    let _ = writeln!(out, "leading: 0");
                }
            }
        }
        Command::Power {
            space,
            h,
            ring,
            k_max,
        } => {
            let space = Arc::new(space.require()?);
            let h = parse_h(&space, &h)?;
            let ring = Arc::new(load_ring(ring.as_deref(), &space, &h)?);
            let theta = csring::make_class(&space, &ring, &h, 1, &ring.fundamental())?;
            let _ = writeln!(out, "space: {}", space.name());
            let _ = writeln!(out, "theta: {theta}");
            let _ = writeln!(out, "{:>4}  {:>8}  nonzero", "k", "degree");
            for row in csring::power_report(&theta, k_max)? {
                let _ = writeln!(out, "{:>4}  {:>8}  {}", row.k, row.degree, row.nonzero);
            }
        }
        Command::Bott {
            space,
            planes,
            seed,
            out: path,
        } => {
            let space = space.require()?;
            let family = PlaneFamily::parse(&planes)?;
            let verdict = bottcycles::coproduct_verdict(&space, &family, seed)?;
            let _ = writeln!(out, "space: {}", space.name());
            let _ = writeln!(out, "planes: {family}");
            let _ = writeln!(out, "seed: {seed}");
            let _ = writeln!(out, "gamma_dim: {}", verdict.gamma_dim);
            match (&verdict.certificate, &verdict.infeasible) {
                (Some(cert), _) => {
                    for (i, q) in cert.junctions.iter().enumerate() {
                        let _ = writeln!(out, "junction {}: {q}", i + 1);
                    }
                    let _ = writeln!(out, "certificate: verified");
                    if let Some(path) = &path {
                        std::fs::write(path, cert.to_file(&space).to_toml())?;
                        let _ = writeln!(out, "written: {}", path.display());
                    }
                }
                (None, Some(why)) => {
                    let _ = writeln!(out, "certificate: infeasible ({why})");
                }
                (None, None) => {}
            }
            let int = match verdict.int_multiplicity {
                Certified::Known(k) => k.to_string(),
                Certified::Unknown => "unknown".into(),
            };
            let _ = writeln!(out, "int_multiplicity: {int}");
            let _ = writeln!(
                out,
                "based_coproduct: {}",
                match verdict.based_coproduct {
                    BasedCoproduct::Trivial => "trivial",
                    BasedCoproduct::Unknown => "unknown",
                }
            );
        }
        Command::VerifyCert { space, cert } => {
            let file = bottcycles::load_certificate_file(&cert)?;
            let space = match space.resolve()? {
                Some(s) => s,
                None => rootspace::catalog(&file.space)?,
            };
            let cert = file.into_certificate();
            let report = bottcycles::verify_report(&space, &cert);
            let _ = writeln!(out, "space: {}", space.name());
            let _ = writeln!(out, "planes: {}", cert.family);
            let _ = writeln!(out, "{report}");
            if !report.passed() {
                let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
                return Err(Error::ValidationFailed(failed.join(", ")));
            }
        }
        Command::Product { product, h1, h2 } => {
            let (a, b) = split_pair(&product)?;
            let h1 = parse_h(&a, &h1)?;
            let h2 = parse_h(&b, &h2)?;
            let composed = products::compose(&a, &b);
            let _ = writeln!(out, "space: {}", composed.space.name());
            let check = products::factor_check(&a, &b, &h1, &h2)?;
            let _ = writeln!(out, "{check}");
            match products::coproduct_vanishing_report(&composed, &h1, &h2) {
                Ok(report) => {
                    let _ = writeln!(out, "{report}");
                }
                Err(e @ Error::NotApplicable(_)) => {
                    let _ = writeln!(out, "verdict: NotApplicable ({e})");
                }
                Err(e) => return Err(e),
            }
            if !check.passed() {
                return Err(Error::ValidationFailed("factor additivity".into()));
            }
        }
        Command::Plot {
            space,
            h,
            out: path,
            half_width,
            dot_radius,
            no_chamber,
            styles,
        } => {
            let space = space.require()?;
            let h = parse_h(&space, &h)?;
            let parse = |s: &str| -> Result<Rational> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
            };
            let mut spec = PlotSpec::square(parse(&half_width)?, h);
            spec.dot_radius = parse(&dot_radius)?;
            spec.shade_chamber = !no_chamber;
            spec.plane_styles =
                styles.map(|s| s.split(';').map(|x| x.trim().to_string()).collect());
            spec.output = Some(path.clone());
            let svg = emit_svg(&space, &spec)?;
            std::fs::write(&path, &svg)?;
            let _ = writeln!(out, "written: {}", path.display());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("symloop").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn geodesic_gr2c4_example() {
        let (code, out, _) = run_capture(&["geodesic", "--space", "gr2c4", "--H", "2,1"]);
        assert_eq!(code, 0);
        assert!(out.contains("conjugate_times: 5"));
        assert!(out.contains("index: 8"));
        assert!(out.contains("nullity: 14"));
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = run_capture(&["geodesic", "--space", "gr2c4", "--H", "1/2,0"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error[NotClosed]"), "{err}");
        let (code, _, _) = run_capture(&["geodesic", "--space", "gr2c4"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _, err) = run_capture(&["info", "--space", "torus"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error[NotInCatalog]"));
    }

    #[test]
    fn product_flag_is_a_space() {
        let (code, out, _) = run_capture(&["info", "--product", "sphere(2),sphere(3)"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("weyl group order: 4"));
    }

    #[test]
    fn negative_coordinates_parse() {
        let (code, out, err) = run_capture(&["geodesic", "--space", "gr2c4", "--H", "-2,1"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("index: 8"));
    }
}
