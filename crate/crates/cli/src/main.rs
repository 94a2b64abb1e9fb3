use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use wph_core::arith::{parse_rat, rat_to_string, LogExpr, Place, Rat};
use wph_core::format::{fmt_sig, log_terms, round_sig};
use wph_core::gcdops::{hwgcd, hwgcd_subscheme, log_hwgcd, log_wgcd, wgcd, Subscheme};
use wph_core::heights::{veronese_check, wheight};
use wph_core::localheights::{
    global_sum, zeta_principal, zeta_subscheme, DivisorSpec, LocalHeight, Metric,
};
use wph_core::points::{ProjPoint, WPoint};
use wph_core::scan::{sing1_audit, vojta_scan, Domain, ScanConfig};
use wph_core::singular::{
    component_membership, hypersurface_well_formed, is_singular, singular_components, support_gcd,
};
use wph_core::weights::{reduce_and_well_form, veronese_data, Weights};
use wph_core::wpoly::WPolynomial;
use wph_core::Error;

#[derive(Parser)]
#[command(
    name = "wph",
    version,
    about = "Heights, gcds and singular loci on weighted projective spaces over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    SUnitPairs,
}

#[derive(clap::Args)]
struct PointArgs {
    /// Point such as "[3:4]" or "[1/2:3]"
    point: String,
    #[arg(long)]
    weights: String,
}

#[derive(clap::Args)]
struct DivisorArgs {
    /// Homogeneous form, e.g. "x0^2 - x1"
    #[arg(long, conflicts_with = "generators")]
    poly: Option<String>,
    /// Subscheme generators separated by ';'
    #[arg(long)]
    generators: Option<String>,
    #[arg(long)]
    gcd_weights: Option<String>,
    #[arg(long, value_enum, default_value = "paper")]
    metric: MetricArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Paper,
    Alt,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Paper => Metric::Paper,
            MetricArg::Alt => Metric::Alt,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weighted height wh(x)^m and lwh(x)
    Height(PointArgs),
    /// Weighted gcd of an integral tuple
    Wgcd(PointArgs),
    /// Generalized weighted gcd, or the gcd of a subscheme's generator values
    Hwgcd {
        #[command(flatten)]
        p: PointArgs,
        #[arg(long, value_enum, default_value = "on")]
        archimedean: Switch,
        #[arg(long)]
        generators: Option<String>,
        #[arg(long)]
        gcd_weights: Option<String>,
    },
    /// Normalized representative of a point
    Normalize(PointArgs),
    /// Reduction, well-forming and the Veronese map
    Veronese(PointArgs),
    /// Singular locus of the weights, and membership of a point
    Singular {
        /// Optional point
        point: Option<String>,
        #[arg(long)]
        weights: String,
        /// Degree for the hypersurface well-formedness test
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Local weighted height at one place
    Zeta {
        #[command(flatten)]
        p: PointArgs,
        #[command(flatten)]
        d: DivisorArgs,
        /// "inf" or a prime
        #[arg(long)]
        place: String,
    },
    /// Sum of local weighted heights over all places
    GlobalHeight {
        #[command(flatten)]
        p: PointArgs,
        #[command(flatten)]
        d: DivisorArgs,
    },
    /// Tabulate the weighted gcd bound over a domain of points
    VojtaScan {
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long, required_unless_present = "preset")]
        weights: Option<String>,
        #[arg(long, required_unless_present = "preset")]
        generators: Option<String>,
        #[arg(long)]
        gcd_weights: Option<String>,
        #[arg(long)]
        codim: Option<u64>,
        #[arg(long, default_value = "1")]
        epsilon: String,
        #[arg(long, default_value = "0")]
        delta: String,
        /// Comma-separated primes
        #[arg(long, default_value = "")]
        s_primes: String,
        /// "box:B", "box:B0,B1,..." or "sunit:P1,P2:MAX"
        #[arg(long)]
        domain: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "paper")]
        metric: MetricArg,
    },
    /// Points with log hwgcd = 0 that are not singular
    Sing1Audit {
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.code(), "message": e.to_string() }));
            ExitCode::from(if e.is_parse() { 2 } else { 3 })
        }
    }
}

fn weights(s: &str) -> Result<Weights, Error> {
    s.parse()
}

fn point(p: &PointArgs) -> Result<(Weights, WPoint), Error> {
    let w = weights(&p.weights)?;
    let x = WPoint::parse(&p.point, &w)?;
    Ok((w, x))
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn real(x: f64) -> Value {
    json!(round_sig(x))
}

fn log_value(e: &LogExpr) -> Value {
    json!({ "terms": log_terms(e), "value": real(e.value()) })
}

fn local_json(z: &LocalHeight, place: Option<&Place>) -> Value {
    let mut v = json!({
        "m": z.m,
        "ratio": rat_to_string(&z.ratio),
        "value": real(z.value()),
    });
    // at a finite place the ratio is a power of p, so the formal log is cheap
    if matches!(place, Some(Place::Finite(_))) {
        v["log"] = json!(log_terms(&z.to_log()));
    }
    v
}

fn divisor(d: &DivisorArgs, w: &Weights) -> Result<DivisorSpec, Error> {
    let gw = d.gcd_weights.as_deref().map(weights).transpose()?;
    match (&d.poly, &d.generators) {
        (Some(f), None) => Ok(DivisorSpec::Principal(WPolynomial::parse(f, w)?)),
        (None, Some(g)) => Ok(DivisorSpec::SubschemeMin(Subscheme::parse(g, w, gw)?)),
        _ => Err(Error::Parse(
            "give exactly one of --poly or --generators".into(),
        )),
    }
}

fn run(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Height(p) => {
            let (_, x) = point(&p)?;
            let h = wheight(&x);
            let mut v = serde_json::to_value(&h).expect("serializable");
            v["point"] = json!(x.to_string());
            v["weights"] = json!(x.weights().to_string());
            Ok(pretty(v))
        }
        Command::Wgcd(p) => {
            let (w, x) = point(&p)?;
            let ints = x.integer_coords().ok_or_else(|| {
                Error::HypothesisViolated("wgcd needs integral coordinates".into())
            })?;
            let g = wgcd(&ints, &w)?;
            Ok(pretty(json!({
                "point": x.to_string(),
                "weights": w.to_string(),
                "wgcd": g.to_string(),
                "log_wgcd": log_value(&log_wgcd(&ints, &w)?),
            })))
        }
        Command::Hwgcd {
            p,
            archimedean,
            generators,
            gcd_weights,
        } => {
            let (w, x) = point(&p)?;
            if let Some(g) = generators {
                let gw = gcd_weights.as_deref().map(weights).transpose()?;
                let y = Subscheme::parse(&g, &w, gw)?;
                let l = hwgcd_subscheme(&x, &y)?;
                return Ok(pretty(json!({
                    "point": x.to_string(),
                    "normalized": x.normalize().to_string(),
                    "gcd_weights": y.gcd_weights().to_string(),
                    "log_hwgcd": log_value(&l),
                })));
            }
            let h = log_hwgcd(x.coords(), &w, matches!(archimedean, Switch::On))?;
            let finite_int = hwgcd(x.coords(), &w)?;
            let mut v = json!({
                "point": x.to_string(),
                "weights": w.to_string(),
                "hwgcd_finite": finite_int.to_string(),
                "log_finite": log_value(&h.finite),
                "log_hwgcd": real(h.value()),
            });
            if let Some(a) = &h.archimedean {
                v["log_archimedean"] = real(a.value());
            }
            Ok(pretty(v))
        }
        Command::Normalize(p) => {
            let (w, x) = point(&p)?;
            let n = x.normalize_with_data();
            Ok(pretty(json!({
                "input": x.to_string(),
                "weights": w.to_string(),
                "point": n.point.to_string(),
                "clearing": n.clearing.to_string(),
                "wgcd": n.wgcd.to_string(),
            })))
        }
        Command::Veronese(p) => {
            let w = weights(&p.weights)?;
            let map = reduce_and_well_form(&w);
            let vd = veronese_data(&map.target);
            let mut v = json!({
                "weights": w.to_string(),
                "reduced_weights": map.target.to_string(),
                "coord_exponents": map.coord_exponents,
                "m": vd.m,
                "exponents": vd.exps,
                "is_embedding": vd.is_embedding,
            });
            if !p.point.contains('x') {
                let x = WPoint::parse(&p.point, &w)?;
                let y = x.map(&map)?;
                let img: ProjPoint = y.veronese();
                v["point"] = json!(x.to_string());
                v["reduced_point"] = json!(y.to_string());
                v["image"] = json!(img.to_string());
                let check = veronese_check(&y)?;
                v["wh_pow_m"] = json!(rat_to_string(&check.lhs));
                v["image_height"] = json!(rat_to_string(&check.rhs));
            }
            Ok(pretty(v))
        }
        Command::Singular {
            point,
            weights: ws,
            degree,
        } => {
            let w = weights(&ws)?;
            let mut v = json!({
                "weights": w.to_string(),
                "components": singular_components(&w),
            });
            if let Some(d) = degree {
                v["hypersurface_degree"] = json!(d);
                v["hypersurface_well_formed"] = json!(hypersurface_well_formed(&w, d));
            }
            if let Some(p) = point {
                let x = WPoint::parse(&p, &w)?;
                let strata: Vec<u64> = singular_components(&w)
                    .iter()
                    .map(|c| c.prime)
                    .filter(|&p| component_membership(&x, p).unwrap_or(false))
                    .collect();
                v["point"] = json!(x.to_string());
                v["singular"] = json!(is_singular(&x));
                v["support_gcd"] = json!(support_gcd(&x));
                v["strata"] = json!(strata);
            }
            Ok(pretty(v))
        }
        Command::Zeta { p, d, place } => {
            let (w, x) = point(&p)?;
            let place = Place::parse(&place)?;
            let metric = Metric::from(d.metric);
            let z = match divisor(&d, &w)? {
                DivisorSpec::Principal(f) | DivisorSpec::Hyperplane(f) => {
                    zeta_principal(&x, &f, &place, metric)?
                }
                DivisorSpec::SubschemeMin(y) => zeta_subscheme(&x, &y, &place, metric)?,
            };
            let mut v = local_json(&z, Some(&place));
            v["point"] = json!(x.to_string());
            v["place"] = json!(place.to_string());
            v["metric"] = json!(metric.to_string());
            Ok(pretty(v))
        }
        Command::GlobalHeight { p, d } => {
            let (w, x) = point(&p)?;
            let metric = Metric::from(d.metric);
            let spec = divisor(&d, &w)?;
            let g = global_sum(&x, &spec, metric)?;
            let per_place: Vec<Value> = g
                .per_place
                .iter()
                .map(|(pl, z)| {
                    let mut v = local_json(z, Some(pl));
                    v["place"] = json!(pl.to_string());
                    v
                })
                .collect();
            let lwh = wheight(&x).lwh;
            let mut v = json!({
                "point": x.to_string(),
                "weights": w.to_string(),
                "metric": metric.to_string(),
                "per_place": per_place,
                "other_places": local_json(&g.other_places, None),
                "total": real(g.value()),
                "lwh": real(lwh),
            });
            if let DivisorSpec::Principal(f) = &spec {
                // compare with the height attached to O(d)
                let deg = f.homogeneous_degree()?;
                v["degree"] = json!(deg);
                v["discrepancy"] = real(g.value() - deg as f64 * lwh);
            }
            Ok(pretty(v))
        }
        Command::VojtaScan {
            preset,
            weights: ws,
            generators,
            gcd_weights,
            codim,
            epsilon,
            delta,
            s_primes,
            domain,
            format,
            metric,
        } => {
            let epsilon = parse_rat(&epsilon)?;
            let mut config = match preset {
                Some(Preset::SUnitPairs) => {
                    let w = ws
                        .as_deref()
                        .map(weights)
                        .transpose()?
                        .unwrap_or_else(|| weights("(1,2,3)").unwrap());
                    if w.len() != 3 || w.get(0) != 1 {
                        return Err(Error::InvalidConfig(
                            "preset s-unit-pairs needs weights (1,q1,q2)".into(),
                        ));
                    }
                    ScanConfig::s_unit_pairs(w.get(1), w.get(2), 1_000_000, epsilon)?
                }
                None => {
                    let w = weights(ws.as_deref().unwrap_or_default())?;
                    let gw = gcd_weights.as_deref().map(weights).transpose()?;
                    let y = Subscheme::parse(generators.as_deref().unwrap_or_default(), &w, gw)?;
                    if !y.all_homogeneous() {
                        eprintln!("warning: generators are not homogeneous; using the supplied gcd weights");
                    }
                    ScanConfig {
                        domain: Domain::Box(vec![10; w.len()]),
                        weights: w,
                        generators: y,
                        epsilon,
                        delta: Rat::from_integer(0.into()),
                        s_primes: BTreeSet::new(),
                        codim: None,
                        metric: Metric::Paper,
                    }
                }
            };
            if let Some(d) = domain {
                config.domain = Domain::parse(&d, config.weights.len())?;
            }
            if preset.is_none() || delta != "0" {
                config.delta = parse_rat(&delta)?;
            }
            if preset.is_none() || !s_primes.is_empty() {
                config.s_primes = s_primes
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad prime `{s}`")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            if codim.is_some() {
                config.codim = codim;
            }
            config.metric = metric.into();
            let report = vojta_scan(&config)?;
            eprintln!(
                "scanned {} points, {} rows, {} exceptional, max ratio {} in {:.3}s",
                report.summary.candidates,
                report.summary.evaluated,
                report.summary.exceptional,
                fmt_sig(report.summary.max_ratio),
                report.summary.elapsed.as_secs_f64()
            );
            Ok(match format {
                Format::Csv => report.to_csv().trim_end().to_string(),
                Format::Json => report.to_json(),
            })
        }
        Command::Sing1Audit { weights: ws, bound } => {
            let w = weights(&ws)?;
            let report = sing1_audit(&w, bound)?;
            Ok(serde_json::to_string_pretty(&report).expect("serializable"))
        }
    }
}
