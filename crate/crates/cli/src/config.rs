use std::path::PathBuf;

use bethe_core::weyl_group::DEFAULT_MAX_RANK;
use bethe_core::{Error, Model, ModelSpec, Momenta, Parity, Representation, Sector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{CommonArgs, Format, RepKind};

/// Largest rank for which the regular representation is offered; its
/// coefficient table has `(2^N·N!)²` entries.
pub const MAX_REGULAR_RANK: usize = 4;

/// Failure that ends a command before a report is produced.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Inconsistent { .. } | Error::Geometry(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentaSource {
    Explicit,
    Seeded,
}

/// Validated settings of one run. Serialized verbatim into every output
/// header; the output location is left out so that reruns compare equal.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub model: Model,
    pub spec: ModelSpec,
    pub representation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sector: Option<Sector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub momenta: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub momenta_source: Option<MomentaSource>,
    pub samples: usize,
    pub probes: usize,
    pub points: usize,
    pub h: f64,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub format: &'static str,
    /// Command-specific settings.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub format_kind: Format,
}

impl RunConfig {
    /// Resolves the arguments shared by all commands. `default_n` applies
    /// when `--N` is absent; `max_n` defaults to the group enumeration limit.
    pub fn new(
        command: &str,
        args: &CommonArgs,
        default_n: usize,
        max_n: Option<usize>,
    ) -> Result<Self, Failure> {
        let n = args.n.unwrap_or(default_n);
        let max_n = max_n.unwrap_or(DEFAULT_MAX_RANK);
        if n == 0 {
            return Err(Failure::usage("--N must be at least 1"));
        }
        if n > max_n {
            return Err(Failure::usage(format!("--N must be at most {max_n}")));
        }
        let model: Model = args.model.parse()?;
        let spec = match model {
            Model::Delta => ModelSpec::delta(args.c1, args.c2)?,
            Model::Pdp => ModelSpec::pdp(args.lambda1, args.lambda2)?,
        };
        let sector = match (args.rep, &args.sector) {
            (Some(RepKind::Regular), Some(_)) => {
                return Err(Failure::usage(
                    "--sector cannot be combined with --rep regular",
                ))
            }
            (Some(RepKind::Regular), None) => None,
            (_, Some(s)) => Some(s.parse::<Sector>()?),
            (_, None) => Some(Sector::BOSON_EVEN),
        };
        if sector.is_none() && n > MAX_REGULAR_RANK {
            return Err(Failure::usage(format!(
                "the regular representation is limited to N ≤ {MAX_REGULAR_RANK}"
            )));
        }
        let representation = match sector {
            Some(s) => format!("sector {s}"),
            None => "regular".to_string(),
        };
        for (name, value) in [
            ("--samples", args.samples),
            ("--probes", args.probes),
            ("--points", args.points),
        ] {
            if value == 0 {
                return Err(Failure::usage(format!("{name} must be at least 1")));
            }
        }
        if !(args.h > 0.0 && args.h.is_finite()) {
            return Err(Failure::usage("--h must be positive"));
        }
        if let Some(t) = args.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Failure::usage("--tol must be positive"));
            }
        }
        let out = match (&args.out, &args.out_dir) {
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(format!(
                "{}.{}",
                command.replace(' ', "-"),
                args.format.extension()
            ))),
            (None, None) => None,
        };
        Ok(Self {
            command: command.to_string(),
            n,
            model,
            spec,
            representation,
            sector,
            momenta: None,
            momenta_source: None,
            samples: args.samples,
            probes: args.probes,
            points: args.points,
            h: args.h,
            tolerance: args.tol,
            seed: args.seed,
            format: args.format.extension(),
            extra: Map::new(),
            out,
            format_kind: args.format,
        })
    }

    /// Parses `--k` or draws momenta from the seed, and records them.
    pub fn resolve_momenta(&mut self, k: Option<&str>) -> Result<Momenta, Failure> {
        let momenta = match k {
            Some(list) => {
                let values = list
                    .split(',')
                    .map(|s| s.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Failure::usage(format!("--k: {e}")))?;
                if values.len() != self.n {
                    return Err(Failure::usage(format!(
                        "--k has {} values but N = {}",
                        values.len(),
                        self.n
                    )));
                }
                self.momenta_source = Some(MomentaSource::Explicit);
                Momenta::new(values)?
            }
            None => {
                self.momenta_source = Some(MomentaSource::Seeded);
                Momenta::random(self.n, &mut self.rng(0))
            }
        };
        self.momenta = Some(momenta.values().to_vec());
        Ok(momenta)
    }

    pub fn representation(&self) -> Result<Representation, Failure> {
        Ok(match self.sector {
            Some(s) => Representation::scalar(self.n, s),
            None => Representation::regular(self.n)?,
        })
    }

    pub fn record(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("config values serialize");
        self.extra.insert(key.to_string(), value);
    }

    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    /// Independent streams derived from the seed, one per purpose.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub fn parse_parity(s: &str) -> Result<Parity, Failure> {
    s.parse::<Parity>().map_err(Failure::from)
}

/// `lo:hi:count`, log-spaced.
pub fn parse_grid(s: &str) -> Result<(f64, f64, usize), Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Failure::usage(format!("--v0 expects lo:hi:count, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    Ok((lo, hi, count))
}
