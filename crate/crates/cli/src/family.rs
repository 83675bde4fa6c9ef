//! Named instance families shared by `gen` and `bench`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use gpss_core::generators::{
    bundle_arrangement, degenerate_arrangement, dense_lattice, erdos_class, grid, grid_like,
    parallels_with_transversal, random_lines, random_points, Seed,
};
use gpss_core::io::Instance;
use gpss_core::{next_prime_at_least, GpssError, Rational};
use serde::{Deserialize, Serialize};

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Full m x m grid.
    Grid,
    /// One Erdős class {(x, x^2 mod p + i)}.
    Erdos,
    /// n random points of an alpha-dense lattice square.
    Dense,
    /// Random points of a side x side grid.
    Random,
    /// Three bundles of parallel lines.
    Bundles,
    /// Three parallels plus concurrent lines.
    Degenerate,
    /// Parallels crossed by one transversal.
    Transversal,
    /// Random ceil(keep n) points of the sqrt(n) x sqrt(n) grid.
    Gridlike,
    /// Random lines with bounded integer coefficients.
    Lines,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::Erdos => "erdos",
            Family::Dense => "dense",
            Family::Random => "random",
            Family::Bundles => "bundles",
            Family::Degenerate => "degenerate",
            Family::Transversal => "transversal",
            Family::Gridlike => "gridlike",
            Family::Lines => "lines",
        }
    }

    /// Whether the seed changes the generated instance.
    pub fn is_random(self) -> bool {
        matches!(
            self,
            Family::Dense | Family::Random | Family::Gridlike | Family::Lines
        )
    }

    /// Name of the size parameter swept by `bench`.
    pub fn size_param(self) -> &'static str {
        match self {
            Family::Grid | Family::Erdos => "m",
            _ => "n",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Family as ValueEnum>::from_str(s, false)
    }
}

/// Parameters for one generated instance; unused fields are ignored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub m: Option<u64>,
    pub n: Option<usize>,
    pub p: Option<u64>,
    pub i: Option<i64>,
    pub alpha: Option<Rational>,
    pub keep: Option<Rational>,
    pub range: Option<i64>,
    pub side: Option<u64>,
    pub seed: u64,
}

fn need<T>(v: Option<T>, family: Family, name: &str) -> Result<T, GpssError> {
    v.ok_or_else(|| GpssError::InvalidParameter(format!("family {family} needs --{name}")))
}

impl Params {
    /// The parameters that determine the instance, for records.
    pub fn describe(&self, family: Family) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.insert(k.to_string(), v);
            }
        };
        put("m", self.m.map(|v| v.to_string()));
        put("n", self.n.map(|v| v.to_string()));
        put("p", self.p.map(|v| v.to_string()));
        put("i", self.i.map(|v| v.to_string()));
        put("alpha", self.alpha.as_ref().map(ToString::to_string));
        put("keep", self.keep.as_ref().map(ToString::to_string));
        put("range", self.range.map(|v| v.to_string()));
        put("side", self.side.map(|v| v.to_string()));
        if family.is_random() {
            put("seed", Some(self.seed.to_string()));
        }
        out
    }
}

pub fn generate(family: Family, params: &Params) -> Result<Instance, GpssError> {
    let seed = Seed(params.seed);
    let n = || need(params.n, family, "n");
    Ok(match family {
        Family::Grid => Instance::Points(grid(need(params.m, family, "m")?)),
        Family::Erdos => {
            let m = need(params.m, family, "m")?;
            let p = match params.p {
                Some(p) => p,
                None => next_prime_at_least(m)?,
            };
            Instance::Points(erdos_class(m, p, params.i.unwrap_or(0))?)
        }
        Family::Dense => Instance::Points(dense_lattice(
            n()?,
            &need(params.alpha.clone(), family, "alpha")?,
            seed,
        )?),
        Family::Random => {
            let n = n()?;
            let side = params
                .side
                .unwrap_or_else(|| (n as f64).sqrt().ceil() as u64);
            Instance::Points(random_points(n, side, seed)?)
        }
        Family::Bundles => Instance::Lines(bundle_arrangement(n()?)?),
        Family::Degenerate => Instance::Lines(degenerate_arrangement(n()?)?),
        Family::Transversal => Instance::Lines(parallels_with_transversal(n()?)?),
        Family::Gridlike => Instance::Points(grid_like(
            n()?,
            &params.keep.clone().unwrap_or_else(Rational::one),
            seed,
        )?),
        Family::Lines => Instance::Lines(random_lines(n()?, params.range.unwrap_or(10), seed)?),
    })
}
