use serde::{Deserialize, Serialize};

use super::{Bump, Potential, Shape};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpDoc {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

/// On-disk JSON form of a potential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum PotentialDoc {
    SquareWell {
        dimension: usize,
        support_radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radial: Option<bool>,
        depth: f64,
        half_width: f64,
    },
    BumpSum {
        dimension: usize,
        support_radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radial: Option<bool>,
        bumps: Vec<BumpDoc>,
    },
    GridSampled {
        dimension: usize,
        support_radius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radial: Option<bool>,
        grid_spacing: f64,
        samples: Vec<f64>,
    },
}

impl PotentialDoc {
    pub fn to_potential<T: Real>(&self) -> Result<Potential<T>> {
        let (dimension, radius, radial) = match self {
            PotentialDoc::SquareWell { dimension, support_radius, radial, .. }
            | PotentialDoc::BumpSum { dimension, support_radius, radial, .. }
            | PotentialDoc::GridSampled { dimension, support_radius, radial, .. } => (*dimension, *support_radius, *radial),
        };
        match (dimension, radial) {
            (3, Some(false)) => {
                return Err(Error::InvalidPotential("three-dimensional potentials must be radial".into()))
            }
            (1, Some(true)) => return Err(Error::InvalidPotential("the radial flag applies to dimension 3 only".into())),
            _ => {}
        }
        let shape = match self {
            PotentialDoc::SquareWell { depth, half_width, .. } => {
                Shape::SquareWell { depth: lit(*depth), half_width: lit(*half_width) }
            }
            PotentialDoc::BumpSum { bumps, .. } => Shape::BumpSum(
                bumps.iter().map(|b| Bump::new(lit(b.amplitude), lit(b.center), lit(b.width))).collect(),
            ),
            PotentialDoc::GridSampled { grid_spacing, samples, .. } => Shape::GridSampled {
                spacing: lit(*grid_spacing),
                samples: samples.iter().map(|&v| lit(v)).collect(),
            },
        };
        Potential::new(shape, dimension, lit(radius))
    }

    pub fn from_potential<T: Real>(v: &Potential<T>) -> Self {
        let dimension = v.dimension();
        let support_radius = v.support_radius().as_f64();
        let radial = if dimension == 3 { Some(true) } else { None };
        match v.shape() {
            Shape::SquareWell { depth, half_width } => PotentialDoc::SquareWell {
                dimension,
                support_radius,
                radial,
                depth: depth.as_f64(),
                half_width: half_width.as_f64(),
            },
            Shape::BumpSum(bumps) => PotentialDoc::BumpSum {
                dimension,
                support_radius,
                radial,
                bumps: bumps
                    .iter()
                    .map(|b| BumpDoc { amplitude: b.amplitude.as_f64(), center: b.center.as_f64(), width: b.width.as_f64() })
                    .collect(),
            },
            Shape::GridSampled { spacing, samples } => PotentialDoc::GridSampled {
                dimension,
                support_radius,
                radial,
                grid_spacing: spacing.as_f64(),
                samples: samples.iter().map(|v| v.as_f64()).collect(),
            },
        }
    }
}

impl<T: Real> Potential<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PotentialDoc = serde_json::from_str(text)?;
        doc.to_potential()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PotentialDoc::from_potential(self)).expect("potential serializes")
    }
}
