//! Point configurations: the named small sets, the near-collinear family,
//! uniform random clouds, truncated unit grids, and a two-cluster fixture.

use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{validate, PointSet};
use crate::rng::{stream_rng, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Unit equilateral triangle.
    Equilateral,
    /// Unit rhombus with a 60° angle.
    Rhombus60,
    /// Unit square, corners in perimeter order.
    Square,
    /// `0, 1, ω, ω², ω³` for the sixth root of unity `ω`.
    Hexagon5,
    /// `(0,0)`, then `n - 2` points on the x-axis inside `(ε/(2n), ε/n)`, then `(1,0)`.
    CollinearEps,
    UniformRandom,
    /// Row-major unit grid of side `ceil(sqrt(n))`, truncated to `n` points.
    GridDense,
    /// Two translated copies of one uniform cluster in the unit square.
    TwoClusters,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 8] = [
        GeneratorKind::Equilateral,
        GeneratorKind::Rhombus60,
        GeneratorKind::Square,
        GeneratorKind::Hexagon5,
        GeneratorKind::CollinearEps,
        GeneratorKind::UniformRandom,
        GeneratorKind::GridDense,
        GeneratorKind::TwoClusters,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Equilateral => "equilateral",
            GeneratorKind::Rhombus60 => "rhombus60",
            GeneratorKind::Square => "square",
            GeneratorKind::Hexagon5 => "hexagon5",
            GeneratorKind::CollinearEps => "collinear-eps",
            GeneratorKind::UniformRandom => "uniform-random",
            GeneratorKind::GridDense => "grid-dense",
            GeneratorKind::TwoClusters => "two-clusters",
        }
    }

    /// Point count for the fixed configurations.
    pub fn fixed_size(self) -> Option<usize> {
        match self {
            GeneratorKind::Equilateral => Some(3),
            GeneratorKind::Rhombus60 | GeneratorKind::Square => Some(4),
            GeneratorKind::Hexagon5 => Some(5),
            _ => None,
        }
    }

    pub fn is_random(self) -> bool {
        matches!(
            self,
            GeneratorKind::UniformRandom | GeneratorKind::TwoClusters
        )
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match norm.as_str() {
            "uniform" => GeneratorKind::UniformRandom,
            "grid" => GeneratorKind::GridDense,
            "collinear" => GeneratorKind::CollinearEps,
            other => *GeneratorKind::ALL
                .iter()
                .find(|k| k.name() == other)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator {s:?}")))?,
        };
        Ok(kind)
    }
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// `collinear-eps` only.
    pub epsilon: f64,
    /// Random kinds only.
    pub seed: u64,
    /// `uniform-random` only.
    pub dimension: usize,
    /// `two-clusters` only: empty space between the two unit boxes.
    pub gap: f64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        GeneratorSpec {
            kind,
            n: kind.fixed_size().unwrap_or(0),
            epsilon: 0.1,
            seed: DEFAULT_SEED,
            dimension: 2,
            gap: 100.0,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_dimension(mut self, dimension: usize) -> Self {
        self.dimension = dimension;
        self
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }

    pub fn uniform(n: usize, seed: u64) -> Self {
        Self::new(GeneratorKind::UniformRandom)
            .with_n(n)
            .with_seed(seed)
    }

    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(format!("{}: {msg}", self.kind)));
        if let Some(fixed) = self.kind.fixed_size() {
            if self.n != fixed {
                return bad(format!("n is fixed at {fixed}, got {}", self.n));
            }
            return Ok(());
        }
        match self.kind {
            GeneratorKind::CollinearEps => {
                if self.n < 3 {
                    return bad(format!("n must be at least 3, got {}", self.n));
                }
                if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
                    return bad(format!("epsilon must be positive, got {}", self.epsilon));
                }
            }
            GeneratorKind::UniformRandom => {
                if self.n == 0 {
                    return bad("n must be positive".into());
                }
                if self.dimension < 2 {
                    return bad(format!(
                        "dimension must be at least 2, got {}",
                        self.dimension
                    ));
                }
            }
            GeneratorKind::GridDense => {
                if self.n == 0 {
                    return bad("n must be positive".into());
                }
            }
            GeneratorKind::TwoClusters => {
                if self.n < 2 || !self.n.is_multiple_of(2) {
                    return bad(format!("n must be even and at least 2, got {}", self.n));
                }
                if !(self.gap > 0.0 && self.gap.is_finite()) {
                    return bad(format!("gap must be positive, got {}", self.gap));
                }
            }
            _ => unreachable!("fixed kinds handled above"),
        }
        Ok(())
    }
}

/// Build the configuration described by `spec`; random kinds draw from
/// stream 0 of `spec.seed`.
pub fn generate(spec: &GeneratorSpec) -> Result<PointSet> {
    generate_with_rng(spec, &mut stream_rng(spec.seed, 0))
}

/// Like [`generate`] but random kinds draw from `rng`.
pub fn generate_with_rng<R: Rng + ?Sized>(spec: &GeneratorSpec, rng: &mut R) -> Result<PointSet> {
    spec.check()?;
    let h = 3f64.sqrt() / 2.0;
    let n = spec.n;
    let points: Vec<Vec<f64>> = match spec.kind {
        GeneratorKind::Equilateral => vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]],
        GeneratorKind::Rhombus60 => {
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.5, h], vec![0.5, h]]
        }
        GeneratorKind::Square => vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ],
        GeneratorKind::Hexagon5 => vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, h],
            vec![-0.5, h],
            vec![-1.0, 0.0],
        ],
        GeneratorKind::CollinearEps => {
            let lo = spec.epsilon / (2.0 * n as f64);
            let step = lo / (n - 1) as f64;
            let mut pts = vec![vec![0.0, 0.0]];
            pts.extend((1..n - 1).map(|j| vec![lo + j as f64 * step, 0.0]));
            pts.push(vec![1.0, 0.0]);
            pts
        }
        GeneratorKind::UniformRandom => (0..n)
            .map(|_| (0..spec.dimension).map(|_| rng.random::<f64>()).collect())
            .collect(),
        GeneratorKind::GridDense => {
            let side = (n as f64).sqrt().ceil() as usize;
            (0..n)
                .map(|i| vec![(i % side) as f64, (i / side) as f64])
                .collect()
        }
        GeneratorKind::TwoClusters => {
            let half: Vec<[f64; 2]> = (0..n / 2).map(|_| [rng.random(), rng.random()]).collect();
            let shift = 1.0 + spec.gap;
            half.iter()
                .map(|p| vec![p[0], p[1]])
                .chain(half.iter().map(|p| vec![p[0] + shift, p[1]]))
                .collect()
        }
    };
    validate(points)
}
