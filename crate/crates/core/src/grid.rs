//! Parameter grids given on the command line: `start:step:stop` ranges or
//! comma-separated lists, parsed exactly so rational runs see `0.1` as `1/10`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_exact, Exact, Scalar};

/// Upper limit on the number of points a range may expand to.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<Exact>,
}

impl Grid {
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(Error::Parse("empty grid".into()));
        }
        let parts: Vec<&str> = spec.split(':').collect();
        let points = match parts.as_slice() {
            [start, step, stop] => {
                let start = parse_exact(start)?;
                let step = parse_exact(step)?;
                let stop = parse_exact(stop)?;
                if !step.is_positive() {
                    return Err(Error::Parse(format!("grid step must be positive in {spec:?}")));
                }
                if stop < start {
                    return Err(Error::Parse(format!("grid stop below start in {spec:?}")));
                }
                let count = ((&stop - &start) / &step).floor();
                let count: usize = Scalar::to_f64(&count) as usize + 1;
                if count > MAX_GRID_POINTS {
                    return Err(Error::Parse(format!("grid {spec:?} has too many points")));
                }
                (0..count)
                    .map(|i| &start + &step * crate::scalar::exact_from_usize(i))
                    .collect()
            }
            [_] => spec
                .split(',')
                .map(parse_exact)
                .collect::<Result<Vec<_>>>()?,
            _ => return Err(Error::Parse(format!("malformed grid {spec:?}"))),
        };
        Ok(Self { points })
    }

    pub fn from_points(points: Vec<Exact>) -> Self {
        Self { points }
    }

    pub fn exact(&self) -> &[Exact] {
        &self.points
    }

    pub fn to_scalars<T: Scalar>(&self) -> Vec<T> {
        self.points.iter().map(T::from_exact).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.to_scalars()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.points.iter().all(|p| !p.is_zero() && p.is_positive())
    }
}

impl std::str::FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Grid::parse(s)
    }
}
