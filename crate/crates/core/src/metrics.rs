use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricError {
    /// `c_max ≤ c_min`: every cut has the same value, the ratio is undefined.
    DegenerateRange { c_min: f64, c_max: f64 },
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DegenerateRange { c_min, c_max } => {
                write!(f, "degenerate cut range [{c_min}, {c_max}]")
            }
        }
    }
}

impl core::error::Error for MetricError {}

/// `(mean - c_min) / (c_max - c_min)`, clamped to `[0, 1]`.
pub fn approximation_ratio(mean: f64, c_min: f64, c_max: f64) -> Result<f64, MetricError> {
    if c_max <= c_min {
        return Err(MetricError::DegenerateRange { c_min, c_max });
    }
    Ok(((mean - c_min) / (c_max - c_min)).clamp(0.0, 1.0))
}
