use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use super::{expectation_analytic, expectation_statevector, QaoaError, QaoaParams};
use crate::graph::WeightedGraph;

/// How the landscape is evaluated at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluator {
    #[default]
    Analytic,
    Statevector,
}

impl Evaluator {
    pub fn evaluate(self, graph: &WeightedGraph, params: QaoaParams) -> Result<f64, QaoaError> {
        match self {
            Self::Analytic => expectation_analytic(graph, params),
            Self::Statevector => expectation_statevector(graph, params),
        }
    }
}

/// Expectation values over a square grid on `[0, π/2]²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    pub step: f64,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    /// Row-major, `gamma` outer: `values[i * betas.len() + j]`.
    pub values: Vec<f64>,
    pub argmax: QaoaParams,
    pub max_value: f64,
    pub min_value: f64,
}

impl Landscape {
    pub fn value(&self, gamma_index: usize, beta_index: usize) -> f64 {
        self.values[gamma_index * self.betas.len() + beta_index]
    }

    /// Iterates `(gamma, beta, value)` in storage order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.gammas.iter().enumerate().flat_map(move |(i, &g)| {
            self.betas
                .iter()
                .enumerate()
                .map(move |(j, &b)| (g, b, self.value(i, j)))
        })
    }
}

/// `0, step, 2·step, …` up to and including `π/2`.
pub fn grid_points(step: f64) -> Result<Vec<f64>, QaoaError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(QaoaError::InvalidStep { step });
    }
    // The slack keeps π/2 itself when the step divides it up to rounding.
    let count = libm::floor(FRAC_PI_2 / step + 1e-9) as usize + 1;
    Ok((0..count).map(|k| k as f64 * step).collect())
}

/// Evaluates every grid point; ties keep the first point in `gamma`-outer order.
pub fn grid_search(
    graph: &WeightedGraph,
    step: f64,
    evaluator: Evaluator,
) -> Result<Landscape, QaoaError> {
    let gammas = grid_points(step)?;
    let betas = gammas.clone();
    let mut values = Vec::with_capacity(gammas.len() * betas.len());
    let mut argmax = QaoaParams::new(0.0, 0.0);
    let mut max_value = f64::NEG_INFINITY;
    let mut min_value = f64::INFINITY;
    for &gamma in &gammas {
        for &beta in &betas {
            let params = QaoaParams::new(gamma, beta);
            let value = evaluator.evaluate(graph, params)?;
            if value > max_value {
                max_value = value;
                argmax = params;
            }
            min_value = min_value.min(value);
            values.push(value);
        }
    }
    Ok(Landscape {
        step,
        gammas,
        betas,
        values,
        argmax,
        max_value,
        min_value,
    })
}

/// `(max - value) / (max - min)` over the landscape, clamped to `[0, 1]`.
///
/// A flat landscape has no worse point, so every value scores 0.
pub fn deviation_ratio(landscape: &Landscape, value: f64) -> f64 {
    let range = landscape.max_value - landscape.min_value;
    if range.is_nan() || range <= 0.0 {
        return 0.0;
    }
    ((landscape.max_value - value) / range).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn grid_includes_both_ends() {
        let g = grid_points(PI / 8.0).unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[4] - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(grid_points(0.01).unwrap().len(), 158);
        assert_eq!(grid_points(2.0).unwrap(), alloc::vec![0.0]);
        assert!(grid_points(0.0).is_err());
        assert!(grid_points(f64::NAN).is_err());
    }

    #[test]
    fn k2_landscape_peaks_at_known_point() {
        let g = WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let l = grid_search(&g, PI / 16.0, Evaluator::Analytic).unwrap();
        assert!((l.max_value - 1.0).abs() < 1e-12);
        assert!((l.argmax.gamma - PI / 2.0).abs() < 1e-12);
        assert!((l.argmax.beta - PI / 8.0).abs() < 1e-12);
        assert!((l.min_value - 0.0).abs() < 1e-12);
        assert_eq!(l.points().count(), 81);
    }

    #[test]
    fn deviation_ratio_bounds() {
        let g = WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let l = grid_search(&g, PI / 16.0, Evaluator::Analytic).unwrap();
        assert_eq!(deviation_ratio(&l, 1.0), 0.0);
        assert_eq!(deviation_ratio(&l, 0.0), 1.0);
        assert_eq!(deviation_ratio(&l, 0.5), 0.5);
        assert_eq!(deviation_ratio(&l, 7.0), 0.0);

        let empty = grid_search(&WeightedGraph::empty(2), 0.5, Evaluator::Analytic).unwrap();
        assert_eq!(deviation_ratio(&empty, 0.0), 0.0);
    }

    #[test]
    fn evaluators_agree_on_the_grid() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, -2.0), (0, 2, 0.5), (2, 3, 1.0)])
            .unwrap();
        let a = grid_search(&g, 0.2, Evaluator::Analytic).unwrap();
        let s = grid_search(&g, 0.2, Evaluator::Statevector).unwrap();
        for (x, y) in a.values.iter().zip(&s.values) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}
