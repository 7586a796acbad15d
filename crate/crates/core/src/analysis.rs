//! Measurements over solver output: record nim-values, cold-position counts,
//! digit histograms, and a robust monomial fit.

use crate::solvers::NimTable;
use crate::{BitVec, Error, NimValue, Result};

/// Positions where the running maximum nim-value increases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecordSeries {
    /// `(position, new maximum)`, strictly increasing in both coordinates.
    pub points: Vec<(usize, NimValue)>,
}

impl RecordSeries {
    /// The records as positive real pairs, ready for [`siegel_fit`].
    pub fn fit_points(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|&(n, m)| (n as f64, m as f64))
            .collect()
    }
}

pub fn max_records(table: &NimTable) -> RecordSeries {
    let mut best = 0;
    let mut points = Vec::new();
    for (p, &v) in table.values().iter().enumerate() {
        if v > best {
            best = v;
            points.push((p, v));
        }
    }
    RecordSeries { points }
}

/// Number of set positions below each perfect cube `k³ ≤ limit`, `k ≥ 1`.
///
/// # Panics
///
/// Panics if `limit` exceeds the end of the range covered by `set`.
pub fn density_samples(set: &BitVec, limit: usize) -> Vec<(usize, usize)> {
    assert!(
        limit <= set.end(),
        "sample bound {limit} exceeds the covered range ending at {}",
        set.end()
    );
    (1usize..)
        .map(|k| k * k * k)
        .take_while(|&n| n <= limit)
        .map(|n| (n, set.count_ones_before(n.saturating_sub(set.offset()))))
        .collect()
}

/// Tallies of one base-`b` digit over the elements of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitHistogram {
    pub base: u64,
    /// Digit index; 0 is the ones digit.
    pub position: u32,
    /// `counts[d]` elements have digit `d` at `position`.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl DigitHistogram {
    /// Share of the total falling on the given digits.
    pub fn fraction(&self, digits: &[u64]) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let hits: u64 = digits
            .iter()
            .filter_map(|&d| self.counts.get(d as usize))
            .sum();
        hits as f64 / self.total as f64
    }
}

pub fn digit_histogram(set: &BitVec, base: u64, position: u32) -> Result<DigitHistogram> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut counts = vec![0u64; base as usize];
    // base^position may overflow; digits past the top are all zero
    let place = base.checked_pow(position);
    let mut total = 0;
    for p in set.positions() {
        let digit = match place {
            Some(place) => (p as u64 / place) % base,
            None => 0,
        };
        counts[digit as usize] += 1;
        total += 1;
    }
    Ok(DigitHistogram {
        base,
        position,
        counts,
        total,
    })
}

/// A fitted curve `y = coefficient · x^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonomialFit {
    pub coefficient: f64,
    pub exponent: f64,
    pub point_count: usize,
}

impl MonomialFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient * x.powf(self.exponent)
    }
}

/// Median with the even-length case averaging the two central elements.
/// Sorts `values` in place. `None` when empty.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Siegel repeated-median fit of `y = c · x^e` in log-log coordinates.
///
/// The slope is the median over points of each point's median slope to all
/// points with a different x; the intercept is the median of
/// `log y − slope · log x`. Quadratic in the number of points.
pub fn siegel_fit(points: &[(f64, f64)]) -> Result<MonomialFit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    for &(x, y) in points {
        if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
            return Err(Error::NonPositiveCoordinate(x, y));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();

    let mut inner_medians = Vec::with_capacity(points.len());
    let mut slopes = Vec::with_capacity(points.len());
    for (i, &(xi, yi)) in logs.iter().enumerate() {
        slopes.clear();
        for (j, &(xj, yj)) in logs.iter().enumerate() {
            if j != i && points[j].0 != points[i].0 {
                slopes.push((yj - yi) / (xj - xi));
            }
        }
        if let Some(m) = median(&mut slopes) {
            inner_medians.push(m);
        }
    }
    let slope = median(&mut inner_medians).ok_or(Error::DegenerateX)?;

    let mut intercepts: Vec<f64> = logs.iter().map(|&(x, y)| y - slope * x).collect();
    let intercept = median(&mut intercepts).expect("at least three points");
    Ok(MonomialFit {
        coefficient: intercept.exp(),
        exponent: slope,
        point_count: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{explicit_game, squares_game};
    use crate::solvers::{cold_sieve, nim_dp};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn records_of_squares() {
        let t = nim_dp(&squares_game(35).unwrap()).unwrap();
        assert_eq!(
            max_records(&t).points,
            vec![(1, 1), (4, 2), (25, 3), (28, 4), (29, 5)]
        );
        assert!(max_records(&NimTable::new(vec![0; 10])).points.is_empty());
        let t = nim_dp(&explicit_game(&[1], 10).unwrap()).unwrap();
        assert_eq!(max_records(&t).points, vec![(1, 1)]);
    }

    #[test]
    fn records_of_prefix_are_prefix_of_records() {
        let t = nim_dp(&squares_game(5000).unwrap()).unwrap();
        let all = max_records(&t);
        for cut in [1, 30, 100, 2500, 4999] {
            let prefix = max_records(&NimTable::new(t.values()[..cut].to_vec()));
            let expected: Vec<_> = all
                .points
                .iter()
                .copied()
                .filter(|&(p, _)| p < cut)
                .collect();
            assert_eq!(prefix.points, expected);
        }
    }

    #[test]
    fn density_examples() {
        let cold = cold_sieve(&squares_game(1000).unwrap()).unwrap();
        assert_eq!(density_samples(&cold, 27), vec![(1, 1), (8, 4), (27, 10)]);
        let samples = density_samples(&cold, 1000);
        assert_eq!(samples.len(), 10);
        assert_eq!(samples[9], (1000, cold.count_ones()));
    }

    #[test]
    fn histogram_examples() {
        let set = BitVec::from_positions(0, 13, [0, 2, 5, 7, 10, 12]);
        let h = digit_histogram(&set, 5, 0).unwrap();
        assert_eq!(h.counts, vec![3, 0, 3, 0, 0]);
        assert_eq!(h.total, 6);
        assert_eq!(h.fraction(&[0, 2]), 1.0);

        let h = digit_histogram(&BitVec::from_positions(0, 1, [0]), 7, 2).unwrap();
        assert_eq!(h.counts, vec![1, 0, 0, 0, 0, 0, 0]);

        assert_eq!(digit_histogram(&set, 1, 0), Err(Error::InvalidBase(1)));
        let h = digit_histogram(&set, 10, 40).unwrap();
        assert_eq!(h.counts[0], 6);
    }

    #[test]
    fn histogram_totals_conserved() {
        let cold = cold_sieve(&squares_game(20_000).unwrap()).unwrap();
        for base in [2, 5, 7, 13] {
            for position in 0..4 {
                let h = digit_histogram(&cold, base, position).unwrap();
                assert_eq!(h.counts.iter().sum::<u64>(), h.total);
                assert_eq!(h.total as usize, cold.count_ones());
            }
        }
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut []), None);
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), Some(2.5));
    }

    #[test]
    fn exact_monomials() {
        let pts: Vec<_> = [1.0, 10.0, 100.0, 1000.0]
            .iter()
            .map(|&x: &f64| (x, 2.0 * x.sqrt()))
            .collect();
        let fit = siegel_fit(&pts).unwrap();
        assert!(rel(fit.coefficient, 2.0) < 1e-9);
        assert!(rel(fit.exponent, 0.5) < 1e-9);
        assert_eq!(fit.point_count, 4);

        let fit = siegel_fit(&[(1.0, 1.0), (2.0, 2.0), (4.0, 4.0)]).unwrap();
        assert!(rel(fit.coefficient, 1.0) < 1e-9);
        assert!(rel(fit.exponent, 1.0) < 1e-9);
    }

    #[test]
    fn fit_errors() {
        assert_eq!(
            siegel_fit(&[(1.0, 1.0), (2.0, 2.0)]),
            Err(Error::TooFewPoints(2))
        );
        assert_eq!(
            siegel_fit(&[(3.0, 1.0), (3.0, 2.0), (3.0, 4.0)]),
            Err(Error::DegenerateX)
        );
        assert!(matches!(
            siegel_fit(&[(1.0, 1.0), (0.0, 2.0), (3.0, 4.0)]),
            Err(Error::NonPositiveCoordinate(..))
        ));
        assert!(matches!(
            siegel_fit(&[(1.0, -1.0), (2.0, 2.0), (3.0, 4.0)]),
            Err(Error::NonPositiveCoordinate(..))
        ));
    }

    #[test]
    fn duplicate_x_values_skipped() {
        // Two points share x = 2; slopes between them are excluded.
        let pts = [(1.0, 1.0), (2.0, 4.0), (2.0, 4.0), (4.0, 16.0), (8.0, 64.0)];
        let fit = siegel_fit(&pts).unwrap();
        assert!(rel(fit.exponent, 2.0) < 1e-9);
    }
}
