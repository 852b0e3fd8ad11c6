//! Threshold/count/model rows produced by the counting experiments.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct CountRow {
    /// Threshold as given on the grid (exact token, e.g. "1/40").
    pub threshold_label: String,
    /// Numeric threshold, for monotonicity checks and model evaluation.
    pub threshold: f64,
    pub empirical: u64,
    pub model_paper: f64,
    pub model_alt: f64,
}

impl CountRow {
    pub fn ratio_paper(&self) -> f64 {
        self.empirical as f64 / self.model_paper
    }

    pub fn ratio_alt(&self) -> f64 {
        self.empirical as f64 / self.model_alt
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Thresholds must be strictly monotone down the rows.
    NonMonotoneThreshold,
    /// Counts must not decrease along the enumeration direction.
    NonMonotoneCount,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonMonotoneThreshold => write!(f, "thresholds must be strictly monotone"),
            SeriesError::NonMonotoneCount => {
                write!(f, "empirical counts must be monotone along the grid")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// An ordered series of count rows. Thresholds must be strictly
/// monotone; counts must be monotone in one consistent direction, the
/// enumeration direction of the grid (growing counts for a rising `N`
/// or `T` grid or a falling `eps` grid, shrinking for the reversals).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CountSeries {
    rows: Vec<CountRow>,
    count_rising: Option<bool>,
}

impl CountSeries {
    pub fn new() -> CountSeries {
        CountSeries {
            rows: Vec::new(),
            count_rising: None,
        }
    }

    pub fn push(&mut self, row: CountRow) -> Result<(), SeriesError> {
        if let Some(last) = self.rows.last() {
            if row.threshold == last.threshold {
                return Err(SeriesError::NonMonotoneThreshold);
            }
            if self.rows.len() >= 2 {
                let dir = self.rows[1].threshold > self.rows[0].threshold;
                if (row.threshold > last.threshold) != dir {
                    return Err(SeriesError::NonMonotoneThreshold);
                }
            }
            if row.empirical != last.empirical {
                let rising = row.empirical > last.empirical;
                match self.count_rising {
                    None => self.count_rising = Some(rising),
                    Some(dir) if dir != rising => return Err(SeriesError::NonMonotoneCount),
                    Some(_) => {}
                }
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[CountRow] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(t: f64, n: u64) -> CountRow {
        CountRow {
            threshold_label: format!("{t}"),
            threshold: t,
            empirical: n,
            model_paper: 1.0,
            model_alt: 1.0,
        }
    }

    #[test]
    fn monotone_enforcement() {
        let mut s = CountSeries::new();
        s.push(row(1.0, 5)).unwrap();
        s.push(row(2.0, 7)).unwrap();
        assert_eq!(s.push(row(1.5, 9)), Err(SeriesError::NonMonotoneThreshold));
        assert_eq!(s.push(row(3.0, 6)), Err(SeriesError::NonMonotoneCount));
        s.push(row(3.0, 7)).unwrap();
        assert_eq!(s.rows().len(), 3);

        // falling grid (eps direction) with growing counts
        let mut s = CountSeries::new();
        s.push(row(1.0, 2)).unwrap();
        s.push(row(0.5, 10)).unwrap();
        s.push(row(0.25, 30)).unwrap();
        assert_eq!(s.push(row(0.5, 40)), Err(SeriesError::NonMonotoneThreshold));

        // a reversed grid shrinks consistently
        let mut s = CountSeries::new();
        s.push(row(4.0, 30)).unwrap();
        s.push(row(2.0, 10)).unwrap();
        s.push(row(1.0, 10)).unwrap();
        assert_eq!(s.push(row(0.5, 15)), Err(SeriesError::NonMonotoneCount));
    }
}
