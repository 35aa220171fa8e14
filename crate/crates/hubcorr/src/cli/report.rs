//! Side-by-side comparison of two calculations of the same quantity.

use super::table::Table;

/// Relative deviation `|a - b| / max(|a|, |b|, 1e-30)`.
pub fn relative_deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-30)
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub label: String,
    pub analytic: f64,
    pub oracle: f64,
    pub deviation: f64,
    pub tolerance: f64,
}

impl ComparisonRow {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

/// Rows comparing an analytic result with an oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub quantity: String,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn new(quantity: &str) -> Self {
        ComparisonReport {
            quantity: quantity.into(),
            rows: Vec::new(),
        }
    }

    /// Adds a row with the relative deviation of `analytic` from `oracle`.
    pub fn push(&mut self, label: String, analytic: f64, oracle: f64, tolerance: f64) {
        self.rows.push(ComparisonRow {
            label,
            analytic,
            oracle,
            deviation: relative_deviation(analytic, oracle),
            tolerance,
        });
    }

    /// True when every row is within its tolerance.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ComparisonRow::passed)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(
            "comparison",
            &["quantity", "label", "analytic", "oracle", "rel_dev", "tolerance", "status"],
        );
        for r in &self.rows {
            t.push(vec![
                self.quantity.as_str().into(),
                r.label.as_str().into(),
                r.analytic.into(),
                r.oracle.into(),
                r.deviation.into(),
                r.tolerance.into(),
                r.passed().into(),
            ]);
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deviation_is_symmetric_and_guarded() {
        assert_eq!(relative_deviation(1.0, 2.0), 0.5);
        assert_eq!(relative_deviation(2.0, 1.0), 0.5);
        assert_eq!(relative_deviation(0.0, 0.0), 0.0);
    }

    #[test]
    fn report_flags_failures() {
        let mut r = ComparisonReport::new("x");
        r.push("a".into(), 1.0, 1.05, 0.1);
        assert!(r.passed());
        r.push("b".into(), 1.0, 2.0, 0.1);
        assert!(!r.passed());
        let t = r.to_table();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[1][6].to_string(), "fail");
    }
}
