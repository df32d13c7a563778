//! Benchmark inputs.

use ajf_core::transforms::column_labels;
use ajf_core::verify::span_sum;
use ajf_core::{JmqTriple, WeightedPoly};

/// Labels of the window `2j <= two_j_max`, largest `j` first.
pub fn labels_descending(two_j_max: i64) -> Vec<JmqTriple> {
    let mut v = JmqTriple::window(two_j_max);
    v.sort_by_key(|t| std::cmp::Reverse(t.j()));
    v
}

/// A function lying in the span of one column of the window.
pub fn span_function(two_m: i64, two_q: i64, two_j_max: i64) -> WeightedPoly {
    span_sum(&column_labels(two_m, two_q, two_j_max).expect("column")).expect("span")
}

/// Rotation angles spread over one turn.
pub fn angles(count: usize) -> Vec<f64> {
    (0..count).map(|k| -3.0 + 6.0 * k as f64 / count as f64).collect()
}
