//! Small algebras used throughout the tests, benches and CLI examples.

use crate::exact::Field;
use crate::gradalg::{build_algebra, ArrowSpec, GradedAlgebra, QuiverSpec, RelationTerm};

/// Quiver presentation from string literals; `p = 0` selects ℚ.
pub fn quiver_spec(
    p: u64,
    vertices: &[&str],
    arrows: &[(&str, &str, &str, u32)],
    relations: &[&[(i64, &str)]],
) -> QuiverSpec {
    QuiverSpec {
        field: Field::from_characteristic(p).expect("valid characteristic"),
        vertices: vertices.iter().map(|v| v.to_string()).collect(),
        arrows: arrows
            .iter()
            .map(|(l, s, t, g)| ArrowSpec { label: l.to_string(), source: s.to_string(), target: t.to_string(), grade: *g })
            .collect(),
        relations: relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, w)| RelationTerm { coeff: *c, path: w.split_whitespace().map(str::to_string).collect() })
                    .collect()
            })
            .collect(),
    }
}

/// Build a quiver algebra, panicking on an invalid presentation.
pub fn quiver(
    p: u64,
    vertices: &[&str],
    arrows: &[(&str, &str, &str, u32)],
    relations: &[&[(i64, &str)]],
) -> GradedAlgebra {
    build_algebra(&quiver_spec(p, vertices, arrows, relations)).expect("sample presentation")
}

/// `k[x]/(x^n)` with `x` in grade `grade`.
pub fn truncated_poly_graded(p: u64, n: usize, grade: u32) -> GradedAlgebra {
    let rel = vec!["x"; n].join(" ");
    quiver(p, &["1"], &[("x", "1", "1", grade)], &[&[(1, rel.as_str())]])
}

/// `k[x]/(x^n)` with `x` in grade 1.
pub fn truncated_poly(p: u64, n: usize) -> GradedAlgebra {
    truncated_poly_graded(p, n, 1)
}

/// `k[x]/(x²)`.
pub fn dual_numbers(p: u64) -> GradedAlgebra {
    truncated_poly(p, 2)
}

/// Arrows `a: 1→2`, `b: 2→1` in grade 1 with `a·b = 0`; basis
/// `e₁, e₂, a, b, b·a`. Quasi-hereditary for `1 < 2`.
pub fn two_cycle(p: u64) -> GradedAlgebra {
    quiver(p, &["1", "2"], &[("a", "1", "2", 1), ("b", "2", "1", 1)], &[&[(1, "a b")]])
}

/// Product of `n` copies of the base field.
pub fn semisimple(p: u64, n: usize) -> GradedAlgebra {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    quiver(p, &refs, &[], &[])
}

/// The base field as a one-vertex algebra.
pub fn field_algebra(p: u64) -> GradedAlgebra {
    semisimple(p, 1)
}
