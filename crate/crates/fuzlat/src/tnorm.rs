//! Triangular norms: the binary operators realizing product relations.
//!
//! Four operators are built in, plus a separately named variant exposing the
//! n-ary Hamacher closed form (see [`TNorm::hamacher_paper_nary`]): the
//! closed form `prod / (sum - prod)` does not coincide with the inductive
//! extension of the binary Hamacher operator for three or more arguments, so
//! both are available under distinct names.
//!
//! Built-in operators short-circuit the boundary cases: a zero argument
//! yields exactly 0 and a unit argument yields the other argument bit-for-
//! bit. Interior values follow the usual formulas in 64-bit floats.
//!
//! Zero-divisor status is metadata, not something a finite grid scan can
//! settle: a grid hit proves zero divisors exist, but absence on a grid
//! proves nothing, so product-construction decisions trust the analytic
//! status recorded on each operator.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::grade::Grade;
use crate::report::{CheckItem, CheckReport, Witness, DEFAULT_WITNESS_CAP};

/// Comparison slack for conformance checks of the arithmetic operators.
/// Floating-point products and sums are not associative to the last bit;
/// only the minimum operator is checked exactly.
pub const ARITHMETIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroDivisorStatus {
    HasZeroDivisors,
    NoZeroDivisors,
    Unknown,
}

#[derive(Clone)]
enum Kind {
    Minimum,
    Algebraic,
    Lukasiewicz,
    Hamacher,
    /// Hamacher realized by the n-ary closed form rather than the binary fold.
    HamacherNary,
    Custom(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

/// A triangular norm operator with identity metadata.
#[derive(Clone)]
pub struct TNorm {
    name: String,
    kind: Kind,
}

impl fmt::Debug for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TNorm").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown t-norm {0:?} (expected one of minimum, algebraic, lukasiewicz, hamacher, hamacher-paper-nary)")]
pub struct UnknownTNorm(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GridError {
    #[error("grid step {0} is outside (0, {1}]")]
    BadStep(f64, f64),
    #[error("maximum fold length must be at least 2, got {0}")]
    BadMaxFold(u32),
}

/// Names accepted by [`TNorm::builtin`] and the command-line `--tnorm` flag.
pub const BUILTIN_NAMES: [&str; 5] = [
    "minimum",
    "algebraic",
    "lukasiewicz",
    "hamacher",
    "hamacher-paper-nary",
];

impl TNorm {
    pub fn minimum() -> TNorm {
        TNorm {
            name: "minimum".into(),
            kind: Kind::Minimum,
        }
    }

    pub fn algebraic() -> TNorm {
        TNorm {
            name: "algebraic".into(),
            kind: Kind::Algebraic,
        }
    }

    pub fn lukasiewicz() -> TNorm {
        TNorm {
            name: "lukasiewicz".into(),
            kind: Kind::Lukasiewicz,
        }
    }

    pub fn hamacher() -> TNorm {
        TNorm {
            name: "hamacher".into(),
            kind: Kind::Hamacher,
        }
    }

    /// Hamacher with the n-ary closed form `prod / (sum - prod)` (zero when
    /// every argument is zero). Binary applications agree with
    /// [`TNorm::hamacher`]; longer folds do not, and the closed form is not
    /// unital for three or more arguments.
    pub fn hamacher_paper_nary() -> TNorm {
        TNorm {
            name: "hamacher-paper-nary".into(),
            kind: Kind::HamacherNary,
        }
    }

    pub fn builtin(name: &str) -> Result<TNorm, UnknownTNorm> {
        match name {
            "minimum" => Ok(TNorm::minimum()),
            "algebraic" => Ok(TNorm::algebraic()),
            "lukasiewicz" => Ok(TNorm::lukasiewicz()),
            "hamacher" => Ok(TNorm::hamacher()),
            "hamacher-paper-nary" => Ok(TNorm::hamacher_paper_nary()),
            other => Err(UnknownTNorm(other.to_string())),
        }
    }

    /// Wrap an arbitrary binary operator. No conformance is assumed; run
    /// [`conformance`] to test it, and note its zero-divisor status stays
    /// [`ZeroDivisorStatus::Unknown`].
    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> TNorm {
        TNorm {
            name: name.into(),
            kind: Kind::Custom(Arc::new(f)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn zero_divisor_status(&self) -> ZeroDivisorStatus {
        match self.kind {
            Kind::Minimum | Kind::Algebraic | Kind::Hamacher | Kind::HamacherNary => {
                ZeroDivisorStatus::NoZeroDivisors
            }
            Kind::Lukasiewicz => ZeroDivisorStatus::HasZeroDivisors,
            Kind::Custom(_) => ZeroDivisorStatus::Unknown,
        }
    }

    /// Where the status comes from.
    pub fn status_note(&self) -> &'static str {
        match self.kind {
            Kind::Minimum => "min(a,b) > 0 for positive a, b",
            Kind::Algebraic => "a*b > 0 for positive a, b",
            Kind::Hamacher | Kind::HamacherNary => "a*b/(a+b-a*b) > 0 for positive a, b",
            Kind::Lukasiewicz => "max(a+b-1, 0) = 0 whenever a+b <= 1",
            Kind::Custom(_) => "custom operator; status undetermined",
        }
    }

    /// Tolerance used when comparing this operator's outputs. Zero for the
    /// value-selecting minimum, [`ARITHMETIC_TOLERANCE`] otherwise.
    pub fn comparison_tolerance(&self) -> f64 {
        match self.kind {
            Kind::Minimum => 0.0,
            _ => ARITHMETIC_TOLERANCE,
        }
    }

    pub fn apply(&self, a: Grade, b: Grade) -> Grade {
        Grade::new(self.apply_raw(a.value(), b.value())).expect("t-norm output escaped [0, 1]")
    }

    pub(crate) fn apply_raw(&self, a: f64, b: f64) -> f64 {
        match &self.kind {
            Kind::Custom(f) => f(a, b),
            // boundary laws hold bit-exactly for every t-norm
            _ if a == 0.0 || b == 0.0 => 0.0,
            _ if a == 1.0 => b,
            _ if b == 1.0 => a,
            Kind::Minimum => a.min(b),
            Kind::Algebraic => a * b,
            Kind::Lukasiewicz => (a + b - 1.0).max(0.0),
            Kind::Hamacher | Kind::HamacherNary => (a * b) / (a + b - a * b),
        }
    }

    /// The n-ary extension: a left fold of the binary operator, except for
    /// the closed-form variant. A one-element list returns its element.
    pub fn extend(&self, grades: &[Grade]) -> Result<Grade, EmptyFold> {
        let (&first, rest) = grades.split_first().ok_or(EmptyFold)?;
        if rest.is_empty() {
            return Ok(first);
        }
        let out = match &self.kind {
            Kind::HamacherNary => {
                let values: Vec<f64> = grades.iter().map(|g| g.value()).collect();
                hamacher_nary_closed_form(&values)
            }
            _ => rest
                .iter()
                .fold(first.value(), |acc, g| self.apply_raw(acc, g.value())),
        };
        Ok(Grade::new(out).expect("t-norm output escaped [0, 1]"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("n-ary extension needs at least one grade")]
pub struct EmptyFold;

/// `prod / (sum - prod)`, zero when every argument is zero. Verbatim n-ary
/// Hamacher closed form; for n >= 3 it differs from the binary fold and is
/// not unital (all-ones input does not return 1).
fn hamacher_nary_closed_form(values: &[f64]) -> f64 {
    if values.iter().all(|&v| v == 0.0) {
        return 0.0;
    }
    let prod: f64 = values.iter().product();
    let sum: f64 = values.iter().sum();
    (prod / (sum - prod)).clamp(0.0, 1.0)
}

/// A proof that the operator has zero divisors: interior grades whose image
/// is exactly zero, plus which scan produced them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroDivisorWitness {
    pub a: f64,
    pub b: f64,
    pub note: &'static str,
}

/// Interior grade whose `n`-fold power under the operator reaches exactly
/// zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NilpotentWitness {
    pub a: f64,
    pub n: u32,
}

fn grid(step: f64, max_step: f64) -> Result<Vec<f64>, GridError> {
    if !(step > 0.0 && step <= max_step) {
        return Err(GridError::BadStep(step, max_step));
    }
    let mut points = Vec::new();
    let mut i = 0u32;
    loop {
        let p = f64::from(i) * step;
        if p >= 1.0 - 1e-12 {
            break;
        }
        points.push(p);
        i += 1;
    }
    points.push(1.0);
    Ok(points)
}

fn interior(points: &[f64]) -> Vec<f64> {
    points
        .iter()
        .copied()
        .filter(|&p| p > 0.0 && p < 1.0)
        .collect()
}

/// Check the t-norm axioms and boundary laws over the grid
/// `{0, step, 2*step, ..., 1}`: associativity, monotonicity, commutativity,
/// the unit laws on both sides, and annihilation by zero.
pub fn conformance(t: &TNorm, grid_step: f64) -> Result<CheckReport, GridError> {
    let points = grid(grid_step, 0.5)?;
    let tol = t.comparison_tolerance();
    let f = |a: f64, b: f64| t.apply_raw(a, b);

    let mut items = Vec::new();
    items.push(collect_check("associative", &points, 3, |v| {
        (f(v[0], f(v[1], v[2])) - f(f(v[0], v[1]), v[2])).abs() <= tol
    }));
    items.push(collect_check("monotone", &points, 3, |v| {
        v[1] > v[2] || f(v[0], v[1]) <= f(v[0], v[2]) + tol
    }));
    items.push(collect_check("commutative", &points, 2, |v| {
        (f(v[0], v[1]) - f(v[1], v[0])).abs() <= tol
    }));
    items.push(collect_check("unit-right", &points, 1, |v| {
        (f(v[0], 1.0) - v[0]).abs() <= tol
    }));
    items.push(collect_check("unit-left", &points, 1, |v| {
        (f(1.0, v[0]) - v[0]).abs() <= tol
    }));
    items.push(collect_check("zero-annihilates", &points, 1, |v| {
        f(v[0], 0.0).abs() <= tol && f(0.0, v[0]).abs() <= tol
    }));
    Ok(CheckReport::new(
        format!("t-norm conformance: {}", t.name()),
        items,
    ))
}

fn collect_check(
    name: &str,
    points: &[f64],
    arity: usize,
    ok: impl Fn(&[f64]) -> bool,
) -> CheckItem {
    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut tuple = vec![0.0; arity];
    let mut indices = vec![0usize; arity];
    'scan: loop {
        for (slot, &i) in indices.iter().enumerate() {
            tuple[slot] = points[i];
        }
        if !ok(&tuple) {
            if witnesses.len() == DEFAULT_WITNESS_CAP {
                truncated = true;
                break 'scan;
            }
            witnesses.push(Witness::Grades {
                values: tuple.clone(),
            });
        }
        // odometer over the grid
        let mut slot = arity;
        loop {
            if slot == 0 {
                break 'scan;
            }
            slot -= 1;
            indices[slot] += 1;
            if indices[slot] < points.len() {
                break;
            }
            indices[slot] = 0;
        }
    }
    CheckItem {
        name: name.to_string(),
        holds: witnesses.is_empty(),
        witnesses,
        truncated,
        detail: None,
    }
}

/// Scan interior grid pairs for an exact zero. A hit proves the operator has
/// zero divisors; no hit is evidence only and leaves the recorded status
/// authoritative.
pub fn find_zero_divisor(
    t: &TNorm,
    grid_step: f64,
) -> Result<Option<ZeroDivisorWitness>, GridError> {
    let points = interior(&grid(grid_step, 1.0)?);
    if points.is_empty() {
        return Err(GridError::BadStep(grid_step, 1.0));
    }
    for &a in &points {
        for &b in &points {
            if t.apply_raw(a, b) == 0.0 {
                return Ok(Some(ZeroDivisorWitness {
                    a,
                    b,
                    note: "interior grid scan",
                }));
            }
        }
    }
    Ok(None)
}

/// For each interior grid point, fold up to `max_n` copies of it and report
/// the first fold length that lands exactly on zero.
pub fn find_nilpotent(
    t: &TNorm,
    grid_step: f64,
    max_n: u32,
) -> Result<Option<NilpotentWitness>, GridError> {
    if max_n < 2 {
        return Err(GridError::BadMaxFold(max_n));
    }
    let points = interior(&grid(grid_step, 1.0)?);
    if points.is_empty() {
        return Err(GridError::BadStep(grid_step, 1.0));
    }
    for &a in &points {
        let mut acc = a;
        for n in 2..=max_n {
            acc = t.apply_raw(acc, a);
            if acc == 0.0 {
                return Ok(Some(NilpotentWitness { a, n }));
            }
        }
    }
    Ok(None)
}
