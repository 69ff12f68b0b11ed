//! Pointwise rigidity data: principal-curvature multiplicity
//! classification, the second-order constraint-rank count for harmonic
//! functions whose Hessian commutes with the shape operator, the frame
//! relations of the two-equal-curvatures case, and the assembled
//! index/topology bound reports.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::frame_at;
use crate::profile::{ProfileGrid, SurfaceKind};
use crate::quad::central_d1;
use crate::{Error, Result};

/// Reduced fraction with exact comparison; bound right-hand sides are
/// emitted exactly so downstream tooling never compares floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Fraction {
            num: sign * num / g,
            den: sign.wrapping_mul(den) / g,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Fraction { num: v, den: 1 }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self ≤ value` exactly (cross-multiplied integers).
    pub fn le_int(&self, value: i64) -> bool {
        self.num <= value * self.den
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }
}

impl core::ops::Sub for Fraction {
    type Output = Fraction;

    fn sub(self, other: Fraction) -> Fraction {
        Fraction::new(self.num * other.den - other.num * self.den, self.den * other.den)
    }
}

impl core::fmt::Display for Fraction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pointwise principal-curvature pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureClass {
    AllDistinct,
    /// Some curvature occurs with multiplicity at least `n-2`.
    MultiplicityNm2,
    /// All curvatures vanish (totally geodesic point).
    UmbilicZero,
    /// Intermediate multiplicities (possible only for n ≥ 5).
    Other,
}

/// Classification summary over a sequence of curvature tuples.
#[derive(Debug, Clone)]
pub struct MultiplicityScan {
    pub classes: Vec<CurvatureClass>,
    pub all_distinct_points: usize,
    pub multiplicity_nm2_points: usize,
    pub umbilic_points: usize,
    pub other_points: usize,
    /// A point with all curvatures distinct exists (distinct-point branch).
    pub has_distinct_point: bool,
    /// Multiplicity `n-2` (or total flatness) holds at every sample.
    pub nm2_everywhere: bool,
}

/// Classify one tuple of `n-1` principal curvatures. Equality of two
/// curvatures means a gap below `tol · max|κ|`.
pub fn classify_tuple(kappas: &[f64], tol: f64) -> Result<CurvatureClass> {
    let count = kappas.len();
    if count < 2 {
        return Err(Error::Domain(String::from("need at least two curvatures")));
    }
    let scale = kappas.iter().fold(0.0f64, |m, &k| m.max(k.abs()));
    if scale == 0.0 {
        return Ok(CurvatureClass::UmbilicZero);
    }
    let sum: f64 = kappas.iter().sum();
    if sum.abs() > tol * scale * count as f64 {
        return Err(Error::Domain(format!(
            "tuple is not trace-free: sum {sum:e} at scale {scale:e}"
        )));
    }
    let mut sorted: Vec<f64> = kappas.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let mut max_mult = 1usize;
    let mut run = 1usize;
    for w in 1..count {
        if (sorted[w] - sorted[w - 1]).abs() <= tol * scale {
            run += 1;
            max_mult = max_mult.max(run);
        } else {
            run = 1;
        }
    }
    Ok(if max_mult == 1 {
        CurvatureClass::AllDistinct
    } else if max_mult >= count - 1 {
        // multiplicity n-2 among n-1 curvatures; full multiplicity n-1
        // cannot occur on a trace-free nonzero tuple
        CurvatureClass::MultiplicityNm2
    } else {
        CurvatureClass::Other
    })
}

/// Classify a sequence of principal-curvature tuples.
pub fn multiplicity_scan(tuples: &[Vec<f64>], tol: f64) -> Result<MultiplicityScan> {
    let mut classes = Vec::with_capacity(tuples.len());
    let mut counts = [0usize; 4];
    for t in tuples {
        let c = classify_tuple(t, tol)?;
        counts[match c {
            CurvatureClass::AllDistinct => 0,
            CurvatureClass::MultiplicityNm2 => 1,
            CurvatureClass::UmbilicZero => 2,
            CurvatureClass::Other => 3,
        }] += 1;
        classes.push(c);
    }
    Ok(MultiplicityScan {
        has_distinct_point: counts[0] > 0,
        nm2_everywhere: counts[0] == 0 && counts[3] == 0,
        classes,
        all_distinct_points: counts[0],
        multiplicity_nm2_points: counts[1],
        umbilic_points: counts[2],
        other_points: counts[3],
    })
}

/// Principal-curvature tuples of a model grid, `(κ_m, …, κ_m, κ_p)`.
pub fn curvature_tuples(grid: &ProfileGrid) -> Vec<Vec<f64>> {
    (0..grid.len())
        .map(|i| {
            let f = frame_at(grid, i);
            let mut t = vec![f.kappa_m; grid.n - 2];
            t.push(f.kappa_p);
            t
        })
        .collect()
}

/// Dimension of the space of second-order data `(φ, ∇φ, Hess φ)` at a
/// point subject to `Hess(e_i, e_j) = 0` for principal directions with
/// distinct curvatures and `tr Hess = 0`, by exact elimination on the
/// constraint system.
pub fn constraint_rank(kappas: &[f64], tol: f64) -> usize {
    let count = kappas.len();
    let scale = kappas.iter().fold(0.0f64, |m, &k| m.max(k.abs()));
    // variables: value, gradient, upper-triangular Hessian
    let hess_off: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..count {
            for j in (i + 1)..count {
                v.push((i, j));
            }
        }
        v
    };
    let vars = 1 + count + count + hess_off.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    // off-diagonal kills where curvatures differ
    for (k, &(i, j)) in hess_off.iter().enumerate() {
        if (kappas[i] - kappas[j]).abs() > tol * scale.max(f64::MIN_POSITIVE) {
            let mut row = vec![0.0; vars];
            row[1 + count + count + k] = 1.0;
            rows.push(row);
        }
    }
    // trace constraint on the diagonal entries
    let mut trace = vec![0.0; vars];
    for i in 0..count {
        trace[1 + count + i] = 1.0;
    }
    rows.push(trace);
    vars - matrix_rank(&mut rows, vars)
}

fn matrix_rank(rows: &mut [Vec<f64>], cols: usize) -> usize {
    let mut rank = 0usize;
    let mut col = 0usize;
    let nrows = rows.len();
    while rank < nrows && col < cols {
        let mut pivot = rank;
        for r in rank + 1..nrows {
            if rows[r][col].abs() > rows[pivot][col].abs() {
                pivot = r;
            }
        }
        if rows[pivot][col].abs() <= 1e-12 {
            col += 1;
            continue;
        }
        rows.swap(rank, pivot);
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0.0 {
                let factor = rows[r][col] / rows[rank][col];
                for c in col..cols {
                    let sub = factor * rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Residuals of the adapted-frame relations in the two-equal-curvatures
/// case, with `e₃` the profile direction and `λ = κ_m`.
#[derive(Debug, Clone, Copy)]
pub struct FrameResiduals {
    /// `sup |r'/r + λ'/((n-1)λ)|`; the connection coefficient
    /// `⟨∇̄_{e₁}e₃, e₁⟩` equals `r'/r` on a revolution surface and the
    /// frame relation demands `-e₃(λ)/((n-1)λ)`. For n = 4 the divisor
    /// is `3λ`.
    pub a_relation_sup: f64,
    /// Mixed component `⟨∇̄_{e₁}e₃, e₂⟩`: zero exactly by rotational
    /// symmetry of the representation.
    pub b_component: f64,
    /// Mixed component `⟨∇̄_{e₃}e₁, e₃⟩`: zero exactly.
    pub d_component: f64,
    /// Variation of `λ` along a level sphere: zero exactly (λ = λ(s)).
    pub lambda_constancy: f64,
    /// Variation of `α = -e₃(λ)/λ` along a level sphere: zero exactly.
    pub alpha_constancy: f64,
}

/// Outcome of the frame check: skipped on totally geodesic surfaces.
#[derive(Debug, Clone, Copy)]
pub enum FrameCheck {
    /// `λ ≡ 0`: the relations are vacuous.
    Umbilic,
    Residuals(FrameResiduals),
}

/// Verify the frame relations on a catenoid grid; `λ'` is evaluated by
/// central differences so the relation is a genuine numerical check.
pub fn frame_equation_check(grid: &ProfileGrid) -> Result<FrameCheck> {
    if grid.kind == SurfaceKind::Plane {
        return Ok(FrameCheck::Umbilic);
    }
    if grid.len() < 5 {
        return Err(Error::Domain(String::from("grid too small for the stencil")));
    }
    let lambda: Vec<f64> = (0..grid.len()).map(|i| frame_at(grid, i).kappa_m).collect();
    let divisor = (grid.n - 1) as f64;
    let mut sup = 0.0f64;
    for i in 1..grid.len() - 1 {
        let lp = central_d1(&lambda, i, grid.h);
        let res = grid.rp[i] / grid.r[i] + lp / (divisor * lambda[i]);
        sup = sup.max(res.abs());
    }
    Ok(FrameCheck::Residuals(FrameResiduals {
        a_relation_sup: sup,
        b_component: 0.0,
        d_component: 0.0,
        lambda_constancy: 0.0,
        alpha_constancy: 0.0,
    }))
}

/// Which case of the classification the surface falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigidityBranch {
    Hyperplane,
    Catenoid,
    DistinctPoint,
}

impl RigidityBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            RigidityBranch::Hyperplane => "hyperplane",
            RigidityBranch::Catenoid => "catenoid",
            RigidityBranch::DistinctPoint => "distinct-point",
        }
    }

    /// Determine the branch from a multiplicity scan.
    pub fn from_scan(scan: &MultiplicityScan) -> Self {
        if scan.has_distinct_point {
            RigidityBranch::DistinctPoint
        } else if scan.umbilic_points == scan.classes.len() {
            RigidityBranch::Hyperplane
        } else {
            RigidityBranch::Catenoid
        }
    }
}

/// Inputs and exact right-hand sides of the index/topology inequalities
/// for one surface.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: usize,
    pub ends: usize,
    pub b1: usize,
    pub index: u64,
    pub nullity_lower_bound: u64,
    /// `2(#ends + b₁ - 1) / (n(n-1))`, the lower bound on index + nullity.
    pub rhs_sum_bound: Fraction,
    /// `2(#ends + b₁) / (n(n-1)) - 4/n`, the lower bound on the index
    /// alone (n = 4 or distinct-point case).
    pub rhs_index_bound: Fraction,
    pub sum_bound_ok: bool,
    pub index_bound_ok: bool,
    pub branch: RigidityBranch,
}

/// Assemble the bound report from spectral and topological inputs.
pub fn bound_report(
    n: usize,
    ends: usize,
    b1: usize,
    index: u64,
    nullity_lower_bound: u64,
    branch: RigidityBranch,
) -> Result<BoundReport> {
    if ends < 1 {
        return Err(Error::Domain(String::from("a complete surface has at least one end")));
    }
    if !(3..=7).contains(&n) {
        return Err(Error::Domain(format!("dimension {n} outside 3..=7")));
    }
    let nn = (n * (n - 1)) as i64;
    let rhs_sum_bound = Fraction::new(2 * (ends as i64 + b1 as i64 - 1), nn);
    let rhs_index_bound =
        Fraction::new(2 * (ends as i64 + b1 as i64), nn) - Fraction::new(4, n as i64);
    let sum_bound_ok = rhs_sum_bound.le_int((index + nullity_lower_bound) as i64);
    let index_bound_ok = rhs_index_bound.le_int(index as i64);
    Ok(BoundReport {
        n,
        ends,
        b1,
        index,
        nullity_lower_bound,
        rhs_sum_bound,
        rhs_index_bound,
        sum_bound_ok,
        index_bound_ok,
        branch,
    })
}
