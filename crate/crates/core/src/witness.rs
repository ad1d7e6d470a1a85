//! Eigenvectors of `A` supported inside a large vertex set, and the degree
//! certificate read off their largest coordinate.
//!
//! For `|H| > 2^{n−1}` the coordinate subspace spanned by `H` must meet the
//! `+s` eigenspace (`s = √(λ(v))`). At the vertex `β` where a common vector
//! `ω` peaks, the eigen-equation `s·ω_β = Σ_{γ↔β} A_{βγ} ω_γ` bounds `s` by
//! `‖λ‖_∞·indeg(β) + ‖v‖_∞·outdeg(β)`, which for uniform weights `a`, `b`
//! becomes `√n ≤ C·indeg + outdeg/C` with `C = √(a/b)`.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::cube::{CubeVertex, InducedSubgraph};
use crate::error::{Error, Result};
use crate::exterior::{Multivector, WeightConfig};
use crate::operator::build_matrix;
use crate::scalars::{format_float, integer, QuadraticScalar, Rational, Scalar, ScalarMode};

/// Exact elimination is the default up to this dimension.
pub const EXACT_DEFAULT_MAX_DIM: u32 = 12;

/// Exact arithmetic for small cubes, binary64 above [`EXACT_DEFAULT_MAX_DIM`].
pub fn default_mode(n: u32) -> ScalarMode {
    if n <= EXACT_DEFAULT_MAX_DIM {
        ScalarMode::Exact
    } else {
        ScalarMode::float()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub n: u32,
    pub mode: String,
    #[serde(rename = "C")]
    pub c: String,
    /// Witness vertex as a binary string.
    pub beta: String,
    /// `|ω_β|` after the sign flip that makes it positive.
    pub omega_beta: String,
    pub indegree: u32,
    pub outdegree: u32,
    pub degree: u32,
    pub bound_lhs: String,
    pub bound_rhs: String,
    pub certified: bool,
    pub marginal: bool,
    #[serde(skip)]
    pub vertex: CubeVertex,
}

/// Null space of a dense `rows × cols` matrix by Gauss–Jordan elimination.
///
/// Columns are processed left to right; one basis vector is returned per
/// free column, in column order, with a 1 in its free slot. Pivots below
/// `tau · max|entry|` count as zero (exact scalars ignore `tau`).
pub fn kernel_basis<S: Scalar>(mut rows: Vec<Vec<S>>, cols: usize, tau: f64) -> Vec<Vec<S>> {
    let scale = rows.iter().flatten().map(|x| x.to_f64().abs()).fold(0.0, f64::max).max(1.0);
    let tol = tau * scale;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let candidate = if S::EXACT {
            (rank..rows.len()).find(|&r| !rows[r][col].is_zero())
        } else {
            (rank..rows.len())
                .filter(|&r| !rows[r][col].is_negligible(tol))
                .max_by(|&a, &b| rows[a][col].cmp_abs(&rows[b][col]).then(b.cmp(&a)))
        };
        let Some(p) = candidate else {
            free.push(col);
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inverse().expect("pivot is nonzero");
        for x in rows[rank][col..].iter_mut() {
            *x = x.clone() * &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.clone() - &(factor.clone() * p);
            }
            if !S::EXACT {
                row[col] = S::zero();
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); cols];
            x[f] = S::one();
            for &(r, c) in &pivots {
                x[c] = -rows[r][f].clone();
            }
            x
        })
        .collect()
}

fn check_inputs(w: &WeightConfig, h: &InducedSubgraph) -> Result<()> {
    if w.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), found: h.dim() });
    }
    if !h.is_large() {
        return Err(Error::SubgraphTooSmall { size: h.len(), half: h.cube().order() / 2 });
    }
    Ok(())
}

/// Largest-magnitude coordinate; ties go to the smallest bitmask.
fn argmax_abs<S: Scalar>(omega: &Multivector<S>) -> Option<(CubeVertex, S)> {
    let mut best: Option<(CubeVertex, S)> = None;
    for (b, x) in omega.terms() {
        if best.as_ref().is_none_or(|(_, y)| x.cmp_abs(y) == Ordering::Greater) {
            best = Some((b, x.clone()));
        }
    }
    best
}

/// Rescales so the largest-magnitude coordinate becomes `+1`.
fn normalize<S: Scalar>(omega: &Multivector<S>) -> Result<Multivector<S>> {
    let (_, peak) = argmax_abs(omega).ok_or(Error::ZeroVector)?;
    Ok(omega.scale(&peak.inverse()?))
}

/// A basis of `G_A⁺ ∩ span(H)`, one normalised vector per free column of
/// `(A − s·I)` restricted to the columns of `H` (ascending bitmask order).
pub fn eigenvectors_in_span<S: Scalar>(w: &WeightConfig, h: &InducedSubgraph, tau: f64) -> Result<Vec<Multivector<S>>> {
    check_inputs(w, h)?;
    let matrix = build_matrix::<S>(w)?;
    let s: S = w.eigenvalue()?;
    let members: Vec<CubeVertex> = h.iter().collect();
    let order = h.cube().order();
    let mut rows = vec![vec![S::zero(); members.len()]; order];
    for (j, &gamma) in members.iter().enumerate() {
        rows[gamma as usize][j] = -s.clone();
        for (_, beta) in h.cube().neighbors(gamma) {
            rows[beta as usize][j] = matrix.entry(beta, gamma);
        }
    }
    let kernel = kernel_basis(rows, members.len(), tau);
    if kernel.is_empty() {
        return Err(Error::RankDetectionFailed { tau });
    }
    let mut out = Vec::with_capacity(kernel.len());
    for coords in kernel {
        let omega = Multivector::from_terms(w.dim(), members.iter().copied().zip(coords))?;
        let omega = normalize(&omega)?;
        if !S::EXACT {
            let residual = eigen_residual(w, &omega)?;
            if residual > tau * omega.sup_norm_f64().max(1.0) {
                return Err(Error::ResidualTooLarge { residual, tau });
            }
        }
        out.push(omega);
    }
    Ok(out)
}

/// Some nonzero `ω ∈ G_A⁺` supported in `H`, scaled so its largest
/// coordinate is `+1`. The first free column of the elimination decides
/// which one.
pub fn positive_eigenvector_in_span<S: Scalar>(
    w: &WeightConfig,
    h: &InducedSubgraph,
    tau: f64,
) -> Result<Multivector<S>> {
    Ok(eigenvectors_in_span(w, h, tau)?.swap_remove(0))
}

/// `‖A·ω − s·ω‖_∞` in binary64.
pub fn eigen_residual<S: Scalar>(w: &WeightConfig, omega: &Multivector<S>) -> Result<f64> {
    let s: S = w.eigenvalue()?;
    let image = crate::exterior::apply_a(w, omega)?;
    Ok(image.sub(&omega.scale(&s))?.sup_norm_f64())
}

/// Builds the certificate for an eigenvector `omega` supported in `h`.
///
/// With `a = ‖λ‖_∞`, `b = ‖v‖_∞` and `C = √(a/b)` the certified inequality
/// is `√(λ(v)/(ab)) ≤ C·indeg + outdeg/C`, i.e. `√n ≤ …` for uniform weights.
/// The comparison is decided exactly as `(a·indeg + b·outdeg)² ≥ λ(v)`.
pub fn extract_witness<S: Scalar>(
    w: &WeightConfig,
    h: &InducedSubgraph,
    omega: &Multivector<S>,
    mode: ScalarMode,
) -> Result<WitnessReport> {
    if w.dim() != h.dim() || omega.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: omega.dim().max(w.dim()) });
    }
    if let Some(outside) = omega.support().into_iter().find(|&b| !h.contains(b)) {
        return Err(Error::OutsideSupport { vertex: outside });
    }
    let (beta, peak) = argmax_abs(omega).ok_or(Error::ZeroVector)?;
    let profile = h.degree_profile(beta)?;

    let a = w.lambda_sup_norm();
    let b = w.v_sup_norm();
    let pairing = w.pairing();
    let (indeg, outdeg) = (integer(profile.indegree as i64), integer(profile.outdegree as i64));
    let weighted = &a * &indeg + &b * &outdeg;
    let holds_exactly = &weighted * &weighted >= pairing;

    let ratio = &a / &b;
    let lhs_sq = &pairing / (&a * &b);
    let lhs_f = f64::sqrt_rational(&lhs_sq)?;
    let c_f = f64::sqrt_rational(&ratio)?;
    let rhs_f = c_f * profile.indegree as f64 + profile.outdegree as f64 / c_f;

    let (c, bound_lhs, bound_rhs, omega_beta, marginal) = match mode {
        ScalarMode::Exact => {
            let c = QuadraticScalar::sqrt_of(&ratio)?;
            let rhs = c.clone() * &QuadraticScalar::rational(indeg) + c.inverse()? * &QuadraticScalar::rational(outdeg);
            let lhs = QuadraticScalar::sqrt_of(&lhs_sq)?;
            (c.to_string(), lhs.to_string(), rhs.to_string(), peak.abs().render(), false)
        }
        ScalarMode::Float { tau } => {
            let marginal = (rhs_f - lhs_f).abs() <= tau * lhs_f.max(1.0);
            (format_float(c_f), format_float(lhs_f), format_float(rhs_f), format_float(peak.to_f64().abs()), marginal)
        }
    };

    Ok(WitnessReport {
        n: h.dim(),
        mode: mode.name().to_string(),
        c,
        beta: h.cube().format_vertex(beta),
        omega_beta,
        indegree: profile.indegree,
        outdegree: profile.outdegree,
        degree: profile.degree,
        bound_lhs,
        bound_rhs,
        certified: holds_exactly || marginal,
        marginal,
        vertex: beta,
    })
}

fn run_generic<S: Scalar>(w: &WeightConfig, h: &InducedSubgraph, mode: ScalarMode) -> Result<WitnessReport> {
    let omega = positive_eigenvector_in_span::<S>(w, h, mode.tau())?;
    extract_witness(w, h, &omega, mode)
}

/// Eigenvector extraction plus certificate, in the requested arithmetic.
pub fn witness(w: &WeightConfig, h: &InducedSubgraph, mode: ScalarMode) -> Result<WitnessReport> {
    mode.validate()?;
    match mode {
        ScalarMode::Exact => run_generic::<QuadraticScalar>(w, h, mode),
        ScalarMode::Float { .. } => run_generic::<f64>(w, h, mode),
    }
}

/// One report per weight ratio `C`, using `a = C`, `b = 1/C`.
pub fn weighted_scan(h: &InducedSubgraph, grid: &[Rational], mode: ScalarMode) -> Result<Vec<WitnessReport>> {
    if let Some(bad) = grid.iter().find(|c| **c <= Rational::zero()) {
        return Err(Error::NonPositiveWeight(format!("C = {}", crate::scalars::format_rational(bad))));
    }
    grid.iter().map(|c| witness(&WeightConfig::with_ratio(h.dim(), c)?, h, mode)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Cube;
    use crate::scalars::rational;

    type Q = QuadraticScalar;

    fn subgraph(n: u32, vs: &[&str]) -> InducedSubgraph {
        let cube = Cube::new(n).unwrap();
        InducedSubgraph::from_vertices(cube, vs.iter().map(|s| cube.parse_vertex(s).unwrap())).unwrap()
    }

    fn unit(n: u32) -> WeightConfig {
        WeightConfig::uniform(n, integer(1), integer(1)).unwrap()
    }

    #[test]
    fn kernel_of_small_system() {
        // [[1,2,3],[2,4,6]] has kernel spanned by (−2,1,0), (−3,0,1)
        let rows = vec![
            vec![Q::from_i64(1), Q::from_i64(2), Q::from_i64(3)],
            vec![Q::from_i64(2), Q::from_i64(4), Q::from_i64(6)],
        ];
        let k = kernel_basis(rows, 3, 0.0);
        let as_ints: Vec<Vec<f64>> = k.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect();
        assert_eq!(as_ints, vec![vec![-2.0, 1.0, 0.0], vec![-3.0, 0.0, 1.0]]);
    }

    #[test]
    fn n1_full_cube() {
        let h = InducedSubgraph::full(Cube::new(1).unwrap());
        let omega: Multivector<Q> = positive_eigenvector_in_span(&unit(1), &h, 0.0).unwrap();
        assert_eq!(omega, Multivector::from_terms(1, [(0, Q::one()), (1, Q::one())]).unwrap());
    }

    #[test]
    fn n2_path_eigenvector() {
        // Solved by hand over ℚ(√2): A·ω = √2·ω with ω₁₀ = 0 forces
        // ω₀₀ = ω₀₁/√2 and ω₁₁ = −ω₀₁/√2; normalised ω₀₁ = 1.
        let h = subgraph(2, &["00", "01", "11"]);
        let omega: Multivector<Q> = positive_eigenvector_in_span(&unit(2), &h, 0.0).unwrap();
        let half_root2: Q = "0+1/2*sqrt(2)".parse().unwrap();
        let expected =
            Multivector::from_terms(2, [(0b00, half_root2.clone()), (0b01, Q::one()), (0b11, -half_root2)]).unwrap();
        assert_eq!(omega, expected);
        assert_eq!(eigen_residual(&unit(2), &omega).unwrap(), 0.0);

        let r = extract_witness(&unit(2), &h, &omega, ScalarMode::Exact).unwrap();
        assert_eq!(r.beta, "01");
        assert_eq!((r.indegree, r.outdegree, r.degree), (1, 1, 2));
        assert_eq!(r.bound_lhs, "0+1*sqrt(2)");
        assert_eq!(r.bound_rhs, "2");
        assert_eq!(r.omega_beta, "1");
        assert!(r.certified && !r.marginal);
    }

    #[test]
    fn full_cube_projection_is_valid() {
        use crate::operator::EigenSplit;
        let w = WeightConfig::uniform(3, integer(2), integer(1)).unwrap();
        let h = InducedSubgraph::full(Cube::new(3).unwrap());
        let m = build_matrix::<Q>(&w).unwrap();
        let split = EigenSplit::new(&m, &w).unwrap();
        let mut e0 = vec![Q::zero(); 8];
        e0[0] = Q::one();
        let projected = Multivector::from_dense(3, split.project_plus(&e0)).unwrap();
        assert_eq!(eigen_residual(&w, &projected).unwrap(), 0.0);
        let r = extract_witness(&w, &h, &projected, ScalarMode::Exact).unwrap();
        assert!(r.certified);
    }

    #[test]
    fn rejects_small_subgraphs_and_bad_vectors() {
        let h = subgraph(2, &["00", "11"]);
        assert!(matches!(
            positive_eigenvector_in_span::<Q>(&unit(2), &h, 0.0),
            Err(Error::SubgraphTooSmall { size: 2, half: 2 })
        ));
        let h = subgraph(2, &["00", "01", "11"]);
        let zero = Multivector::<Q>::zero(2).unwrap();
        assert_eq!(extract_witness(&unit(2), &h, &zero, ScalarMode::Exact), Err(Error::ZeroVector));
        let outside = Multivector::<Q>::basis(2, 0b10).unwrap();
        assert_eq!(
            extract_witness(&unit(2), &h, &outside, ScalarMode::Exact),
            Err(Error::OutsideSupport { vertex: 0b10 })
        );
    }

    #[test]
    fn float_mode_agrees_with_exact() {
        let cube = Cube::new(4).unwrap();
        for seed in 0..10 {
            let h = InducedSubgraph::random(cube, 9, seed).unwrap();
            let exact = witness(&unit(4), &h, ScalarMode::Exact).unwrap();
            let float = witness(&unit(4), &h, ScalarMode::float()).unwrap();
            assert!(exact.certified && float.certified);
            assert_eq!(float.mode, "float");
            assert_eq!(float.bound_lhs, "2.0000000000000000e0");
        }
    }

    #[test]
    fn weighted_scan_rejects_non_positive_ratio() {
        let h = subgraph(2, &["00", "01", "11"]);
        assert!(matches!(
            weighted_scan(&h, &[integer(1), integer(0)], ScalarMode::Exact),
            Err(Error::NonPositiveWeight(_))
        ));
        let reports = weighted_scan(&h, &[rational(1, 2), integer(2)], ScalarMode::Exact).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].c, "1/2");
        assert!(reports.iter().all(|r| r.certified));
    }

    #[test]
    fn report_json_fields() {
        let h = subgraph(2, &["00", "01", "11"]);
        let r = witness(&unit(2), &h, ScalarMode::Exact).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec![
                "C",
                "beta",
                "bound_lhs",
                "bound_rhs",
                "certified",
                "degree",
                "indegree",
                "marginal",
                "mode",
                "n",
                "omega_beta",
                "outdegree"
            ]
        );
    }

    #[test]
    fn default_mode_switches_at_twelve() {
        assert_eq!(default_mode(12), ScalarMode::Exact);
        assert!(matches!(default_mode(13), ScalarMode::Float { .. }));
    }
}
