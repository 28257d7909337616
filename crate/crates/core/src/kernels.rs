//! The kernel families and their pointwise evaluations.
//!
//! Density formulas, all on log scale; `c(alpha)` is the Dirichlet
//! normalizing constant, `lg` is log-gamma.
//!
//! | family                   | domain            | log density at the point                                     |
//! |--------------------------|-------------------|--------------------------------------------------------------|
//! | dirichlet                | open simplex      | `log c(a) + sum_j (a_j - 1) log x_j`                         |
//! | inverted dirichlet       | positive orthant  | `log c(a) + sum_{j<J} (a_j - 1) log y_j - a_+ log(1+Y)`      |
//! | generalized dirichlet    | open simplex      | `sum_j [lg(a_j+b_j) - lg a_j - lg b_j + (a_j-1) log x_j + g_j log(1 - x_1 - ... - x_j)]` |
//! | beta-liouville           | open simplex      | see `kernel_log_density`                                     |
//! | inverted beta-liouville  | positive orthant  | see `kernel_log_density`                                     |
//!
//! with generalized-Dirichlet exponents `g_j = b_j - a_{j+1} - b_{j+1}` for
//! `j <= J-2` and `g_{J-1} = b_{J-1} - 1`.
//!
//! The two discrete families (Dirichlet-multinomial and the fixed-topic LDA
//! word marginal) have exact rational evaluations instead of densities:
//! `dm_pmf_exact` and `lda_marginal_exact`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{DirimixError, Result};
use crate::measure::{Family, MixingMeasure};
use crate::numeric::{
    dirichlet_moment, log_normalizer, multinomial_coefficient, rising_factorial, ln_gamma,
    MultiIndex, PositiveVector, Rational,
};
use crate::tol;
use crate::transports::OrthantPoint;

/// A point of the open probability simplex, stored by its first J-1
/// coordinates; the last coordinate is `1 - sum(head)` and is kept explicit
/// so all J coordinates are strictly positive by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    head: Vec<f64>,
    last: f64,
}

impl SimplexPoint {
    /// From all J coordinates; they must be strictly positive and sum to 1
    /// within [`tol::SIMPLEX_SUM`]. Boundary points are rejected outright.
    pub fn from_full(coords: &[f64]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(DirimixError::DimensionMismatch(
                "a simplex point needs at least two coordinates".into(),
            ));
        }
        if coords.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(DirimixError::DomainViolation(
                "simplex coordinates must be strictly positive (the boundary is excluded)".into(),
            ));
        }
        let total: f64 = coords.iter().sum();
        if (total - 1.0).abs() > tol::SIMPLEX_SUM {
            return Err(DirimixError::DomainViolation(format!(
                "simplex coordinates sum to {total}, not 1"
            )));
        }
        Self::from_head(coords[..coords.len() - 1].to_vec())
    }

    /// From the first J-1 coordinates; they must be strictly positive with
    /// sum strictly below 1.
    pub fn from_head(head: Vec<f64>) -> Result<Self> {
        if head.is_empty() {
            return Err(DirimixError::DimensionMismatch(
                "a simplex point needs at least two coordinates".into(),
            ));
        }
        if head.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(DirimixError::DomainViolation(
                "simplex coordinates must be strictly positive (the boundary is excluded)".into(),
            ));
        }
        let partial: f64 = head.iter().sum();
        let last = 1.0 - partial;
        if last <= 0.0 {
            return Err(DirimixError::DomainViolation(format!(
                "leading coordinates sum to {partial} >= 1"
            )));
        }
        Ok(SimplexPoint { head, last })
    }

    /// Dimension J (number of coordinates).
    pub fn dim(&self) -> usize {
        self.head.len() + 1
    }

    pub fn head(&self) -> &[f64] {
        &self.head
    }

    pub fn last(&self) -> f64 {
        self.last
    }

    pub fn coord(&self, j: usize) -> f64 {
        if j < self.head.len() {
            self.head[j]
        } else {
            self.last
        }
    }

    pub fn full(&self) -> Vec<f64> {
        let mut v = self.head.clone();
        v.push(self.last);
        v
    }
}

/// A vector of per-category counts with fixed total n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector(Vec<u32>);

impl CountVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(DirimixError::DimensionMismatch(
                "a count vector needs at least two categories".into(),
            ));
        }
        Ok(CountVector(counts))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Total count n.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All count vectors of dimension `dim` with total `n`, in lexicographic
/// order. There are binomial(n + dim - 1, dim - 1) of them.
pub fn enumerate_counts(dim: usize, n: u32) -> Vec<CountVector> {
    fn rec(dim: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<CountVector>) {
        if dim == 1 {
            prefix.push(n);
            out.push(CountVector(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in 0..=n {
            prefix.push(k);
            rec(dim - 1, n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, n, &mut Vec::new(), &mut out);
    out
}

/// A fully parameterized kernel, ready for pointwise evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    Dirichlet {
        alpha: PositiveVector<f64>,
    },
    InvertedDirichlet {
        alpha: PositiveVector<f64>,
    },
    GeneralizedDirichlet {
        a: Vec<f64>,
        b: Vec<f64>,
    },
    BetaLiouville {
        a_vec: Vec<f64>,
        a: f64,
        b: f64,
    },
    InvertedBetaLiouville {
        a_vec: Vec<f64>,
        a: f64,
        b: f64,
        lambda: f64,
    },
    DirichletMultinomial {
        n: u32,
        alpha: PositiveVector<f64>,
    },
    LdaMarginal {
        alpha: Vec<f64>,
        beta: Vec<Vec<f64>>,
        document: Vec<u32>,
    },
}

fn check_positive(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(DirimixError::DimensionMismatch(format!(
            "{name} must be non-empty"
        )));
    }
    if values.iter().any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(DirimixError::InvalidParameter(format!(
            "{name} entries must be strictly positive and finite"
        )));
    }
    Ok(())
}

impl KernelSpec {
    pub fn dirichlet(alpha: PositiveVector<f64>) -> Result<Self> {
        Ok(KernelSpec::Dirichlet { alpha })
    }

    pub fn inverted_dirichlet(alpha: PositiveVector<f64>) -> Result<Self> {
        Ok(KernelSpec::InvertedDirichlet { alpha })
    }

    /// `a` and `b` both have length J-1.
    pub fn generalized_dirichlet(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        check_positive("generalized-dirichlet a", &a)?;
        check_positive("generalized-dirichlet b", &b)?;
        if a.len() != b.len() {
            return Err(DirimixError::DimensionMismatch(format!(
                "a has length {} but b has length {}",
                a.len(),
                b.len()
            )));
        }
        Ok(KernelSpec::GeneralizedDirichlet { a, b })
    }

    /// `a_vec` has length J-1; `a` and `b` are the Beta stick parameters.
    pub fn beta_liouville(a_vec: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        check_positive("beta-liouville a_vec", &a_vec)?;
        check_positive("beta-liouville (a, b)", &[a, b])?;
        Ok(KernelSpec::BetaLiouville { a_vec, a, b })
    }

    pub fn inverted_beta_liouville(
        a_vec: Vec<f64>,
        a: f64,
        b: f64,
        lambda: f64,
    ) -> Result<Self> {
        check_positive("inverted-beta-liouville a_vec", &a_vec)?;
        check_positive("inverted-beta-liouville (a, b, lambda)", &[a, b, lambda])?;
        Ok(KernelSpec::InvertedBetaLiouville { a_vec, a, b, lambda })
    }

    pub fn dirichlet_multinomial(n: u32, alpha: PositiveVector<f64>) -> Result<Self> {
        Ok(KernelSpec::DirichletMultinomial { n, alpha })
    }

    /// `alpha` has one entry per topic; `beta` is the row-stochastic topic
    /// by word matrix; `document` is a word-index sequence.
    pub fn lda_marginal(alpha: Vec<f64>, beta: Vec<Vec<f64>>, document: Vec<u32>) -> Result<Self> {
        check_positive("lda alpha", &alpha)?;
        if alpha.len() < 2 {
            return Err(DirimixError::DimensionMismatch(
                "lda needs at least two topics".into(),
            ));
        }
        if beta.len() != alpha.len() {
            return Err(DirimixError::DimensionMismatch(format!(
                "beta has {} rows but alpha has {} topics",
                beta.len(),
                alpha.len()
            )));
        }
        let vocab = beta.first().map_or(0, Vec::len);
        if vocab == 0 {
            return Err(DirimixError::DimensionMismatch(
                "beta rows must be non-empty".into(),
            ));
        }
        for row in &beta {
            if row.len() != vocab {
                return Err(DirimixError::DimensionMismatch(
                    "beta rows must all have the same length".into(),
                ));
            }
            if row.iter().any(|&v| !v.is_finite() || v < 0.0) {
                return Err(DirimixError::InvalidParameter(
                    "beta entries must be nonnegative and finite".into(),
                ));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > tol::WEIGHT_SUM {
                return Err(DirimixError::InvalidParameter(format!(
                    "beta rows must sum to 1, got {total}"
                )));
            }
        }
        if document.is_empty() {
            return Err(DirimixError::DimensionMismatch(
                "document must contain at least one word".into(),
            ));
        }
        if document.iter().any(|&w| w as usize >= vocab) {
            return Err(DirimixError::InvalidParameter(format!(
                "document words must index the vocabulary 0..{vocab}"
            )));
        }
        Ok(KernelSpec::LdaMarginal { alpha, beta, document })
    }

    pub fn family(&self) -> Family {
        match self {
            KernelSpec::Dirichlet { .. } => Family::Dirichlet,
            KernelSpec::InvertedDirichlet { .. } => Family::InvertedDirichlet,
            KernelSpec::GeneralizedDirichlet { .. } => Family::GeneralizedDirichlet,
            KernelSpec::BetaLiouville { .. } => Family::BetaLiouville,
            KernelSpec::InvertedBetaLiouville { .. } => Family::InvertedBetaLiouville,
            KernelSpec::DirichletMultinomial { .. } => Family::DirichletMultinomial,
            KernelSpec::LdaMarginal { .. } => Family::LdaMarginal,
        }
    }

    /// Simplex dimension J of the kernel's underlying space, where that
    /// makes sense (None for the LDA word marginal).
    pub fn dim(&self) -> Option<usize> {
        match self {
            KernelSpec::Dirichlet { alpha }
            | KernelSpec::InvertedDirichlet { alpha }
            | KernelSpec::DirichletMultinomial { alpha, .. } => Some(alpha.dim()),
            KernelSpec::GeneralizedDirichlet { a, .. } => Some(a.len() + 1),
            KernelSpec::BetaLiouville { a_vec, .. }
            | KernelSpec::InvertedBetaLiouville { a_vec, .. } => Some(a_vec.len() + 1),
            KernelSpec::LdaMarginal { .. } => None,
        }
    }
}

/// Where a kernel is evaluated: simplex families take interior simplex
/// points, inverted families take positive-orthant points.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalPoint {
    Simplex(SimplexPoint),
    Orthant(OrthantPoint),
}

fn expect_simplex<'p>(point: &'p EvalPoint, dim: usize, family: &str) -> Result<&'p SimplexPoint> {
    match point {
        EvalPoint::Simplex(x) if x.dim() == dim => Ok(x),
        EvalPoint::Simplex(x) => Err(DirimixError::DimensionMismatch(format!(
            "{family} kernel of dimension {dim} evaluated at a {}-dimensional point",
            x.dim()
        ))),
        EvalPoint::Orthant(_) => Err(DirimixError::DomainViolation(format!(
            "{family} kernels live on the simplex, not the orthant"
        ))),
    }
}

fn expect_orthant<'p>(point: &'p EvalPoint, len: usize, family: &str) -> Result<&'p OrthantPoint> {
    match point {
        EvalPoint::Orthant(y) if y.len() == len => Ok(y),
        EvalPoint::Orthant(y) => Err(DirimixError::DimensionMismatch(format!(
            "{family} kernel expects {len} orthant coordinates, got {}",
            y.len()
        ))),
        EvalPoint::Simplex(_) => Err(DirimixError::DomainViolation(format!(
            "{family} kernels live on the positive orthant, not the simplex"
        ))),
    }
}

/// Log density of a continuous kernel at a point of its domain. Discrete
/// families are rejected; use [`dm_pmf_exact`] or [`lda_marginal_exact`].
pub fn kernel_log_density(spec: &KernelSpec, point: &EvalPoint) -> Result<f64> {
    match spec {
        KernelSpec::Dirichlet { alpha } => {
            let x = expect_simplex(point, alpha.dim(), "dirichlet")?;
            let mut acc = log_normalizer(alpha);
            for (j, &a) in alpha.entries().iter().enumerate() {
                acc += (a - 1.0) * x.coord(j).ln();
            }
            Ok(acc)
        }
        KernelSpec::InvertedDirichlet { alpha } => {
            let y = expect_orthant(point, alpha.dim() - 1, "inverted-dirichlet")?;
            let total: f64 = alpha.entries().iter().sum();
            let mut acc = log_normalizer(alpha) - total * (1.0 + y.total()).ln();
            for (j, &v) in y.entries().iter().enumerate() {
                acc += (alpha.entries()[j] - 1.0) * v.ln();
            }
            Ok(acc)
        }
        KernelSpec::GeneralizedDirichlet { a, b } => {
            let x = expect_simplex(point, a.len() + 1, "generalized-dirichlet")?;
            let d = a.len();
            let mut acc = 0.0;
            let mut remainder = 1.0; // 1 - x_1 - ... - x_j, updated as j grows
            for j in 0..d {
                let gamma = if j + 1 < d {
                    b[j] - a[j + 1] - b[j + 1]
                } else {
                    b[j] - 1.0
                };
                remainder -= x.coord(j);
                acc += ln_gamma(a[j] + b[j]) - ln_gamma(a[j]) - ln_gamma(b[j])
                    + (a[j] - 1.0) * x.coord(j).ln()
                    + gamma * remainder.ln();
            }
            Ok(acc)
        }
        KernelSpec::BetaLiouville { a_vec, a, b } => {
            let x = expect_simplex(point, a_vec.len() + 1, "beta-liouville")?;
            let a_sum: f64 = a_vec.iter().sum();
            let mut acc = ln_gamma(a + b) + ln_gamma(a_sum)
                - ln_gamma(*a)
                - ln_gamma(*b)
                - a_vec.iter().map(|&v| ln_gamma(v)).sum::<f64>();
            let head_sum: f64 = x.head().iter().sum();
            for (j, &aj) in a_vec.iter().enumerate() {
                acc += (aj - 1.0) * x.coord(j).ln();
            }
            acc += (a - a_sum) * head_sum.ln() + (b - 1.0) * x.last().ln();
            Ok(acc)
        }
        KernelSpec::InvertedBetaLiouville { a_vec, a, b, lambda } => {
            let y = expect_orthant(point, a_vec.len(), "inverted-beta-liouville")?;
            let a_sum: f64 = a_vec.iter().sum();
            let mut acc = ln_gamma(a_sum) + ln_gamma(a + b)
                - ln_gamma(*a)
                - ln_gamma(*b)
                - a_vec.iter().map(|&v| ln_gamma(v)).sum::<f64>()
                + b * lambda.ln();
            for (j, &aj) in a_vec.iter().enumerate() {
                acc += (aj - 1.0) * y.entries()[j].ln();
            }
            acc += (a - a_sum) * y.total().ln() - (a + b) * (lambda + y.total()).ln();
            Ok(acc)
        }
        KernelSpec::DirichletMultinomial { .. } | KernelSpec::LdaMarginal { .. } => {
            Err(DirimixError::DomainViolation(format!(
                "{} is a discrete family with no density; use its exact evaluation",
                spec.family().name()
            )))
        }
    }
}

/// Exact Dirichlet-multinomial probability of the count vector `x`:
/// `n! / prod x_j! * prod (alpha_j)_{x_j} / (alpha_+)_n`.
pub fn dm_pmf_exact(n: u32, alpha: &PositiveVector<Rational>, x: &CountVector) -> Result<Rational> {
    if x.dim() != alpha.dim() {
        return Err(DirimixError::DimensionMismatch(format!(
            "count vector has {} categories but parameter has dimension {}",
            x.dim(),
            alpha.dim()
        )));
    }
    if x.total() != n {
        return Err(DirimixError::DomainViolation(format!(
            "count vector totals {}, expected n = {n}",
            x.total()
        )));
    }
    let mut acc = Rational::from_integer(multinomial_coefficient(n, x.counts()));
    for (a, &count) in alpha.entries().iter().zip(x.counts()) {
        acc = acc * rising_factorial(a, count)?;
    }
    Ok(acc / rising_factorial(&alpha.sum(), n)?)
}

/// Caps for the exact LDA enumeration: topic assignments grow as K^N.
pub const LDA_MAX_WORDS: usize = 8;
pub const LDA_MAX_TOPICS: usize = 4;

/// Exact marginal probability of a word sequence under the fixed-topic LDA
/// model: sum over all topic assignments z of
/// `prod_n beta[z_n][w_n] * E[theta^counts(z)]` with theta Dirichlet(alpha).
pub fn lda_marginal_exact(
    alpha: &PositiveVector<Rational>,
    beta: &[Vec<Rational>],
    document: &[u32],
) -> Result<Rational> {
    let topics = alpha.dim();
    if topics > LDA_MAX_TOPICS {
        return Err(DirimixError::CapExceeded(format!(
            "exact LDA enumeration supports at most {LDA_MAX_TOPICS} topics, got {topics}"
        )));
    }
    if document.len() > LDA_MAX_WORDS {
        return Err(DirimixError::CapExceeded(format!(
            "exact LDA enumeration supports documents of at most {LDA_MAX_WORDS} words, got {}",
            document.len()
        )));
    }
    if document.is_empty() {
        return Err(DirimixError::DimensionMismatch(
            "document must contain at least one word".into(),
        ));
    }
    if beta.len() != topics {
        return Err(DirimixError::DimensionMismatch(format!(
            "beta has {} rows but alpha has {topics} topics",
            beta.len()
        )));
    }
    let vocab = beta[0].len();
    for row in beta {
        if row.len() != vocab {
            return Err(DirimixError::DimensionMismatch(
                "beta rows must all have the same length".into(),
            ));
        }
        if row.iter().any(Signed::is_negative) {
            return Err(DirimixError::InvalidParameter(
                "beta entries must be nonnegative".into(),
            ));
        }
        let total: Rational = row.iter().cloned().sum();
        if !total.is_one() {
            return Err(DirimixError::InvalidParameter(format!(
                "beta rows must sum to exactly 1, got {total}"
            )));
        }
    }
    if document.iter().any(|&w| w as usize >= vocab) {
        return Err(DirimixError::InvalidParameter(format!(
            "document words must index the vocabulary 0..{vocab}"
        )));
    }

    let n = document.len();
    let mut moment_cache: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
    let mut acc = Rational::zero();
    let mut assignment = vec![0usize; n];
    loop {
        // Word-emission product for this topic assignment.
        let mut weight = Rational::one();
        for (pos, &word) in document.iter().enumerate() {
            weight = weight * beta[assignment[pos]][word as usize].clone();
            if weight.is_zero() {
                break;
            }
        }
        if !weight.is_zero() {
            let mut counts = vec![0u32; topics];
            for &z in &assignment {
                counts[z] += 1;
            }
            let key = MultiIndex::new(counts);
            let moment = match moment_cache.get(&key) {
                Some(m) => m.clone(),
                None => {
                    let m = dirichlet_moment(alpha, &key)?;
                    moment_cache.insert(key, m.clone());
                    m
                }
            };
            acc = acc + weight * moment;
        }
        // Odometer step over {0..topics}^n.
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(acc);
            }
            assignment[pos] += 1;
            if assignment[pos] < topics {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Log density of the mixture `m_G(x) = sum_k pi_k f_{gamma_k}(x)` for a
/// measure over the Dirichlet or inverted-Dirichlet family.
pub fn mixture_log_density(g: &MixingMeasure<f64>, point: &EvalPoint) -> Result<f64> {
    let make = match g.family() {
        Family::Dirichlet => KernelSpec::dirichlet,
        Family::InvertedDirichlet => KernelSpec::inverted_dirichlet,
        other => {
            return Err(DirimixError::DomainViolation(format!(
                "{} mixtures have no density here; use the family's exact evaluation",
                other.name()
            )));
        }
    };
    let mut logs = Vec::with_capacity(g.len());
    for (atom, weight) in g.atoms() {
        let spec = make(atom.clone())?;
        logs.push(weight.ln() + kernel_log_density(&spec, point)?);
    }
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return Ok(m);
    }
    Ok(m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ratvec(entries: &[(i64, i64)]) -> PositiveVector<Rational> {
        PositiveVector::new(entries.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn flat_dirichlet_is_constant_factorial() {
        // f_(1,1,1) = Gamma(3) = 2 everywhere on the open triangle.
        let spec = KernelSpec::dirichlet(PositiveVector::new(vec![1.0, 1.0, 1.0]).unwrap()).unwrap();
        for point in [[0.2, 0.3], [0.5, 0.1], [0.05, 0.9]] {
            let x = SimplexPoint::from_head(point.to_vec()).unwrap();
            assert_relative_eq!(
                kernel_log_density(&spec, &EvalPoint::Simplex(x)).unwrap(),
                2.0_f64.ln(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn dirichlet_density_integrates_to_one() {
        let alpha = PositiveVector::new(vec![2.5, 1.5]).unwrap();
        let spec = KernelSpec::dirichlet(alpha).unwrap();
        let n = 200_000;
        let h = 1.0 / n as f64;
        let mut acc = 0.0;
        for k in 1..n {
            let x = SimplexPoint::from_head(vec![k as f64 * h]).unwrap();
            acc += kernel_log_density(&spec, &EvalPoint::Simplex(x)).unwrap().exp();
        }
        // Endpoint values vanish (both exponents exceed 1), so the open
        // trapezoid sum is the whole integral.
        assert_relative_eq!(acc * h, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn inverted_dirichlet_flat_case() {
        // alpha = (1,1): h(y) = (1+y)^-2, so h(1) = 1/4.
        let spec =
            KernelSpec::inverted_dirichlet(PositiveVector::new(vec![1.0, 1.0]).unwrap()).unwrap();
        let y = OrthantPoint::new(vec![1.0]).unwrap();
        assert_relative_eq!(
            kernel_log_density(&spec, &EvalPoint::Orthant(y)).unwrap(),
            0.25_f64.ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn inverted_dirichlet_integrates_to_one() {
        // alpha = (2,3): h(y) = c y / (1+y)^5 on (0, inf); truncate at 200
        // where the tail is below 1e-6.
        let spec =
            KernelSpec::inverted_dirichlet(PositiveVector::new(vec![2.0, 3.0]).unwrap()).unwrap();
        let n = 400_000;
        let h = 200.0 / n as f64;
        let mut acc = 0.0;
        for k in 1..=n {
            let y = OrthantPoint::new(vec![k as f64 * h]).unwrap();
            acc += kernel_log_density(&spec, &EvalPoint::Orthant(y)).unwrap().exp();
        }
        assert_relative_eq!(acc * h, 1.0, epsilon = 1e-5);
    }

    #[test]
    fn generalized_dirichlet_j2_is_beta() {
        // With one segment, the generalized family is Beta(a, b).
        let gd = KernelSpec::generalized_dirichlet(vec![2.0], vec![3.0]).unwrap();
        let beta = KernelSpec::dirichlet(PositiveVector::new(vec![2.0, 3.0]).unwrap()).unwrap();
        for xv in [0.1, 0.5, 0.85] {
            let x = EvalPoint::Simplex(SimplexPoint::from_head(vec![xv]).unwrap());
            assert_relative_eq!(
                kernel_log_density(&gd, &x).unwrap(),
                kernel_log_density(&beta, &x).unwrap(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn generalized_dirichlet_matches_inline_formula() {
        let (a, b) = (vec![1.5, 2.0], vec![4.0, 0.5]);
        let spec = KernelSpec::generalized_dirichlet(a.clone(), b.clone()).unwrap();
        let x = SimplexPoint::from_head(vec![0.3, 0.25]).unwrap();
        // Hand-expanded log density for J = 3.
        let gamma1 = b[0] - a[1] - b[1];
        let gamma2 = b[1] - 1.0;
        let expected = ln_gamma(a[0] + b[0]) - ln_gamma(a[0]) - ln_gamma(b[0])
            + ln_gamma(a[1] + b[1])
            - ln_gamma(a[1])
            - ln_gamma(b[1])
            + (a[0] - 1.0) * 0.3_f64.ln()
            + gamma1 * (1.0 - 0.3_f64).ln()
            + (a[1] - 1.0) * 0.25_f64.ln()
            + gamma2 * (1.0 - 0.3 - 0.25_f64).ln();
        assert_relative_eq!(
            kernel_log_density(&spec, &EvalPoint::Simplex(x)).unwrap(),
            expected,
            max_relative = 1e-13
        );
    }

    #[test]
    fn beta_liouville_hand_case() {
        // a_vec = (1), a = 2, b = 1 gives density 2x on (0,1).
        let spec = KernelSpec::beta_liouville(vec![1.0], 2.0, 1.0).unwrap();
        let x = EvalPoint::Simplex(SimplexPoint::from_head(vec![0.3]).unwrap());
        assert_relative_eq!(
            kernel_log_density(&spec, &x).unwrap(),
            0.6_f64.ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn inverted_beta_liouville_hand_case() {
        // a_vec = (1), a = 1, b = 2, lambda = 2: density 8 (2+y)^-3, which
        // integrates to 1 on (0, inf).
        let spec = KernelSpec::inverted_beta_liouville(vec![1.0], 1.0, 2.0, 2.0).unwrap();
        let y = EvalPoint::Orthant(OrthantPoint::new(vec![1.0]).unwrap());
        assert_relative_eq!(
            kernel_log_density(&spec, &y).unwrap(),
            (8.0 / 27.0_f64).ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn dm_uniform_over_counts() {
        // n = 2, alpha = (1,1): all three count vectors get probability 1/3.
        let alpha = ratvec(&[(1, 1), (1, 1)]);
        for counts in [[2, 0], [1, 1], [0, 2]] {
            let x = CountVector::new(counts.to_vec()).unwrap();
            assert_eq!(dm_pmf_exact(2, &alpha, &x).unwrap(), rat(1, 3));
        }
    }

    #[test]
    fn dm_hand_value_and_errors() {
        // n = 2, alpha = (2,3), x = (1,1): 2 * (2)(3) / ((5)(6)) = 2/5.
        let alpha = ratvec(&[(2, 1), (3, 1)]);
        let x = CountVector::new(vec![1, 1]).unwrap();
        assert_eq!(dm_pmf_exact(2, &alpha, &x).unwrap(), rat(2, 5));
        // Total mismatch is a domain violation.
        assert!(dm_pmf_exact(3, &alpha, &x).is_err());
        // Dimension mismatch.
        let bad = CountVector::new(vec![1, 1, 0]).unwrap();
        assert!(dm_pmf_exact(2, &alpha, &bad).is_err());
    }

    #[test]
    fn dm_normalizes_exactly() {
        let alpha = ratvec(&[(1, 2), (7, 3), (5, 4)]);
        for n in 0..=4u32 {
            let total: Rational = enumerate_counts(3, n)
                .iter()
                .map(|x| dm_pmf_exact(n, &alpha, x).unwrap())
                .sum();
            assert!(total.is_one(), "sum over X_{n} was {total}");
        }
    }

    #[test]
    fn lda_single_word_document() {
        // One word: q(w) = sum_k (alpha_k / alpha_+) beta[k][w].
        let alpha = ratvec(&[(1, 1), (1, 1)]);
        let beta = vec![
            vec![rat(1, 2), rat(1, 2)],
            vec![rat(1, 4), rat(3, 4)],
        ];
        let q = lda_marginal_exact(&alpha, &beta, &[0]).unwrap();
        assert_eq!(q, rat(3, 8));
    }

    #[test]
    fn lda_two_word_document_matches_direct_sum() {
        let alpha = ratvec(&[(1, 2), (3, 2)]);
        let beta = vec![
            vec![rat(1, 3), rat(2, 3)],
            vec![rat(3, 5), rat(2, 5)],
        ];
        let doc = [0u32, 1u32];
        // Direct four-term sum over assignments (z1, z2).
        let mut expected = Rational::zero();
        for z1 in 0..2usize {
            for z2 in 0..2usize {
                let mut counts = vec![0u32; 2];
                counts[z1] += 1;
                counts[z2] += 1;
                let moment = dirichlet_moment(&alpha, &MultiIndex::new(counts)).unwrap();
                expected = expected
                    + beta[z1][0].clone() * beta[z2][1].clone() * moment;
            }
        }
        assert_eq!(lda_marginal_exact(&alpha, &beta, &doc).unwrap(), expected);
    }

    #[test]
    fn lda_normalizes_over_all_documents() {
        let alpha = ratvec(&[(2, 1), (1, 3)]);
        let beta = vec![
            vec![rat(1, 6), rat(5, 6)],
            vec![rat(4, 7), rat(3, 7)],
        ];
        let mut total = Rational::zero();
        for w1 in 0..2u32 {
            for w2 in 0..2u32 {
                total = total + lda_marginal_exact(&alpha, &beta, &[w1, w2]).unwrap();
            }
        }
        assert!(total.is_one(), "sum over documents was {total}");
    }

    #[test]
    fn lda_caps_are_enforced() {
        let alpha = ratvec(&[(1, 1), (1, 1)]);
        let beta = vec![vec![rat(1, 1)], vec![rat(1, 1)]];
        let long_doc = vec![0u32; 9];
        assert!(matches!(
            lda_marginal_exact(&alpha, &beta, &long_doc),
            Err(DirimixError::CapExceeded(_))
        ));
        let alpha5 = ratvec(&[(1, 1); 5]);
        let beta5 = vec![vec![rat(1, 1)]; 5];
        assert!(matches!(
            lda_marginal_exact(&alpha5, &beta5, &[0]),
            Err(DirimixError::CapExceeded(_))
        ));
    }

    #[test]
    fn mixture_of_shifted_betas_is_flat() {
        // (1/2) Beta(2,1) + (1/2) Beta(1,2) has density 1 everywhere.
        let g = MixingMeasure::new(
            Family::Dirichlet,
            vec![
                (PositiveVector::new(vec![2.0, 1.0]).unwrap(), 0.5),
                (PositiveVector::new(vec![1.0, 2.0]).unwrap(), 0.5),
            ],
        )
        .unwrap();
        let x = EvalPoint::Simplex(SimplexPoint::from_head(vec![0.5]).unwrap());
        assert_relative_eq!(mixture_log_density(&g, &x).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn single_atom_mixture_reproduces_the_kernel() {
        let alpha = PositiveVector::new(vec![1.7, 2.4, 0.9]).unwrap();
        let g = MixingMeasure::dirac(Family::Dirichlet, alpha.clone()).unwrap();
        let spec = KernelSpec::dirichlet(alpha).unwrap();
        let x = EvalPoint::Simplex(SimplexPoint::from_head(vec![0.2, 0.45]).unwrap());
        assert_relative_eq!(
            mixture_log_density(&g, &x).unwrap(),
            kernel_log_density(&spec, &x).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn domain_mismatches_are_rejected() {
        let spec = KernelSpec::dirichlet(PositiveVector::new(vec![1.0, 2.0]).unwrap()).unwrap();
        let y = EvalPoint::Orthant(OrthantPoint::new(vec![1.0]).unwrap());
        assert!(matches!(
            kernel_log_density(&spec, &y),
            Err(DirimixError::DomainViolation(_))
        ));
        let dm = KernelSpec::dirichlet_multinomial(
            2,
            PositiveVector::new(vec![1.0, 2.0]).unwrap(),
        )
        .unwrap();
        let x = EvalPoint::Simplex(SimplexPoint::from_head(vec![0.5]).unwrap());
        assert!(matches!(
            kernel_log_density(&dm, &x),
            Err(DirimixError::DomainViolation(_))
        ));
    }

    #[test]
    fn simplex_point_construction_contracts() {
        assert!(SimplexPoint::from_full(&[0.5, 0.5, 0.0]).is_err());
        assert!(SimplexPoint::from_full(&[0.5, 0.6]).is_err());
        assert!(SimplexPoint::from_full(&[0.5, 0.5 + 1e-13]).is_ok());
        assert!(SimplexPoint::from_head(vec![0.7, 0.3]).is_err());
        let x = SimplexPoint::from_full(&[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(x.dim(), 3);
        assert_relative_eq!(x.coord(2), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn count_enumeration_size() {
        // |X_n| = binomial(n + J - 1, J - 1).
        assert_eq!(enumerate_counts(3, 4).len(), 15);
        assert_eq!(enumerate_counts(2, 5).len(), 6);
        assert!(enumerate_counts(3, 2).iter().all(|c| c.total() == 2));
    }
}
