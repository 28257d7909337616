//! Finitely supported mixing measures over a kernel family.

use crate::error::{DirimixError, Result};
use crate::numeric::{PositiveVector, Scalar};

/// The kernel families a measure can mix over. Only the first two have
/// continuous mixture densities evaluated by this crate; the discrete and
/// embedded families appear in witness constructions and exact identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Dirichlet,
    InvertedDirichlet,
    GeneralizedDirichlet,
    BetaLiouville,
    InvertedBetaLiouville,
    DirichletMultinomial,
    LdaMarginal,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Dirichlet => "dirichlet",
            Family::InvertedDirichlet => "inverted_dirichlet",
            Family::GeneralizedDirichlet => "generalized_dirichlet",
            Family::BetaLiouville => "beta_liouville",
            Family::InvertedBetaLiouville => "inverted_beta_liouville",
            Family::DirichletMultinomial => "dirichlet_multinomial",
            Family::LdaMarginal => "lda_marginal",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        Ok(match name {
            "dirichlet" => Family::Dirichlet,
            "inverted_dirichlet" => Family::InvertedDirichlet,
            "generalized_dirichlet" => Family::GeneralizedDirichlet,
            "beta_liouville" => Family::BetaLiouville,
            "inverted_beta_liouville" => Family::InvertedBetaLiouville,
            "dirichlet_multinomial" => Family::DirichletMultinomial,
            "lda_marginal" => Family::LdaMarginal,
            other => {
                return Err(DirimixError::Parse(format!("unknown family {other:?}")));
            }
        })
    }

    /// Families whose atoms are plain positive parameter vectors indexing
    /// kernels on a common domain, so that mixtures (and equality of
    /// mixtures) make sense atom-by-atom.
    pub fn supports_mixing(&self) -> bool {
        matches!(
            self,
            Family::Dirichlet | Family::InvertedDirichlet | Family::DirichletMultinomial
        )
    }
}

/// A finitely supported probability measure on parameter space: atoms
/// `(gamma_k, pi_k)` with strictly positive weights summing to one (exactly
/// in the rational kind, within 1e-12 in the float kind) and pairwise
/// distinct support points, all of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingMeasure<T: Scalar> {
    family: Family,
    atoms: Vec<(PositiveVector<T>, T)>,
}

impl<T: Scalar> MixingMeasure<T> {
    pub fn new(family: Family, atoms: Vec<(PositiveVector<T>, T)>) -> Result<Self> {
        if !family.supports_mixing() {
            return Err(DirimixError::InvalidParameter(format!(
                "family {} does not index mixtures by a single parameter vector",
                family.name()
            )));
        }
        if atoms.is_empty() {
            return Err(DirimixError::InvalidParameter(
                "a mixing measure needs at least one atom".into(),
            ));
        }
        let dim = atoms[0].0.dim();
        if atoms.iter().any(|(p, _)| p.dim() != dim) {
            return Err(DirimixError::DimensionMismatch(
                "all atoms of a mixing measure must share one dimension".into(),
            ));
        }
        if let Some((_, w)) = atoms.iter().find(|(_, w)| !w.is_positive_finite()) {
            return Err(DirimixError::InvalidParameter(format!(
                "mixture weights must be strictly positive, got {w}"
            )));
        }
        let total = atoms
            .iter()
            .fold(T::zero(), |acc, (_, w)| acc + w.clone());
        if !T::sums_to_one(&total) {
            return Err(DirimixError::InvalidParameter(format!(
                "mixture weights must sum to 1, got {total}"
            )));
        }
        for i in 0..atoms.len() {
            for k in (i + 1)..atoms.len() {
                if T::same_atom(atoms[i].0.entries(), atoms[k].0.entries()) {
                    return Err(DirimixError::InvalidParameter(format!(
                        "atoms {i} and {k} coincide; merge their weights instead"
                    )));
                }
            }
        }
        Ok(MixingMeasure { family, atoms })
    }

    /// Single-atom measure (a point mass).
    pub fn dirac(family: Family, atom: PositiveVector<T>) -> Result<Self> {
        MixingMeasure::new(family, vec![(atom, T::one())])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn atoms(&self) -> &[(PositiveVector<T>, T)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Dimension J of the supported parameter vectors.
    pub fn dim(&self) -> usize {
        self.atoms[0].0.dim()
    }

    /// Mass placed on a given support point (zero if it is not an atom).
    /// Matching uses the scalar kind's own atom-identity predicate.
    pub fn mass_at(&self, point: &PositiveVector<T>) -> T {
        self.atoms
            .iter()
            .find(|(p, _)| T::same_atom(p.entries(), point.entries()))
            .map(|(_, w)| w.clone())
            .unwrap_or_else(T::zero)
    }
}

impl MixingMeasure<crate::numeric::Rational> {
    /// Lossy float view (for reporting and float-path evaluation).
    pub fn to_float(&self) -> Result<MixingMeasure<f64>> {
        let atoms = self
            .atoms
            .iter()
            .map(|(p, w)| Ok((PositiveVector::new(p.approx_f64_vec())?, w.approx_f64())))
            .collect::<Result<Vec<_>>>()?;
        MixingMeasure::new(self.family, atoms)
    }
}
