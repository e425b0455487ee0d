//! Input documents and their validation into braided spaces.

use serde::{Deserialize, Serialize};

use nichols::{BraidedSpace, Error, Field, FieldSpec, Matrix, PrimeField, Rationals};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDesc {
    Rationals,
    Prime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BraidingDesc {
    Flip,
    /// `c(e_i ⊗ e_j) = q[i][j] e_j ⊗ e_i`
    Diagonal {
        q: Vec<Vec<String>>,
    },
    /// Row `(k,l)`, column `(i,j)` holds the coefficient of `e_k ⊗ e_l` in
    /// `c(e_i ⊗ e_j)`.
    Matrix {
        entries: Vec<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: FieldDesc,
    pub dimension: usize,
    pub braiding: BraidingDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default)]
    pub oracle: bool,
}

/// A validated braided space over one of the supported fields.
#[derive(Debug, Clone)]
pub enum Space {
    Rational(BraidedSpace<Rationals>),
    Modular(BraidedSpace<PrimeField>),
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("invalid job document: {e}")))
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self.field {
            FieldDesc::Rationals => FieldSpec::Rationals,
            FieldDesc::Prime { p } => FieldSpec::Prime(p),
        }
    }

    pub fn build(&self) -> Result<Space, CliError> {
        match self.field {
            FieldDesc::Rationals => self.build_over(Rationals).map(Space::Rational),
            FieldDesc::Prime { p } => {
                let f = PrimeField::new(p).map_err(CliError::from)?;
                self.build_over(f).map(Space::Modular)
            }
        }
    }

    fn build_over<F: Field>(&self, f: F) -> Result<BraidedSpace<F>, CliError> {
        let n = self.dimension;
        match &self.braiding {
            BraidingDesc::Flip => BraidedSpace::flip(n, f).map_err(CliError::from),
            BraidingDesc::Diagonal { q } => {
                let m = square(f, q, n, "q")?;
                BraidedSpace::diagonal(&m).map_err(CliError::from)
            }
            BraidingDesc::Matrix { entries } => {
                let m = square(f, entries, n * n, "entries")?;
                BraidedSpace::from_matrix(n, m).map_err(CliError::from)
            }
        }
    }
}

fn square<F: Field>(f: F, rows: &[Vec<String>], size: usize, name: &str) -> Result<Matrix<F>, CliError> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(CliError::parse(format!(
            "{name} must be a {size}x{size} array of scalar strings"
        )));
    }
    let flat: Vec<&str> = rows.iter().flatten().map(String::as_str).collect();
    Matrix::parse(f, size, size, &flat).map_err(CliError::from)
}

/// Whether a core error means the braiding data is invalid, as opposed to
/// the request being malformed.
pub fn is_validation_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::YangBaxterViolation { .. }
            | Error::NotInvertible
            | Error::ZeroParameter { .. }
            | Error::IdealViolation { .. }
            | Error::CoidealViolation { .. }
    )
}

/// Stable text describing a computation, hashed for the cache key.
pub fn canonical_text<F: Field>(space: &BraidedSpace<F>, cutoff: usize) -> String {
    let f = space.field();
    let entries: Vec<String> = space
        .matrix()
        .row_vectors()
        .flat_map(|row| row.iter().map(|x| f.format(x)))
        .collect();
    format!(
        "field {}\ndimension {}\nbraiding {}\ncutoff {}\n",
        f.spec(),
        space.dim(),
        entries.join(" "),
        cutoff
    )
}
