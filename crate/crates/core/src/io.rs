//! Serialization of models, solutions and time series.
//!
//! Three interchange formats live here:
//!
//! - **model JSON** — `{"h": …, "f": {"kind": …, …}, "M": …}`, the input
//!   format of the command-line driver.  Unknown fields and unknown shear
//!   kinds are rejected so typos fail loudly instead of silently changing
//!   the material.
//! - **solution JSON** — the solved radial profile with its eigenvalue and
//!   diagnostics.  Only `ζ` is authoritative on reload: every derived field
//!   is recomputed from it and compared against the stored copy, so a
//!   hand-edited file cannot smuggle in an inconsistent profile.
//! - **CSV time series** — amplitude trajectories and space-time samples,
//!   with floats printed at 17 significant digits so parsing them back
//!   reproduces the exact bit pattern.

use crate::constitutive::{MaterialModel, ModelError, ShearFunction};
use crate::dynamics::ScaleTrajectory;
use crate::eigensolver::{EigenSolution, RadialGrid, RadialProfile};
use crate::motion::{MotionError, SeparableMotion};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Largest allowed discrepancy between a stored derived field and its
/// value recomputed from `ζ` when loading a solution document.
pub const PROFILE_CONSISTENCY_TOL: f64 = 1e-9;

/// File and format failures.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid document: {0}")]
    Invalid(String),
}

/// Load failure of a model file: either the document is bad (I/O, JSON,
/// schema) or the material it describes is ill-formed.
#[derive(Debug, Error)]
pub enum LoadModelError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// On-disk shear-profile description.  Flat on purpose: `kind` selects the
/// family and exactly the parameters of that family may be present.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ShearDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeffs: Option<Vec<f64>>,
}

impl ShearDoc {
    /// Converts the document into a shear function, rejecting missing,
    /// superfluous or unknown parameters.
    pub fn to_shear(&self) -> Result<ShearFunction, IoError> {
        let forbid = |cond: bool, what: &str| {
            if cond {
                Err(IoError::Invalid(format!(
                    "shear kind {:?} does not take parameter {what}",
                    self.kind
                )))
            } else {
                Ok(())
            }
        };
        match self.kind.as_str() {
            "quadratic" => {
                forbid(self.c1.is_some(), "c1")?;
                forbid(self.c2.is_some(), "c2")?;
                forbid(self.coeffs.is_some(), "coeffs")?;
                let b = self
                    .b
                    .ok_or_else(|| IoError::Invalid("quadratic shear requires b".into()))?;
                Ok(ShearFunction::Quadratic { b })
            }
            "two_invariant" => {
                forbid(self.b.is_some(), "b")?;
                forbid(self.coeffs.is_some(), "coeffs")?;
                let c1 = self
                    .c1
                    .ok_or_else(|| IoError::Invalid("two_invariant shear requires c1".into()))?;
                let c2 = self
                    .c2
                    .ok_or_else(|| IoError::Invalid("two_invariant shear requires c2".into()))?;
                Ok(ShearFunction::TwoInvariant { c1, c2 })
            }
            "poly" => {
                forbid(self.b.is_some(), "b")?;
                forbid(self.c1.is_some(), "c1")?;
                forbid(self.c2.is_some(), "c2")?;
                let coeffs = self
                    .coeffs
                    .clone()
                    .ok_or_else(|| IoError::Invalid("poly shear requires coeffs".into()))?;
                Ok(ShearFunction::Poly { coeffs })
            }
            other => Err(IoError::Invalid(format!("unknown shear kind {other:?}"))),
        }
    }

    /// Document form of a shear function.  Internal families that have no
    /// on-disk syntax are rejected.
    pub fn from_shear(f: &ShearFunction) -> Result<Self, IoError> {
        let empty = Self {
            kind: String::new(),
            b: None,
            c1: None,
            c2: None,
            coeffs: None,
        };
        match f {
            ShearFunction::Quadratic { b } => Ok(Self {
                kind: "quadratic".into(),
                b: Some(*b),
                ..empty
            }),
            ShearFunction::TwoInvariant { c1, c2 } => Ok(Self {
                kind: "two_invariant".into(),
                c1: Some(*c1),
                c2: Some(*c2),
                ..empty
            }),
            ShearFunction::Poly { coeffs } => Ok(Self {
                kind: "poly".into(),
                coeffs: Some(coeffs.clone()),
                ..empty
            }),
            ShearFunction::Shifted { .. } => Err(IoError::Invalid(
                "shifted shear profiles have no document form".into(),
            )),
        }
    }
}

/// On-disk material description.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub h: f64,
    pub f: ShearDoc,
    #[serde(rename = "M")]
    pub m: f64,
}

impl ModelDoc {
    pub fn from_model(model: &MaterialModel) -> Result<Self, IoError> {
        Ok(Self {
            h: model.h(),
            f: ShearDoc::from_shear(model.shear())?,
            m: model.m_bound(),
        })
    }

    pub fn build(&self) -> Result<MaterialModel, LoadModelError> {
        let shear = self.f.to_shear()?;
        Ok(MaterialModel::new(self.h, shear, self.m)?)
    }
}

/// Reads and builds a material model from a JSON file.
pub fn load_model(path: &Path) -> Result<MaterialModel, LoadModelError> {
    let doc: ModelDoc = read_json(path)?;
    doc.build()
}

/// Parses a model document from an in-memory JSON string.
pub fn parse_model_doc(text: &str) -> Result<ModelDoc, serde_json::Error> {
    serde_json::from_str(text)
}

/// On-disk solved radial profile.
///
/// `zeta` is the authoritative field; the derived arrays are stored for
/// human consumption and are revalidated against `zeta` on load.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub h: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub mu: f64,
    pub u0: f64,
    pub grid_n: usize,
    pub zeta: Vec<f64>,
    pub phi: Vec<f64>,
    pub lambda1: Vec<f64>,
    pub lambda2: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub residual_sup: f64,
    pub contraction_rate: f64,
    pub iterations: usize,
}

impl SolutionDoc {
    pub fn from_solution(model: &MaterialModel, sol: &EigenSolution) -> Self {
        let profile = &sol.profile;
        let n = profile.grid().n();
        Self {
            h: model.h(),
            beta: model.beta(),
            epsilon: sol.epsilon,
            mu: sol.mu,
            u0: sol.u0,
            grid_n: n,
            zeta: profile.zeta().to_vec(),
            phi: (0..=n).map(|i| profile.phi(i)).collect(),
            lambda1: profile.lambda1().to_vec(),
            lambda2: profile.lambda2().to_vec(),
            u: profile.u().to_vec(),
            v: profile.v().to_vec(),
            residual_sup: sol.residual_sup,
            contraction_rate: sol.contraction_rate,
            iterations: sol.iterations,
        }
    }

    /// Rebuilds the solution for `model`, recomputing the profile from
    /// `zeta` and rejecting the document if any stored derived field
    /// disagrees beyond [`PROFILE_CONSISTENCY_TOL`] or the scalars do not
    /// match the model.
    ///
    /// The bisection bracket is not part of the document; reloaded
    /// solutions carry NaN endpoints there.
    pub fn into_solution(self, model: &MaterialModel) -> Result<EigenSolution, IoError> {
        if self.h != model.h() {
            return Err(IoError::Invalid(format!(
                "document h = {} does not match the model's h = {}",
                self.h,
                model.h()
            )));
        }
        if (self.beta - model.beta()).abs() > 1e-12 * model.beta().abs().max(1.0) {
            return Err(IoError::Invalid(format!(
                "document beta = {} does not match the model's beta = {}",
                self.beta,
                model.beta()
            )));
        }
        let grid =
            RadialGrid::new(self.grid_n).map_err(|e| IoError::Invalid(format!("bad grid: {e}")))?;
        if self.zeta.len() != self.grid_n + 1 {
            return Err(IoError::Invalid(format!(
                "zeta has {} entries, expected {}",
                self.zeta.len(),
                self.grid_n + 1
            )));
        }
        let expected_len = self.grid_n + 1;
        let profile = RadialProfile::from_zeta(grid, self.zeta, model.delta())
            .map_err(|e| IoError::Invalid(format!("stored zeta is not admissible: {e}")))?;

        let check = |name: &str, stored: &[f64], fresh: &dyn Fn(usize) -> f64| {
            if stored.len() != expected_len {
                return Err(IoError::Invalid(format!(
                    "{name} has {} entries, expected {}",
                    stored.len(),
                    expected_len
                )));
            }
            let sup = stored
                .iter()
                .enumerate()
                .fold(0.0f64, |m, (i, &s)| m.max((s - fresh(i)).abs()));
            if sup > PROFILE_CONSISTENCY_TOL {
                return Err(IoError::Invalid(format!(
                    "stored {name} deviates from the profile implied by zeta \
                     (sup difference {sup:.3e})"
                )));
            }
            Ok(())
        };
        check("phi", &self.phi, &|i| profile.phi(i))?;
        check("lambda1", &self.lambda1, &|i| profile.lambda1()[i])?;
        check("lambda2", &self.lambda2, &|i| profile.lambda2()[i])?;
        check("u", &self.u, &|i| profile.u()[i])?;
        check("v", &self.v, &|i| profile.v()[i])?;

        let kappa_beta = model.kappa() + model.beta();
        if (self.epsilon * kappa_beta - self.mu).abs() > 1e-10 * self.mu.abs().max(1.0) {
            return Err(IoError::Invalid(format!(
                "epsilon = {} and mu = {} are inconsistent for kappa + beta = {}",
                self.epsilon, self.mu, kappa_beta
            )));
        }

        Ok(EigenSolution {
            epsilon: self.epsilon,
            mu: self.mu,
            u_boundary: profile.u_boundary(),
            u0: self.u0,
            radius: model.delta(),
            bracket: (f64::NAN, f64::NAN),
            residual_sup: self.residual_sup,
            contraction_rate: self.contraction_rate,
            iterations: self.iterations,
            profile,
        })
    }
}

/// Reads a JSON document.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Writes a pretty-printed JSON document with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Formats a float with 17 significant digits, enough to reproduce the
/// exact bit pattern when parsed back.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV of an amplitude trajectory.  The `radius` column is the outer radius
/// `a(t) · φ(1)`; pass the solved boundary displacement or `None` for the
/// unit reference value.
pub fn trajectory_csv(traj: &ScaleTrajectory, phi_boundary: Option<f64>) -> String {
    let phi1 = phi_boundary.unwrap_or(1.0);
    let mut out = String::from("t,a,adot,E,radius\n");
    for (state, energy) in traj.samples.iter().zip(traj.energies.iter()) {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(state.t),
            format_float(state.a),
            format_float(state.adot),
            format_float(*energy),
            format_float(state.a * phi1),
        ));
    }
    out
}

/// CSV of space-time samples of an assembled motion over the product grid
/// `times × radii`.
pub fn motion_csv(
    motion: &SeparableMotion,
    times: &[f64],
    radii: &[f64],
) -> Result<String, MotionError> {
    let mut out = String::from("t,r,pos,vel,rho_material,rho_spatial\n");
    for &t in times {
        for &r in radii {
            let s = motion.sample(t, r)?;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                format_float(s.t),
                format_float(s.r),
                format_float(s.position),
                format_float(s.velocity),
                format_float(s.rho_material),
                format_float(s.rho_spatial),
            ));
        }
    }
    Ok(out)
}
