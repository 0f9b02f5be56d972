//! Builders for the example families: Heisenberg groups, the affine
//! symplectic groups ASp(n,2) and their metaplectic lifts, the quadratic
//! transvection example, the cubic example over F_{3⁵} with its M₁₁
//! generators, and the groups M(C,c).

pub mod asp;
pub mod cubic;
pub mod ffield;
pub mod heisenberg;
pub mod mcc;
pub mod metaplectic;
pub mod quadratic;

use std::sync::Arc;

use thiserror::Error;
use twistlab_core::{Limits, TwistError};
use twistlab_groups::{FiniteGroup, GroupError, GroupSpec, GroupSpecBody};

pub use asp::{asp, AffineSymplectic};
pub use cubic::{f243_cubic_example, CubicData, CubicExample};
pub use ffield::{FiniteField, FiniteFieldElement};
pub use heisenberg::{heisenberg, Heisenberg};
pub use mcc::{abelian_structure, mcc_group, triform_from_fn, MccGroup};
pub use metaplectic::{metaplectic_lift, MetaplecticLift};
pub use quadratic::{quadratic_example, QuadraticData, QuadraticExample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("search failed: {0}")]
    Search(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl ConstructionError {
    pub fn is_internal(&self) -> bool {
        match self {
            ConstructionError::Internal(_) => true,
            ConstructionError::Twist(e) => e.is_internal(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

fn param<T: std::str::FromStr>(params: &std::collections::BTreeMap<String, String>, key: &str, kind: &str) -> Result<T> {
    let raw = params
        .get(key)
        .ok_or_else(|| ConstructionError::InvalidParameter(format!("builtin {kind} needs {key}=<value>")))?;
    raw.parse().map_err(|_| ConstructionError::InvalidParameter(format!("{key}={raw} is not valid for builtin {kind}")))
}

/// Materialize any group description, resolving the builtin kinds
/// `heisenberg p=`, `asp n=`, `metaplectic n=`, `mcc n=` and `abelian divisors=a,b,…`.
pub fn build_group(spec: &GroupSpec, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    let GroupSpecBody::Builtin { kind, params } = &spec.body else {
        let g = spec.build_basic(limits.closure_cap, limits.table_cap)?.expect("non-builtin body");
        return Ok(Arc::new(g));
    };
    match kind.as_str() {
        "heisenberg" => Ok(heisenberg(param(params, "p", kind)?, limits)?.group),
        "asp" => Ok(asp(param(params, "n", kind)?, limits)?.group),
        "metaplectic" => {
            let a = asp(param(params, "n", kind)?, limits)?;
            Ok(metaplectic_lift(&a.group, &a.dual, &a.beta, limits)?.quotient)
        }
        "mcc" => {
            let n: u64 = param(params, "n", kind)?;
            let c = abelian_structure(&[n], limits)?;
            let tri = triform_from_fn(&c, |x, y, z| x[0] * y[0] % n * z[0]);
            Ok(mcc_group(&tri, None, limits)?.group)
        }
        "abelian" => {
            let raw: String = param(params, "divisors", kind)?;
            let divisors: Vec<u64> = raw
                .split(',')
                .map(|d| d.trim().parse().map_err(|_| ConstructionError::InvalidParameter(format!("bad divisor `{d}`"))))
                .collect::<Result<_>>()?;
            if divisors.iter().any(|&d| !(2..=255).contains(&d)) {
                return Err(ConstructionError::InvalidParameter("divisors must lie in 2..=255".into()));
            }
            Ok(Arc::new(FiniteGroup::abelian(&divisors, limits.table_cap)))
        }
        other => Err(ConstructionError::InvalidParameter(format!("unknown builtin `{other}`"))),
    }
}
