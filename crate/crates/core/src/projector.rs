//! Projector plans: products of factors `(U - chi_mu(U)) / (chi_lambda(U) - chi_mu(U))`
//! in commuting operators `U` that act by known scalars on the pieces of the
//! decomposition. The product fixes the target piece and kills every other
//! candidate piece.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::action::BasisElement;
use crate::error::{Error, Result};
use crate::meta::{Format, MetaExpr, MetaPolynomial};
use crate::rep::{self, Partition, SemistandardTableau, Weight};
use crate::scalar::{self, Scalar};
use crate::uea::{self, apply_expr, central_character, UeaElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Weight(Weight),
    Isotypic(Partition),
    HighestWeight(Partition),
    TIsotypic(SemistandardTableau),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Weight(w) => write!(f, "weight {w}"),
            Target::Isotypic(l) => write!(f, "isotypic {l}"),
            Target::HighestWeight(l) => write!(f, "highest weight {l}"),
            Target::TIsotypic(t) => write!(f, "tableau {t}"),
        }
    }
}

/// `(op - shift) / divisor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorFactor {
    pub op: UeaElement,
    #[serde(with = "scalar::serde_text")]
    pub shift: Scalar,
    #[serde(with = "scalar::serde_text")]
    pub divisor: Scalar,
}

impl ProjectorFactor {
    pub fn new(op: UeaElement, shift: Scalar, divisor: Scalar) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::OutOfRange("projector factor with zero divisor".into()));
        }
        Ok(ProjectorFactor { op, shift, divisor })
    }

    /// The factor as a single element of `U(gl_k)`.
    pub fn as_element(&self) -> UeaElement {
        let k = self.op.k();
        let inv = Scalar::from_integer(1.into()) / &self.divisor;
        self.op
            .sub(&UeaElement::constant(k, self.shift.clone()))
            .expect("same k")
            .scale(&inv)
    }

    pub fn apply_expr(&self, m: &MetaExpr) -> Result<MetaExpr> {
        let mut out = apply_expr(&self.op, m)?;
        out.add_scaled(m, &-self.shift.clone());
        let inv = Scalar::from_integer(1.into()) / &self.divisor;
        Ok(out.scale(&inv))
    }
}

impl fmt::Display for ProjectorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}) - {})/{}", self.op, self.shift, self.divisor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectorPlan {
    pub target: Target,
    pub format: Format,
    pub factors: Vec<ProjectorFactor>,
}

impl ProjectorPlan {
    /// Product of all factors as one element of `U(gl_k)` (not normalized).
    pub fn as_element(&self) -> UeaElement {
        let mut acc = UeaElement::one(self.format.k);
        for f in &self.factors {
            acc = acc.mul(&f.as_element()).expect("same k");
        }
        acc
    }
}

/// Which isomorphism types an isotypic plan must separate the target from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Candidates {
    /// Every partition of `delta * d` with at most `k` parts.
    #[default]
    Superset,
    /// Only the types occurring in the format space.
    Occurring,
    Explicit(Vec<Partition>),
}

impl Candidates {
    fn resolve(&self, format: Format) -> Vec<Partition> {
        match self {
            Candidates::Superset => rep::enumerate_partitions(format.weight_total(), format.k),
            Candidates::Occurring => rep::isotypic_types(format)
                .into_iter()
                .map(|(p, _)| p)
                .collect(),
            Candidates::Explicit(list) => list.clone(),
        }
    }
}

/// Smallest `p` with differing characters of the `gl_l` Casimir `C_p`,
/// and the two characters.
fn separate(lambda: &[i64], mu: &[i64]) -> Result<(usize, Scalar, Scalar)> {
    for p in 1..=lambda.len() {
        let a = central_character(lambda, p)?;
        let b = central_character(mu, p)?;
        if a != b {
            return Ok((p, a, b));
        }
    }
    Err(Error::Nonseparable {
        a: lambda.to_vec(),
        b: mu.to_vec(),
    })
}

pub fn plan_weight(w: &Weight, format: Format) -> Result<ProjectorPlan> {
    w.validate_for(format)?;
    let n = i64::from(format.weight_total());
    let mut factors = Vec::new();
    for (i, &wi) in w.coords().iter().enumerate() {
        let op = UeaElement::basis(format.k, BasisElement::new(i, i))?;
        for v in (0..=n).filter(|&v| v != wi) {
            factors.push(ProjectorFactor::new(
                op.clone(),
                scalar::int(v),
                scalar::int(wi - v),
            )?);
        }
    }
    Ok(ProjectorPlan {
        target: Target::Weight(w.clone()),
        format,
        factors,
    })
}

fn check_type(lambda: &Partition, format: Format) -> Result<Vec<i64>> {
    if lambda.size() != format.weight_total() {
        return Err(Error::InvalidPartition(format!(
            "{lambda} is not a partition of {}",
            format.weight_total()
        )));
    }
    lambda.padded(format.k)
}

fn isotypic_factors(
    lambda: &Partition,
    format: Format,
    candidates: &Candidates,
) -> Result<Vec<ProjectorFactor>> {
    let l = check_type(lambda, format)?;
    let mut factors = Vec::new();
    // Listed least dominant first, so the most dominant rival is applied first.
    for mu in candidates.resolve(format).into_iter().rev() {
        if mu == *lambda {
            continue;
        }
        let m = mu.padded(format.k)?;
        let (p, a, b) = separate(&l, &m)?;
        factors.push(ProjectorFactor::new(uea::casimir(format.k, p)?, b.clone(), a - b)?);
    }
    Ok(factors)
}

pub fn plan_isotypic(lambda: &Partition, format: Format) -> Result<ProjectorPlan> {
    plan_isotypic_with(lambda, format, &Candidates::Superset)
}

pub fn plan_isotypic_with(
    lambda: &Partition,
    format: Format,
    candidates: &Candidates,
) -> Result<ProjectorPlan> {
    Ok(ProjectorPlan {
        target: Target::Isotypic(lambda.clone()),
        format,
        factors: isotypic_factors(lambda, format, candidates)?,
    })
}

pub fn plan_hwv(lambda: &Partition, format: Format) -> Result<ProjectorPlan> {
    plan_hwv_with(lambda, format, &Candidates::Superset)
}

pub fn plan_hwv_with(
    lambda: &Partition,
    format: Format,
    candidates: &Candidates,
) -> Result<ProjectorPlan> {
    let w = Weight::new(check_type(lambda, format)?);
    let mut factors = plan_weight(&w, format)?.factors;
    factors.extend(isotypic_factors(lambda, format, candidates)?);
    Ok(ProjectorPlan {
        target: Target::HighestWeight(lambda.clone()),
        format,
        factors,
    })
}

pub fn plan_gz(t: &SemistandardTableau, format: Format) -> Result<ProjectorPlan> {
    let shape = t.shape();
    check_type(&shape, format)?;
    let pattern = rep::tableau_to_pattern(t, format.k)?;
    let mut factors = Vec::new();
    // Factors apply right to left; the cheap low levels go last so they run first.
    for l in (1..=format.k).rev() {
        let level: Vec<i64> = pattern.levels()[l - 1].iter().map(|&x| i64::from(x)).collect();
        for size in 0..=format.weight_total() {
            for nu in rep::enumerate_partitions(size, l) {
                let nu = nu.padded(l)?;
                if nu == level {
                    continue;
                }
                let (p, a, b) = separate(&level, &nu)?;
                factors.push(ProjectorFactor::new(
                    uea::casimir_gz(format.k, l, p)?,
                    b.clone(),
                    a - b,
                )?);
            }
        }
    }
    Ok(ProjectorPlan {
        target: Target::TIsotypic(t.clone()),
        format,
        factors,
    })
}

pub fn apply_plan_expr(plan: &ProjectorPlan, m: &MetaExpr) -> Result<MetaExpr> {
    let mut cur = m.clone();
    for f in plan.factors.iter().rev() {
        if cur.is_zero() {
            break;
        }
        cur = f.apply_expr(&cur)?;
    }
    Ok(cur)
}

pub fn apply_plan(plan: &ProjectorPlan, m: &MetaPolynomial) -> Result<MetaPolynomial> {
    if plan.format != m.format() {
        return Err(Error::FormatMismatch {
            expected: plan.format,
            found: m.format(),
        });
    }
    apply_plan_expr(plan, m.expr())?.into_homogeneous(plan.format.delta)
}

/// Plans for every target of one family on `format`; their images are
/// complementary.
pub fn all_weight_plans(format: Format) -> Result<Vec<ProjectorPlan>> {
    rep::enumerate_weights(format.delta, format.d, format.k)
        .iter()
        .map(|w| plan_weight(w, format))
        .collect()
}

pub fn all_isotypic_plans(format: Format) -> Result<Vec<ProjectorPlan>> {
    rep::enumerate_partitions(format.weight_total(), format.k)
        .iter()
        .map(|l| plan_isotypic(l, format))
        .collect()
}

pub fn all_gz_plans(format: Format) -> Result<Vec<ProjectorPlan>> {
    let mut out = Vec::new();
    for shape in rep::enumerate_partitions(format.weight_total(), format.k) {
        for t in rep::enumerate_tableaux(&shape, format.k) {
            out.push(plan_gz(&t, format)?);
        }
    }
    Ok(out)
}
