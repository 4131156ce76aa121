//! JSON code specs: the on-disk description of a code.

use anyhow::{bail, ensure, Context, Result};
use qcgr_core::combinatorics::{AbelianGroup, S2Set};
use qcgr_core::construction::{
    check_constraints, construct_extended, construct_from_s2, construct_theorem2, extended_subarray, lift, prop2_check,
    ConstraintReport, ExponentMatrix,
};
use qcgr_core::encoder::EncodingContext;
use qcgr_core::fixtures::{random_unit, CodeFixture, EncoderFixture};
use qcgr_core::group_ring::GroupRing;
use qcgr_core::{BinaryMatrix, FiniteGroup, GroupKind, TensorRing};
use serde::{Deserialize, Serialize};

use crate::ValidationError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Theorem2,
    S2Set,
    S2SetExtended,
    /// Check rows of the RG-matrix of a seeded random unit.
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: usize },
    DirectProduct { factors: Vec<usize> },
    Dihedral { order: usize },
    Quaternion,
}

impl GroupSpec {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupSpec::Cyclic { order } => GroupKind::Cyclic(*order),
            GroupSpec::DirectProduct { factors } => GroupKind::DirectProduct(factors.clone()),
            GroupSpec::Dihedral { order } => GroupKind::Dihedral(*order),
            GroupSpec::Quaternion => GroupKind::Quaternion,
        }
    }

    pub fn from_kind(kind: &GroupKind) -> Self {
        match kind {
            GroupKind::Cyclic(n) => GroupSpec::Cyclic { order: *n },
            GroupKind::DirectProduct(f) => GroupSpec::DirectProduct { factors: f.clone() },
            GroupKind::Dihedral(n) => GroupSpec::Dihedral { order: *n },
            GroupKind::Quaternion => GroupSpec::Quaternion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Subarray {
    pub rho: usize,
    pub gamma: usize,
}

/// Recomputed on every build; values read from disk are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derived {
    pub n_blocks: usize,
    pub b: usize,
    pub length: usize,
    pub dimension: usize,
    /// Exponent tuples per block, `null` for the zero block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_matrix: Option<Vec<Vec<Vec<Option<u32>>>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub schema_version: u32,
    pub construction: ConstructionKind,
    pub group: GroupSpec,
    /// Field characteristic for the cyclic-group construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    /// Ring moduli `q_i - 1` (the S2-set ambient group for S2 constructions).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2_set: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subarray: Option<Subarray>,
    /// Use `[sub(W) | sub(-W)]`.
    #[serde(default)]
    pub extended: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_rows: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<Derived>,
}

impl CodeSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CodeSpec = serde_json::from_str(text).map_err(|e| ValidationError(format!("invalid code spec: {e}")))?;
        if spec.schema_version != SCHEMA_VERSION {
            return Err(ValidationError(format!("unsupported schema_version {}", spec.schema_version)).into());
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }

    pub fn from_code_fixture(f: &CodeFixture) -> Self {
        CodeSpec {
            schema_version: SCHEMA_VERSION,
            construction: ConstructionKind::Theorem2,
            group: GroupSpec::Cyclic { order: f.group_order },
            p: Some(f.p),
            moduli: None,
            s2_set: None,
            subarray: Some(Subarray { rho: f.rho, gamma: f.gamma }),
            extended: f.extended,
            unit_seed: None,
            check_rows: None,
            note: Some(f.note.to_string()),
            derived: None,
        }
    }

    pub fn from_encoder_fixture(f: &EncoderFixture) -> Self {
        CodeSpec {
            schema_version: SCHEMA_VERSION,
            construction: ConstructionKind::Unit,
            group: GroupSpec::from_kind(&f.group),
            p: None,
            moduli: Some(f.moduli.clone()),
            s2_set: None,
            subarray: None,
            extended: false,
            unit_seed: Some(f.seed),
            check_rows: Some(f.check_rows.clone()),
            note: None,
            derived: None,
        }
    }

    /// Builds the parity-check matrix; every inconsistency is a validation error.
    pub fn build(&self) -> Result<BuiltCode> {
        self.build_inner().map_err(|e| match e.downcast::<ValidationError>() {
            Ok(v) => v.into(),
            Err(e) => ValidationError(format!("{e:#}")).into(),
        })
    }

    fn build_inner(&self) -> Result<BuiltCode> {
        let group = FiniteGroup::new(self.group.kind())?;
        if self.construction == ConstructionKind::Unit {
            ensure!(self.subarray.is_none() && !self.extended, "unit codes take check_rows, not a subarray");
            let moduli = self.moduli.clone().context("unit codes need moduli")?;
            let seed = self.unit_seed.context("unit codes need unit_seed")?;
            let rows = self.check_rows.clone().context("unit codes need check_rows")?;
            let ring = GroupRing::new(group, TensorRing::new(moduli)?);
            let w = random_unit(&ring, seed)?;
            let ctx = EncodingContext::unit(ring, w, &rows)?;
            return Ok(BuiltCode::new(ctx.parity_check().clone(), ctx.ring().b(), None, Some(ctx)));
        }
        ensure!(self.unit_seed.is_none() && self.check_rows.is_none(), "unit_seed/check_rows only apply to unit codes");
        let sub = self.subarray.context("subarray (rho, gamma) is required")?;
        let w = match self.construction {
            ConstructionKind::Theorem2 => {
                ensure!(self.s2_set.is_none() && self.moduli.is_none(), "theorem2 takes p, not moduli or s2_set");
                construct_theorem2(&group, self.p.unwrap_or(2))?
            }
            _ => {
                ensure!(self.p.is_none(), "S2 constructions take moduli and s2_set, not p");
                let h = AbelianGroup::new(self.moduli.clone().context("S2 constructions need moduli")?)?;
                let tuples = self.s2_set.as_ref().context("S2 constructions need s2_set")?;
                let members = tuples.iter().map(|t| h.index(t)).collect::<qcgr_core::Result<Vec<_>>>()?;
                let set = S2Set::new(h, members)?;
                if self.construction == ConstructionKind::S2Set {
                    construct_from_s2(&set, &group)?.matrix
                } else {
                    construct_extended(&set, &group)?.matrix
                }
            }
        };
        let matrix = if self.extended { extended_subarray(&w, sub.rho, sub.gamma)? } else { w.subarray(sub.rho, sub.gamma)? };
        let lifted = lift(&matrix);
        Ok(BuiltCode::new(lifted.h, lifted.b, Some(matrix), None))
    }

    /// Copy with the derived block filled in from a build.
    pub fn with_derived(&self, built: &BuiltCode) -> Self {
        let mut out = self.clone();
        out.derived = Some(Derived {
            n_blocks: built.h.cols() / built.b,
            b: built.b,
            length: built.length(),
            dimension: built.dimension(),
            exponent_matrix: built.matrix.as_ref().map(|m| {
                (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.entry(i, j).iter().map(|e| e.get()).collect()).collect()).collect()
            }),
        });
        out
    }
}

/// A built code with its diagnostics.
#[derive(Debug, Clone)]
pub struct BuiltCode {
    pub h: BinaryMatrix,
    pub b: usize,
    pub matrix: Option<ExponentMatrix>,
    pub encoder: Option<EncodingContext>,
    pub constraints: Option<ConstraintReport>,
    rank: usize,
}

impl BuiltCode {
    fn new(h: BinaryMatrix, b: usize, matrix: Option<ExponentMatrix>, encoder: Option<EncodingContext>) -> Self {
        let rank = h.rank();
        let constraints = matrix.as_ref().map(check_constraints);
        BuiltCode { h, b, matrix, encoder, constraints, rank }
    }

    pub fn length(&self) -> usize {
        self.h.cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dimension(&self) -> usize {
        self.h.cols() - self.rank
    }

    pub fn prop2(&self) -> Option<bool> {
        self.matrix.as_ref().map(prop2_check)
    }
}

pub fn load(path: &std::path::Path) -> Result<CodeSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CodeSpec::from_json(&text)
}

pub fn parse_moduli(text: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = text.split(',').map(|t| t.trim().parse::<usize>()).collect::<Result<_, _>>()?;
    if v.is_empty() {
        bail!("empty moduli list");
    }
    Ok(v)
}
