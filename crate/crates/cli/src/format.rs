//! The JSON design file.
//!
//! ```json
//! {
//!   "kind": "ds",
//!   "group": [{"cyclic": 7}],
//!   "params": [7, 3, 1],
//!   "blocks": [
//!     [[1], [2], [4]]
//!   ]
//! }
//! ```
//!
//! Every element is a list with one coordinate per group factor: an integer
//! for a cyclic factor, a coefficient list (low degree first) for a field.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use diffam::algebra::Coord;
use diffam::{DiffMatrix, FieldDescriptor, GroupDescriptor, GroupElement, GroupFactor};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Df,
    Ddf,
    Pdf,
    Ds,
    Dds,
    Dm,
    Hdm,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Df => "df",
            Kind::Ddf => "ddf",
            Kind::Pdf => "pdf",
            Kind::Ds => "ds",
            Kind::Dds => "dds",
            Kind::Dm => "dm",
            Kind::Hdm => "hdm",
        }
    }

    /// Number of entries in the parameter tuple.
    pub fn arity(self) -> usize {
        if self == Kind::Dds {
            5
        } else {
            3
        }
    }

    pub fn is_family(self) -> bool {
        matches!(self, Kind::Df | Kind::Ddf | Kind::Pdf)
    }

    pub fn is_matrix(self) -> bool {
        matches!(self, Kind::Dm | Kind::Hdm)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_uppercase())
    }
}

impl FromStr for Kind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        <Kind as clap::ValueEnum>::from_str(s, true).map_err(|_| anyhow::anyhow!("unknown design kind {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FactorSpec {
    Cyclic(u64),
    Field { p: u64, n: u32, modulus: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Residue(u64),
    Coeffs(Vec<u64>),
}

pub type ElementSpec = Vec<CoordSpec>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub kind: Kind,
    pub group: Vec<FactorSpec>,
    pub params: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<ElementSpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<ElementSpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<ElementSpec>>,
}

pub fn group_to_spec(g: &GroupDescriptor) -> Vec<FactorSpec> {
    g.factors()
        .iter()
        .map(|f| match f {
            GroupFactor::Cyclic(n) => FactorSpec::Cyclic(*n),
            GroupFactor::Field(fd) => FactorSpec::Field {
                p: fd.characteristic(),
                n: fd.degree(),
                modulus: fd.modulus().to_vec(),
            },
        })
        .collect()
}

pub fn group_from_spec(spec: &[FactorSpec]) -> Result<GroupDescriptor> {
    ensure!(!spec.is_empty(), "group has no factors");
    let factors = spec
        .iter()
        .map(|f| -> Result<GroupFactor> {
            Ok(match f {
                FactorSpec::Cyclic(n) => GroupFactor::Cyclic(*n),
                FactorSpec::Field { p, n, modulus } => {
                    let fd = FieldDescriptor::with_modulus(*p, modulus.clone())
                        .with_context(|| format!("field factor with p = {p}, modulus {modulus:?}"))?;
                    ensure!(fd.degree() == *n, "modulus {modulus:?} has degree {}, not {n}", fd.degree());
                    GroupFactor::Field(fd)
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupDescriptor::new(factors)?)
}

pub fn element_to_spec(x: &GroupElement) -> ElementSpec {
    x.coords()
        .iter()
        .map(|c| match c {
            Coord::Residue(r) => CoordSpec::Residue(*r),
            Coord::Field(fe) => CoordSpec::Coeffs(fe.coeffs().to_vec()),
        })
        .collect()
}

pub fn element_from_spec(g: &GroupDescriptor, spec: &ElementSpec) -> Result<GroupElement> {
    ensure!(
        spec.len() == g.factors().len(),
        "element {} has {} coordinates, the group has {} factors",
        serde_json::to_string(spec)?,
        spec.len(),
        g.factors().len()
    );
    let coords = g
        .factors()
        .iter()
        .zip(spec)
        .map(|(f, c)| -> Result<Coord> {
            Ok(match (f, c) {
                (GroupFactor::Cyclic(_), CoordSpec::Residue(r)) => Coord::Residue(*r),
                (GroupFactor::Field(fd), CoordSpec::Coeffs(cs)) => Coord::Field(fd.element(cs.clone())?),
                (GroupFactor::Field(fd), CoordSpec::Residue(r)) if fd.degree() == 1 => {
                    Coord::Field(fd.element(vec![*r])?)
                }
                _ => bail!("coordinate {} does not fit factor {}", serde_json::to_string(c)?, factor_name(f)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let x = GroupElement::new(coords);
    g.check(&x)?;
    Ok(x)
}

fn factor_name(f: &GroupFactor) -> String {
    match f {
        GroupFactor::Cyclic(n) => format!("Z_{n}"),
        GroupFactor::Field(fd) => format!("GF({})", fd.order()),
    }
}

pub fn elements_from_spec(g: &GroupDescriptor, spec: &[ElementSpec]) -> Result<Vec<GroupElement>> {
    spec.iter().map(|x| element_from_spec(g, x)).collect()
}

pub fn elements_to_spec(xs: &[GroupElement]) -> Vec<ElementSpec> {
    xs.iter().map(element_to_spec).collect()
}

impl DesignFile {
    pub fn from_blocks(kind: Kind, g: &GroupDescriptor, params: Vec<u64>, blocks: &[Vec<GroupElement>]) -> Self {
        DesignFile {
            kind,
            group: group_to_spec(g),
            params,
            blocks: Some(blocks.iter().map(|b| elements_to_spec(b)).collect()),
            rows: None,
            subgroup: None,
        }
    }

    pub fn from_matrix(kind: Kind, m: &DiffMatrix, params: Vec<u64>) -> Self {
        DesignFile {
            kind,
            group: group_to_spec(m.group()),
            params,
            blocks: None,
            rows: Some(m.rows().iter().map(|r| elements_to_spec(r)).collect()),
            subgroup: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Deterministic rendering with one block, row or subgroup per line.
    pub fn render(&self) -> Result<String> {
        let mut out = String::from("{\n");
        writeln!(out, "  \"kind\": {},", serde_json::to_string(&self.kind)?)?;
        writeln!(out, "  \"group\": {},", serde_json::to_string(&self.group)?)?;
        write!(out, "  \"params\": {}", serde_json::to_string(&self.params)?)?;
        for (key, lines) in [("blocks", &self.blocks), ("rows", &self.rows)] {
            if let Some(lines) = lines {
                write!(out, ",\n  \"{key}\": [")?;
                for (i, line) in lines.iter().enumerate() {
                    let sep = if i == 0 { "" } else { "," };
                    write!(out, "{sep}\n    {}", serde_json::to_string(line)?)?;
                }
                out.push_str(if lines.is_empty() { "]" } else { "\n  ]" });
            }
        }
        if let Some(s) = &self.subgroup {
            write!(out, ",\n  \"subgroup\": {}", serde_json::to_string(s)?)?;
        }
        out.push_str("\n}\n");
        Ok(out)
    }
}
