//! JSON documents. Every eigenvalue, multiplicity and energy is a decimal
//! string.

use gpspec_core::energy::EnergyReport;
use gpspec_core::family::FamilyWitness;
use gpspec_core::{GraphSpec, Int, LiftPair, Spectrum, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

fn dec(v: &Int) -> String {
    v.to_string()
}

fn parse_int(s: &str) -> CliResult<Int> {
    s.parse().map_err(|_| CliError::Input(format!("{s:?} is not a decimal integer")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub k: u32,
    pub p: u64,
    pub m: u32,
    pub variant: String,
}

impl From<&GraphSpec> for GraphDoc {
    fn from(g: &GraphSpec) -> Self {
        GraphDoc { k: g.k, p: g.p, m: g.m, variant: g.variant.name().to_string() }
    }
}

impl GraphDoc {
    pub fn to_spec(&self) -> CliResult<GraphSpec> {
        let variant: Variant = self.variant.parse()?;
        Ok(GraphSpec::new(self.k, self.p, self.m, variant))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenDoc {
    pub value: String,
    pub mult: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub graph: GraphDoc,
    pub oracle: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
    pub order: String,
    pub principal: String,
    pub loops: String,
    pub spectrum: Vec<EigenDoc>,
    pub energy: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verify: Vec<CheckDoc>,
}

impl SpectrumDoc {
    pub fn new(graph: Option<&GraphSpec>, s: &Spectrum) -> Self {
        SpectrumDoc {
            graph: graph.map(GraphDoc::from),
            order: dec(&s.order),
            principal: dec(&s.principal),
            loops: dec(&s.loops),
            spectrum: s.entries.iter().map(|(v, m)| EigenDoc { value: dec(v), mult: dec(m) }).collect(),
            energy: dec(&gpspec_core::energy::energy(s)),
            verify: Vec::new(),
        }
    }

    pub fn to_spectrum(&self) -> CliResult<Spectrum> {
        let values = self
            .spectrum
            .iter()
            .map(|e| Ok((parse_int(&e.value)?, parse_int(&e.mult)?)))
            .collect::<CliResult<Vec<_>>>()?;
        let s = Spectrum::new(parse_int(&self.order)?, parse_int(&self.principal)?, parse_int(&self.loops)?, values);
        if dec(&gpspec_core::energy::energy(&s)) != self.energy {
            return Err(CliError::Input(format!("energy {} does not match the spectrum", self.energy)));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
    pub energy: String,
    pub complement_energy: String,
    pub positive_nonprincipal_count: usize,
    pub equienergetic: bool,
    pub criterion_agrees: bool,
}

impl EnergyDoc {
    pub fn new(graph: Option<&GraphSpec>, r: &EnergyReport) -> Self {
        EnergyDoc {
            graph: graph.map(GraphDoc::from),
            energy: dec(&r.energy),
            complement_energy: dec(&r.complement_energy),
            positive_nonprincipal_count: r.positive_nonprincipal_count,
            equienergetic: r.equienergetic,
            criterion_agrees: r.criterion_agrees,
        }
    }

    pub fn to_report(&self) -> CliResult<EnergyReport> {
        Ok(EnergyReport {
            energy: parse_int(&self.energy)?,
            complement_energy: parse_int(&self.complement_energy)?,
            positive_nonprincipal_count: self.positive_nonprincipal_count,
            equienergetic: self.equienergetic,
            criterion_agrees: self.criterion_agrees,
        })
    }
}

/// Energy alone, with bounds or the closed form when one applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyOnlyDoc {
    pub graph: GraphDoc,
    pub energy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub p: u64,
    pub k: u32,
    pub t: u32,
    pub s: u32,
    pub ell: u32,
    pub x: String,
    pub y: String,
    pub equienergetic: bool,
    pub interval_hit: bool,
    pub q_digits: usize,
}

impl From<&FamilyWitness> for WitnessDoc {
    fn from(w: &FamilyWitness) -> Self {
        WitnessDoc {
            p: w.p,
            k: w.k,
            t: w.t,
            s: w.s,
            ell: w.ell,
            x: dec(&w.pair.x),
            y: dec(&w.pair.y),
            equienergetic: w.equienergetic,
            interval_hit: w.interval_hit,
            q_digits: w.q_digits,
        }
    }
}

impl WitnessDoc {
    pub fn to_witness(&self) -> CliResult<FamilyWitness> {
        Ok(FamilyWitness {
            p: self.p,
            k: self.k,
            t: self.t,
            s: self.s,
            ell: self.ell,
            pair: LiftPair::new(parse_int(&self.x)?, parse_int(&self.y)?),
            equienergetic: self.equienergetic,
            interval_hit: self.interval_hit,
            q_digits: self.q_digits,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub p: u64,
    pub k: u32,
    pub ell_max: u32,
    pub hits: Vec<u32>,
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftRowDoc {
    pub ell: u32,
    pub x: String,
    pub y: String,
    pub q: String,
    pub eigenvalues: Vec<String>,
    pub principal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftDoc {
    pub k: u32,
    pub p: u64,
    pub t: u32,
    pub s: u32,
    pub rows: Vec<LiftRowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub id: u8,
    pub title: String,
    pub notes: Vec<String>,
    pub rows: Vec<LiftRowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub checks: Vec<CheckDoc>,
    pub mismatches: usize,
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> CliResult<T> {
    Ok(serde_json::from_str(s)?)
}
