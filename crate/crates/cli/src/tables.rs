//! Rows of lifted coefficient pairs and the eigenvalues they determine.

use gpspec_core::lift::{LiftState3, LiftState4};
use gpspec_core::{Error, Int, Spectrum};

use crate::dto::{LiftRowDoc, TableDoc};
use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftRow {
    pub ell: u32,
    pub x: Int,
    pub y: Int,
    /// `(p, e)` with `q = p^e`.
    pub q: (u64, u32),
    /// Distinct non-principal eigenvalues, descending.
    pub eigenvalues: Vec<Int>,
    pub principal: Int,
}

impl LiftRow {
    fn new(ell: u32, x: &Int, y: &Int, p: u64, e: u32, s: &Spectrum) -> Self {
        LiftRow {
            ell,
            x: x.clone(),
            y: y.clone(),
            q: (p, e),
            eigenvalues: s.distinct_non_principal(),
            principal: s.principal.clone(),
        }
    }

    pub fn doc(&self) -> LiftRowDoc {
        LiftRowDoc {
            ell: self.ell,
            x: self.x.to_string(),
            y: self.y.to_string(),
            q: format!("{}^{}", self.q.0, self.q.1),
            eigenvalues: self.eigenvalues.iter().map(Int::to_string).collect(),
            principal: self.principal.to_string(),
        }
    }
}

/// Lift parameters after defaults: `(t, s)` for `k = 3`, `(1, 0)` for `k = 4`.
pub fn lift_params(k: u32, p: u64, t: Option<u32>, s: Option<u32>) -> CliResult<(u32, u32)> {
    match k {
        3 => {
            let st = LiftState3::new(p, t, s.unwrap_or(0))?;
            Ok((st.t, st.s))
        }
        4 => {
            if t.is_some_and(|t| t != 1) || s.is_some_and(|s| s != 0) {
                return Err(Error::BadInput("the k = 4 lift has t = 1 and s = 0".into()).into());
            }
            Ok((1, 0))
        }
        _ => Err(Error::OutOfScope(format!("k = {k} is not 3 or 4")).into()),
    }
}

/// Rows for every level from the first defined one up to `last`, computed
/// from the base representation by the lifting recursion only.
pub fn lift_rows(k: u32, p: u64, t: Option<u32>, s: Option<u32>, last: u32) -> CliResult<Vec<LiftRow>> {
    let mut rows = Vec::new();
    match k {
        3 => {
            let mut st = LiftState3::new(p, t, s.unwrap_or(0))?;
            while st.ell <= last {
                st.check_invariants()?;
                let sp = st.spectrum()?;
                rows.push(LiftRow::new(st.ell, &st.pair.x, &st.pair.y, p, 3 * st.cube_root_exponent(), &sp));
                st.advance();
            }
        }
        _ => {
            lift_params(k, p, t, s)?;
            let mut st = LiftState4::new(p)?;
            while st.ell <= last {
                st.check_invariants()?;
                let sp = st.spectrum()?;
                rows.push(LiftRow::new(st.ell, &st.pair.x, &st.pair.y, p, 4 * st.ell, &sp));
                st.advance();
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::BadInput(format!("no lift level at or below {last}")).into());
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub id: u8,
    pub k: u32,
    pub title: &'static str,
    pub notes: &'static [&'static str],
    pub rows: Vec<LiftRow>,
}

const ORDER_NOTE: &str = "non-principal eigenvalues in descending order, each with multiplicity n";

pub fn table(id: u8) -> CliResult<Table> {
    let (k, title, notes, rows): (u32, &'static str, &'static [&'static str], _) = match id {
        1 => (3, "Γ(3, 7^(9l+3)): base (10, 3) with t = 3, offset (1, 1) with s = 1", &[ORDER_NOTE], lift_rows(3, 7, Some(3), Some(1), 4)?),
        2 => (
            3,
            "Γ(3, 31^(3l)): base (-2, 1) with t = 1, s = 0",
            &[
                ORDER_NOTE,
                "erratum: rows are Γ(3, 31^(3l)), not Γ(3, 31^l)",
                "erratum: n = (31^(3l) - 1)/3; the 7^(9l+3) principal values do not apply here",
            ],
            lift_rows(3, 31, Some(1), Some(0), 5)?,
        ),
        3 => (4, "Γ(4, 5^(4l)): base (c, d) = (-3, 2)", &[ORDER_NOTE], lift_rows(4, 5, None, None, 5)?),
        _ => return Err(Error::BadInput(format!("no table {id}")).into()),
    };
    Ok(Table { id, k, title, notes, rows })
}

impl Table {
    pub fn doc(&self) -> TableDoc {
        TableDoc {
            id: self.id,
            title: self.title.to_string(),
            notes: self.notes.iter().map(|s| s.to_string()).collect(),
            rows: self.rows.iter().map(LiftRow::doc).collect(),
        }
    }
}

/// CSV header for `k`: `ell`, the coefficient pair, `q`, the eigenvalues, `n`.
pub fn csv_header(k: u32) -> Vec<String> {
    let pair = if k == 3 { ["a", "b"] } else { ["c", "d"] };
    let mut h = vec!["ell".to_string(), pair[0].into(), pair[1].into(), "q".into()];
    h.extend((1..=k).map(|i| format!("lambda_{i}")));
    h.push("n".into());
    h
}

pub fn csv_record(row: &LiftRow) -> Vec<String> {
    let d = row.doc();
    let mut r = vec![d.ell.to_string(), d.x, d.y, d.q];
    r.extend(d.eigenvalues);
    r.push(d.principal);
    r
}
