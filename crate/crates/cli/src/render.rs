//! Plain-text alignment and CSV assembly.

use crate::error::CliResult;

/// Column-aligned text. Columns listed in `right` are right-aligned; each
/// line is indented by `indent` spaces and has no trailing whitespace.
pub fn align(rows: &[Vec<String>], indent: usize, right: &[usize]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if right.contains(&c) {
                    format!("{s:>w$}", w = width[c])
                } else {
                    format!("{s:<w$}", w = width[c])
                }
            })
            .collect();
        out += &" ".repeat(indent);
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}

pub struct Csv {
    w: csv::Writer<Vec<u8>>,
}

impl Csv {
    pub fn new() -> Self {
        Csv { w: csv::Writer::from_writer(Vec::new()) }
    }

    pub fn record<I, T>(&mut self, fields: I) -> CliResult<()>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        Ok(self.w.write_record(fields)?)
    }

    pub fn finish(self) -> CliResult<String> {
        let bytes = self.w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }
}

impl Default for Csv {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligns() {
        let rows = vec![vec!["a".into(), "10".into()], vec!["bbb".into(), "2".into()]];
        assert_eq!(align(&rows, 1, &[1]), " a    10\n bbb   2\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut c = Csv::new();
        c.record(["x,y", "1"]).unwrap();
        assert_eq!(c.finish().unwrap(), "\"x,y\",1\n");
    }
}
