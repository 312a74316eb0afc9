//! The published numeric tables, with their printed digits kept verbatim in
//! golden files.
//!
//! A golden file has `# key: value` header lines followed by one row per
//! line, `input printed`. Real tables are compared by truncating the
//! computed value to the printed number of decimals; approximate tables
//! (`compare: within tol`) by distance.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{complex_json, parse_complex, q_of_z, ComplexPoint, EvalOptions, EvalResult, Route};
use crate::subsets::{parse, SubsetSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    Ex11,
    Ex41Real,
    Ex41Imag,
    Ex42,
    Ex43,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::Ex11, TableId::Ex41Real, TableId::Ex41Imag, TableId::Ex42, TableId::Ex43];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Ex11 => "ex1.1",
            TableId::Ex41Real => "ex4.1-real",
            TableId::Ex41Imag => "ex4.1-imag",
            TableId::Ex42 => "ex4.2",
            TableId::Ex43 => "ex4.3",
        }
    }

    fn source(self) -> &'static str {
        match self {
            TableId::Ex11 => include_str!("../golden/ex1.1.txt"),
            TableId::Ex41Real => include_str!("../golden/ex4.1-real.txt"),
            TableId::Ex41Imag => include_str!("../golden/ex4.1-imag.txt"),
            TableId::Ex42 => include_str!("../golden/ex4.2.txt"),
            TableId::Ex43 => include_str!("../golden/ex4.3.txt"),
        }
    }

    pub fn golden(self) -> GoldenTable {
        GoldenTable::parse(self.source()).expect("bundled golden file is well formed")
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| {
            let known: Vec<_> = TableId::ALL.iter().map(|t| t.name()).collect();
            Error::invalid(format!("unknown table {s:?}; expected one of {}", known.join(", ")))
        })
    }
}

/// How the variable column maps to `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Q,
    /// `q = exp(−2πi/z)`.
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparison {
    /// Computed decimals truncated to the printed length must equal the
    /// printed string.
    Truncate,
    Within(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRow {
    /// Input exactly as printed, e.g. `1+.10i`.
    pub input: String,
    pub printed: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenTable {
    pub subset: SubsetSpec,
    pub variable: Variable,
    pub comparison: Comparison,
    pub rows: Vec<GoldenRow>,
}

impl GoldenTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut subset = None;
        let mut variable = None;
        let mut comparison = None;
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(header) = line.strip_prefix('#') {
                let (key, value) =
                    header.split_once(':').ok_or_else(|| Error::invalid(format!("malformed header {line:?}")))?;
                let value = value.trim();
                match key.trim() {
                    "subset" => subset = Some(parse(value)?),
                    "variable" => {
                        variable = Some(match value {
                            "q" => Variable::Q,
                            "z" => Variable::Z,
                            other => return Err(Error::invalid(format!("unknown variable {other:?}"))),
                        })
                    }
                    "compare" => {
                        comparison = Some(match value.split_whitespace().collect::<Vec<_>>()[..] {
                            ["truncate"] => Comparison::Truncate,
                            ["within", tol] => Comparison::Within(
                                tol.parse().map_err(|_| Error::invalid(format!("bad tolerance {tol:?}")))?,
                            ),
                            _ => return Err(Error::invalid(format!("unknown comparison {value:?}"))),
                        })
                    }
                    other => return Err(Error::invalid(format!("unknown header {other:?}"))),
                }
                continue;
            }
            let (input, printed) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::invalid(format!("malformed row {line:?}")))?;
            rows.push(GoldenRow { input: input.to_string(), printed: printed.trim().to_string() });
        }
        let missing = |what| Error::invalid(format!("golden table lacks a {what} header"));
        Ok(GoldenTable {
            subset: subset.ok_or_else(|| missing("subset"))?,
            variable: variable.ok_or_else(|| missing("variable"))?,
            comparison: comparison.ok_or_else(|| missing("compare"))?,
            rows,
        })
    }

    /// The evaluation point for a printed input.
    pub fn point(&self, input: &str) -> Result<ComplexPoint> {
        let x = parse_complex(input)?;
        match self.variable {
            Variable::Q => ComplexPoint::new(x),
            Variable::Z => q_of_z(x),
        }
    }

    /// Whether `value` reproduces `printed`. Truncated tables print real
    /// numbers and are compared on the real part.
    pub fn matches(&self, value: Complex64, printed: &str) -> bool {
        match self.comparison {
            Comparison::Truncate => {
                let digits = printed.split_once('.').map_or(0, |(_, frac)| frac.len());
                truncate_decimal(value.re, digits) == printed
            }
            Comparison::Within(tol) => parse_complex(printed).is_ok_and(|p| (value - p).norm() <= tol),
        }
    }
}

/// `x` cut (not rounded) to `digits` decimals, from its exact binary value.
pub fn truncate_decimal(x: f64, digits: usize) -> String {
    // every finite double has at most 1074 fractional decimal digits, so
    // this expansion is exact
    let exact = format!("{:.1074}", x);
    let cut = match exact.split_once('.') {
        Some((int, frac)) if digits > 0 => format!("{int}.{}", &frac[..digits]),
        Some((int, _)) => int.to_string(),
        None => exact,
    };
    if cut.starts_with('-') && cut[1..].chars().all(|c| c == '0' || c == '.') {
        cut[1..].to_string()
    } else {
        cut
    }
}

/// `re+imi` truncated to `digits` decimals in each part.
pub fn truncate_complex(z: Complex64, digits: usize) -> String {
    let im = truncate_decimal(z.im.abs(), digits);
    let sign = if z.im < 0.0 && im.chars().any(|c| c.is_ascii_digit() && c != '0') { '-' } else { '+' };
    format!("{}{sign}{im}i", truncate_decimal(z.re, digits))
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub input: String,
    pub q: Complex64,
    /// Abscissa for plotting: `Im z` for `z` tables, `|q|` otherwise.
    pub x: f64,
    pub printed: String,
    pub result: Result<EvalResult>,
}

impl TableRow {
    pub fn matches(&self, table: &GoldenTable) -> bool {
        self.result.as_ref().is_ok_and(|r| table.matches(r.value, &self.printed))
    }
}

impl Serialize for TableRow {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut v = serde_json::json!({
            "input": self.input,
            "q": complex_json(self.q),
            "printed": self.printed,
        });
        match &self.result {
            Ok(r) => {
                v["value"] = complex_json(r.value);
                v["bound"] = r.bound.into();
                v["terms"] = r.terms_used.into();
            }
            Err(e) => v["error"] = e.to_string().into(),
        }
        v.serialize(serializer)
    }
}

/// Evaluates every row of a table with the direct route.
pub fn compute(id: TableId, opts: &EvalOptions) -> Result<(GoldenTable, Vec<TableRow>)> {
    compute_with(id, Route::Direct, opts)
}

pub fn compute_with(id: TableId, route: Route, opts: &EvalOptions) -> Result<(GoldenTable, Vec<TableRow>)> {
    let table = id.golden();
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let point = table.point(&row.input)?;
            let x = match table.variable {
                Variable::Z => parse_complex(&row.input)?.im,
                Variable::Q => point.modulus(),
            };
            Ok(TableRow {
                input: row.input.clone(),
                q: point.value(),
                x,
                printed: row.printed.clone(),
                result: route.evaluate(&table.subset, point, opts),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((table, rows))
}
