//! Reference parameter tables and their reproduction.

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::Result;
use crate::field::FiniteField;
use crate::metrics::metrics;

/// One column of a reference table: `(d, m, κ, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub d: u32,
    pub length: u64,
    pub dimension: u64,
    pub min_distance: u64,
}

const fn row(d: u32, length: u64, dimension: u64, min_distance: u64) -> TableRow {
    TableRow {
        d,
        length,
        dimension,
        min_distance,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReferenceTable {
    pub name: &'static str,
    /// Field descriptor; every subset is the whole field.
    pub field: &'static str,
    pub deltas: &'static [i64],
    pub rows: &'static [TableRow],
}

/// GF(11)^3 with deltas {4, 5, 6}.
pub const TABLE_1: ReferenceTable = ReferenceTable {
    name: "table1",
    field: "11",
    deltas: &[4, 5, 6],
    rows: &[
        row(4, 1331, 35, 847),
        row(5, 1331, 56, 726),
        row(8, 1331, 150, 440),
        row(10, 1331, 221, 352),
        row(12, 1331, 280, 264),
        row(14, 1331, 316, 200),
        row(15, 1331, 326, 180),
        row(16, 1331, 332, 160),
        row(17, 1331, 335, 140),
        row(18, 1331, 336, 120),
    ],
};

/// GF(25)^2 with deltas {6, 7}.
pub const TABLE_2: ReferenceTable = ReferenceTable {
    name: "table2",
    field: "5^2",
    deltas: &[6, 7],
    rows: &[
        row(5, 625, 21, 500),
        row(6, 625, 28, 475),
        row(14, 625, 120, 275),
        row(15, 625, 136, 250),
        row(26, 625, 314, 108),
        row(27, 625, 325, 102),
        row(28, 625, 335, 96),
        row(35, 625, 377, 54),
        row(36, 625, 379, 48),
        row(37, 625, 380, 42),
    ],
};

pub const REFERENCE_TABLES: [ReferenceTable; 2] = [TABLE_1, TABLE_2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub d: u32,
    pub row: &'static str,
    pub expected: u64,
    pub computed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub name: &'static str,
    pub field: &'static str,
    pub deltas: Vec<i64>,
    pub computed: Vec<TableRow>,
    pub mismatches: Vec<CellMismatch>,
}

impl TableCheck {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl ReferenceTable {
    pub fn spec(&self, d: u32) -> Result<CodeSpec> {
        let field: FiniteField = self.field.parse()?;
        CodeSpec::full_space(field, self.deltas.to_vec(), d as i64)
    }

    pub fn compute(&self) -> Result<Vec<TableRow>> {
        self.rows
            .iter()
            .map(|r| {
                let m = metrics(&self.spec(r.d)?);
                Ok(row(r.d, m.length, m.dimension, m.min_distance))
            })
            .collect()
    }

    pub fn check(&self) -> Result<TableCheck> {
        let computed = self.compute()?;
        let mut mismatches = Vec::new();
        for (want, got) in self.rows.iter().zip(&computed) {
            let cells = [
                ("m", want.length, got.length),
                ("kappa", want.dimension, got.dimension),
                ("v", want.min_distance, got.min_distance),
            ];
            for (name, expected, computed) in cells {
                if expected != computed {
                    mismatches.push(CellMismatch {
                        d: want.d,
                        row: name,
                        expected,
                        computed,
                    });
                }
            }
        }
        Ok(TableCheck {
            name: self.name,
            field: self.field,
            deltas: self.deltas.to_vec(),
            computed,
            mismatches,
        })
    }
}

/// Rows `d`, `m`, `κ`, `v` with one right-aligned column per degree bound.
pub fn format_rows(rows: &[TableRow]) -> String {
    let lines: [(&str, Vec<u64>); 4] = [
        ("d", rows.iter().map(|r| r.d as u64).collect()),
        ("m", rows.iter().map(|r| r.length).collect()),
        ("κ", rows.iter().map(|r| r.dimension).collect()),
        ("v", rows.iter().map(|r| r.min_distance).collect()),
    ];
    let width = lines
        .iter()
        .flat_map(|(_, vs)| vs.iter().map(|v| v.to_string().len()))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (label, values) in &lines {
        out.push_str(&format!("{label:<2}|"));
        for v in values {
            out.push_str(&format!(" {v:>width$}"));
        }
        out.push('\n');
    }
    out
}
