//! Step traces returned by every algorithm, and their renderers.
//!
//! A trace is plain data. The text renderer lays boards out as right-aligned
//! lines keyed by place value and tables under a fixed column header; the
//! structured renderer emits JSON tagged with `"schema": "1"`.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digitboard::DigitBoard;
use crate::quantity::Quantity;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("malformed trace: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported trace schema {0:?}")]
    UnsupportedSchema(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub schema: String,
    pub algorithm: String,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub index: usize,
    pub label: String,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Board(BoardSnapshot),
    Table(TableRows),
    Binding { values: IndexMap<String, Quantity> },
    Note { text: String },
}

/// A run of digits whose units cell sits at `place` (0 = units column).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedLine {
    pub digits: DigitBoard,
    pub place: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardSnapshot {
    /// Transient line written over the board before it is merged.
    pub upper: Option<PlacedLine>,
    /// The working line; its units cell is at place 0.
    pub board: DigitBoard,
    pub multiplier: Option<PlacedLine>,
    /// How many places the multiplier has moved since the first stage.
    pub shift: usize,
    /// Set when a carry ran past the left edge of the board as written.
    pub grew_left: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRows {
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub cells: IndexMap<String, Quantity>,
}

impl Trace {
    pub fn new(algorithm: impl Into<String>) -> Self {
        Trace { schema: SCHEMA_VERSION.to_string(), algorithm: algorithm.into(), steps: Vec::new() }
    }

    /// Appends a step, numbering it after the last one.
    pub fn push(&mut self, label: impl Into<String>, payload: Payload) {
        let index = self.steps.len() + 1;
        self.steps.push(Step { index, label: label.into(), payload });
    }

    pub fn note(&mut self, label: impl Into<String>, text: impl Into<String>) {
        self.push(label, Payload::Note { text: text.into() });
    }

    pub fn bind<K: Into<String>>(&mut self, label: impl Into<String>, values: impl IntoIterator<Item = (K, Quantity)>) {
        let values = values.into_iter().map(|(k, v)| (k.into(), v)).collect();
        self.push(label, Payload::Binding { values });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn boards(&self) -> impl Iterator<Item = &BoardSnapshot> {
        self.steps.iter().filter_map(|s| match &s.payload {
            Payload::Board(b) => Some(b),
            _ => None,
        })
    }

    pub fn tables(&self) -> impl Iterator<Item = (&Step, &TableRows)> {
        self.steps.iter().filter_map(|s| match &s.payload {
            Payload::Table(t) => Some((s, t)),
            _ => None,
        })
    }

    /// Looks up the latest binding of `name` anywhere in the trace.
    pub fn binding(&self, name: &str) -> Option<&Quantity> {
        self.steps.iter().rev().find_map(|s| match &s.payload {
            Payload::Binding { values } => values.get(name),
            _ => None,
        })
    }

    pub fn render(&self, format: TraceFormat) -> String {
        match format {
            TraceFormat::Text => self.render_text(),
            TraceFormat::Structured => self.to_json(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let body = render_step(step);
            let mut lines = body.lines();
            if let Some(first) = lines.next() {
                let _ = writeln!(out, "{:>2}. {}", step.index, first);
            }
            for line in lines {
                let _ = writeln!(out, "    {line}");
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("traces always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, TraceError> {
        let trace: Trace = serde_json::from_str(text)?;
        if trace.schema != SCHEMA_VERSION {
            return Err(TraceError::UnsupportedSchema(trace.schema));
        }
        Ok(trace)
    }
}

/// Renders one step: its label, then the payload lines (if any).
pub fn render_step(step: &Step) -> String {
    let body = match &step.payload {
        Payload::Board(b) => render_board(b),
        Payload::Table(t) => render_table(t),
        Payload::Binding { values } => values
            .iter()
            .map(|(k, v)| format!("{k} = {}", render_value(v)))
            .collect::<Vec<_>>()
            .join("\n"),
        Payload::Note { text } => text.clone(),
    };
    if body.is_empty() {
        step.label.clone()
    } else {
        format!("{}\n{}", step.label, body)
    }
}

fn render_value(q: &Quantity) -> String {
    if q.is_nothing() {
        "nothing".to_string()
    } else {
        q.to_string()
    }
}

/// Lines are right-aligned so that each sits with its units digit under
/// its place on the board.
pub fn render_board(snapshot: &BoardSnapshot) -> String {
    let mut lines: Vec<(String, usize)> = Vec::new();
    if let Some(upper) = &snapshot.upper {
        lines.push((upper.digits.to_string(), upper.place));
    }
    lines.push((snapshot.board.to_string(), 0));
    if let Some(m) = &snapshot.multiplier {
        lines.push((m.digits.to_string(), m.place));
    }
    let width = lines.iter().map(|(s, place)| s.len() + place).max().unwrap_or(0);
    lines
        .iter()
        .map(|(s, place)| format!("{}{}", " ".repeat(width - place - s.len()), s))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Header of column names, then one line per row. Each column is as wide as
/// its widest cell; nothing-cells inside a row print as `0`.
pub fn render_table(table: &TableRows) -> String {
    let label_width = table.rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
    let widths: Vec<usize> = table
        .columns
        .iter()
        .map(|c| {
            table
                .rows
                .iter()
                .filter_map(|r| r.cells.get(c))
                .map(|q| q.to_string().len())
                .chain(std::iter::once(c.len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut lines = Vec::with_capacity(table.rows.len() + 1);
    let mut header = format!("{:label_width$}", "");
    for (c, w) in table.columns.iter().zip(&widths) {
        let _ = write!(header, " {c:>w$}");
    }
    lines.push(header.trim_end().to_string());
    for row in &table.rows {
        let mut line = format!("{:label_width$}", row.label);
        for (c, w) in table.columns.iter().zip(&widths) {
            let cell = row.cells.get(c).map(|q| q.to_string()).unwrap_or_default();
            let _ = write!(line, " {cell:>w$}");
        }
        lines.push(line.trim_end().to_string());
    }
    lines.join("\n")
}
