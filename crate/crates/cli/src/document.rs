//! Plain-text documents holding matrices, structure-constant tables,
//! and degree vectors.
//!
//! Shared lexical rules: `#` starts a comment running to end of line;
//! blank lines are ignored; header lines `key: value` may precede the
//! data.  A `form:` header names the payload (`S`, `s`, `P`,
//! `lambda-table`, or `degrees`) and overrides whatever form the caller
//! expected; `rank:` declares the rank of a `lambda-table`.
//!
//! Data lines are comma-separated exact scalar expressions:
//!
//! ```text
//! # a 2×2 matrix
//! form: S
//! 1/2*E(8) - 1/2*E(8)^3, 1/2*E(8) - 1/2*E(8)^3
//! 1/2*E(8) - 1/2*E(8)^3, -1/2*E(8) + 1/2*E(8)^3
//! ```
//!
//! A `lambda-table` document lists one `i, j, k, value` quadruple per
//! line; omitted triples are zero.  A `degrees` document holds a single
//! comma-separated row.

use crate::parser::{parse_scalar_at, ParseError};
use fourier_core::{Cyclotomic, ExactMatrix};

/// What a document's payload denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentForm {
    /// A unitary-normalized symmetric matrix (rows scaled by 1/√dᵢ).
    Fourier,
    /// A first-column-normalized character-like matrix (sᵢⱼ = Sᵢⱼ/Sᵢ₀).
    Normalized,
    /// An unnormalized table (pᵢⱼ = sᵢⱼ·s₀ⱼ).
    Table,
    /// Sparse structure constants λᵢⱼₖ.
    LambdaTable,
    /// A vector of degrees.
    Degrees,
}

impl DocumentForm {
    /// The token used in `form:` headers and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            DocumentForm::Fourier => "S",
            DocumentForm::Normalized => "s",
            DocumentForm::Table => "P",
            DocumentForm::LambdaTable => "lambda-table",
            DocumentForm::Degrees => "degrees",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "S" => Some(DocumentForm::Fourier),
            "s" => Some(DocumentForm::Normalized),
            "P" => Some(DocumentForm::Table),
            "lambda-table" => Some(DocumentForm::LambdaTable),
            "degrees" => Some(DocumentForm::Degrees),
            _ => None,
        }
    }

    pub fn is_matrix(self) -> bool {
        matches!(
            self,
            DocumentForm::Fourier | DocumentForm::Normalized | DocumentForm::Table
        )
    }
}

/// A sparse structure-constant table: entries are (i, j, k, λᵢⱼₖ) with
/// every omitted triple equal to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseLambda {
    pub rank: usize,
    pub entries: Vec<(usize, usize, usize, Cyclotomic)>,
}

impl SparseLambda {
    /// Expands to the dense rank³ row-major table.
    pub fn to_dense(&self) -> Vec<Cyclotomic> {
        let r = self.rank;
        let mut dense = vec![Cyclotomic::zero(); r * r * r];
        for (i, j, k, value) in &self.entries {
            dense[(i * r + j) * r + k] = value.clone();
        }
        dense
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentPayload {
    Matrix(ExactMatrix),
    Lambda(SparseLambda),
    Degrees(Vec<Cyclotomic>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub form: DocumentForm,
    pub payload: DocumentPayload,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col, message: message.into() }
}

/// Strips the comment from a line, preserving byte offsets of what remains.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Parses a document.  `default_form` applies when no `form:` header is
/// present; a header always wins so generated files can be piped into any
/// command.
pub fn parse_document(
    text: &str,
    default_form: DocumentForm,
) -> Result<MatrixDocument, ParseError> {
    let mut form: Option<DocumentForm> = None;
    let mut rank: Option<(usize, usize)> = None; // (value, header line)
    let mut data: Vec<(usize, &str)> = Vec::new(); // (1-based line, stripped text)

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("form:") {
            if !data.is_empty() {
                return Err(err(lineno, 1, "form header must precede the data"));
            }
            if form.is_some() {
                return Err(err(lineno, 1, "duplicate form header"));
            }
            let token = rest.trim();
            form = Some(DocumentForm::from_token(token).ok_or_else(|| {
                err(
                    lineno,
                    1,
                    format!("unknown form `{token}` (expected S, s, P, lambda-table, or degrees)"),
                )
            })?);
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("rank:") {
            if rank.is_some() {
                return Err(err(lineno, 1, "duplicate rank header"));
            }
            let token = rest.trim();
            let value: usize = token
                .parse()
                .map_err(|_| err(lineno, 1, format!("invalid rank `{token}`")))?;
            if value == 0 {
                return Err(err(lineno, 1, "rank must be at least 1"));
            }
            rank = Some((value, lineno));
            continue;
        }
        data.push((lineno, line));
    }

    let form = form.unwrap_or(default_form);
    if let Some((_, header_line)) = rank {
        if form != DocumentForm::LambdaTable {
            return Err(err(
                header_line,
                1,
                "rank header is only meaningful for lambda-table documents",
            ));
        }
    }
    if data.is_empty() {
        return Err(err(text.lines().count() + 1, 1, "document contains no data"));
    }

    let payload = match form {
        DocumentForm::Fourier | DocumentForm::Normalized | DocumentForm::Table => {
            DocumentPayload::Matrix(parse_matrix_lines(&data)?)
        }
        DocumentForm::LambdaTable => {
            let (rank, _) = rank.ok_or_else(|| {
                err(data[0].0, 1, "lambda-table documents require a `rank: N` header")
            })?;
            DocumentPayload::Lambda(parse_lambda_lines(&data, rank)?)
        }
        DocumentForm::Degrees => {
            if data.len() > 1 {
                return Err(err(data[1].0, 1, "degrees documents hold a single row"));
            }
            let (lineno, line) = data[0];
            DocumentPayload::Degrees(parse_row(line, lineno)?)
        }
    };
    Ok(MatrixDocument { form, payload })
}

/// Splits a data line into cells and parses each as an exact scalar,
/// reporting positions within the original line.
fn parse_row(line: &str, lineno: usize) -> Result<Vec<Cyclotomic>, ParseError> {
    let mut cells = Vec::new();
    let mut start = 0usize;
    for piece in line.split(',') {
        cells.push(parse_scalar_at(piece, lineno, start)?);
        start += piece.len() + 1;
    }
    Ok(cells)
}

fn parse_matrix_lines(data: &[(usize, &str)]) -> Result<ExactMatrix, ParseError> {
    let mut rows = Vec::with_capacity(data.len());
    let mut width: Option<usize> = None;
    for &(lineno, line) in data {
        let row = parse_row(line, lineno)?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(err(
                    lineno,
                    1,
                    format!("row has {} entries but earlier rows have {w}", row.len()),
                ));
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows).map_err(|e| err(data[0].0, 1, e.to_string()))
}

/// Parses an unsigned index cell, reporting its position.
fn parse_index(piece: &str, lineno: usize, col_offset: usize) -> Result<usize, ParseError> {
    let trimmed = piece.trim();
    let lead = piece.len() - piece.trim_start().len();
    trimmed
        .parse::<usize>()
        .map_err(|_| err(lineno, col_offset + lead + 1, format!("invalid index `{trimmed}`")))
}

fn parse_lambda_lines(
    data: &[(usize, &str)],
    rank: usize,
) -> Result<SparseLambda, ParseError> {
    let mut entries = Vec::with_capacity(data.len());
    for &(lineno, line) in data {
        let pieces: Vec<&str> = line.split(',').collect();
        if pieces.len() != 4 {
            return Err(err(
                lineno,
                1,
                format!("lambda-table lines have 4 fields `i, j, k, value`, found {}", pieces.len()),
            ));
        }
        let mut offset = 0usize;
        let mut index = |piece: &str| {
            let value = parse_index(piece, lineno, offset);
            offset += piece.len() + 1;
            value
        };
        let i = index(pieces[0])?;
        let j = index(pieces[1])?;
        let k = index(pieces[2])?;
        for (label, value) in [("i", i), ("j", j), ("k", k)] {
            if value >= rank {
                return Err(err(
                    lineno,
                    1,
                    format!("index {label} = {value} is out of range for rank {rank}"),
                ));
            }
        }
        let value = parse_scalar_at(pieces[3], lineno, offset)?;
        entries.push((i, j, k, value));
    }
    Ok(SparseLambda { rank, entries })
}

/// Prints a document in the exact grammar [`parse_document`] accepts, with
/// a `form:` header so the output can be piped into another command.
pub fn print_document(doc: &MatrixDocument) -> String {
    let mut out = String::new();
    out.push_str("form: ");
    out.push_str(doc.form.token());
    out.push('\n');
    match &doc.payload {
        DocumentPayload::Matrix(matrix) => {
            for i in 0..matrix.rows() {
                let row: Vec<String> =
                    matrix.row(i).iter().map(|entry| entry.to_string()).collect();
                out.push_str(&row.join(", "));
                out.push('\n');
            }
        }
        DocumentPayload::Lambda(table) => {
            out.push_str(&format!("rank: {}\n", table.rank));
            for (i, j, k, value) in &table.entries {
                out.push_str(&format!("{i}, {j}, {k}, {value}\n"));
            }
        }
        DocumentPayload::Degrees(degrees) => {
            let row: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
            out.push_str(&row.join(", "));
            out.push('\n');
        }
    }
    out
}
