//! Graph input: graph6/sparse6 lines or edge-list JSON, from a file or stdin.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};

use nzflow_core::graph::EdgeListJson;
use nzflow_core::{parse_graph6, MultiGraph};

/// One graph with its 1-based position: the line number for text input,
/// the index in the array for JSON input.
#[derive(Debug, Clone)]
pub struct Record {
    pub id: usize,
    pub graph: MultiGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub id: usize,
    /// "line" for text input, "graph" for JSON input.
    pub unit: &'static str,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", self.unit, self.id, self.message)
    }
}

pub fn open<'a>(path: &str, stdin: &'a mut dyn BufRead) -> io::Result<Box<dyn BufRead + 'a>> {
    if path == "-" {
        Ok(Box::new(stdin))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

pub enum Records<'a> {
    Lines { reader: Box<dyn BufRead + 'a>, line: usize },
    Json(std::vec::IntoIter<Result<Record, InputError>>),
}

/// Sniffs the format from the first non-blank byte: `{` or `[` means JSON.
pub fn records<'a>(mut reader: Box<dyn BufRead + 'a>) -> io::Result<Records<'a>> {
    let first = loop {
        let buf = reader.fill_buf()?;
        if buf.is_empty() {
            break None;
        }
        match buf.iter().position(|b| !b.is_ascii_whitespace()) {
            Some(i) => break Some(buf[i]),
            None => {
                let len = buf.len();
                reader.consume(len);
            }
        }
    };
    if !matches!(first, Some(b'{' | b'[')) {
        return Ok(Records::Lines { reader, line: 0 });
    }
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let parsed: Vec<Result<Record, InputError>> = match serde_json::from_str::<serde_json::Value>(&text) {
        Err(e) => vec![Err(InputError { id: 1, unit: "graph", message: format!("invalid JSON: {e}") })],
        Ok(serde_json::Value::Array(items)) => items.into_iter().enumerate().map(|(i, v)| json_graph(i + 1, v)).collect(),
        Ok(v) => vec![json_graph(1, v)],
    };
    Ok(Records::Json(parsed.into_iter()))
}

fn json_graph(id: usize, value: serde_json::Value) -> Result<Record, InputError> {
    let list: EdgeListJson = serde_json::from_value(value).map_err(|e| InputError { id, unit: "graph", message: e.to_string() })?;
    let graph = MultiGraph::from_edge_list(&list).map_err(|e| InputError { id, unit: "graph", message: e.to_string() })?;
    Ok(Record { id, graph })
}

impl Iterator for Records<'_> {
    type Item = Result<Record, InputError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            Records::Json(items) => items.next(),
            Records::Lines { reader, line } => loop {
                let mut text = String::new();
                *line += 1;
                match reader.read_line(&mut text) {
                    Ok(0) => return None,
                    Err(e) => return Some(Err(InputError { id: *line, unit: "line", message: e.to_string() })),
                    Ok(_) => {}
                }
                let trimmed = text.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                return Some(
                    parse_graph6(trimmed)
                        .map(|graph| Record { id: *line, graph })
                        .map_err(|e| InputError { id: *line, unit: "line", message: e.to_string() }),
                );
            },
        }
    }
}
