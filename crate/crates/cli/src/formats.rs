//! Input documents: group and automaton JSON files, and edge-list graphs.
//!
//! ```text
//! {"degree": 5, "generators": ["(0 1 2 3 4)", "[1,0,2,3,4]"]}
//! {"states": 4, "letters": {"R": [1,2,3,0], "B": [1,1,2,3]}}
//! ```
//!
//! An edge-list graph is the vertex count on the first line, then one `u v`
//! pair per line. Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use syncgroups_core::graph::Graph;
use syncgroups_core::transform::{Automaton, Transformation};
use syncgroups_core::{PermGroup, Permutation};

use crate::error::{CliError, CliResult};

/// Current version of every document this crate reads or writes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub states: usize,
    pub letters: IndexMap<String, Vec<usize>>,
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, origin: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_version(version: Option<u32>, origin: &str) -> CliResult<()> {
    match version {
        Some(v) if v != FORMAT_VERSION => Err(CliError::Field {
            origin: origin.into(),
            field: "version".into(),
            message: format!("unsupported version {v}, expected {FORMAT_VERSION}"),
        }),
        _ => Ok(()),
    }
}

impl GroupDocument {
    pub fn from_group(g: &PermGroup, name: Option<String>) -> Self {
        GroupDocument {
            version: Some(FORMAT_VERSION),
            name,
            degree: g.degree(),
            generators: g.generators().iter().map(|p| format!("{:?}", p.images())).collect(),
        }
    }

    pub fn to_group(&self, origin: &str) -> CliResult<PermGroup> {
        check_version(self.version, origin)?;
        let field = |field: String, message: String| CliError::Field { origin: origin.into(), field, message };
        if self.degree == 0 {
            return Err(field("degree".into(), "must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(field("generators".into(), "need at least one generator".into()));
        }
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, s)| Permutation::parse(s, self.degree).map_err(|e| field(format!("generators[{i}]"), e.to_string())))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PermGroup::new(gens)?)
    }
}

impl AutomatonDocument {
    pub fn from_automaton(a: &Automaton) -> Self {
        AutomatonDocument {
            version: Some(FORMAT_VERSION),
            states: a.states(),
            letters: a.letters().iter().map(|(n, t)| (n.clone(), t.images().to_vec())).collect(),
        }
    }

    pub fn to_automaton(&self, origin: &str) -> CliResult<Automaton> {
        check_version(self.version, origin)?;
        let field = |field: String, message: String| CliError::Field { origin: origin.into(), field, message };
        if self.states == 0 {
            return Err(field("states".into(), "must be positive".into()));
        }
        if self.letters.is_empty() {
            return Err(field("letters".into(), "need at least one letter".into()));
        }
        let mut letters = Vec::with_capacity(self.letters.len());
        for (name, images) in &self.letters {
            if images.len() != self.states {
                return Err(field(
                    format!("letters.{name}"),
                    format!("expected {} images, found {}", self.states, images.len()),
                ));
            }
            let t = Transformation::new(images.clone()).map_err(|e| field(format!("letters.{name}"), e.to_string()))?;
            letters.push((name.clone(), t));
        }
        Ok(Automaton::new(self.states, letters)?)
    }
}

pub fn parse_group(text: &str, origin: &str) -> CliResult<PermGroup> {
    parse_json::<GroupDocument>(text, origin)?.to_group(origin)
}

pub fn load_group(path: &Path) -> CliResult<PermGroup> {
    parse_group(&read(path)?, &path.display().to_string())
}

pub fn parse_automaton(text: &str, origin: &str) -> CliResult<Automaton> {
    parse_json::<AutomatonDocument>(text, origin)?.to_automaton(origin)
}

pub fn load_automaton(path: &Path) -> CliResult<Automaton> {
    parse_automaton(&read(path)?, &path.display().to_string())
}

pub fn parse_edge_list(text: &str, origin: &str) -> CliResult<Graph> {
    let err = |line: usize, message: String| CliError::Line { origin: origin.into(), line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or_else(|| err(1, "missing vertex count".into()))?;
    let n: usize = header.parse().map_err(|_| err(first, format!("expected a vertex count, found {header:?}")))?;
    let mut g = Graph::null(n);
    for (line, text) in lines {
        let nums: Vec<&str> = text.split_whitespace().collect();
        let pair = match nums.as_slice() {
            [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
            _ => None,
        };
        let (u, v) = pair.ok_or_else(|| err(line, format!("expected \"u v\", found {text:?}")))?;
        if u == v {
            return Err(err(line, format!("loop at vertex {u}")));
        }
        g.add_edge(u, v).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn load_edge_list(path: &Path) -> CliResult<Graph> {
    parse_edge_list(&read(path)?, &path.display().to_string())
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A group given either as a file path or as a catalogue name.
pub fn resolve_group(source: &str) -> CliResult<(PermGroup, GroupDocument)> {
    let path = Path::new(source);
    if path.is_file() {
        let text = read(path)?;
        let origin = path.display().to_string();
        let doc: GroupDocument = parse_json(&text, &origin)?;
        let g = doc.to_group(&origin)?;
        return Ok((g, doc));
    }
    let g = syncgroups_core::catalogue::by_name(source).map_err(|e| {
        CliError::Usage(format!("{source:?} is neither a readable group file nor a catalogue group ({e})"))
    })?;
    let doc = GroupDocument::from_group(&g, Some(source.to_string()));
    Ok((g, doc))
}
