//! Group and twist files.
//!
//! A twist file is line-oriented; `#` starts a comment:
//!
//! ```text
//! twist Fx
//! group heisenberg5.group
//! generators 25 1
//! form form[5,5][[0,1],[4,0]]
//! ```
//!
//! `generators` lists element indices of the group forming a basis of A, in
//! the order of the form's divisors. `group` is resolved relative to the twist
//! file and may be omitted when the group is given separately.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use twistlab_core::{AbelianStructure, FormTwist, PairingForm};
use twistlab_groups::{parse_group_spec, FiniteGroup, GroupSpec, Subgroup};

use crate::error::{CliError, OpError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistFile {
    pub name: String,
    pub group: Option<String>,
    pub generators: Vec<usize>,
    pub form: PairingForm,
}

pub fn parse_twist_file(text: &str, source_name: &str) -> Result<TwistFile, CliError> {
    let err = |line: usize, msg: String| CliError::parse(source_name, format!("line {line}: {msg}"));
    let mut name = None;
    let mut group = None;
    let mut generators = None;
    let mut form = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "twist" if !rest.is_empty() => name = Some(rest.to_string()),
            "group" if !rest.is_empty() => group = Some(rest.to_string()),
            "generators" => {
                let gens = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| err(line_no, format!("bad element index `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                generators = Some(gens);
            }
            "form" => form = Some(rest.parse::<PairingForm>().map_err(|e| err(line_no, e.to_string()))?),
            "twist" | "group" => return Err(err(line_no, format!("`{key}` needs a value"))),
            other => return Err(err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let name = name.ok_or_else(|| err(1, "missing `twist <name>` line".into()))?;
    let generators = generators.ok_or_else(|| err(last, "missing `generators` line".into()))?;
    let form = form.ok_or_else(|| err(last, "missing `form` line".into()))?;
    if generators.len() != form.radix().rank() {
        return Err(err(last, format!("{} generators but the form has rank {}", generators.len(), form.radix().rank())));
    }
    Ok(TwistFile { name, group, generators, form })
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_group(text: &str, source_name: &str) -> Result<GroupSpec, CliError> {
    parse_group_spec(text).map_err(|e| CliError::parse(source_name, e.to_string()))
}

/// Path of the group named by a twist file, relative to the twist file.
pub fn group_path_of(twist_path: &Path, tf: &TwistFile) -> Option<PathBuf> {
    tf.group.as_ref().map(|g| twist_path.parent().unwrap_or(Path::new(".")).join(g))
}

impl TwistFile {
    pub fn build(&self, g: &Arc<FiniteGroup>) -> Result<FormTwist, OpError> {
        if let Some(&bad) = self.generators.iter().find(|&&x| x >= g.order()) {
            return Err(OpError::Failed(format!("twist {}: element {bad} is outside a group of order {}", self.name, g.order())));
        }
        let sub = Subgroup::generated(g, &self.generators);
        let a = AbelianStructure::with_generators(&sub, &self.generators)?;
        if a.divisors() != self.form.radix().divisors() {
            return Err(OpError::Failed(format!(
                "twist {}: generators have orders {:?} but the form is on {:?}",
                self.name,
                a.divisors(),
                self.form.radix().divisors()
            )));
        }
        Ok(FormTwist::new(a, self.form.clone())?)
    }
}
