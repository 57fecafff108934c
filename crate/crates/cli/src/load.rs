use std::fs;

use dimlab::elementarity::FormulaFamily;
use dimlab::formula::{
    conn_formula, cut_formula, delta_formula, dg_formula, ind_formula, parse, part_formula, Formula,
};
use dimlab::interval::{default_base, BaseSpec, IntervalSet};
use dimlab::lattice::diamond;
use dimlab::{ElementRef, Lattice};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Reads inputs and hashes everything that determines the result.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(argv: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in argv {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Inputs { hasher }
    }

    pub fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }

    fn read(&mut self, path: &str) -> Result<String, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    pub fn lattice(&mut self, spec: &str) -> Result<Lattice, CliError> {
        match spec.strip_prefix("builtin:") {
            Some("diamond") => Ok(diamond()),
            Some(name) => match name.strip_prefix("powerset").map(str::parse::<usize>) {
                Some(Ok(n)) => Ok(Lattice::powerset(n)?),
                _ => Err(CliError::Input(format!("unknown builtin lattice `{name}`"))),
            },
            None => Ok(Lattice::from_json(&self.read(spec)?)?),
        }
    }

    pub fn family(&mut self, spec: &str) -> Result<FormulaFamily, CliError> {
        match spec {
            "builtin:standard" => Ok(FormulaFamily::standard()),
            _ => Ok(FormulaFamily::from_json(&self.read(spec)?)?),
        }
    }

    pub fn base(&mut self, spec: &str) -> Result<BaseSpec, CliError> {
        match spec.strip_prefix("builtin:") {
            Some(kind) => default_base(kind)
                .ok_or_else(|| CliError::Input(format!("unknown builtin base `{kind}`"))),
            None => Ok(BaseSpec::from_json(&self.read(spec)?)?),
        }
    }
}

pub fn formula(text: &str) -> Result<Formula, CliError> {
    let level = |s: &str| {
        s.parse::<i32>()
            .map_err(|_| CliError::Input(format!("bad dimension index `{s}`")))
    };
    let f = if let Some(n) = text.strip_prefix("delta:") {
        let n = level(n)?;
        if n < 0 {
            return Err(CliError::Input(format!("bad dimension index `{n}`")));
        }
        delta_formula(n as usize)?
    } else if let Some(n) = text.strip_prefix("ind:") {
        ind_formula(level(n)?)?
    } else if let Some(n) = text.strip_prefix("dg:") {
        dg_formula(level(n)?)?
    } else {
        match text {
            "conn" => conn_formula(),
            "part" => part_formula(),
            "cut" => cut_formula(),
            _ => parse(text)?,
        }
    };
    Ok(f)
}

/// `top`, `bottom`, `{}`, `{0,2}`, `0,2` or `#k`.
pub fn element(l: &Lattice, text: &str) -> Result<ElementRef, CliError> {
    let text = text.trim();
    match text {
        "top" => return Ok(l.top()),
        "bottom" => return Ok(l.bottom()),
        _ => {}
    }
    if let Some(k) = text.strip_prefix('#') {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Input(format!("bad element index `{text}`")))?;
        let e = ElementRef(k);
        l.check_ref(e)?;
        return Ok(e);
    }
    let inner = text.trim_start_matches('{').trim_end_matches('}');
    let mut items = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        items.push(
            part.parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad ground point `{part}` in `{text}`")))?,
        );
    }
    items.sort_unstable();
    items.dedup();
    l.find(&items).ok_or_else(|| {
        CliError::Input(format!(
            "{{{}}} is not an element of the lattice",
            join(&items)
        ))
    })
}

fn join(items: &[usize]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn interval(text: &str) -> Result<IntervalSet, CliError> {
    Ok(text.parse::<IntervalSet>()?)
}
