//! The on-disk module format.
//!
//! ```json
//! {
//!   "actions": { "a1": [["0", "1"], ["0", "0"]] },
//!   "algebra": { "family": "Exterior", "rank": 1 },
//!   "dim_even": 1,
//!   "dim_odd": 1
//! }
//! ```
//!
//! Matrices are row-major, one array per row, entries `"p"` or `"p/q"`. A
//! flat row-major array is accepted on input. Output has sorted keys and
//! entries in lowest terms, so writing a file that was read back is
//! byte-identical.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use supertriv_core::superalg::{self, Family, SuperAlgebra};
use supertriv_core::{GradedSpace, Matrix, Rational, Supermodule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    Rows(Vec<Vec<String>>),
    Flat(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub actions: BTreeMap<String, Entries>,
    pub algebra: AlgebraSpec,
    pub dim_even: usize,
    pub dim_odd: usize,
}

pub fn algebra_from_spec(spec: &AlgebraSpec) -> Result<SuperAlgebra> {
    let alg = match spec.family.as_str() {
        "E" => superalg::detecting_e(spec.rank)?,
        "F" => superalg::detecting_f(spec.rank)?,
        "Exterior" => superalg::exterior(spec.rank)?,
        "GL11" => superalg::gl11(),
        other => bail!("unknown algebra family {other:?} (expected E, F, Exterior or GL11)"),
    };
    Ok(alg)
}

pub fn spec_of(family: Family) -> AlgebraSpec {
    AlgebraSpec {
        family: family.tag().to_string(),
        rank: family.param(),
    }
}

fn parse_matrix(name: &str, entries: &Entries, n: usize) -> Result<Matrix> {
    let flat: Vec<&String> = match entries {
        Entries::Rows(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                bail!("action {name}: expected {n} rows of {n} entries");
            }
            rows.iter().flatten().collect()
        }
        Entries::Flat(xs) => {
            if xs.len() != n * n {
                bail!("action {name}: expected {} entries, got {}", n * n, xs.len());
            }
            xs.iter().collect()
        }
    };
    let values = flat
        .iter()
        .map(|s| s.parse::<Rational>().map_err(|e| anyhow!("action {name}: {e}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(n, n, |i, j| values[i * n + j].clone()))
}

impl ModuleFile {
    pub fn from_json(text: &str) -> Result<ModuleFile> {
        serde_json::from_str(text).context("malformed module file")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("module files serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the module.
    pub fn to_module(&self) -> Result<Supermodule> {
        let alg = algebra_from_spec(&self.algebra)?;
        let n = self.dim_even + self.dim_odd;
        for name in self.actions.keys() {
            if alg.index_of(name).is_none() {
                bail!("{} has no generator {name:?}", alg.family());
            }
        }
        let actions = (0..alg.len())
            .map(|g| {
                let name = alg.name(g);
                let entries = self.actions.get(name).ok_or_else(|| anyhow!("missing action for generator {name:?}"))?;
                parse_matrix(name, entries, n)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Supermodule::new(alg, GradedSpace::new(self.dim_even, self.dim_odd), actions)?)
    }

    pub fn from_module(m: &Supermodule) -> ModuleFile {
        let alg = m.algebra();
        let actions = (0..alg.len())
            .map(|g| {
                let x = m.action(g);
                let rows = (0..x.rows()).map(|i| x.row(i).iter().map(Rational::to_string).collect()).collect();
                (alg.name(g).to_string(), Entries::Rows(rows))
            })
            .collect();
        ModuleFile {
            actions,
            algebra: spec_of(alg.family()),
            dim_even: m.space().dim_even,
            dim_odd: m.space().dim_odd,
        }
    }
}
