//! JSON group and module files, and the bundled catalog of small groups.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{FiniteGroup, Realization};
use crate::linalg::FpMatrix;
use crate::rep::Representation;

/// A group file: `{"kind": "perm" | "mat" | "table", "p": ..., "generators": [...]}`
/// with `degree` for permutations, `dim`, `q` and optional `poly` for
/// matrices, and `order`, `table`, optional `identity` for tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub kind: String,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    /// Defining polynomial of `F_q`, coefficients low to high.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<u32>,
    /// Image arrays, row-major matrices, or table indices.
    pub generators: Vec<serde_json::Value>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn int_list(v: &serde_json::Value) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| bad("generator must be an array"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad("generator entries must be integers")))
        .collect()
}

fn to_u16(xs: &[i64], bound: i64, what: &str) -> Result<Vec<u16>> {
    xs.iter()
        .map(|&x| if (0..bound).contains(&x) { Ok(x as u16) } else { Err(bad(format!("{what} entry {x} out of range"))) })
        .collect()
}

/// Checks a multiplication table: identity, Latin rows and columns, and
/// associativity over a generating set.
fn check_table(table: &[u32], n: usize, identity: usize, gens: &[usize]) -> Result<()> {
    let row = |a: usize| &table[a * n..(a + 1) * n];
    for a in 0..n {
        if table[identity * n + a] as usize != a || table[a * n + identity] as usize != a {
            return Err(bad("identity does not act trivially"));
        }
        let mut seen_r = vec![false; n];
        let mut seen_c = vec![false; n];
        for b in 0..n {
            let (r, c) = (row(a)[b] as usize, table[b * n + a] as usize);
            if r >= n || seen_r[r] || c >= n || seen_c[c] {
                return Err(bad("table is not a Latin square"));
            }
            seen_r[r] = true;
            seen_c[c] = true;
        }
    }
    // testing (a s) b = a (s b) for s in a generating set suffices
    for &s in gens {
        for a in 0..n {
            for b in 0..n {
                let l = table[table[a * n + s] as usize * n + b];
                let r = table[a * n + table[s * n + b] as usize];
                if l != r {
                    return Err(bad("table is not associative"));
                }
            }
        }
    }
    Ok(())
}

impl GroupFile {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match self.kind.as_str() {
            "perm" => {
                let degree = self.degree.ok_or_else(|| bad("perm group needs a degree"))?;
                let gens = self
                    .generators
                    .iter()
                    .map(|g| to_u16(&int_list(g)?, degree as i64, "permutation"))
                    .collect::<Result<Vec<_>>>()?;
                if gens.iter().any(|g| g.len() != degree) {
                    return Err(bad("permutation length differs from degree"));
                }
                FiniteGroup::from_raw(self.p, Realization::Perm { degree: degree.max(1) }, gens, cap, None)
            }
            "mat" => {
                let dim = self.dim.ok_or_else(|| bad("matrix group needs dim"))?;
                let q = self.q.unwrap_or(self.p);
                let field = match &self.poly {
                    Some(poly) => Field::with_modulus(self.p, poly)?,
                    None => Field::new(q)?,
                };
                if field.order() != q || field.characteristic() != self.p {
                    return Err(bad("field does not match p and q"));
                }
                let gens = self
                    .generators
                    .iter()
                    .map(|g| to_u16(&int_list(g)?, q as i64, "matrix"))
                    .collect::<Result<Vec<_>>>()?;
                if gens.iter().any(|g| g.len() != dim * dim) {
                    return Err(bad("matrix has the wrong number of entries"));
                }
                FiniteGroup::from_raw(self.p, Realization::Matrix { field: Arc::new(field), dim }, gens, cap, None)
            }
            "table" => {
                let rows = self.table.as_ref().ok_or_else(|| bad("table group needs a table"))?;
                let n = rows.len();
                if n == 0 || n > u16::MAX as usize || self.order.is_some_and(|o| o != n) {
                    return Err(bad("table size is invalid"));
                }
                if rows.iter().any(|r| r.len() != n) {
                    return Err(bad("table is not square"));
                }
                let table: Vec<u32> = rows.iter().flatten().copied().collect();
                let identity = match self.identity {
                    Some(e) => e as usize,
                    None => (0..n).find(|&e| (0..n).all(|a| table[e * n + a] as usize == a)).ok_or_else(|| bad("no identity"))?,
                };
                if identity >= n {
                    return Err(bad("identity out of range"));
                }
                let gens = self
                    .generators
                    .iter()
                    .map(|g| g.as_u64().filter(|&x| (x as usize) < n).map(|x| x as usize).ok_or_else(|| bad("table generator out of range")))
                    .collect::<Result<Vec<_>>>()?;
                check_table(&table, n, identity, &gens)?;
                let realization = Realization::Table { table: Arc::new(table), order: n, identity: identity as u32 };
                let raw = gens.iter().map(|&x| vec![x as u16]).collect();
                FiniteGroup::from_raw(self.p, realization, raw, cap, None)
            }
            other => Err(bad(format!("unknown group kind {other:?}"))),
        }
    }

    /// Group file for an enumerated group, listing its generators.
    pub fn from_group(g: &FiniteGroup) -> GroupFile {
        let gens = |f: &dyn Fn(&[u16]) -> serde_json::Value| g.generators().iter().map(|&x| f(g.raw(x))).collect();
        let list = |r: &[u16]| serde_json::Value::from(r.iter().map(|&x| x as u64).collect::<Vec<_>>());
        let mut file = GroupFile {
            kind: g.realization().kind().to_string(),
            p: g.prime(),
            degree: None,
            dim: None,
            q: None,
            poly: None,
            order: None,
            table: None,
            identity: None,
            generators: Vec::new(),
        };
        match g.realization() {
            Realization::Perm { degree } => {
                file.degree = Some(*degree);
                file.generators = gens(&list);
            }
            Realization::Matrix { field, dim } => {
                file.dim = Some(*dim);
                file.q = Some(field.order());
                if field.degree() > 1 {
                    file.poly = Some(field.modulus().to_vec());
                }
                file.generators = gens(&list);
            }
            Realization::Table { table, order, identity } => {
                file.order = Some(*order);
                file.identity = Some(*identity);
                file.table = Some(table.chunks(*order).map(|r| r.to_vec()).collect());
                file.generators = gens(&|r: &[u16]| serde_json::Value::from(r[0] as u64));
            }
        }
        file
    }
}

pub fn parse_group(text: &str, cap: usize) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| bad(format!("group file: {e}")))?;
    file.build(cap)
}

pub fn read_group(path: &str, cap: usize) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{path}: {e}")))?;
    parse_group(&text, cap)
}

/// A module file: one row-major matrix over `F_p` per group generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub p: u32,
    pub dim: usize,
    pub generators: Vec<Vec<i64>>,
}

impl ModuleFile {
    pub fn build(&self, g: &FiniteGroup) -> Result<Representation> {
        if self.p != g.prime() {
            return Err(Error::PrimeMismatch(self.p, g.prime()));
        }
        if self.generators.len() != g.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                self.generators.len(),
                g.generators().len()
            )));
        }
        let mats = self
            .generators
            .iter()
            .map(|m| FpMatrix::from_rows(self.p, self.dim, self.dim, m))
            .collect::<Result<Vec<_>>>()?;
        Representation::from_matrices(g, mats)
    }
}

pub fn parse_module(text: &str, g: &FiniteGroup) -> Result<Representation> {
    let file: ModuleFile = serde_json::from_str(text).map_err(|e| bad(format!("module file: {e}")))?;
    file.build(g)
}

pub fn read_module(path: &str, g: &FiniteGroup) -> Result<Representation> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{path}: {e}")))?;
    parse_module(&text, g)
}

/// One catalog line: an identifier, a group file, and recorded invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    #[serde(flatten)]
    pub group: GroupFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
}

impl CatalogEntry {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        self.group.build(cap)
    }
}

/// Parses JSON lines of catalog entries, skipping blank lines.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| bad(format!("catalog line {}: {e}", i + 1))))
        .collect()
}

static BUNDLED: &str = include_str!("../data/catalog.jsonl");

/// The bundled catalog: groups of order dividing 2^6 or 3^5, by
/// permutation generators.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(BUNDLED).expect("bundled catalog parses"))
}

pub fn catalog_entry(id: &str) -> Result<&'static CatalogEntry> {
    catalog().iter().find(|e| e.id == id).ok_or_else(|| bad(format!("no catalog group {id:?}")))
}
