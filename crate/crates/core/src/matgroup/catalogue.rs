//! Generator catalogue: text files describing each group, its expected
//! orders and the polynomials it must preserve. Every load re-runs the
//! closure and the certificate checks.
//!
//! ```text
//! group <name> size <n> order <L> projorder <P>
//! gen [label]
//! <n rows of comma-separated scalars>
//! cert <polyfile> <trivial|chi:v1,v2,...>
//! ```

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use super::{closure, projectivize, FiniteMatrixGroup, GMatrix, DEFAULT_CAP};
use crate::exactfield::{parse_scalar, Cyclo};
use crate::linalg::Matrix;
use crate::multipoly::{Poly, PolyFile};

pub const DATA_ENV: &str = "K3AUDIT_DATA";

pub const CATALOGUE_NAMES: &[&str] = &[
    "l27",
    "valentiner",
    "s5_perm5",
    "s4_p2",
    "m9",
    "n72",
    "t48_p2",
    "t48_2d",
    "q8_2d",
    "t192_check",
    "h192_check",
];

macro_rules! embed {
    ($($f:literal),* $(,)?) => {
        &[$(($f, include_str!(concat!("../../data/", $f)))),*]
    };
}

static EMBEDDED: &[(&str, &str)] = embed!(
    "h192_check.grp",
    "l27.grp",
    "m9.grp",
    "n72.grp",
    "q8_2d.grp",
    "s4_p2.grp",
    "s5_perm5.grp",
    "t192_check.grp",
    "t48_2d.grp",
    "t48_p2.grp",
    "valentiner.grp",
    "c1.poly",
    "case11b.poly",
    "case1a.poly",
    "case1b.poly",
    "case2.poly",
    "case2_printed.poly",
    "case3a_cubic.poly",
    "case3a_linear.poly",
    "case3a_quadric.poly",
    "case3b.poly",
    "case9_cubic.poly",
    "case9_quadric.poly",
    "fa_minus.poly",
    "fa_plus.poly",
    "fermat3.poly",
    "klein.poly",
    "klein_hessian.poly",
    "mukai.poly",
    "octa.poly",
    "psum1.poly",
    "psum2.poly",
    "psum3.poly",
    "quadric4.poly",
    "t192_sum.poly",
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("unknown catalogue entry `{name}`; valid names: {valid}")]
    UnknownName { name: String, valid: String },
    #[error("data file `{0}` not found")]
    MissingFile(String),
    #[error("{file}:{line}: {reason}")]
    Parse { file: String, line: usize, reason: String },
    #[error("catalogue entry `{entry}` failed check `{check}`: {detail}")]
    Certificate { entry: String, check: String, detail: String },
}

/// Reads a data file, from the directory in `K3AUDIT_DATA` if set,
/// otherwise from the copies compiled into the library.
pub fn data_text(file: &str) -> Result<String, CatalogueError> {
    if let Ok(dir) = std::env::var(DATA_ENV) {
        let path = std::path::Path::new(&dir).join(file);
        return std::fs::read_to_string(&path).map_err(|_| CatalogueError::MissingFile(path.display().to_string()));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| CatalogueError::MissingFile(file.into()))
}

pub fn embedded_files() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

pub fn load_poly(file: &str) -> Result<PolyFile, CatalogueError> {
    let text = data_text(file)?;
    PolyFile::parse(&text).map_err(|e| CatalogueError::Parse { file: file.into(), line: 0, reason: e.to_string() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharSpec {
    Trivial,
    /// Values on the generators, in order.
    Values(Vec<Cyclo>),
}

impl CharSpec {
    pub fn parse(s: &str) -> Result<CharSpec, String> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(CharSpec::Trivial);
        }
        let body = s.strip_prefix("chi:").ok_or_else(|| format!("bad character spec `{s}`"))?;
        body.split(',').map(|v| parse_scalar(v.trim()).map_err(|e| e.to_string())).collect::<Result<_, _>>().map(CharSpec::Values)
    }

    pub fn values(&self, ngens: usize) -> Vec<Cyclo> {
        match self {
            CharSpec::Trivial => vec![Cyclo::one(); ngens],
            CharSpec::Values(v) => v.clone(),
        }
    }

    pub fn from_values(v: &[Cyclo]) -> CharSpec {
        if v.iter().all(Cyclo::is_one) {
            CharSpec::Trivial
        } else {
            CharSpec::Values(v.to_vec())
        }
    }
}

impl std::fmt::Display for CharSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharSpec::Trivial => write!(f, "trivial"),
            CharSpec::Values(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "chi:{}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub poly_file: String,
    pub character: CharSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub name: String,
    pub size: usize,
    pub generators: Vec<GMatrix>,
    pub order: usize,
    pub projorder: usize,
    pub certificates: Vec<Certificate>,
}

impl CatalogueEntry {
    pub fn parse(file: &str, text: &str) -> Result<CatalogueEntry, CatalogueError> {
        let perr = |line: usize, reason: String| CatalogueError::Parse { file: file.into(), line, reason };
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#')).collect();
        let Some(&(hl, header)) = lines.first() else { return Err(perr(0, "empty catalogue file".into())) };
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 8 || h[0] != "group" || h[2] != "size" || h[4] != "order" || h[6] != "projorder" {
            return Err(perr(hl, "expected `group <name> size <n> order <L> projorder <P>`".into()));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| perr(hl, format!("bad number `{s}`")));
        let (name, size, order, projorder) = (h[1].to_string(), num(h[3])?, num(h[5])?, num(h[7])?);
        let mut generators = Vec::new();
        let mut certificates = Vec::new();
        let mut i = 1;
        while i < lines.len() {
            let (ln, l) = lines[i];
            if l == "gen" || l.starts_with("gen ") {
                let label = l.strip_prefix("gen").map(str::trim).filter(|s| !s.is_empty()).map(String::from);
                let mut rows = Vec::new();
                for r in 0..size {
                    let Some(&(rl, row)) = lines.get(i + 1 + r) else { return Err(perr(ln, "generator has too few rows".into())) };
                    let vals: Vec<Cyclo> = row
                        .split(',')
                        .map(|v| parse_scalar(v.trim()))
                        .collect::<Result<_, _>>()
                        .map_err(|e| perr(rl, e.to_string()))?;
                    if vals.len() != size {
                        return Err(perr(rl, format!("expected {size} entries, found {}", vals.len())));
                    }
                    rows.push(vals);
                }
                let g = GMatrix::new(Matrix::from_rows(rows), label).map_err(|e| perr(ln, e.to_string()))?;
                generators.push(g);
                i += 1 + size;
            } else if let Some(rest) = l.strip_prefix("cert ") {
                let (pf, spec) = rest.trim().split_once(' ').ok_or_else(|| perr(ln, "expected `cert <file> <character>`".into()))?;
                let character = CharSpec::parse(spec).map_err(|e| perr(ln, e))?;
                certificates.push(Certificate { poly_file: pf.to_string(), character });
                i += 1;
            } else {
                return Err(perr(ln, format!("unexpected line `{l}`")));
            }
        }
        if generators.is_empty() {
            return Err(perr(hl, "no generators".into()));
        }
        Ok(CatalogueEntry { name, size, generators, order, projorder, certificates })
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("group {} size {} order {} projorder {}\n", self.name, self.size, self.order, self.projorder);
        for g in &self.generators {
            match &g.label {
                Some(l) => s.push_str(&format!("gen {l}\n")),
                None => s.push_str("gen\n"),
            }
            for r in 0..g.size() {
                let row: Vec<String> = g.matrix.row(r).iter().map(ToString::to_string).collect();
                s.push_str(&row.join(", "));
                s.push('\n');
            }
        }
        for c in &self.certificates {
            s.push_str(&format!("cert {} {}\n", c.poly_file, c.character));
        }
        s
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| g.matrix.clone()).collect()
    }
}

/// f∘g = c·f for each generator g: returns the scalars c, or `None` when
/// some generator does not preserve the hypersurface.
pub fn generator_ratios(f: &Poly, gens: &[Matrix]) -> Option<Vec<Cyclo>> {
    gens.iter()
        .map(|g| f.substitute_linear(g).ok().and_then(|h| h.proportionality(f)))
        .collect()
}

/// A catalogue entry with its verified linear and projective closures.
#[derive(Debug)]
pub struct LoadedGroup {
    pub entry: CatalogueEntry,
    pub linear: FiniteMatrixGroup,
    pub projective: FiniteMatrixGroup,
}

impl LoadedGroup {
    pub fn name(&self) -> &str {
        &self.entry.name
    }
}

/// Runs the closure and every certificate of an entry.
pub fn verify_entry(entry: CatalogueEntry) -> Result<LoadedGroup, CatalogueError> {
    let fail = |check: &str, detail: String| CatalogueError::Certificate { entry: entry.name.clone(), check: check.into(), detail };
    if entry.generators.iter().any(|g| g.size() != entry.size) {
        return Err(fail("size", "generator size differs from the header".into()));
    }
    let linear = closure(&entry.generators, DEFAULT_CAP).map_err(|e| fail("closure", e.to_string()))?;
    if linear.order() != entry.order {
        return Err(fail("order", format!("expected {}, closure has {}", entry.order, linear.order())));
    }
    let projective = projectivize(&linear);
    if projective.order() != entry.projorder {
        return Err(fail("projorder", format!("expected {}, closure has {}", entry.projorder, projective.order())));
    }
    let gens = entry.matrices();
    for c in &entry.certificates {
        let pf = load_poly(&c.poly_file).map_err(|e| fail(&c.poly_file, e.to_string()))?;
        if pf.poly.nvars() != entry.size {
            return Err(fail(&c.poly_file, "variable count differs from the group size".into()));
        }
        let ratios = generator_ratios(&pf.poly, &gens).ok_or_else(|| fail(&c.poly_file, "not semi-invariant".into()))?;
        let expected = c.character.values(gens.len());
        if ratios != expected {
            return Err(fail(&c.poly_file, format!("character {} differs from the expected {}", CharSpec::from_values(&ratios), c.character)));
        }
    }
    Ok(LoadedGroup { entry, linear, projective })
}

type Cache = Mutex<HashMap<(String, String), Arc<LoadedGroup>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Loads, closes and certifies a catalogue group. Results are cached per
/// data directory.
pub fn catalogue(name: &str) -> Result<Arc<LoadedGroup>, CatalogueError> {
    if !CATALOGUE_NAMES.contains(&name) {
        return Err(CatalogueError::UnknownName { name: name.into(), valid: CATALOGUE_NAMES.join(", ") });
    }
    let key = (std::env::var(DATA_ENV).unwrap_or_default(), name.to_string());
    if let Some(g) = cache().lock().expect("cache lock").get(&key) {
        return Ok(g.clone());
    }
    let file = format!("{name}.grp");
    let text = data_text(&file)?;
    let entry = CatalogueEntry::parse(&file, &text)?;
    let loaded = Arc::new(verify_entry(entry)?);
    cache().lock().expect("cache lock").insert(key, loaded.clone());
    Ok(loaded)
}
