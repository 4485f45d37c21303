//! Atom, expression and complex files.
//!
//! A corpus directory holds `atoms/*.json`, `expressions/*.json`,
//! `complexes/*.json` and optionally `brauer.json`; every part is optional.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use weightk_core::motif::{
    dimension, tate_twist, Atom, AtomRegistry, MotiveComplex, MotiveMap, PureMotive, VarietyExpr,
};
use weightk_core::{Error, FgModule, IntMatrix};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprFile {
    pub name: String,
    pub expr: VarietyExpr,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRef {
    pub atom: String,
    #[serde(default = "one")]
    pub copies: usize,
    #[serde(default)]
    pub twist: u32,
}

fn one() -> usize {
    1
}

/// `N^start -> N^{start+1} -> ...`, each differential given degreewise as
/// `H^q(N^{i+1}) -> H^q(N^i)`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    #[serde(default)]
    pub start: i32,
    pub terms: Vec<TermRef>,
    #[serde(default)]
    pub diffs: Vec<BTreeMap<i32, IntMatrix>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrauerRow {
    pub atom: String,
    #[serde(default)]
    pub twist: u32,
    pub brauer: FgModule,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub ell: u64,
    pub atoms: AtomRegistry,
    pub expressions: BTreeMap<String, VarietyExpr>,
    pub complexes: BTreeMap<String, MotiveComplex>,
    pub brauer: Vec<(PureMotive, FgModule)>,
}

const BUILTIN_ATOMS: &[(&str, &str)] = &[
    ("E1.json", include_str!("../corpus/atoms/E1.json")),
    ("P1.json", include_str!("../corpus/atoms/P1.json")),
    ("P2.json", include_str!("../corpus/atoms/P2.json")),
    ("enriques.json", include_str!("../corpus/atoms/enriques.json")),
    ("pt.json", include_str!("../corpus/atoms/pt.json")),
];

const BUILTIN_EXPRESSIONS: &[(&str, &str)] = &[
    ("A1.json", include_str!("../corpus/expressions/A1.json")),
    ("A2.json", include_str!("../corpus/expressions/A2.json")),
    ("A2_tower.json", include_str!("../corpus/expressions/A2_tower.json")),
    ("A3.json", include_str!("../corpus/expressions/A3.json")),
    ("E1_minus_pt.json", include_str!("../corpus/expressions/E1_minus_pt.json")),
    ("Gm.json", include_str!("../corpus/expressions/Gm.json")),
    ("Gm2.json", include_str!("../corpus/expressions/Gm2.json")),
    ("GmxA1.json", include_str!("../corpus/expressions/GmxA1.json")),
    ("P1.json", include_str!("../corpus/expressions/P1.json")),
    ("P1xA1.json", include_str!("../corpus/expressions/P1xA1.json")),
    ("P1xP1.json", include_str!("../corpus/expressions/P1xP1.json")),
    ("P2.json", include_str!("../corpus/expressions/P2.json")),
    ("P2_minus_pt.json", include_str!("../corpus/expressions/P2_minus_pt.json")),
    ("enriques.json", include_str!("../corpus/expressions/enriques.json")),
    ("enriques_minus_pt.json", include_str!("../corpus/expressions/enriques_minus_pt.json")),
    ("enriquesxP1.json", include_str!("../corpus/expressions/enriquesxP1.json")),
    ("pt.json", include_str!("../corpus/expressions/pt.json")),
];

const BUILTIN_COMPLEXES: &[(&str, &str)] = &[
    ("Gm.json", include_str!("../corpus/complexes/Gm.json")),
    ("P2_minus_pt.json", include_str!("../corpus/complexes/P2_minus_pt.json")),
];

const BUILTIN_BRAUER: &str = include_str!("../corpus/brauer.json");

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::schema(path, &e))
}

fn invalid(path: &Path) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Invalid { path: path.to_path_buf(), source }
}

/// Sorted `(path, contents)` of the `.json` files in `dir`; a missing
/// directory is empty.
fn read_dir(dir: &Path) -> Result<Vec<(PathBuf, String)>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let io = |source| CliError::Io { path: dir.to_path_buf(), source };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).map_err(|source| CliError::Io { path: p.clone(), source })?;
            Ok((p, text))
        })
        .collect()
}

/// Reads an expression file, either `{name, expr}` or a bare expression
/// named after the file.
pub fn read_expr_file(path: &Path) -> Result<ExprFile> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_expr(path, &text)
}

fn parse_expr(path: &Path, text: &str) -> Result<ExprFile> {
    match parse::<ExprFile>(path, text) {
        Ok(f) => Ok(f),
        Err(named) => {
            let bare: VarietyExpr = serde_json::from_str(text).map_err(|_| named)?;
            let name = path.file_stem().map_or("expr".into(), |s| s.to_string_lossy().into_owned());
            Ok(ExprFile { name, expr: bare })
        }
    }
}

pub fn read_complex_file(path: &Path) -> Result<ComplexFile> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse(path, &text)
}

impl Corpus {
    pub fn empty(ell: u64) -> Self {
        Corpus {
            ell,
            atoms: AtomRegistry::default(),
            expressions: BTreeMap::new(),
            complexes: BTreeMap::new(),
            brauer: Vec::new(),
        }
    }

    /// The corpus shipped with the crate. Its tables are written for
    /// `l = 2`; for other primes they are relabelled and atoms whose torsion
    /// is not `l`-primary are dropped together with everything using them.
    pub fn builtin(ell: u64) -> Result<Self> {
        let mut c = Corpus::empty(ell);
        for (file, text) in BUILTIN_ATOMS {
            let path = Path::new("builtin/atoms").join(file);
            let mut atom: Atom = parse(&path, text)?;
            atom.table.ell = ell;
            if atom.table.validate().is_ok() {
                c.add_atom(&path, atom)?;
            }
        }
        for (file, text) in BUILTIN_EXPRESSIONS {
            let path = Path::new("builtin/expressions").join(file);
            let f = parse_expr(&path, text)?;
            if dimension(&f.expr, &c.atoms).is_ok() {
                c.add_expression(&path, f)?;
            }
        }
        for (file, text) in BUILTIN_COMPLEXES {
            let path = Path::new("builtin/complexes").join(file);
            let f: ComplexFile = parse(&path, text)?;
            if f.terms.iter().all(|t| c.atoms.get(&t.atom).is_ok()) {
                c.add_complex(&path, f)?;
            }
        }
        let rows: Vec<BrauerRow> = parse(Path::new("builtin/brauer.json"), BUILTIN_BRAUER)?;
        c.add_brauer(rows.into_iter().filter(|r| c.atoms.get(&r.atom).is_ok()).collect(), Path::new("builtin/brauer.json"))?;
        Ok(c)
    }

    fn add_atom(&mut self, path: &Path, atom: Atom) -> Result<()> {
        if atom.table.ell != self.ell {
            return Err(CliError::Schema {
                path: path.into(),
                field: "ell".into(),
                message: format!("atom is tabulated for l = {}, corpus uses l = {}", atom.table.ell, self.ell),
            });
        }
        self.atoms.register_atom(atom).map_err(invalid(path))?;
        Ok(())
    }

    fn add_expression(&mut self, path: &Path, f: ExprFile) -> Result<()> {
        dimension(&f.expr, &self.atoms).map_err(invalid(path))?;
        self.expressions.insert(f.name, f.expr);
        Ok(())
    }

    fn add_complex(&mut self, path: &Path, f: ComplexFile) -> Result<()> {
        let n = build_complex(&f, &self.atoms).map_err(invalid(path))?;
        self.complexes.insert(f.name, n);
        Ok(())
    }

    fn add_brauer(&mut self, rows: Vec<BrauerRow>, path: &Path) -> Result<()> {
        for r in rows {
            let m = self.atoms.motive(&r.atom).map_err(invalid(path))?;
            self.brauer.push((tate_twist(&m, r.twist), r.brauer));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.expressions.is_empty() && self.complexes.is_empty()
    }

    /// Atoms as expressions, followed by the named expressions.
    pub fn all_expressions(&self) -> Vec<(String, VarietyExpr)> {
        let atoms = self.atoms.atoms().map(|a| (format!("atom:{}", a.table.name), VarietyExpr::atom(&a.table.name)));
        atoms.chain(self.expressions.iter().map(|(k, v)| (k.clone(), v.clone()))).collect()
    }
}

pub fn build_complex(f: &ComplexFile, atoms: &AtomRegistry) -> weightk_core::Result<MotiveComplex> {
    let terms = f
        .terms
        .iter()
        .map(|t| Ok(tate_twist(&PureMotive::new(atoms.get(&t.atom)?.table.copies(t.copies)?), t.twist)))
        .collect::<weightk_core::Result<Vec<_>>>()?;
    if f.diffs.len() + 1 != terms.len().max(1) {
        return Err(Error::InvalidComplex(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
    }
    let diffs = f
        .diffs
        .iter()
        .enumerate()
        .map(|(i, d)| MotiveMap::new(terms[i].clone(), terms[i + 1].clone(), d))
        .collect::<weightk_core::Result<Vec<_>>>()?;
    MotiveComplex::new(f.start, terms, diffs)
}

/// Loads corpus directories in order: all atoms first, then expressions,
/// complexes and Brauer data, so later directories may use earlier atoms.
pub fn load_corpus(paths: &[PathBuf], ell: u64) -> Result<Corpus> {
    let mut c = Corpus::empty(ell);
    for dir in paths {
        if !dir.is_dir() {
            return Err(CliError::Io { path: dir.clone(), source: std::io::Error::from(std::io::ErrorKind::NotFound) });
        }
    }
    for dir in paths {
        for (p, text) in read_dir(&dir.join("atoms"))? {
            let atom: Atom = parse(&p, &text)?;
            c.add_atom(&p, atom)?;
        }
    }
    for dir in paths {
        for (p, text) in read_dir(&dir.join("expressions"))? {
            let f = parse_expr(&p, &text)?;
            c.add_expression(&p, f)?;
        }
        for (p, text) in read_dir(&dir.join("complexes"))? {
            let f: ComplexFile = parse(&p, &text)?;
            c.add_complex(&p, f)?;
        }
        let b = dir.join("brauer.json");
        if b.exists() {
            let text = fs::read_to_string(&b).map_err(|source| CliError::Io { path: b.clone(), source })?;
            let rows: Vec<BrauerRow> = parse(&b, &text)?;
            c.add_brauer(rows, &b)?;
        }
    }
    Ok(c)
}

/// The built-in atoms at `ell` plus the atoms of `extra` directories, for
/// commands that take a single file.
pub fn atoms_for(extra: &[PathBuf], ell: u64) -> Result<AtomRegistry> {
    let mut atoms = Corpus::builtin(ell)?.atoms;
    for a in load_corpus(extra, ell)?.atoms.atoms() {
        atoms.register_atom(a.clone())?;
    }
    Ok(atoms)
}
