//! JSON documents for algebra specifications, the built-in catalog of
//! worked examples, and report assembly for the command-line interface.
//!
//! All scalars are serialized as exact `"p/q"` strings; serialization is
//! canonical, so `save(load(x))` is byte-stable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{
    affinization_two_step, coadjoint_extension, dual_tube_realization, is_biinvariant,
    is_flat_biinvariant, signature, CoadjointCocycle, DualTube, MetricLieAlgebra,
};
use crate::lie::{AbstractLieAlgebra, AffineRealization};
use crate::prehomog::{analyze, AnalysisReport, TransitivityVerdict};
use crate::scalar::{format_rat, parse_rat, rint, Rat};
use crate::matrix::Matrix;
use crate::Mat;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

/// Expected-results block of a catalog entry; keys are fixed, unknown
/// keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedResults {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prehomogeneous: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simply_transitive: Option<bool>,
    /// "transitive" | "not_transitive" | "not_applicable"
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transitivity: Option<String>,
    /// Canonical display form of the relative invariant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_orbit_count: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_orbit_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absolute_class_vanishes: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_class_vanishes: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_relative_cohomology_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
}

/// One algebra specification: an affine realization (basis matrices), an
/// abstract Lie algebra (structure constants), or a metric Lie algebra
/// (structure constants plus Gram matrix).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecDocument {
    pub schema: u32,
    pub name: String,
    /// "affine_realization" | "abstract" | "metric"
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    /// Basis matrices of size (n+1) x (n+1), entries "p/q".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<String>>>,
    /// Rational affine group elements normalizing the algebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_elements: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedResults>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn mat_to_strings(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| format_rat(&m[(i, j)])).collect())
        .collect()
}

fn strings_to_mat(rows: &[Vec<String>]) -> Result<Mat, CatalogError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(CatalogError::Validation("ragged matrix rows".into()));
    }
    let mut out: Mat = Matrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            out[(i, j)] = parse_rat(s).map_err(CatalogError::Parse)?;
        }
    }
    Ok(out)
}

fn constants_to_grid(c: &[Vec<Vec<String>>]) -> Result<Vec<Vec<Vec<Rat>>>, CatalogError> {
    c.iter()
        .map(|p| {
            p.iter()
                .map(|q| q.iter().map(|s| parse_rat(s).map_err(CatalogError::Parse)).collect())
                .collect()
        })
        .collect()
}

fn grid_to_constants(c: &[Vec<Vec<Rat>>]) -> Vec<Vec<Vec<String>>> {
    c.iter()
        .map(|p| p.iter().map(|q| q.iter().map(format_rat).collect()).collect())
        .collect()
}

impl AlgebraSpecDocument {
    pub fn from_realization(name: &str, r: &AffineRealization) -> Self {
        AlgebraSpecDocument {
            schema: SCHEMA_VERSION,
            name: name.to_string(),
            kind: "affine_realization".into(),
            ambient_dim: Some(r.ambient_dim()),
            basis: Some(r.basis().iter().map(mat_to_strings).collect()),
            structure_constants: Some(grid_to_constants(r.algebra().structure_constants())),
            gram: None,
            witness_elements: None,
            expected: None,
            note: None,
        }
    }

    pub fn from_abstract(name: &str, g: &AbstractLieAlgebra) -> Self {
        AlgebraSpecDocument {
            schema: SCHEMA_VERSION,
            name: name.to_string(),
            kind: "abstract".into(),
            ambient_dim: None,
            basis: None,
            structure_constants: Some(grid_to_constants(g.structure_constants())),
            gram: None,
            witness_elements: None,
            expected: None,
            note: None,
        }
    }

    pub fn from_metric(name: &str, m: &MetricLieAlgebra) -> Self {
        let mut doc = Self::from_abstract(name, &m.algebra);
        doc.kind = "metric".into();
        doc.gram = Some(mat_to_strings(&m.gram));
        doc
    }

    pub fn to_realization(&self) -> Result<AffineRealization, CatalogError> {
        if self.kind != "affine_realization" {
            return Err(CatalogError::Validation(format!(
                "entry '{}' has kind '{}', expected an affine realization",
                self.name, self.kind
            )));
        }
        let n = self.ambient_dim.ok_or_else(|| {
            CatalogError::Validation("affine realization needs 'ambient_dim'".into())
        })?;
        let basis = self
            .basis
            .as_ref()
            .ok_or_else(|| CatalogError::Validation("affine realization needs 'basis'".into()))?
            .iter()
            .map(|m| strings_to_mat(m))
            .collect::<Result<Vec<_>, _>>()?;
        let r = AffineRealization::from_matrices(n, basis)
            .map_err(|e| CatalogError::Validation(e.to_string()))?;
        if let Some(c) = &self.structure_constants {
            let grid = constants_to_grid(c)?;
            r.check_structure_constants(&grid)
                .map_err(|e| CatalogError::Validation(e.to_string()))?;
        }
        Ok(r)
    }

    pub fn to_abstract(&self) -> Result<AbstractLieAlgebra, CatalogError> {
        if self.kind == "affine_realization" {
            return Ok(self.to_realization()?.algebra().clone());
        }
        let c = self.structure_constants.as_ref().ok_or_else(|| {
            CatalogError::Validation("abstract algebra needs 'structure_constants'".into())
        })?;
        let grid = constants_to_grid(c)?;
        AbstractLieAlgebra::new(grid.len(), grid)
            .map_err(|e| CatalogError::Validation(e.to_string()))
    }

    pub fn to_metric(&self) -> Result<MetricLieAlgebra, CatalogError> {
        if self.kind != "metric" {
            return Err(CatalogError::Validation(format!(
                "entry '{}' has kind '{}', expected a metric algebra",
                self.name, self.kind
            )));
        }
        let g = {
            let c = self.structure_constants.as_ref().ok_or_else(|| {
                CatalogError::Validation("metric algebra needs 'structure_constants'".into())
            })?;
            let grid = constants_to_grid(c)?;
            AbstractLieAlgebra::new(grid.len(), grid)
                .map_err(|e| CatalogError::Validation(e.to_string()))?
        };
        let gram = strings_to_mat(
            self.gram
                .as_ref()
                .ok_or_else(|| CatalogError::Validation("metric algebra needs 'gram'".into()))?,
        )?;
        MetricLieAlgebra::new(g, gram).map_err(|e| CatalogError::Validation(e.to_string()))
    }

    pub fn witness_matrices(&self) -> Result<Vec<Mat>, CatalogError> {
        self.witness_elements
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|m| strings_to_mat(m))
            .collect()
    }
}

/// Canonical JSON form (stable field order, two-space indent, newline).
pub fn save(doc: &AlgebraSpecDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization");
    s.push('\n');
    s
}

pub fn load(text: &str) -> Result<AlgebraSpecDocument, CatalogError> {
    let doc: AlgebraSpecDocument =
        serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(CatalogError::Validation(format!(
            "unsupported schema version {}",
            doc.schema
        )));
    }
    if !matches!(doc.kind.as_str(), "affine_realization" | "abstract" | "metric") {
        return Err(CatalogError::Validation(format!(
            "unknown kind '{}'",
            doc.kind
        )));
    }
    // surface rational parse errors early
    for grid in doc.basis.iter().flatten().chain(doc.witness_elements.iter().flatten()) {
        strings_to_mat(grid)?;
    }
    if let Some(g) = &doc.gram {
        strings_to_mat(g)?;
    }
    if let Some(c) = &doc.structure_constants {
        constants_to_grid(c)?;
    }
    Ok(doc)
}

// --- built-in catalog -------------------------------------------------

fn s(v: i64) -> String {
    format_rat(&rint(v))
}

fn m3(rows: [[&str; 3]; 3]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn m4(rows: [[&str; 4]; 4]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn zeros3(dim: usize) -> Vec<Vec<Vec<String>>> {
    vec![vec![vec![s(0); dim]; dim]; dim]
}

fn realization_doc(
    name: &str,
    n: usize,
    basis: Vec<Vec<Vec<String>>>,
    witness: Option<Vec<Vec<Vec<String>>>>,
    expected: ExpectedResults,
    note: &str,
) -> AlgebraSpecDocument {
    AlgebraSpecDocument {
        schema: SCHEMA_VERSION,
        name: name.into(),
        kind: "affine_realization".into(),
        ambient_dim: Some(n),
        basis: Some(basis),
        structure_constants: None,
        gram: None,
        witness_elements: witness,
        expected: Some(expected),
        note: Some(note.into()),
    }
}

/// All built-in entries, in a fixed order.
pub fn catalog() -> Vec<AlgebraSpecDocument> {
    let mut entries = Vec::new();

    entries.push(realization_doc(
        "translations_a2",
        2,
        vec![
            m3([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]),
            m3([["0", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
        ],
        Some(vec![
            m3([["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]]),
            m3([["1", "0", "0"], ["0", "1", "1"], ["0", "0", "1"]]),
        ]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(true),
            transitivity: Some("transitive".into()),
            delta: Some("1".into()),
            open_orbit_count: Some(1),
            open_orbit_note: Some("the whole plane".into()),
            absolute_class_vanishes: Some(false),
            relative_class_vanishes: Some(false),
            top_relative_cohomology_dim: Some(1),
            ..Default::default()
        },
        "translations of the plane; simply transitive abelian",
    ));

    entries.push(realization_doc(
        "family_U",
        2,
        vec![
            m3([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]),
            m3([["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
        ],
        Some(vec![
            m3([["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]]),
            m3([["1", "1", "1/2"], ["0", "1", "1"], ["0", "0", "1"]]),
        ]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(true),
            transitivity: Some("transitive".into()),
            delta: Some("1".into()),
            open_orbit_count: Some(1),
            open_orbit_note: Some("the whole plane".into()),
            ..Default::default()
        },
        "unipotent shear action on the plane; simply transitive abelian",
    ));

    entries.push(realization_doc(
        "family_A1",
        2,
        vec![
            m3([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]),
            m3([["1", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
        ],
        Some(vec![m3([["2", "0", "0"], ["0", "1", "1"], ["0", "0", "1"]])]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(true),
            transitivity: Some("transitive".into()),
            delta: Some("1".into()),
            open_orbit_count: Some(1),
            open_orbit_note: Some("the whole plane".into()),
            ..Default::default()
        },
        "solvable non-abelian simply transitive action on the plane",
    ));

    entries.push(realization_doc(
        "family_B",
        2,
        vec![
            m3([["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]),
            m3([["0", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
        ],
        Some(vec![m3([["2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]])]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(false),
            transitivity: Some("not_transitive".into()),
            delta: Some("x1".into()),
            open_orbit_count: Some(2),
            open_orbit_note: Some("half-planes".into()),
            relative_class_vanishes: Some(true),
            top_relative_cohomology_dim: Some(0),
            ..Default::default()
        },
        "dilation times translation; two half-planes as open orbits",
    ));

    entries.push(realization_doc(
        "family_C11",
        2,
        vec![
            m3([["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]),
            m3([["1", "0", "0"], ["0", "-1", "-1"], ["0", "0", "0"]]),
        ],
        Some(vec![m3([
            ["2", "0", "0"],
            ["0", "1/2", "-1/2"],
            ["0", "0", "1"],
        ])]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(false),
            transitivity: Some("not_transitive".into()),
            delta: Some("-x2 - 1".into()),
            open_orbit_count: Some(2),
            open_orbit_note: Some("half-planes".into()),
            ..Default::default()
        },
        "solvable action with two half-plane orbits",
    ));

    entries.push(realization_doc(
        "family_C",
        2,
        vec![
            m3([["1", "0", "0"], ["0", "-1", "0"], ["0", "0", "0"]]),
            m3([["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]]),
        ],
        Some(vec![m3([["2", "0", "0"], ["0", "1/2", "0"], ["0", "0", "1"]])]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(false),
            transitivity: Some("not_transitive".into()),
            delta: Some("x2^2".into()),
            open_orbit_count: Some(2),
            open_orbit_note: Some("half-planes".into()),
            ..Default::default()
        },
        "linear solvable action with two half-plane orbits",
    ));

    entries.push(realization_doc(
        "family_Q2",
        2,
        vec![
            m3([["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]),
            m3([["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]),
        ],
        Some(vec![m3([["2", "0", "0"], ["0", "3", "0"], ["0", "0", "1"]])]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(false),
            transitivity: Some("not_transitive".into()),
            delta: Some("x1*x2".into()),
            open_orbit_count: Some(4),
            open_orbit_note: Some("open sectors".into()),
            ..Default::default()
        },
        "diagonal torus acting on the plane; four open sectors",
    ));

    entries.push(realization_doc(
        "family_P",
        2,
        vec![
            m3([["2", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]),
            m3([["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]),
        ],
        Some(vec![
            m3([["4", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]),
            m3([["1", "1", "1/2"], ["0", "1", "1"], ["0", "0", "1"]]),
        ]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(false),
            transitivity: Some("not_transitive".into()),
            delta: Some("-x2^2 + 2*x1".into()),
            open_orbit_count: Some(2),
            open_orbit_note: Some("parabolic domains".into()),
            ..Default::default()
        },
        "solvable action whose open orbits are the two parabolic domains",
    ));

    entries.push(realization_doc(
        "family_E",
        2,
        vec![
            m3([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]),
            m3([["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]]),
        ],
        Some(vec![
            m3([["3/5", "4/5", "0"], ["-4/5", "3/5", "0"], ["0", "0", "1"]]),
            m3([["2", "0", "0"], ["0", "2", "0"], ["0", "0", "1"]]),
        ]),
        ExpectedResults {
            prehomogeneous: Some(true),
            simply_transitive: Some(false),
            transitivity: Some("not_transitive".into()),
            delta: Some("-x1^2 - x2^2".into()),
            open_orbit_count: Some(1),
            open_orbit_note: Some("plane with the origin removed".into()),
            ..Default::default()
        },
        "rotation and dilation; open orbit is the punctured plane",
    ));

    entries.push(realization_doc(
        "gh_example",
        3,
        vec![
            m4([
                ["0", "0", "0", "1"],
                ["0", "0", "0", "0"],
                ["0", "0", "0", "0"],
                ["0", "0", "0", "0"],
            ]),
            m4([
                ["0", "1", "0", "0"],
                ["0", "0", "0", "1"],
                ["0", "0", "0", "0"],
                ["0", "0", "0", "0"],
            ]),
            m4([
                ["0", "0", "0", "0"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", "1"],
                ["0", "0", "0", "0"],
            ]),
            m4([
                ["0", "0", "1", "0"],
                ["0", "0", "0", "0"],
                ["0", "0", "0", "0"],
                ["0", "0", "0", "0"],
            ]),
        ],
        Some(vec![
            m4([
                ["1", "1", "0", "1/2"],
                ["0", "1", "0", "1"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", "1"],
            ]),
            m4([
                ["1", "0", "0", "0"],
                ["0", "1", "1", "1/2"],
                ["0", "0", "1", "1"],
                ["0", "0", "0", "1"],
            ]),
        ]),
        ExpectedResults {
            prehomogeneous: Some(true),
            transitivity: Some("transitive".into()),
            absolute_class_vanishes: Some(true),
            relative_class_vanishes: Some(false),
            top_relative_cohomology_dim: Some(1),
            open_orbit_count: Some(1),
            open_orbit_note: Some("all of 3-space".into()),
            ..Default::default()
        },
        "four-dimensional unipotent group acting transitively on 3-space with one-dimensional stabilizer",
    ));

    entries.push(AlgebraSpecDocument {
        schema: SCHEMA_VERSION,
        name: "a3".into(),
        kind: "abstract".into(),
        ambient_dim: None,
        basis: None,
        structure_constants: Some(zeros3(3)),
        gram: None,
        witness_elements: None,
        expected: None,
        note: Some("abelian algebra of dimension three".into()),
    });

    let mut h3_constants = zeros3(3);
    h3_constants[0][1][2] = s(1);
    h3_constants[1][0][2] = s(-1);
    entries.push(AlgebraSpecDocument {
        schema: SCHEMA_VERSION,
        name: "h3".into(),
        kind: "abstract".into(),
        ambient_dim: None,
        basis: None,
        structure_constants: Some(h3_constants),
        gram: None,
        witness_elements: None,
        expected: None,
        note: Some("Heisenberg algebra of dimension three".into()),
    });

    let h3 = catalog_h3();
    let t_h3 = coadjoint_extension(&h3, &CoadjointCocycle::zero(3)).expect("catalog t_{h3,0}");
    let mut doc = AlgebraSpecDocument::from_metric("t_h3_0", &t_h3);
    doc.expected = Some(ExpectedResults {
        signature: Some((3, 3)),
        ..Default::default()
    });
    doc.note = Some("coadjoint extension of the Heisenberg algebra, zero cocycle".into());
    entries.push(doc);

    let t_a3 = coadjoint_extension(&AbstractLieAlgebra::abelian(3), &omega_det())
        .expect("catalog t_{a3, det}");
    let mut doc = AlgebraSpecDocument::from_metric("t_a3_det", &t_a3);
    doc.expected = Some(ExpectedResults {
        signature: Some((3, 3)),
        ..Default::default()
    });
    doc.note = Some("coadjoint extension of an abelian algebra by the determinant 3-form".into());
    entries.push(doc);

    entries
}

pub fn catalog_entry(name: &str) -> Option<AlgebraSpecDocument> {
    catalog().into_iter().find(|d| d.name == name)
}

fn catalog_h3() -> AbstractLieAlgebra {
    let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
    c[0][1][2] = rint(1);
    c[1][0][2] = rint(-1);
    AbstractLieAlgebra::new(3, c).expect("h3 structure constants")
}

/// The determinant 3-form on an ordered basis of a 3-dimensional
/// algebra, as a coadjoint 2-cocycle: `omega(e_i, e_j) = det(e_i, e_j, .)`.
pub fn det_three_form(base: &AbstractLieAlgebra) -> Result<CoadjointCocycle, CatalogError> {
    if base.dim() != 3 {
        return Err(CatalogError::Validation(
            "the determinant 3-form needs a 3-dimensional base".into(),
        ));
    }
    let mut grid = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
    let eps = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)];
    for (i, j, l, sign) in eps {
        grid[i][j][l] = rint(sign);
    }
    CoadjointCocycle::new(base, grid).map_err(|e| CatalogError::Validation(e.to_string()))
}

/// Determinant 3-form on the abelian 3-dimensional algebra.
pub fn omega_det() -> CoadjointCocycle {
    det_three_form(&AbstractLieAlgebra::abelian(3)).expect("determinant cocycle")
}

/// Parses a coadjoint cocycle from a JSON grid of `"p/q"` strings,
/// `grid[i][j][l]` being the `f^l`-component of `omega(e_i, e_j)`.
pub fn omega_from_json(
    base: &AbstractLieAlgebra,
    text: &str,
) -> Result<CoadjointCocycle, CatalogError> {
    let raw: Vec<Vec<Vec<String>>> =
        serde_json::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
    let grid = constants_to_grid(&raw)?;
    CoadjointCocycle::new(base, grid).map_err(|e| CatalogError::Validation(e.to_string()))
}

use num_traits::Zero;

// --- reports ----------------------------------------------------------

/// Serializable analysis report with deterministic field order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub kind: String,
    pub prehomogeneous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    pub chi: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simply_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absolute_class_vanishes: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_class_vanishes: Option<bool>,
    pub verdict: String,
    pub criterion: String,
    pub centralizer_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_relative_cohomology_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_orbit_count: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_orbit_note: Option<String>,
}

pub fn verdict_str(v: TransitivityVerdict) -> &'static str {
    match v {
        TransitivityVerdict::Transitive => "transitive",
        TransitivityVerdict::NotTransitive => "not transitive",
        TransitivityVerdict::NotApplicable => "undetermined",
    }
}

pub fn verdict_key(v: TransitivityVerdict) -> &'static str {
    match v {
        TransitivityVerdict::Transitive => "transitive",
        TransitivityVerdict::NotTransitive => "not_transitive",
        TransitivityVerdict::NotApplicable => "not_applicable",
    }
}

pub fn build_report(doc: &AlgebraSpecDocument, analysis: &AnalysisReport) -> Report {
    Report {
        name: doc.name.clone(),
        kind: doc.kind.clone(),
        prehomogeneous: analysis.prehomogeneous,
        witness: analysis
            .witness
            .as_ref()
            .map(|w| w.iter().map(format_rat).collect()),
        delta: analysis.delta.as_ref().map(|d| d.to_string()),
        chi: analysis.chi.coeffs.iter().map(format_rat).collect(),
        simply_transitive: analysis.simply_transitive,
        absolute_class_vanishes: analysis.absolute_class_vanishes,
        relative_class_vanishes: analysis.relative_class_vanishes,
        verdict: verdict_str(analysis.transitivity).into(),
        criterion: analysis.criterion.into(),
        centralizer_dim: analysis.centralizer_dim,
        top_relative_cohomology_dim: analysis.top_relative_cohomology_dim,
        open_orbit_count: doc.expected.as_ref().and_then(|e| e.open_orbit_count),
        open_orbit_note: doc.expected.as_ref().and_then(|e| e.open_orbit_note.clone()),
    }
}

impl Report {
    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |l: String| {
            out.push_str(&l);
            out.push('\n');
        };
        line(format!("name: {}", self.name));
        line(format!("prehomogeneous: {}", self.prehomogeneous));
        if let Some(w) = &self.witness {
            line(format!("witness: ({})", w.join(", ")));
        }
        if let Some(d) = &self.delta {
            line(format!("delta: {d}"));
        }
        line(format!("chi: [{}]", self.chi.join(", ")));
        if let Some(st) = self.simply_transitive {
            line(format!("simply transitive: {st}"));
        }
        if let Some(v) = self.absolute_class_vanishes {
            line(format!("absolute class vanishes: {v}"));
        }
        if let Some(v) = self.relative_class_vanishes {
            line(format!("relative class vanishes: {v}"));
        }
        if let Some(d) = self.top_relative_cohomology_dim {
            line(format!("H^n: {d}"));
        }
        line(format!("verdict: {} ({})", self.verdict, self.criterion));
        line(format!("centralizer dimension: {}", self.centralizer_dim));
        if let Some(c) = self.open_orbit_count {
            match &self.open_orbit_note {
                Some(n) => line(format!("open orbits: {c} ({n})")),
                None => line(format!("open orbits: {c}")),
            }
        }
        out
    }
}

/// Runs the analysis pipeline on an affine-realization document.
pub fn run_analysis(doc: &AlgebraSpecDocument, seed: u64) -> Result<Report, CatalogError> {
    let r = doc.to_realization()?;
    let analysis = analyze(&r, seed).map_err(|e| CatalogError::Validation(e.to_string()))?;
    Ok(build_report(doc, &analysis))
}

/// Compares a report with the document's expected block; returns the
/// first mismatch as a validation error.
pub fn verify_expected(doc: &AlgebraSpecDocument, report: &Report) -> Result<(), CatalogError> {
    let Some(exp) = &doc.expected else {
        return Ok(());
    };
    let fail = |field: &str, want: &str, got: &str| {
        Err(CatalogError::Validation(format!(
            "entry '{}': expected {field} = {want}, got {got}",
            doc.name
        )))
    };
    if let Some(p) = exp.prehomogeneous {
        if p != report.prehomogeneous {
            return fail("prehomogeneous", &p.to_string(), &report.prehomogeneous.to_string());
        }
    }
    if let Some(st) = exp.simply_transitive {
        if Some(st) != report.simply_transitive {
            return fail("simply_transitive", &st.to_string(), &format!("{:?}", report.simply_transitive));
        }
    }
    if let Some(t) = &exp.transitivity {
        let got = match report.verdict.as_str() {
            "transitive" => "transitive",
            "not transitive" => "not_transitive",
            _ => "not_applicable",
        };
        if t != got {
            return fail("transitivity", t, got);
        }
    }
    if let Some(d) = &exp.delta {
        match &report.delta {
            Some(got) if got == d => {}
            other => return fail("delta", d, &format!("{other:?}")),
        }
    }
    if let Some(v) = exp.absolute_class_vanishes {
        if Some(v) != report.absolute_class_vanishes {
            return fail("absolute_class_vanishes", &v.to_string(), &format!("{:?}", report.absolute_class_vanishes));
        }
    }
    if let Some(v) = exp.relative_class_vanishes {
        if Some(v) != report.relative_class_vanishes {
            return fail("relative_class_vanishes", &v.to_string(), &format!("{:?}", report.relative_class_vanishes));
        }
    }
    if let Some(d) = exp.top_relative_cohomology_dim {
        if Some(d) != report.top_relative_cohomology_dim {
            return fail("top_relative_cohomology_dim", &d.to_string(), &format!("{:?}", report.top_relative_cohomology_dim));
        }
    }
    Ok(())
}

/// Text summary for a constructed metric algebra (`construct coadjoint`).
pub fn metric_summary(m: &MetricLieAlgebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("dimension: {}\n", m.dim()));
    match signature(&m.gram) {
        Ok((p, q)) => out.push_str(&format!("signature: ({p},{q})\n")),
        Err(e) => out.push_str(&format!("signature: error ({e})\n")),
    }
    out.push_str(&format!("biinvariant: {}\n", is_biinvariant(m)));
    out.push_str(&format!("flat biinvariant: {}\n", is_flat_biinvariant(m)));
    out
}

/// `construct tube` output pair: realization document plus forms.
pub fn tube_documents(name: &str, tube: &DualTube) -> (AlgebraSpecDocument, String) {
    let doc = AlgebraSpecDocument::from_realization(&format!("{name}_dual_tube"), &tube.realization);
    let mut text = String::new();
    text.push_str(&format!(
        "ambient dimension: {}\n",
        tube.realization.ambient_dim()
    ));
    text.push_str(&format!("generators: {}\n", tube.realization.dim()));
    let fmt_mat = |m: &Mat| {
        (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| format_rat(&m[(i, j)]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    text.push_str(&format!("gram: {}\n", fmt_mat(&tube.gram)));
    text.push_str(&format!("omega: {}\n", fmt_mat(&tube.omega)));
    text.push_str(&format!("para: {}\n", fmt_mat(&tube.para)));
    (doc, text)
}

/// `construct affinize`: input must be a metric (or abstract) two-step
/// algebra; returns the realization document.
pub fn affinize_document(doc: &AlgebraSpecDocument) -> Result<AlgebraSpecDocument, CatalogError> {
    let g = match doc.kind.as_str() {
        "metric" => doc.to_metric()?.algebra,
        _ => doc.to_abstract()?,
    };
    let r = affinization_two_step(&g).map_err(|e| CatalogError::Validation(e.to_string()))?;
    Ok(AlgebraSpecDocument::from_realization(
        &format!("{}_affinization", doc.name),
        &r,
    ))
}

pub fn dual_tube_document(doc: &AlgebraSpecDocument) -> Result<(AlgebraSpecDocument, String), CatalogError> {
    let r = doc.to_realization()?;
    let tube = dual_tube_realization(&r);
    Ok(tube_documents(&doc.name, &tube))
}
