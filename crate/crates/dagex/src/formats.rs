//! JSON encodings of graphs, CLICs, indices, permutations, arrays and test
//! reports.

use std::collections::BTreeMap;

use dagex_core::clic::{clic_closure, Violation};
use dagex_core::dag::build_dag;
use dagex_core::{ArrayBundle, Clic, Dag, GPermutation, Index, LocalIso};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] dagex_core::Error),
    #[error("not a valid CLIC:\n{0}")]
    InvalidClic(String),
}

/// A real written with 17 significant digits, enough to round-trip any
/// `f64`. Non-finite values are written as `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw =
            RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Option::<f64>::deserialize(d).map(|x| Real(x.unwrap_or(f64::NAN)))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON followed by exactly one newline.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn to_dag(&self) -> Result<Dag, LoadError> {
        Ok(build_dag(&self.vertices, &self.edges)?.0)
    }

    /// Canonical form: sorted labels and reduced, sorted edges.
    pub fn from_dag(d: &Dag) -> GraphJson {
        let mut edges: Vec<(String, String)> = d
            .edges()
            .iter()
            .map(|&(a, b)| (d.label(a).to_string(), d.label(b).to_string()))
            .collect();
        edges.sort();
        GraphJson {
            vertices: d.labels().to_vec(),
            edges,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoJson {
    pub map: BTreeMap<String, String>,
}

impl IsoJson {
    pub fn from_iso(d: &Dag, k: &LocalIso) -> IsoJson {
        IsoJson {
            map: k
                .pairs()
                .map(|(x, y)| (d.label(x).to_string(), d.label(y).to_string()))
                .collect(),
        }
    }

    pub fn to_iso(&self, d: &Dag) -> Result<LocalIso, LoadError> {
        let pairs = self
            .map
            .iter()
            .map(|(a, b)| Ok((d.vertex(a)?, d.vertex(b)?)))
            .collect::<Result<Vec<_>, dagex_core::Error>>()?;
        Ok(LocalIso::from_pairs(d, &pairs)?)
    }

    /// `u→v, v→u, r→c`
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}→{b}")).collect();
        parts.join(", ")
    }
}

/// `{"isos": [...]}` lists members (identities optional) and is validated;
/// `{"generators": [...]}` is closed under the axioms instead.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClicJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isos: Option<Vec<IsoJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<IsoJson>>,
}

fn describe(d: &Dag, v: &[Violation]) -> String {
    let lines: Vec<String> = v
        .iter()
        .map(|x| {
            let why: Vec<String> = x
                .witnesses
                .iter()
                .map(|w| format!("[{}]", IsoJson::from_iso(d, w).to_text()))
                .collect();
            format!(
                "  {}: missing [{}] forced by {}",
                x.axiom,
                IsoJson::from_iso(d, &x.missing).to_text(),
                if why.is_empty() {
                    "-".to_string()
                } else {
                    why.join(" ")
                }
            )
        })
        .collect();
    lines.join("\n")
}

impl ClicJson {
    pub fn to_clic(&self, d: &Dag) -> Result<Clic, LoadError> {
        let parse = |list: &[IsoJson]| {
            list.iter()
                .map(|k| k.to_iso(d))
                .collect::<Result<Vec<_>, _>>()
        };
        match (&self.isos, &self.generators) {
            (Some(isos), None) => Clic::from_members(d, &parse(isos)?)
                .map_err(|v| LoadError::InvalidClic(describe(d, &v))),
            (None, Some(gens)) => Ok(clic_closure(d, &parse(gens)?)?),
            _ => Err(LoadError::InvalidClic(
                "expected exactly one of \"isos\" or \"generators\"".into(),
            )),
        }
    }

    /// Every member of the closure, identities included.
    pub fn from_clic(d: &Dag, k: &Clic) -> ClicJson {
        ClicJson {
            isos: Some(
                k.members()
                    .iter()
                    .map(|m| IsoJson::from_iso(d, m))
                    .collect(),
            ),
            generators: None,
        }
    }

    /// Only the non-identity members.
    pub fn nontrivial(d: &Dag, k: &Clic) -> ClicJson {
        ClicJson {
            isos: Some(k.nontrivial().map(|m| IsoJson::from_iso(d, m)).collect()),
            generators: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexJson {
    pub dom: Vec<String>,
    pub vals: BTreeMap<String, u64>,
}

impl IndexJson {
    pub fn from_index(d: &Dag, a: &Index) -> IndexJson {
        IndexJson {
            dom: a.dom().iter().map(|v| d.label(v).to_string()).collect(),
            vals: a.iter().map(|(v, x)| (d.label(v).to_string(), x)).collect(),
        }
    }

    pub fn to_index(&self, d: &Dag) -> Result<Index, LoadError> {
        let dom = d.set_from_labels(&self.dom)?;
        let mut pairs = Vec::new();
        for (l, &x) in &self.vals {
            let v = d.vertex(l)?;
            if !dom.contains(v) {
                return Err(dagex_core::Error::NotSubset.into());
            }
            pairs.push((v, x));
        }
        if pairs.len() != dom.len() {
            return Err(dagex_core::Error::NotSubset.into());
        }
        Ok(Index::new(d, &pairs)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub ctx: BTreeMap<String, u64>,
    pub perm: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermutationJson {
    #[serde(rename = "box")]
    pub size: u32,
    #[serde(default)]
    pub tables: BTreeMap<String, Vec<TableJson>>,
}

impl PermutationJson {
    pub fn from_perm(d: &Dag, tau: &GPermutation) -> PermutationJson {
        let mut tables: BTreeMap<String, Vec<TableJson>> = BTreeMap::new();
        for (v, ctx, perm) in tau.tables() {
            tables
                .entry(d.label(v).to_string())
                .or_default()
                .push(TableJson {
                    ctx: ctx
                        .iter()
                        .map(|(u, x)| (d.label(u).to_string(), x))
                        .collect(),
                    perm: perm.to_vec(),
                });
        }
        PermutationJson {
            size: tau.size(),
            tables,
        }
    }

    pub fn to_perm(&self, d: &Dag) -> Result<GPermutation, LoadError> {
        let mut tau = GPermutation::identity(d, self.size);
        for (l, tables) in &self.tables {
            let v = d.vertex(l)?;
            for t in tables {
                let pairs = t
                    .ctx
                    .iter()
                    .map(|(u, &x)| Ok((d.vertex(u)?, x)))
                    .collect::<Result<Vec<_>, dagex_core::Error>>()?;
                let ctx = Index::new(d, &pairs)?;
                tau.set_table(d, v, ctx, t.perm.clone())?;
            }
        }
        Ok(tau)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Real>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<Real>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    pub graph: GraphJson,
    pub clic: ClicJson,
    #[serde(rename = "box")]
    pub size: u32,
    pub f: FJson,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub index: IndexJson,
    pub x: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatentJson {
    pub key: IndexJson,
    pub u: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleJson {
    pub spec: SpecJson,
    pub entries: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latents: Option<Vec<LatentJson>>,
}

impl SampleJson {
    pub fn from_bundle(b: &ArrayBundle, f: FJson, with_latents: bool) -> SampleJson {
        let d = &b.spec.dag;
        SampleJson {
            spec: SpecJson {
                graph: GraphJson::from_dag(d),
                clic: ClicJson::nontrivial(d, &b.spec.clic),
                size: b.spec.size,
                f,
                seed: b.spec.seed,
            },
            entries: b
                .entries
                .iter()
                .map(|(a, &x)| EntryJson {
                    index: IndexJson::from_index(d, a),
                    x: Real(x),
                })
                .collect(),
            latents: with_latents.then(|| {
                b.uniforms
                    .iter()
                    .map(|(k, &u)| LatentJson {
                        key: IndexJson::from_index(d, k.rep()),
                        u: Real(u),
                    })
                    .collect()
            }),
        }
    }
}

/// Outcome of one statistical or exact check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub test: String,
    pub stat: Real,
    pub tol: Real,
    pub pass: bool,
    pub n: usize,
    /// Base seeds; replicate seeds are derived from them.
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}
