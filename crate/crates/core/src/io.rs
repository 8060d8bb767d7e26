//! JSON interchange documents.
//!
//! Every top-level document carries `"format": "rigidity-kit/1"` and unknown
//! fields are rejected.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclo5;
use crate::error::{Error, Result};
use crate::flex::Flex;
use crate::framework::{Framework, Point};
use crate::graph::{Graph, SymmetryAction, VertexId};
use crate::nac::{Color, EdgeColoring, TowerInstance};
use crate::penrose::{Face, Line, PenrosePatch, Tile};
use crate::ribbons::BracedGraph;

pub const FORMAT: &str = "rigidity-kit/1";

fn format_tag() -> String {
    FORMAT.to_owned()
}

pub type Pair = (VertexId, VertexId);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphBody {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Pair>,
}

impl GraphBody {
    pub fn from_graph(g: &Graph) -> Self {
        GraphBody {
            vertices: g.vertices().to_vec(),
            edges: (0..g.edge_count())
                .map(|e| {
                    let (u, v) = g.edge_ids(e);
                    (u.clone(), v.clone())
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub format: String,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub format: String,
    pub k: usize,
    pub generator: BTreeMap<VertexId, VertexId>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDoc {
    pub format: String,
    pub red: Vec<Pair>,
    pub blue: Vec<Pair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracedDoc {
    pub format: String,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Pair>,
    pub braces: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<BTreeMap<VertexId, Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<BTreeMap<VertexId, [i64; 5]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub lines: [Line; 2],
    pub corners: [VertexId; 4],
    pub tile: Tile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RibbonLabelDoc {
    pub edge: Pair,
    pub line: Line,
}

/// A framework; patches add `faces` and `ribbon_labels`, braced frameworks
/// add `braces`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkDoc {
    pub format: String,
    pub graph: GraphBody,
    pub placement: BTreeMap<VertexId, Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<BTreeMap<VertexId, [i64; 5]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braces: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ribbon_labels: Option<Vec<RibbonLabelDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlexDoc {
    pub format: String,
    pub graph: GraphBody,
    pub base: VertexId,
    pub rotating: BTreeMap<VertexId, Point>,
    pub fixed: BTreeMap<VertexId, Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centering: Option<[Point; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub format: String,
    pub levels: Vec<GraphBody>,
    pub e1: Pair,
    pub e2: Pair,
}

/// Documents with a format tag.
pub trait Tagged {
    fn format(&self) -> &str;
}

macro_rules! tagged {
    ($($t:ty),*) => {
        $(impl Tagged for $t {
            fn format(&self) -> &str {
                &self.format
            }
        })*
    };
}

tagged!(
    GraphDoc,
    ActionDoc,
    ColoringDoc,
    BracedDoc,
    FrameworkDoc,
    FlexDoc,
    TowerDoc
);

/// Parses a document and checks its format tag.
pub fn parse<T: DeserializeOwned + Tagged>(text: &str) -> Result<T> {
    let doc: T = serde_json::from_str(text)?;
    if doc.format() != FORMAT {
        return Err(Error::Format(format!(
            "unsupported format {:?}, expected {FORMAT:?}",
            doc.format()
        )));
    }
    Ok(doc)
}

pub fn to_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        let body = GraphBody::from_graph(g);
        GraphDoc {
            format: format_tag(),
            vertices: body.vertices,
            edges: body.edges,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())
    }
}

impl ActionDoc {
    pub fn from_action(a: &SymmetryAction) -> Self {
        ActionDoc {
            format: format_tag(),
            k: a.k,
            generator: a.generator.clone(),
        }
    }

    pub fn to_action(&self) -> SymmetryAction {
        SymmetryAction::new(self.k, self.generator.clone())
    }
}

impl ColoringDoc {
    pub fn from_coloring(g: &Graph, c: &EdgeColoring) -> Self {
        ColoringDoc {
            format: format_tag(),
            red: c.pairs(g, Color::Red),
            blue: c.pairs(g, Color::Blue),
        }
    }

    pub fn to_coloring(&self, g: &Graph) -> Result<EdgeColoring> {
        EdgeColoring::from_pairs(g, &self.red, &self.blue)
    }
}

fn placement_map(g: &Graph, pts: &[Point]) -> BTreeMap<VertexId, Point> {
    g.vertices()
        .iter()
        .cloned()
        .zip(pts.iter().copied())
        .collect()
}

fn exact_map(g: &Graph, exact: &Option<Vec<Cyclo5>>) -> Option<BTreeMap<VertexId, [i64; 5]>> {
    exact.as_ref().map(|x| {
        g.vertices()
            .iter()
            .cloned()
            .zip(x.iter().map(Cyclo5::coefficients))
            .collect()
    })
}

fn per_vertex<T: Copy>(g: &Graph, map: &BTreeMap<VertexId, T>, what: &str) -> Result<Vec<T>> {
    if map.len() != g.vertex_count() {
        return Err(Error::Format(format!(
            "{what} has {} entries for {} vertices",
            map.len(),
            g.vertex_count()
        )));
    }
    g.vertices()
        .iter()
        .map(|v| {
            map.get(v)
                .copied()
                .ok_or_else(|| Error::Format(format!("{what} misses vertex {v}")))
        })
        .collect()
}

fn build_framework(
    g: Graph,
    placement: Option<&BTreeMap<VertexId, Point>>,
    exact: Option<&BTreeMap<VertexId, [i64; 5]>>,
) -> Result<Framework> {
    match (exact, placement) {
        (Some(x), _) => {
            let coeffs = per_vertex(&g, x, "exact")?;
            Framework::exact(g, coeffs.into_iter().map(Cyclo5::new).collect())
        }
        (None, Some(p)) => {
            let pts = per_vertex(&g, p, "placement")?;
            Framework::new(g, pts)
        }
        (None, None) => Err(Error::Format("missing placement".into())),
    }
}

impl BracedDoc {
    pub fn from_braced(b: &BracedGraph, f: Option<&Framework>) -> Self {
        let body = GraphBody::from_graph(b.base());
        BracedDoc {
            format: format_tag(),
            vertices: body.vertices,
            edges: body.edges,
            braces: b.brace_ids(),
            placement: f.map(|f| placement_map(&f.graph, &f.points)),
            exact: f.and_then(|f| exact_map(&f.graph, &f.exact)),
        }
    }

    pub fn to_braced(&self) -> Result<BracedGraph> {
        let g = Graph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())?;
        BracedGraph::new(g, &self.braces)
    }

    /// Base framework, if a placement is present.
    pub fn to_framework(&self) -> Result<Option<Framework>> {
        if self.placement.is_none() && self.exact.is_none() {
            return Ok(None);
        }
        let g = Graph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())?;
        build_framework(g, self.placement.as_ref(), self.exact.as_ref()).map(Some)
    }
}

impl FrameworkDoc {
    pub fn from_framework(f: &Framework) -> Self {
        FrameworkDoc {
            format: format_tag(),
            graph: GraphBody::from_graph(&f.graph),
            placement: placement_map(&f.graph, &f.points),
            exact: exact_map(&f.graph, &f.exact),
            braces: None,
            faces: None,
            ribbon_labels: None,
        }
    }

    pub fn from_patch(p: &PenrosePatch) -> Self {
        let g = p.graph();
        let mut doc = FrameworkDoc::from_framework(&p.framework);
        doc.faces = Some(
            p.faces
                .iter()
                .map(|f| FaceDoc {
                    lines: f.lines,
                    corners: f.corners.map(|c| g.vertex(c).clone()),
                    tile: f.tile(),
                })
                .collect(),
        );
        doc.ribbon_labels = Some(
            p.edge_lines
                .iter()
                .enumerate()
                .map(|(e, &line)| {
                    let (u, v) = g.edge_ids(e);
                    RibbonLabelDoc {
                        edge: (u.clone(), v.clone()),
                        line,
                    }
                })
                .collect(),
        );
        doc
    }

    pub fn from_braced(b: &BracedGraph, f: &Framework) -> Self {
        let mut doc = FrameworkDoc::from_framework(f);
        doc.braces = Some(b.brace_ids());
        doc
    }

    pub fn to_framework(&self) -> Result<Framework> {
        build_framework(
            self.graph.to_graph()?,
            Some(&self.placement),
            self.exact.as_ref(),
        )
    }

    /// Braced graph over the framework's graph (no braces if absent).
    pub fn to_braced(&self) -> Result<BracedGraph> {
        BracedGraph::new(
            self.graph.to_graph()?,
            self.braces.as_deref().unwrap_or(&[]),
        )
    }

    pub fn to_patch(&self) -> Result<PenrosePatch> {
        let framework = self.to_framework()?;
        if framework.exact.is_none() {
            return Err(Error::Format("patch needs exact coordinates".into()));
        }
        let g = &framework.graph;
        let faces = self
            .faces
            .as_ref()
            .ok_or_else(|| Error::Format("patch needs faces".into()))?
            .iter()
            .map(|f| {
                let corners = [0, 1, 2, 3]
                    .map(|i| g.require_index(&f.corners[i]))
                    .into_iter()
                    .collect::<Result<Vec<_>>>()?;
                Ok(Face {
                    lines: f.lines,
                    corners: [corners[0], corners[1], corners[2], corners[3]],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = self
            .ribbon_labels
            .as_ref()
            .ok_or_else(|| Error::Format("patch needs ribbon_labels".into()))?;
        let mut edge_lines = vec![None; g.edge_count()];
        for l in labels {
            edge_lines[g.find_edge(&l.edge.0, &l.edge.1)?] = Some(l.line);
        }
        let edge_lines = edge_lines
            .into_iter()
            .map(|l| l.ok_or_else(|| Error::Format("unlabelled edge".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PenrosePatch {
            framework,
            faces,
            edge_lines,
        })
    }
}

impl FlexDoc {
    pub fn from_flex(x: &Flex) -> Self {
        let g = &x.graph;
        FlexDoc {
            format: format_tag(),
            graph: GraphBody::from_graph(g),
            base: g.vertex(x.base).clone(),
            rotating: placement_map(g, &x.rotating),
            fixed: placement_map(g, &x.fixed),
            centering: x.centering.map(|(a, b)| [a, b]),
        }
    }

    pub fn to_flex(&self) -> Result<Flex> {
        let g = self.graph.to_graph()?;
        Ok(Flex {
            base: g.require_index(&self.base)?,
            rotating: per_vertex(&g, &self.rotating, "rotating")?,
            fixed: per_vertex(&g, &self.fixed, "fixed")?,
            centering: self.centering.map(|[a, b]| (a, b)),
            graph: g,
        })
    }
}

impl TowerDoc {
    pub fn from_tower(t: &TowerInstance) -> Self {
        TowerDoc {
            format: format_tag(),
            levels: t.levels.iter().map(GraphBody::from_graph).collect(),
            e1: t.e1.clone(),
            e2: t.e2.clone(),
        }
    }

    pub fn to_tower(&self) -> Result<TowerInstance> {
        Ok(TowerInstance {
            levels: self
                .levels
                .iter()
                .map(GraphBody::to_graph)
                .collect::<Result<Vec<_>>>()?,
            e1: self.e1.clone(),
            e2: self.e2.clone(),
        })
    }
}
