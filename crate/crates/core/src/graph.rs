//! Dual graphs of stable marked, possibly punctured, nodal curves.
//!
//! A vertex is an irreducible component with its geometric genus, a model
//! for its normalization and a number of punctures (points removed to make it
//! quasiprojective). Edges are nodes; an edge whose endpoints coincide is a
//! self-node. Legs are marked points.
//!
//! Graphs are read from JSON:
//!
//! ```json
//! {"vertices":[{"id":"v1","genus":1,"model":{"type":"symbolic"},"punctures":0}],
//!  "edges":[["v1","v1"]],
//!  "legs":["v1"]}
//! ```
//!
//! Model types are `symbolic`, `p1`, `elliptic` (with `trace`) and `weil`
//! (with `numerator`). Every model except `p1` accepts an optional `id`
//! naming its symmetric-power generators; it defaults to the vertex id, so
//! two vertices only share generators when they share an explicit model id.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::text::is_model_char;

/// The normalization of a component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveModel {
    /// A curve of the given genus whose symmetric powers stay symbolic.
    Symbolic {
        genus: u32,
    },
    ProjectiveLine,
    /// Genus one, with Weil numerator `1 - a t + q t^2` once `q` is known.
    Elliptic {
        trace: i64,
    },
    /// A curve with a fixed Weil numerator `P(t)`, `P(0) = 1`, `deg P <= 2g`.
    Weil {
        numerator: Vec<i64>,
        genus: u32,
    },
}

impl CurveModel {
    pub fn genus(&self) -> u32 {
        match self {
            CurveModel::Symbolic { genus } | CurveModel::Weil { genus, .. } => *genus,
            CurveModel::ProjectiveLine => 0,
            CurveModel::Elliptic { .. } => 1,
        }
    }

    /// Whether the symmetric powers of this model are kept as generators.
    pub fn is_symbolic(&self) -> bool {
        !matches!(self, CurveModel::ProjectiveLine)
    }

    /// The Weil numerator, when the model fixes one. Elliptic curves need `q`.
    pub fn weil_numerator(&self, q: i64) -> Option<Vec<i64>> {
        match self {
            CurveModel::Symbolic { .. } => None,
            CurveModel::ProjectiveLine => Some(vec![1]),
            CurveModel::Elliptic { trace } => Some(vec![1, -trace, q]),
            CurveModel::Weil { numerator, .. } => Some(numerator.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    pub model: CurveModel,
    /// Namespace of the `c[model_id, d]` generators.
    pub model_id: String,
    pub punctures: u32,
}

/// A node between `ends.0` and `ends.1` (vertex indices).
///
/// Endpoints are stored in vertex-id order, which fixes the orientation
/// along which exceptional chains on the edge are read. For a self-node the
/// two entries are the two branches, first and second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: (usize, usize),
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

/// A validated dual graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    legs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexCounts {
    /// Edge endpoints at the vertex; a self-node counts twice.
    pub valence: u32,
    pub legs: u32,
    pub punctures: u32,
}

impl VertexCounts {
    /// Points removed from the component when it is cut out of the curve.
    pub fn holes(&self) -> u32 {
        self.valence + self.legs + self.punctures
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    pub num_edges: usize,
    pub num_legs: usize,
    pub per_vertex: Vec<VertexCounts>,
}

/// A vertex failing `2g - 2 + valence + legs > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityDiagnostic {
    pub vertex: String,
    pub genus: u32,
    pub valence: u32,
    pub legs: u32,
}

impl StabilityDiagnostic {
    pub fn value(&self) -> i64 {
        2 * i64::from(self.genus) - 2 + i64::from(self.valence) + i64::from(self.legs)
    }
}

impl fmt::Display for StabilityDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vertex {}: 2*{} - 2 + {} (valence) + {} (legs) = {} is not > 0",
            self.vertex,
            self.genus,
            self.valence,
            self.legs,
            self.value()
        )
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("schema violation: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid identifier {0:?}: use [A-Za-z0-9_.:-]+")]
    BadIdentifier(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("{context} refers to unknown vertex {id:?}")]
    UnknownVertex { id: String, context: String },
    #[error("vertex {vertex}: model genus {model_genus} differs from vertex genus {genus}")]
    GenusMismatch {
        vertex: String,
        genus: u32,
        model_genus: u32,
    },
    #[error("vertex {vertex}: invalid Weil numerator: {reason}")]
    BadNumerator { vertex: String, reason: String },
    #[error("model id {0:?} is shared by vertices with different models")]
    InconsistentModel(String),
    #[error("unstable graph:\n  {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n  "))]
    Unstable(Vec<StabilityDiagnostic>),
    #[error("graph is disconnected")]
    Disconnected,
}

/// The JSON document form of a dual graph, also usable as a builder.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub legs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub id: String,
    pub genus: u32,
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default)]
    pub punctures: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    Symbolic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        id: Option<String>,
    },
    P1,
    Elliptic {
        trace: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        id: Option<String>,
    },
    Weil {
        numerator: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        id: Option<String>,
    },
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec::Symbolic { id: None }
    }
}

impl GraphSpec {
    pub fn new() -> Self {
        GraphSpec::default()
    }

    /// Adds a symbolic vertex.
    pub fn vertex(self, id: &str, genus: u32) -> Self {
        self.vertex_with(id, genus, ModelSpec::default(), 0)
    }

    pub fn vertex_with(mut self, id: &str, genus: u32, model: ModelSpec, punctures: u32) -> Self {
        self.vertices.push(VertexSpec {
            id: id.to_string(),
            genus,
            model,
            punctures,
        });
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push([a.to_string(), b.to_string()]);
        self
    }

    pub fn leg(mut self, v: &str) -> Self {
        self.legs.push(v.to_string());
        self
    }

    /// Adds punctures to an existing vertex.
    pub fn puncture(mut self, v: &str, count: u32) -> Self {
        if let Some(x) = self.vertices.iter_mut().find(|x| x.id == v) {
            x.punctures += count;
        }
        self
    }

    pub fn build(&self) -> Result<DualGraph, GraphError> {
        DualGraph::from_spec(self, false)
    }

    pub fn build_unstable(&self) -> Result<DualGraph, GraphError> {
        DualGraph::from_spec(self, true)
    }
}

fn check_ident(s: &str) -> Result<(), GraphError> {
    if s.is_empty() || !s.chars().all(is_model_char) {
        return Err(GraphError::BadIdentifier(s.to_string()));
    }
    Ok(())
}

impl DualGraph {
    pub fn from_json(doc: &str, allow_unstable: bool) -> Result<DualGraph, GraphError> {
        let spec: GraphSpec = serde_json::from_str(doc)?;
        DualGraph::from_spec(&spec, allow_unstable)
    }

    /// Validates a graph document.
    ///
    /// `allow_unstable` waives the stability inequality, but only for a
    /// single vertex without edges (a smooth curve such as `P^1` or the torus).
    pub fn from_spec(spec: &GraphSpec, allow_unstable: bool) -> Result<DualGraph, GraphError> {
        if spec.vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut vertices = Vec::with_capacity(spec.vertices.len());
        for (i, v) in spec.vertices.iter().enumerate() {
            check_ident(&v.id)?;
            if index.insert(v.id.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
            let (model, model_id) = match &v.model {
                ModelSpec::Symbolic { id } => (CurveModel::Symbolic { genus: v.genus }, id.clone()),
                ModelSpec::P1 => (CurveModel::ProjectiveLine, None),
                ModelSpec::Elliptic { trace, id } => {
                    (CurveModel::Elliptic { trace: *trace }, id.clone())
                }
                ModelSpec::Weil { numerator, id } => (
                    CurveModel::Weil {
                        numerator: numerator.clone(),
                        genus: v.genus,
                    },
                    id.clone(),
                ),
            };
            if model.genus() != v.genus {
                return Err(GraphError::GenusMismatch {
                    vertex: v.id.clone(),
                    genus: v.genus,
                    model_genus: model.genus(),
                });
            }
            if let CurveModel::Weil { numerator, genus } = &model {
                let degree = numerator.iter().rposition(|&a| a != 0).unwrap_or(0);
                let reason = if numerator.first() != Some(&1) {
                    Some("constant term must be 1".to_string())
                } else if degree > 2 * *genus as usize {
                    Some(format!("degree {degree} exceeds 2g = {}", 2 * genus))
                } else {
                    None
                };
                if let Some(reason) = reason {
                    return Err(GraphError::BadNumerator {
                        vertex: v.id.clone(),
                        reason,
                    });
                }
            }
            let model_id = model_id.unwrap_or_else(|| v.id.clone());
            check_ident(&model_id)?;
            vertices.push(Vertex {
                id: v.id.clone(),
                genus: v.genus,
                model,
                model_id,
                punctures: v.punctures,
            });
        }

        let mut shared: BTreeMap<&str, &CurveModel> = BTreeMap::new();
        for v in vertices.iter().filter(|v| v.model.is_symbolic()) {
            if let Some(prev) = shared.insert(&v.model_id, &v.model) {
                if prev != &v.model {
                    return Err(GraphError::InconsistentModel(v.model_id.clone()));
                }
            }
        }

        let lookup = |id: &str, context: String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex {
                    id: id.to_string(),
                    context,
                })
        };
        let mut edges = Vec::with_capacity(spec.edges.len());
        for (k, [a, b]) in spec.edges.iter().enumerate() {
            let ia = lookup(a, format!("edge {k}"))?;
            let ib = lookup(b, format!("edge {k}"))?;
            let ends = if vertices[ia].id <= vertices[ib].id {
                (ia, ib)
            } else {
                (ib, ia)
            };
            edges.push(Edge { ends });
        }
        let legs = spec
            .legs
            .iter()
            .enumerate()
            .map(|(k, l)| lookup(l, format!("leg {k}")))
            .collect::<Result<Vec<_>, _>>()?;

        let g = DualGraph {
            vertices,
            edges,
            legs,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let unstable = g.stability_violations();
        let waived = allow_unstable && g.vertices.len() == 1 && g.edges.is_empty();
        if !unstable.is_empty() && !waived {
            return Err(GraphError::Unstable(unstable));
        }
        Ok(g)
    }

    pub fn to_spec(&self) -> GraphSpec {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let id = (v.model_id != v.id).then(|| v.model_id.clone());
                let model = match &v.model {
                    CurveModel::Symbolic { .. } => ModelSpec::Symbolic { id },
                    CurveModel::ProjectiveLine => ModelSpec::P1,
                    CurveModel::Elliptic { trace } => ModelSpec::Elliptic { trace: *trace, id },
                    CurveModel::Weil { numerator, .. } => ModelSpec::Weil {
                        numerator: numerator.clone(),
                        id,
                    },
                };
                VertexSpec {
                    id: v.id.clone(),
                    genus: v.genus,
                    model,
                    punctures: v.punctures,
                }
            })
            .collect();
        GraphSpec {
            vertices,
            edges: self
                .edges
                .iter()
                .map(|e| {
                    [
                        self.vertices[e.ends.0].id.clone(),
                        self.vertices[e.ends.1].id.clone(),
                    ]
                })
                .collect(),
            legs: self
                .legs
                .iter()
                .map(|&l| self.vertices[l].id.clone())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("graph spec serializes")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Leg `k` sits at vertex `legs()[k]`.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn counts(&self) -> Counts {
        let mut per_vertex: Vec<VertexCounts> = self
            .vertices
            .iter()
            .map(|v| VertexCounts {
                valence: 0,
                legs: 0,
                punctures: v.punctures,
            })
            .collect();
        for e in &self.edges {
            per_vertex[e.ends.0].valence += 1;
            per_vertex[e.ends.1].valence += 1;
        }
        for &l in &self.legs {
            per_vertex[l].legs += 1;
        }
        Counts {
            num_edges: self.edges.len(),
            num_legs: self.legs.len(),
            per_vertex,
        }
    }

    /// Arithmetic genus `sum g_v + |E| - |V| + 1`.
    pub fn total_genus(&self) -> u64 {
        let g: u64 = self.vertices.iter().map(|v| u64::from(v.genus)).sum();
        g + self.edges.len() as u64 + 1 - self.vertices.len() as u64
    }

    pub fn total_punctures(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.punctures)).sum()
    }

    /// Vertices failing `2g - 2 + valence + legs > 0`. Punctures do not count:
    /// stability is a property of the compactified curve.
    pub fn stability_violations(&self) -> Vec<StabilityDiagnostic> {
        let counts = self.counts();
        self.vertices
            .iter()
            .zip(&counts.per_vertex)
            .map(|(v, c)| StabilityDiagnostic {
                vertex: v.id.clone(),
                genus: v.genus,
                valence: c.valence,
                legs: c.legs,
            })
            .filter(|d| d.value() <= 0)
            .collect()
    }

    pub fn is_stable(&self) -> bool {
        self.stability_violations().is_empty()
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.ends.0].push(e.ends.1);
            adj[e.ends.1].push(e.ends.0);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_genus_two_vertex_is_stable() {
        let g = GraphSpec::new().vertex("v", 2).build().unwrap();
        assert_eq!(g.total_genus(), 2);
    }

    #[test]
    fn rational_vertex_with_one_loop_is_unstable() {
        let err = GraphSpec::new()
            .vertex("v", 0)
            .edge("v", "v")
            .build()
            .unwrap_err();
        match err {
            GraphError::Unstable(d) => {
                assert_eq!(d.len(), 1);
                assert_eq!(d[0].value(), 0);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn theta_graph() {
        let g = GraphSpec::new()
            .vertex("a", 0)
            .vertex("b", 0)
            .edge("a", "b")
            .edge("a", "b")
            .edge("b", "a")
            .build()
            .unwrap();
        assert_eq!(g.total_genus(), 2);
        assert!(g.edges().iter().all(|e| e.ends == (0, 1)));
    }

    #[test]
    fn counts_of_small_graphs() {
        let two_comp = GraphSpec::new()
            .vertex("u", 2)
            .vertex("w", 2)
            .edge("u", "w")
            .build()
            .unwrap();
        let c = two_comp.counts();
        assert_eq!((c.num_edges, c.num_legs), (1, 0));
        assert_eq!(
            c.per_vertex.iter().map(|v| v.valence).collect::<Vec<_>>(),
            vec![1, 1]
        );

        let one_leg = GraphSpec::new().vertex("v", 1).leg("v").build().unwrap();
        let c = one_leg.counts();
        assert_eq!((c.num_edges, c.num_legs), (0, 1));

        let looped = GraphSpec::new()
            .vertex("v", 1)
            .edge("v", "v")
            .build()
            .unwrap();
        let c = looped.counts();
        assert_eq!(
            (c.num_edges, c.num_legs, c.per_vertex[0].valence),
            (1, 0, 2)
        );
        assert_eq!(looped.total_genus(), 2);
    }

    #[test]
    fn unknown_vertex_and_disconnected() {
        let e = GraphSpec::new()
            .vertex("a", 2)
            .edge("a", "z")
            .build()
            .unwrap_err();
        assert!(matches!(e, GraphError::UnknownVertex { .. }));
        let e = GraphSpec::new()
            .vertex("a", 2)
            .leg("q")
            .build()
            .unwrap_err();
        assert!(matches!(e, GraphError::UnknownVertex { .. }));
        let e = GraphSpec::new()
            .vertex("a", 2)
            .vertex("b", 2)
            .build()
            .unwrap_err();
        assert!(matches!(e, GraphError::Disconnected));
    }

    #[test]
    fn unstable_override_only_for_smooth_single_vertex() {
        let torus = GraphSpec::new().vertex_with("g", 0, ModelSpec::P1, 2);
        assert!(matches!(torus.build(), Err(GraphError::Unstable(_))));
        assert!(torus.build_unstable().is_ok());
        let chain = GraphSpec::new()
            .vertex("a", 0)
            .vertex("b", 2)
            .edge("a", "b");
        assert!(chain.build_unstable().is_err());
    }

    #[test]
    fn model_validation() {
        let e = GraphSpec::new()
            .vertex_with("e", 2, ModelSpec::Elliptic { trace: 1, id: None }, 0)
            .build()
            .unwrap_err();
        assert!(matches!(e, GraphError::GenusMismatch { .. }));
        let e = GraphSpec::new()
            .vertex_with(
                "w",
                1,
                ModelSpec::Weil {
                    numerator: vec![1, 1, 2, 3],
                    id: None,
                },
                0,
            )
            .edge("w", "w")
            .build()
            .unwrap_err();
        assert!(matches!(e, GraphError::BadNumerator { .. }));
        let e = GraphSpec::new()
            .vertex_with(
                "w",
                1,
                ModelSpec::Weil {
                    numerator: vec![2],
                    id: None,
                },
                0,
            )
            .edge("w", "w")
            .build()
            .unwrap_err();
        assert!(matches!(e, GraphError::BadNumerator { .. }));
    }

    #[test]
    fn shared_model_ids_must_agree() {
        let shared = |g2| {
            GraphSpec::new()
                .vertex_with(
                    "a",
                    2,
                    ModelSpec::Symbolic {
                        id: Some("m".into()),
                    },
                    0,
                )
                .vertex_with(
                    "b",
                    g2,
                    ModelSpec::Symbolic {
                        id: Some("m".into()),
                    },
                    0,
                )
                .edge("a", "b")
                .build()
        };
        assert!(shared(2).is_ok());
        assert!(matches!(shared(3), Err(GraphError::InconsistentModel(_))));
    }

    #[test]
    fn json_schema() {
        let doc = r#"{"vertices":[{"id":"v1","genus":1,"model":{"type":"symbolic"},"punctures":0}],
                      "edges":[["v1","v1"]], "legs":["v1"]}"#;
        let g = DualGraph::from_json(doc, false).unwrap();
        assert_eq!(g.vertices()[0].model_id, "v1");
        assert_eq!(DualGraph::from_json(&g.to_json(), false).unwrap(), g);

        let doc = r#"{"vertices":[{"id":"e","genus":1,"model":{"type":"elliptic","trace":2}},
                                  {"id":"p","genus":0,"model":{"type":"p1"}},
                                  {"id":"w","genus":1,"model":{"type":"weil","numerator":[1,-1,3],"id":"W"}}],
                      "edges":[["e","p"],["p","w"],["p","p"]]}"#;
        let g = DualGraph::from_json(doc, false).unwrap();
        assert_eq!(g.vertices()[2].model_id, "W");
        assert_eq!(DualGraph::from_json(&g.to_json(), false).unwrap(), g);

        assert!(matches!(
            DualGraph::from_json(r#"{"vertices":[{"id":"v","genus":2,"colour":1}]}"#, false),
            Err(GraphError::Schema(_))
        ));
        assert!(matches!(
            DualGraph::from_json(
                r#"{"vertices":[{"id":"v","genus":2,"model":{"type":"hyperbolic"}}]}"#,
                false
            ),
            Err(GraphError::Schema(_))
        ));
        assert!(matches!(
            DualGraph::from_json(r#"{"vertices":[]}"#, false),
            Err(GraphError::Empty)
        ));
        assert!(matches!(
            DualGraph::from_json(r#"{"vertices":[{"id":"a b","genus":2}]}"#, false),
            Err(GraphError::BadIdentifier(_))
        ));
    }
}
