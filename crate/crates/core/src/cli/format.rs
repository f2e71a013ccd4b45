//! On-disk JSON formats. Rationals travel as strings, items and edge keys
//! are 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    parse_rational, Allocation, Bundle, ExtRational, GPoint, PriceVector, Rational, Valuation,
    ValueGraph,
};
use crate::pricing::{CeResult, CeStatus};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mode {
    #[serde(default)]
    pub walrasian: bool,
    #[serde(default)]
    pub covering: bool,
}

impl Mode {
    fn is_default(&self) -> bool {
        *self == Mode::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub vertex_weights: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edge_weights: BTreeMap<String, String>,
}

/// An auction instance as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    /// Defaults to the complete graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub agents: Vec<AgentSpec>,
    pub supply: Vec<i64>,
    #[serde(default, skip_serializing_if = "Mode::is_default")]
    pub mode: Mode,
    /// Faces of P(G) as lists of 1-based bundles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<i64>>,
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: ValueGraph,
    pub labels: Option<Vec<String>>,
    pub valuations: Vec<Valuation>,
    pub supply: Vec<i64>,
    pub mode: Mode,
    pub faces: Option<Vec<Vec<Bundle>>>,
    pub point: Option<GPoint>,
}

pub fn parse_edge_key(key: &str, n: usize) -> Option<(usize, usize)> {
    let (a, b) = key.split_once('-')?;
    let i: usize = a.trim().parse().ok()?;
    let j: usize = b.trim().parse().ok()?;
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return None;
    }
    Some((i.min(j) - 1, i.max(j) - 1))
}

pub fn edge_key(i: usize, j: usize) -> String {
    format!("{}-{}", i + 1, j + 1)
}

fn parse_bundle(items: &[usize], n: usize, location: &str) -> Result<Bundle> {
    let mut s = Bundle::EMPTY;
    for &k in items {
        if k == 0 || k > n {
            return Err(Error::parse(location, format!("item {k} outside 1..={n}")));
        }
        s.insert(k - 1);
    }
    Ok(s)
}

pub fn bundle_items(s: Bundle) -> Vec<usize> {
    s.items().map(|i| i + 1).collect()
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn resolve(&self) -> Result<Instance> {
        let n = self.n;
        let graph = match &self.edges {
            None => ValueGraph::complete(n)?,
            Some(keys) => {
                let mut edges = Vec::with_capacity(keys.len());
                for (k, key) in keys.iter().enumerate() {
                    edges.push(parse_edge_key(key, n).ok_or_else(|| {
                        Error::parse(format!("edges[{k}]"), format!("bad edge key `{key}`"))
                    })?);
                }
                ValueGraph::new(n, edges)?
            }
        };
        if let Some(labels) = &self.labels {
            if labels.len() != n {
                return Err(Error::parse("labels", format!("expected {n} labels")));
            }
        }
        let mut valuations = Vec::with_capacity(self.agents.len());
        for (b, agent) in self.agents.iter().enumerate() {
            valuations.push(agent.resolve(&graph, b)?);
        }
        let m = valuations.len();
        if self.supply.len() != n {
            return Err(Error::parse("supply", format!("expected {n} entries")));
        }
        for (i, &x) in self.supply.iter().enumerate() {
            if x < 0 || x as u64 > m as u64 {
                return Err(Error::parse(
                    format!("supply[{i}]"),
                    format!("{x} outside 0..={m}"),
                ));
            }
        }
        let faces = match &self.faces {
            None => None,
            Some(faces) => Some(
                faces
                    .iter()
                    .enumerate()
                    .map(|(f, face)| {
                        face.iter()
                            .enumerate()
                            .map(|(k, items)| parse_bundle(items, n, &format!("faces[{f}][{k}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let point = match &self.point {
            None => None,
            Some(p) => {
                if p.len() != graph.d() {
                    return Err(Error::parse(
                        "point",
                        format!("expected {} coordinates", graph.d()),
                    ));
                }
                Some(GPoint(p.clone()))
            }
        };
        Ok(Instance {
            graph,
            labels: self.labels.clone(),
            valuations,
            supply: self.supply.clone(),
            mode: self.mode.clone(),
            faces,
            point,
        })
    }
}

impl AgentSpec {
    fn resolve(&self, graph: &ValueGraph, b: usize) -> Result<Valuation> {
        let n = graph.n();
        if self.vertex_weights.len() != n {
            return Err(Error::parse(
                format!("agents[{b}].vertex_weights"),
                format!("expected {n} entries, got {}", self.vertex_weights.len()),
            ));
        }
        let mut weights = Vec::with_capacity(graph.d());
        for (i, w) in self.vertex_weights.iter().enumerate() {
            weights.push(parse_weight(
                w,
                &format!("agents[{b}].vertex_weights[{i}]"),
            )?);
        }
        weights.resize(graph.d(), ExtRational::zero());
        for (key, w) in &self.edge_weights {
            let location = format!("agents[{b}].edge_weights.{key}");
            let (i, j) = parse_edge_key(key, n)
                .ok_or_else(|| Error::parse(&location, format!("bad edge key `{key}`")))?;
            let c = graph
                .edge_coord(i, j)
                .ok_or_else(|| Error::parse(&location, "not an edge of the value graph"))?;
            weights[c] = parse_weight(w, &location)?;
        }
        Ok(Valuation::new(weights))
    }

    pub fn from_valuation(graph: &ValueGraph, v: &Valuation) -> Self {
        let w = v.weights();
        AgentSpec {
            vertex_weights: w[..graph.n()].iter().map(ToString::to_string).collect(),
            edge_weights: graph
                .edge_coords()
                .filter(|&(c, _, _)| w[c] != ExtRational::zero())
                .map(|(c, i, j)| (edge_key(i, j), w[c].to_string()))
                .collect(),
        }
    }
}

fn parse_weight(s: &str, location: &str) -> Result<ExtRational> {
    s.parse()
        .map_err(|_| Error::parse(location, format!("`{s}` is not a rational or -inf")))
}

pub fn parse_rational_list(s: &str, what: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .enumerate()
        .map(|(k, x)| {
            parse_rational(x.trim())
                .ok_or_else(|| Error::parse(format!("{what}[{k}]"), format!("bad rational `{x}`")))
        })
        .collect()
}

pub fn parse_int_list(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .enumerate()
        .map(|(k, x)| {
            x.trim()
                .parse()
                .map_err(|_| Error::parse(format!("{what}[{k}]"), format!("bad integer `{x}`")))
        })
        .collect()
}

impl Instance {
    pub fn to_file(&self) -> InstanceFile {
        let complete = self.graph.is_complete();
        InstanceFile {
            n: self.graph.n(),
            edges: (!complete).then(|| {
                self.graph
                    .edges()
                    .iter()
                    .map(|&(i, j)| edge_key(i, j))
                    .collect()
            }),
            labels: self.labels.clone(),
            agents: self
                .valuations
                .iter()
                .map(|v| AgentSpec::from_valuation(&self.graph, v))
                .collect(),
            supply: self.supply.clone(),
            mode: self.mode.clone(),
            faces: self.faces.as_ref().map(|faces| {
                faces
                    .iter()
                    .map(|f| f.iter().map(|&s| bundle_items(s)).collect())
                    .collect()
            }),
            point: self.point.as_ref().map(|p| p.0.clone()),
        }
    }

    pub fn m(&self) -> usize {
        self.valuations.len()
    }

    /// Item name for display: its label or its 1-based index.
    pub fn item_name(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn bundle_name(&self, s: Bundle) -> String {
        let names: Vec<_> = s.items().map(|i| self.item_name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// An allocation with a price, as passed to `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocPriceFile {
    pub allocation: Vec<Vec<usize>>,
    pub price: Vec<String>,
}

impl AllocPriceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn resolve(&self, graph: &ValueGraph) -> Result<(Allocation, PriceVector)> {
        let bundles = self
            .allocation
            .iter()
            .enumerate()
            .map(|(b, items)| parse_bundle(items, graph.n(), &format!("allocation[{b}]")))
            .collect::<Result<Vec<_>>>()?;
        if self.price.len() != graph.d() {
            return Err(Error::DimensionMismatch {
                what: "price",
                expected: graph.d(),
                got: self.price.len(),
            });
        }
        let price = self
            .price
            .iter()
            .enumerate()
            .map(|(k, x)| {
                parse_rational(x).ok_or_else(|| {
                    Error::parse(format!("price[{k}]"), format!("bad rational `{x}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Allocation::new(bundles), PriceVector::new(price)))
    }
}

/// The machine-readable form of a solver result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allocation: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub price: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revenue: Option<String>,
}

pub fn status_name(status: CeStatus) -> &'static str {
    match status {
        CeStatus::Found => "found",
        CeStatus::InfeasibleAtPoint => "infeasible-at-point",
        CeStatus::NoPointFound => "no-point-found",
    }
}

impl From<&CeResult> for ResultFile {
    fn from(r: &CeResult) -> Self {
        let sol = r.solution.as_ref();
        ResultFile {
            status: status_name(r.status).to_string(),
            point: r.point.as_ref().map(|p| p.0.clone()),
            allocation: sol.map(|s| {
                s.allocation
                    .bundles
                    .iter()
                    .map(|&b| bundle_items(b))
                    .collect()
            }),
            price: sol.map(|s| s.price.entries().iter().map(ToString::to_string).collect()),
            revenue: sol.map(|s| s.revenue.to_string()),
        }
    }
}
