//! JSON schemas for structure files and their conversion to core types.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use tirs_core::functors::{FrameMorphism, GraphMorphism};
use tirs_core::galois::GaloisLattice;
use tirs_core::ploscica::DualGraph;
use tirs_core::{build_lattice, FiniteLattice, Frame, Graph};

use crate::CliError;

pub type Pair = (String, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMeta {
    pub ones: Vec<String>,
    pub zeros: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_meta: Option<BTreeMap<String, VertexMeta>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFile {
    pub x1: Vec<String>,
    pub x2: Vec<String>,
    pub r: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map1: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map2: Option<Vec<Pair>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaloisFile {
    #[serde(flatten)]
    pub lattice: LatticeFile,
    pub closed_sets: Vec<Vec<String>>,
    pub j_infty: Vec<String>,
    pub m_infty: Vec<String>,
}

/// A parsed structure file.
#[derive(Debug, Clone)]
pub enum Structure {
    Lattice(FiniteLattice),
    Graph(Graph),
    Frame(Frame),
    Morphism(MorphismFile),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Lattice(_) => "lattice",
            Structure::Graph(_) => "graph",
            Structure::Frame(_) => "frame",
            Structure::Morphism(_) => "morphism",
        }
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn read(path: &Path) -> Result<Structure, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Input(m) => input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Detects the kind from the top-level keys.
pub fn parse(text: &str) -> Result<Structure, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| input(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| input("expected a JSON object"))?;
    let de = |e: serde_json::Error| input(e.to_string());
    if obj.contains_key("elements") {
        Ok(Structure::Lattice(lattice_from_file(
            &serde_json::from_value(v).map_err(de)?,
        )?))
    } else if obj.contains_key("vertices") {
        Ok(Structure::Graph(graph_from_file(
            &serde_json::from_value(v).map_err(de)?,
        )?))
    } else if obj.contains_key("x1") {
        Ok(Structure::Frame(frame_from_file(
            &serde_json::from_value(v).map_err(de)?,
        )?))
    } else if obj.contains_key("map") || obj.contains_key("map1") {
        Ok(Structure::Morphism(serde_json::from_value(v).map_err(de)?))
    } else {
        Err(input(
            "unrecognised structure: expected elements, vertices, x1 or map keys",
        ))
    }
}

pub fn lattice_from_file(f: &LatticeFile) -> Result<FiniteLattice, CliError> {
    let l = build_lattice(&f.elements, &f.covers).map_err(|e| input(e.to_string()))?;
    if let Some(leq) = &f.leq {
        let mut given = leq.clone();
        given.sort();
        let mut ours = l.leq_pairs_named();
        ours.sort();
        if given != ours {
            return Err(input(
                "`leq` does not match the order generated by `covers`",
            ));
        }
    }
    Ok(l)
}

pub fn graph_from_file(f: &GraphFile) -> Result<Graph, CliError> {
    Graph::new(&f.vertices, &f.edges).map_err(|e| input(e.to_string()))
}

pub fn frame_from_file(f: &FrameFile) -> Result<Frame, CliError> {
    Frame::new(&f.x1, &f.x2, &f.r).map_err(|e| input(e.to_string()))
}

pub fn lattice_file(l: &FiniteLattice) -> LatticeFile {
    LatticeFile {
        elements: l.names().to_vec(),
        covers: l.cover_pairs_named(),
        leq: Some(l.leq_pairs_named()),
    }
}

pub fn graph_file(g: &Graph) -> GraphFile {
    GraphFile {
        vertices: g.names().to_vec(),
        edges: g.edge_pairs_named(),
        vertex_meta: None,
    }
}

pub fn dual_file(l: &FiniteLattice, d: &DualGraph) -> GraphFile {
    let meta = d
        .pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (
                d.graph.name(i).to_string(),
                VertexMeta {
                    ones: l.set_names(&p.ones),
                    zeros: l.set_names(&p.zeros),
                },
            )
        })
        .collect();
    GraphFile {
        vertex_meta: Some(meta),
        ..graph_file(&d.graph)
    }
}

pub fn frame_file(f: &Frame) -> FrameFile {
    FrameFile {
        x1: f.x1().to_vec(),
        x2: f.x2().to_vec(),
        r: f.pairs_named(),
    }
}

pub fn galois_file(gl: &GaloisLattice) -> GaloisFile {
    let name = |i: &usize| gl.lattice.name(*i).to_string();
    GaloisFile {
        lattice: lattice_file(&gl.lattice),
        closed_sets: gl.closed_named(),
        j_infty: gl.j_infty.iter().map(name).collect(),
        m_infty: gl.m_infty.iter().map(name).collect(),
    }
}

pub fn graph_morphism_file(m: &GraphMorphism) -> MorphismFile {
    MorphismFile {
        map: Some(m.named_pairs()),
        map1: None,
        map2: None,
    }
}

pub fn frame_morphism_file(m: &FrameMorphism) -> MorphismFile {
    let (m1, m2) = m.named_pairs();
    MorphismFile {
        map: None,
        map1: Some(m1),
        map2: Some(m2),
    }
}

pub fn structure_json(s: &Structure) -> Value {
    let v = match s {
        Structure::Lattice(l) => serde_json::to_value(lattice_file(l)),
        Structure::Graph(g) => serde_json::to_value(graph_file(g)),
        Structure::Frame(f) => serde_json::to_value(frame_file(f)),
        Structure::Morphism(m) => serde_json::to_value(m),
    };
    v.expect("schemas serialize")
}
