//! Reaction networks as digraphs embedded in rational space.

use std::collections::HashMap;
use std::fmt;

use num_traits::Signed;
use petgraph::algo::{connected_components, tarjan_scc};
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::linalg::{rank_of, RationalMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("species list is empty")]
    NoSpecies,
    #[error("species name is empty")]
    EmptySpeciesName,
    #[error("duplicate species `{0}`")]
    DuplicateSpecies(String),
    #[error("vertex {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge {edge} refers to vertex {vertex}, but only {count} vertices exist")]
    EdgeOutOfRange {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: usize, to: usize },
    #[error("{got} weights given for {expected} edges")]
    WeightCount { expected: usize, got: usize },
    #[error("weight on edge {edge} is not positive")]
    NonPositiveWeight { edge: usize },
    #[error("state has {got} coordinates, expected {expected}")]
    StateDimension { expected: usize, got: usize },
    #[error("state coordinate {index} is not positive")]
    NonPositiveState { index: usize },
    #[error("monomial at vertex {vertex} is not rational at this state")]
    IrrationalMonomial { vertex: usize },
    #[error("systems have dimensions {left} and {right}")]
    SystemDimensions { left: usize, right: usize },
    #[error("systems live on different species lists")]
    SpeciesMismatch,
}

/// Ordered, distinct species names. Their count is the ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpeciesList {
    names: Vec<String>,
}

impl SpeciesList {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, NetworkError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(NetworkError::NoSpecies);
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(NetworkError::EmptySpeciesName);
            }
            if names[..i].contains(n) {
                return Err(NetworkError::DuplicateSpecies(n.clone()));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A reaction complex: a point of rational `n`-space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Vertex<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `self - other`.
    pub fn minus(&self, other: &Self) -> Vec<T> {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() - b.clone())
            .collect()
    }

    pub fn has_negative(&self) -> bool {
        self.coords.iter().any(Signed::is_negative)
    }
}

impl<T: fmt::Display> fmt::Display for Vertex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Non-fatal observations about a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lint {
    NegativeCoordinate { vertex: usize },
    IsolatedVertex { vertex: usize },
}

/// A finite digraph without self-loops whose vertices are points of
/// rational space.
#[derive(Clone, Debug)]
pub struct ReactionNetwork<T> {
    species: SpeciesList,
    vertices: Vec<Vertex<T>>,
    edges: Vec<(usize, usize)>,
    vertex_lookup: HashMap<Vertex<T>, usize>,
    edge_lookup: HashMap<(usize, usize), usize>,
}

// Lookups are derived from `vertices` and `edges`.
impl<T: PartialEq> PartialEq for ReactionNetwork<T> {
    fn eq(&self, other: &Self) -> bool {
        self.species == other.species
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

impl<T: Eq> Eq for ReactionNetwork<T> {}

impl<T: Scalar> ReactionNetwork<T> {
    /// Validates and builds a network. Vertices with equal coordinates are
    /// merged and edges re-indexed onto the first occurrence.
    pub fn new(
        species: SpeciesList,
        vertices: Vec<Vertex<T>>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, NetworkError> {
        let dim = species.len();
        let mut remap = Vec::with_capacity(vertices.len());
        let mut kept: Vec<Vertex<T>> = Vec::new();
        let mut vertex_lookup = HashMap::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if v.dim() != dim {
                return Err(NetworkError::DimensionMismatch {
                    index: i,
                    expected: dim,
                    got: v.dim(),
                });
            }
            let idx = *vertex_lookup.entry(v.clone()).or_insert_with(|| {
                kept.push(v);
                kept.len() - 1
            });
            remap.push(idx);
        }
        let mut edge_lookup = HashMap::new();
        let mut new_edges = Vec::with_capacity(edges.len());
        for (e, (s, t)) in edges.into_iter().enumerate() {
            for v in [s, t] {
                if v >= remap.len() {
                    return Err(NetworkError::EdgeOutOfRange {
                        edge: e,
                        vertex: v,
                        count: remap.len(),
                    });
                }
            }
            let (s, t) = (remap[s], remap[t]);
            if s == t {
                return Err(NetworkError::SelfLoop { vertex: s });
            }
            if edge_lookup.insert((s, t), new_edges.len()).is_some() {
                return Err(NetworkError::DuplicateEdge { from: s, to: t });
            }
            new_edges.push((s, t));
        }
        let net = Self {
            species,
            vertices: kept,
            edges: new_edges,
            vertex_lookup,
            edge_lookup,
        };
        for lint in net.lints() {
            if let Lint::IsolatedVertex { vertex } = lint {
                log::warn!(
                    "vertex {} is not incident to any reaction",
                    net.vertices[vertex]
                );
            }
        }
        Ok(net)
    }

    /// Builds a network from (source, target) complex pairs; vertices are
    /// numbered in order of first appearance.
    pub fn from_reactions(
        species: SpeciesList,
        reactions: impl IntoIterator<Item = (Vertex<T>, Vertex<T>)>,
    ) -> Result<Self, NetworkError> {
        let mut vertices = Vec::new();
        let mut index: HashMap<Vertex<T>, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut intern = |v: Vertex<T>, vertices: &mut Vec<Vertex<T>>| {
            *index.entry(v.clone()).or_insert_with(|| {
                vertices.push(v);
                vertices.len() - 1
            })
        };
        for (s, t) in reactions {
            let s = intern(s, &mut vertices);
            let t = intern(t, &mut vertices);
            edges.push((s, t));
        }
        Self::new(species, vertices, edges)
    }

    pub fn species(&self) -> &SpeciesList {
        &self.species
    }

    pub fn dim(&self) -> usize {
        self.species.len()
    }

    pub fn vertices(&self) -> &[Vertex<T>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex<T> {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, v: &Vertex<T>) -> Option<usize> {
        self.vertex_lookup.get(v).copied()
    }

    pub fn edge_index(&self, source: usize, target: usize) -> Option<usize> {
        self.edge_lookup.get(&(source, target)).copied()
    }

    /// `y' - y` for edge `e = y -> y'`.
    pub fn reaction_vector(&self, e: usize) -> Vec<T> {
        let (s, t) = self.edges[e];
        self.vertices[t].minus(&self.vertices[s])
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, &(s, _))| s == v)
            .map(|(e, _)| e)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, &(_, t))| t == v)
            .map(|(e, _)| e)
    }

    pub fn lints(&self) -> Vec<Lint> {
        let mut incident = vec![false; self.vertices.len()];
        for &(s, t) in &self.edges {
            incident[s] = true;
            incident[t] = true;
        }
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.has_negative() {
                out.push(Lint::NegativeCoordinate { vertex: i });
            }
            if !incident[i] {
                out.push(Lint::IsolatedVertex { vertex: i });
            }
        }
        out
    }

    /// Indices of vertices with at least one outgoing edge, ascending.
    pub fn source_vertices(&self) -> Vec<usize> {
        let mut is_source = vec![false; self.vertices.len()];
        for &(s, _) in &self.edges {
            is_source[s] = true;
        }
        (0..self.vertices.len()).filter(|&i| is_source[i]).collect()
    }

    pub fn is_reversible(&self) -> bool {
        self.edges
            .iter()
            .all(|&(s, t)| self.edge_lookup.contains_key(&(t, s)))
    }

    /// True iff every edge lies on a directed cycle, i.e. every weakly
    /// connected component is strongly connected.
    pub fn is_weakly_reversible(&self) -> bool {
        let scc = self.strong_component_ids();
        self.edges.iter().all(|&(s, t)| scc[s] == scc[t])
    }

    /// Number of weakly connected components (linkage classes), counting
    /// isolated vertices.
    pub fn num_components(&self) -> usize {
        connected_components(&self.digraph())
    }

    pub fn num_strong_components(&self) -> usize {
        tarjan_scc(&self.digraph()).len()
    }

    /// Strongly connected component id of each vertex.
    pub fn strong_component_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.vertices.len()];
        for (c, comp) in tarjan_scc(&self.digraph()).into_iter().enumerate() {
            for n in comp {
                ids[n.index()] = c;
            }
        }
        ids
    }

    pub fn stoichiometric_subspace_dim(&self) -> usize {
        let vectors: Vec<Vec<T>> = (0..self.edges.len())
            .map(|e| self.reaction_vector(e))
            .collect();
        rank_of(&vectors, self.dim())
    }

    /// `|V| - components - dim S`.
    pub fn deficiency(&self) -> usize {
        let d = self.vertices.len() as i64
            - self.num_components() as i64
            - self.stoichiometric_subspace_dim() as i64;
        debug_assert!(d >= 0, "deficiency is nonnegative");
        d.max(0) as usize
    }

    /// `dim(Ker Y ∩ Img I)` with `Y` the vertex matrix and `I` the incidence
    /// matrix, computed as `dim A + dim B - dim(A + B)`.
    pub fn deficiency_by_kernel_image(&self) -> usize {
        let nv = self.vertices.len();
        let coords: Vec<Vec<T>> = self.vertices.iter().map(|v| v.coords().to_vec()).collect();
        let y = RationalMatrix::from_columns(&coords, self.dim());
        let kernel = y.nullspace();
        let incidence: Vec<Vec<T>> = self
            .edges
            .iter()
            .map(|&(s, t)| {
                let mut col = vec![T::zero(); nv];
                col[s] = -T::one();
                col[t] = T::one();
                col
            })
            .collect();
        let dim_image = rank_of(&incidence, nv);
        let mut both = kernel.clone();
        both.extend(incidence);
        let dim_sum = rank_of(&both, nv);
        kernel.len() + dim_image - dim_sum
    }

    fn digraph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::with_capacity(self.vertices.len(), self.edges.len());
        let nodes: Vec<_> = (0..self.vertices.len()).map(|_| g.add_node(())).collect();
        for &(s, t) in &self.edges {
            g.add_edge(nodes[s], nodes[t], ());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    fn v(c: &[i64]) -> Vertex<Rational> {
        Vertex::from_ints(c)
    }

    fn xy() -> SpeciesList {
        SpeciesList::new(["X", "Y"]).unwrap()
    }

    #[test]
    fn species_validation() {
        assert_eq!(
            SpeciesList::new(Vec::<String>::new()),
            Err(NetworkError::NoSpecies)
        );
        assert_eq!(
            SpeciesList::new(["A", "A"]),
            Err(NetworkError::DuplicateSpecies("A".into()))
        );
        assert_eq!(SpeciesList::new([""]), Err(NetworkError::EmptySpeciesName));
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        let err = ReactionNetwork::new(xy(), vec![v(&[1, 0])], vec![(0, 0)]).unwrap_err();
        assert_eq!(err, NetworkError::SelfLoop { vertex: 0 });
        let err = ReactionNetwork::new(xy(), vec![v(&[1, 0]), v(&[0, 1])], vec![(0, 1), (0, 1)])
            .unwrap_err();
        assert_eq!(err, NetworkError::DuplicateEdge { from: 0, to: 1 });
        let err = ReactionNetwork::new(xy(), vec![v(&[1, 0])], vec![(0, 3)]).unwrap_err();
        assert!(matches!(err, NetworkError::EdgeOutOfRange { .. }));
        let err = ReactionNetwork::new(xy(), vec![v(&[1, 0, 0])], vec![]).unwrap_err();
        assert!(matches!(err, NetworkError::DimensionMismatch { .. }));
    }

    #[test]
    fn merges_equal_vertices() {
        let net = ReactionNetwork::new(
            xy(),
            vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 0])],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(net.num_vertices(), 2);
        assert_eq!(net.edges(), &[(0, 1), (1, 0)]);
        // Merging can expose a self-loop.
        let err =
            ReactionNetwork::new(xy(), vec![v(&[1, 0]), v(&[1, 0])], vec![(0, 1)]).unwrap_err();
        assert_eq!(err, NetworkError::SelfLoop { vertex: 0 });
    }

    #[test]
    fn lints_flag_negative_and_isolated() {
        let net = ReactionNetwork::new(
            xy(),
            vec![v(&[-1, 0]), v(&[0, 1]), v(&[2, 2])],
            vec![(0, 1)],
        )
        .unwrap();
        assert_eq!(
            net.lints(),
            vec![
                Lint::NegativeCoordinate { vertex: 0 },
                Lint::IsolatedVertex { vertex: 2 }
            ]
        );
    }

    #[test]
    fn source_vertices_examples() {
        let g = fixtures::square_sources_network();
        let sources: Vec<_> = g
            .source_vertices()
            .iter()
            .map(|&i| g.vertex(i).clone())
            .collect();
        assert_eq!(
            sources,
            vec![v(&[0, 0]), v(&[0, 2]), v(&[3, 2]), v(&[3, 0])]
        );

        let single = ReactionNetwork::from_reactions(xy(), [(v(&[1, 0]), v(&[0, 1]))]).unwrap();
        assert_eq!(single.source_vertices(), vec![0]);

        let fig3 = fixtures::cb_flux_xy().network().clone();
        assert_eq!(fig3.source_vertices().len(), 4);
        assert_eq!(fig3.num_vertices(), 4);
    }

    #[test]
    fn reversibility_examples() {
        assert!(fixtures::square_complete_network().is_reversible());
        assert!(!fixtures::lotka_volterra_network().is_reversible());
        assert!(!fixtures::lotka_volterra_network().is_weakly_reversible());
        assert!(fixtures::square_weakly_reversible_network().is_weakly_reversible());
        assert!(!fixtures::square_weakly_reversible_network().is_reversible());
        assert!(!fixtures::square_sources_network().is_weakly_reversible());
        let pair =
            ReactionNetwork::new(xy(), vec![v(&[1, 0]), v(&[0, 1])], vec![(0, 1), (1, 0)]).unwrap();
        assert!(pair.is_weakly_reversible());
        assert!(pair.is_reversible());
    }

    #[test]
    fn stoichiometric_dims() {
        assert_eq!(
            fixtures::lotka_volterra_network().stoichiometric_subspace_dim(),
            2
        );
        for g in [
            fixtures::square_sources_network(),
            fixtures::square_complete_network(),
            fixtures::square_weakly_reversible_network(),
        ] {
            assert_eq!(g.stoichiometric_subspace_dim(), 2);
        }
        let single = ReactionNetwork::from_reactions(xy(), [(v(&[1, 0]), v(&[0, 1]))]).unwrap();
        assert_eq!(single.stoichiometric_subspace_dim(), 1);
    }

    #[test]
    fn deficiency_examples() {
        let lv = fixtures::lotka_volterra_network();
        assert_eq!((lv.num_vertices(), lv.num_components()), (6, 3));
        assert_eq!(lv.deficiency(), 1);
        let g2b = fixtures::square_complete_network();
        assert_eq!((g2b.num_vertices(), g2b.num_components()), (4, 1));
        assert_eq!(g2b.deficiency(), 1);
        let g2a = fixtures::square_sources_network();
        assert_eq!((g2a.num_vertices(), g2a.num_components()), (6, 2));
        assert_eq!(g2a.deficiency(), 2);
        for g in [lv, g2a, g2b, fixtures::square_weakly_reversible_network()] {
            assert_eq!(g.deficiency(), g.deficiency_by_kernel_image());
        }
    }

    #[test]
    fn weak_reversibility_matches_component_counts() {
        for g in [
            fixtures::lotka_volterra_network(),
            fixtures::square_sources_network(),
            fixtures::square_complete_network(),
            fixtures::square_weakly_reversible_network(),
        ] {
            assert_eq!(
                g.is_weakly_reversible(),
                g.num_components() == g.num_strong_components()
            );
        }
    }
}
