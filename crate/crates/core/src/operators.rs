//! The four Grover-walk matrices of a graph and the arc states they act on.
//!
//! For a graph with arc set 𝒜 and vertex set V:
//!
//! * boundary `d` (V×𝒜): `d[x, a] = 1/sqrt(deg x)` when `x = t(a)`, else 0;
//! * shift `S` (𝒜×𝒜): the permutation sending each arc to its inverse;
//! * evolution `U = S (2 d* d - I)` (𝒜×𝒜, real orthogonal);
//! * discriminant `P = d S d*` (V×V, real symmetric).
//!
//! `U` is applied through its sparse factored form rather than a stored
//! dense product: one step costs O(|𝒜|). Dense realizations of `S` and `U`
//! are available on demand for inspection and cross-checking.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::graph::{ArcSet, Graph};

/// Arc-count threshold for the dense cross-check of the sparse step in
/// debug builds.
const DENSE_CHECK_MAX_ARCS: usize = 64;

/// The Grover-walk operators attached to one graph.
///
/// Immutable after construction; stepping is a pure function of the state.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    graph: Graph,
    arcs: ArcSet,
    degrees: Vec<usize>,
    boundary: DMatrix<f64>,
    discriminant: DMatrix<f64>,
}

impl WalkOperators {
    /// Build all four operators for `graph` with its arc set.
    pub fn build(graph: &Graph, arcs: &ArcSet) -> WalkOperators {
        let n = graph.vertex_count();
        let a = arcs.len();
        let degrees = graph.degrees();
        let mut boundary = DMatrix::zeros(n, a);
        for (k, arc) in arcs.arcs().iter().enumerate() {
            boundary[(arc.terminus, k)] = 1.0 / (degrees[arc.terminus] as f64).sqrt();
        }
        // P = d S d*: dS is d with columns permuted by the inversion.
        let mut shifted = DMatrix::zeros(n, a);
        for b in 0..a {
            shifted.set_column(b, &boundary.column(arcs.inverse(b)));
        }
        let discriminant = &shifted * boundary.transpose();
        WalkOperators {
            graph: graph.clone(),
            arcs: arcs.clone(),
            degrees,
            boundary,
            discriminant,
        }
    }

    /// Convenience constructor deriving the arc set itself.
    pub fn from_graph(graph: &Graph) -> WalkOperators {
        Self::build(graph, &ArcSet::build(graph))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn arcs(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Boundary matrix `d` (V×𝒜).
    pub fn boundary(&self) -> &DMatrix<f64> {
        &self.boundary
    }

    /// Discriminant `P = d S d*` (V×V).
    pub fn discriminant(&self) -> &DMatrix<f64> {
        &self.discriminant
    }

    /// Dense shift matrix `S`.
    pub fn shift_dense(&self) -> DMatrix<f64> {
        let a = self.arc_count();
        let mut s = DMatrix::zeros(a, a);
        for b in 0..a {
            s[(self.arcs.inverse(b), b)] = 1.0;
        }
        s
    }

    /// Dense evolution matrix `U`, materialized column by column from the
    /// sparse step.
    pub fn evolution_dense(&self) -> DMatrix<f64> {
        let a = self.arc_count();
        let mut u = DMatrix::zeros(a, a);
        let mut src = vec![0.0f64; a];
        let mut dst = vec![0.0f64; a];
        for b in 0..a {
            src[b] = 1.0;
            self.apply_evolution(&src, &mut dst);
            for (r, &value) in dst.iter().enumerate() {
                u[(r, b)] = value;
            }
            src[b] = 0.0;
        }
        u
    }

    /// One application of `U = S (2 d* d - I)` in O(|𝒜|).
    ///
    /// Writing m_x for the sum of `src` over arcs with terminus x, the
    /// output at arc a is `(2 / deg o(a)) m_{o(a)} - src[a⁻¹]`.
    pub fn apply_evolution<T>(&self, src: &[T], dst: &mut [T])
    where
        T: Copy + Zero + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    {
        debug_assert_eq!(src.len(), self.arc_count());
        debug_assert_eq!(dst.len(), self.arc_count());
        let mut terminus_sums = vec![T::zero(); self.vertex_count()];
        for (k, arc) in self.arcs.arcs().iter().enumerate() {
            terminus_sums[arc.terminus] = terminus_sums[arc.terminus] + src[k];
        }
        for (k, arc) in self.arcs.arcs().iter().enumerate() {
            let weight = 2.0 / self.degrees[arc.origin] as f64;
            dst[k] = terminus_sums[arc.origin] * weight - src[arc.inverse];
        }
    }

    /// The vertex type state `d* e_x`: amplitude `1/sqrt(deg x)` on every
    /// arc terminating at `x`.
    pub fn vertex_state(&self, x: usize) -> Result<ArcState> {
        let n = self.vertex_count();
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
        let weight = 1.0 / (self.degrees[x] as f64).sqrt();
        let amplitudes = DVector::from_fn(self.arc_count(), |k, _| {
            if self.arcs.arc(k).terminus == x {
                Complex64::new(weight, 0.0)
            } else {
                Complex64::zero()
            }
        });
        Ok(ArcState { amplitudes })
    }

    /// `U^t` applied to a state by `t` successive sparse steps.
    pub fn step(&self, state: &ArcState, t: u32) -> ArcState {
        let mut current = state.clone();
        for _ in 0..t {
            current = self.step_once(&current);
        }
        current
    }

    fn step_once(&self, state: &ArcState) -> ArcState {
        let a = self.arc_count();
        let mut next = vec![Complex64::zero(); a];
        self.apply_evolution(state.amplitudes.as_slice(), &mut next);

        #[cfg(debug_assertions)]
        if a <= DENSE_CHECK_MAX_ARCS {
            let u = self.evolution_dense();
            for r in 0..a {
                let mut dense = Complex64::zero();
                for c in 0..a {
                    dense += state.amplitudes[c] * u[(r, c)];
                }
                debug_assert!(
                    (dense - next[r]).norm() <= 1e-12,
                    "sparse and dense evolution disagree at arc {r}"
                );
            }
        }

        ArcState {
            amplitudes: DVector::from_vec(next),
        }
    }
}

/// A vector over the arc set; a *state* when it has unit norm.
///
/// The walk itself is real, but amplitudes are kept complex so that the
/// state-transfer definitions (phases γ, inner products) apply verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcState {
    amplitudes: DVector<Complex64>,
}

impl ArcState {
    pub fn from_vector(amplitudes: DVector<Complex64>) -> ArcState {
        ArcState { amplitudes }
    }

    /// The basis state `e_a` for one arc.
    pub fn arc_basis(arc_count: usize, arc: usize) -> ArcState {
        assert!(arc < arc_count, "arc index {arc} out of {arc_count}");
        let mut amplitudes = DVector::zeros(arc_count);
        amplitudes[arc] = Complex64::new(1.0, 0.0);
        ArcState { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, arc: usize) -> Complex64 {
        self.amplitudes[arc]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Inner product ⟨self, other⟩, linear in `self`.
    pub fn inner(&self, other: &ArcState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()))
    }

    #[test]
    fn k2_evolution_is_the_arc_swap() {
        let ops = WalkOperators::from_graph(&Graph::complete(2).unwrap());
        let u = ops.evolution_dense();
        assert_eq!(u[(0, 1)], 1.0);
        assert_eq!(u[(1, 0)], 1.0);
        assert_eq!(u[(0, 0)], 0.0);
        assert_eq!(u[(1, 1)], 0.0);
        // U e_a = e_{a^{-1}} exactly.
        for a in 0..2 {
            let stepped = ops.step(&ArcState::arc_basis(2, a), 1);
            assert_eq!(
                stepped.amplitude(ops.arcs().inverse(a)),
                Complex64::new(1.0, 0.0)
            );
        }
    }

    #[test]
    fn c4_discriminant_is_half_adjacency() {
        let g = Graph::cycle(4).unwrap();
        let ops = WalkOperators::from_graph(&g);
        let expected = g.adjacency() / 2.0;
        assert!(max_abs(&(ops.discriminant() - expected)) <= 1e-15);
    }

    #[test]
    fn gamma_3_2_discriminant_is_adjacency_over_4() {
        let g = Graph::complete_multipartite(3, 2).unwrap();
        let ops = WalkOperators::from_graph(&g);
        let expected = g.adjacency() / 4.0;
        assert!(max_abs(&(ops.discriminant() - expected)) <= 1e-15);
    }

    #[test]
    fn vertex_state_has_unit_norm_and_degree_support() {
        let g = Graph::complete_multipartite(2, 3).unwrap(); // 3-regular
        let ops = WalkOperators::from_graph(&g);
        let state = ops.vertex_state(0).unwrap();
        let nonzero: Vec<Complex64> = state
            .amplitudes()
            .iter()
            .copied()
            .filter(|amp| amp.norm() > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 3);
        for amp in nonzero {
            assert!((amp.re - 1.0 / 3.0f64.sqrt()).abs() <= 1e-15);
            assert_eq!(amp.im, 0.0);
        }
        assert!(state.is_unit(1e-12));
    }

    #[test]
    fn vertex_state_on_k2_is_a_single_arc() {
        let ops = WalkOperators::from_graph(&Graph::complete(2).unwrap());
        let state = ops.vertex_state(0).unwrap();
        let into_zero = ops.arcs().index_of(1, 0).unwrap();
        assert_eq!(state.amplitude(into_zero), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn vertex_state_rejects_bad_index() {
        let ops = WalkOperators::from_graph(&Graph::complete(2).unwrap());
        assert!(matches!(
            ops.vertex_state(5),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn step_zero_is_identity() {
        let ops = WalkOperators::from_graph(&Graph::cycle(5).unwrap());
        let state = ops.vertex_state(2).unwrap();
        assert_eq!(ops.step(&state, 0), state);
    }

    #[test]
    fn degree_two_terminus_forwards_the_arc() {
        // On any cycle every terminus has degree 2, so U e_a = e_b where b
        // is the unique outgoing non-inverse arc at t(a).
        for n in [3usize, 4, 5, 6] {
            let g = Graph::cycle(n).unwrap();
            let ops = WalkOperators::from_graph(&g);
            for a in 0..ops.arc_count() {
                let arc = ops.arcs().arc(a);
                let stepped = ops.step(&ArcState::arc_basis(ops.arc_count(), a), 1);
                let b = (0..ops.arc_count())
                    .find(|&k| k != arc.inverse && ops.arcs().arc(k).origin == arc.terminus)
                    .unwrap();
                assert_eq!(stepped.amplitude(b), Complex64::new(1.0, 0.0));
                let leak: f64 = (0..ops.arc_count())
                    .filter(|&k| k != b)
                    .map(|k| stepped.amplitude(k).norm())
                    .sum();
                assert_eq!(leak, 0.0);
            }
        }
    }

    #[test]
    fn operator_identities_on_a_sample() {
        for g in [
            Graph::complete(2).unwrap(),
            Graph::cycle(4).unwrap(),
            Graph::complete_multipartite(3, 2).unwrap(),
            Graph::from_edge_list("0 1\n1 2\n2 3\n1 3").unwrap(),
        ] {
            let ops = WalkOperators::from_graph(&g);
            let n = ops.vertex_count();
            let a = ops.arc_count();
            let d = ops.boundary();
            let s = ops.shift_dense();
            let u = ops.evolution_dense();
            assert!(max_abs(&(d * d.transpose() - DMatrix::identity(n, n))) <= 1e-12);
            assert_eq!(&s * &s, DMatrix::identity(a, a));
            assert!(max_abs(&(u.transpose() * &u - DMatrix::identity(a, a))) <= 1e-10);
            // P entries against the closed form A[x][y]/sqrt(deg x deg y).
            let adj = g.adjacency();
            let deg = g.degrees();
            for x in 0..n {
                for y in 0..n {
                    let expected = adj[(x, y)] / ((deg[x] * deg[y]) as f64).sqrt();
                    assert!((ops.discriminant()[(x, y)] - expected).abs() <= 1e-12);
                }
            }
        }
    }
}
