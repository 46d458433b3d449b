//! Random instances for property tests and acceptance runs.
//!
//! Every generator takes an explicit RNG so runs are reproducible from a
//! seed. Coordinates are small nonnegative integers unless stated.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::{FeasibilityProblem, SignConstraint};
use crate::network::{ReactionNetwork, SpeciesList, Vertex};
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, State, WeightKind, WeightedSystem};
use crate::Rational;

/// `p/q` with `1 <= p <= 9`, `1 <= q <= 4`.
pub fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::from_frac(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

pub fn species(dim: usize) -> SpeciesList {
    SpeciesList::new((0..dim).map(|i| format!("S{i}"))).expect("distinct names")
}

fn random_point<R: Rng>(rng: &mut R, dim: usize, max: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(0..=max)).collect()
}

/// `count` distinct integer points in `[0, max]^dim`.
fn distinct_points<R: Rng>(rng: &mut R, dim: usize, count: usize, max: i64) -> Vec<Vec<i64>> {
    let capacity = ((max + 1) as usize).saturating_pow(dim as u32);
    let count = count.min(capacity);
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        seen.insert(random_point(rng, dim, max));
    }
    let mut pts: Vec<Vec<i64>> = seen.into_iter().collect();
    pts.shuffle(rng);
    pts
}

/// A linear feasibility problem with at most `max_vars` variables, small
/// integer data and mixed sign constraints. About half the instances are
/// built around a planted feasible point.
pub fn feasibility_problem<R: Rng>(rng: &mut R, max_vars: usize) -> FeasibilityProblem<Rational> {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(0..=n.min(6) + 1);
    let mut p = FeasibilityProblem::new(n);
    let mut point = Vec::with_capacity(n);
    for i in 0..n {
        let (sign, lo) = match rng.gen_range(0..4) {
            0 => (SignConstraint::Free, -3),
            1 => (SignConstraint::AtLeastOne, 1),
            _ => (SignConstraint::NonNegative, 0),
        };
        p.set_sign(i, sign);
        point.push(Rational::from_int(rng.gen_range(lo..=3)));
    }
    let planted = rng.gen_bool(0.5);
    for _ in 0..m {
        // Sparse rows keep elimination sizes moderate.
        let row: Vec<Rational> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Rational::from_int(rng.gen_range(-3..=3))
                } else {
                    Rational::from_int(0)
                }
            })
            .collect();
        let rhs = if planted {
            row.iter()
                .zip(&point)
                .fold(Rational::from_int(0), |a, (c, x)| a + c * x)
        } else {
            Rational::from_int(rng.gen_range(-3..=3))
        };
        p.add_equality(row, rhs);
    }
    p
}

/// A network in dimension `1..=max_dim` on at most `max_vertices` vertices.
pub fn network<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> ReactionNetwork<Rational> {
    let dim = rng.gen_range(1..=max_dim);
    let count = rng.gen_range(2..=max_vertices);
    let pts = distinct_points(rng, dim, count, 3);
    let nv = pts.len();
    let mut pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|a| (0..nv).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let ne = rng.gen_range(1..=pairs.len().min(2 * nv));
    let reactions = pairs[..ne]
        .iter()
        .map(|&(a, b)| (Vertex::from_ints(&pts[a]), Vertex::from_ints(&pts[b])));
    ReactionNetwork::from_reactions(species(dim), reactions).expect("valid by construction")
}

pub fn weighted<R: Rng, K: WeightKind>(
    rng: &mut R,
    net: ReactionNetwork<Rational>,
) -> WeightedSystem<Rational, K> {
    let w = (0..net.num_edges())
        .map(|_| positive_rational(rng))
        .collect();
    WeightedSystem::new(net, w).expect("positive weights")
}

/// A state with positive integer coordinates in `1..=3`.
pub fn integer_state<R: Rng>(rng: &mut R, dim: usize) -> State<Rational> {
    State::new(
        (0..dim)
            .map(|_| Rational::from_int(rng.gen_range(1..=3)))
            .collect(),
    )
    .expect("positive")
}

/// Accumulates weighted edges, merging repeats.
struct EdgeBag {
    dim: usize,
    edges: Vec<(Vec<i64>, Vec<i64>, Rational)>,
}

impl EdgeBag {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            edges: Vec::new(),
        }
    }

    fn add(&mut self, a: &[i64], b: &[i64], w: Rational) {
        debug_assert_ne!(a, b);
        match self.edges.iter_mut().find(|(s, t, _)| s == a && t == b) {
            Some(e) => e.2 = e.2.clone() + w,
            None => self.edges.push((a.to_vec(), b.to_vec(), w)),
        }
    }

    fn add_cycle(&mut self, cycle: &[Vec<i64>], w: &Rational) {
        for i in 0..cycle.len() {
            self.add(&cycle[i], &cycle[(i + 1) % cycle.len()], w.clone());
        }
    }

    fn build<K: WeightKind>(self) -> WeightedSystem<Rational, K> {
        WeightedSystem::from_weighted_reactions(
            species(self.dim),
            self.edges
                .into_iter()
                .map(|(a, b, w)| (Vertex::from_ints(&a), Vertex::from_ints(&b), w)),
        )
        .expect("valid by construction")
    }
}

/// A weighted system with a planted virtual source, and that vertex.
pub struct Planted<K> {
    pub system: WeightedSystem<Rational, K>,
    pub virtual_source: Vertex<Rational>,
}

/// Centre `c` with coordinates in `1..=2` and a direction `u` in
/// `{-1,0,1}^dim \ {0}`, so `c +- u` stay in `[0, 3]^dim`.
fn centre_and_direction<R: Rng>(rng: &mut R, dim: usize) -> (Vec<i64>, Vec<i64>) {
    let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=2)).collect();
    loop {
        let u: Vec<i64> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
        if u.iter().any(|&x| x != 0) {
            return (c, u);
        }
    }
}

fn shift(c: &[i64], u: &[i64], t: i64) -> Vec<i64> {
    c.iter().zip(u).map(|(a, b)| a + t * b).collect()
}

/// Other vertices: distinct points avoiding `used`.
fn other_points<R: Rng>(rng: &mut R, dim: usize, count: usize, used: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = distinct_points(rng, dim, count + used.len(), 3);
    pts.retain(|p| !used.contains(p));
    pts.truncate(count);
    pts
}

/// Source, target and the two weights of a reversible pair.
type WeightedPair = (Vec<i64>, Vec<i64>, Rational, Rational);

/// Outgoing pairs of the planted vertex `c`: targets `c + u` and `c - u`
/// with one shared weight, so the weighted reaction vectors cancel.
fn planted_pairs<R: Rng>(rng: &mut R, dim: usize) -> (Vec<i64>, Vec<WeightedPair>) {
    let (c, u) = centre_and_direction(rng, dim);
    let mut dirs = vec![u];
    if dim > 1 && rng.gen_bool(0.5) {
        let (_, v) = centre_and_direction(rng, dim);
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        if !dirs.contains(&v) && !dirs.contains(&neg) {
            dirs.push(v);
        }
    }
    let pairs = dirs
        .iter()
        .map(|d| {
            let w = positive_rational(rng);
            (shift(&c, d, 1), shift(&c, d, -1), w.clone(), w)
        })
        .collect();
    (c, pairs)
}

/// A path from `from` to `to` through up to two vertices of `pool`.
fn path<R: Rng>(rng: &mut R, from: &[i64], to: &[i64], pool: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut mid: Vec<Vec<i64>> = pool
        .iter()
        .filter(|p| p.as_slice() != from && p.as_slice() != to)
        .cloned()
        .collect();
    mid.shuffle(rng);
    mid.truncate(rng.gen_range(0..=2));
    let mut out = vec![from.to_vec()];
    out.extend(mid);
    out.push(to.to_vec());
    out
}

/// Adds `path` (from its first to its last vertex) with weight `w`.
fn add_path(bag: &mut EdgeBag, p: &[Vec<i64>], w: &Rational) {
    for pair in p.windows(2) {
        bag.add(&pair[0], &pair[1], w.clone());
    }
}

/// A complex-balanced flux system (a positive sum of cycles) whose vertex
/// `c` is a virtual source. Dimension `1..=max_dim`, at most about
/// `max_vertices` vertices.
pub fn planted_cb_flux<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> Planted<crate::weighted::Flux> {
    let dim = rng.gen_range(1..=max_dim);
    let (c, pairs) = planted_pairs(rng, dim);
    let mut used = vec![c.clone()];
    for (a, b, _, _) in &pairs {
        used.push(a.clone());
        used.push(b.clone());
    }
    let extra = max_vertices.saturating_sub(used.len());
    let count = rng.gen_range(0..=extra);
    let pool = other_points(rng, dim, count, &used);
    let mut everyone = used.clone();
    everyone.extend(pool.iter().cloned());
    everyone.retain(|p| *p != c);

    let mut bag = EdgeBag::new(dim);
    for (a, b, wa, wb) in &pairs {
        // c -> a ~> c and c -> b ~> c, each a cycle.
        let mut back = path(rng, a, &c, &everyone);
        back.insert(0, c.clone());
        add_path(&mut bag, &back, wa);
        let mut back = path(rng, b, &c, &everyone);
        back.insert(0, c.clone());
        add_path(&mut bag, &back, wb);
    }
    // Cycles avoiding c keep it a virtual source.
    for _ in 0..rng.gen_range(0..=2) {
        if everyone.len() < 2 {
            break;
        }
        let mut cyc = everyone.clone();
        cyc.shuffle(rng);
        cyc.truncate(rng.gen_range(2..=everyone.len().min(4)));
        bag.add_cycle(&cyc, &positive_rational(rng));
    }
    Planted {
        system: bag.build(),
        virtual_source: Vertex::from_ints(&c),
    }
}

/// A detailed-balanced flux system (equal flux on each reversible pair)
/// whose vertex `c` is a virtual source.
pub fn planted_db_flux<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> Planted<crate::weighted::Flux> {
    let dim = rng.gen_range(1..=max_dim);
    let (c, pairs) = planted_pairs(rng, dim);
    let mut used = vec![c.clone()];
    let mut bag = EdgeBag::new(dim);
    for (a, b, wa, wb) in &pairs {
        bag.add(&c, a, wa.clone());
        bag.add(a, &c, wa.clone());
        bag.add(&c, b, wb.clone());
        bag.add(b, &c, wb.clone());
        used.push(a.clone());
        used.push(b.clone());
    }
    let extra = max_vertices.saturating_sub(used.len());
    let count = rng.gen_range(0..=extra);
    let pool = other_points(rng, dim, count, &used);
    let mut others: Vec<Vec<i64>> = used[1..].to_vec();
    others.extend(pool);
    for _ in 0..rng.gen_range(0..=others.len()) {
        let a = others.choose(rng).unwrap().clone();
        let b = others.choose(rng).unwrap().clone();
        if a != b && !bag.edges.iter().any(|(s, t, _)| *s == a && *t == b) {
            let w = positive_rational(rng);
            bag.add(&a, &b, w.clone());
            bag.add(&b, &a, w);
        }
    }
    Planted {
        system: bag.build(),
        virtual_source: Vertex::from_ints(&c),
    }
}

/// A weakly reversible mass-action system whose vertex `c` is a virtual
/// source: its rates cancel along each planted direction, every other rate
/// is arbitrary.
pub fn planted_wr_mass_action<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> Planted<crate::weighted::Rate> {
    let flux = planted_cb_flux(rng, max_dim, max_vertices);
    Planted {
        system: rerate(rng, flux.system, &flux.virtual_source),
        virtual_source: flux.virtual_source,
    }
}

/// A reversible mass-action system whose vertex `c` is a virtual source.
pub fn planted_rev_mass_action<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> Planted<crate::weighted::Rate> {
    let flux = planted_db_flux(rng, max_dim, max_vertices);
    Planted {
        system: rerate(rng, flux.system, &flux.virtual_source),
        virtual_source: flux.virtual_source,
    }
}

/// Keeps the graph and the out-rates of `keep`; redraws all other weights.
fn rerate<R: Rng, K: WeightKind, K2: WeightKind>(
    rng: &mut R,
    s: WeightedSystem<Rational, K>,
    keep: &Vertex<Rational>,
) -> WeightedSystem<Rational, K2> {
    let (net, w) = s.into_parts();
    let k = net.vertex_index(keep).expect("planted vertex present");
    let w = net
        .edges()
        .iter()
        .zip(w)
        .map(|(&(src, _), w)| if src == k { w } else { positive_rational(rng) })
        .collect();
    WeightedSystem::new(net, w).expect("positive weights")
}

/// A random mass-action system and a transformed copy with the same
/// dynamics. Transformations keep integer coordinates: an edge
/// `y -> y + r` with rate `k` becomes `y -> y + 2r` with rate `k/2`, or the
/// pair `y -> y + r` (`k/2`), `y -> y + 2r` (`k/4`); a cancelling pair
/// `y -> y +- u` with equal rates may be added at a source.
pub fn equivalent_pair<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> (MassActionSystem<Rational>, MassActionSystem<Rational>) {
    let net = network(rng, max_dim, max_vertices);
    let m: MassActionSystem<Rational> = weighted(rng, net);
    let net = m.network();
    let dim = net.dim();
    let to_ints = |v: &Vertex<Rational>| -> Vec<i64> {
        v.coords()
            .iter()
            .map(|c| c.to_int().expect("integer"))
            .collect()
    };
    let mut bag = EdgeBag::new(dim);
    for (e, &(s, t)) in net.edges().iter().enumerate() {
        let y = to_ints(net.vertex(s));
        let y1 = to_ints(net.vertex(t));
        let r: Vec<i64> = y1.iter().zip(&y).map(|(a, b)| a - b).collect();
        let k = m.weight(e).clone();
        let two = Rational::from_int(2);
        match rng.gen_range(0..3) {
            0 => bag.add(&y, &y1, k),
            1 => bag.add(&y, &shift(&y, &r, 2), k / two),
            _ => {
                bag.add(&y, &y1, k.clone() / two.clone());
                bag.add(&y, &shift(&y, &r, 2), k / (two.clone() * two));
            }
        }
    }
    if rng.gen_bool(0.5) {
        let sources = net.source_vertices();
        let y = to_ints(net.vertex(*sources.choose(rng).unwrap()));
        let (_, u) = centre_and_direction(rng, dim);
        let w = positive_rational(rng);
        bag.add(&y, &shift(&y, &u, 1), w.clone());
        bag.add(&y, &shift(&y, &u, -1), w);
    }
    (m.clone(), bag.build())
}

/// Multiplies one rate of `m` by two. The result is never dynamically
/// equivalent to `m`.
pub fn perturbed<R: Rng>(
    rng: &mut R,
    m: &MassActionSystem<Rational>,
) -> MassActionSystem<Rational> {
    let (net, mut w) = m.clone().into_parts();
    let e = rng.gen_range(0..w.len());
    w[e] = w[e].clone() * Rational::from_int(2);
    MassActionSystem::new(net, w).expect("positive rates")
}

/// A complex-balanced flux: a positive combination of random cycles.
pub fn cycle_flux<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    max_vertices: usize,
) -> FluxSystem<Rational> {
    let dim = rng.gen_range(1..=max_dim);
    let count = rng.gen_range(2..=max_vertices);
    let pts = distinct_points(rng, dim, count, 3);
    let mut bag = EdgeBag::new(dim);
    for _ in 0..rng.gen_range(1..=3) {
        let mut cyc = pts.clone();
        cyc.shuffle(rng);
        cyc.truncate(rng.gen_range(2..=pts.len()));
        bag.add_cycle(&cyc, &positive_rational(rng));
    }
    bag.build()
}
