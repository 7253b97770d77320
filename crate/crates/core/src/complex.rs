//! Finite ordered simplicial complexes: construction, validation, fixture
//! generators, and integer (co)boundary matrices.
//!
//! Every complex carries a total vertex order (vertex ids `0..vertex_count`);
//! simplices are stored as strictly increasing vertex lists. All cochain
//! formulas downstream rely on this order.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::snf::IntMatrix;

/// A single simplex: a strictly increasing list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    /// Build from an unsorted list of distinct vertices.
    pub fn new(mut vertices: Vec<u32>) -> Result<Simplex> {
        if vertices.is_empty() {
            return Err(Error::Validation("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "repeated vertex in simplex {vertices:?}"
            )));
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The face obtained by deleting the `j`-th vertex.
    pub fn face(&self, j: usize) -> Simplex {
        let mut v = self.vertices.clone();
        v.remove(j);
        Simplex { vertices: v }
    }

    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Simplex {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex { vertices }
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    name: String,
    facets: Vec<Vec<u32>>,
}

/// A finite ordered simplicial complex, described by its facet list.
///
/// Faces are generated on demand and deterministically; vertex ids form a
/// gap-free range `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    vertex_count: u32,
    facets: Vec<Simplex>,
    dimension: usize,
}

impl SimplicialComplex {
    /// Validate and normalize a facet list. Vertex ids are renumbered onto a
    /// gap-free 0-based range by a monotone map (input order of ids is
    /// preserved); duplicate facets collapse.
    pub fn new(name: impl Into<String>, facets: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
        if facets.is_empty() {
            return Err(Error::Validation("empty facet list".into()));
        }
        let mut simplices = facets
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>>>()?;

        let mut ids: Vec<u32> = simplices
            .iter()
            .flat_map(|s| s.vertices.iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let renumber: HashMap<u32, u32> = ids
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        for s in &mut simplices {
            for v in &mut s.vertices {
                *v = renumber[v];
            }
        }
        simplices.sort();
        simplices.dedup();
        let dimension = simplices.iter().map(|s| s.dimension()).max().unwrap();
        Ok(SimplicialComplex {
            name: name.into(),
            vertex_count: ids.len() as u32,
            facets: simplices,
            dimension,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Parse the JSON complex format: `{"name": ..., "facets": [[..], ..]}`.
    pub fn from_json(data: &str) -> Result<SimplicialComplex> {
        let file: ComplexFile = serde_json::from_str(data)?;
        SimplicialComplex::new(file.name, file.facets)
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            name: self.name.clone(),
            facets: self
                .facets
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("complex serialization cannot fail")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
        let data = std::fs::read_to_string(path)?;
        SimplicialComplex::from_json(&data)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// All cells of the complex, grouped and lexicographically sorted by
    /// dimension. Deterministic: this ordering is the cochain basis.
    pub fn cells_by_dim(&self) -> Vec<Vec<Simplex>> {
        let mut per_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.dimension + 1];
        for f in &self.facets {
            let verts = f.vertices();
            let n = verts.len();
            // every nonempty subset, by bitmask
            for mask in 1u64..(1u64 << n) {
                let mut cell = Vec::with_capacity(mask.count_ones() as usize);
                for (i, &v) in verts.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        cell.push(v);
                    }
                }
                per_dim[cell.len() - 1].push(cell);
            }
        }
        per_dim
            .into_iter()
            .map(|mut cells| {
                cells.sort_unstable();
                cells.dedup();
                cells.into_iter().map(Simplex::from_sorted).collect()
            })
            .collect()
    }

    /// Face counts per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells_by_dim().iter().map(|c| c.len()).collect()
    }

    /// Euler characteristic from face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Integer coboundary matrices `delta[k]: C^k -> C^(k+1)` together with
    /// the cochain bases. Entries lie in `{-1, 0, 1}` before ring reduction,
    /// and `delta[k+1] * delta[k] = 0` over any ring.
    pub fn coboundary_matrices(&self, ring: Ring) -> CochainComplex {
        let basis = self.cells_by_dim();
        let index: Vec<HashMap<&[u32], usize>> = basis
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.vertices(), i))
                    .collect()
            })
            .collect();
        let mut delta = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let rows = if k + 1 < basis.len() {
                basis[k + 1].len()
            } else {
                0
            };
            let mut m = IntMatrix::zero(rows, basis[k].len());
            if k + 1 < basis.len() {
                for (r, tau) in basis[k + 1].iter().enumerate() {
                    for j in 0..=tau.dimension() {
                        let face = tau.face(j);
                        let c = index[k][face.vertices()];
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        m.set(r, c, BigInt::from(sign));
                    }
                }
            }
            delta.push(m);
        }
        CochainComplex { ring, basis, delta }
    }

    // ------------------------------------------------------------------
    // Fixture generators
    // ------------------------------------------------------------------

    /// Boundary of the `(n+1)`-simplex: the standard triangulated `n`-sphere.
    pub fn sphere(n: usize) -> SimplicialComplex {
        let verts: Vec<u32> = (0..=(n as u32 + 1)).collect();
        let mut facets = Vec::new();
        for skip in 0..verts.len() {
            let f: Vec<u32> = verts
                .iter()
                .copied()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v)
                .collect();
            facets.push(f);
        }
        SimplicialComplex::new(format!("S{n}"), facets).expect("sphere facets are valid")
    }

    /// Suspension: the join of `self` with two new apex vertices.
    pub fn suspension(&self) -> SimplicialComplex {
        let a = self.vertex_count;
        let b = self.vertex_count + 1;
        let mut facets = Vec::new();
        for f in &self.facets {
            let mut fa = f.vertices().to_vec();
            fa.push(a);
            let mut fb = f.vertices().to_vec();
            fb.push(b);
            facets.push(fa);
            facets.push(fb);
        }
        SimplicialComplex::new(format!("susp({})", self.name), facets)
            .expect("suspension facets are valid")
    }

    /// Staircase (ordered-product) triangulation of `|K| x |L|`.
    ///
    /// Cells are monotone vertex paths through each pair of facets; the
    /// vertex order is lexicographic in (K-vertex, L-vertex).
    pub fn product(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
        let lv = l.vertex_count;
        let mut facets: Vec<Vec<u32>> = Vec::new();
        for fk in &k.facets {
            for fl in &l.facets {
                let p = fk.dimension();
                let q = fl.dimension();
                staircase_paths(p, q, &mut |path| {
                    let cell: Vec<u32> = path
                        .iter()
                        .map(|&(i, j)| fk.vertices()[i] * lv + fl.vertices()[j])
                        .collect();
                    facets.push(cell);
                });
            }
        }
        facets.sort_unstable();
        facets.dedup();
        // keep only maximal cells when the inputs are not pure
        let pure = facets.windows(2).all(|w| w[0].len() == w[1].len());
        if !pure {
            facets = prune_non_maximal(facets);
        }
        SimplicialComplex::new(format!("{}x{}", k.name, l.name), facets)
            .expect("product facets are valid")
    }

    /// Triangulation of real projective `n`-space: the quotient of the
    /// barycentric subdivision of the boundary of the `(n+1)`-simplex by the
    /// subset-complement involution.
    pub fn rp_space(n: usize) -> Result<SimplicialComplex> {
        if n < 1 {
            return Err(Error::InvalidParams("rp_space requires n >= 1".into()));
        }
        let sphere = SimplicialComplex::sphere(n);
        let (sd, sd_vertex_sets) = barycentric_subdivision(&sphere);
        // involution on subdivision vertices: subset complement
        let universe: Vec<u32> = (0..sphere.vertex_count).collect();
        let mut map = vec![0u32; sd.vertex_count as usize];
        let index: HashMap<&Vec<u32>, u32> = sd_vertex_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        for (i, set) in sd_vertex_sets.iter().enumerate() {
            let comp: Vec<u32> = universe
                .iter()
                .copied()
                .filter(|v| !set.contains(v))
                .collect();
            map[i] = index[&comp];
        }
        let (q, _) = quotient(&sd, &[map], format!("RP{n}"))?;
        Ok(q)
    }

    /// The projective space together with its double cover (the subdivided
    /// sphere) and the covering map on vertices.
    pub fn rp_space_with_covering(
        n: usize,
    ) -> Result<(SimplicialComplex, SimplicialComplex, Vec<u32>)> {
        if n < 1 {
            return Err(Error::InvalidParams("rp_space requires n >= 1".into()));
        }
        let sphere = SimplicialComplex::sphere(n);
        let (sd, sd_vertex_sets) = barycentric_subdivision(&sphere);
        let universe: Vec<u32> = (0..sphere.vertex_count).collect();
        let mut map = vec![0u32; sd.vertex_count as usize];
        let index: HashMap<&Vec<u32>, u32> = sd_vertex_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        for (i, set) in sd_vertex_sets.iter().enumerate() {
            let comp: Vec<u32> = universe
                .iter()
                .copied()
                .filter(|v| !set.contains(v))
                .collect();
            map[i] = index[&comp];
        }
        let (q, vmap) = quotient(&sd, &[map], format!("RP{n}"))?;
        Ok((q, sd, vmap))
    }

    /// Triangulation of the lens space `L(p, q)`: the join of two `2p`-gon
    /// circles carrying the free rotation action of `Z/p` (by one step on the
    /// first circle and `q` steps on the second), barycentrically subdivided
    /// once so the quotient is simplicial, then quotiented.
    pub fn lens_space(p: u64, q: u64) -> Result<SimplicialComplex> {
        if p < 2 {
            return Err(Error::InvalidParams("lens_space requires p >= 2".into()));
        }
        if num_integer::gcd(p, q) != 1 {
            return Err(Error::InvalidParams(format!(
                "lens_space requires gcd(p, q) = 1, got gcd({p}, {q}) = {}",
                num_integer::gcd(p, q)
            )));
        }
        let n = 2 * p as u32; // vertices per circle; rotation steps by 2
        let mut facets = Vec::new();
        for i in 0..n {
            let e1 = [i, (i + 1) % n];
            for j in 0..n {
                let e2 = [n + j, n + (j + 1) % n];
                facets.push(vec![e1[0], e1[1], e2[0], e2[1]]);
            }
        }
        let join = SimplicialComplex::new("join", facets)?;
        // generator of the Z/p action: k steps rotate the first circle by 2k
        // vertices and the second by 2kq vertices
        let step = |v: u32, k: u32| -> u32 {
            let n64 = n as u64;
            if v < n {
                ((v as u64 + 2 * k as u64) % n64) as u32
            } else {
                n + (((v - n) as u64 + 2 * k as u64 * q) % n64) as u32
            }
        };
        let (sd, sd_vertex_sets) = barycentric_subdivision(&join);
        let index: HashMap<&Vec<u32>, u32> = sd_vertex_sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let mut maps = Vec::new();
        for k in 1..p as u32 {
            let mut map = vec![0u32; sd.vertex_count as usize];
            for (i, set) in sd_vertex_sets.iter().enumerate() {
                let mut moved: Vec<u32> = set.iter().map(|&v| step(v, k)).collect();
                moved.sort_unstable();
                map[i] = index[&moved];
            }
            maps.push(map);
        }
        let (l, _) = quotient(&sd, &maps, format!("L({p},{q})"))?;
        Ok(l)
    }
}

/// Enumerate monotone lattice paths from `(0,0)` to `(p,q)` with unit steps.
fn staircase_paths(p: usize, q: usize, emit: &mut dyn FnMut(&[(usize, usize)])) {
    let mut path = vec![(0usize, 0usize)];
    fn rec(p: usize, q: usize, path: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&[(usize, usize)])) {
        let &(i, j) = path.last().unwrap();
        if i == p && j == q {
            emit(path);
            return;
        }
        if i < p {
            path.push((i + 1, j));
            rec(p, q, path, emit);
            path.pop();
        }
        if j < q {
            path.push((i, j + 1));
            rec(p, q, path, emit);
            path.pop();
        }
    }
    rec(p, q, &mut path, emit);
}

fn prune_non_maximal(cells: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut keep = Vec::new();
    'outer: for c in &cells {
        for other in &cells {
            if other.len() > c.len() && c.iter().all(|v| other.binary_search(v).is_ok()) {
                continue 'outer;
            }
        }
        keep.push(c.clone());
    }
    keep
}

/// Barycentric subdivision. Returns the subdivided complex together with the
/// vertex dictionary: subdivision vertex `i` is the barycenter of the i-th
/// returned simplex (subsets sorted by cardinality, then lexicographically).
fn barycentric_subdivision(k: &SimplicialComplex) -> (SimplicialComplex, Vec<Vec<u32>>) {
    let cells = k.cells_by_dim();
    let mut vertex_sets: Vec<Vec<u32>> = Vec::new();
    for dim_cells in &cells {
        for c in dim_cells {
            vertex_sets.push(c.vertices().to_vec());
        }
    }
    // cells_by_dim is sorted by (dim, lex) already
    let index: HashMap<&Vec<u32>, u32> = vertex_sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    let mut facets = Vec::new();
    for f in k.facets() {
        let verts = f.vertices();
        // maximal chains of faces of f correspond to permutations of verts
        permute(verts, &mut |perm| {
            let mut chain = Vec::with_capacity(perm.len());
            let mut prefix: Vec<u32> = Vec::with_capacity(perm.len());
            for &v in perm {
                prefix.push(v);
                let mut sorted = prefix.clone();
                sorted.sort_unstable();
                chain.push(index[&sorted]);
            }
            facets.push(chain);
        });
    }
    let sd = SimplicialComplex::new(format!("sd({})", k.name()), facets)
        .expect("subdivision facets are valid");
    // `new` renumbers vertices, but the index set 0..len is already gap-free
    // (every barycenter occurs in some maximal chain), so ids are unchanged.
    debug_assert_eq!(sd.vertex_count as usize, vertex_sets.len());
    (sd, vertex_sets)
}

fn permute(items: &[u32], emit: &mut dyn FnMut(&[u32])) {
    let mut buf = items.to_vec();
    let n = buf.len();
    fn heap(buf: &mut Vec<u32>, k: usize, emit: &mut dyn FnMut(&[u32])) {
        if k <= 1 {
            emit(buf);
            return;
        }
        for i in 0..k {
            heap(buf, k - 1, emit);
            if k % 2 == 0 {
                buf.swap(i, k - 1);
            } else {
                buf.swap(0, k - 1);
            }
        }
    }
    heap(&mut buf, n, emit);
}

/// Quotient of a complex by a group of vertex permutations (the non-identity
/// elements). The action must be free and regular: no cell may meet any of
/// its translates. Both properties are asserted. Returns the quotient and
/// the vertex map from the covering complex onto it.
fn quotient(
    k: &SimplicialComplex,
    maps: &[Vec<u32>],
    name: String,
) -> Result<(SimplicialComplex, Vec<u32>)> {
    // orbit representative: minimum vertex id over the orbit
    let nv = k.vertex_count as usize;
    let mut rep: Vec<u32> = (0..nv as u32).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..nv {
            for map in maps {
                let w = map[v] as usize;
                let m = rep[v].min(rep[w]);
                if rep[v] != m || rep[w] != m {
                    rep[v] = m;
                    rep[w] = m;
                    changed = true;
                }
            }
        }
    }

    // freeness check on every cell of the covering complex
    for dim_cells in k.cells_by_dim() {
        for cell in &dim_cells {
            for map in maps {
                let mut image: Vec<u32> = cell.vertices().iter().map(|&v| map[v as usize]).collect();
                image.sort_unstable();
                if image.len() != cell.vertices().len() {
                    return Err(Error::Validation(
                        "group action collapses a simplex".into(),
                    ));
                }
                if image.iter().any(|v| cell.vertices().contains(v)) {
                    return Err(Error::Validation(
                        "group action is not free enough: a cell meets its translate".into(),
                    ));
                }
            }
        }
    }

    let facets: Vec<Vec<u32>> = k
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|&v| rep[v as usize]).collect())
        .collect();
    let quotient = SimplicialComplex::new(name, facets)?;
    // the constructor renumbers representative ids monotonically; rebuild
    // the composite vertex map cover -> quotient
    let mut reps: Vec<u32> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let renumber: HashMap<u32, u32> = reps
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new as u32))
        .collect();
    let vmap: Vec<u32> = rep.iter().map(|r| renumber[r]).collect();
    Ok((quotient, vmap))
}

/// Graded coefficient modules of a complex with coboundary matrices.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub ring: Ring,
    pub basis: Vec<Vec<Simplex>>,
    pub delta: Vec<IntMatrix>,
}

impl CochainComplex {
    /// Check `delta[k+1] * delta[k] = 0` over the ring, exactly.
    pub fn verify_dd_zero(&self) -> bool {
        for k in 0..self.delta.len().saturating_sub(1) {
            let prod = self.delta[k + 1].mul(&self.delta[k]);
            let ok = match self.ring {
                Ring::Z => prod.is_zero(),
                Ring::Mod(m) => prod.is_zero_mod(m),
            };
            if !ok {
                return false;
            }
        }
        true
    }
}
