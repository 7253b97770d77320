//! Chain-complex reduction by sequences of elementary reductions.
//!
//! An elementary reduction removes a pair of cells `(a, b)` with
//! `<db, a> = +-1` from a based chain complex without changing its homotopy
//! type; the differential of the smaller complex is
//! `d'x = dx - lambda^-1 <dx, a> db` restricted to the surviving cells.
//! Pairs whose current boundary (coreduction) or coboundary (collapse) is a
//! singleton cost nothing; when none exists, a general pair chosen for low
//! fill-in keeps the cascade going. The fixture complexes shrink from
//! hundreds of thousands of cells to a handful, after which exact
//! Smith-normal-form linear algebra is cheap.
//!
//! Each event records the live boundary row of `b` and coboundary column of
//! `a` at removal time. From this log the three cochain-level structure maps
//! are evaluated in time linear in the log:
//!
//! * `restrict` — quasi-isomorphism onto cochains of the critical cells,
//! * `lift` — its homotopy inverse (critical cochains to honest cochains),
//! * `homotopy` — the cochain homotopy `H` with `id - lift.restrict = dH + Hd`.
//!
//! The complex is augmented by an empty cell below the vertices, which seeds
//! the coreduction cascade; critical cells therefore present *reduced*
//! cohomology, and the degree-0 correction happens in the cohomology layer.

use std::collections::{HashMap, VecDeque};

use crate::complex::{Simplex, SimplicialComplex};
use crate::ring::Ring;
use crate::snf::IntMatrix;

const CRITICAL: u32 = u32::MAX;

struct Event {
    a: u32,
    b: u32,
    lambda: i64,
    /// live boundary of `b` at removal, without the `a` entry
    row_b: Vec<(u32, i64)>,
    /// live coboundary coefficients `<dx, a>` at removal, without `x = b`
    col_a: Vec<(u32, i64)>,
}

/// Augmented cell complex of a simplicial complex together with a maximal
/// sequence of elementary reductions and the recorded transport data.
pub struct Reduction {
    /// (offset, count) of the cell-id range per level; level = dimension + 1,
    /// the empty cell is level 0.
    levels: Vec<(u32, u32)>,
    /// original boundary incidences per cell (for coboundary application)
    boundary: Vec<Vec<(u32, i8)>>,
    events: Vec<Event>,
    /// per level of `b`, the ordered list of event indices
    events_by_level: Vec<Vec<u32>>,
    /// step at which a cell was removed; `CRITICAL` if it survived
    removed_at: Vec<u32>,
    /// surviving cell ids per level, ascending
    critical: Vec<Vec<u32>>,
    /// final (reduced) boundary rows of the critical cells
    final_rows: HashMap<u32, Vec<(u32, i64)>>,
}

/// Mutable sparse differential during reduction.
struct Current {
    /// boundary row per cell, sorted by cell id; live entries only
    rows: Vec<Vec<(u32, i64)>>,
    /// lazily maintained coface lists (may contain stale ids)
    cols: Vec<Vec<u32>>,
    /// exact count of live cofaces per cell
    cob_count: Vec<u32>,
    alive: Vec<bool>,
}

impl Current {
    fn coeff(&self, x: u32, y: u32) -> i64 {
        let row = &self.rows[x as usize];
        match row.binary_search_by_key(&y, |e| e.0) {
            Ok(i) => row[i].1,
            Err(_) => 0,
        }
    }

    /// Valid cofaces of `y` (cells x alive with y in dx), deduplicated;
    /// also compacts the lazy list.
    fn cofaces(&mut self, y: u32) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.cols[y as usize]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&x| self.alive[x as usize] && self.coeff(x, y) != 0);
        self.cols[y as usize] = list.clone();
        list
    }

    /// rows[x] += c * row (sorted merge); maintains cols and cob_count.
    /// Cells whose live coface count drops to exactly 1 are appended to
    /// `dropped`.
    fn add_multiple(&mut self, x: u32, c: i64, row: &[(u32, i64)], dropped: &mut Vec<u32>) {
        let old = std::mem::take(&mut self.rows[x as usize]);
        let mut new = Vec::with_capacity(old.len() + row.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < row.len() {
            let (y, v, had) = match (old.get(i), row.get(j)) {
                (Some(&(y1, v1)), Some(&(y2, v2))) => {
                    if y1 == y2 {
                        i += 1;
                        j += 1;
                        let add = c.checked_mul(v2).expect("coefficient overflow");
                        (y1, v1.checked_add(add).expect("coefficient overflow"), true)
                    } else if y1 < y2 {
                        i += 1;
                        (y1, v1, true)
                    } else {
                        j += 1;
                        (y2, c.checked_mul(v2).expect("coefficient overflow"), false)
                    }
                }
                (Some(&(y1, v1)), None) => {
                    i += 1;
                    (y1, v1, true)
                }
                (None, Some(&(y2, v2))) => {
                    j += 1;
                    (y2, c.checked_mul(v2).expect("coefficient overflow"), false)
                }
                (None, None) => unreachable!(),
            };
            if v != 0 {
                if !had {
                    self.cols[y as usize].push(x);
                    self.cob_count[y as usize] += 1;
                }
                new.push((y, v));
            } else if had {
                self.cob_count[y as usize] -= 1;
                if self.alive[y as usize] && self.cob_count[y as usize] == 1 {
                    dropped.push(y);
                }
            }
        }
        self.rows[x as usize] = new;
    }

    /// Fill score of the best unit pair in the row of `b`:
    /// (row length - 1) * (live coface count of a - 1), minimized over the
    /// unit entries a with ties broken by cell id.
    fn pair_score(&self, b: u32) -> Option<(u64, u32)> {
        let row = &self.rows[b as usize];
        if row.is_empty() {
            return None;
        }
        let mut best: Option<(u64, u32)> = None;
        for &(y, c) in row {
            if c.abs() == 1 {
                let cob = self.cob_count[y as usize] as u64;
                if best.map_or(true, |(k, a)| (cob, y) < (k, a)) {
                    best = Some((cob, y));
                }
            }
        }
        let (cob, a) = best?;
        Some((((row.len() as u64) - 1) * cob.saturating_sub(1), a))
    }

    /// Remove the entry for `y` from rows[x], if present.
    fn remove_entry(&mut self, x: u32, y: u32) -> bool {
        let row = &mut self.rows[x as usize];
        if let Ok(i) = row.binary_search_by_key(&y, |e| e.0) {
            row.remove(i);
            self.cob_count[y as usize] -= 1;
            true
        } else {
            false
        }
    }
}

impl Reduction {
    /// Build the augmented incidence structure for `complex` (with cochain
    /// bases `basis`, as produced by `cells_by_dim`) and reduce it fully.
    pub fn new(complex: &SimplicialComplex, basis: &[Vec<Simplex>]) -> Reduction {
        let dim = complex.dimension();
        debug_assert_eq!(basis.len(), dim + 1);

        let mut levels = Vec::with_capacity(dim + 2);
        levels.push((0u32, 1u32)); // the empty cell
        let mut offset = 1u32;
        for cells in basis {
            levels.push((offset, cells.len() as u32));
            offset += cells.len() as u32;
        }
        let n_cells = offset as usize;

        let index: Vec<HashMap<&[u32], u32>> = basis
            .iter()
            .map(|cells| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.vertices(), i as u32))
                    .collect()
            })
            .collect();

        let mut boundary: Vec<Vec<(u32, i8)>> = vec![Vec::new(); n_cells];
        for i in 0..levels[1].1 {
            boundary[(levels[1].0 + i) as usize].push((0, 1));
        }
        for k in 1..=dim {
            let (off, _) = levels[k + 1];
            for (i, tau) in basis[k].iter().enumerate() {
                let cell = off + i as u32;
                for j in 0..=k {
                    let face = tau.face(j);
                    let fidx = index[k - 1][face.vertices()];
                    let fcell = levels[k].0 + fidx;
                    let sign = if j % 2 == 0 { 1i8 } else { -1 };
                    boundary[cell as usize].push((fcell, sign));
                }
            }
        }

        let mut r = Reduction {
            levels,
            boundary,
            events: Vec::new(),
            events_by_level: vec![Vec::new(); dim + 2],
            removed_at: vec![CRITICAL; n_cells],
            critical: Vec::new(),
            final_rows: HashMap::new(),
        };
        r.run();
        r
    }

    fn level_of(&self, cell: u32) -> usize {
        self.levels
            .iter()
            .position(|&(off, len)| cell >= off && cell < off + len)
            .expect("cell id in range")
    }

    fn run(&mut self) {
        let n = self.removed_at.len();
        let mut cur = Current {
            rows: self
                .boundary
                .iter()
                .map(|b| {
                    let mut row: Vec<(u32, i64)> =
                        b.iter().map(|&(y, c)| (y, c as i64)).collect();
                    row.sort_unstable_by_key(|e| e.0);
                    row
                })
                .collect(),
            cols: vec![Vec::new(); n],
            cob_count: vec![0u32; n],
            alive: vec![true; n],
        };
        for x in 0..n as u32 {
            for &(y, _) in &cur.rows[x as usize] {
                cur.cols[y as usize].push(x);
                cur.cob_count[y as usize] += 1;
            }
        }

        let mut coreduce: VecDeque<u32> = VecDeque::new();
        let mut collapse: VecDeque<u32> = VecDeque::new();
        let mut gen_heap: std::collections::BinaryHeap<std::cmp::Reverse<(u64, u32)>> =
            std::collections::BinaryHeap::new();
        for cell in 0..n as u32 {
            if cur.rows[cell as usize].len() == 1 {
                coreduce.push_back(cell);
            }
            if cur.cob_count[cell as usize] == 1 {
                collapse.push_back(cell);
            }
            if let Some((score, _)) = cur.pair_score(cell) {
                gen_heap.push(std::cmp::Reverse((score, cell)));
            }
        }

        let mut step = 0u32;
        loop {
            // cheap pairs first: singleton boundary, then singleton coboundary
            let mut pair: Option<(u32, u32)> = None;
            while let Some(b) = coreduce.pop_front() {
                if cur.alive[b as usize] && cur.rows[b as usize].len() == 1 {
                    let (a, lam) = cur.rows[b as usize][0];
                    if lam.abs() == 1 {
                        pair = Some((a, b));
                        break;
                    }
                }
            }
            if pair.is_none() {
                while let Some(a) = collapse.pop_front() {
                    if !cur.alive[a as usize] || cur.cob_count[a as usize] != 1 {
                        continue;
                    }
                    let cof = cur.cofaces(a);
                    debug_assert_eq!(cof.len(), 1);
                    let b = cof[0];
                    if cur.coeff(b, a).abs() == 1 {
                        pair = Some((a, b));
                        break;
                    }
                }
            }
            if pair.is_none() {
                pair = Self::pop_general_pair(&mut cur, &mut gen_heap);
            }
            let Some((a, b)) = pair else { break };
            let lambda = cur.coeff(b, a);
            debug_assert!(lambda.abs() == 1);

            // snapshot transport data
            let row_b: Vec<(u32, i64)> = cur.rows[b as usize]
                .iter()
                .copied()
                .filter(|&(y, _)| y != a)
                .collect();
            let col_a: Vec<(u32, i64)> = cur
                .cofaces(a)
                .into_iter()
                .filter(|&x| x != b)
                .map(|x| (x, cur.coeff(x, a)))
                .collect();

            // kill the pair
            cur.alive[a as usize] = false;
            cur.alive[b as usize] = false;
            self.removed_at[a as usize] = step;
            self.removed_at[b as usize] = step;

            // eliminate a from all other rows: dx -= lambda <dx,a> db
            let full_row_b = cur.rows[b as usize].clone();
            let mut dropped: Vec<u32> = Vec::new();
            for &(x, c) in &col_a {
                let factor = -lambda * c; // lambda^-1 = lambda
                cur.add_multiple(x, factor, &full_row_b, &mut dropped);
                debug_assert_eq!(cur.coeff(x, a), 0);
                if cur.rows[x as usize].len() == 1 {
                    coreduce.push_back(x);
                }
                if let Some((score, _)) = cur.pair_score(x) {
                    gen_heap.push(std::cmp::Reverse((score, x)));
                }
            }
            // drop the b entries one level up
            for x in cur.cofaces(b) {
                if cur.remove_entry(x, b) {
                    if cur.rows[x as usize].len() == 1 {
                        coreduce.push_back(x);
                    }
                    if let Some((score, _)) = cur.pair_score(x) {
                        gen_heap.push(std::cmp::Reverse((score, x)));
                    }
                }
            }
            // entries of the dying rows release their boundary targets
            let dying: Vec<u32> = cur.rows[a as usize]
                .iter()
                .chain(cur.rows[b as usize].iter())
                .map(|&(y, _)| y)
                .collect();
            cur.rows[a as usize].clear();
            cur.rows[b as usize].clear();
            for y in dying {
                cur.cob_count[y as usize] -= 1;
                if cur.alive[y as usize] && cur.cob_count[y as usize] == 1 {
                    dropped.push(y);
                }
            }
            collapse.extend(dropped);

            let blevel = self.level_of(b);
            self.events_by_level[blevel].push(self.events.len() as u32);
            self.events.push(Event {
                a,
                b,
                lambda,
                row_b,
                col_a,
            });
            step += 1;
        }

        self.critical = self
            .levels
            .iter()
            .map(|&(off, len)| {
                (off..off + len)
                    .filter(|&c| cur.alive[c as usize])
                    .collect()
            })
            .collect();
        for level in &self.critical {
            for &c in level {
                self.final_rows.insert(c, cur.rows[c as usize].clone());
            }
        }
    }

    /// When no singleton pair exists: pop a unit-coefficient pair with low
    /// expected fill-in from the lazily maintained candidate heap.
    fn pop_general_pair(
        cur: &mut Current,
        heap: &mut std::collections::BinaryHeap<std::cmp::Reverse<(u64, u32)>>,
    ) -> Option<(u32, u32)> {
        while let Some(std::cmp::Reverse((score, b))) = heap.pop() {
            if !cur.alive[b as usize] {
                continue;
            }
            let Some((fresh, a)) = cur.pair_score(b) else {
                continue;
            };
            if fresh == score {
                return Some((a, b));
            }
            heap.push(std::cmp::Reverse((fresh, b)));
        }
        None
    }

    /// Number of critical cells in cochain degree `k` (so level `k + 1`).
    pub fn critical_count(&self, k: usize) -> usize {
        self.critical.get(k + 1).map_or(0, |c| c.len())
    }

    pub fn critical_cells(&self, k: usize) -> &[u32] {
        self.critical.get(k + 1).map_or(&[], |c| c.as_slice())
    }

    fn degree_len(&self, k: usize) -> usize {
        self.levels.get(k + 1).map_or(0, |&(_, len)| len as usize)
    }

    fn degree_offset(&self, k: usize) -> u32 {
        self.levels[k + 1].0
    }

    /// Coboundary of a degree-`k` cochain (indexed by the degree-`k` basis).
    pub fn coboundary_apply(&self, k: usize, z: &[i64], ring: Ring) -> Vec<i64> {
        debug_assert_eq!(z.len(), self.degree_len(k));
        let out_len = self.degree_len(k + 1);
        let mut out = vec![0i64; out_len];
        if out_len == 0 {
            return out;
        }
        let (off_in, _) = self.levels[k + 1];
        let (off_out, _) = self.levels[k + 2];
        for (i, o) in out.iter_mut().enumerate() {
            let cell = off_out as usize + i;
            let mut acc = 0i64;
            for &(y, c) in &self.boundary[cell] {
                acc += c as i64 * z[(y - off_in) as usize];
            }
            *o = ring.normalize(acc);
        }
        out
    }

    /// Push an original degree-`k` cochain down to the critical cells
    /// (the map dual to the inclusion of the reduced complex).
    pub fn restrict(&self, k: usize, z: &[i64], ring: Ring) -> Vec<i64> {
        debug_assert_eq!(z.len(), self.degree_len(k));
        let level = k + 1;
        if level >= self.critical.len() {
            return Vec::new();
        }
        let off = self.degree_offset(k) as usize;
        let mut w: Vec<i64> = z.iter().map(|&v| ring.normalize(v)).collect();
        if level < self.events_by_level.len() {
            for &ei in &self.events_by_level[level] {
                let ev = &self.events[ei as usize];
                let wb = w[ev.b as usize - off];
                if ring.is_zero(wb) {
                    continue;
                }
                for &(x, c) in &ev.col_a {
                    let idx = x as usize - off;
                    w[idx] = ring.sub(w[idx], ev.lambda * c * wb);
                }
            }
        }
        self.critical[level]
            .iter()
            .map(|&c| w[c as usize - off])
            .collect()
    }

    /// Extend a cochain on the critical degree-`k` cells to an original
    /// cochain (the map dual to the projection onto the reduced complex).
    /// Cocycles lift to cocycles representing the same class.
    pub fn lift(&self, k: usize, vals: &[i64], ring: Ring) -> Vec<i64> {
        let level = k + 1;
        if level >= self.critical.len() {
            debug_assert!(vals.is_empty());
            return Vec::new();
        }
        debug_assert_eq!(vals.len(), self.critical[level].len());
        let off = self.degree_offset(k) as usize;
        let mut beta = vec![0i64; self.degree_len(k)];
        for (&cell, &v) in self.critical[level].iter().zip(vals) {
            beta[cell as usize - off] = ring.normalize(v);
        }
        if level + 1 < self.events_by_level.len() {
            for &ei in self.events_by_level[level + 1].iter().rev() {
                let ev = &self.events[ei as usize];
                let mut acc = 0i64;
                for &(y, c) in &ev.row_b {
                    acc = ring.add(acc, c * beta[y as usize - off]);
                }
                beta[ev.a as usize - off] = ring.neg(ev.lambda * acc);
            }
        }
        beta
    }

    /// The cochain homotopy: takes a degree-`k+1` cochain to a degree-`k`
    /// one, with `z - lift(restrict(z)) = d(homotopy(z)) + homotopy(d(z))`
    /// in degrees >= 1 (degree 0 differs by a constant from the
    /// augmentation, which the cohomology layer accounts for).
    pub fn homotopy(&self, k: usize, z: &[i64], ring: Ring) -> Vec<i64> {
        debug_assert_eq!(z.len(), self.degree_len(k + 1));
        let level = k + 1;
        let mut out = vec![0i64; self.degree_len(k)];
        if level + 1 >= self.events_by_level.len() {
            return out;
        }
        let off_hi = self.degree_offset(k + 1) as usize;
        let off_lo = self.degree_offset(k) as usize;
        let evs = &self.events_by_level[level + 1];
        let mut w: Vec<i64> = z.iter().map(|&v| ring.normalize(v)).collect();
        let mut t = vec![0i64; evs.len()];
        for (pos, &ei) in evs.iter().enumerate() {
            let ev = &self.events[ei as usize];
            let wb = w[ev.b as usize - off_hi];
            t[pos] = ring.mul(ev.lambda, wb);
            if ring.is_zero(wb) {
                continue;
            }
            for &(x, c) in &ev.col_a {
                let idx = x as usize - off_hi;
                w[idx] = ring.sub(w[idx], ev.lambda * c * wb);
            }
        }
        for (pos, &ei) in evs.iter().enumerate().rev() {
            let ev = &self.events[ei as usize];
            let mut acc = 0i64;
            for &(y, c) in &ev.row_b {
                acc = ring.add(acc, c * out[y as usize - off_lo]);
            }
            let idx = ev.a as usize - off_lo;
            out[idx] = ring.add(ring.neg(ev.lambda * acc), t[pos]);
        }
        out
    }

    /// Coboundary matrix of the reduced complex in degree `k`:
    /// rows are critical `(k+1)`-cells, columns critical `k`-cells.
    pub fn morse_coboundary(&self, k: usize) -> IntMatrix {
        let rows = self.critical_count(k + 1);
        let cols = self.critical_count(k);
        let mut m = IntMatrix::zero(rows, cols);
        if rows == 0 || cols == 0 {
            return m;
        }
        let col_index: HashMap<u32, usize> = self.critical[k + 1]
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        for (r, &cell) in self.critical[k + 2].iter().enumerate() {
            for &(y, c) in &self.final_rows[&cell] {
                if let Some(&col) = col_index.get(&y) {
                    m.set(r, col, num_bigint::BigInt::from(c));
                }
            }
        }
        m
    }

    /// Total number of surviving cells (all levels).
    pub fn total_critical(&self) -> usize {
        self.critical.iter().map(|c| c.len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn fixture(name: &str) -> SimplicialComplex {
        match name {
            "s2" => SimplicialComplex::sphere(2),
            "rp2" => SimplicialComplex::rp_space(2).unwrap(),
            "torus" => {
                let s1 = SimplicialComplex::sphere(1);
                SimplicialComplex::product(&s1, &s1)
            }
            _ => unreachable!(),
        }
    }

    fn random_cochain(len: usize, ring: Ring, rng: &mut impl Rng) -> Vec<i64> {
        (0..len)
            .map(|_| match ring {
                Ring::Z => rng.gen_range(-5i64..=5),
                Ring::Mod(m) => rng.gen_range(0..m as i64),
            })
            .collect()
    }

    #[test]
    fn reduction_shrinks_fixtures() {
        // expected reduced Betti patterns: torus 0,2,1; rp2 mod 2 pattern 0,1,1
        let k = fixture("torus");
        let basis = k.cells_by_dim();
        let red = Reduction::new(&k, &basis);
        assert_eq!(red.critical_count(0), 0); // connected: reduced H^0 = 0
        assert!(red.total_critical() <= 8, "left {}", red.total_critical());

        let k = fixture("s2");
        let basis = k.cells_by_dim();
        let red = Reduction::new(&k, &basis);
        assert!(red.total_critical() <= 2, "left {}", red.total_critical());
    }

    #[test]
    fn morse_differential_squares_to_zero() {
        for name in ["s2", "rp2", "torus"] {
            let k = fixture(name);
            let basis = k.cells_by_dim();
            let red = Reduction::new(&k, &basis);
            for deg in 0..k.dimension() {
                let d1 = red.morse_coboundary(deg);
                let d2 = red.morse_coboundary(deg + 1);
                assert!(d2.mul(&d1).is_zero(), "{name} degree {deg}");
            }
        }
    }

    /// The structure maps satisfy the contraction identities exactly:
    /// restrict . lift = id, and id - lift . restrict = d H + H d in
    /// degrees >= 1 (constant slack from the augmentation in degree 0).
    #[test]
    fn transport_identities() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for name in ["s2", "rp2", "torus"] {
            let k = fixture(name);
            let basis = k.cells_by_dim();
            let red = Reduction::new(&k, &basis);
            for ring in [Ring::Z, Ring::Mod(2), Ring::Mod(4), Ring::Mod(8)] {
                for deg in 0..=k.dimension() {
                    let c = red.critical_count(deg);
                    let alpha = random_cochain(c, ring, &mut rng);
                    let lifted = red.lift(deg, &alpha, ring);
                    let back = red.restrict(deg, &lifted, ring);
                    let alpha_n: Vec<i64> =
                        alpha.iter().map(|&v| ring.normalize(v)).collect();
                    assert_eq!(back, alpha_n, "{name} {ring} deg {deg}: r.l != id");

                    let z = random_cochain(basis[deg].len(), ring, &mut rng);
                    let z_n: Vec<i64> = z.iter().map(|&v| ring.normalize(v)).collect();
                    let lr = red.lift(deg, &red.restrict(deg, &z, ring), ring);
                    let mut rhs = vec![0i64; z.len()];
                    if deg > 0 {
                        let hz = red.homotopy(deg - 1, &z, ring);
                        let dhz = red.coboundary_apply(deg - 1, &hz, ring);
                        for (r, v) in rhs.iter_mut().zip(dhz) {
                            *r = ring.add(*r, v);
                        }
                    }
                    let dz = red.coboundary_apply(deg, &z, ring);
                    let hdz = red.homotopy(deg, &dz, ring);
                    for (r, v) in rhs.iter_mut().zip(hdz) {
                        *r = ring.add(*r, v);
                    }
                    let lhs: Vec<i64> = z_n
                        .iter()
                        .zip(&lr)
                        .map(|(&a, &b)| ring.sub(a, b))
                        .collect();
                    if deg > 0 {
                        assert_eq!(lhs, rhs, "{name} {ring} deg {deg}: homotopy identity");
                    } else {
                        // degree 0: the missing term d(H z) from the empty
                        // cell is a constant cochain
                        let diffs: Vec<i64> = lhs
                            .iter()
                            .zip(&rhs)
                            .map(|(&a, &b)| ring.sub(a, b))
                            .collect();
                        assert!(
                            diffs.windows(2).all(|w| w[0] == w[1]),
                            "{name} {ring} deg 0: non-constant slack"
                        );
                    }
                }
            }
        }
    }

    /// Lifting a cocycle of the reduced complex yields a cocycle.
    #[test]
    fn lift_is_a_chain_map() {
        use num_bigint::BigInt;
        use num_traits::Zero;
        let k = fixture("rp2");
        let basis = k.cells_by_dim();
        let red = Reduction::new(&k, &basis);
        let ring = Ring::Mod(2);
        for deg in 0..=2 {
            let c = red.critical_count(deg);
            let dm = red.morse_coboundary(deg);
            for unit in 0..c {
                let mut alpha = vec![0i64; c];
                alpha[unit] = 1;
                let alpha_big: Vec<BigInt> =
                    alpha.iter().map(|&v| BigInt::from(v)).collect();
                let d_alpha = dm.mul_vec(&alpha_big);
                let is_cocycle = d_alpha.iter().all(|v| (v % BigInt::from(2)).is_zero());
                if !is_cocycle {
                    continue;
                }
                let z = red.lift(deg, &alpha, ring);
                let dz = red.coboundary_apply(deg, &z, ring);
                assert!(dz.iter().all(|&v| ring.is_zero(v)));
            }
        }
    }
}
