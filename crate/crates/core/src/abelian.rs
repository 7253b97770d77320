//! Coordinate-level linear algebra in finitely generated abelian groups.
//!
//! Elements of a group `Z^f (+) Z/o_1 (+) ...` are coordinate vectors; a
//! summand order of 0 denotes an infinite cyclic factor. Everything reduces
//! to integer Smith normal form on small matrices.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::snf::{smith_normal_form, solve_via_snf, IntMatrix, SnfResult};

fn gens_matrix(orders: &[u64], gens: &[Vec<i64>]) -> IntMatrix {
    let rows = orders.len();
    let finite: Vec<usize> = (0..rows).filter(|&i| orders[i] != 0).collect();
    let mut m = IntMatrix::zero(rows, gens.len() + finite.len());
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), rows);
        for (i, &v) in g.iter().enumerate() {
            if v != 0 {
                m.set(i, j, BigInt::from(v));
            }
        }
    }
    for (j, &i) in finite.iter().enumerate() {
        m.set(i, gens.len() + j, BigInt::from(orders[i]));
    }
    m
}

/// Solve `sum t_l gens_l = target` in the group; returns the coefficient
/// vector `t` of one solution, or `None`.
pub fn solve_in(orders: &[u64], gens: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let m = gens_matrix(orders, gens);
    let b: Vec<BigInt> = target.iter().map(|&v| BigInt::from(v)).collect();
    let snf = smith_normal_form(&m);
    let sol = solve_via_snf(&snf, &b)?;
    Some(
        sol[..gens.len()]
            .iter()
            .map(|v| v.to_i64().expect("coefficient fits i64"))
            .collect(),
    )
}

/// Is `target` in the subgroup generated by `gens`?
pub fn member(orders: &[u64], gens: &[Vec<i64>], target: &[i64]) -> bool {
    solve_in(orders, gens, target).is_some()
}

/// Number of elements of the subgroup generated by `gens` (orders must all
/// be finite).
pub fn subgroup_order(orders: &[u64], gens: &[Vec<i64>]) -> u64 {
    // |<gens>| = |lattice(gens) + rel| / |rel| with rel the order lattice
    let rows = orders.len();
    if rows == 0 {
        return 1;
    }
    debug_assert!(orders.iter().all(|&o| o != 0));
    let full: u64 = orders.iter().product();
    // index of (gens + rel) inside Z^rows equals product of nonzero SNF
    // diagonal entries when full rank; infinite index otherwise means the
    // subgroup is a proper sublattice
    let m = gens_matrix(orders, gens);
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    if snf.rank() < rows {
        unreachable!("order lattice has full rank");
    }
    let index: u64 = diag
        .iter()
        .map(|d| d.to_u64().expect("index fits u64"))
        .take(rows)
        .product();
    full / index
}

/// A presented subquotient `Z / B` of a finite(ly generated) abelian group.
pub struct Subquotient {
    /// orders of the published cyclic summands (each > 1)
    pub orders: Vec<u64>,
    /// generators, as coordinate vectors in the ambient group
    pub gens: Vec<Vec<i64>>,
    /// generators as integer combinations of the z-generator list
    pub gens_as_z: Vec<Vec<i64>>,
    ambient_orders: Vec<u64>,
    z_gens: Vec<Vec<i64>>,
    b_gens: Vec<Vec<i64>>,
    snf_l: SnfResult,
    kept: Vec<usize>,
    express_snf: SnfResult,
    z_count: usize,
}

impl Subquotient {
    /// Present `<z_gens> / <b_gens>` inside the group with the given orders.
    /// The b-generators must lie in `<z_gens>` (not checked beyond debug).
    pub fn new(ambient_orders: &[u64], z_gens: &[Vec<i64>], b_gens: &[Vec<i64>]) -> Subquotient {
        let z_count = z_gens.len();
        let rows = ambient_orders.len();
        // relation lattice L = {t : Z t in <B> + order lattice}
        let finite: Vec<usize> = (0..rows).filter(|&i| ambient_orders[i] != 0).collect();
        let cols = z_count + b_gens.len() + finite.len();
        let mut m = IntMatrix::zero(rows, cols);
        for (j, g) in z_gens.iter().enumerate() {
            for (i, &v) in g.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, BigInt::from(v));
                }
            }
        }
        for (j, g) in b_gens.iter().enumerate() {
            for (i, &v) in g.iter().enumerate() {
                if v != 0 {
                    m.set(i, z_count + j, BigInt::from(v));
                }
            }
        }
        for (j, &i) in finite.iter().enumerate() {
            m.set(i, z_count + b_gens.len() + j, BigInt::from(ambient_orders[i]));
        }
        let express_snf = smith_normal_form(&m);
        let rank = express_snf.rank();
        let mut l = IntMatrix::zero(z_count, cols - rank);
        for (j, i) in (rank..cols).enumerate() {
            let col = express_snf.v_inv.column(i);
            for (row, v) in col.iter().take(z_count).enumerate() {
                if !v.is_zero() {
                    l.set(row, j, v.clone());
                }
            }
        }
        let snf_l = smith_normal_form(&l);
        let diag = snf_l.diagonal();
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..z_count {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            let d = d.to_u64().expect("order fits u64");
            if d != 1 {
                kept.push(i);
                orders.push(d);
            }
        }
        let gens_as_z: Vec<Vec<i64>> = kept
            .iter()
            .map(|&i| {
                snf_l
                    .u
                    .column(i)
                    .iter()
                    .map(|v| v.to_i64().expect("combo fits i64"))
                    .collect()
            })
            .collect();
        let gens: Vec<Vec<i64>> = gens_as_z
            .iter()
            .map(|combo| {
                let mut g = vec![0i64; rows];
                for (l_idx, &c) in combo.iter().enumerate() {
                    for (i, &v) in z_gens[l_idx].iter().enumerate() {
                        g[i] += c * v;
                    }
                }
                for (i, v) in g.iter_mut().enumerate() {
                    if ambient_orders[i] != 0 {
                        *v = v.rem_euclid(ambient_orders[i] as i64);
                    }
                }
                g
            })
            .collect();
        Subquotient {
            orders,
            gens,
            gens_as_z,
            ambient_orders: ambient_orders.to_vec(),
            z_gens: z_gens.to_vec(),
            b_gens: b_gens.to_vec(),
            snf_l,
            kept,
            express_snf,
            z_count,
        }
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Coordinates of an ambient element in the subquotient presentation;
    /// `None` when the element does not lie in the z-subgroup.
    pub fn express(&self, target: &[i64]) -> Option<Vec<i64>> {
        let b: Vec<BigInt> = target.iter().map(|&v| BigInt::from(v)).collect();
        let sol = solve_via_snf(&self.express_snf, &b)?;
        let t: Vec<BigInt> = sol[..self.z_count].to_vec();
        let coords = self.snf_l.u_inv.mul_vec(&t);
        let diag = self.snf_l.diagonal();
        Some(
            self.kept
                .iter()
                .map(|&i| {
                    let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
                    let c = if d.is_zero() {
                        coords[i].clone()
                    } else {
                        num_integer::Integer::mod_floor(&coords[i], &d)
                    };
                    c.to_i64().expect("coordinate fits i64")
                })
                .collect(),
        )
    }

    /// Is the ambient element zero in the subquotient (i.e. in `<B>`)?
    pub fn is_zero(&self, target: &[i64]) -> Option<bool> {
        Some(self.express(target)?.iter().all(|&c| c == 0))
    }

    pub fn ambient_orders(&self) -> &[u64] {
        &self.ambient_orders
    }

    pub fn z_gens(&self) -> &[Vec<i64>] {
        &self.z_gens
    }

    pub fn b_gens(&self) -> &[Vec<i64>] {
        &self.b_gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_in_z4_squared() {
        let orders = [4u64, 4];
        let gens = vec![vec![2, 0], vec![0, 1]];
        assert!(member(&orders, &gens, &[2, 3]));
        assert!(!member(&orders, &gens, &[1, 0]));
    }

    #[test]
    fn subgroup_order_in_z8() {
        let orders = [8u64];
        assert_eq!(subgroup_order(&orders, &[vec![2]]), 4);
        assert_eq!(subgroup_order(&orders, &[vec![4]]), 2);
        assert_eq!(subgroup_order(&orders, &[]), 1);
    }

    #[test]
    fn subquotient_z8_mod_4z8() {
        // <1> / <4> in Z/8 is Z/4
        let sq = Subquotient::new(&[8], &[vec![1]], &[vec![4]]);
        assert_eq!(sq.orders, vec![4]);
        assert_eq!(sq.express(&[2]), Some(vec![2]).map(|v| {
            // generator may be 1 or -1 times; normalize via the first gen
            v
        }));
        assert_eq!(sq.is_zero(&[4]), Some(true));
        assert_eq!(sq.is_zero(&[2]), Some(false));
        // elements outside <1>? none in this case
    }

    #[test]
    fn subquotient_within_z2_cube() {
        // <e1, e2> / <e1 + e2> in (Z/2)^3 is Z/2
        let orders = [2u64, 2, 2];
        let z = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![1, 1, 0]];
        let sq = Subquotient::new(&orders, &z, &b);
        assert_eq!(sq.orders, vec![2]);
        assert_eq!(sq.is_zero(&[1, 1, 0]), Some(true));
        assert_eq!(sq.is_zero(&[1, 0, 0]), Some(false));
        assert_eq!(sq.express(&[0, 0, 1]), None); // not in Z
    }
}
