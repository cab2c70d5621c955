use serde::{Deserialize, Serialize};

use super::matrix::{CoxeterMatrix, Order};
use super::CoxeterError;

/// Whether the Coxeter group is finite, by recognising each connected
/// component of the diagram as one of `A_n, B_n, D_n, E_6..8, F_4, H_3, H_4,
/// I_2(m)`.
pub fn is_finite(m: &CoxeterMatrix) -> bool {
    components(m).iter().all(|c| component_is_finite(m, c))
}

/// Connected components of the diagram (edges are pairs with `m_ij != 2`).
pub fn components(m: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let r = m.rank();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for u in 0..r {
                if !seen[u] && u != v && m.order(u, v) != Order::Finite(2) {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn component_is_finite(m: &CoxeterMatrix, comp: &[usize]) -> bool {
    let n = comp.len();
    let mut edges = Vec::new();
    for (a, &u) in comp.iter().enumerate() {
        for &v in &comp[a + 1..] {
            match m.order(u, v) {
                Order::Infinite => return false,
                Order::Finite(2) => {}
                Order::Finite(k) => edges.push((u, v, k)),
            }
        }
    }
    if n <= 2 {
        return true;
    }
    if edges.len() != n - 1 {
        return false; // contains a cycle
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();

    if !branch.is_empty() {
        if branch.len() > 1 || degree(branch[0]) > 3 || !heavy.is_empty() {
            return false;
        }
        // arms measured in vertices, counting the branch point
        let c = branch[0];
        let arms: Vec<u32> = edges
            .iter()
            .filter_map(|e| {
                if e.0 == c {
                    Some(e.1)
                } else if e.1 == c {
                    Some(e.0)
                } else {
                    None
                }
            })
            .map(|first| arm_length(&edges, c, first) + 1)
            .collect();
        let (p, q, r) = (arms[0], arms[1], arms[2]);
        return q * r + p * r + p * q > p * q * r;
    }

    match heavy.as_slice() {
        [] => true,
        [(u, v, k)] => {
            let at_end = degree(*u) == 1 || degree(*v) == 1;
            match k {
                4 => at_end || n == 4,
                5 => at_end && n <= 4,
                _ => false,
            }
        }
        _ => false,
    }
}

fn arm_length(edges: &[(usize, usize, u32)], from: usize, first: usize) -> u32 {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let next = edges.iter().find_map(|e| {
            if e.0 == cur && e.1 != prev {
                Some(e.1)
            } else if e.1 == cur && e.0 != prev {
                Some(e.0)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Shape of a rank-3 parabolic subgroup after sorting its orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriangleType {
    Infinite,
    /// Orders `(2, 2, n)`: `I_2(n) x A_1`.
    Dihedral(u32),
    E233,
    E234,
    E235,
}

impl TriangleType {
    pub fn from_orders(orders: [Order; 3]) -> Self {
        let mut fin = Vec::with_capacity(3);
        for o in orders {
            match o {
                Order::Finite(k) => fin.push(k),
                Order::Infinite => return TriangleType::Infinite,
            }
        }
        fin.sort_unstable();
        match (fin[0], fin[1], fin[2]) {
            (2, 2, n) => TriangleType::Dihedral(n),
            (2, 3, 3) => TriangleType::E233,
            (2, 3, 4) => TriangleType::E234,
            (2, 3, 5) => TriangleType::E235,
            _ => TriangleType::Infinite,
        }
    }

    /// Sorted orders `(p, q, r)` of a finite shape.
    pub fn orders(self) -> Option<(u32, u32, u32)> {
        match self {
            TriangleType::Infinite => None,
            TriangleType::Dihedral(n) => Some((2, 2, n)),
            TriangleType::E233 => Some((2, 3, 3)),
            TriangleType::E234 => Some((2, 3, 4)),
            TriangleType::E235 => Some((2, 3, 5)),
        }
    }

    pub fn is_finite(self) -> bool {
        self != TriangleType::Infinite
    }

    /// Short tag such as `"225"` or `"235"`.
    pub fn tag(self) -> String {
        match self.orders() {
            Some((p, q, r)) => format!("{p}{q}{r}"),
            None => "inf".into(),
        }
    }
}

fn check_triangle(m: &CoxeterMatrix, delta: [usize; 3]) -> Result<(), CoxeterError> {
    let [i, j, k] = delta;
    if let Some(&bad) = delta.iter().find(|&&v| v >= m.rank()) {
        return Err(CoxeterError::UnknownVertex(bad));
    }
    if i == j || j == k || i == k {
        return Err(CoxeterError::RepeatedVertex);
    }
    Ok(())
}

pub fn triangle_type(m: &CoxeterMatrix, delta: [usize; 3]) -> Result<TriangleType, CoxeterError> {
    check_triangle(m, delta)?;
    let [i, j, k] = delta;
    Ok(TriangleType::from_orders([
        m.order(i, j),
        m.order(j, k),
        m.order(i, k),
    ]))
}

/// `|W|` for the rank-3 group with orders `p, q, r`, i.e.
/// `4 / (1/p + 1/q + 1/r - 1)`.
pub fn finite_rank3_order(p: u32, q: u32, r: u32) -> Result<u64, CoxeterError> {
    let (p, q, r) = (p as u64, q as u64, r as u64);
    let num = q * r + p * r + p * q;
    let den = p * q * r;
    if num <= den {
        return Err(CoxeterError::InfiniteTriangle);
    }
    let n = 4 * den;
    let d = num - den;
    debug_assert_eq!(n % d, 0);
    Ok(n / d)
}

/// `[W_Δ : W_{ij}] = |W_Δ| / (2 m_ij)` for an edge of a finite triangle.
pub fn parabolic_index(
    m: &CoxeterMatrix,
    delta: [usize; 3],
    edge: (usize, usize),
) -> Result<u64, CoxeterError> {
    check_triangle(m, delta)?;
    let (a, b) = edge;
    if !delta.contains(&a) || !delta.contains(&b) || a == b {
        return Err(CoxeterError::RepeatedVertex);
    }
    let ty = triangle_type(m, delta)?;
    let (p, q, r) = ty.orders().ok_or(CoxeterError::InfiniteTriangle)?;
    let order = finite_rank3_order(p, q, r)?;
    let mij = m.m(a, b).ok_or(CoxeterError::InfiniteEdge)? as u64;
    Ok(order / (2 * mij))
}

/// All 3-subsets `i < j < k` of the vertex set.
pub fn triangles(m: &CoxeterMatrix) -> Vec<[usize; 3]> {
    let r = m.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                out.push([i, j, k]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_types() {
        assert!(is_finite(&CoxeterMatrix::type_h3()));
        assert!(!is_finite(&CoxeterMatrix::affine_a(2)));
        assert!(is_finite(&CoxeterMatrix::type_a(1)));
        let d4 = CoxeterMatrix::from_edges(
            4,
            &[
                (1, 2, Order::Finite(3)),
                (1, 3, Order::Finite(3)),
                (1, 4, Order::Finite(3)),
            ],
        )
        .unwrap();
        assert!(is_finite(&d4));
        let f4 = CoxeterMatrix::from_edges(
            4,
            &[
                (1, 2, Order::Finite(3)),
                (2, 3, Order::Finite(4)),
                (3, 4, Order::Finite(3)),
            ],
        )
        .unwrap();
        assert!(is_finite(&f4));
        let g2_aff =
            CoxeterMatrix::from_edges(3, &[(1, 2, Order::Finite(6)), (2, 3, Order::Finite(3))])
                .unwrap();
        assert!(!is_finite(&g2_aff));
    }

    #[test]
    fn triangle_shapes() {
        let t = |p, q, r| {
            TriangleType::from_orders([Order::Finite(p), Order::Finite(q), Order::Finite(r)])
        };
        assert_eq!(t(5, 2, 3), TriangleType::E235);
        assert_eq!(t(2, 3, 6), TriangleType::Infinite);
        assert_eq!(t(7, 2, 2), TriangleType::Dihedral(7));
        assert_eq!(finite_rank3_order(2, 3, 5).unwrap(), 120);
        assert_eq!(finite_rank3_order(2, 3, 4).unwrap(), 48);
        assert_eq!(finite_rank3_order(2, 2, 9).unwrap(), 36);
        assert!(finite_rank3_order(2, 3, 6).is_err());
    }

    #[test]
    fn indices() {
        let h3 = CoxeterMatrix::triangle(2, 3, 5);
        assert_eq!(parabolic_index(&h3, [0, 1, 2], (0, 1)).unwrap(), 30);
        let b3 = CoxeterMatrix::triangle(2, 3, 4);
        assert_eq!(parabolic_index(&b3, [0, 1, 2], (1, 2)).unwrap(), 8);
        let i2a1 = CoxeterMatrix::triangle(2, 2, 6);
        assert_eq!(parabolic_index(&i2a1, [0, 1, 2], (0, 2)).unwrap(), 2);
        assert_eq!(
            triangle_type(&h3, [0, 0, 1]),
            Err(CoxeterError::RepeatedVertex)
        );
    }
}
