use std::fmt;

use thiserror::Error;

/// Order `m_ij` of the product `s_i s_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("order m({i},{j}) = {m} is below 2")]
    OrderTooSmall { i: usize, j: usize, m: u32 },
    #[error("order table is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("order table has {rows} rows for {rank} vertices")]
    Shape { rows: usize, rank: usize },
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

/// Parse failure in a matrix config file, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

/// A Coxeter matrix over an ordered vertex set. Vertex order fixes ShortLex
/// tie-breaking everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    orders: Vec<Vec<Order>>,
}

impl CoxeterMatrix {
    /// `orders[i][j]` for `i != j`; the diagonal is ignored.
    pub fn new(names: Vec<String>, orders: Vec<Vec<Order>>) -> Result<Self, MatrixError> {
        let r = names.len();
        if orders.len() != r || orders.iter().any(|row| row.len() != r) {
            return Err(MatrixError::Shape {
                rows: orders.len(),
                rank: r,
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(MatrixError::DuplicateVertex(n.clone()));
            }
        }
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                if orders[i][j] != orders[j][i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
                if let Order::Finite(m) = orders[i][j] {
                    if m < 2 {
                        return Err(MatrixError::OrderTooSmall { i, j, m });
                    }
                }
            }
        }
        let mut orders = orders;
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        Ok(CoxeterMatrix { names, orders })
    }

    /// Vertices named `1..=rank`, all pairs commuting except the listed ones.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Order)]) -> Result<Self, MatrixError> {
        let names = (1..=rank).map(|i| i.to_string()).collect();
        let mut orders = vec![vec![Order::Finite(2); rank]; rank];
        for &(i, j, m) in edges {
            if i == 0 || j == 0 || i > rank || j > rank || i == j {
                return Err(MatrixError::UnknownVertex(format!("{i}-{j}")));
            }
            orders[i - 1][j - 1] = m;
            orders[j - 1][i - 1] = m;
        }
        Self::new(names, orders)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `m_ij`; `m_ii` reads as 1.
    pub fn order(&self, i: usize, j: usize) -> Order {
        self.orders[i][j]
    }

    /// Finite `m_ij`, `None` for an infinite edge.
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        self.orders[i][j].finite()
    }

    /// Pairs `i < j` with finite order.
    pub fn finite_edges(&self) -> Vec<(usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                if let Some(m) = self.m(i, j) {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Submatrix on the given vertices, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> CoxeterMatrix {
        let names = vertices.iter().map(|&v| self.names[v].clone()).collect();
        let orders = vertices
            .iter()
            .map(|&a| vertices.iter().map(|&b| self.orders[a][b]).collect())
            .collect();
        CoxeterMatrix::new(names, orders).expect("a submatrix of a valid matrix is valid")
    }

    // --- common types -------------------------------------------------

    pub fn type_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1, Order::Finite(3))).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    /// `B_n` with the order-4 edge between vertices 1 and 2.
    pub fn type_b(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1, Order::Finite(3))).collect();
        edges[0].2 = Order::Finite(4);
        Self::from_edges(n, &edges).unwrap()
    }

    /// `H_3` in the triangle convention `m12 = 2, m23 = 3, m13 = 5`.
    pub fn type_h3() -> Self {
        Self::triangle(2, 3, 5)
    }

    pub fn dihedral(m: u32) -> Self {
        Self::from_edges(2, &[(1, 2, Order::Finite(m))]).unwrap()
    }

    /// Rank 3 with `m12 = p, m23 = q, m13 = r`.
    pub fn triangle(p: u32, q: u32, r: u32) -> Self {
        Self::from_edges(
            3,
            &[
                (1, 2, Order::Finite(p)),
                (2, 3, Order::Finite(q)),
                (1, 3, Order::Finite(r)),
            ],
        )
        .unwrap()
    }

    /// Rank 3 with orders possibly infinite.
    pub fn triangle_orders(p: Order, q: Order, r: Order) -> Self {
        Self::from_edges(3, &[(1, 2, p), (2, 3, q), (1, 3, r)]).unwrap()
    }

    /// Affine `Ã_n` (a cycle of `n + 1` vertices, all orders 3).
    pub fn affine_a(n: usize) -> Self {
        if n == 1 {
            return Self::from_edges(2, &[(1, 2, Order::Infinite)]).unwrap();
        }
        let mut edges: Vec<_> = (1..=n).map(|i| (i, i + 1, Order::Finite(3))).collect();
        edges.push((1, n + 1, Order::Finite(3)));
        Self::from_edges(n + 1, &edges).unwrap()
    }

    // --- config files ---------------------------------------------------

    /// Parse the line-oriented matrix format:
    ///
    /// ```text
    /// # comment
    /// vertices: a, b, c
    /// default = 2
    /// a b 3
    /// b c inf
    /// ```
    ///
    /// Every unordered pair must be listed unless `default = 2` is present.
    pub fn parse_config(text: &str) -> Result<Self, ConfigError> {
        let err = |line: usize, message: String| ConfigError { line, message };
        let mut names: Option<Vec<String>> = None;
        let mut default_two = false;
        let mut entries: Vec<(usize, usize, usize, Order)> = Vec::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if names.is_some() {
                    return Err(err(line_no, "vertices declared twice".into()));
                }
                let list: Vec<String> = rest
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                if list.is_empty() {
                    return Err(err(line_no, "empty vertex list".into()));
                }
                for (i, n) in list.iter().enumerate() {
                    if list[..i].contains(n) {
                        return Err(err(line_no, format!("duplicate vertex {n:?}")));
                    }
                }
                names = Some(list);
                continue;
            }
            if let Some((key, value)) = line.split_once('=') {
                if key.trim() != "default" {
                    return Err(err(line_no, format!("unknown setting {:?}", key.trim())));
                }
                if value.trim() != "2" {
                    return Err(err(line_no, "only `default = 2` is supported".into()));
                }
                if !entries.is_empty() {
                    return Err(err(line_no, "`default` must precede the entries".into()));
                }
                default_two = true;
                continue;
            }
            let Some(names) = names.as_ref() else {
                return Err(err(line_no, "entry before the `vertices:` line".into()));
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(line_no, format!("expected `i j m`, found {line:?}")));
            }
            let lookup = |s: &str| {
                names
                    .iter()
                    .position(|n| n == s)
                    .ok_or_else(|| err(line_no, format!("unknown vertex {s:?}")))
            };
            let i = lookup(fields[0])?;
            let j = lookup(fields[1])?;
            if i == j {
                return Err(err(line_no, "diagonal entries are not allowed".into()));
            }
            let m = match fields[2] {
                "inf" | "∞" => Order::Infinite,
                s => {
                    let m: u32 = s
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid order {s:?}")))?;
                    if m < 2 {
                        return Err(err(line_no, format!("order {m} is below 2")));
                    }
                    Order::Finite(m)
                }
            };
            entries.push((line_no, i, j, m));
        }

        let names =
            names.ok_or_else(|| err(last_line.max(1), "missing `vertices:` line".into()))?;
        let r = names.len();
        let mut orders: Vec<Vec<Option<Order>>> = vec![vec![None; r]; r];
        for (line_no, i, j, m) in entries {
            if orders[i][j].is_some() {
                return Err(err(
                    line_no,
                    format!("pair ({}, {}) listed twice", names[i], names[j]),
                ));
            }
            orders[i][j] = Some(m);
            orders[j][i] = Some(m);
        }
        let mut full = vec![vec![Order::Finite(1); r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                full[i][j] = match orders[i][j] {
                    Some(m) => m,
                    None if default_two => Order::Finite(2),
                    None => {
                        return Err(err(
                            last_line.max(1),
                            format!(
                                "pair ({}, {}) missing and no `default = 2`",
                                names[i.min(j)],
                                names[i.max(j)]
                            ),
                        ))
                    }
                };
            }
        }
        CoxeterMatrix::new(names, full).map_err(|e| err(last_line.max(1), e.to_string()))
    }

    /// Render in the config format, listing every pair explicitly.
    pub fn to_config(&self) -> String {
        let mut s = format!("vertices: {}\n", self.names.join(", "));
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                s.push_str(&format!(
                    "{} {} {}\n",
                    self.names[i], self.names[j], self.orders[i][j]
                ));
            }
        }
        s
    }
}
