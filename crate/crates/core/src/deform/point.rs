use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DeformError;
use crate::coxeter::CoxeterMatrix;
use crate::exact::rational::serde_q;
use crate::exact::{elementary_symmetric_all, Rational};

/// Eigenvalue parameters `t_{ij1..ijm}` for every finite edge `i < j`.
///
/// The reversed edge is implied: `t_{ji,k} = 1 / t_{ij,-k}` with indices
/// taken mod `m`, where index `m` stands for `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterPoint {
    entries: BTreeMap<(usize, usize), Vec<Rational>>,
}

/// Edge polynomial coefficients `e^{(1..m)}_{ij}` for every finite edge
/// `i < j`. The reversed edge reads `e^{(k)}_{ji} = e^{(m-k)}_{ij} /
/// e^{(m)}_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricPoint {
    entries: BTreeMap<(usize, usize), Vec<Rational>>,
}

fn check_edges(
    m: &CoxeterMatrix,
    entries: &BTreeMap<(usize, usize), Vec<Rational>>,
) -> Result<(), DeformError> {
    for &(i, j) in entries.keys() {
        if i >= j || j >= m.rank() || m.m(i, j).is_none() {
            return Err(DeformError::UnexpectedEdge(i, j));
        }
    }
    for (i, j, order) in m.finite_edges() {
        match entries.get(&(i, j)) {
            None => return Err(DeformError::MissingEdge(i, j)),
            Some(v) if v.len() != order as usize => {
                return Err(DeformError::WrongArity {
                    edge: (i, j),
                    expected: order as usize,
                    found: v.len(),
                })
            }
            _ => {}
        }
    }
    Ok(())
}

impl ParameterPoint {
    pub fn new(
        m: &CoxeterMatrix,
        entries: BTreeMap<(usize, usize), Vec<Rational>>,
    ) -> Result<Self, DeformError> {
        check_edges(m, &entries)?;
        if let Some((&e, _)) = entries.iter().find(|(_, v)| v.iter().any(Zero::is_zero)) {
            return Err(DeformError::ZeroParameter(e.0, e.1));
        }
        Ok(ParameterPoint { entries })
    }

    /// The unit point `t ≡ 1`.
    pub fn ones(m: &CoxeterMatrix) -> Self {
        let entries = m
            .finite_edges()
            .into_iter()
            .map(|(i, j, k)| ((i, j), vec![Rational::one(); k as usize]))
            .collect();
        ParameterPoint { entries }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.entries
    }

    /// `t_{ij1..ijm}` for `i < j`.
    pub fn edge(&self, i: usize, j: usize) -> Option<&[Rational]> {
        self.entries.get(&(i, j)).map(Vec::as_slice)
    }

    /// `t_{ijk}` in either orientation; `k` is read mod `m`.
    pub fn t(&self, i: usize, j: usize, k: i64) -> Option<Rational> {
        let (lo, hi) = (i.min(j), i.max(j));
        let v = self.entries.get(&(lo, hi))?;
        let m = v.len() as i64;
        if i < j {
            let idx = (k - 1).rem_euclid(m) as usize;
            Some(v[idx].clone())
        } else {
            let idx = (-k - 1).rem_euclid(m) as usize;
            Some(v[idx].recip())
        }
    }

    /// All `t_{ijk}` for the ordered pair, `k = 1..=m`.
    pub fn oriented(&self, i: usize, j: usize) -> Option<Vec<Rational>> {
        let m = self.entries.get(&(i.min(j), i.max(j)))?.len() as i64;
        (1..=m).map(|k| self.t(i, j, k)).collect()
    }

    pub fn set_edge(&mut self, i: usize, j: usize, values: Vec<Rational>) {
        assert!(i < j);
        let slot = self.entries.get_mut(&(i, j)).expect("edge present");
        assert_eq!(slot.len(), values.len());
        *slot = values;
    }

    pub fn to_symmetric(&self) -> SymmetricPoint {
        let entries = self
            .entries
            .iter()
            .map(|(&e, t)| (e, elementary_symmetric_all(t)[1..].to_vec()))
            .collect();
        SymmetricPoint { entries }
    }

    /// Restriction to the vertices `vs` (relabelled `0..vs.len()` in that
    /// order, with orientation adjusted).
    pub fn restrict(&self, vs: &[usize]) -> ParameterPoint {
        let mut entries = BTreeMap::new();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                if let Some(t) = self.oriented(vs[a], vs[b]) {
                    entries.insert((a, b), t);
                }
            }
        }
        ParameterPoint { entries }
    }
}

impl SymmetricPoint {
    pub fn new(
        m: &CoxeterMatrix,
        entries: BTreeMap<(usize, usize), Vec<Rational>>,
    ) -> Result<Self, DeformError> {
        check_edges(m, &entries)?;
        if let Some((&e, _)) = entries
            .iter()
            .find(|(_, v)| v.last().is_none_or(Zero::is_zero))
        {
            return Err(DeformError::ZeroParameter(e.0, e.1));
        }
        Ok(SymmetricPoint { entries })
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.entries
    }

    /// `[e^{(1)}, ..., e^{(m)}]` for the ordered pair.
    pub fn oriented(&self, i: usize, j: usize) -> Option<Vec<Rational>> {
        let v = self.entries.get(&(i.min(j), i.max(j)))?;
        if i < j {
            return Some(v.clone());
        }
        let m = v.len();
        let top = &v[m - 1];
        Some(
            (1..=m)
                .map(|k| {
                    if k == m {
                        top.recip()
                    } else {
                        &v[m - k - 1] / top
                    }
                })
                .collect(),
        )
    }

    /// `e^{(k)}_{ij}`, with `e^{(0)} = 1`.
    pub fn e(&self, i: usize, j: usize, k: usize) -> Option<Rational> {
        if k == 0 {
            return Some(Rational::one());
        }
        self.oriented(i, j)?.get(k - 1).cloned()
    }

    pub fn restrict(&self, vs: &[usize]) -> SymmetricPoint {
        let mut entries = BTreeMap::new();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                if let Some(e) = self.oriented(vs[a], vs[b]) {
                    entries.insert((a, b), e);
                }
            }
        }
        SymmetricPoint { entries }
    }

    /// Whether the chart is fixed by swapping each edge's orientation.
    pub fn is_orientation_invariant(&self) -> bool {
        self.entries
            .iter()
            .all(|(&(i, j), v)| self.oriented(j, i).as_ref() == Some(v))
    }
}

/// Torus rescaling `z_ij = ζ_i / ζ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZElement {
    pub zeta: Vec<Rational>,
}

impl ZElement {
    pub fn new(zeta: Vec<Rational>) -> Result<Self, DeformError> {
        if zeta.iter().any(Zero::is_zero) {
            return Err(DeformError::ZeroScale);
        }
        Ok(ZElement { zeta })
    }

    pub fn identity(rank: usize) -> Self {
        ZElement {
            zeta: vec![Rational::one(); rank],
        }
    }

    pub fn z(&self, i: usize, j: usize) -> Rational {
        &self.zeta[i] / &self.zeta[j]
    }

    pub fn inverse(&self) -> Self {
        ZElement {
            zeta: self.zeta.iter().map(Rational::recip).collect(),
        }
    }

    pub fn compose(&self, other: &ZElement) -> Self {
        ZElement {
            zeta: self
                .zeta
                .iter()
                .zip(&other.zeta)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// `t'_{ijk} = z_ij t_{ijk}`.
pub fn apply_z(u: &ParameterPoint, z: &ZElement) -> ParameterPoint {
    let entries = u
        .entries
        .iter()
        .map(|(&(i, j), t)| {
            let s = z.z(i, j);
            ((i, j), t.iter().map(|x| x * &s).collect())
        })
        .collect();
    ParameterPoint { entries }
}

/// One edge in the JSON point format. Vertex indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub edge: [usize; 2],
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub t: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub e: Option<Vec<Rational>>,
}

mod opt_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serde_q::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        serde_q::vec::deserialize(d).map(Some)
    }
}

fn records(entries: &BTreeMap<(usize, usize), Vec<Rational>>, symmetric: bool) -> Vec<EdgeRecord> {
    entries
        .iter()
        .map(|(&(i, j), v)| EdgeRecord {
            edge: [i + 1, j + 1],
            m: v.len() as u32,
            t: (!symmetric).then(|| v.clone()),
            e: symmetric.then(|| v.clone()),
        })
        .collect()
}

fn from_records(
    m: &CoxeterMatrix,
    recs: &[EdgeRecord],
    symmetric: bool,
) -> Result<BTreeMap<(usize, usize), Vec<Rational>>, DeformError> {
    let mut out = BTreeMap::new();
    for r in recs {
        let [a, b] = r.edge;
        if a == 0 || b == 0 {
            return Err(DeformError::UnexpectedEdge(a, b));
        }
        let (i, j) = (a - 1, b - 1);
        if m.rank() <= i.max(j) || m.m(i, j) != Some(r.m) {
            return Err(DeformError::UnexpectedEdge(i, j));
        }
        let values = if symmetric { r.e.clone() } else { r.t.clone() };
        let values = values.ok_or(DeformError::MissingEdge(i, j))?;
        let values = if i < j {
            values
        } else if symmetric {
            SymmetricPoint {
                entries: BTreeMap::from([((j, i), values)]),
            }
            .oriented(i, j)
            .unwrap()
        } else {
            ParameterPoint {
                entries: BTreeMap::from([((j, i), values)]),
            }
            .oriented(i, j)
            .unwrap()
        };
        if out.insert((i.min(j), i.max(j)), values).is_some() {
            return Err(DeformError::DuplicateEdge(i, j));
        }
    }
    Ok(out)
}

impl ParameterPoint {
    pub fn to_records(&self) -> Vec<EdgeRecord> {
        records(&self.entries, false)
    }

    pub fn from_records(m: &CoxeterMatrix, recs: &[EdgeRecord]) -> Result<Self, DeformError> {
        Self::new(m, from_records(m, recs, false)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("serialisable")
    }

    pub fn from_json(m: &CoxeterMatrix, s: &str) -> Result<Self, DeformError> {
        let recs: Vec<EdgeRecord> =
            serde_json::from_str(s).map_err(|e| DeformError::Json(e.to_string()))?;
        Self::from_records(m, &recs)
    }
}

impl SymmetricPoint {
    pub fn to_records(&self) -> Vec<EdgeRecord> {
        records(&self.entries, true)
    }

    pub fn from_records(m: &CoxeterMatrix, recs: &[EdgeRecord]) -> Result<Self, DeformError> {
        Self::new(m, from_records(m, recs, true)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("serialisable")
    }

    pub fn from_json(m: &CoxeterMatrix, s: &str) -> Result<Self, DeformError> {
        let recs: Vec<EdgeRecord> =
            serde_json::from_str(s).map_err(|e| DeformError::Json(e.to_string()))?;
        Self::from_records(m, &recs)
    }
}
