//! The two perfect dominating sets: `D` in Γ_q and `S` in G^x_q.
//!
//! Every set is evaluated against the graph. Closed forms, where they exist,
//! act as oracles and any disagreement is an error.

use crate::field::{FieldElement, FieldSpec};
use crate::graph::LabeledGraph;
use crate::vertex::{Side, Vertex, VertexSet};
use crate::{Error, Result};

fn contract(set: &'static str, detail: String) -> Error {
    Error::Contract { set, detail }
}

fn nonzero(field: &FieldSpec, x: FieldElement) -> Result<()> {
    field.element(x.index() as u64)?;
    if x == FieldElement::ZERO {
        return Err(Error::InvalidParameter("x must be nonzero".into()));
    }
    Ok(())
}

/// Parameter check shared by `P`, `R`, `S` and G^x_q: `q >= 4`, `x` outside `{0, 1}`.
pub fn check_gq_params(field: &FieldSpec, x: FieldElement) -> Result<()> {
    if field.q() < 4 {
        return Err(Error::InvalidParameter(format!(
            "G^x_q needs q >= 4, got q = {}",
            field.q()
        )));
    }
    nonzero(field, x)?;
    if x == FieldElement::ONE {
        return Err(Error::InvalidParameter("x must differ from 0 and 1".into()));
    }
    Ok(())
}

/// `-1` in odd characteristic, the element of index 2 in characteristic 2
/// (`1` when q = 2, the only nonzero choice).
pub fn default_x(field: &FieldSpec) -> FieldElement {
    if !field.characteristic_is_two() {
        field.neg(FieldElement::ONE)
    } else if field.q() > 2 {
        FieldElement::from_index(2)
    } else {
        FieldElement::ONE
    }
}

/// `A = {(ρ,0,c)_1 : c} ∪ {(ρ,ρ,0)_1}`.
pub fn set_a(field: &FieldSpec) -> VertexSet {
    field
        .elements()
        .map(|c| Vertex::rho1(Side::Line, FieldElement::ZERO, c))
        .chain([Vertex::rho2(Side::Line, FieldElement::ZERO)])
        .collect()
}

/// `{(ρ,ρ,ρ)_1} ∪ {(0,0,w)_1 : w}`.
pub fn set_ia_closed(field: &FieldSpec) -> VertexSet {
    let z = FieldElement::ZERO;
    field
        .elements()
        .map(|w| Vertex::affine(Side::Line, z, z, w))
        .chain([Vertex::rho3(Side::Line)])
        .collect()
}

/// Intersection of the distance-2 spheres around the members of `A`, checked
/// against [`set_ia_closed`].
pub fn set_ia(moore: &LabeledGraph, field: &FieldSpec) -> Result<VertexSet> {
    let mut acc: Option<VertexSet> = None;
    for a in &set_a(field) {
        let sphere = moore.neighborhood(&VertexSet::singleton(*a), 2, false)?;
        acc = Some(match acc {
            None => sphere,
            Some(prev) => prev.intersection(&sphere),
        });
    }
    let derived = acc.unwrap_or_default();
    let closed = set_ia_closed(field);
    if derived != closed {
        return Err(contract(
            "I_A",
            format!(
                "graph-derived set ({} vertices) differs from the closed form ({} vertices)",
                derived.len(),
                closed.len()
            ),
        ));
    }
    Ok(derived)
}

/// `2(q^2 + 3q + 1)`.
pub fn d_size(q: u64) -> u64 {
    2 * (q * q + 3 * q + 1)
}

/// `D = N[A] ∪ I_A ∪ N^2[(ρ,ρ,x)_1]`, verified perfect dominating in Γ_q.
pub fn set_d(moore: &LabeledGraph, field: &FieldSpec, x: FieldElement) -> Result<VertexSet> {
    nonzero(field, x)?;
    let closed_a = moore.neighborhood(&set_a(field), 1, true)?;
    let ia = set_ia(moore, field)?;
    let ball = moore.neighborhood(&VertexSet::singleton(Vertex::rho2(Side::Line, x)), 2, true)?;
    let d = closed_a.union(&ia).union(&ball);
    let want = d_size(field.q() as u64) as usize;
    if d.len() != want {
        return Err(contract(
            "D",
            format!("has {} vertices, expected {want}", d.len()),
        ));
    }
    let report = moore.is_perfect_dominating(&d)?;
    if let Some((v, hits)) = report.violations.first() {
        return Err(contract(
            "D",
            format!(
                "not perfect dominating: {} violations, first {v} with {hits} neighbors in D",
                report.violations.len()
            ),
        ));
    }
    Ok(d)
}

/// `P = {(ρ,j,k)_0 : j ∉ {0,1,x}}`.
pub fn set_p(field: &FieldSpec, x: FieldElement) -> Result<VertexSet> {
    check_gq_params(field, x)?;
    Ok(field
        .elements()
        .filter(|&j| j != FieldElement::ZERO && j != FieldElement::ONE && j != x)
        .flat_map(|j| {
            field
                .elements()
                .map(move |k| Vertex::rho1(Side::Point, j, k))
        })
        .collect())
}

/// `{(j, (1-j^2)^{-1} j k, k)_1 : (ρ,j,k)_0 ∈ P}`, or `None` when some `j` in `P`
/// has `1 - j^2 = 0`.
pub fn set_r_closed(field: &FieldSpec, x: FieldElement) -> Result<Option<VertexSet>> {
    let p = set_p(field, x)?;
    let mut out = VertexSet::new();
    for v in &p {
        let [_, j, k] = v.coords().map(|c| c.field());
        let (j, k) = (j.expect("P has field j"), k.expect("P has field k"));
        let denom = field.sub(FieldElement::ONE, field.mul(j, j));
        let Ok(inv) = field.inv(denom) else {
            return Ok(None);
        };
        let t = field.mul(inv, field.mul(j, k));
        out.insert(Vertex::affine(Side::Line, j, t, k));
    }
    Ok(Some(out))
}

/// `q(q - 3)`.
pub fn r_size(q: u64) -> u64 {
    q * (q - 3)
}

/// `4q^2 - 6q`.
pub fn s_size(q: u64) -> u64 {
    4 * q * q - 6 * q
}

/// `R = N(P) ∩ N^5((ρ,1,0)_0)` in G^x_q.
///
/// Requires `|R| = q(q-3)`, a unique neighbor in `R` for each member of `P`,
/// and agreement with [`set_r_closed`] where the closed form is defined.
pub fn set_r(gq: &LabeledGraph, field: &FieldSpec, x: FieldElement) -> Result<VertexSet> {
    let p = set_p(field, x)?;
    if let Some(missing) = p.iter().find(|v| !gq.contains(v)) {
        return Err(contract("P", format!("{missing} is not a vertex of G^x_q")));
    }
    let anchor = Vertex::rho1(Side::Point, FieldElement::ONE, FieldElement::ZERO);
    let sphere = gq.neighborhood(&VertexSet::singleton(anchor), 5, false)?;
    let r = gq.neighborhood(&p, 1, false)?.intersection(&sphere);

    for v in &p {
        let hits = gq.neighbors(v)?.intersection(&r).len();
        if hits != 1 {
            let [_, j, k] = v.coords();
            return Err(contract(
                "R",
                format!(
                    "(j, k) = ({}, {}) has {hits} neighbors in R, expected exactly 1",
                    j.field().unwrap(),
                    k.field().unwrap()
                ),
            ));
        }
    }
    let want = r_size(field.q() as u64) as usize;
    if r.len() != want {
        return Err(contract(
            "R",
            format!("has {} vertices, expected {want}", r.len()),
        ));
    }
    if let Some(closed) = set_r_closed(field, x)? {
        if closed != r {
            let witness = closed.difference(&r).iter().next().copied();
            return Err(contract(
                "R",
                format!("closed form disagrees with the graph, e.g. at {witness:?}"),
            ));
        }
    }
    Ok(r)
}

/// Measured sizes around `S` in G^x_q, without enforcing the expected values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMeasurement {
    pub r: VertexSet,
    /// `|N(R)|`, expected `2q(q-2)`.
    pub nr_len: usize,
    pub s: VertexSet,
    /// Vertices outside `S` without exactly one neighbor in `S`.
    pub violations: usize,
}

/// Builds `R` (with its contracts) and `S = ∪_j N[(ρ,1,j)_0] ∪ N[R]`, reporting
/// the sizes and domination violations as found.
pub fn measure_s(gq: &LabeledGraph, field: &FieldSpec, x: FieldElement) -> Result<SMeasurement> {
    let r = set_r(gq, field, x)?;
    let spine: VertexSet = field
        .elements()
        .map(|j| Vertex::rho1(Side::Point, FieldElement::ONE, j))
        .collect();
    let nr = gq.neighborhood(&r, 1, false)?;
    let s = gq.neighborhood(&spine, 1, true)?.union(&r).union(&nr);
    let violations = gq.is_perfect_dominating(&s)?.violations.len();
    Ok(SMeasurement {
        r,
        nr_len: nr.len(),
        s,
        violations,
    })
}

/// `S = ∪_j N[(ρ,1,j)_0] ∪ N[R]`, required to have `4q^2 - 6q` vertices and to be
/// perfect dominating in G^x_q.
pub fn set_s(gq: &LabeledGraph, field: &FieldSpec, x: FieldElement) -> Result<VertexSet> {
    Ok(check_s(gq, field, measure_s(gq, field, x)?)?.s)
}

/// Enforces the size and domination contract on a measurement of `S`.
pub fn check_s(gq: &LabeledGraph, field: &FieldSpec, m: SMeasurement) -> Result<SMeasurement> {
    let q = field.q() as u64;
    let want = s_size(q) as usize;
    if m.s.len() != want {
        return Err(contract(
            "S",
            format!(
                "has {} vertices, expected {want} (|N(R)| = {}, expected {}; {} domination violations)",
                m.s.len(),
                m.nr_len,
                2 * q * (q - 2),
                m.violations
            ),
        ));
    }
    if m.violations > 0 {
        let report = gq.is_perfect_dominating(&m.s)?;
        let (v, hits) = report.violations[0];
        return Err(contract(
            "S",
            format!(
                "not perfect dominating: {} violations, first {v} with {hits} neighbors in S",
                m.violations
            ),
        ));
    }
    Ok(m)
}
