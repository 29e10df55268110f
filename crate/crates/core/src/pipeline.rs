//! End-to-end assembly: Γ_q → G^x_q → the (q−1)-regular girth-8 graph, each
//! stage re-certified from scratch, plus the order formulas behind the
//! improvement table.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cage::build_moore_graph;
use crate::cert::{certify, certify_with, CertOptions, CertReport};
use crate::dominating::{check_gq_params, check_s, default_x, measure_s, set_d};
use crate::field::{FieldElement, FieldSpec};
use crate::graph::LabeledGraph;
use crate::vertex::VertexSet;
use crate::{Error, Result};

/// Moore bound for girth 8: `2(1 + (k-1) + (k-1)^2 + (k-1)^3)`.
pub fn moore_bound(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "degree must be at least 2, got {k}"
        )));
    }
    let m = k - 1;
    Ok(2 * (1 + m + m * m + m * m * m))
}

/// Order of G^x_q: `2q(q^2 - 2)`.
pub fn gq_order(q: u64) -> u64 {
    2 * q * (q * q - 2)
}

/// Previously known order of a (q−1)-regular girth-8 graph: `2q(q^2 - q - 1)`.
pub fn old_bound(q: u64) -> u64 {
    2 * q * (q * q - q - 1)
}

/// Order of the reduced graph: `2q(q-1)^2`.
pub fn new_bound(q: u64) -> u64 {
    2 * q * (q - 1) * (q - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub k: u64,
    pub q: u64,
    pub old_bound: u64,
    pub new_bound: u64,
}

/// Degrees `k = q - 1` of the ten tabulated improvements.
pub const TABLE_DEGREES: [u64; 10] = [15, 22, 36, 40, 46, 52, 58, 63, 66, 70];

pub fn bounds_table() -> Vec<BoundsRow> {
    TABLE_DEGREES
        .iter()
        .map(|&k| {
            let q = k + 1;
            BoundsRow {
                k,
                q,
                old_bound: old_bound(q),
                new_bound: new_bound(q),
            }
        })
        .collect()
}

/// Expected certificate values; `None` fields are not checked.
#[derive(Debug, Clone, Default)]
pub struct Expect {
    pub order: Option<usize>,
    pub regular: Option<usize>,
    /// `Some(None)` demands an acyclic graph.
    pub girth: Option<Option<u32>>,
    pub bipartite: Option<bool>,
    pub diameter: Option<u32>,
}

impl Expect {
    /// Every mismatch between `self` and `report`, human readable.
    pub fn mismatches(&self, report: &CertReport) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(n) = self.order {
            if report.order != n {
                out.push(format!("order {} != {n}", report.order));
            }
        }
        if let Some(k) = self.regular {
            if report.regular_degree != Some(k) {
                out.push(format!(
                    "degrees {}..={} are not all {k}",
                    report.min_degree, report.max_degree
                ));
            }
        }
        if let Some(g) = self.girth {
            if report.girth != g {
                out.push(format!(
                    "girth {} != {}",
                    show_girth(report.girth),
                    show_girth(g)
                ));
            }
        }
        if let Some(b) = self.bipartite {
            if report.bipartite != b {
                out.push(format!("bipartite {} != {b}", report.bipartite));
            }
        }
        if let Some(d) = self.diameter {
            if report.diameter != Some(d) {
                out.push(format!("diameter {:?} != {d}", report.diameter));
            }
        }
        out
    }

    pub fn check(&self, stage: &str, report: &CertReport) -> Result<()> {
        let bad = self.mismatches(report);
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Certificate {
                stage: stage.to_string(),
                detail: bad.join("; "),
            })
        }
    }
}

pub fn show_girth(g: Option<u32>) -> String {
    g.map_or_else(|| "inf".to_string(), |g| g.to_string())
}

#[derive(Debug)]
pub struct MooreStage {
    pub field: Arc<FieldSpec>,
    pub graph: LabeledGraph,
    pub cert: CertReport,
}

#[derive(Debug)]
pub struct GqStage {
    pub moore: Arc<MooreStage>,
    pub x: FieldElement,
    pub d: VertexSet,
    pub graph: LabeledGraph,
    pub cert: CertReport,
}

#[derive(Debug)]
pub struct ReducedStage {
    pub gq: Arc<GqStage>,
    pub r: VertexSet,
    pub s: VertexSet,
    pub graph: LabeledGraph,
    pub cert: CertReport,
}

/// Builds and caches stages by `q` and `(q, x)` for the lifetime of the value.
#[derive(Default)]
pub struct Pipeline {
    moore: HashMap<u32, Arc<MooreStage>>,
    gq: HashMap<(u32, u32), Arc<GqStage>>,
}

impl Pipeline {
    pub fn new() -> Pipeline {
        Pipeline::default()
    }

    /// Γ_q, certified bipartite, (q+1)-regular, girth 8, diameter 4, at the Moore bound.
    pub fn moore(&mut self, q: u64) -> Result<Arc<MooreStage>> {
        let field = FieldSpec::new(q)?;
        if let Some(stage) = self.moore.get(&field.q()) {
            return Ok(stage.clone());
        }
        let graph = build_moore_graph(&field)?;
        let cert = certify(graph.graph());
        Expect {
            order: Some(moore_bound(q + 1)? as usize),
            regular: Some(q as usize + 1),
            girth: Some(Some(8)),
            bipartite: Some(true),
            diameter: Some(4),
        }
        .check(&format!("Moore graph q={q}"), &cert)?;
        let stage = Arc::new(MooreStage {
            field: Arc::new(field),
            graph,
            cert,
        });
        self.moore.insert(stage.field.q(), stage.clone());
        Ok(stage)
    }

    /// Resolves an optional user `x` (a field index) to an element, defaulting per field.
    pub fn resolve_x(field: &FieldSpec, x: Option<u64>) -> Result<FieldElement> {
        match x {
            Some(i) => field.element(i).map_err(|_| {
                Error::InvalidParameter(format!("x = {i} is not an element of GF({})", field.q()))
            }),
            None => Ok(default_x(field)),
        }
    }

    /// G^x_q = Γ_q − D, certified q-regular with girth 8 and order 2q(q²−2).
    pub fn gq(&mut self, q: u64, x: Option<u64>) -> Result<Arc<GqStage>> {
        let field = FieldSpec::new(q)?;
        let x = Self::resolve_x(&field, x)?;
        check_gq_params(&field, x)?;
        if let Some(stage) = self.gq.get(&(field.q(), x.index())) {
            return Ok(stage.clone());
        }
        let moore = self.moore(q)?;
        let d = set_d(&moore.graph, &moore.field, x)?;
        if moore.graph.order() - d.len() != gq_order(q) as usize {
            return Err(Error::Certificate {
                stage: "G^x_q".into(),
                detail: format!("|V(Γ_q)| - |D| = {} - {}", moore.graph.order(), d.len()),
            });
        }
        let graph = moore.graph.delete_vertices(&d)?;
        let cert = certify_with(graph.graph(), CertOptions::default());
        Expect {
            order: Some(gq_order(q) as usize),
            regular: Some(q as usize),
            girth: Some(Some(8)),
            ..Expect::default()
        }
        .check(&format!("G^x_q q={q} x={x}"), &cert)?;
        let stage = Arc::new(GqStage {
            moore,
            x,
            d,
            graph,
            cert,
        });
        self.gq.insert((field.q(), x.index()), stage.clone());
        Ok(stage)
    }

    /// G^x_q − S, certified (q−1)-regular with girth 8 and order 2q(q−1)².
    pub fn reduced(&mut self, q: u64, x: Option<u64>) -> Result<ReducedStage> {
        let gq = self.gq(q, x)?;
        let field = &gq.moore.field;
        let m = check_s(&gq.graph, field, measure_s(&gq.graph, field, gq.x)?)?;
        let (r, s) = (m.r, m.s);
        if gq.graph.order() - s.len() != new_bound(q) as usize {
            return Err(Error::Certificate {
                stage: "reduced".into(),
                detail: format!("|V(G^x_q)| - |S| = {} - {}", gq.graph.order(), s.len()),
            });
        }
        let graph = gq.graph.delete_vertices(&s)?;
        let cert = certify_with(graph.graph(), CertOptions::default());
        Expect {
            order: Some(new_bound(q) as usize),
            regular: Some(q as usize - 1),
            girth: Some(Some(8)),
            ..Expect::default()
        }
        .check(&format!("reduced graph q={q} x={}", gq.x), &cert)?;
        Ok(ReducedStage {
            gq,
            r,
            s,
            graph,
            cert,
        })
    }
}

/// One-shot G^x_q without caching.
pub fn build_gq(q: u64, x: Option<u64>) -> Result<LabeledGraph> {
    Ok(Pipeline::new().gq(q, x)?.graph.clone())
}

/// One-shot reduced graph without caching.
pub fn build_reduced(q: u64, x: Option<u64>) -> Result<LabeledGraph> {
    Ok(Pipeline::new().reduced(q, x)?.graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moore_bound_values() {
        assert_eq!(moore_bound(3).unwrap(), 30);
        assert_eq!(moore_bound(2).unwrap(), 8);
        assert_eq!(moore_bound(5).unwrap(), 170);
        assert!(moore_bound(1).is_err());
    }

    #[test]
    fn table_rows() {
        let rows = bounds_table();
        assert_eq!(rows.len(), 10);
        let find = |k| rows.iter().find(|r| r.k == k).unwrap();
        assert_eq!((find(15).old_bound, find(15).new_bound), (7648, 7200));
        assert_eq!((find(22).old_bound, find(22).new_bound), (23230, 22264));
        assert_eq!((find(70).old_bound, find(70).new_bound), (705598, 695800));
    }

    #[test]
    fn small_pipeline() {
        let mut p = Pipeline::new();
        let red = p.reduced(4, None).unwrap();
        assert_eq!(red.gq.graph.order(), 112);
        assert_eq!(red.r.len(), 4);
        assert_eq!(red.s.len(), 40);
        assert_eq!(red.cert.order, 72);
        assert_eq!(red.cert.regular_degree, Some(3));
        assert_eq!(red.cert.girth, Some(8));
        // cached stage is shared
        let again = p.gq(4, None).unwrap();
        assert!(Arc::ptr_eq(&again, &red.gq));
    }

    #[test]
    fn parameter_errors() {
        let mut p = Pipeline::new();
        assert!(matches!(p.gq(3, None), Err(Error::InvalidParameter(_))));
        assert!(matches!(p.gq(4, Some(1)), Err(Error::InvalidParameter(_))));
        assert!(matches!(p.gq(4, Some(4)), Err(Error::InvalidParameter(_))));
        assert!(matches!(p.gq(6, None), Err(Error::Field(_))));
    }

    #[test]
    fn expectation_mismatches_are_listed() {
        let cert = certify(&crate::Graph::cycle(6));
        let e = Expect {
            girth: Some(Some(8)),
            regular: Some(2),
            ..Expect::default()
        };
        assert_eq!(e.mismatches(&cert), vec!["girth 6 != 8".to_string()]);
    }
}
