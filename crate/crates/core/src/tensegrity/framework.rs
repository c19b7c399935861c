//! Realization of the Cayley graph as a 12-node tensegrity in 3-space.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::group::{gen_c1, gen_c2, gen_s, Perm, A4};
use super::stress::{null_vector, StressMatrix};
use crate::error::Result;
use crate::scalar::{dot, norm_f64, sub3, Scalar};
use crate::spectral::{is_stable, StressPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Strut,
    CableC1,
    CableC2,
}

impl EdgeKind {
    pub fn is_cable(self) -> bool {
        self != EdgeKind::Strut
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub i: usize,
    pub j: usize,
    pub kind: EdgeKind,
    pub stress: S,
}

/// Node `k` sits at `rho(g_k) p0` for the `k`-th element of A4 in
/// lexicographic one-line order. Edges are listed struts first, then the
/// `c1` cables, then the `c2` cables, each as `(g, g*gen)`.
#[derive(Clone, Debug)]
pub struct Framework<S> {
    pub point: StressPoint<S>,
    pub p0: [S; 3],
    pub nodes: Vec<[S; 3]>,
    pub edges: Vec<Edge<S>>,
    pub triangles: Vec<[usize; 3]>,
    pub stable: bool,
}

/// Builds the framework at a curve point.
pub fn realize_at<S: Scalar>(group: &A4, omega: &StressMatrix, pt: StressPoint<S>) -> Result<Framework<S>> {
    let p0 = null_vector(omega, &pt)?;
    let nodes: Vec<[S; 3]> = (0..group.len()).map(|k| group.rho_at(k).apply(&p0)).collect();
    let weights = [
        (gen_s(), EdgeKind::Strut, pt.y.clone()),
        (gen_c1(), EdgeKind::CableC1, pt.x.clone()),
        (gen_c2(), EdgeKind::CableC2, S::one() - pt.x.clone()),
    ];
    let mut edges = Vec::with_capacity(36);
    for (gen, kind, w) in weights {
        edges.extend(orbit_edges(group, gen).into_iter().map(|(i, j)| Edge {
            i,
            j,
            kind,
            stress: w.clone(),
        }));
    }
    let stable = is_stable(&pt);
    Ok(Framework {
        point: pt,
        p0,
        nodes,
        edges,
        triangles: group.strut_triangles(),
        stable,
    })
}

/// Realization over the stable branch at `x`.
pub fn realize<S: Scalar>(group: &A4, omega: &StressMatrix, x: S) -> Result<Framework<S>> {
    realize_at(group, omega, StressPoint::stable(x)?)
}

/// The 12 undirected edges `{g, g*gen}` for a generator of order 3.
fn orbit_edges(group: &A4, gen: Perm) -> Vec<(usize, usize)> {
    group
        .elements()
        .iter()
        .map(|g| (group.index_of(g), group.index_of(&(*g * gen))))
        .collect()
}

impl<S: Scalar> Framework<S> {
    pub fn edge_vector(&self, e: &Edge<S>) -> [S; 3] {
        sub3(&self.nodes[e.j], &self.nodes[e.i])
    }

    pub fn edge_length_sq(&self, e: &Edge<S>) -> S {
        let v = self.edge_vector(e);
        dot(&v, &v)
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| self.edge_length_sq(e).to_f64().sqrt()).collect()
    }

    pub fn edges_of(&self, kind: EdgeKind) -> impl Iterator<Item = &Edge<S>> {
        self.edges.iter().filter(move |e| e.kind == kind)
    }

    /// `sum_j w_ij (p_j - p_i)` at every node.
    pub fn equilibrium_forces(&self) -> Vec<[S; 3]> {
        let mut f: Vec<[S; 3]> = vec![std::array::from_fn(|_| S::zero()); self.nodes.len()];
        for e in &self.edges {
            let v = self.edge_vector(e);
            for k in 0..3 {
                let w = e.stress.clone() * v[k].clone();
                f[e.i][k] = f[e.i][k].clone() + w.clone();
                f[e.j][k] = f[e.j][k].clone() - w;
            }
        }
        f
    }

    /// Largest force norm divided by the largest node norm.
    pub fn equilibrium_residual(&self) -> f64 {
        let scale = self.max_node_norm().max(f64::MIN_POSITIVE);
        self.equilibrium_forces()
            .iter()
            .map(norm_f64)
            .fold(0.0, f64::max)
            / scale
    }

    /// Exact equilibrium (rationals) or residual below `tol` (floats).
    pub fn in_equilibrium(&self, tol: f64) -> bool {
        if S::EXACT {
            self.equilibrium_forces()
                .iter()
                .all(|f| f.iter().all(|c| c.is_negligible(0.0)))
        } else {
            self.equilibrium_residual() < tol
        }
    }

    pub fn max_node_norm(&self) -> f64 {
        self.nodes.iter().map(norm_f64).fold(0.0, f64::max)
    }

    /// Number of distinct node positions; coincident nodes are reported,
    /// not merged.
    pub fn distinct_node_count(&self, tol: f64) -> usize {
        let mut reps: Vec<&[S; 3]> = Vec::new();
        for p in &self.nodes {
            let dup = reps
                .iter()
                .any(|q| sub3(p, q).iter().all(|c| c.is_negligible(tol)));
            if !dup {
                reps.push(p);
            }
        }
        reps.len()
    }

    /// True iff all 24 cable edges have the same length.
    pub fn cables_equal_length(&self, tol: f64) -> bool {
        let lens: Vec<S> = self
            .edges
            .iter()
            .filter(|e| e.kind.is_cable())
            .map(|e| self.edge_length_sq(e))
            .collect();
        let scale = lens.iter().map(|l| l.to_f64().abs()).fold(1.0, f64::max);
        lens.windows(2)
            .all(|w| (w[0].clone() - w[1].clone()).is_negligible(tol * scale))
    }

    /// Distinct squared cable lengths within `tol` (relative).
    pub fn cable_length_classes(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for e in self.edges.iter().filter(|e| e.kind.is_cable()) {
            let l = self.edge_length_sq(e).to_f64();
            if !out.iter().any(|m| (m - l).abs() <= tol * m.abs().max(1.0)) {
                out.push(l);
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn to_record(&self) -> GeometryRecord {
        GeometryRecord {
            x: scalar_value(&self.point.x),
            y: scalar_value(&self.point.y),
            normalization: if S::EXACT { "primitive-integer" } else { "unit-norm" }.to_string(),
            stable: self.stable,
            nodes: self
                .nodes
                .iter()
                .map(|p| [p[0].to_f64(), p[1].to_f64(), p[2].to_f64()])
                .collect(),
            nodes_exact: S::EXACT.then(|| {
                self.nodes
                    .iter()
                    .map(|p| [p[0].render(), p[1].render(), p[2].render()])
                    .collect()
            }),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    i: e.i,
                    j: e.j,
                    kind: e.kind,
                    stress: scalar_value(&e.stress),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("geometry serializes")
    }

    /// Wavefront OBJ: `v` lines for the nodes, then `l` lines (1-based)
    /// grouped under `# strut` and `# cable` comments.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# x = {}, y = {}", self.point.x.render(), self.point.y.render());
        for p in &self.nodes {
            let _ = writeln!(out, "v {} {} {}", p[0].to_f64(), p[1].to_f64(), p[2].to_f64());
        }
        let mut last = None;
        for e in &self.edges {
            if last != Some(e.kind) {
                let tag = match e.kind {
                    EdgeKind::Strut => "# strut",
                    EdgeKind::CableC1 => "# cable c1",
                    EdgeKind::CableC2 => "# cable c2",
                };
                let _ = writeln!(out, "{tag}");
                last = Some(e.kind);
            }
            let _ = writeln!(out, "l {} {}", e.i + 1, e.j + 1);
        }
        out
    }
}

fn scalar_value<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        Value::String(v.render())
    } else {
        serde_json::Number::from_f64(v.to_f64()).map_or(Value::Null, Value::Number)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub kind: EdgeKind,
    pub stress: Value,
}

/// JSON form of a framework. Rationals are strings `"p/q"`, floats numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryRecord {
    pub x: Value,
    pub y: Value,
    pub normalization: String,
    pub stable: bool,
    pub nodes: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_exact: Option<Vec<[String; 3]>>,
    pub edges: Vec<EdgeRecord>,
}
