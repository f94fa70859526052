//! The `latpoly/1` JSON polytope format and JSON renderings of reports.
//!
//! Integers below `2^53` in magnitude are written as JSON numbers, larger
//! ones as decimal strings; readers accept both, plus `"p/q"` strings where a
//! rational is allowed. Rationals in reports are always `"p/q"`.

use std::path::Path;

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::cayley::{CayleyDecomposition, LocalsplitReport};
use crate::invariants::{CayleySummary, InvariantReport};
use crate::polytope::{Facet, HPolytope, LatticePolytope, VPolytope};
use crate::ratlin::{self, IntVector, RatVector};
use crate::{Error, Int, Rat, Result};

pub const FORMAT: &str = "latpoly/1";
pub const REPORT_FORMAT: &str = "latpoly-report/1";

const SAFE: i64 = 1 << 53;

pub fn int_to_json(x: &Int) -> Value {
    if x.abs() < Int::from(SAFE) {
        let v: i64 = x.try_into().expect("magnitude below 2^53");
        Value::from(v)
    } else {
        Value::String(x.to_string())
    }
}

pub fn ints_to_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

/// Always `"p/q"`, also for integers.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn parse_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Int::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Int::from(u))
            } else {
                Err(format_err(format!("expected an integer, found {n}")))
            }
        }
        Value::String(s) => s.trim().parse::<Int>().map_err(|_| format_err(format!("expected an integer, found {s:?}"))),
        other => Err(format_err(format!("expected an integer, found {other}"))),
    }
}

pub fn parse_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) if s.contains('/') => {
            let (p, q) = s.split_once('/').expect("contains a slash");
            let p = p.trim().parse::<Int>().map_err(|_| format_err(format!("bad rational {s:?}")))?;
            let q = q.trim().parse::<Int>().map_err(|_| format_err(format!("bad rational {s:?}")))?;
            if q.is_zero() {
                return Err(format_err(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        other => parse_int(other).map(Rat::from_integer),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| format_err(format!("{what} must be an array")))
}

fn rat_vector(v: &Value, dim: usize, what: &str) -> Result<RatVector> {
    let items = array(v, what)?;
    if items.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: items.len() });
    }
    items.iter().map(parse_rat).collect()
}

fn int_vector(v: &Value, dim: usize, what: &str) -> Result<IntVector> {
    let items = array(v, what)?;
    if items.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: items.len() });
    }
    items.iter().map(parse_int).collect()
}

/// Contents of a polytope file before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub dim: usize,
    pub hrep: Option<HPolytope>,
    pub vrep: Option<VPolytope>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
        let obj = root.as_object().ok_or_else(|| format_err("top level must be an object"))?;
        match obj.get("format").and_then(Value::as_str) {
            Some(FORMAT) => {}
            Some(other) => return Err(format_err(format!("unsupported format {other:?}"))),
            None => return Err(format_err("missing format tag")),
        }
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| format_err("dim must be a nonnegative integer"))? as usize;
        let hrep = match obj.get("hrep") {
            None | Some(Value::Null) => None,
            Some(h) => {
                let normals = array(h.get("normals").unwrap_or(&Value::Null), "hrep.normals")?;
                let offsets = array(h.get("offsets").unwrap_or(&Value::Null), "hrep.offsets")?;
                if normals.len() != offsets.len() {
                    return Err(format_err("hrep.normals and hrep.offsets differ in length"));
                }
                let facets = normals
                    .iter()
                    .zip(offsets)
                    .map(|(n, a)| Facet::new(int_vector(n, dim, "normal")?, parse_rat(a)?))
                    .collect::<Result<Vec<_>>>()?;
                Some(HPolytope::new(dim, facets)?)
            }
        };
        let vrep = match obj.get("vrep") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let verts = array(v.get("vertices").unwrap_or(&Value::Null), "vrep.vertices")?;
                let pts = verts.iter().map(|p| rat_vector(p, dim, "vertex")).collect::<Result<Vec<_>>>()?;
                Some(VPolytope::new(dim, pts)?)
            }
        };
        if hrep.is_none() && vrep.is_none() {
            return Err(format_err("file has neither hrep nor vrep"));
        }
        Ok(PolytopeFile { dim, hrep, vrep })
    }

    /// A full-dimensional lattice polytope; both presentations must agree.
    pub fn to_lattice(&self) -> Result<LatticePolytope> {
        let from_v = self.vrep.as_ref().map(LatticePolytope::from_v).transpose()?;
        let from_h = self.hrep.as_ref().map(LatticePolytope::from_h).transpose()?;
        match (from_h, from_v) {
            (Some(h), Some(v)) if h != v => Err(format_err("hrep and vrep describe different polytopes")),
            (Some(p), _) | (None, Some(p)) => Ok(p),
            (None, None) => unreachable!("parse requires a presentation"),
        }
    }

    /// A lattice polytope of any dimension, as its vertices.
    pub fn to_vpolytope(&self) -> Result<VPolytope> {
        let v = match (&self.vrep, &self.hrep) {
            (Some(v), _) => v.clone(),
            (None, Some(h)) => h.vrep()?,
            (None, None) => unreachable!("parse requires a presentation"),
        };
        if let Some(bad) = v.vertices().iter().find(|p| ratlin::to_int_vec(p).is_none()) {
            return Err(Error::NotLattice(format!("{bad:?}")));
        }
        if let (Some(h), Some(_)) = (&self.hrep, &self.vrep) {
            if h.vrep()? != v {
                return Err(format_err("hrep and vrep describe different polytopes"));
            }
        }
        Ok(v)
    }
}

fn offset_to_json(r: &Rat) -> Value {
    if r.is_integer() {
        int_to_json(&r.to_integer())
    } else {
        Value::String(rat_to_string(r))
    }
}

fn hrep_json(h: &HPolytope) -> Value {
    json!({
        "normals": h.facets().iter().map(|f| ints_to_json(&f.normal)).collect::<Vec<_>>(),
        "offsets": h.facets().iter().map(|f| offset_to_json(&f.offset)).collect::<Vec<_>>(),
    })
}

fn vertices_json(v: &VPolytope) -> Value {
    let rows: Vec<Value> = v
        .vertices()
        .iter()
        .map(|p| match ratlin::to_int_vec(p) {
            Some(iv) => ints_to_json(&iv),
            None => Value::Array(p.iter().map(offset_to_json).collect()),
        })
        .collect();
    json!({ "vertices": rows })
}

/// Both presentations of a lattice polytope.
pub fn polytope_json(p: &LatticePolytope) -> Value {
    json!({
        "format": FORMAT,
        "dim": p.dim(),
        "hrep": hrep_json(p.hrep()),
        "vrep": vertices_json(&p.vrep()),
    })
}

/// Vertex presentation only; used for summands of any dimension.
pub fn vpolytope_json(v: &VPolytope) -> Value {
    json!({ "format": FORMAT, "dim": v.dim(), "vrep": vertices_json(v) })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<PolytopeFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    PolytopeFile::parse(&text)
}

pub fn read_lattice(path: &Path) -> Result<LatticePolytope> {
    read_file(path)?.to_lattice()
}

pub fn read_vpolytope(path: &Path) -> Result<VPolytope> {
    read_file(path)?.to_vpolytope()
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_pretty(v)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn opt<T>(x: &Option<T>, f: impl Fn(&T) -> Value) -> Value {
    x.as_ref().map_or(Value::Null, f)
}

pub fn report_json(r: &InvariantReport) -> Value {
    json!({
        "dim": r.dim,
        "vertex_count": r.vertex_count,
        "lattice_point_count": r.lattice_point_count,
        "smooth": r.smooth,
        "smooth_witness": opt(&r.smooth_witness, |w| ints_to_json(w)),
        "codegree": r.codegree,
        "degree": r.degree,
        "qcodegree": rat_to_string(&r.qcodegree),
        "nef_value": opt(&r.nef_value, |t| Value::String(rat_to_string(t))),
        "spanned": opt(&r.spanned, |&b| Value::Bool(b)),
        "q_normal": r.q_normal,
        "condition1": r.condition1,
        "cayley": opt(&r.cayley, |c| json!({ "k": c.k, "s": c.s, "strict": c.strict })),
        "predicted_defect": opt(&r.predicted_defect, |&d| Value::from(d)),
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| format_err(format!("report lacks {key:?}")))
}

fn as_u64(v: &Value, key: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| format_err(format!("{key} must be a nonnegative integer")))
}

fn as_bool(v: &Value, key: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| format_err(format!("{key} must be a boolean")))
}

fn nullable<T>(v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<Option<T>> {
    if v.is_null() {
        Ok(None)
    } else {
        f(v).map(Some)
    }
}

/// Inverse of [`report_json`].
pub fn report_from_json(v: &Value) -> Result<InvariantReport> {
    let o = v.as_object().ok_or_else(|| format_err("report must be an object"))?;
    let dim = as_u64(field(o, "dim")?, "dim")? as usize;
    Ok(InvariantReport {
        dim,
        vertex_count: as_u64(field(o, "vertex_count")?, "vertex_count")? as usize,
        lattice_point_count: as_u64(field(o, "lattice_point_count")?, "lattice_point_count")? as usize,
        smooth: as_bool(field(o, "smooth")?, "smooth")?,
        smooth_witness: nullable(field(o, "smooth_witness")?, |w| int_vector(w, dim, "smooth_witness"))?,
        codegree: as_u64(field(o, "codegree")?, "codegree")?,
        degree: as_u64(field(o, "degree")?, "degree")?,
        qcodegree: parse_rat(field(o, "qcodegree")?)?,
        nef_value: nullable(field(o, "nef_value")?, parse_rat)?,
        spanned: nullable(field(o, "spanned")?, |b| as_bool(b, "spanned"))?,
        q_normal: as_bool(field(o, "q_normal")?, "q_normal")?,
        condition1: as_bool(field(o, "condition1")?, "condition1")?,
        cayley: nullable(field(o, "cayley")?, |c| {
            let c = c.as_object().ok_or_else(|| format_err("cayley must be an object"))?;
            Ok(CayleySummary {
                k: as_u64(field(c, "k")?, "k")? as usize,
                s: as_u64(field(c, "s")?, "s")?,
                strict: as_bool(field(c, "strict")?, "strict")?,
            })
        })?,
        predicted_defect: nullable(field(o, "predicted_defect")?, |d| {
            d.as_i64().ok_or_else(|| format_err("predicted_defect must be an integer"))
        })?,
    })
}

pub fn decomposition_json(d: &CayleyDecomposition) -> Value {
    json!({
        "k": d.k,
        "s": d.s,
        "strict": d.strict,
        "projection": d.projection.to_rows().iter().map(|r| ints_to_json(r)).collect::<Vec<_>>(),
        "translation": ints_to_json(&d.translation),
        "fiber": d.fiber.to_rows().iter().map(|r| ints_to_json(r)).collect::<Vec<_>>(),
        "summands": d.summands.iter().map(|s| vertices_json(s)["vertices"].clone()).collect::<Vec<_>>(),
    })
}

pub fn localsplit_json(r: &LocalsplitReport) -> Value {
    json!({
        "k": r.k,
        "s": r.s,
        "summand_dims": r.summand_dims,
        "hypothesis": r.hypothesis,
        "smooth": r.smooth,
        "smooth_witness": opt(&r.witness, |w| ints_to_json(w)),
        "summands_smooth": r.summands_smooth,
        "applicable": r.applicable,
        "expected": rat_to_string(&r.expected),
        "computed_qcodegree": opt(&r.computed_qcodegree, |q| Value::String(rat_to_string(q))),
        "computed_nef_value": opt(&r.computed_nef_value, |t| Value::String(rat_to_string(t))),
        "verdict": r.verdict,
    })
}
