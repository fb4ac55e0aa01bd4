//! Distance formulas: boolean combinations of atoms `dist(x_i, y_j) <= q`
//! over candidate variables `x_0..x_{c-1}` and witness variables
//! `y_0..y_{d-1}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{input, Error, Result};
use crate::graph::{inf, Dist, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Node {
    /// `dist(x[x], y[y]) <= q`
    Atom { q: Dist, x: usize, y: usize },
    And(Vec<Node>),
    Or(Vec<Node>),
    Not(Box<Node>),
}

impl Node {
    pub fn atom(q: Dist, x: usize, y: usize) -> Node {
        Node::Atom { q, x, y }
    }

    fn fold<T>(&self, leaf: &impl Fn(Dist, usize, usize) -> T, combine: &impl Fn(T, T) -> T, unit: T) -> T
    where
        T: Copy,
    {
        match self {
            Node::Atom { q, x, y } => leaf(*q, *x, *y),
            Node::And(ch) | Node::Or(ch) => ch.iter().fold(unit, |acc, n| combine(acc, n.fold(leaf, combine, unit))),
            Node::Not(inner) => inner.fold(leaf, combine, unit),
        }
    }

    fn eval(&self, dist: &impl Fn(usize, usize) -> Dist) -> bool {
        match self {
            Node::Atom { q, x, y } => dist(*x, *y) <= *q,
            Node::And(ch) => ch.iter().all(|n| n.eval(dist)),
            Node::Or(ch) => ch.iter().any(|n| n.eval(dist)),
            Node::Not(inner) => !inner.eval(dist),
        }
    }

    /// Kleene three-valued evaluation; `None` means undetermined.
    fn eval_partial(&self, dist: &impl Fn(usize, usize) -> Option<Dist>) -> Option<bool> {
        match self {
            Node::Atom { q, x, y } => dist(*x, *y).map(|d| d <= *q),
            Node::And(ch) => {
                let mut unknown = false;
                for n in ch {
                    match n.eval_partial(dist) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                (!unknown).then_some(true)
            }
            Node::Or(ch) => {
                let mut unknown = false;
                for n in ch {
                    match n.eval_partial(dist) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                (!unknown).then_some(false)
            }
            Node::Not(inner) => inner.eval_partial(dist).map(|b| !b),
        }
    }
}

/// A distance formula with `c` candidate and `d` witness variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DistanceFormula {
    c: usize,
    d: usize,
    #[serde(rename = "node")]
    root: Node,
}

impl DistanceFormula {
    /// Validates variable indices against `c` and `d`.
    pub fn new(c: usize, d: usize, root: Node) -> Result<Self> {
        let bad = root.fold(&|_, x, y| x >= c || y >= d, &|a, b| a || b, false);
        if bad {
            return input(format!("atom variable index out of range for c={c}, d={d}"));
        }
        Ok(DistanceFormula { c, d, root })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Largest `q` among the atoms.
    pub fn radius(&self) -> Dist {
        self.root.fold(&|q, _, _| q, &Dist::max, 0)
    }

    /// Number of atoms.
    pub fn size(&self) -> usize {
        self.root.fold(&|_, _, _| 1usize, &|a, b| a + b, 0)
    }

    pub fn is_positive(&self) -> bool {
        fn positive(n: &Node) -> bool {
            match n {
                Node::Atom { .. } => true,
                Node::And(ch) | Node::Or(ch) => ch.iter().all(positive),
                Node::Not(_) => false,
            }
        }
        positive(&self.root)
    }

    /// Same atoms over a longer variable list; the extra variables are unused.
    pub fn with_spurious_variables(&self, c: usize, d: usize) -> Result<Self> {
        if c < self.c || d < self.d {
            return input("spurious extension cannot drop variables");
        }
        DistanceFormula::new(c, d, self.root.clone())
    }

    /// Evaluates against capped distances `dist(i, j)` between `x_i` and
    /// `y_j`. The caller guarantees the cap is at least the radius.
    pub(crate) fn eval_with(&self, dist: impl Fn(usize, usize) -> Dist) -> bool {
        self.root.eval(&dist)
    }

    /// Three-valued evaluation with some distances unknown.
    pub(crate) fn eval_partial(&self, dist: impl Fn(usize, usize) -> Option<Dist>) -> Option<bool> {
        self.root.eval_partial(&dist)
    }

    /// Evaluates the formula on concrete tuples of `g`.
    pub fn holds(&self, g: &Graph, xs: &[Vertex], ys: &[Vertex]) -> Result<bool> {
        let m = DistanceMatrix::between(g, xs, ys, self.radius())?;
        evaluate(self, &m)
    }
}

/// `delta^k_r`: some `x_i` lies within distance `r` of `y_0`.
pub fn build_delta(k: usize, r: Dist) -> Result<DistanceFormula> {
    if k == 0 {
        return input("delta formula needs k >= 1");
    }
    DistanceFormula::new(k, 1, Node::Or((0..k).map(|i| Node::atom(r, i, 0)).collect()))
}

/// `eta^k_r`: for every pair `i < j`, `dist(x_i, y_0) + dist(x_j, y_0) > r`.
pub fn build_eta(k: usize, r: Dist) -> Result<DistanceFormula> {
    if k < 2 {
        return input("eta formula needs k >= 2");
    }
    if r < 1 {
        return input("eta formula needs r >= 1");
    }
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let close = (0..=r)
                .map(|a| Node::And(vec![Node::atom(a, i, 0), Node::atom(r - a, j, 0)]))
                .collect();
            pairs.push(Node::Not(Box::new(Node::Or(close))));
        }
    }
    DistanceFormula::new(k, 1, Node::And(pairs))
}

/// Capped distances between a candidate tuple (rows) and a witness tuple
/// (columns). Entries equal to `cap + 1` mean "farther than `cap`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    cap: Dist,
    rows: usize,
    cols: usize,
    values: Vec<Dist>,
}

impl DistanceMatrix {
    /// Builds a matrix from optional distances (`None` = infinite). Finite
    /// values above the cap are also treated as infinite.
    pub fn new(cap: Dist, entries: &[Vec<Option<Dist>>]) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return input("ragged distance matrix");
        }
        let values = entries
            .iter()
            .flatten()
            .map(|d| d.filter(|&d| d <= cap).unwrap_or(inf(cap)))
            .collect();
        Ok(DistanceMatrix { cap, rows, cols, values })
    }

    pub fn between(g: &Graph, xs: &[Vertex], ys: &[Vertex], cap: Dist) -> Result<Self> {
        let mut values = Vec::with_capacity(xs.len() * ys.len());
        for &x in xs {
            let dist = g.bfs_capped(x, cap)?;
            for &y in ys {
                g.check_vertex(y)?;
                values.push(dist[y]);
            }
        }
        Ok(DistanceMatrix {
            cap,
            rows: xs.len(),
            cols: ys.len(),
            values,
        })
    }

    pub fn cap(&self) -> Dist {
        self.cap
    }

    pub fn get(&self, i: usize, j: usize) -> Dist {
        self.values[i * self.cols + j]
    }
}

/// Decides the formula from capped pairwise distances.
pub fn evaluate(f: &DistanceFormula, m: &DistanceMatrix) -> Result<bool> {
    if m.cap < f.radius() {
        return input(format!(
            "matrix cap {} is below formula radius {}",
            m.cap,
            f.radius()
        ));
    }
    if m.rows != f.c || m.cols != f.d {
        return input(format!(
            "matrix is {}x{} but formula has c={}, d={}",
            m.rows, m.cols, f.c, f.d
        ));
    }
    Ok(f.eval_with(|i, j| m.get(i, j)))
}

fn schema_err<T>(pointer: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::Schema {
        pointer: if pointer.is_empty() { "/".into() } else { pointer.into() },
        message: message.into(),
    })
}

fn uint(v: &Value, pointer: &str) -> Result<u64> {
    match v.as_u64() {
        Some(x) => Ok(x),
        None => schema_err(pointer, format!("expected a non-negative integer, found {v}")),
    }
}

fn parse_node(v: &Value, pointer: &str) -> Result<Node> {
    let Some(obj) = v.as_object() else {
        return schema_err(pointer, "node must be an object");
    };
    if obj.len() != 1 {
        return schema_err(pointer, "node must have exactly one of atom/and/or/not");
    }
    let (key, body) = obj.iter().next().unwrap();
    let here = format!("{pointer}/{key}");
    match key.as_str() {
        "atom" => {
            let Some(atom) = body.as_object() else {
                return schema_err(&here, "atom must be an object");
            };
            for k in atom.keys() {
                if !matches!(k.as_str(), "q" | "x" | "y") {
                    return schema_err(&format!("{here}/{k}"), "unknown atom field");
                }
            }
            let field = |name: &str| -> Result<u64> {
                let p = format!("{here}/{name}");
                match atom.get(name) {
                    Some(v) => uint(v, &p),
                    None => schema_err(&p, "missing field"),
                }
            };
            Ok(Node::Atom {
                q: Dist::try_from(field("q")?).or_else(|_| schema_err(&format!("{here}/q"), "too large"))?,
                x: field("x")? as usize,
                y: field("y")? as usize,
            })
        }
        "and" | "or" => {
            let Some(items) = body.as_array() else {
                return schema_err(&here, "expected an array of nodes");
            };
            let children = items
                .iter()
                .enumerate()
                .map(|(i, n)| parse_node(n, &format!("{here}/{i}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(if key == "and" { Node::And(children) } else { Node::Or(children) })
        }
        "not" => Ok(Node::Not(Box::new(parse_node(body, &here)?))),
        other => schema_err(&here, format!("unknown node kind `{other}`")),
    }
}

/// Parses the JSON formula schema `{"c":int,"d":int,"node":NODE}`.
pub fn parse_formula(text: &str) -> Result<DistanceFormula> {
    let value: Value = serde_json::from_str(text).or_else(|e| schema_err("", format!("invalid JSON: {e}")))?;
    let Some(obj) = value.as_object() else {
        return schema_err("", "formula must be an object");
    };
    for k in obj.keys() {
        if !matches!(k.as_str(), "c" | "d" | "node") {
            return schema_err(&format!("/{k}"), "unknown field");
        }
    }
    let get = |k: &str| obj.get(k).map_or_else(|| schema_err(&format!("/{k}"), "missing field"), Ok);
    let c = uint(get("c")?, "/c")? as usize;
    let d = uint(get("d")?, "/d")? as usize;
    let root = parse_node(get("node")?, "/node")?;
    DistanceFormula::new(c, d, root).or_else(|e| schema_err("/node", e.to_string()))
}

pub fn serialize_formula(f: &DistanceFormula) -> String {
    serde_json::to_string(f).expect("formula serialisation cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(values: &[Option<Dist>], cap: Dist) -> DistanceMatrix {
        let rows: Vec<Vec<Option<Dist>>> = values.iter().map(|&v| vec![v]).collect();
        DistanceMatrix::new(cap, &rows).unwrap()
    }

    #[test]
    fn delta_shape() {
        let f = build_delta(1, 2).unwrap();
        assert_eq!(f.root(), &Node::Or(vec![Node::atom(2, 0, 0)]));
        let f = build_delta(3, 1).unwrap();
        assert_eq!((f.size(), f.radius(), f.is_positive()), (3, 1, true));
        assert!(build_delta(0, 1).is_err());
    }

    #[test]
    fn delta_evaluation() {
        let f1 = build_delta(1, 1).unwrap();
        assert!(evaluate(&f1, &column(&[Some(0)], 1)).unwrap());
        let f = build_delta(2, 1).unwrap();
        assert!(evaluate(&f, &column(&[None, Some(1)], 1)).unwrap());
        assert!(!evaluate(&f, &column(&[None, None], 1)).unwrap());
    }

    #[test]
    fn eta_evaluation() {
        let f = build_eta(2, 1).unwrap();
        assert!(!f.is_positive());
        assert_eq!(f.radius(), 1);
        assert!(!evaluate(&f, &column(&[Some(0), Some(0)], 1)).unwrap());
        let f = build_eta(2, 2).unwrap();
        assert!(evaluate(&f, &column(&[Some(2), Some(1)], 2)).unwrap());
        assert!(!evaluate(&f, &column(&[Some(1), Some(1)], 2)).unwrap());
        assert!(evaluate(&f, &column(&[Some(2), Some(2)], 2)).unwrap());
        assert!(build_eta(1, 2).is_err());
    }

    #[test]
    fn cap_must_cover_radius() {
        let f = build_delta(1, 3).unwrap();
        assert!(evaluate(&f, &column(&[Some(1)], 2)).is_err());
    }

    #[test]
    fn json_examples() {
        let f = parse_formula(r#"{"c":1,"d":1,"node":{"atom":{"q":1,"x":0,"y":0}}}"#).unwrap();
        assert_eq!(f.root(), &Node::atom(1, 0, 0));
        let g = build_delta(2, 1).unwrap();
        assert_eq!(parse_formula(&serialize_formula(&g)).unwrap(), g);
        let eta = build_eta(3, 2).unwrap();
        assert_eq!(parse_formula(&serialize_formula(&eta)).unwrap(), eta);
    }

    #[test]
    fn json_errors_carry_pointer() {
        let err = parse_formula(r#"{"c":1,"d":1,"node":{"or":[{"atom":{"q":1,"x":-1,"y":0}}]}}"#).unwrap_err();
        match err {
            Error::Schema { pointer, .. } => assert_eq!(pointer, "/node/or/0/atom/x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_formula(r#"{"c":1,"d":1,"node":{"atom":{"q":1,"x":1,"y":0}}}"#).is_err());
        assert!(parse_formula(r#"{"c":1,"node":{"atom":{"q":1,"x":0,"y":0}}}"#).is_err());
        assert!(parse_formula(r#"{"c":1,"d":1,"node":{"xor":[]}}"#).is_err());
    }

    #[test]
    fn partial_evaluation_is_kleene() {
        let f = build_delta(2, 1).unwrap();
        assert_eq!(f.eval_partial(|i, _| (i == 0).then_some(0)), Some(true));
        assert_eq!(f.eval_partial(|i, _| (i == 0).then_some(5)), None);
        let eta = build_eta(2, 1).unwrap();
        assert_eq!(eta.eval_partial(|i, _| (i == 0).then_some(0)), None);
        assert_eq!(eta.eval_partial(|_, _| Some(0)), Some(false));
    }
}
