//! Framed braid graphs, their edge rings and the ideals `F`, `L`, `Q`, `N`.
//!
//! A diagram has `strands` positions numbered `1..=b` from right to left and
//! a list of thick-edge events from top to bottom; an event at `pos = p`
//! joins positions `p` and `p + 1`. All thin edges point upward. The `closed`
//! rightmost positions are closed off: the top and bottom boundary segments
//! of such a position merge into one closure edge.
//!
//! Edges are labelled `x0, x1, ...` once, on the diagram as given: position
//! by position from the right, and top to bottom within a position, where a
//! closed position's merged edge comes first. Closing further strands keeps
//! these labels; the top segment's label survives and the bottom one is
//! dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial, Term, VariableOrder};

/// Presets that overwrite every framing before explicit overrides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FramingPreset {
    Blackboard,
    PlusOne,
    Layered,
}

impl std::str::FromStr for FramingPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blackboard" => Ok(Self::Blackboard),
            "plus_one" | "plus-one" => Ok(Self::PlusOne),
            "layered" => Ok(Self::Layered),
            other => Err(Error::InvalidSpec(format!("unknown preset `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Event {
    pub pos: usize,
}

/// The on-disk description of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidGraphSpec {
    pub strands: usize,
    #[serde(default)]
    pub events: Vec<Event>,
    #[serde(default)]
    pub framings: BTreeMap<String, i64>,
    #[serde(default)]
    pub closed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<FramingPreset>,
}

impl BraidGraphSpec {
    pub fn new(strands: usize, events: &[usize], closed: usize) -> Self {
        Self {
            strands,
            events: events.iter().map(|&pos| Event { pos }).collect(),
            framings: BTreeMap::new(),
            closed,
            preset: None,
        }
    }

    pub fn with_preset(mut self, preset: FramingPreset) -> Self {
        self.preset = Some(preset);
        self
    }

    pub fn with_framing(mut self, label: &str, value: i64) -> Self {
        self.framings.insert(label.to_string(), value);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

/// Endpoint of a thin edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    /// The top or bottom of the diagram.
    Boundary,
    Event(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Between two events on the same position.
    Interior,
    Top,
    Bottom,
    /// A position with no events: a single segment from bottom to top.
    Free,
    /// Merged top and bottom segments of a position closed in the spec.
    Closure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    pub position: usize,
    pub kind: EdgeKind,
    pub tail: End,
    pub head: End,
}

/// A validated diagram with its base labelling and framings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidGraph {
    spec: BraidGraphSpec,
    edges: Vec<Edge>,
    framing: Vec<i64>,
    /// Top and bottom edge per position (index 0 unused). Equal for free
    /// and spec-closed positions.
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl BraidGraph {
    pub fn new(spec: BraidGraphSpec) -> Result<Self> {
        let b = spec.strands;
        if b == 0 {
            return Err(Error::InvalidSpec("at least one strand is required".into()));
        }
        for (i, e) in spec.events.iter().enumerate() {
            if e.pos == 0 || e.pos >= b {
                return Err(Error::InvalidSpec(format!(
                    "event {i} at position {} outside 1..={}",
                    e.pos,
                    b - 1
                )));
            }
        }
        if spec.closed >= b {
            return Err(Error::ClosureOutOfRange {
                level: spec.closed,
                strands: b,
            });
        }
        if spec.events.len() > 24 {
            return Err(Error::InvalidSpec("at most 24 events are supported".into()));
        }
        let (edges, top, bottom) = label_edges(&spec);
        let mut graph = Self {
            framing: vec![0; edges.len()],
            spec,
            edges,
            top,
            bottom,
        };
        if let Some(p) = graph.spec.preset {
            graph.framing = graph.preset_values(p);
        }
        for (label, &v) in &graph.spec.framings {
            let idx = graph
                .edges
                .iter()
                .position(|e| &e.label == label)
                .ok_or_else(|| Error::InvalidSpec(format!("no thin edge labelled `{label}`")))?;
            graph.framing[idx] = v;
        }
        Ok(graph)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(BraidGraphSpec::from_json(text)?)
    }

    pub fn spec(&self) -> &BraidGraphSpec {
        &self.spec
    }

    pub fn strands(&self) -> usize {
        self.spec.strands
    }

    pub fn events(&self) -> Vec<usize> {
        self.spec.events.iter().map(|e| e.pos).collect()
    }

    pub fn num_events(&self) -> usize {
        self.spec.events.len()
    }

    /// Number of positions closed in the spec; the lowest available level.
    pub fn base_level(&self) -> usize {
        self.spec.closed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn framings(&self) -> &[i64] {
        &self.framing
    }

    /// Framings keyed by edge label.
    pub fn framing_map(&self) -> BTreeMap<String, i64> {
        self.edges
            .iter()
            .zip(&self.framing)
            .map(|(e, &f)| (e.label.clone(), f))
            .collect()
    }

    pub fn top_edge(&self, position: usize) -> usize {
        self.top[position]
    }

    pub fn bottom_edge(&self, position: usize) -> usize {
        self.bottom[position]
    }

    /// A copy with all framings replaced by `values` (indexed by edge).
    pub fn with_framings(&self, values: &[i64]) -> Result<Self> {
        if values.len() != self.edges.len() {
            return Err(Error::InvalidSpec(format!(
                "expected {} framings, got {}",
                self.edges.len(),
                values.len()
            )));
        }
        let mut spec = self.spec.clone();
        spec.preset = None;
        spec.framings = self
            .edges
            .iter()
            .zip(values)
            .map(|(e, &v)| (e.label.clone(), v))
            .collect();
        Self::new(spec)
    }

    fn preset_values(&self, preset: FramingPreset) -> Vec<i64> {
        let m = self.num_events() as i64;
        self.edges
            .iter()
            .map(|e| match preset {
                FramingPreset::Blackboard => 0,
                FramingPreset::PlusOne => 1,
                FramingPreset::Layered => {
                    let idx = |end: End| match end {
                        End::Event(i) => i as i64,
                        End::Boundary => unreachable!("boundary handled by kind"),
                    };
                    match e.kind {
                        EdgeKind::Interior => idx(e.tail) - idx(e.head),
                        EdgeKind::Top => idx(e.tail) + 1,
                        EdgeKind::Bottom => m - 1 - idx(e.head),
                        EdgeKind::Closure => idx(e.tail) + m - idx(e.head),
                        EdgeKind::Free => m,
                    }
                }
            })
            .collect()
    }

    /// A copy of this graph with `preset` applied.
    pub fn framing_preset(&self, preset: FramingPreset) -> Self {
        let mut g = self.clone();
        g.framing = g.preset_values(preset);
        g.spec.preset = Some(preset);
        g.spec.framings.clear();
        g
    }

    /// The edge ring of `G^(k)`: the diagram with its `k` rightmost
    /// positions closed.
    pub fn edge_ring(&self, k: usize) -> Result<EdgeRing> {
        if k < self.base_level() || k >= self.strands() {
            return Err(Error::ClosureOutOfRange {
                level: k,
                strands: self.strands(),
            });
        }
        Ok(EdgeRing::build(self, k))
    }

    /// The edge ring at the spec's own closure level.
    pub fn base_ring(&self) -> EdgeRing {
        EdgeRing::build(self, self.base_level())
    }
}

/// Labels the segments of every position, right to left.
fn label_edges(spec: &BraidGraphSpec) -> (Vec<Edge>, Vec<usize>, Vec<usize>) {
    let b = spec.strands;
    let mut edges = Vec::new();
    let mut top = vec![usize::MAX; b + 1];
    let mut bottom = vec![usize::MAX; b + 1];
    let push = |edges: &mut Vec<Edge>, position, kind, tail, head| {
        let idx = edges.len();
        edges.push(Edge {
            label: format!("x{idx}"),
            position,
            kind,
            tail,
            head,
        });
        idx
    };
    for p in 1..=b {
        let touching: Vec<usize> = spec
            .events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.pos == p || e.pos + 1 == p)
            .map(|(i, _)| i)
            .collect();
        let Some((&first, &last)) = touching.first().zip(touching.last()) else {
            let e = push(&mut edges, p, EdgeKind::Free, End::Boundary, End::Boundary);
            top[p] = e;
            bottom[p] = e;
            continue;
        };
        let closed = p <= spec.closed;
        if closed {
            let e = push(
                &mut edges,
                p,
                EdgeKind::Closure,
                End::Event(first),
                End::Event(last),
            );
            top[p] = e;
            bottom[p] = e;
        } else {
            top[p] = push(
                &mut edges,
                p,
                EdgeKind::Top,
                End::Event(first),
                End::Boundary,
            );
        }
        for w in touching.windows(2) {
            push(
                &mut edges,
                p,
                EdgeKind::Interior,
                End::Event(w[1]),
                End::Event(w[0]),
            );
        }
        if !closed {
            bottom[p] = push(
                &mut edges,
                p,
                EdgeKind::Bottom,
                End::Boundary,
                End::Event(last),
            );
        }
    }
    (edges, top, bottom)
}

/// A thin edge as seen at a particular closure level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEdge {
    /// Base edge whose label this edge carries.
    pub edge: usize,
    pub tail: End,
    pub head: End,
    pub framing: i64,
}

/// Edge classification for a set of thick edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubsetDescriptor {
    pub members: u32,
    pub out_edges: Vec<usize>,
    pub in_edges: Vec<usize>,
    pub internal_edges: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct WeightData {
    /// Framing on internal edges.
    pub w: i64,
    /// Framing on edges entering from the complement or the bottom.
    pub w_in: i64,
    /// `a_{k+1}` when the bottom segment of position `k + 1` enters the subset.
    pub w_tau: i64,
    pub total: i64,
}

/// The polynomial ring on the thin edges of `G^(k)` with the y-variables
/// eliminated, together with the level's incidence data.
#[derive(Debug, Clone)]
pub struct EdgeRing {
    graph: Arc<BraidGraph>,
    level: usize,
    order: Arc<VariableOrder>,
    /// Alive edges in variable order.
    vars: Vec<LevelEdge>,
    /// Base edge -> variable position of the edge representing it.
    var_of: Vec<usize>,
}

impl EdgeRing {
    fn build(graph: &BraidGraph, k: usize) -> Self {
        let graph = Arc::new(graph.clone());
        let base = graph.base_level();
        let n = graph.edges.len();
        // rep[e] = edge carrying e's label at level k.
        let mut rep: Vec<usize> = (0..n).collect();
        let mut framing = graph.framing.clone();
        let mut head: Vec<End> = graph.edges.iter().map(|e| e.head).collect();
        for p in base + 1..=k {
            let (t, b) = (graph.top[p], graph.bottom[p]);
            if t != b {
                rep[b] = t;
                framing[t] += framing[b];
                head[t] = graph.edges[b].head;
            }
        }
        let mut alive: Vec<usize> = (0..n).filter(|&e| rep[e] == e).collect();
        if k >= 1 {
            let zt = graph.top[k];
            alive.retain(|&e| e != zt);
            alive.insert(0, zt);
        }
        let order = VariableOrder::new(alive.iter().map(|&e| graph.edges[e].label.clone()))
            .expect("edge labels are valid and distinct");
        let mut var_of = vec![usize::MAX; n];
        for (i, &e) in alive.iter().enumerate() {
            var_of[e] = i;
        }
        for e in 0..n {
            var_of[e] = var_of[rep[e]];
        }
        let vars = alive
            .iter()
            .map(|&e| LevelEdge {
                edge: e,
                tail: graph.edges[e].tail,
                head: head[e],
                framing: framing[e],
            })
            .collect();
        Self {
            graph,
            level: k,
            order,
            vars,
            var_of,
        }
    }

    pub fn graph(&self) -> &BraidGraph {
        &self.graph
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn order(&self) -> &Arc<VariableOrder> {
        &self.order
    }

    pub fn edges(&self) -> &[LevelEdge] {
        &self.vars
    }

    /// Variable position of the edge carrying base edge `e`'s label.
    pub fn var_of_edge(&self, e: usize) -> usize {
        self.var_of[e]
    }

    pub fn var(&self, idx: usize) -> Polynomial {
        Polynomial::var_at(&self.order, idx)
    }

    /// Variable position of `z_τ^(p)`, the top segment of position `p`.
    pub fn z_top(&self, p: usize) -> usize {
        self.var_of[self.graph.top[p]]
    }

    /// Variable position of `z_β^(p)`; after position `p` is closed this is
    /// the same variable as `z_top(p)`.
    pub fn z_bottom(&self, p: usize) -> usize {
        self.var_of[self.graph.bottom[p]]
    }

    /// Framing `a_p` of the top segment of position `p` in the diagram as
    /// given.
    pub fn top_framing(&self, p: usize) -> i64 {
        self.graph.framing[self.graph.top[p]]
    }

    /// Alias table: `(alias, label)` for every position's top and bottom.
    pub fn aliases(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for p in 1..=self.graph.strands() {
            out.push((format!("zt{p}"), self.order.name(self.z_top(p)).to_string()));
            out.push((
                format!("zb{p}"),
                self.order.name(self.z_bottom(p)).to_string(),
            ));
        }
        out
    }

    fn monomial_of(&self, edges: &[usize]) -> Monomial {
        let mut e = vec![0; self.order.len()];
        for &v in edges {
            e[v] += 1;
        }
        Monomial::from_exponents(e)
    }

    fn binomial(&self, a: (i64, &[usize]), b: (i64, &[usize])) -> Polynomial {
        let terms = vec![
            Term::new(RationalFunction::t_pow(a.0), self.monomial_of(a.1)),
            Term::new(-RationalFunction::t_pow(b.0), self.monomial_of(b.1)),
        ];
        Polynomial::from_terms(&self.order, terms).expect("same order")
    }

    /// Out and in variable positions of thick edge `v`.
    fn incidence(&self, v: usize) -> ([usize; 2], [usize; 2]) {
        let outs: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.vars[i].tail == End::Event(v))
            .collect();
        let ins: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.vars[i].head == End::Event(v))
            .collect();
        debug_assert_eq!((outs.len(), ins.len()), (2, 2));
        ([outs[0], outs[1]], [ins[0], ins[1]])
    }

    /// `t^l y_i - x_i` in the ring on both `x` and `y` variables.
    pub fn framing_ideal(&self) -> Ideal {
        let mut names: Vec<String> = self.order.names().to_vec();
        names.extend(self.order.names().iter().map(|n| format!("y{}", &n[1..])));
        let order = VariableOrder::new(names).expect("distinct names");
        let n = self.vars.len();
        let gens = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let y = Term::new(
                    RationalFunction::t_pow(e.framing),
                    Monomial::var(2 * n, n + i),
                );
                let x = Term::new(-RationalFunction::one(), Monomial::var(2 * n, i));
                Polynomial::from_terms(&order, vec![y, x]).expect("same order")
            })
            .collect();
        Ideal::new(&order, gens).expect("same order")
    }

    /// The linear generator of thick edge `v`, with outgoing `a, b` and
    /// incoming `c, d`: `t^(lc+ld) (x_a + x_b) - t^ld x_c - t^lc x_d`.
    pub fn linear_generator(&self, v: usize) -> Polynomial {
        let ([a, b], [c, d]) = self.incidence(v);
        let (lc, ld) = (self.vars[c].framing, self.vars[d].framing);
        let terms = vec![
            Term::new(RationalFunction::t_pow(lc + ld), self.monomial_of(&[a])),
            Term::new(RationalFunction::t_pow(lc + ld), self.monomial_of(&[b])),
            Term::new(-RationalFunction::t_pow(ld), self.monomial_of(&[c])),
            Term::new(-RationalFunction::t_pow(lc), self.monomial_of(&[d])),
        ];
        Polynomial::from_terms(&self.order, terms).expect("same order")
    }

    pub fn linear_ideal(&self) -> Ideal {
        let gens = (0..self.graph.num_events())
            .map(|v| self.linear_generator(v))
            .collect();
        Ideal::new(&self.order, gens).expect("same order")
    }

    /// One generator per thick edge: `t^(lc+ld) x_a x_b - x_c x_d`.
    pub fn quadratic_ideal(&self) -> Ideal {
        let gens = (0..self.graph.num_events())
            .map(|v| {
                let ([a, b], [c, d]) = self.incidence(v);
                let l = self.vars[c].framing + self.vars[d].framing;
                self.binomial((l, &[a, b]), (0, &[c, d]))
            })
            .collect();
        Ideal::new(&self.order, gens).expect("same order")
    }

    pub fn subset(&self, members: u32) -> SubsetDescriptor {
        let inside = |end: End| matches!(end, End::Event(i) if members >> i & 1 == 1);
        let mut d = SubsetDescriptor {
            members,
            ..Default::default()
        };
        for (i, e) in self.vars.iter().enumerate() {
            match (inside(e.tail), inside(e.head)) {
                (true, true) => d.internal_edges.push(i),
                (true, false) => d.out_edges.push(i),
                (false, true) => d.in_edges.push(i),
                (false, false) => {}
            }
        }
        d
    }

    pub fn subset_weights(&self, members: u32) -> WeightData {
        let d = self.subset(members);
        let sum = |s: &[usize]| s.iter().map(|&i| self.vars[i].framing).sum::<i64>();
        let (w, w_in) = (sum(&d.internal_edges), sum(&d.in_edges));
        let w_tau =
            self.next_bottom()
                .map_or(0, |(zb, a)| if d.in_edges.contains(&zb) { a } else { 0 });
        WeightData {
            w,
            w_in,
            w_tau,
            total: w + w_in + w_tau,
        }
    }

    /// `z_β^(k+1)` and `a_{k+1}` when position `k + 1` can still be closed
    /// and has events.
    fn next_bottom(&self) -> Option<(usize, i64)> {
        let p = self.level + 1;
        if p >= self.graph.strands() || self.graph.top[p] == self.graph.bottom[p] {
            return None;
        }
        Some((self.z_bottom(p), self.top_framing(p)))
    }

    /// `t^(w + w_in) x_out - x_in` for a nonempty subset.
    pub fn nonlocal_generator(&self, members: u32) -> Polynomial {
        let d = self.subset(members);
        let wd = self.subset_weights(members);
        self.binomial((wd.w + wd.w_in, &d.out_edges), (0, &d.in_edges))
    }

    /// Generators for every nonempty subset in ascending bitmask order;
    /// zero generators are dropped.
    pub fn nonlocal_ideal(&self) -> Ideal {
        let m = self.graph.num_events();
        let gens = (1u32..1 << m).map(|s| self.nonlocal_generator(s)).collect();
        Ideal::new(&self.order, gens).expect("same order")
    }

    /// The ring one level up and the projection onto it.
    pub fn close_strand(&self) -> Result<(EdgeRing, Projection)> {
        let next = self.graph.edge_ring(self.level + 1)?;
        let p = self.level + 1;
        let images = (0..self.vars.len())
            .map(|i| {
                let e = self.vars[i].edge;
                (0, next.var_of_edge(e))
            })
            .collect::<Vec<_>>();
        let mut images = images;
        if let Some((zb, a)) = self.next_bottom() {
            images[zb] = (-a, next.z_top(p));
        }
        let projection = Projection {
            source: self.order.clone(),
            target: next.order.clone(),
            images,
        };
        Ok((next, projection))
    }
}

/// Ring map `E_k -> E_{k+1}` sending every variable to `t^s` times a
/// variable: the identity on labels except `z_β^(k+1) -> t^(-a) z_τ^(k+1)`.
#[derive(Debug, Clone)]
pub struct Projection {
    source: Arc<VariableOrder>,
    target: Arc<VariableOrder>,
    /// Per source variable: `(t exponent, target variable)`.
    images: Vec<(i64, usize)>,
}

impl Projection {
    pub fn target(&self) -> &Arc<VariableOrder> {
        &self.target
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.order() != &self.source {
            return Err(Error::OrderMismatch);
        }
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let mut e = vec![0; self.target.len()];
                let mut shift = 0;
                for (i, &x) in t.monomial.exponents().iter().enumerate() {
                    let (s, j) = self.images[i];
                    e[j] += x;
                    shift += s * i64::from(x);
                }
                Term::new(
                    &t.coeff * &RationalFunction::t_pow(shift),
                    Monomial::from_exponents(e),
                )
            })
            .collect();
        Polynomial::from_terms(&self.target, terms)
    }

    pub fn apply_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        let gens = ideal
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<_>>()?;
        Ideal::new(&self.target, gens)
    }
}

impl fmt::Display for EdgeRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |e: End| match e {
            End::Boundary => "boundary".to_string(),
            End::Event(i) => format!("e{i}"),
        };
        writeln!(
            f,
            "strands {} events {:?} level {}",
            self.graph.strands(),
            self.graph.events(),
            self.level
        )?;
        writeln!(f, "order {}", self.order.names().join(" > "))?;
        for (i, e) in self.vars.iter().enumerate() {
            writeln!(
                f,
                "{} pos {} {} -> {} framing {}",
                self.order.name(i),
                self.graph.edges[e.edge].position,
                end(e.tail),
                end(e.head),
                e.framing
            )?;
        }
        let aliases: Vec<String> = self
            .aliases()
            .into_iter()
            .map(|(a, l)| format!("{a}={l}"))
            .collect();
        write!(f, "aliases {}", aliases.join(" "))
    }
}
