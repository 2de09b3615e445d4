//! Growing and pushing a square through a recursion polygon.
//!
//! Everything here works in the local frame of the piece. A square is moved
//! along straight segments in `(x, y, s)` space; each segment keeps the two
//! active contacts of its case and ends at the first event found by a scan
//! over all boundary features.

use super::frame::RecursionPolygon;
use crate::error::{Error, Result};
use crate::geom::{convex_hull, simplify_convex, Point};

const RATE_EPS: f64 = 1e-12;
const MAX_PHASES: usize = 64;

/// Lower-left corner and side length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Square {
    pub x: f64,
    pub y: f64,
    pub s: f64,
}

impl Square {
    pub fn corner(&self, c: Corner) -> Point {
        let (ox, oy) = c.offset();
        Point::new(self.x + ox * self.s, self.y + oy * self.s)
    }

    /// `sw, se, ne, nw`.
    pub fn corners(&self) -> [Point; 4] {
        CORNERS.map(|c| self.corner(c))
    }

    fn advance(&self, d: [f64; 3], t: f64) -> Square {
        Square { x: self.x + d[0] * t, y: self.y + d[1] * t, s: (self.s + d[2] * t).max(0.0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    Sw,
    Se,
    Ne,
    Nw,
}

const CORNERS: [Corner; 4] = [Corner::Sw, Corner::Se, Corner::Ne, Corner::Nw];

impl Corner {
    fn offset(self) -> (f64, f64) {
        match self {
            Corner::Sw => (0.0, 0.0),
            Corner::Se => (1.0, 0.0),
            Corner::Ne => (1.0, 1.0),
            Corner::Nw => (0.0, 1.0),
        }
    }

    fn velocity(self, d: [f64; 3]) -> Point {
        let (ox, oy) = self.offset();
        Point::new(d[0] + ox * d[2], d[1] + oy * d[2])
    }
}

/// What keeps the square in place during a push.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Contact {
    /// Bottom side on the horizontal subdivision edge.
    Bottom,
    /// Left side on the vertical subdivision edge.
    Left,
    /// A square corner on a chain edge (by chain index).
    Corner(Corner, usize),
}

/// `Bm` is the mirror of `B` across the diagonal: left side on the vertical
/// edge and the south-east corner on a chain edge, pushed upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    A,
    B,
    Bm,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweptSquareState {
    pub case: Case,
    pub square: Square,
    pub contacts: Vec<Contact>,
    /// Cases visited so far, e.g. `A>B>C`.
    pub path: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Stop {
    /// A polygon vertex (chain index) reached the square boundary.
    Vertex(usize),
    /// A subdivision edge or the end of a contact edge was reached, or the
    /// new contacts have no continuation.
    Blocked,
    /// The square shrank to a point.
    Vanished,
    /// The contacts admit no motion.
    Stalled,
}

impl Stop {
    pub fn label(&self) -> &'static str {
        match self {
            Stop::Vertex(_) => "vertex",
            Stop::Blocked => "blocked",
            Stop::Vanished => "vanished",
            Stop::Stalled => "stalled",
        }
    }
}

/// One straight push.
#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub state: SweptSquareState,
    pub end: Square,
    pub next: Vec<SweptSquareState>,
    pub stop: Option<Stop>,
}

impl Phase {
    pub fn label(&self) -> Option<String> {
        self.stop.map(|s| format!("{}:{}", self.state.path, s.label()))
    }
}

fn normal(rp: &RecursionPolygon, k: usize) -> (Point, Point, Point, f64) {
    let (a, b) = (rp.chain[k], rp.chain[k + 1]);
    let e = b - a;
    let len = e.norm();
    let u = e * (1.0 / len);
    (a, u, Point::new(-u.y, u.x), len)
}

fn row(rp: &RecursionPolygon, c: Contact) -> [f64; 3] {
    match c {
        Contact::Bottom => [0.0, 1.0, 0.0],
        Contact::Left => [1.0, 0.0, 0.0],
        Contact::Corner(cn, k) => {
            let (_, _, n, _) = normal(rp, k);
            let (ox, oy) = cn.offset();
            [n.x, n.y, n.x * ox + n.y * oy]
        }
    }
}

/// Direction of motion in `(x, y, s)`, scaled so its largest component is 1.
pub fn motion(rp: &RecursionPolygon, state: &SweptSquareState) -> Option<[f64; 3]> {
    if state.case == Case::A {
        return Some([0.0, 0.0, 1.0]);
    }
    let (r1, r2) = (row(rp, state.contacts[0]), row(rp, state.contacts[1]));
    let mut d = [
        r1[1] * r2[2] - r1[2] * r2[1],
        r1[2] * r2[0] - r1[0] * r2[2],
        r1[0] * r2[1] - r1[1] * r2[0],
    ];
    let size = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if size <= RATE_EPS {
        return None;
    }
    let key = match state.case {
        Case::B | Case::F | Case::G => d[0],
        Case::Bm | Case::D | Case::E => d[1],
        Case::C => d[0] + d[1],
        Case::A => unreachable!(),
    };
    if key.abs() <= RATE_EPS * size {
        return None;
    }
    let k = key.signum() / size;
    for v in d.iter_mut() {
        *v *= k;
    }
    Some(d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Event {
    /// Corner, chain edge, and the rate at which the corner leaves.
    Hit(Corner, usize, f64),
    Vertex(usize),
    Blocked,
    Vanished,
}

/// Times `t >= 0` at which the point lies in the square grown by `slack`.
fn containment(sq: &Square, d: [f64; 3], p: Point, slack: f64) -> Option<(f64, f64)> {
    let cons = [
        (p.x - sq.x, -d[0]),
        (sq.x + sq.s - p.x, d[0] + d[2]),
        (p.y - sq.y, -d[1]),
        (sq.y + sq.s - p.y, d[1] + d[2]),
    ];
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    for (a, b) in cons {
        if b.abs() <= RATE_EPS {
            if a < -slack {
                return None;
            }
        } else if b > 0.0 {
            lo = lo.max((-slack - a) / b);
        } else {
            hi = hi.min((-slack - a) / b);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn events(rp: &RecursionPolygon, state: &SweptSquareState, d: [f64; 3], tol: f64) -> Vec<(f64, Event)> {
    let sq = state.square;
    let active = |c: Contact| state.contacts.contains(&c);
    let mut out = Vec::new();

    for c in CORNERS {
        let (p0, v) = (sq.corner(c), c.velocity(d));
        for k in 0..rp.chain.len() - 1 {
            if active(Contact::Corner(c, k)) {
                continue;
            }
            let (a, u, n, len) = normal(rp, k);
            let (g0, rate) = (n.dot(p0 - a), n.dot(v));
            if rate >= -RATE_EPS || g0 < -tol {
                continue;
            }
            let t = g0.max(0.0) / -rate;
            let w = (p0 + v * t - a).dot(u);
            if w >= -tol && w <= len + tol {
                out.push((t, Event::Hit(c, k, rate)));
            }
        }
        // non-active walls, within their extent
        if !active(Contact::Bottom) && v.y < -RATE_EPS && p0.y >= -tol {
            let t = p0.y.max(0.0) / -v.y;
            let x = p0.x + v.x * t;
            if x >= -tol && x <= rp.h_len + tol {
                out.push((t, Event::Blocked));
            }
        }
        if !active(Contact::Left) && rp.v_len > tol && v.x < -RATE_EPS && p0.x >= -tol {
            let t = p0.x.max(0.0) / -v.x;
            let y = p0.y + v.y * t;
            if y >= -tol && y <= rp.v_len + tol {
                out.push((t, Event::Blocked));
            }
        }
    }

    for (i, &p) in rp.chain.iter().enumerate() {
        if !rp.chain_vertex[i] {
            continue;
        }
        let Some((lo, _)) = containment(&sq, d, p, tol) else { continue };
        if lo > tol {
            out.push((lo, Event::Vertex(i)));
        } else if let Some((olo, ohi)) = containment(&sq, d, p, -tol) {
            if ohi > olo {
                out.push((olo, Event::Vertex(i)));
            }
        }
    }

    for &c in &state.contacts {
        if let Contact::Corner(cn, k) = c {
            let (a, u, _, len) = normal(rp, k);
            let (w0, dw) = ((sq.corner(cn) - a).dot(u), cn.velocity(d).dot(u));
            if dw > RATE_EPS {
                out.push((((len - w0) / dw).max(0.0), Event::Blocked));
            } else if dw < -RATE_EPS {
                out.push(((w0 / -dw).max(0.0), Event::Blocked));
            }
        }
    }

    if d[2] < -RATE_EPS {
        out.push((sq.s / -d[2], Event::Vanished));
    }
    out
}

fn with(case: Case, from: &SweptSquareState, sq: Square, contacts: Vec<Contact>) -> SweptSquareState {
    let tag = match case {
        Case::A => "A",
        Case::B => "B",
        Case::Bm => "Bm",
        Case::C => "C",
        Case::D => "D",
        Case::E => "E",
        Case::F => "F",
        Case::G => "G",
    };
    SweptSquareState { case, square: sq, contacts, path: format!("{}>{}", from.path, tag) }
}

fn edge_of(state: &SweptSquareState, corner: Corner) -> Option<usize> {
    state.contacts.iter().find_map(|c| match c {
        Contact::Corner(cn, k) if *cn == corner => Some(*k),
        _ => None,
    })
}

/// Continuations after new corner contacts; empty means the push ends.
fn transition(state: &SweptSquareState, sq: Square, hits: &[(Corner, usize)]) -> Vec<SweptSquareState> {
    use Contact::{Bottom, Left};
    use Corner::{Ne, Nw, Se};
    let cc = Contact::Corner;
    let s = state;
    match (s.case, hits) {
        (Case::A, [(Nw, k)]) => vec![with(Case::B, s, sq, vec![Bottom, cc(Nw, *k)])],
        (Case::A, [(Se, k)]) => vec![with(Case::Bm, s, sq, vec![Left, cc(Se, *k)])],
        (Case::A, [(Ne, k)]) => vec![
            with(Case::E, s, sq, vec![Left, cc(Ne, *k)]),
            with(Case::F, s, sq, vec![Bottom, cc(Ne, *k)]),
        ],
        (Case::A, [(Se, m), (Nw, k)]) => vec![with(Case::C, s, sq, vec![cc(Nw, *k), cc(Se, *m)])],
        (Case::B, [(Se, m)]) => {
            let k = edge_of(s, Nw).unwrap();
            vec![with(Case::C, s, sq, vec![cc(Nw, k), cc(Se, *m)])]
        }
        (Case::B, [(Ne, m)]) => {
            let k = edge_of(s, Nw).unwrap();
            vec![
                with(Case::D, s, sq, vec![cc(Nw, k), cc(Ne, *m)]),
                with(Case::F, s, sq, vec![Bottom, cc(Ne, *m)]),
            ]
        }
        (Case::Bm, [(Nw, m)]) => {
            let k = edge_of(s, Se).unwrap();
            vec![with(Case::C, s, sq, vec![cc(Nw, *m), cc(Se, k)])]
        }
        (Case::Bm, [(Ne, m)]) => {
            let k = edge_of(s, Se).unwrap();
            vec![
                with(Case::G, s, sq, vec![cc(Ne, *m), cc(Se, k)]),
                with(Case::E, s, sq, vec![Left, cc(Ne, *m)]),
            ]
        }
        (Case::C, [(Ne, j)]) => {
            let (k, m) = (edge_of(s, Nw).unwrap(), edge_of(s, Se).unwrap());
            vec![
                with(Case::D, s, sq, vec![cc(Nw, k), cc(Ne, *j)]),
                with(Case::G, s, sq, vec![cc(Ne, *j), cc(Se, m)]),
            ]
        }
        (Case::E, [(Nw, m)]) => {
            let k = edge_of(s, Ne).unwrap();
            vec![with(Case::D, s, sq, vec![cc(Nw, *m), cc(Ne, k)])]
        }
        (Case::F, [(Se, m)]) => {
            let k = edge_of(s, Ne).unwrap();
            vec![with(Case::G, s, sq, vec![cc(Ne, k), cc(Se, *m)])]
        }
        _ => vec![],
    }
}

/// Advances the square to its next event.
pub fn push_square(state: &SweptSquareState, rp: &RecursionPolygon, tol: f64) -> Result<Phase> {
    let terminal = |end: Square, stop: Stop| Phase { state: state.clone(), end, next: vec![], stop: Some(stop) };
    let Some(d) = motion(rp, state) else {
        return Ok(terminal(state.square, Stop::Stalled));
    };
    let evs = events(rp, state, d, tol);
    let tmin = evs
        .iter()
        .map(|e| e.0)
        .min_by(|a, b| a.total_cmp(b))
        .ok_or_else(|| Error::Internal(format!("unbounded square motion in case {:?}", state.case)))?;
    let end = state.square.advance(d, tmin);
    let group: Vec<Event> = evs.iter().filter(|e| e.0 <= tmin + tol).map(|e| e.1).collect();

    if let Some(Event::Vertex(i)) = group.iter().find(|e| matches!(e, Event::Vertex(_))) {
        return Ok(terminal(end, Stop::Vertex(*i)));
    }
    if group.contains(&Event::Blocked) {
        return Ok(terminal(end, Stop::Blocked));
    }
    if group.contains(&Event::Vanished) {
        return Ok(terminal(end, Stop::Vanished));
    }
    // several corners on one edge at once: keep the one leaving fastest
    let mut raw: Vec<(usize, f64, Corner)> = group
        .iter()
        .filter_map(|e| match e {
            Event::Hit(c, k, r) => Some((*k, *r, *c)),
            _ => None,
        })
        .collect();
    raw.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    raw.dedup_by_key(|h| h.0);
    let mut hits: Vec<(Corner, usize)> = raw.iter().map(|h| (h.2, h.0)).collect();
    hits.sort();
    hits.dedup();
    let next = transition(state, end, &hits);
    if next.is_empty() {
        return Ok(terminal(end, Stop::Blocked));
    }
    Ok(Phase { state: state.clone(), end, next, stop: None })
}

/// The initial state: a square of size zero at the corner.
pub fn initial_state() -> SweptSquareState {
    SweptSquareState {
        case: Case::A,
        square: Square { x: 0.0, y: 0.0, s: 0.0 },
        contacts: vec![Contact::Bottom, Contact::Left],
        path: "A".into(),
    }
}

/// Grows the square from the corner until the first event.
pub fn grow_from_corner(rp: &RecursionPolygon, tol: f64) -> Result<Phase> {
    push_square(&initial_state(), rp, tol)
}

/// All pushes, depth-first with the first listed continuation first.
pub fn sweep(rp: &RecursionPolygon, tol: f64) -> Result<Vec<Phase>> {
    let mut stack = vec![initial_state()];
    let mut trace = Vec::new();
    while let Some(state) = stack.pop() {
        if trace.len() >= MAX_PHASES {
            return Err(Error::Internal("square pushing did not terminate".into()));
        }
        let phase = push_square(&state, rp, tol)?;
        for s in phase.next.iter().rev() {
            stack.push(s.clone());
        }
        trace.push(phase);
    }
    Ok(trace)
}

/// Union of all squares of a trace, in world coordinates, as a convex
/// counter-clockwise polygon.
pub fn sweep_union(trace: &[Phase], rp: &RecursionPolygon, tol: f64) -> Vec<Point> {
    let mut pts = Vec::new();
    for ph in trace {
        for sq in [ph.state.square, ph.end] {
            pts.extend(sq.corners().iter().map(|&p| rp.frame.to_global(p)));
        }
    }
    simplify_convex(convex_hull(&pts), tol)
}
