//! The virtual braid box.
//!
//! Dowels slide in a T-shaped groove. Every time a dowel on the arm passes
//! the junction while another dowel is parked up the stem, the strands below
//! pick up one crossing: the passer is at `y = 0`, in front of the stem dowel,
//! so it goes over. Passing left to right appends `+i`, right to left `-i`,
//! where `i` is the lower of the two dowels' ranks along the x axis.
//!
//! Drags are atomic straight routes along the T. Anything that would bring
//! two dowels closer than half the spacing unit is rejected, never clamped.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::free_group::EndoImages;
use crate::motion::{canonical_positions, Keyframe, Motion, Point};
use crate::quandle::{self, QuandleElement};
use crate::tpage::{crossing_layout, spacing, TPoint, STEM_HEIGHT};

pub type SessionId = u64;

pub const MAX_STRANDS: usize = 16;

/// Slack for floating point noise in separation checks.
const EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DragCommand {
    /// 1-based dowel label.
    pub dowel: usize,
    pub target: TPoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxState {
    pub id: SessionId,
    pub n: usize,
    /// Dowel positions indexed by label - 1.
    pub dowels: Vec<TPoint>,
    /// Dowel labels in left-to-right x order; a stem dowel counts as x = 0.
    pub rank: Vec<usize>,
    pub word: BraidWord,
    pub loops: EndoImages,
    pub quandle: Option<Vec<QuandleElement>>,
}

struct Route {
    /// Intermediate and final positions of the moving dowel.
    waypoints: Vec<TPoint>,
    letter: Option<i32>,
}

impl BoxState {
    pub fn new(id: SessionId, n: usize, with_quandle: bool) -> Result<Self> {
        if !(1..=MAX_STRANDS).contains(&n) {
            return Err(Error::BadStrandCount(n));
        }
        Ok(Self {
            id,
            n,
            dowels: canonical_positions(n)
                .into_iter()
                .map(TPoint::Horizontal)
                .collect(),
            rank: (1..=n).collect(),
            word: BraidWord::identity(n)?,
            loops: EndoImages::identity(n),
            quandle: with_quandle.then(|| QuandleElement::generators(n)),
        })
    }

    /// Minimum allowed distance between two dowels.
    pub fn min_gap(&self) -> f64 {
        0.5 * spacing(self.n)
    }

    /// The dowel currently up the stem, if any.
    pub fn stem_dowel(&self) -> Option<usize> {
        self.dowels.iter().position(|p| p.on_stem()).map(|i| i + 1)
    }

    pub fn drag(&self, cmd: &DragCommand) -> Result<(BoxState, Vec<i32>)> {
        let route = self.plan(cmd)?;
        Ok(self.apply(cmd, &route))
    }

    /// Rewinds the strands: the word and loop images go back to the identity
    /// while the dowels stay put.
    pub fn spool_reset(&self) -> BoxState {
        BoxState {
            word: BraidWord::identity(self.n).expect("n >= 1"),
            loops: EndoImages::identity(self.n),
            quandle: self
                .quandle
                .as_ref()
                .map(|_| QuandleElement::generators(self.n)),
            ..self.clone()
        }
    }

    fn plan(&self, cmd: &DragCommand) -> Result<Route> {
        let label = cmd.dowel;
        if label == 0 || label > self.n {
            return Err(Error::UnknownDowel(label));
        }
        if !cmd.target.is_valid() {
            return Err(Error::OffT);
        }
        let target = cmd.target.canonical();
        let current = self.dowels[label - 1];
        let stem = self.stem_dowel().filter(|&s| s != label);

        let waypoints = match (current, target) {
            (TPoint::Horizontal(s), TPoint::Vertical(_)) => {
                if s != 0.0 {
                    return Err(Error::NotAtJunction);
                }
                if let Some(other) = stem {
                    return Err(Error::StemOccupied(other));
                }
                vec![target]
            }
            (TPoint::Vertical(_), TPoint::Horizontal(s)) if s != 0.0 => {
                vec![TPoint::Horizontal(0.0), target]
            }
            _ => vec![target],
        };

        // A dowel parked under an occupied stem would tie with it in rank.
        if let (Some(other), TPoint::Horizontal(s)) = (stem, target) {
            if s == 0.0 {
                return Err(Error::Collision(other));
            }
        }

        let gap = self.min_gap();
        let mut from = current.to_point();
        for wp in &waypoints {
            let to = wp.to_point();
            for (idx, other) in self.dowels.iter().enumerate() {
                if idx + 1 != label && segment_distance(from, to, other.to_point()) < gap - EPS {
                    return Err(Error::Collision(idx + 1));
                }
            }
            from = to;
        }

        let letter = match (stem, current, target) {
            (Some(other), TPoint::Horizontal(s0), TPoint::Horizontal(s1))
                if (s0 < 0.0) != (s1 < 0.0) =>
            {
                let pos = |l: usize| self.rank.iter().position(|&r| r == l).expect("ranked");
                let lower = pos(label).min(pos(other)) as i32 + 1;
                Some(if s0 < s1 { lower } else { -lower })
            }
            _ => None,
        };
        Ok(Route { waypoints, letter })
    }

    fn apply(&self, cmd: &DragCommand, route: &Route) -> (BoxState, Vec<i32>) {
        let mut next = self.clone();
        next.dowels[cmd.dowel - 1] = *route.waypoints.last().expect("nonempty route");
        next.rank.sort_by(|&a, &b| {
            next.dowels[a - 1]
                .x()
                .total_cmp(&next.dowels[b - 1].x())
        });
        let mut letters = Vec::new();
        if let Some(k) = route.letter {
            next.word.push(k).expect("letter in range");
            next.loops.push_letter(k);
            if let Some(tuple) = next.quandle.as_mut() {
                quandle::act_letter(tuple, k);
            }
            letters.push(k);
        }
        (next, letters)
    }

    /// Checks every state invariant, describing the first violation found.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.dowels.len() != self.n || self.rank.len() != self.n {
            return Err("dowel or rank count differs from n".into());
        }
        if let Some(p) = self.dowels.iter().find(|p| !p.is_valid()) {
            return Err(format!("dowel off the T at {p:?}"));
        }
        let on_stem = self.dowels.iter().filter(|p| p.on_stem()).count();
        if on_stem > 1 {
            return Err(format!("{on_stem} dowels on the stem"));
        }
        let gap = self.min_gap();
        for a in 0..self.n {
            for b in a + 1..self.n {
                let d = self.dowels[a].to_point().distance(self.dowels[b].to_point());
                if d < gap - EPS {
                    return Err(format!("dowels {} and {} only {d} apart", a + 1, b + 1));
                }
            }
        }
        if self.rank.windows(2).any(|w| {
            self.dowels[w[0] - 1].x() >= self.dowels[w[1] - 1].x()
        }) {
            return Err(format!("rank {:?} does not match dowel order", self.rank));
        }
        if self.loops != EndoImages::artin_image(&self.word) {
            return Err("loop images differ from the Artin image of the word".into());
        }
        if let Some(tuple) = &self.quandle {
            let expected = quandle::braid_act(&self.word, &QuandleElement::generators(self.n))
                .map_err(|e| e.to_string())?;
            if *tuple != expected {
                return Err("quandle tuple differs from the action of the word".into());
            }
        }
        Ok(())
    }

    fn points(&self) -> Vec<Point> {
        self.dowels.iter().map(|p| p.to_point()).collect()
    }
}

fn segment_distance(a: Point, b: Point, p: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return a.distance(p);
    }
    let tau = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    Point::new(a.x + tau * dx, a.y + tau * dy).distance(p)
}

/// The drags that reproduce [`crate::tpage::t_normalize`] on a fresh box:
/// for each letter, shuttle into the crossing layout, climb, slide under,
/// descend and spread back out. Shuttles move one dowel at a time, leftward
/// movers from the left first and rightward movers from the right first, so
/// no dowel ever runs into a neighbour.
pub fn normalizing_drags(word: &BraidWord) -> Vec<DragCommand> {
    let n = word.n();
    let home = canonical_positions(n);
    let half = 0.5 * spacing(n);
    let mut xs = home.clone(); // by label - 1
    let mut order: Vec<usize> = (0..n).collect(); // labels - 1 by rank
    let mut out = Vec::new();

    fn shuttle(xs: &mut [f64], targets: &[f64], out: &mut Vec<DragCommand>) {
        let mut labels: Vec<usize> = (0..xs.len()).collect();
        labels.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
        let left: Vec<usize> = labels
            .iter()
            .copied()
            .filter(|&l| targets[l] < xs[l])
            .collect();
        let right: Vec<usize> = labels
            .iter()
            .rev()
            .copied()
            .filter(|&l| targets[l] > xs[l])
            .collect();
        for l in left.into_iter().chain(right) {
            xs[l] = targets[l];
            out.push(DragCommand {
                dowel: l + 1,
                target: TPoint::Horizontal(targets[l]),
            });
        }
    }

    for &k in word.letters() {
        let i = k.unsigned_abs() as usize - 1;
        let layout = crossing_layout(n, k);
        let mut targets = vec![0.0; n];
        for (r, &l) in order.iter().enumerate() {
            targets[l] = layout[r];
        }
        shuttle(&mut xs, &targets, &mut out);

        let (climber, slider, slide_to) = if k > 0 {
            (order[i + 1], order[i], half)
        } else {
            (order[i], order[i + 1], -half)
        };
        out.push(DragCommand {
            dowel: climber + 1,
            target: TPoint::Vertical(STEM_HEIGHT),
        });
        out.push(DragCommand {
            dowel: slider + 1,
            target: TPoint::Horizontal(slide_to),
        });
        xs[slider] = slide_to;
        out.push(DragCommand {
            dowel: climber + 1,
            target: TPoint::Horizontal(0.0),
        });

        order.swap(i, i + 1);
        let mut targets = vec![0.0; n];
        for (r, &l) in order.iter().enumerate() {
            targets[l] = home[r];
        }
        shuttle(&mut xs, &targets, &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Drag(DragCommand),
    Reset,
}

struct Session {
    state: BoxState,
    log: Vec<Command>,
    /// Dowel positions after each leg of motion since the last reset.
    trace: Vec<Vec<Point>>,
}

/// Holds the live sessions. Each session sits behind its own lock, so
/// commands to one session are serialised while different sessions proceed
/// independently.
#[derive(Default)]
pub struct Engine {
    next_id: AtomicU64,
    sessions: RwLock<HashMap<SessionId, Arc<Mutex<Session>>>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create_session(&self, n: usize, with_quandle: bool) -> Result<BoxState> {
        if !(1..=MAX_STRANDS).contains(&n) {
            return Err(Error::BadStrandCount(n));
        }
        let id = self.next_id.fetch_add(1, Ordering::Relaxed) + 1;
        let state = BoxState::new(id, n, with_quandle)?;
        let session = Session {
            trace: vec![state.points()],
            state: state.clone(),
            log: Vec::new(),
        };
        self.sessions
            .write()
            .expect("session map poisoned")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(state)
    }

    fn session(&self, id: SessionId) -> Result<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .expect("session map poisoned")
            .get(&id)
            .cloned()
            .ok_or(Error::UnknownSession(id))
    }

    pub fn drag(&self, id: SessionId, cmd: DragCommand) -> Result<(BoxState, Vec<i32>)> {
        let session = self.session(id)?;
        let mut session = session.lock().expect("session poisoned");
        let route = session.state.plan(&cmd)?;
        let (next, letters) = session.state.apply(&cmd, &route);
        let mut points = session.state.points();
        for wp in &route.waypoints {
            let p = wp.to_point();
            if points[cmd.dowel - 1] != p {
                points[cmd.dowel - 1] = p;
                session.trace.push(points.clone());
            }
        }
        session.state = next.clone();
        session.log.push(Command::Drag(cmd));
        Ok((next, letters))
    }

    pub fn reset(&self, id: SessionId) -> Result<BoxState> {
        let session = self.session(id)?;
        let mut session = session.lock().expect("session poisoned");
        session.state = session.state.spool_reset();
        session.trace = vec![session.state.points()];
        session.log.push(Command::Reset);
        Ok(session.state.clone())
    }

    pub fn state(&self, id: SessionId) -> Result<BoxState> {
        let session = self.session(id)?;
        let state = session.lock().expect("session poisoned").state.clone();
        Ok(state)
    }

    pub fn log(&self, id: SessionId) -> Result<Vec<Command>> {
        let session = self.session(id)?;
        let log = session.lock().expect("session poisoned").log.clone();
        Ok(log)
    }

    /// The dowel motion since the last reset, one keyframe per route leg.
    pub fn export_motion(&self, id: SessionId) -> Result<Motion> {
        let session = self.session(id)?;
        let session = session.lock().expect("session poisoned");
        let mut trace = session.trace.clone();
        if trace.len() == 1 {
            trace.push(trace[0].clone());
        }
        let keyframes = trace
            .into_iter()
            .enumerate()
            .map(|(t, points)| Keyframe {
                t: t as f64,
                points,
            })
            .collect();
        Motion::new(session.state.n, keyframes)
    }
}
