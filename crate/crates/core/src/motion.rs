//! Piecewise-linear motions of labelled points in the plane and their
//! correspondence with braid words.
//!
//! A crossing happens whenever two points swap their order along the x axis.
//! The viewer looks from `y = -inf`, so at the moment of the swap the point
//! with the smaller `y` is in front. A swap in which the point coming from the
//! left is in front is the letter `+i`, where `i` is the lower x-rank of the
//! pair just before the swap.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Minimum distance between two points of a validated configuration.
pub const MIN_SEPARATION: f64 = 1e-6;
/// Minimum relative x-velocity at a crossing.
pub const MIN_CROSSING_SPEED: f64 = 1e-9;
/// Crossing events closer than this in time count as simultaneous.
const TIME_EPS: f64 = 1e-12;
/// Two x-coordinates closer than this count as coincident.
const X_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn lerp(self, other: Point, tau: f64) -> Point {
        Point {
            x: self.x + (other.x - self.x) * tau,
            y: self.y + (other.y - self.y) * tau,
        }
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Keyframe {
    pub t: f64,
    pub points: Vec<Point>,
}

/// A keyframed motion of `n` labelled points, linearly interpolated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Motion {
    n: usize,
    keyframes: Vec<Keyframe>,
}

#[derive(Deserialize)]
struct RawMotion {
    n: usize,
    keyframes: Vec<Keyframe>,
}

impl<'de> Deserialize<'de> for Motion {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMotion::deserialize(de)?;
        Motion::new(raw.n, raw.keyframes).map_err(serde::de::Error::custom)
    }
}

impl Motion {
    /// Checks the structural invariants: at least two keyframes, strictly
    /// increasing finite times and `n` finite points per keyframe.
    /// Separation is a property reported by [`Motion::validate`].
    pub fn new(n: usize, keyframes: Vec<Keyframe>) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadStrandCount(n));
        }
        if keyframes.len() < 2 {
            return Err(Error::InvalidMotion("need at least two keyframes".into()));
        }
        for (idx, frame) in keyframes.iter().enumerate() {
            if frame.points.len() != n {
                return Err(Error::InvalidMotion(format!(
                    "keyframe {idx} has {} points, expected {n}",
                    frame.points.len()
                )));
            }
            if !frame.t.is_finite() || frame.points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite())
            {
                return Err(Error::InvalidMotion(format!(
                    "keyframe {idx} has a non-finite value"
                )));
            }
        }
        if let Some(idx) = keyframes.windows(2).position(|w| w[1].t <= w[0].t) {
            return Err(Error::InvalidMotion(format!(
                "keyframe times not strictly increasing at keyframe {}",
                idx + 1
            )));
        }
        Ok(Self { n, keyframes })
    }

    /// A motion that holds `points` still for one unit of time.
    pub fn constant(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        Self::new(
            n,
            vec![
                Keyframe {
                    t: 0.0,
                    points: points.clone(),
                },
                Keyframe { t: 1.0, points },
            ],
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidMotion(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("motion serialises")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn keyframes(&self) -> &[Keyframe] {
        &self.keyframes
    }

    pub fn start(&self) -> &[Point] {
        &self.keyframes[0].points
    }

    pub fn end(&self) -> &[Point] {
        &self.keyframes[self.keyframes.len() - 1].points
    }

    /// Position of every point at time `t`, clamped to the motion's span.
    pub fn at(&self, t: f64) -> Vec<Point> {
        let frames = &self.keyframes;
        let seg = frames
            .windows(2)
            .position(|w| t <= w[1].t)
            .unwrap_or(frames.len() - 2);
        let (a, b) = (&frames[seg], &frames[seg + 1]);
        let tau = ((t - a.t) / (b.t - a.t)).clamp(0.0, 1.0);
        a.points
            .iter()
            .zip(&b.points)
            .map(|(p, q)| p.lerp(*q, tau))
            .collect()
    }

    /// The same path traversed backwards in time.
    pub fn reversed(&self) -> Motion {
        let end = self.keyframes[self.keyframes.len() - 1].t;
        let keyframes = self
            .keyframes
            .iter()
            .rev()
            .map(|k| Keyframe {
                t: end - k.t,
                points: k.points.clone(),
            })
            .collect();
        Motion {
            n: self.n,
            keyframes,
        }
    }

    /// Translates every keyframe horizontally by `dx`.
    pub fn shifted(&self, dx: f64) -> Motion {
        let keyframes = self
            .keyframes
            .iter()
            .map(|k| Keyframe {
                t: k.t,
                points: k.points.iter().map(|p| Point::new(p.x + dx, p.y)).collect(),
            })
            .collect();
        Motion {
            n: self.n,
            keyframes,
        }
    }

    /// Whether the final configuration equals the initial one as an unordered
    /// set, with exact coordinate comparison.
    pub fn is_loop(&self) -> bool {
        let sorted = |pts: &[Point]| {
            let mut v: Vec<Point> = pts.to_vec();
            v.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            v
        };
        sorted(self.start()) == sorted(self.end())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            is_loop: self.is_loop(),
            generic: true,
            separated: true,
            events: Vec::new(),
            violations: Vec::new(),
        };

        for (idx, frame) in self.keyframes.iter().enumerate() {
            if let Some((a, b)) = closest_pair_below(&frame.points, MIN_SEPARATION) {
                report.separated = false;
                report.violations.push(format!(
                    "points {} and {} closer than {MIN_SEPARATION} at keyframe {idx}",
                    a + 1,
                    b + 1
                ));
            }
        }

        let mut raw_events = Vec::new();
        for (seg, pair) in self.keyframes.windows(2).enumerate() {
            let (k0, k1) = (&pair[0], &pair[1]);
            for a in 0..self.n {
                for b in a + 1..self.n {
                    let dx0 = k0.points[a].x - k0.points[b].x;
                    let dx1 = k1.points[a].x - k1.points[b].x;
                    if dx0 == 0.0 || dx1 == 0.0 {
                        report.generic = false;
                        let at = if dx0 == 0.0 { seg } else { seg + 1 };
                        report.violations.push(format!(
                            "points {} and {} share an x-coordinate at keyframe {at}",
                            a + 1,
                            b + 1
                        ));
                        continue;
                    }
                    if (dx0 < 0.0) == (dx1 < 0.0) {
                        continue;
                    }
                    let tau = dx0 / (dx0 - dx1);
                    let t = k0.t + tau * (k1.t - k0.t);
                    let speed = (dx1 - dx0) / (k1.t - k0.t);
                    if speed.abs() <= MIN_CROSSING_SPEED {
                        report.generic = false;
                        report.violations.push(format!(
                            "points {} and {} cross too slowly at t = {t}",
                            a + 1,
                            b + 1
                        ));
                    }
                    raw_events.push(RawEvent { t, seg, tau, a, b });
                }
            }
        }
        raw_events.sort_by(|p, q| p.t.total_cmp(&q.t));

        for ev in &raw_events {
            let (k0, k1) = (&self.keyframes[ev.seg], &self.keyframes[ev.seg + 1]);
            let pts: Vec<Point> = k0
                .points
                .iter()
                .zip(&k1.points)
                .map(|(p, q)| p.lerp(*q, ev.tau))
                .collect();
            let (pa, pb) = (pts[ev.a], pts[ev.b]);
            if (pa.y - pb.y).abs() < MIN_SEPARATION {
                report.generic = false;
                report.separated = false;
                report.violations.push(format!(
                    "points {} and {} collide at t = {}",
                    ev.a + 1,
                    ev.b + 1,
                    ev.t
                ));
            }
            let x = 0.5 * (pa.x + pb.x);
            if let Some(c) =
                (0..self.n).find(|&c| c != ev.a && c != ev.b && (pts[c].x - x).abs() <= X_EPS)
            {
                report.generic = false;
                report.violations.push(format!(
                    "points {}, {} and {} share an x-coordinate at t = {}",
                    ev.a + 1,
                    ev.b + 1,
                    c + 1,
                    ev.t
                ));
            }
            if let Some((a, b)) = closest_pair_below(&pts, MIN_SEPARATION) {
                report.separated = false;
                report.violations.push(format!(
                    "points {} and {} closer than {MIN_SEPARATION} at t = {}",
                    a + 1,
                    b + 1,
                    ev.t
                ));
            }
        }

        if report.generic {
            report.events = self.resolve_events(&raw_events);
        }
        report
    }

    /// Turns raw pairwise coincidences into signed crossing events by tracking
    /// the x-order. Assumes the motion is generic.
    fn resolve_events(&self, raw: &[RawEvent]) -> Vec<CrossingEvent> {
        let start = self.start();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| start[a].x.total_cmp(&start[b].x));
        let mut rank = vec![0; self.n];
        for (r, &label) in order.iter().enumerate() {
            rank[label] = r;
        }

        let mut events = Vec::with_capacity(raw.len());
        for ev in raw {
            let (left, right) = if rank[ev.a] < rank[ev.b] {
                (ev.a, ev.b)
            } else {
                (ev.b, ev.a)
            };
            let lower = rank[left];
            // Simultaneous crossings may reach here out of order; the
            // compiler rejects them before relying on adjacency.
            let adjacent = rank[right] == lower + 1;
            let (k0, k1) = (&self.keyframes[ev.seg], &self.keyframes[ev.seg + 1]);
            let y_left = k0.points[left].lerp(k1.points[left], ev.tau).y;
            let y_right = k0.points[right].lerp(k1.points[right], ev.tau).y;
            let sign = if y_left < y_right { 1 } else { -1 };
            events.push(CrossingEvent {
                t: ev.t,
                position: lower + 1,
                sign,
                labels: (left + 1, right + 1),
                adjacent,
            });
            order.swap(rank[left], rank[right]);
            rank.swap(left, right);
        }
        events
    }

    /// Reads the braid word off the motion.
    pub fn compile(&self) -> Result<BraidWord> {
        let report = self.validate();
        if !report.generic {
            return Err(Error::NotGeneric(report.violations.join("; ")));
        }
        for pair in report.events.windows(2) {
            if pair[1].t - pair[0].t <= TIME_EPS {
                return Err(Error::SimultaneousEvents(pair[0].t, pair[1].t));
            }
        }
        if let Some(ev) = report.events.iter().find(|e| !e.adjacent) {
            return Err(Error::NotGeneric(format!(
                "points {} and {} swap across another point at t = {}",
                ev.labels.0, ev.labels.1, ev.t
            )));
        }
        BraidWord::new(
            self.n,
            report
                .events
                .iter()
                .map(|e| e.sign * e.position as i32)
                .collect(),
        )
    }

    /// The canonical motion realising `word`: points start on the x-axis at
    /// [`canonical_positions`] and each letter is a local two-segment swap of
    /// the points at ranks `i, i + 1`, the over point dipping to `y < 0` and
    /// the under point rising to `y > 0`.
    pub fn from_braid(word: &BraidWord) -> Motion {
        let n = word.n();
        let home = canonical_positions(n);
        let mut points: Vec<Point> = home.iter().map(|&x| Point::new(x, 0.0)).collect();
        // order[r] = label (index) of the point at rank r
        let mut order: Vec<usize> = (0..n).collect();
        let mut keyframes = vec![Keyframe {
            t: 0.0,
            points: points.clone(),
        }];
        let mut t = 0.0;

        for &k in word.letters() {
            let i = k.unsigned_abs() as usize - 1;
            let (left, right) = (order[i], order[i + 1]);
            let (xl, xr) = (home[i], home[i + 1]);
            let gap = xr - xl;
            let mid = 0.5 * (xl + xr);
            let (q, a) = (0.25 * gap, 0.5 * gap);
            // Left point is over for a positive letter.
            let y_left = if k > 0 { -a } else { a };
            points[left] = Point::new(mid + q, y_left);
            points[right] = Point::new(mid - q, -y_left);
            t += 1.0;
            keyframes.push(Keyframe {
                t,
                points: points.clone(),
            });
            points[left] = Point::new(xr, 0.0);
            points[right] = Point::new(xl, 0.0);
            t += 1.0;
            keyframes.push(Keyframe {
                t,
                points: points.clone(),
            });
            order.swap(i, i + 1);
        }
        if keyframes.len() == 1 {
            keyframes.push(Keyframe { t: 1.0, points });
        }
        Motion { n, keyframes }
    }
}

/// Home positions `x_i = -1 + 2i/(n + 1)` on the horizontal axis.
pub fn canonical_positions(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| -1.0 + 2.0 * i as f64 / (n as f64 + 1.0))
        .collect()
}

fn closest_pair_below(points: &[Point], bound: f64) -> Option<(usize, usize)> {
    let n = points.len();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| points[a].distance(points[b]) < bound)
        .min_by(|&(a, b), &(c, d)| {
            points[a]
                .distance(points[b])
                .partial_cmp(&points[c].distance(points[d]))
                .unwrap_or(Ordering::Equal)
        })
}

struct RawEvent {
    t: f64,
    seg: usize,
    tau: f64,
    a: usize,
    b: usize,
}

/// Two points swapping x-order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossingEvent {
    pub t: f64,
    /// Lower x-rank (1-based) of the pair just before the event.
    pub position: usize,
    pub sign: i32,
    /// Labels of the (left, right) points just before the event.
    pub labels: (usize, usize),
    #[serde(skip)]
    adjacent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub is_loop: bool,
    pub generic: bool,
    /// Minimum separation holds at all keyframes and event times.
    pub separated: bool,
    /// Crossing events in time order; only filled for generic motions.
    pub events: Vec<CrossingEvent>,
    pub violations: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(t: f64, pts: &[(f64, f64)]) -> Keyframe {
        Keyframe {
            t,
            points: pts.iter().map(|&(x, y)| Point::new(x, y)).collect(),
        }
    }

    fn swap_motion() -> Motion {
        Motion::new(
            2,
            vec![
                frame(0.0, &[(-1.0, 1.0), (1.0, -1.0)]),
                frame(1.0, &[(1.0, 1.0), (-1.0, -1.0)]),
                frame(2.0, &[(1.0, -1.0), (-1.0, 1.0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn constant_motion_is_a_generic_loop() {
        let m = Motion::constant(vec![Point::new(-0.5, 0.0), Point::new(0.5, 0.0)]).unwrap();
        let r = m.validate();
        assert!(r.is_loop && r.generic && r.separated);
        assert!(r.events.is_empty());
        assert!(m.compile().unwrap().is_empty());
    }

    #[test]
    fn swap_motion_compiles_to_negative_letter() {
        let m = swap_motion();
        let r = m.validate();
        assert!(r.is_loop && r.generic);
        assert_eq!(r.events.len(), 1);
        assert_eq!(r.events[0].t, 0.5);
        assert_eq!(r.events[0].labels, (1, 2));
        assert_eq!(m.compile().unwrap().letters(), &[-1]);
    }

    #[test]
    fn shared_x_at_keyframe_is_not_generic() {
        let m = Motion::new(
            2,
            vec![
                frame(0.0, &[(0.0, 1.0), (0.0, -1.0)]),
                frame(1.0, &[(-1.0, 1.0), (1.0, -1.0)]),
            ],
        )
        .unwrap();
        assert!(!m.validate().generic);
        assert!(matches!(m.compile(), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn head_on_collision_is_not_generic() {
        let m = Motion::new(
            2,
            vec![
                frame(0.0, &[(-1.0, 0.0), (1.0, 0.0)]),
                frame(1.0, &[(1.0, 0.0), (-1.0, 0.0)]),
            ],
        )
        .unwrap();
        let r = m.validate();
        assert!(!r.generic);
        assert!(!r.separated);
    }

    #[test]
    fn three_points_sharing_x_is_not_generic() {
        let m = Motion::new(
            3,
            vec![
                frame(0.0, &[(-1.0, -1.0), (1.0, 1.0), (0.0, 0.5)]),
                frame(1.0, &[(1.0, -1.0), (-1.0, 1.0), (0.0, 0.5)]),
            ],
        )
        .unwrap();
        let r = m.validate();
        assert!(!r.generic);
        assert!(r.violations.iter().any(|v| v.contains("share an x")));
    }

    #[test]
    fn simultaneous_events_are_rejected() {
        let m = Motion::new(
            4,
            vec![
                frame(0.0, &[(-3.0, 0.0), (-2.0, 1.0), (2.0, 0.0), (3.0, 1.0)]),
                frame(1.0, &[(-2.0, 0.0), (-3.0, 1.0), (3.0, 0.0), (2.0, 1.0)]),
            ],
        )
        .unwrap();
        assert!(m.validate().generic);
        assert!(matches!(m.compile(), Err(Error::SimultaneousEvents(..))));
    }

    #[test]
    fn structural_errors() {
        assert!(Motion::new(1, vec![frame(0.0, &[(0.0, 0.0)])]).is_err());
        assert!(Motion::new(
            1,
            vec![frame(0.0, &[(0.0, 0.0)]), frame(0.0, &[(0.0, 0.0)])]
        )
        .is_err());
        assert!(Motion::new(
            2,
            vec![frame(0.0, &[(0.0, 0.0)]), frame(1.0, &[(0.0, 0.0)])]
        )
        .is_err());
        assert!(Motion::new(
            1,
            vec![frame(0.0, &[(f64::NAN, 0.0)]), frame(1.0, &[(0.0, 0.0)])]
        )
        .is_err());
    }

    #[test]
    fn json_format() {
        let m = swap_motion();
        let text = m.to_json();
        assert!(text.starts_with(r#"{"n":2,"keyframes":[{"t":0.0,"points":[[-1.0,1.0],[1.0,-1.0]]}"#));
        assert_eq!(Motion::from_json(&text).unwrap(), m);
        let parsed =
            Motion::from_json(r#"{"n":1,"keyframes":[{"t":0,"points":[[0,0]]},{"t":2,"points":[[1,0]]}]}"#)
                .unwrap();
        assert_eq!(parsed.keyframes()[1].points[0], Point::new(1.0, 0.0));
        assert!(Motion::from_json(r#"{"n":1,"keyframes":[]}"#).is_err());
        assert!(Motion::from_json("not json").is_err());
    }

    #[test]
    fn braid_to_motion_examples() {
        let w = BraidWord::identity(3).unwrap();
        let m = Motion::from_braid(&w);
        assert_eq!(m.keyframes().len(), 2);
        assert_eq!(m.start(), m.end());
        let home = canonical_positions(3);
        assert_eq!(m.start().iter().map(|p| p.x).collect::<Vec<_>>(), home);

        let one = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(Motion::from_braid(&one).compile().unwrap(), one);

        let two = BraidWord::new(2, vec![1, 1]).unwrap();
        let m = Motion::from_braid(&two);
        assert_eq!(m.compile().unwrap(), two);
        assert!(m.is_loop());
        assert_eq!(m.start(), m.end());

        let w = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        assert_eq!(Motion::from_braid(&w).compile().unwrap(), w);
    }

    #[test]
    fn interpolation() {
        let m = swap_motion();
        assert_eq!(m.at(0.5), vec![Point::new(0.0, 1.0), Point::new(0.0, -1.0)]);
        assert_eq!(m.at(-1.0), m.start());
        assert_eq!(m.at(9.0), m.end());
    }

    #[test]
    fn reversal_and_shift() {
        let m = swap_motion();
        assert_eq!(m.reversed().compile().unwrap().letters(), &[1]);
        assert_eq!(m.reversed().reversed(), m);
        assert_eq!(m.shifted(3.5).compile().unwrap().letters(), &[-1]);
    }
}
