//! Motions confined to the T-shaped set `[-1, 1] x {0}  u  {0} x [0, 1]`.
//!
//! Every braid can be realised by points that only ever sit on the
//! horizontal arm or the vertical stem: to cross two neighbours, the right
//! one (for `+i`) climbs the stem and the left one slides underneath it along
//! the arm. The sliding point stays at `y = 0` while the climber is at
//! `y > 0`, so the slider is in front and the crossing is positive; for `-i`
//! the roles are mirrored.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::motion::{canonical_positions, Keyframe, Motion, Point};

/// Height the climbing point reaches on the stem.
pub const STEM_HEIGHT: f64 = 0.5;

/// A point of the T. `Vertical(0.0)` is the junction and canonicalises to
/// `Horizontal(0.0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "arm", content = "c")]
pub enum TPoint {
    #[serde(rename = "h")]
    Horizontal(f64),
    #[serde(rename = "v")]
    Vertical(f64),
}

impl TPoint {
    pub fn canonical(self) -> Self {
        match self {
            TPoint::Vertical(u) if u == 0.0 => TPoint::Horizontal(0.0),
            other => other,
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            TPoint::Horizontal(s) => (-1.0..=1.0).contains(&s),
            TPoint::Vertical(u) => (0.0..=1.0).contains(&u),
        }
    }

    pub fn to_point(self) -> Point {
        match self {
            TPoint::Horizontal(s) => Point::new(s, 0.0),
            TPoint::Vertical(u) => Point::new(0.0, u),
        }
    }

    /// x-coordinate; every stem point sits at 0.
    pub fn x(self) -> f64 {
        match self {
            TPoint::Horizontal(s) => s,
            TPoint::Vertical(_) => 0.0,
        }
    }

    pub fn on_stem(self) -> bool {
        matches!(self.canonical(), TPoint::Vertical(_))
    }
}

/// The spacing unit `1/(n + 1)`; the closest two points ever get is half of it.
pub fn spacing(n: usize) -> f64 {
    1.0 / (n as f64 + 1.0)
}

/// Target x-coordinates, by rank, for the points on the arm just before the
/// stem manoeuvre for letter `k`. The climber sits at 0 and the slider half a
/// spacing unit away on its side; everybody else is packed one unit apart.
pub fn crossing_layout(n: usize, k: i32) -> Vec<f64> {
    let d = spacing(n);
    let i = k.unsigned_abs() as usize - 1; // zero-based rank of the lower point
    let mut xs = vec![0.0; n];
    if k > 0 {
        // slider at rank i, climber at rank i + 1
        xs[i] = -0.5 * d;
        xs[i + 1] = 0.0;
        for r in 0..i {
            xs[r] = -0.5 * d - (i - r) as f64 * d;
        }
        for r in i + 2..n {
            xs[r] = (r - i - 1) as f64 * d;
        }
    } else {
        // climber at rank i, slider at rank i + 1
        xs[i] = 0.0;
        xs[i + 1] = 0.5 * d;
        for r in 0..i {
            xs[r] = -((i - r) as f64) * d;
        }
        for r in i + 2..n {
            xs[r] = 0.5 * d + (r - i - 1) as f64 * d;
        }
    }
    xs
}

/// Realises `word` by a loop that never leaves the T.
///
/// Each letter takes five segments: shuttle into [`crossing_layout`], climb,
/// slide under, descend, and spread back to the canonical positions.
pub fn t_normalize(word: &BraidWord) -> Motion {
    let n = word.n();
    let home = canonical_positions(n);
    let d = spacing(n);
    let mut order: Vec<usize> = (0..n).collect();
    let mut points: Vec<Point> = home.iter().map(|&x| Point::new(x, 0.0)).collect();
    let mut keyframes = vec![Keyframe {
        t: 0.0,
        points: points.clone(),
    }];
    let push = |keyframes: &mut Vec<Keyframe>, points: &[Point]| {
        let t = keyframes.len() as f64;
        keyframes.push(Keyframe {
            t,
            points: points.to_vec(),
        });
    };

    for &k in word.letters() {
        let i = k.unsigned_abs() as usize - 1;
        let layout = crossing_layout(n, k);
        for (r, &label) in order.iter().enumerate() {
            points[label] = Point::new(layout[r], 0.0);
        }
        push(&mut keyframes, &points);

        let (climber, slider, slide_to) = if k > 0 {
            (order[i + 1], order[i], 0.5 * d)
        } else {
            (order[i], order[i + 1], -0.5 * d)
        };
        points[climber] = Point::new(0.0, STEM_HEIGHT);
        push(&mut keyframes, &points);
        points[slider] = Point::new(slide_to, 0.0);
        push(&mut keyframes, &points);
        points[climber] = Point::new(0.0, 0.0);
        push(&mut keyframes, &points);

        order.swap(i, i + 1);
        for (r, &label) in order.iter().enumerate() {
            points[label] = Point::new(home[r], 0.0);
        }
        push(&mut keyframes, &points);
    }
    if keyframes.len() == 1 {
        push(&mut keyframes, &points);
    }
    Motion::new(n, keyframes).expect("normalised motion is well formed")
}

fn on_horizontal(p: Point, tol: f64) -> bool {
    p.y.abs() <= tol && p.x.abs() <= 1.0 + tol
}

fn on_vertical(p: Point, tol: f64) -> bool {
    p.x.abs() <= tol && p.y >= -tol && p.y <= 1.0 + tol
}

/// Whether the motion stays inside the T (within `tol`). Linear segments
/// stay inside exactly when both endpoints of each point lie on a common arm.
pub fn check_in_t(motion: &Motion, tol: f64) -> bool {
    let frames = motion.keyframes();
    let inside = frames.iter().all(|k| {
        k.points
            .iter()
            .all(|&p| on_horizontal(p, tol) || on_vertical(p, tol))
    });
    inside
        && frames.windows(2).all(|w| {
            w[0].points.iter().zip(&w[1].points).all(|(&p, &q)| {
                (on_horizontal(p, tol) && on_horizontal(q, tol))
                    || (on_vertical(p, tol) && on_vertical(q, tol))
            })
        })
}
