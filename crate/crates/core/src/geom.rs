//! Scalar-generic geometry on the integer lattice.

use crate::grid::Point;
use crate::scalar::Scalar;

/// Squared Euclidean distance between cell centers, exact in integers.
pub fn sq_dist(a: Point, b: Point) -> i64 {
    let dx = (a.x - b.x) as i64;
    let dy = (a.y - b.y) as i64;
    let dz = (a.z - b.z) as i64;
    dx * dx + dy * dy + dz * dz
}

/// Euclidean distance between cell centers in metres.
pub fn euclidean<S: Scalar>(a: Point, b: Point) -> S {
    S::from_coord(sq_dist(a, b)).sqrt()
}

/// Sum of Euclidean segment lengths along a point sequence.
pub fn path_length<S: Scalar>(points: &[Point]) -> S {
    let mut total = S::zero();
    for w in points.windows(2) {
        total += euclidean(w[0], w[1]);
    }
    total
}

/// Octile-family heuristic: the exact shortest-path cost on an empty
/// grid under unit/sqrt(2)/sqrt(3) move costs. Admissible and
/// consistent for the standard move sets.
pub fn octile<S: Scalar>(a: Point, b: Point) -> S {
    let mut d = [
        (a.x - b.x).unsigned_abs() as i64,
        (a.y - b.y).unsigned_abs() as i64,
        (a.z - b.z).unsigned_abs() as i64,
    ];
    d.sort_unstable_by(|x, y| y.cmp(x));
    let [hi, mid, lo] = d;
    let sqrt2 = S::from_f64(std::f64::consts::SQRT_2).unwrap();
    let sqrt3 = S::from_f64(1.732_050_807_568_877_2).unwrap();
    S::from_coord(hi - mid) + sqrt2 * S::from_coord(mid - lo) + sqrt3 * S::from_coord(lo)
}

/// Absolute turning angles, in degrees, between consecutive segments.
/// Zero-length segments are skipped.
pub fn turning_angles_deg<S: Scalar>(points: &[Point]) -> Vec<S> {
    let mut segs = Vec::new();
    for w in points.windows(2) {
        let d = w[1].sub(w[0]);
        if d != Point::new3(0, 0, 0) {
            segs.push(d);
        }
    }
    let mut out = Vec::new();
    for w in segs.windows(2) {
        let (u, v) = (w[0], w[1]);
        let dot = (u.x as i64 * v.x as i64 + u.y as i64 * v.y as i64 + u.z as i64 * v.z as i64) as f64;
        let nu = (sq_dist(Point::new3(0, 0, 0), u) as f64).sqrt();
        let nv = (sq_dist(Point::new3(0, 0, 0), v) as f64).sqrt();
        let cos = (dot / (nu * nv)).clamp(-1.0, 1.0);
        out.push(S::from_f64(cos.acos().to_degrees()).unwrap());
    }
    out
}

/// Every cell the real segment between the centers of `a` and `b`
/// touches, in traversal order. Cells the segment merely grazes at a
/// corner or edge are included.
///
/// Exact integer arithmetic throughout: coordinates are doubled so cell
/// boundaries fall on odd integers, and crossing parameters are compared
/// as fractions by cross-multiplication.
pub fn supercover(a: Point, b: Point) -> Vec<Point> {
    if a == b {
        return vec![a];
    }
    let origin = [2 * a.x as i64, 2 * a.y as i64, 2 * a.z as i64];
    let delta = [
        2 * (b.x - a.x) as i64,
        2 * (b.y - a.y) as i64,
        2 * (b.z - a.z) as i64,
    ];

    // Boundary-crossing parameters t = num/den per axis, den > 0.
    #[derive(Clone, Copy)]
    struct Crossing {
        num: i64,
        den: i64,
        axis: usize,
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    for axis in 0..3 {
        let d = delta[axis];
        if d == 0 {
            continue;
        }
        let step = d.signum();
        // Odd planes strictly between origin and origin + delta.
        let mut plane = origin[axis] + step;
        let end = origin[axis] + d;
        while (end - plane) * step > 0 {
            let (num, den) = if d > 0 {
                (plane - origin[axis], d)
            } else {
                (origin[axis] - plane, -d)
            };
            crossings.push(Crossing { num, den, axis });
            plane += 2 * step;
        }
    }
    crossings.sort_by(|p, q| {
        (p.num as i128 * q.den as i128)
            .cmp(&(q.num as i128 * p.den as i128))
            .then(p.axis.cmp(&q.axis))
    });

    let step = [
        delta[0].signum() as i32,
        delta[1].signum() as i32,
        delta[2].signum() as i32,
    ];
    let mut cur = a;
    let mut cells = vec![a];
    let mut i = 0;
    while i < crossings.len() {
        let mut group = vec![crossings[i].axis];
        let mut j = i + 1;
        while j < crossings.len()
            && crossings[i].num as i128 * crossings[j].den as i128
                == crossings[j].num as i128 * crossings[i].den as i128
        {
            group.push(crossings[j].axis);
            j += 1;
        }
        // Simultaneous crossings pass through a cell corner or edge;
        // every adjacent cell containing that point is touched.
        for mask in 1u32..(1 << group.len()) {
            let mut c = cur;
            for (bit, &axis) in group.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    c = c.with_axis(axis, c.axis(axis) + step[axis]);
                }
            }
            cells.push(c);
        }
        for &axis in &group {
            cur = cur.with_axis(axis, cur.axis(axis) + step[axis]);
        }
        i = j;
    }
    cells
}

/// Summary statistics over a sample.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Stats<S> {
    pub mean: S,
    pub std: S,
    pub min: S,
    pub max: S,
    pub count: usize,
}

impl<S: Scalar> Stats<S> {
    /// Population statistics; `None` for an empty sample.
    pub fn compute(values: &[S]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = S::from_count(values.len());
        let mut sum = S::zero();
        let mut min = values[0];
        let mut max = values[0];
        for &v in values {
            sum += v;
            if v < min {
                min = v;
            }
            if v > max {
                max = v;
            }
        }
        let mean = sum / n;
        let mut var = S::zero();
        for &v in values {
            let d = v - mean;
            var += d * d;
        }
        Some(Stats { mean, std: (var / n).sqrt(), min, max, count: values.len() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octile_matches_hand_values() {
        let h: f64 = octile(Point::new2(0, 0), Point::new2(3, 1));
        assert!((h - (2.0 + 2.0f64.sqrt())).abs() < 1e-12);
        let h3: f64 = octile(Point::new3(0, 0, 0), Point::new3(2, 2, 2));
        assert!((h3 - 2.0 * 1.732_050_807_568_877_2).abs() < 1e-12);
    }

    #[test]
    fn octile_generic_f32() {
        let h: f32 = octile(Point::new2(0, 0), Point::new2(3, 1));
        assert!((h - (2.0 + 2.0f32.sqrt())).abs() < 1e-5);
        let d: f32 = euclidean(Point::new2(0, 0), Point::new2(3, 4));
        assert!((d - 5.0).abs() < 1e-6);
    }

    #[test]
    fn supercover_straight_and_diagonal() {
        let line = supercover(Point::new2(0, 0), Point::new2(3, 0));
        assert_eq!(
            line,
            vec![
                Point::new2(0, 0),
                Point::new2(1, 0),
                Point::new2(2, 0),
                Point::new2(3, 0)
            ]
        );
        // Exact diagonal passes through corners: both side cells touched.
        let diag = supercover(Point::new2(0, 0), Point::new2(2, 2));
        assert!(diag.contains(&Point::new2(1, 0)));
        assert!(diag.contains(&Point::new2(0, 1)));
        assert!(diag.contains(&Point::new2(1, 1)));
        assert_eq!(diag.len(), 3 + 2 * 2);
    }

    #[test]
    fn supercover_is_symmetric_as_a_set() {
        let f = supercover(Point::new2(0, 1), Point::new2(4, 3));
        let mut r = supercover(Point::new2(4, 3), Point::new2(0, 1));
        r.reverse();
        let mut fs = f.clone();
        fs.sort();
        let mut rs = r.clone();
        rs.sort();
        assert_eq!(fs, rs);
    }

    #[test]
    fn turning_angles_basics() {
        let straight: Vec<f64> =
            turning_angles_deg(&[Point::new2(0, 0), Point::new2(1, 0), Point::new2(2, 0)]);
        assert_eq!(straight, vec![0.0]);
        let ell: Vec<f64> =
            turning_angles_deg(&[Point::new2(0, 0), Point::new2(0, 3), Point::new2(3, 3)]);
        assert_eq!(ell.len(), 1);
        assert!((ell[0] - 90.0).abs() < 1e-9);
    }

    #[test]
    fn stats_basics() {
        let s = Stats::<f64>::compute(&[0.0, 10.0, 20.0]).unwrap();
        assert!((s.mean - 10.0).abs() < 1e-12);
        assert_eq!(s.min, 0.0);
        assert_eq!(s.max, 20.0);
        assert_eq!(s.count, 3);
        assert!(Stats::<f64>::compute(&[]).is_none());
    }
}
