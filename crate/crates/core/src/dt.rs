//! Exact Euclidean distance-to-nearest-obstacle field.
//!
//! Separable lower-envelope transform per axis on squared distances,
//! which is exact for integer seed positions. The map border counts as
//! an obstacle half a cell beyond the outermost cell centers, so a free
//! border cell is 0.5 m from the wall.

use crate::grid::{GridMap, Point};
use crate::scalar::Scalar;

/// Per-cell distance to the nearest obstacle, in metres.
#[derive(Clone, Debug)]
pub struct DistanceField<S> {
    dims: [usize; 3],
    values: Vec<S>,
}

impl<S: Scalar> DistanceField<S> {
    pub fn get(&self, p: Point) -> S {
        let idx =
            p.x as usize + self.dims[0] * (p.y as usize + self.dims[1] * p.z as usize);
        self.values[idx]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Computes the distance field for a map. Blocked cells map to zero.
pub fn distance_transform<S: Scalar>(map: &GridMap) -> DistanceField<S> {
    let dims = [
        map.extent(0) as usize,
        if map.dim() >= 2 { map.extent(1) as usize } else { 1 },
        if map.dim() == 3 { map.extent(2) as usize } else { 1 },
    ];
    let n = dims[0] * dims[1] * dims[2];
    let inf = S::infinity();
    let mut sq: Vec<S> = map
        .cells()
        .iter()
        .map(|&blocked| if blocked { S::zero() } else { inf })
        .collect();

    // Sweep each axis with the 1D squared-distance transform.
    let strides = [1usize, dims[0], dims[0] * dims[1]];
    let mut line: Vec<S> = Vec::new();
    for axis in 0..3 {
        if dims[axis] <= 1 {
            continue;
        }
        let len = dims[axis];
        let stride = strides[axis];
        for base in line_bases(&dims, axis) {
            line.clear();
            line.extend((0..len).map(|i| sq[base + i * stride]));
            let out = dt_1d(&line);
            for (i, v) in out.into_iter().enumerate() {
                sq[base + i * stride] = v;
            }
        }
    }

    let half = S::from_f64(0.5).unwrap();
    let mut values = Vec::with_capacity(n);
    for idx in 0..n {
        let p = map.point_at(idx);
        if map.cells()[idx] {
            values.push(S::zero());
            continue;
        }
        let mut border = S::infinity();
        for axis in 0..map.dim() as usize {
            let c = p.axis(axis) as i64;
            let edge = S::from_coord(c.min(dims[axis] as i64 - 1 - c)) + half;
            if edge < border {
                border = edge;
            }
        }
        values.push(sq[idx].sqrt().min(border));
    }
    DistanceField { dims, values }
}

fn line_bases(dims: &[usize; 3], axis: usize) -> Vec<usize> {
    let mut bases = Vec::new();
    let strides = [1usize, dims[0], dims[0] * dims[1]];
    let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
    for i in 0..dims[others[0]] {
        for j in 0..dims[others[1]] {
            bases.push(i * strides[others[0]] + j * strides[others[1]]);
        }
    }
    bases
}

/// 1D squared-distance transform by lower envelope of parabolas.
fn dt_1d<S: Scalar>(f: &[S]) -> Vec<S> {
    let n = f.len();
    let mut v = vec![0usize; n]; // parabola apexes
    let mut z = vec![S::zero(); n + 1]; // envelope boundaries
    let mut k = 0usize;
    let two = S::from_f64(2.0).unwrap();
    v[0] = 0;
    z[0] = S::neg_infinity();
    z[1] = S::infinity();
    for q in 1..n {
        if f[q] == S::infinity() {
            continue;
        }
        let qs = S::from_count(q);
        loop {
            let p = v[k];
            if f[p] == S::infinity() {
                // Unreached apex: the new parabola dominates everywhere.
                if k == 0 {
                    v[0] = q;
                    z[0] = S::neg_infinity();
                    z[1] = S::infinity();
                    break;
                }
                k -= 1;
                continue;
            }
            let ps = S::from_count(p);
            let s = ((f[q] + qs * qs) - (f[p] + ps * ps)) / (two * (qs - ps));
            if s <= z[k] {
                if k == 0 {
                    v[0] = q;
                    z[0] = S::neg_infinity();
                    z[1] = S::infinity();
                    break;
                }
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = S::infinity();
                break;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut k = 0usize;
    for q in 0..n {
        let qs = S::from_count(q);
        while z[k + 1] < qs {
            k += 1;
        }
        let p = v[k];
        if f[p] == S::infinity() {
            out.push(S::infinity());
        } else {
            let d = qs - S::from_count(p);
            out.push(d * d + f[p]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_map_border_convention() {
        let m = GridMap::empty(&[3, 3]).unwrap();
        let dt = distance_transform::<f64>(&m);
        assert!((dt.get(Point::new2(1, 1)) - 1.5).abs() < 1e-12);
        assert!((dt.get(Point::new2(0, 0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn blocked_and_adjacent_cells() {
        let mut m = GridMap::empty(&[9, 9]).unwrap();
        m = blocked(m, 4, 4);
        let dt = distance_transform::<f64>(&m);
        assert_eq!(dt.get(Point::new2(4, 4)), 0.0);
        assert!((dt.get(Point::new2(4, 3)) - 1.0).abs() < 1e-12);
        assert!((dt.get(Point::new2(3, 3)) - 2.0f64.sqrt()).abs() < 1e-12);
        // Far corner is closer to the border than to the obstacle.
        assert!((dt.get(Point::new2(0, 0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn works_in_f32() {
        let m = GridMap::empty(&[5, 5]).unwrap();
        let dt = distance_transform::<f32>(&m);
        assert!((dt.get(Point::new2(2, 2)) - 2.5).abs() < 1e-6);
    }

    #[test]
    fn three_dimensional_distances() {
        let mut m = GridMap::empty(&[7, 7, 7]).unwrap();
        m = blocked3(m, 3, 3, 3);
        let dt = distance_transform::<f64>(&m);
        assert!((dt.get(Point::new3(2, 2, 2)) - 3.0f64.sqrt()).abs() < 1e-12);
        assert!((dt.get(Point::new3(3, 3, 5)) - 2.0).abs() < 1e-12);
    }

    fn blocked(m: GridMap, x: i32, y: i32) -> GridMap {
        let mut cells = m.cells().to_vec();
        cells[m.index(Point::new2(x, y))] = true;
        GridMap::from_cells(m.dims(), cells).unwrap()
    }

    fn blocked3(m: GridMap, x: i32, y: i32, z: i32) -> GridMap {
        let mut cells = m.cells().to_vec();
        cells[m.index(Point::new3(x, y, z))] = true;
        GridMap::from_cells(m.dims(), cells).unwrap()
    }
}
