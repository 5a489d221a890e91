//! Uniform cell grids on a disk, with exact cell/disk intersection areas.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Cells of side h covering [-R, R]^2; cell (i, j) has center (-R + (i + 1/2) h, -R + (j + 1/2) h).
/// Only cells meeting the disk are active; their weight is the covered area fraction.
#[derive(Clone, Debug)]
pub struct GridDomain {
    pub n: usize,
    pub radius: f64,
    pub h: f64,
    /// Cells per side.
    pub cells: usize,
    /// (i, j, weight) for every cell meeting the disk.
    pub active: Vec<(usize, usize, f64)>,
    /// Number of active cells crossing the boundary circle.
    pub boundary_cells: usize,
}

impl GridDomain {
    /// Disk of the given radius; `cells_per_radius` = R / h.
    pub fn disk(radius: f64, cells_per_radius: usize) -> Result<Self> {
        if !(radius > 0.0) || cells_per_radius < 2 {
            return Err(Error::Domain("need R > 0 and at least two cells per radius".into()));
        }
        let cells = 2 * cells_per_radius;
        let h = radius / cells_per_radius as f64;
        let mut active = Vec::new();
        let mut boundary_cells = 0;
        for i in 0..cells {
            for j in 0..cells {
                let (x0, y0) = (-radius + i as f64 * h, -radius + j as f64 * h);
                let (x1, y1) = (x0 + h, y0 + h);
                let far = x0.abs().max(x1.abs()).powi(2) + y0.abs().max(y1.abs()).powi(2);
                let near = clamp_dist2(x0, x1) + clamp_dist2(y0, y1);
                if near >= radius * radius {
                    continue;
                }
                if far <= radius * radius {
                    active.push((i, j, 1.0));
                } else {
                    let w = rect_disk_area(x0, x1, y0, y1, radius) / (h * h);
                    if w > 0.0 {
                        active.push((i, j, w));
                        boundary_cells += 1;
                    }
                }
            }
        }
        Ok(Self { n: 1, radius, h, cells, active, boundary_cells })
    }

    /// Unit disk with spacing 1 / cells_per_radius.
    pub fn unit_disk(cells_per_radius: usize) -> Result<Self> {
        Self::disk(1.0, cells_per_radius)
    }

    pub fn center(&self, i: usize, j: usize) -> [f64; 2] {
        [-self.radius + (i as f64 + 0.5) * self.h, -self.radius + (j as f64 + 0.5) * self.h]
    }

    pub fn volume(&self) -> f64 {
        PI * self.radius * self.radius
    }

    /// Sum of weights times the cell area; equals the volume up to rounding.
    pub fn discrete_volume(&self) -> f64 {
        self.active.iter().map(|a| a.2).sum::<f64>() * self.h * self.h
    }

    pub fn contains(&self, z: [f64; 2], tol: f64) -> bool {
        (z[0] * z[0] + z[1] * z[1]).sqrt() <= self.radius * (1.0 + tol)
    }
}

fn clamp_dist2(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        a * a
    } else if b < 0.0 {
        b * b
    } else {
        0.0
    }
}

/// Area of [x0, x1] x [y0, y1] intersected with the disk of radius r, in closed form.
pub fn rect_disk_area(x0: f64, x1: f64, y0: f64, y1: f64, r: f64) -> f64 {
    let a = x0.max(-r);
    let b = x1.min(r);
    if a >= b {
        return 0.0;
    }
    let mut cuts = vec![a, b];
    for y in [y0, y1] {
        if y.abs() < r {
            let c = (r * r - y * y).sqrt();
            for x in [-c, c] {
                if x > a && x < b {
                    cuts.push(x);
                }
            }
        }
    }
    cuts.sort_by(|p, q| p.total_cmp(q));
    let half = |x: f64| (r * r - x * x).max(0.0).sqrt();
    // antiderivative of the half chord
    let prim = |x: f64| 0.5 * (x * half(x) + r * r * (x / r).clamp(-1.0, 1.0).asin());
    let mut area = 0.0;
    for w in cuts.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q <= p {
            continue;
        }
        let s = half(0.5 * (p + q));
        // on this piece the covered chord is [max(y0, -s), min(y1, s)] with a fixed active side
        // a row tangent to the circle (|y| = r) never cuts it
        let top_is_circle = s < y1 || y1 >= r;
        let bottom_is_circle = -s > y0 || y0 <= -r;
        let top = if top_is_circle { prim(q) - prim(p) } else { y1 * (q - p) };
        let bottom = if bottom_is_circle { -(prim(q) - prim(p)) } else { y0 * (q - p) };
        let lo = if bottom_is_circle { -s } else { y0 };
        let hi = if top_is_circle { s } else { y1 };
        if hi > lo {
            area += top - bottom;
        }
    }
    area
}
