//! Uniform bucket grid over bounding boxes, used to find candidate pairs and
//! nearby items without quadratic scans.

use crate::geom::{bbox_of, Point};

#[derive(Debug, Clone)]
pub struct BoxGrid {
    min: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
    boxes: Vec<(Point, Point)>,
}

impl BoxGrid {
    /// Grid over `boxes` with about `per_side` cells along the longer side.
    pub fn new(boxes: Vec<(Point, Point)>, per_side: usize) -> Self {
        let corners: Vec<Point> = boxes.iter().flat_map(|&(a, b)| [a, b]).collect();
        let (lo, hi) = if corners.is_empty() { (Point::new(0.0, 0.0), Point::new(1.0, 1.0)) } else { bbox_of(&corners) };
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let per_side = per_side.clamp(1, 4096);
        let cell = span / per_side as f64;
        let nx = (((hi.x - lo.x) / cell) as usize + 1).min(per_side);
        let ny = (((hi.y - lo.y) / cell) as usize + 1).min(per_side);
        let mut g = BoxGrid { min: lo, cell, nx, ny, cells: vec![Vec::new(); nx * ny], boxes: Vec::new() };
        for (i, b) in boxes.iter().enumerate() {
            let (x0, y0) = g.cell_of(b.0);
            let (x1, y1) = g.cell_of(b.1);
            for y in y0..=y1 {
                for x in x0..=x1 {
                    g.cells[y * nx + x].push(i as u32);
                }
            }
        }
        g.boxes = boxes;
        g
    }

    /// Grid sized for `n` items of roughly uniform spread.
    pub fn auto(boxes: Vec<(Point, Point)>) -> Self {
        let n = boxes.len().max(1);
        BoxGrid::new(boxes, (n as f64).sqrt().ceil() as usize)
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        let fx = ((p.x - self.min.x) / self.cell).floor();
        let fy = ((p.y - self.min.y) / self.cell).floor();
        let cx = if fx.is_nan() || fx < 0.0 { 0 } else { (fx as usize).min(self.nx - 1) };
        let cy = if fy.is_nan() || fy < 0.0 { 0 } else { (fy as usize).min(self.ny - 1) };
        (cx, cy)
    }

    pub fn bbox(&self, i: usize) -> (Point, Point) {
        self.boxes[i]
    }

    /// Items whose box contains `p` (closed boxes).
    pub fn at(&self, p: Point) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = self.cell_of(p);
        self.cells[cy * self.nx + cx].iter().map(|&i| i as usize).filter(move |&i| {
            let (a, b) = self.boxes[i];
            p.x >= a.x && p.x <= b.x && p.y >= a.y && p.y <= b.y
        })
    }

    /// Items whose box meets the closed box `lo..hi`, sorted.
    pub fn in_box(&self, lo: Point, hi: Point) -> Vec<usize> {
        let (x0, y0) = self.cell_of(lo);
        let (x1, y1) = self.cell_of(hi);
        let mut out = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                for &i in &self.cells[y * self.nx + x] {
                    let (a, b) = self.boxes[i as usize];
                    if a.x <= hi.x && lo.x <= b.x && a.y <= hi.y && lo.y <= b.y {
                        out.push(i as usize);
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All pairs `i < j` with overlapping closed boxes, sorted.
    ///
    /// Each cell is swept along the axis where its boxes are thinner, and a
    /// pair is reported only by the cell holding the low corner of the
    /// intersection of the two boxes.
    pub fn overlapping_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut ent: Vec<(f64, f64, u32)> = Vec::new();
        for (c, items) in self.cells.iter().enumerate() {
            let here = (c % self.nx, c / self.nx);
            let (mut sx, mut sy) = (0.0, 0.0);
            for &i in items {
                let (a, b) = self.boxes[i as usize];
                sx += b.x - a.x;
                sy += b.y - a.y;
            }
            ent.clear();
            ent.extend(items.iter().map(|&i| {
                let (a, b) = self.boxes[i as usize];
                if sx <= sy { (a.x, b.x, i) } else { (a.y, b.y, i) }
            }));
            ent.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.2.cmp(&q.2)));
            for (k, &(_, hi, i)) in ent.iter().enumerate() {
                for &(lo, _, j) in &ent[k + 1..] {
                    if lo > hi {
                        break;
                    }
                    let (a, b) = (self.boxes[i as usize], self.boxes[j as usize]);
                    if a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y {
                        let corner = Point::new(a.0.x.max(b.0.x), a.0.y.max(b.0.y));
                        if self.cell_of(corner) == here {
                            out.push((i.min(j) as usize, i.max(j) as usize));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Smallest `dist(p, item)` over all items, searching rings of cells
    /// outward from `p` until no closer item can exist.
    pub fn nearest(&self, p: Point, dist: impl Fn(usize) -> f64) -> Option<(usize, f64)> {
        if self.boxes.is_empty() {
            return None;
        }
        let (cx, cy) = (
            ((p.x - self.min.x) / self.cell).floor() as i64,
            ((p.y - self.min.y) / self.cell).floor() as i64,
        );
        let mut best: Option<(usize, f64)> = None;
        let max_r = (self.nx.max(self.ny) as i64) + cx.abs().max(cy.abs()) + 1;
        for r in 0..=max_r {
            // every cell in ring r is at least (r - 1) cells away from p
            if let Some((_, d)) = best {
                if (r - 1) as f64 * self.cell > d {
                    break;
                }
            }
            for y in cy - r..=cy + r {
                for x in cx - r..=cx + r {
                    if (y - cy).abs() != r && (x - cx).abs() != r {
                        continue;
                    }
                    if x < 0 || y < 0 || x >= self.nx as i64 || y >= self.ny as i64 {
                        continue;
                    }
                    for &i in &self.cells[y as usize * self.nx + x as usize] {
                        if let Some((_, bd)) = best {
                            let (a, b) = self.boxes[i as usize];
                            let gap = Point::new((a.x - p.x).max(p.x - b.x).max(0.0), (a.y - p.y).max(p.y - b.y).max(0.0));
                            if gap.norm() >= bd {
                                continue;
                            }
                        }
                        let d = dist(i as usize);
                        if best.map_or(true, |(_, bd)| d < bd) {
                            best = Some((i as usize, d));
                        }
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_matches_scan() {
        let pts: Vec<Point> = (0..200).map(|k| Point::new((k * 37 % 101) as f64, (k * 53 % 97) as f64)).collect();
        let g = BoxGrid::auto(pts.iter().map(|&p| (p, p)).collect());
        for q in [Point::new(-50.0, 3.0), Point::new(40.5, 40.5), Point::new(300.0, -7.0)] {
            let want = pts.iter().map(|p| p.dist(q)).fold(f64::INFINITY, f64::min);
            let (_, got) = g.nearest(q, |i| pts[i].dist(q)).unwrap();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn pairs_match_scan() {
        let mut boxes: Vec<(Point, Point)> = (0..60)
            .map(|k| {
                let p = Point::new((k * 13 % 31) as f64, (k * 7 % 29) as f64);
                (p, p + Point::new((k % 5) as f64, (k % 3) as f64))
            })
            .collect();
        // long thin boxes along the sides, touching ones and points
        for k in 0..20 {
            let t = k as f64 * 0.25;
            boxes.push((Point::new(0.0, t), Point::new(34.0, t)));
            boxes.push((Point::new(t, 0.0), Point::new(t, 32.0)));
        }
        boxes.push((Point::new(5.0, 5.0), Point::new(5.0, 5.0)));
        boxes.push((Point::new(5.0, 5.0), Point::new(6.0, 6.0)));
        for per_side in [1, 6, 40] {
            let g = BoxGrid::new(boxes.clone(), per_side);
            let mut want = Vec::new();
            for i in 0..boxes.len() {
                for j in i + 1..boxes.len() {
                    let (a, b) = (boxes[i], boxes[j]);
                    if a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y {
                        want.push((i, j));
                    }
                }
            }
            assert_eq!(g.overlapping_pairs(), want, "{per_side} cells per side");
        }
    }
}
