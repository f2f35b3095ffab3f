use rand::Rng;

/// Euclidean projection onto `{x : x ≥ 0, Σx = 1}` (sort-and-threshold).
pub fn project_onto_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (k, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (k as f64 + 1.0);
        if u - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Number of points of the regular grid with `resolution` steps in a
/// `dim`-vertex simplex: C(resolution + dim − 1, dim − 1).
pub(crate) fn grid_size(dim: usize, resolution: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 1..dim as u128 {
        c = c * (resolution as u128 + k) / k;
    }
    c
}

/// Lattice points `c / resolution` with `Σc = resolution`, listed with the
/// first coordinate descending, then the second, and so on.
pub(crate) struct SimplexGrid {
    pub resolution: usize,
    pub points: Vec<Vec<u32>>,
    /// `tail_counts[d][t]`: number of compositions of `0..=t` into `d` parts.
    tail_counts: Vec<Vec<usize>>,
}

impl SimplexGrid {
    pub fn new(dim: usize, resolution: usize) -> Self {
        let mut points = Vec::new();
        let mut current = vec![0u32; dim];
        compositions(resolution as u32, 0, &mut current, &mut points);
        let tail_counts = (0..=dim)
            .map(|d| {
                let mut acc = 0usize;
                (0..=resolution)
                    .map(|s| {
                        acc += if d == 0 { 0 } else { grid_size(d, s) as usize };
                        acc
                    })
                    .collect()
            })
            .collect();
        SimplexGrid {
            resolution,
            points,
            tail_counts,
        }
    }

    pub fn coords(&self, k: usize) -> Vec<f64> {
        let r = self.resolution as f64;
        self.points[k].iter().map(|&c| c as f64 / r).collect()
    }

    /// Position of `p` in `points`: at each coordinate, count the points
    /// sharing the prefix but holding more mass there.
    fn rank(&self, p: &[u32]) -> usize {
        let dim = p.len();
        let mut remaining = self.resolution;
        let mut rank = 0;
        for (pos, &c) in p[..dim - 1].iter().enumerate() {
            let c = c as usize;
            if c < remaining {
                rank += self.tail_counts[dim - pos - 1][remaining - c - 1];
            }
            remaining -= c;
        }
        rank
    }

    /// No neighbour holds a larger value.
    pub fn is_local_maximum(&self, k: usize, values: &[f64]) -> bool {
        let p = &self.points[k];
        let dim = p.len();
        let mut q = p.clone();
        for from in 0..dim {
            if p[from] == 0 {
                continue;
            }
            for to in (0..dim).filter(|&t| t != from) {
                q[from] -= 1;
                q[to] += 1;
                let larger = values[self.rank(&q)] > values[k];
                q[from] += 1;
                q[to] -= 1;
                if larger {
                    return false;
                }
            }
        }
        true
    }
}

fn compositions(remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for c in (0..=remaining).rev() {
        current[pos] = c;
        compositions(remaining - c, pos + 1, current, out);
    }
}

/// Uniform sample from the simplex (normalised exponentials).
pub(crate) fn random_point<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..dim)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}
