use crate::error::{Error, Result};

/// Index of a point in a [`Space`]. For grids this is the row-major cell
/// index `y * width + x`, so the derived ordering is lexicographic in `(y, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub usize);

/// A finite set of points with a symmetric distance that vanishes only on the
/// diagonal. The triangle inequality is not required.
pub trait Space: Sync {
    fn len(&self) -> usize;

    fn distance(&self, a: PointId, b: PointId) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn contains(&self, p: PointId) -> bool {
        p.0 < self.len()
    }

    fn check(&self, p: PointId) -> Result<PointId> {
        if self.contains(p) {
            Ok(p)
        } else {
            Err(Error::PointOutOfSpace(p.0))
        }
    }
}

/// Rectangular pixel grid with Euclidean distance between cell centres,
/// scaled by `cell_size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2d {
    width: usize,
    height: usize,
    cell_size: f64,
}

impl Grid2d {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        Self::with_cell_size(width, height, 1.0)
    }

    pub fn with_cell_size(width: usize, height: usize, cell_size: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidSpace(format!(
                "grid dimensions must be positive, got {width}x{height}"
            )));
        }
        if !(cell_size.is_finite() && cell_size > 0.0) {
            return Err(Error::InvalidSpace(format!(
                "cell size must be positive, got {cell_size}"
            )));
        }
        Ok(Self {
            width,
            height,
            cell_size,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn point(&self, x: usize, y: usize) -> Option<PointId> {
        (x < self.width && y < self.height).then_some(PointId(y * self.width + x))
    }

    pub fn coords(&self, p: PointId) -> (usize, usize) {
        (p.0 % self.width, p.0 / self.width)
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.width * self.height).map(PointId)
    }
}

impl Space for Grid2d {
    fn len(&self) -> usize {
        self.width * self.height
    }

    fn distance(&self, a: PointId, b: PointId) -> f64 {
        let (ax, ay) = self.coords(a);
        let (bx, by) = self.coords(b);
        let dx = ax.abs_diff(bx) as f64;
        let dy = ay.abs_diff(by) as f64;
        self.cell_size * (dx * dx + dy * dy).sqrt()
    }
}

/// A space given by an explicit, dense distance table.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitSpace {
    n: usize,
    distances: Vec<f64>,
}

impl ExplicitSpace {
    /// `distances` is the row-major `n x n` table.
    pub fn new(n: usize, distances: Vec<f64>) -> Result<Self> {
        if distances.len() != n * n {
            return Err(Error::InvalidSpace(format!(
                "expected {} distances for {n} points, got {}",
                n * n,
                distances.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let d = distances[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidSpace(format!("d({i},{j}) = {d}")));
                }
                if (i == j) != (d == 0.0) {
                    return Err(Error::InvalidSpace(format!(
                        "d({i},{j}) = {d}: distance must vanish exactly on the diagonal"
                    )));
                }
                if d != distances[j * n + i] {
                    return Err(Error::InvalidSpace(format!("d({i},{j}) is not symmetric")));
                }
            }
        }
        Ok(Self { n, distances })
    }

    /// Builds the table from a symmetric distance function.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut distances = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                distances[i * n + j] = d;
                distances[j * n + i] = d;
            }
        }
        Self::new(n, distances)
    }
}

impl Space for ExplicitSpace {
    fn len(&self) -> usize {
        self.n
    }

    fn distance(&self, a: PointId, b: PointId) -> f64 {
        self.distances[a.0 * self.n + b.0]
    }
}
