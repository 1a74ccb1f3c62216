//! Seeded random flag complexes with rational vertex values.

use parahom::complex::{SimplicialComplex, VertexFunction};
use parahom::value::ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Parameters of a random flag complex. Generation is a pure function of these.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub vertices: usize,
    pub max_dim: usize,
    pub density: f64,
    pub seed: u64,
}

pub const MAX_DIM: usize = 3;

/// Denominators of the random values; 3 yields non-terminating decimals.
const DENOMINATORS: [i64; 4] = [1, 2, 3, 4];

impl RandomSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_dim > MAX_DIM {
            return Err(CliError::Input(format!(
                "max dimension is at most {MAX_DIM}, got {}",
                self.max_dim
            )));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(CliError::Input(format!(
                "density must lie in [0, 1], got {}",
                self.density
            )));
        }
        if self.vertices == 0 {
            return Err(CliError::Input(
                "a random complex needs at least one vertex".into(),
            ));
        }
        Ok(())
    }

    /// The parameters of instance `i` in a campaign started from this one.
    pub fn nth(&self, i: u64) -> Self {
        Self {
            seed: self.seed.wrapping_add(i),
            ..*self
        }
    }

    /// Samples each edge with probability `density`, then adds every clique of
    /// up to `max_dim + 1` vertices. Values are `k/q` with `q` drawn from
    /// a small set, so ties and repeated values are common.
    pub fn generate(&self) -> Result<(SimplicialComplex, VertexFunction), CliError> {
        self.validate()?;
        let n = self.vertices;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut adjacent = vec![vec![false; n]; n];
        for (u, v) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))) {
            let edge = rng.gen_bool(self.density);
            adjacent[u][v] = edge;
            adjacent[v][u] = edge;
        }
        let values = (0..n)
            .map(|_| {
                let q = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
                ratio(rng.gen_range(-(n as i64)..=(n as i64)), q)
            })
            .collect();

        let mut simplices: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        let mut frontier = simplices.clone();
        for _ in 0..self.max_dim {
            let mut next = Vec::new();
            for s in &frontier {
                let last = *s.last().expect("nonempty simplex");
                for w in (last + 1..n).filter(|&w| s.iter().all(|&u| adjacent[u][w])) {
                    let mut t = s.clone();
                    t.push(w);
                    next.push(t);
                }
            }
            simplices.extend(next.iter().cloned());
            frontier = next;
        }
        let k = SimplicialComplex::new(n, simplices)?;
        Ok((k, VertexFunction::new(values)))
    }
}
