//! The selfinjective Nakayama algebras `N_k^l = F Δ_k / R^{l+1}` over the
//! oriented cycle, with their closed-form layer tables, plus the other
//! algebra families used by the test corpus.

use std::collections::BTreeMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Arrow, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::PrimeField;
use crate::loewy::{LayerTable, SeriesKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NakayamaParams {
    /// Number of vertices on the cycle.
    pub k: usize,
    /// Loewy length minus one.
    pub l: usize,
}

impl NakayamaParams {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidParameter(format!(
                "N_k^l needs k, l >= 1 (got k = {k}, l = {l})"
            )));
        }
        Ok(Self { k, l })
    }

    pub fn name(&self) -> String {
        format!("N_{}^{}", self.k, self.l)
    }

    pub fn dim(&self) -> usize {
        self.k * (self.l + 1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.l.is_multiple_of(self.k)
    }

    pub fn presentation(&self, field: PrimeField) -> Presentation {
        let quiver = Quiver::cyclic(self.k).expect("k >= 1");
        Presentation::new(field, quiver, vec![], self.l + 1).named(self.name())
    }
}

pub fn build_nakayama(params: NakayamaParams, field: PrimeField) -> Result<Algebra> {
    params.presentation(field).build()
}

/// `m[i][j][n] = 1` exactly when `j ≡ i + n - 1 (mod k)` and `n <= l + 1`.
pub fn expected_delta_table(params: NakayamaParams) -> LayerTable {
    let NakayamaParams { k, l } = params;
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    (1..=l + 1)
                        .map(|n| usize::from((i + n - 1) % k == j))
                        .collect()
                })
                .collect()
        })
        .collect();
    LayerTable {
        kind: SeriesKind::Radical,
        loewy_length: l + 1,
        entries,
    }
}

/// The vertex `j - l (mod k)` with `nu(P_j) ≅ P_{j-l}`.
pub fn expected_nakayama_shift(params: NakayamaParams, j: usize) -> Result<usize> {
    if j >= params.k {
        return Err(Error::InvalidVertex {
            vertex: j,
            count: params.k,
        });
    }
    Ok((j + params.k - params.l % params.k) % params.k)
}

/// The linearly oriented `A_m` truncated at path length `truncation`.
pub fn linear_presentation(m: usize, truncation: usize, field: PrimeField) -> Result<Presentation> {
    let quiver = Quiver::linear(m)?;
    Ok(Presentation::new(field, quiver, vec![], truncation)
        .named(format!("A_{m} (N={truncation})")))
}

/// Path-space size cap for randomly drawn presentations.
pub const RANDOM_MAX_PATHS: usize = 36;

/// A random admissible presentation: at most 4 vertices, 6 arrows,
/// truncation 2..=4 and 2 relations, drawn deterministically from `seed`.
/// Draws whose path space exceeds [`RANDOM_MAX_PATHS`] are rejected and
/// redrawn from the same stream.
pub fn random_presentation(seed: u64, field: PrimeField) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vertices = rng.random_range(1..=4usize);
        let arrow_count = rng.random_range(0..=6usize);
        let arrows: Vec<Arrow> = (0..arrow_count)
            .map(|i| {
                Arrow::new(
                    format!("x{i}"),
                    rng.random_range(0..vertices),
                    rng.random_range(0..vertices),
                )
            })
            .collect();
        let truncation = rng.random_range(2..=4usize);
        let quiver = Quiver::new(vertices, arrows).expect("endpoints in range");
        let paths = paths_by_length(&quiver, truncation);
        let total: usize = paths.values().map(Vec::len).sum::<usize>() + vertices;
        if total > RANDOM_MAX_PATHS {
            continue;
        }
        // Candidate relation terms: paths of length 2..N-1, grouped by endpoints.
        let mut parallel: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
        for (len, list) in &paths {
            if *len >= 2 {
                for p in list {
                    let start = quiver.arrows()[p[0]].source;
                    let end = quiver.arrows()[*p.last().unwrap()].target;
                    parallel.entry((start, end)).or_default().push(p.clone());
                }
            }
        }
        let groups: Vec<&Vec<Vec<usize>>> = parallel.values().collect();
        let relation_count = if groups.is_empty() {
            0
        } else {
            rng.random_range(0..=2usize)
        };
        let mut relations = Vec::new();
        for _ in 0..relation_count {
            let group = groups[rng.random_range(0..groups.len())];
            let first = rng.random_range(0..group.len());
            let mut picks = vec![first];
            if group.len() > 1 && rng.random_bool(0.5) {
                let second = (first + rng.random_range(1..group.len())) % group.len();
                picks.push(second);
            }
            let terms = picks
                .into_iter()
                .map(|t| {
                    let coeff = rng.random_range(1..field.modulus()) as i64;
                    let names = group[t]
                        .iter()
                        .map(|&a| quiver.arrows()[a].name.clone())
                        .collect();
                    (coeff, names)
                })
                .collect();
            relations.push(Relation::new(terms));
        }
        return Presentation::new(field, quiver, relations, truncation)
            .named(format!("random#{seed}"));
    }
}

fn paths_by_length(quiver: &Quiver, truncation: usize) -> BTreeMap<usize, Vec<Vec<usize>>> {
    let mut out = BTreeMap::new();
    let mut layer: Vec<Vec<usize>> = (0..quiver.arrows().len()).map(|a| vec![a]).collect();
    for len in 1..truncation {
        if layer.is_empty() || layer.len() > 4 * RANDOM_MAX_PATHS {
            out.insert(len, layer);
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            let end = quiver.arrows()[*p.last().unwrap()].target;
            for (a, arrow) in quiver.arrows().iter().enumerate() {
                if arrow.source == end {
                    let mut q = p.clone();
                    q.push(a);
                    next.push(q);
                }
            }
        }
        out.insert(len, std::mem::replace(&mut layer, next));
    }
    out
}
