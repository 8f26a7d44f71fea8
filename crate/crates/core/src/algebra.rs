//! Basic algebras presented by a quiver with relations, truncated at a fixed
//! path length.
//!
//! Paths compose left to right: `p * q` is "first `p`, then `q`", and is zero
//! unless `p` ends where `q` starts. With this convention `e_i A` is spanned
//! by the paths starting at `i`, which makes it the projective cover of the
//! simple right module at `i`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, Subspace};

/// Upper bound on the number of paths enumerated before quotienting.
pub const MAX_PATH_SPACE: usize = 4096;

/// Search spaces at most this large are enumerated exhaustively by the
/// tri-state searches.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

pub const DEFAULT_TRIALS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: usize, target: usize) -> Self {
        Self {
            name: name.into(),
            source,
            target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyQuiver);
        }
        let mut names = HashSet::new();
        for a in &arrows {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidQuiver(format!(
                    "arrow `{}` has an endpoint outside 0..{}",
                    a.name, vertex_count
                )));
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow name `{}`",
                    a.name
                )));
            }
        }
        Ok(Self {
            vertex_count,
            arrows,
        })
    }

    /// The oriented cycle with arrows `a{i}: i -> i+1 mod k`.
    pub fn cyclic(k: usize) -> Result<Self> {
        let arrows = (0..k)
            .map(|i| Arrow::new(format!("a{i}"), i, (i + 1) % k))
            .collect();
        Self::new(k, arrows)
    }

    /// The linearly oriented quiver `0 -> 1 -> ... -> m-1`.
    pub fn linear(m: usize) -> Result<Self> {
        let arrows = (0..m.saturating_sub(1))
            .map(|i| Arrow::new(format!("a{i}"), i, i + 1))
            .collect();
        Self::new(m, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A linear combination of parallel paths, each of length at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<String>)>,
}

impl Relation {
    pub fn new(terms: Vec<(i64, Vec<String>)>) -> Self {
        Self { terms }
    }

    /// A single path set to zero.
    pub fn monomial<S: AsRef<str>>(path: &[S]) -> Self {
        Self::new(vec![(
            1,
            path.iter().map(|s| s.as_ref().to_string()).collect(),
        )])
    }
}

/// Everything needed to rebuild an algebra: `F Q / (<relations> + R^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: PrimeField,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub truncation: usize,
    /// Display name; not part of the algebra's structure.
    pub name: Option<String>,
}

impl Presentation {
    pub fn new(
        field: PrimeField,
        quiver: Quiver,
        relations: Vec<Relation>,
        truncation: usize,
    ) -> Self {
        Self {
            field,
            quiver,
            relations,
            truncation,
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn build(&self) -> Result<Algebra> {
        build_path_algebra(self)
    }

    /// Rebuilds with truncation `N + 1` and reports whether the dimension is
    /// unchanged, i.e. whether the truncation is invisible to the relations.
    pub fn is_truncation_stable(&self) -> Result<bool> {
        let here = self.build()?.dim();
        let mut next = self.clone();
        next.truncation += 1;
        Ok(next.build()?.dim() == here)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }

    fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            start: self.start,
            end: other.end,
            arrows,
        })
    }

    fn label(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.start)
        } else {
            self.arrows
                .iter()
                .map(|&a| quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// All paths of length `< truncation`, ordered by length and then
/// lexicographically by arrow index.
fn enumerate_paths(quiver: &Quiver, truncation: usize) -> Result<Vec<Path>> {
    let mut paths: Vec<Path> = (0..quiver.vertex_count)
        .map(|v| Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        })
        .collect();
    if truncation < 2 {
        return Ok(paths);
    }
    let mut layer: Vec<Path> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| Path {
            start: a.source,
            end: a.target,
            arrows: vec![i],
        })
        .collect();
    for length in 1..truncation {
        paths.extend(layer.iter().cloned());
        if paths.len() > MAX_PATH_SPACE {
            return Err(Error::TooLarge(paths.len()));
        }
        if length + 1 == truncation {
            break;
        }
        let mut next = Vec::new();
        for p in &layer {
            for (i, a) in quiver.arrows.iter().enumerate() {
                if a.source == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    next.push(Path {
                        start: p.start,
                        end: a.target,
                        arrows,
                    });
                }
            }
        }
        layer = next;
    }
    Ok(paths)
}

struct ResolvedRelation {
    start: usize,
    end: usize,
    terms: Vec<(u32, Path)>,
}

fn resolve_relations(p: &Presentation) -> Result<Vec<ResolvedRelation>> {
    let mut out = Vec::new();
    for (index, rel) in p.relations.iter().enumerate() {
        let malformed = |reason: String| Error::MalformedRelation { index, reason };
        if rel.terms.is_empty() {
            return Err(malformed("relation has no terms".into()));
        }
        let mut terms = Vec::new();
        for (coeff, names) in &rel.terms {
            if names.len() < 2 {
                return Err(malformed(format!(
                    "path of length {} (relations need length >= 2)",
                    names.len()
                )));
            }
            let mut arrows = Vec::with_capacity(names.len());
            for name in names {
                arrows.push(
                    p.quiver
                        .arrow_index(name)
                        .ok_or_else(|| Error::UnknownArrow(name.clone()))?,
                );
            }
            for w in arrows.windows(2) {
                if p.quiver.arrows[w[0]].target != p.quiver.arrows[w[1]].source {
                    return Err(malformed(format!(
                        "arrows `{}` and `{}` do not compose",
                        p.quiver.arrows[w[0]].name, p.quiver.arrows[w[1]].name
                    )));
                }
            }
            let path = Path {
                start: p.quiver.arrows[arrows[0]].source,
                end: p.quiver.arrows[*arrows.last().unwrap()].target,
                arrows,
            };
            terms.push((p.field.reduce(*coeff), path));
        }
        let (start, end) = (terms[0].1.start, terms[0].1.end);
        if terms.iter().any(|(_, t)| t.start != start || t.end != end) {
            return Err(malformed("paths are not parallel".into()));
        }
        out.push(ResolvedRelation { start, end, terms });
    }
    Ok(out)
}

/// Builds `F Q / (<relations> + R^N)` from a presentation.
pub fn build_path_algebra(p: &Presentation) -> Result<Algebra> {
    let field = p.field;
    let n = p.truncation;
    if n == 0 {
        return Err(Error::TruncationTooSmall(n));
    }
    if !p.relations.is_empty() && n < 2 {
        return Err(Error::TruncationTooSmall(n));
    }
    let relations = resolve_relations(p)?;
    let paths = enumerate_paths(&p.quiver, n)?;
    let total = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, q)| (q, i)).collect();

    // The ideal, truncated: spanned by u * r * v for paths u, v of length < N.
    let mut ideal = Subspace::zero(field, total);
    let mut pending: Vec<Vec<u32>> = Vec::new();
    for rel in &relations {
        let min_len = rel.terms.iter().map(|(_, t)| t.len()).min().unwrap_or(0);
        for u in paths.iter().filter(|u| u.end == rel.start) {
            if u.len() + min_len >= n {
                continue;
            }
            for v in paths.iter().filter(|v| v.start == rel.end) {
                if u.len() + min_len + v.len() >= n {
                    continue;
                }
                let mut vec = vec![0u32; total];
                for (c, t) in &rel.terms {
                    let full = u.concat(t).and_then(|ut| ut.concat(v)).expect("composable");
                    if let Some(&i) = index.get(&full) {
                        vec[i] = field.add(vec[i], *c);
                    }
                }
                pending.push(vec);
                if pending.len() >= 4 * total.max(1) {
                    ideal = flush_into(&ideal, &mut pending);
                }
            }
        }
    }
    ideal = flush_into(&ideal, &mut pending);

    let coords = ideal.quotient_coordinates();
    let mut is_pivot = vec![false; total];
    for &c in ideal.pivots() {
        is_pivot[c] = true;
    }
    let basis: Vec<Path> = (0..total)
        .filter(|&c| !is_pivot[c])
        .map(|c| paths[c].clone())
        .collect();
    let dim = basis.len();

    let mut table = vec![0u32; dim * dim * dim];
    for (a, pa) in basis.iter().enumerate() {
        for (b, pb) in basis.iter().enumerate() {
            let Some(prod) = pa.concat(pb) else { continue };
            let Some(&i) = index.get(&prod) else { continue };
            let row = coords.projection.row(i);
            table[(a * dim + b) * dim..(a * dim + b + 1) * dim].copy_from_slice(row);
        }
    }

    let labels = basis.iter().map(|q| q.label(&p.quiver)).collect();
    let vertices: Vec<Option<usize>> = basis
        .iter()
        .map(|q| q.arrows.is_empty().then_some(q.start))
        .collect();
    let lengths = basis.iter().map(Path::len).collect();
    let description = describe_presentation(p);
    Algebra::assemble(
        field,
        p.quiver.vertex_count,
        labels,
        vertices,
        lengths,
        table,
        Some(p.clone()),
        description,
    )
}

fn flush_into(ideal: &Subspace, pending: &mut Vec<Vec<u32>>) -> Subspace {
    if pending.is_empty() {
        return ideal.clone();
    }
    let field = ideal.field();
    let extra = Subspace::from_vectors(field, ideal.ambient_dim(), pending);
    pending.clear();
    ideal.sum(&extra).expect("same ambient")
}

fn describe_presentation(p: &Presentation) -> String {
    if let Some(name) = &p.name {
        return format!("{name} over {}", p.field);
    }
    format!(
        "quiver(vertices={}, arrows={}, relations={}, N={}) over {}",
        p.quiver.vertex_count,
        p.quiver.arrows.len(),
        p.relations.len(),
        p.truncation,
        p.field
    )
}

#[derive(Debug)]
struct AlgebraData {
    field: PrimeField,
    vertex_count: usize,
    dim: usize,
    labels: Vec<String>,
    /// For each basis element, the vertex if it is a primitive idempotent.
    vertices: Vec<Option<usize>>,
    /// Path length of each basis element.
    lengths: Vec<usize>,
    /// `table[(a * dim + b) * dim + t]` is coordinate `t` of `a * b`.
    table: Vec<u32>,
    identity: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    /// `rad^n A` for `n = 0..=loewy_length`.
    radical_powers: Vec<Subspace>,
    presentation: Option<Presentation>,
    description: String,
}

/// A finite-dimensional basic algebra with a fixed basis.
///
/// The opposite algebra shares the same data; only the order of
/// multiplication is flipped. Cloning is cheap.
#[derive(Clone)]
pub struct Algebra {
    data: Arc<AlgebraData>,
    opposite: bool,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.description())
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.data, &other.data) && self.opposite == other.opposite {
            return true;
        }
        let d = self.dim();
        self.field() == other.field()
            && d == other.dim()
            && self.vertex_count() == other.vertex_count()
            && self.data.vertices == other.data.vertices
            && (0..d).all(|a| (0..d).all(|b| self.product(a, b) == other.product(a, b)))
    }
}

impl Eq for Algebra {}

/// Outcome of the symmetric-algebra search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symmetry {
    /// A linear form `lambda` with `lambda(ab) = lambda(ba)` and
    /// nondegenerate pairing `(x, y) -> lambda(xy)`.
    Symmetric(Vec<u32>),
    NotSymmetric,
    Unknown,
}

impl Symmetry {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Symmetry::Symmetric(_))
    }
}

impl Algebra {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        field: PrimeField,
        vertex_count: usize,
        labels: Vec<String>,
        vertices: Vec<Option<usize>>,
        lengths: Vec<usize>,
        table: Vec<u32>,
        presentation: Option<Presentation>,
        description: String,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut idempotents = vec![vec![0u32; dim]; vertex_count];
        let mut identity = vec![0u32; dim];
        for (b, v) in vertices.iter().enumerate() {
            if let Some(v) = *v {
                idempotents[v][b] = 1;
                identity[b] = 1;
            }
        }
        let radical_basis: Vec<Vec<u32>> = (0..dim)
            .filter(|&b| lengths[b] > 0)
            .map(|b| unit(dim, b))
            .collect();
        let radical = Subspace::from_vectors(field, dim, &radical_basis);
        let mut data = AlgebraData {
            field,
            vertex_count,
            dim,
            labels,
            vertices,
            lengths,
            table,
            identity,
            idempotents,
            radical_powers: Vec::new(),
            presentation,
            description,
        };
        let mut powers = vec![Subspace::full(field, dim)];
        let mut current = radical.clone();
        while !current.is_zero() {
            powers.push(current.clone());
            let mut products = Vec::new();
            for x in current.basis().row_vectors() {
                for r in radical.basis().row_vectors() {
                    products.push(multiply_in(&data, x, r));
                }
            }
            current = Subspace::from_vectors(field, dim, &products);
        }
        powers.push(current);
        data.radical_powers = powers;
        let algebra = Algebra {
            data: Arc::new(data),
            opposite: false,
        };
        algebra.check_axioms()?;
        Ok(algebra)
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        let f = self.field();
        for a in 0..d {
            let e = unit(d, a);
            if self.mul_vec(&self.data.identity, &e) != e
                || self.mul_vec(&e, &self.data.identity) != e
            {
                return Err(Error::InvalidAlgebra("identity".into()));
            }
        }
        for (i, ei) in self.data.idempotents.iter().enumerate() {
            for (j, ej) in self.data.idempotents.iter().enumerate() {
                let expected = if i == j { ei.clone() } else { vec![0; d] };
                if self.mul_vec(ei, ej) != expected {
                    return Err(Error::InvalidAlgebra("orthogonal idempotents".into()));
                }
            }
        }
        // (ab)c = a(bc) on all basis triples, iterating only nonzero entries.
        for a in 0..d {
            for b in 0..d {
                let ab = self.product(a, b);
                for c in 0..d {
                    let bc = self.product(b, c);
                    let mut lhs = vec![0u32; d];
                    let mut rhs = vec![0u32; d];
                    for t in 0..d {
                        if ab[t] != 0 {
                            axpy(f, &mut lhs, ab[t], self.product(t, c));
                        }
                        if bc[t] != 0 {
                            axpy(f, &mut rhs, bc[t], self.product(a, t));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity on ({}, {}, {})",
                            self.data.labels[a], self.data.labels[b], self.data.labels[c]
                        )));
                    }
                }
            }
        }
        let l = self.loewy_length();
        if !self.radical_power(l).is_zero() || (l > 0 && self.radical_power(l - 1).is_zero()) {
            return Err(Error::InvalidAlgebra("radical nilpotency".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.data.field
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.data.vertex_count
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn description(&self) -> String {
        if self.opposite {
            format!("opposite of {}", self.data.description)
        } else {
            self.data.description.clone()
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.data.presentation.as_ref()
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    /// Vertex of a basis element that is a primitive idempotent.
    pub fn basis_vertex(&self, b: usize) -> Option<usize> {
        self.data.vertices[b]
    }

    /// Path length of a basis element (its radical degree).
    pub fn basis_length(&self, b: usize) -> usize {
        self.data.lengths[b]
    }

    /// Coordinates of the product of basis elements `a * b`.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> &[u32] {
        let d = self.data.dim;
        let (x, y) = if self.opposite { (b, a) } else { (a, b) };
        &self.data.table[(x * d + y) * d..(x * d + y + 1) * d]
    }

    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.mul_vec(x, y))
    }

    fn mul_vec(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0u32; self.dim()];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb != 0 {
                    axpy(f, &mut out, f.mul(xa, yb), self.product(a, b));
                }
            }
        }
        out
    }

    pub fn identity(&self) -> &[u32] {
        &self.data.identity
    }

    pub fn idempotent(&self, vertex: usize) -> Result<&[u32]> {
        self.data
            .idempotents
            .get(vertex)
            .map(Vec::as_slice)
            .ok_or(Error::InvalidVertex {
                vertex,
                count: self.vertex_count(),
            })
    }

    pub fn radical(&self) -> &Subspace {
        self.radical_power(1)
    }

    /// `rad^n A`, the span of all products of `n` radical elements. The same
    /// subspace serves `A` and its opposite.
    pub fn radical_power(&self, n: usize) -> &Subspace {
        let powers = &self.data.radical_powers;
        &powers[n.min(powers.len() - 1)]
    }

    /// Smallest `L` with `rad^L A = 0`.
    pub fn loewy_length(&self) -> usize {
        self.data.radical_powers.len() - 1
    }

    pub fn opposite(&self) -> Algebra {
        Algebra {
            data: Arc::clone(&self.data),
            opposite: !self.opposite,
        }
    }

    /// Matrix of `x -> x * b` in the row convention.
    pub fn right_multiplication(&self, b: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field(), d, d);
        for a in 0..d {
            for (t, &v) in self.product(a, b).iter().enumerate() {
                if v != 0 {
                    m.set(a, t, v);
                }
            }
        }
        m
    }

    /// Matrix of `x -> b * x` in the row convention.
    pub fn left_multiplication(&self, b: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field(), d, d);
        for a in 0..d {
            for (t, &v) in self.product(b, a).iter().enumerate() {
                if v != 0 {
                    m.set(a, t, v);
                }
            }
        }
        m
    }

    /// Linear forms `lambda` with `lambda(ab) = lambda(ba)` for all `a, b`.
    pub fn trace_forms(&self) -> Subspace {
        let d = self.dim();
        let f = self.field();
        let mut rows = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let diff: Vec<u32> = self
                    .product(a, b)
                    .iter()
                    .zip(self.product(b, a))
                    .map(|(&x, &y)| f.sub(x, y))
                    .collect();
                if diff.iter().any(|&x| x != 0) {
                    rows.push(diff);
                }
            }
        }
        Matrix::from_row_vectors(f, d, &rows).kernel()
    }

    /// Gram matrix of `(x, y) -> lambda(x y)` on the basis.
    pub fn gram_matrix(&self, lambda: &[u32]) -> Matrix {
        let d = self.dim();
        let f = self.field();
        let mut g = Matrix::zeros(f, d, d);
        for a in 0..d {
            for b in 0..d {
                let v = self
                    .product(a, b)
                    .iter()
                    .zip(lambda)
                    .fold(0, |acc, (&x, &l)| f.add(acc, f.mul(x, l)));
                g.set(a, b, v);
            }
        }
        g
    }

    /// Whether `soc(e_i A)` is simple and isomorphic to the top of `e_i A`
    /// for every vertex, as it must be for a symmetric algebra.
    pub fn has_matching_socles(&self) -> bool {
        let f = self.field();
        let d = self.dim();
        let rad = self.radical().basis();
        let mut blocks = Vec::with_capacity(rad.rows());
        for r in rad.row_vectors() {
            let mut m = Matrix::zeros(f, d, d);
            for (b, &c) in r.iter().enumerate() {
                if c != 0 {
                    m.add_scaled(&self.right_multiplication(b), c);
                }
            }
            blocks.push(m);
        }
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let socle = Matrix::hstack(f, d, &refs).left_kernel();
        (0..self.vertex_count()).all(|i| {
            let e = self.idempotent(i).expect("vertex in range").to_vec();
            let mut left = Vec::new();
            let mut both = Vec::new();
            for x in socle.basis().row_vectors() {
                let ex = self.multiply(&e, x).expect("matching dimensions");
                both.push(self.multiply(&ex, &e).expect("matching dimensions"));
                left.push(ex);
            }
            Subspace::from_vectors(f, d, &left).dim() == 1
                && Subspace::from_vectors(f, d, &both).dim() == 1
        })
    }

    /// Searches for a nondegenerate symmetric associative form.
    ///
    /// Tries the basis of the trace forms first, then every combination when
    /// there are at most [`EXHAUSTIVE_LIMIT`] of them, otherwise `trials`
    /// seeded random combinations.
    pub fn is_symmetric(&self, trials: usize, seed: u64) -> Symmetry {
        let forms = self.trace_forms();
        if forms.is_zero() || !self.has_matching_socles() {
            return Symmetry::NotSymmetric;
        }
        let nondegenerate = |lambda: &[u32]| self.gram_matrix(lambda).is_invertible();
        for lambda in forms.basis().row_vectors() {
            if nondegenerate(lambda) {
                return Symmetry::Symmetric(lambda.to_vec());
            }
        }
        match search_combinations(forms.basis(), trials, seed, |v| nondegenerate(v)) {
            Search::Found(lambda) => Symmetry::Symmetric(lambda),
            Search::Exhausted => Symmetry::NotSymmetric,
            Search::GaveUp => Symmetry::Unknown,
        }
    }
}

pub(crate) enum Search {
    Found(Vec<u32>),
    Exhausted,
    GaveUp,
}

/// Looks for a nonzero combination of the rows of `basis` satisfying `ok`:
/// exhaustively when the space is small, otherwise by seeded sampling.
pub(crate) fn search_combinations(
    basis: &Matrix,
    trials: usize,
    seed: u64,
    mut ok: impl FnMut(&[u32]) -> bool,
) -> Search {
    let f = basis.field();
    let m = basis.rows();
    let size = (f.order() as u128).checked_pow(m as u32);
    if let Some(size) = size.filter(|&s| s <= EXHAUSTIVE_LIMIT as u128) {
        let mut coeffs = vec![0u32; m];
        for _ in 1..size {
            // Next tuple in base p.
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c == f.modulus() {
                    *c = 0;
                } else {
                    break;
                }
            }
            let v = basis.apply(&coeffs);
            if ok(&v) {
                return Search::Found(v);
            }
        }
        return Search::Exhausted;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<u32> = (0..m).map(|_| rng.random_range(0..f.modulus())).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let v = basis.apply(&coeffs);
        if ok(&v) {
            return Search::Found(v);
        }
    }
    Search::GaveUp
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; d];
    v[i] = 1;
    v
}

fn axpy(f: PrimeField, out: &mut [u32], s: u32, x: &[u32]) {
    for (o, &v) in out.iter_mut().zip(x) {
        if v != 0 {
            *o = f.add(*o, f.mul(s, v));
        }
    }
}

fn multiply_in(data: &AlgebraData, x: &[u32], y: &[u32]) -> Vec<u32> {
    let f = data.field;
    let d = data.dim;
    let mut out = vec![0u32; d];
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        for (b, &yb) in y.iter().enumerate() {
            if yb != 0 {
                let off = (a * d + b) * d;
                axpy(f, &mut out, f.mul(xa, yb), &data.table[off..off + d]);
            }
        }
    }
    out
}

/// Number of basis paths of each length, keyed by length.
pub fn length_profile(a: &Algebra) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for b in 0..a.dim() {
        *out.entry(a.basis_length(b)).or_insert(0) += 1;
    }
    out
}
