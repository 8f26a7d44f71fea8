//! Right modules as matrix representations.
//!
//! A module of dimension `d` over an algebra `A` stores one `d x d` matrix per
//! basis element of `A`; a vector `v` times basis element `a` is `v * act(a)`.
//! Left modules and modules over `A^op` are right modules over
//! [`Algebra::opposite`].

use std::sync::Arc;

use crate::algebra::{search_combinations, Algebra, Search};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField, Subspace};

#[derive(Clone)]
pub struct Module {
    algebra: Algebra,
    dim: usize,
    actions: Arc<Vec<Matrix>>,
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim {} over {:?})", self.dim, self.algebra)
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.algebra == other.algebra && self.actions == other.actions
    }
}

impl Module {
    /// Validates the action matrices before accepting them.
    pub fn new(algebra: Algebra, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        if actions.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        if actions
            .iter()
            .any(|m| m.shape() != (dim, dim) || m.field() != algebra.field())
        {
            return Err(Error::InvalidModule(format!(
                "action matrices must be {dim}x{dim} over {}",
                algebra.field()
            )));
        }
        let module = Self::from_parts(algebra, dim, actions);
        module.check_axioms()?;
        Ok(module)
    }

    pub(crate) fn from_parts(algebra: Algebra, dim: usize, actions: Vec<Matrix>) -> Self {
        Self {
            algebra,
            dim,
            actions: Arc::new(actions),
        }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        let f = algebra.field();
        let actions = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        Self::from_parts(algebra.clone(), 0, actions)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action of an arbitrary algebra element given by coordinates.
    pub fn action_of(&self, element: &[u32]) -> Matrix {
        assert_eq!(element.len(), self.algebra.dim());
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (b, &c) in element.iter().enumerate() {
            m.add_scaled(&self.actions[b], c);
        }
        m
    }

    /// `v * (ab) = (v * a) * b` on all basis pairs, and `1` acts as the
    /// identity.
    pub fn check_axioms(&self) -> Result<()> {
        if !self.action_of(self.algebra.identity()).is_identity() {
            return Err(Error::InvalidModule(
                "identity does not act trivially".into(),
            ));
        }
        let d = self.algebra.dim();
        for a in 0..d {
            for b in 0..d {
                let composed = self.actions[a].mul(&self.actions[b]);
                if composed != self.action_of(self.algebra.product(a, b)) {
                    return Err(Error::InvalidModule(format!(
                        "action of {} * {} is not the composite",
                        self.algebra.labels()[a],
                        self.algebra.labels()[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The subspace `V e_i`.
    pub fn vertex_subspace(&self, vertex: usize) -> Result<Subspace> {
        let e = self.algebra.idempotent(vertex)?;
        Ok(self.action_of(e).image())
    }

    /// Dimension vector `(dim V e_0, ..., dim V e_{k-1})`.
    pub fn dimension_vector(&self) -> Vec<usize> {
        (0..self.algebra.vertex_count())
            .map(|i| self.vertex_subspace(i).expect("valid vertex").dim())
            .collect()
    }

    /// Whether `w` is closed under the action of every basis element.
    pub fn is_invariant(&self, w: &Subspace) -> bool {
        w.ambient_dim() == self.dim
            && self
                .actions
                .iter()
                .all(|m| w.basis().mul(m).row_vectors().all(|v| w.contains(v)))
    }
}

/// An `F`-linear map `v -> v * matrix` that intertwines the actions.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Self> {
        if source.algebra != target.algebra {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.shape() != (source.dim, target.dim) {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{} but modules have dimensions {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        let map = Self {
            source,
            target,
            matrix,
        };
        if !map.is_intertwining() {
            return Err(Error::NotHomomorphism);
        }
        Ok(map)
    }

    pub(crate) fn from_parts(source: Module, target: Module, matrix: Matrix) -> Self {
        debug_assert_eq!(matrix.shape(), (source.dim, target.dim));
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(module: &Module) -> Self {
        let m = Matrix::identity(module.field(), module.dim);
        Self::from_parts(module.clone(), module.clone(), m)
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let m = Matrix::zeros(source.field(), source.dim, target.dim);
        Self::from_parts(source.clone(), target.clone(), m)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `matrix * act_target(a) = act_source(a) * matrix` for every basis `a`.
    pub fn is_intertwining(&self) -> bool {
        (0..self.source.algebra.dim()).all(|a| {
            self.matrix.mul(self.target.action(a)) == self.source.action(a).mul(&self.matrix)
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap> {
        if self.target.dim != next.source.dim || self.target.algebra != next.source.algebra {
            return Err(Error::ShapeMismatch("maps do not compose".into()));
        }
        Ok(Self::from_parts(
            self.source.clone(),
            next.target.clone(),
            self.matrix.mul(&next.matrix),
        ))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// `Hom_A(U, V)` with a canonical basis of flattened (row-major) matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    basis: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    /// Basis as flattened matrices.
    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub fn map(&self, i: usize) -> ModuleMap {
        let m = self.unflatten(self.basis.basis().row(i));
        ModuleMap::from_parts(self.source.clone(), self.target.clone(), m)
    }

    pub fn maps(&self) -> Vec<ModuleMap> {
        (0..self.dim()).map(|i| self.map(i)).collect()
    }

    pub fn combination(&self, coeffs: &[u32]) -> ModuleMap {
        let flat = self.basis.basis().apply(coeffs);
        ModuleMap::from_parts(
            self.source.clone(),
            self.target.clone(),
            self.unflatten(&flat),
        )
    }

    /// Coordinates of a matrix in the basis, if it is a homomorphism.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<u32>> {
        if m.shape() != (self.source.dim, self.target.dim) {
            return None;
        }
        self.basis.coordinates(m.data())
    }

    fn unflatten(&self, flat: &[u32]) -> Matrix {
        Matrix::from_vec(
            self.source.field(),
            self.source.dim,
            self.target.dim,
            flat.to_vec(),
        )
    }
}

/// Basis of `Hom_A(U, V)`.
///
/// Starts from maps respecting the vertex decomposition `U = sum U e_i` and
/// cuts the candidate space down with the intertwining equations of every
/// basis element of `A` in turn.
pub fn hom_space(u: &Module, v: &Module) -> Result<HomSpace> {
    if u.algebra != v.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let f = u.field();
    let (du, dv) = (u.dim, v.dim);
    let n = du * dv;
    let done = |basis| {
        Ok(HomSpace {
            source: u.clone(),
            target: v.clone(),
            basis,
        })
    };
    if n == 0 {
        return done(Subspace::zero(f, 0));
    }

    let k = u.algebra.vertex_count();
    let u_blocks: Vec<Subspace> = (0..k)
        .map(|i| u.vertex_subspace(i))
        .collect::<Result<_>>()?;
    let v_blocks: Vec<Subspace> = (0..k)
        .map(|i| v.vertex_subspace(i))
        .collect::<Result<_>>()?;
    let parts: Vec<&Matrix> = u_blocks.iter().map(Subspace::basis).collect();
    let change = Matrix::vstack(f, du, &parts);
    let change_inv = change
        .inverse()
        .ok_or_else(|| Error::InvalidModule("idempotents do not decompose the module".into()))?;
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    let mut offset = 0;
    for i in 0..k {
        for g in offset..offset + u_blocks[i].dim() {
            for target_row in v_blocks[i].basis().row_vectors() {
                let mut flat = vec![0u32; n];
                for r in 0..du {
                    let c = change_inv.get(r, g);
                    if c == 0 {
                        continue;
                    }
                    for (s, &t) in target_row.iter().enumerate() {
                        flat[r * dv + s] = f.mul(c, t);
                    }
                }
                candidates.push(flat);
            }
        }
        offset += u_blocks[i].dim();
    }

    for a in 0..u.algebra.dim() {
        if candidates.is_empty() {
            break;
        }
        let (act_u, act_v) = (u.action(a), v.action(a));
        let residuals: Vec<Vec<u32>> = candidates
            .iter()
            .map(|flat| {
                let m = Matrix::from_vec(f, du, dv, flat.clone());
                m.mul(act_v).sub(&act_u.mul(&m)).data().to_vec()
            })
            .collect();
        if residuals.iter().all(|r| r.iter().all(|&x| x == 0)) {
            continue;
        }
        let residual_matrix = Matrix::from_row_vectors(f, n, &residuals);
        let combos = residual_matrix.left_kernel();
        let current = Matrix::from_row_vectors(f, n, &candidates);
        candidates = combos
            .basis()
            .row_vectors()
            .map(|c| current.apply(c))
            .collect();
    }
    done(Subspace::from_vectors(f, n, &candidates))
}

pub fn hom_dim(u: &Module, v: &Module) -> Result<usize> {
    Ok(hom_space(u, v)?.dim())
}

/// `A` as a right module over itself.
pub fn regular_module(a: &Algebra) -> Module {
    let actions = (0..a.dim()).map(|b| a.right_multiplication(b)).collect();
    Module::from_parts(a.clone(), a.dim(), actions)
}

fn check_vertex(a: &Algebra, i: usize) -> Result<()> {
    if i >= a.vertex_count() {
        return Err(Error::InvalidVertex {
            vertex: i,
            count: a.vertex_count(),
        });
    }
    Ok(())
}

/// The one-dimensional module on which `e_i` acts as 1 and every other basis
/// element as 0.
pub fn simple(a: &Algebra, i: usize) -> Result<Module> {
    check_vertex(a, i)?;
    let f = a.field();
    let actions = (0..a.dim())
        .map(|b| {
            let v = u32::from(a.basis_vertex(b) == Some(i));
            Matrix::from_vec(f, 1, 1, vec![v])
        })
        .collect();
    Ok(Module::from_parts(a.clone(), 1, actions))
}

/// `P_i = e_i A`.
pub fn projective(a: &Algebra, i: usize) -> Result<Module> {
    check_vertex(a, i)?;
    let e = a.idempotent(i)?.to_vec();
    let rows: Vec<Vec<u32>> = (0..a.dim())
        .map(|b| {
            let mut unit = vec![0u32; a.dim()];
            unit[b] = 1;
            a.multiply(&e, &unit).expect("matching dimensions")
        })
        .collect();
    let w = Subspace::from_vectors(a.field(), a.dim(), &rows);
    submodule(&regular_module(a), &w)
}

/// `I_i = D(A e_i)`, the dual of the projective `e_i A^op`.
pub fn injective(a: &Algebra, i: usize) -> Result<Module> {
    check_vertex(a, i)?;
    Ok(f_dual(&projective(&a.opposite(), i)?))
}

/// `Hom_F(V, F)` as a right module over the opposite algebra; the action of
/// `a` is the transpose of its action on `V`.
pub fn f_dual(v: &Module) -> Module {
    let actions = v.actions.iter().map(Matrix::transpose).collect();
    Module::from_parts(v.algebra.opposite(), v.dim, actions)
}

/// `D(f): D(V) -> D(U)` for `f: U -> V`.
pub fn f_dual_map(f: &ModuleMap) -> ModuleMap {
    ModuleMap::from_parts(f_dual(&f.target), f_dual(&f.source), f.matrix.transpose())
}

/// The evaluation isomorphism `V -> D(D(V))`. With row-vector coordinates on
/// both sides it is the identity matrix.
pub fn double_dual_map(v: &Module) -> Result<ModuleMap> {
    let dd = f_dual(&f_dual(v));
    ModuleMap::new(v.clone(), dd, Matrix::identity(v.field(), v.dim))
}

/// `Hom_A(V, A)` as a right `A^op`-module, `(f * a)(x) = a f(x)`, together
/// with the basis of homomorphisms it is written in.
pub fn a_dual_with_basis(v: &Module) -> Result<(Module, HomSpace)> {
    let a = v.algebra.clone();
    let hom = hom_space(v, &regular_module(&a))?;
    let m = hom.dim();
    let f = a.field();
    let maps = hom.maps();
    let mut actions = Vec::with_capacity(a.dim());
    for b in 0..a.dim() {
        let left = a.left_multiplication(b);
        let mut act = Matrix::zeros(f, m, m);
        for (r, map) in maps.iter().enumerate() {
            let moved = map.matrix().mul(&left);
            let coords = hom.coordinates(&moved).ok_or(Error::NotHomomorphism)?;
            for (c, &x) in coords.iter().enumerate() {
                act.set(r, c, x);
            }
        }
        actions.push(act);
    }
    Ok((Module::from_parts(a.opposite(), m, actions), hom))
}

pub fn a_dual(v: &Module) -> Result<Module> {
    Ok(a_dual_with_basis(v)?.0)
}

/// `nu(V) = D(Hom_A(V, A))`, again a right `A`-module.
pub fn nakayama(v: &Module) -> Result<Module> {
    Ok(f_dual(&a_dual(v)?))
}

pub fn direct_sum(u: &Module, v: &Module) -> Result<Module> {
    if u.algebra != v.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let f = u.field();
    let d = u.dim + v.dim;
    let actions = (0..u.algebra.dim())
        .map(|b| {
            let mut m = Matrix::zeros(f, d, d);
            for r in 0..u.dim {
                for c in 0..u.dim {
                    m.set(r, c, u.action(b).get(r, c));
                }
            }
            for r in 0..v.dim {
                for c in 0..v.dim {
                    m.set(u.dim + r, u.dim + c, v.action(b).get(r, c));
                }
            }
            m
        })
        .collect();
    Ok(Module::from_parts(u.algebra.clone(), d, actions))
}

/// The module `upper / lower` for invariant subspaces `lower <= upper` of a
/// parent module, with coordinate maps against the parent.
#[derive(Clone, Debug)]
pub struct Subquotient {
    parent: Module,
    upper: Subspace,
    lower: Subspace,
    module: Module,
    /// parent_dim x dim; sends vectors of `upper` to their class.
    projection: Matrix,
    /// dim x parent_dim; representatives in `upper`.
    section: Matrix,
}

impl Subquotient {
    pub fn new(parent: &Module, upper: &Subspace, lower: &Subspace) -> Result<Self> {
        for w in [upper, lower] {
            if w.ambient_dim() != parent.dim {
                return Err(Error::DimensionMismatch {
                    expected: parent.dim,
                    found: w.ambient_dim(),
                });
            }
            if !parent.is_invariant(w) {
                return Err(Error::NotInvariant);
            }
        }
        let coords = Subspace::layer_coordinates(upper, lower)?;
        let q = coords.section.rows();
        let actions = parent
            .actions
            .iter()
            .map(|m| coords.section.mul(m).mul(&coords.projection))
            .collect();
        Ok(Self {
            parent: parent.clone(),
            upper: upper.clone(),
            lower: lower.clone(),
            module: Module::from_parts(parent.algebra.clone(), q, actions),
            projection: coords.projection,
            section: coords.section,
        })
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn into_module(self) -> Module {
        self.module
    }

    pub fn parent(&self) -> &Module {
        &self.parent
    }

    pub fn upper(&self) -> &Subspace {
        &self.upper
    }

    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// The canonical map `upper -> upper / lower`, as a map from the
    /// submodule `upper` written in its rref coordinates.
    pub fn quotient_map(&self) -> Result<ModuleMap> {
        let sub = submodule(&self.parent, &self.upper)?;
        let m = self.upper.basis().mul(&self.projection);
        Ok(ModuleMap::from_parts(sub, self.module.clone(), m))
    }

    /// When `lower = 0`, the inclusion of the submodule into the parent.
    pub fn inclusion(&self) -> Result<ModuleMap> {
        if !self.lower.is_zero() {
            return Err(Error::ShapeMismatch("not a submodule".into()));
        }
        Ok(ModuleMap::from_parts(
            self.module.clone(),
            self.parent.clone(),
            self.section.clone(),
        ))
    }

    /// When `upper` is everything, the projection from the parent.
    pub fn quotient_projection(&self) -> Result<ModuleMap> {
        if !self.upper.is_full() {
            return Err(Error::ShapeMismatch("not a quotient".into()));
        }
        Ok(ModuleMap::from_parts(
            self.parent.clone(),
            self.module.clone(),
            self.projection.clone(),
        ))
    }
}

pub fn quotient_module(v: &Module, w: &Subspace) -> Result<Module> {
    Ok(Subquotient::new(v, &Subspace::full(v.field(), v.dim), w)?.into_module())
}

pub fn submodule(v: &Module, w: &Subspace) -> Result<Module> {
    Ok(Subquotient::new(v, w, &Subspace::zero(v.field(), v.dim))?.into_module())
}

/// The map between subquotients induced by `f`, which must carry the upper
/// and lower subspaces of `source` into those of `target`.
pub fn induced_map(f: &ModuleMap, source: &Subquotient, target: &Subquotient) -> Result<ModuleMap> {
    if source.parent.dim != f.source.dim || target.parent.dim != f.target.dim {
        return Err(Error::ShapeMismatch(
            "subquotients do not live in the map's source and target".into(),
        ));
    }
    let maps_into = |from: &Subspace, to: &Subspace| {
        from.basis()
            .mul(&f.matrix)
            .row_vectors()
            .all(|v| to.contains(v))
    };
    if !maps_into(&source.upper, &target.upper) || !maps_into(&source.lower, &target.lower) {
        return Err(Error::ShapeMismatch(
            "map does not respect the subquotient filtrations".into(),
        ));
    }
    let m = source.section.mul(&f.matrix).mul(&target.projection);
    Ok(ModuleMap::from_parts(
        source.module.clone(),
        target.module.clone(),
        m,
    ))
}

#[derive(Debug, Clone)]
pub enum IsoSearch {
    Found(ModuleMap),
    NotIsomorphic,
    Unknown,
}

impl IsoSearch {
    pub fn witness(&self) -> Option<&ModuleMap> {
        match self {
            IsoSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Looks for an invertible homomorphism `U -> V`: first among the Hom basis,
/// then over all combinations when there are at most
/// [`crate::algebra::EXHAUSTIVE_LIMIT`], otherwise over `trials` seeded
/// random combinations.
pub fn find_isomorphism(u: &Module, v: &Module, trials: usize, seed: u64) -> Result<IsoSearch> {
    if u.algebra != v.algebra {
        return Err(Error::AlgebraMismatch);
    }
    if u.dim != v.dim {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if u.dim == 0 {
        return Ok(IsoSearch::Found(ModuleMap::zero(u, v)));
    }
    let hom = hom_space(u, v)?;
    if hom.dim() == 0 {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if let Some(m) = hom.maps().into_iter().find(ModuleMap::is_isomorphism) {
        return Ok(IsoSearch::Found(m));
    }
    let f = u.field();
    let invertible =
        |flat: &[u32]| Matrix::from_vec(f, u.dim, v.dim, flat.to_vec()).is_invertible();
    Ok(
        match search_combinations(hom.basis().basis(), trials, seed, invertible) {
            Search::Found(flat) => IsoSearch::Found(ModuleMap::from_parts(
                u.clone(),
                v.clone(),
                Matrix::from_vec(f, u.dim, v.dim, flat),
            )),
            Search::Exhausted => IsoSearch::NotIsomorphic,
            Search::GaveUp => IsoSearch::Unknown,
        },
    )
}
