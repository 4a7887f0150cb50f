//! Finitely generated modules over `Z` and `Z/N`.
//!
//! A [`StdModule`] is a direct sum of cyclic modules `Z/d_1 + ... + Z/d_k`
//! (`d_i = 0` meaning a copy of `Z`). Homomorphisms between them are
//! [`StdMap`]s, integer matrices in the row-vector convention. Kernels,
//! images, cokernels, `Hom` and `Ext^1` all reduce to Smith normal forms.

use std::fmt;

use crate::linalg::{smith_normal_form, Matrix};
use crate::scalar::IntScalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("matrix of shape {rows}x{cols} does not fit a map from {src} to {tgt} generators")]
    Shape {
        rows: usize,
        cols: usize,
        src: usize,
        tgt: usize,
    },
    #[error("map is not well defined on generator {0}")]
    IllDefined(usize),
    #[error("modules are not composable")]
    NotComposable,
    #[error("order {order} does not divide the ring characteristic {modulus}")]
    NotOverRing { order: String, modulus: String },
}

/// `Z` or `Z/N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseRing<T> {
    Integers,
    ZMod(T),
}

impl<T: IntScalar> BaseRing<T> {
    /// The characteristic, `0` for `Z`.
    pub fn modulus(&self) -> T {
        match self {
            BaseRing::Integers => T::zero(),
            BaseRing::ZMod(n) => n.clone(),
        }
    }

    /// The free module of rank `k`.
    pub fn free(&self, k: usize) -> StdModule<T> {
        StdModule::new(vec![self.modulus(); k])
    }

    pub fn admits(&self, m: &StdModule<T>) -> bool {
        match self {
            BaseRing::Integers => true,
            BaseRing::ZMod(n) => m.orders().iter().all(|d| !d.is_zero() && (n.clone() % d.clone()).is_zero()),
        }
    }
}

impl<T: IntScalar> fmt::Display for BaseRing<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::ZMod(n) => write!(f, "Z/{n}"),
        }
    }
}

/// `Z/d_1 + ... + Z/d_k`; orders are nonnegative, `0` is a free summand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StdModule<T> {
    orders: Vec<T>,
}

impl<T: IntScalar> StdModule<T> {
    pub fn new(orders: Vec<T>) -> Self {
        StdModule {
            orders: orders.into_iter().map(|d| d.abs()).collect(),
        }
    }

    pub fn zero() -> Self {
        StdModule { orders: vec![] }
    }

    pub fn cyclic(d: T) -> Self {
        Self::new(vec![d])
    }

    pub fn from_i64(orders: &[i64]) -> Self {
        Self::new(orders.iter().map(|&d| T::of(d)).collect())
    }

    pub fn orders(&self) -> &[T] {
        &self.orders
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.iter().all(|d| d.is_one())
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|d| !d.is_zero())
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|d| d.is_zero()).count()
    }

    /// Cardinality, `None` when infinite.
    pub fn card(&self) -> Option<T> {
        if !self.is_finite() {
            return None;
        }
        Some(self.orders.iter().fold(T::one(), |acc, d| acc * d.clone()))
    }

    /// Canonical invariant factors `d_1 | d_2 | ...` (units dropped), free
    /// summands as trailing zeros.
    pub fn invariant_factors(&self) -> Vec<T> {
        let snf = smith_normal_form(&Matrix::diagonal(&self.orders));
        snf.cokernel_orders()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn canonical(&self) -> Self {
        Self::new(self.invariant_factors())
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Exponent of the torsion part (lcm of the nonzero orders).
    pub fn exponent(&self) -> T {
        self.orders
            .iter()
            .filter(|d| !d.is_zero())
            .fold(T::one(), |acc, d| acc.lcm(d))
    }

    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        v.iter().zip(&self.orders).map(|(x, d)| x.reduce(d)).collect()
    }

    pub fn is_zero_element(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(other.orders.iter().cloned());
        StdModule { orders }
    }

    /// Relation rows `d_i e_i` for the nonzero orders.
    pub fn relation_matrix(&self) -> Matrix<T> {
        let k = self.len();
        let rows = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut r = vec![T::zero(); k];
                r[i] = d.clone();
                r
            })
            .collect();
        Matrix::from_rows(k, rows)
    }

    /// All elements in lexicographic order. Panics on infinite modules.
    pub fn elements(&self) -> Vec<Vec<T>> {
        assert!(self.is_finite(), "cannot enumerate an infinite module");
        let mut out = vec![vec![]];
        for d in &self.orders {
            let mut next = Vec::new();
            for prefix in &out {
                let mut c = T::zero();
                while c < *d {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    next.push(v);
                    c = c + T::one();
                }
            }
            out = next;
        }
        out
    }
}

impl<T: IntScalar> fmt::Display for StdModule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariant_factors();
        if inv.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = inv
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<T: fmt::Debug> fmt::Debug for StdModule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StdModule{:?}", self.orders)
    }
}

/// A homomorphism of standard modules; row `i` is the image of generator `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct StdMap<T> {
    src: StdModule<T>,
    tgt: StdModule<T>,
    matrix: Matrix<T>,
}

impl<T: IntScalar> StdMap<T> {
    pub fn new(src: StdModule<T>, tgt: StdModule<T>, mut matrix: Matrix<T>) -> Result<Self, ModuleError> {
        if matrix.rows() != src.len() || matrix.cols() != tgt.len() {
            return Err(ModuleError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                src: src.len(),
                tgt: tgt.len(),
            });
        }
        matrix.reduce_cols(tgt.orders());
        for (i, a) in src.orders().iter().enumerate() {
            let img: Vec<T> = matrix.row(i).iter().map(|x| x.clone() * a.clone()).collect();
            if a.is_zero() {
                continue;
            }
            if !tgt.is_zero_element(&img) {
                return Err(ModuleError::IllDefined(i));
            }
        }
        Ok(StdMap { src, tgt, matrix })
    }

    pub fn identity(m: &StdModule<T>) -> Self {
        StdMap {
            src: m.clone(),
            tgt: m.clone(),
            matrix: Matrix::identity(m.len()),
        }
        .reduced()
    }

    pub fn zero(src: &StdModule<T>, tgt: &StdModule<T>) -> Self {
        StdMap {
            src: src.clone(),
            tgt: tgt.clone(),
            matrix: Matrix::zeros(src.len(), tgt.len()),
        }
    }

    /// Multiplication by `r` on `m`.
    pub fn scalar(m: &StdModule<T>, r: &T) -> Self {
        let diag = vec![r.clone(); m.len()];
        StdMap {
            src: m.clone(),
            tgt: m.clone(),
            matrix: Matrix::diagonal(&diag),
        }
        .reduced()
    }

    fn reduced(mut self) -> Self {
        self.matrix.reduce_cols(self.tgt.orders());
        self
    }

    pub fn src(&self) -> &StdModule<T> {
        &self.src
    }

    pub fn tgt(&self) -> &StdModule<T> {
        &self.tgt
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.tgt.reduce(&self.matrix.apply(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &StdMap<T>) -> Result<StdMap<T>, ModuleError> {
        if self.tgt != other.src {
            return Err(ModuleError::NotComposable);
        }
        Ok(StdMap {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            matrix: &self.matrix * &other.matrix,
        }
        .reduced())
    }

    pub fn is_zero(&self) -> bool {
        (0..self.src.len()).all(|i| self.tgt.is_zero_element(self.matrix.row(i)))
    }

    pub fn kernel(&self) -> Submodule<T> {
        let stacked = self.matrix.vstack(&self.tgt.relation_matrix());
        let lk = smith_normal_form(&stacked).left_kernel();
        let idx: Vec<usize> = (0..self.src.len()).collect();
        submodule(&self.src, &lk.select_cols(&idx))
    }

    pub fn image(&self) -> Submodule<T> {
        submodule(&self.tgt, &self.matrix)
    }

    pub fn cokernel(&self) -> Quotient<T> {
        quotient(&self.tgt, &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().module.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Block diagonal sum `self + other`.
    pub fn direct_sum(&self, other: &StdMap<T>) -> StdMap<T> {
        let top = self.matrix.hstack(&Matrix::zeros(self.src.len(), other.tgt.len()));
        let bottom = Matrix::zeros(other.src.len(), self.tgt.len()).hstack(&other.matrix);
        StdMap {
            src: self.src.direct_sum(&other.src),
            tgt: self.tgt.direct_sum(&other.tgt),
            matrix: top.vstack(&bottom),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for StdMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} by {:?}", self.src, self.tgt, self.matrix)
    }
}

/// Result of bringing a presentation to standard form.
#[derive(Clone, Debug)]
pub struct Standardized<T> {
    pub module: StdModule<T>,
    /// Presentation coordinates to standard coordinates.
    pub to_std: Matrix<T>,
    /// Standard generators written in presentation coordinates.
    pub from_std: Matrix<T>,
}

/// `Z^g / rowspace(relations)` in standard form.
pub fn standardize<T: IntScalar>(relations: &Matrix<T>) -> Standardized<T> {
    let snf = smith_normal_form(relations);
    let orders = snf.cokernel_orders();
    let keep: Vec<usize> = (0..orders.len()).filter(|&i| !orders[i].is_one()).collect();
    let module = StdModule::new(keep.iter().map(|&i| orders[i].clone()).collect());
    let mut to_std = snf.v.select_cols(&keep);
    to_std.reduce_cols(module.orders());
    let from_std = snf.v_inv.select_rows(&keep);
    Standardized {
        module,
        to_std,
        from_std,
    }
}

/// A submodule together with its inclusion.
#[derive(Clone, Debug)]
pub struct Submodule<T> {
    pub module: StdModule<T>,
    pub inclusion: StdMap<T>,
}

/// A quotient together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient<T> {
    pub module: StdModule<T>,
    pub projection: StdMap<T>,
    /// Lifts of the quotient generators to the ambient module, as rows.
    pub section: Matrix<T>,
}

impl<T: IntScalar> Submodule<T> {
    /// Coordinates of an ambient element lying in the submodule.
    pub fn coords(&self, v: &[T]) -> Option<Vec<T>> {
        let ambient = self.inclusion.tgt();
        let stacked = self.inclusion.matrix().vstack(&ambient.relation_matrix());
        let x = smith_normal_form(&stacked).solve_left(v)?;
        Some(self.module.reduce(&x[..self.module.len()]))
    }

    /// The inclusion of an element-wise contained submodule `other` into
    /// this one, or `None` when `other` is not contained.
    pub fn include(&self, other: &Submodule<T>) -> Option<StdMap<T>> {
        let rows = (0..other.module.len())
            .map(|i| self.coords(other.inclusion.matrix().row(i)))
            .collect::<Option<Vec<_>>>()?;
        StdMap::new(other.module.clone(), self.module.clone(), Matrix::from_rows(self.module.len(), rows)).ok()
    }
}

/// Submodule of `ambient` generated by the rows of `gens`.
pub fn submodule<T: IntScalar>(ambient: &StdModule<T>, gens: &Matrix<T>) -> Submodule<T> {
    assert_eq!(gens.cols(), ambient.len(), "generator length mismatch");
    let r = gens.rows();
    let stacked = gens.vstack(&ambient.relation_matrix());
    let lk = smith_normal_form(&stacked).left_kernel();
    let idx: Vec<usize> = (0..r).collect();
    let rel = lk.select_cols(&idx);
    let st = standardize(&rel);
    let incl = &st.from_std * gens;
    let inclusion = StdMap::new(st.module.clone(), ambient.clone(), incl)
        .expect("inclusion of a generated submodule is well defined");
    Submodule {
        module: st.module,
        inclusion,
    }
}

/// `ambient / <rows of gens>`.
pub fn quotient<T: IntScalar>(ambient: &StdModule<T>, gens: &Matrix<T>) -> Quotient<T> {
    assert_eq!(gens.cols(), ambient.len(), "generator length mismatch");
    let stacked = gens.vstack(&ambient.relation_matrix());
    let st = standardize(&stacked);
    let projection = StdMap::new(ambient.clone(), st.module.clone(), st.to_std)
        .expect("quotient projection is well defined");
    Quotient {
        module: st.module,
        projection,
        section: st.from_std,
    }
}

/// Whether `v` lies in the submodule generated by `gens`.
pub fn contains<T: IntScalar>(ambient: &StdModule<T>, gens: &Matrix<T>, v: &[T]) -> bool {
    let q = quotient(ambient, gens);
    q.module.is_zero_element(&q.projection.apply(v))
}

/// Whether two generating sets span the same submodule.
pub fn same_submodule<T: IntScalar>(ambient: &StdModule<T>, a: &Matrix<T>, b: &Matrix<T>) -> bool {
    let qa = quotient(ambient, a);
    let qb = quotient(ambient, b);
    (0..b.rows()).all(|i| qa.module.is_zero_element(&qa.projection.apply(b.row(i))))
        && (0..a.rows()).all(|i| qb.module.is_zero_element(&qb.projection.apply(a.row(i))))
}

/// `Hom(A, B)` with explicit coordinates.
#[derive(Clone, Debug)]
pub struct HomModule<T> {
    pub src: StdModule<T>,
    pub tgt: StdModule<T>,
    pub module: StdModule<T>,
    /// One entry per generator: `(i, j, v)` is the map `e_i -> v e_j`.
    slots: Vec<(usize, usize, T)>,
}

impl<T: IntScalar> HomModule<T> {
    pub fn new(src: &StdModule<T>, tgt: &StdModule<T>) -> Self {
        let mut slots = Vec::new();
        let mut orders = Vec::new();
        for (i, a) in src.orders().iter().enumerate() {
            for (j, b) in tgt.orders().iter().enumerate() {
                let (g, v) = match (a.is_zero(), b.is_zero()) {
                    (true, _) => (b.clone(), T::one()),
                    (false, true) => continue,
                    (false, false) => {
                        let g = a.gcd(b);
                        (g.clone(), b.clone() / g)
                    }
                };
                if g.is_one() {
                    continue;
                }
                slots.push((i, j, v));
                orders.push(g);
            }
        }
        HomModule {
            src: src.clone(),
            tgt: tgt.clone(),
            module: StdModule::new(orders),
            slots,
        }
    }

    /// The homomorphism with the given coordinates.
    pub fn to_map(&self, coords: &[T]) -> StdMap<T> {
        let mut m: Matrix<T> = Matrix::zeros(self.src.len(), self.tgt.len());
        for ((i, j, v), c) in self.slots.iter().zip(coords) {
            m[(*i, *j)] = m[(*i, *j)].clone() + c.clone() * v.clone();
        }
        StdMap::new(self.src.clone(), self.tgt.clone(), m).expect("Hom coordinates give a well defined map")
    }

    /// Coordinates of a homomorphism `src -> tgt`.
    pub fn coords(&self, f: &StdMap<T>) -> Vec<T> {
        let m = f.matrix();
        self.slots
            .iter()
            .zip(self.module.orders())
            .map(|((i, j, v), g)| {
                let entry = m[(*i, *j)].reduce(&self.tgt.orders()[*j]);
                debug_assert!((entry.clone() % v.clone()).is_zero());
                (entry / v.clone()).reduce(g)
            })
            .collect()
    }

    /// `phi -> pre ∘ phi` as a map `Hom(src, tgt) -> Hom(pre.src, tgt)`.
    pub fn precompose(&self, pre: &StdMap<T>, other: &HomModule<T>) -> StdMap<T> {
        assert_eq!(pre.tgt(), &self.src);
        assert_eq!(pre.src(), &other.src);
        let rows: Vec<Vec<T>> = (0..self.module.len())
            .map(|k| {
                let mut e = vec![T::zero(); self.module.len()];
                e[k] = T::one();
                let phi = self.to_map(&e);
                let composed = pre.then(&phi).expect("composable");
                other.coords(&composed)
            })
            .collect();
        StdMap::new(
            self.module.clone(),
            other.module.clone(),
            Matrix::from_rows(other.module.len(), rows),
        )
        .expect("precomposition is well defined")
    }
}

/// A projective presentation `0 -> K -> R^k -> F -> 0` over `ring`.
pub fn syzygy<T: IntScalar>(ring: &BaseRing<T>, f: &StdModule<T>) -> Submodule<T> {
    let p = ring.free(f.len());
    let pi = StdMap::new(p, f.clone(), Matrix::identity(f.len())).expect("generators map onto F");
    pi.kernel()
}

/// `Ext^1_ring(F, E)`.
pub fn ext1<T: IntScalar>(ring: &BaseRing<T>, f: &StdModule<T>, e: &StdModule<T>) -> StdModule<T> {
    let k = syzygy(ring, f);
    let hom_p = HomModule::new(k.inclusion.tgt(), e);
    let hom_k = HomModule::new(&k.module, e);
    hom_p.precompose(&k.inclusion, &hom_k).cokernel().module
}

/// `Ext^2_ring(F, E)` by dimension shifting.
pub fn ext2<T: IntScalar>(ring: &BaseRing<T>, f: &StdModule<T>, e: &StdModule<T>) -> StdModule<T> {
    let k = syzygy(ring, f);
    ext1(ring, &k.module, e)
}

/// A module `Z^g / rowspace(presentation)` over `Z` or `Z/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule<T> {
    ring: BaseRing<T>,
    presentation: Matrix<T>,
}

impl<T: IntScalar> FpModule<T> {
    pub fn new(ring: BaseRing<T>, mut presentation: Matrix<T>) -> Self {
        if let BaseRing::ZMod(n) = &ring {
            let moduli = vec![n.clone(); presentation.cols()];
            presentation.reduce_cols(&moduli);
        }
        FpModule { ring, presentation }
    }

    /// Direct sum of cyclic modules with the given orders.
    pub fn cyclic_sum(ring: BaseRing<T>, orders: &[T]) -> Self {
        let rel = StdModule::new(orders.to_vec()).relation_matrix();
        Self::new(ring, rel)
    }

    pub fn ring(&self) -> &BaseRing<T> {
        &self.ring
    }

    pub fn presentation(&self) -> &Matrix<T> {
        &self.presentation
    }

    pub fn generators(&self) -> usize {
        self.presentation.cols()
    }

    /// Relations as a `Z`-module, including `N e_i` over `Z/N`.
    pub fn integer_relations(&self) -> Matrix<T> {
        match &self.ring {
            BaseRing::Integers => self.presentation.clone(),
            BaseRing::ZMod(n) => {
                let g = self.generators();
                let extra = Matrix::diagonal(&vec![n.clone(); g]);
                self.presentation.vstack(&extra)
            }
        }
    }

    pub fn standardize(&self) -> Standardized<T> {
        standardize(&self.integer_relations())
    }

    pub fn std(&self) -> StdModule<T> {
        self.standardize().module
    }

    /// Cyclic decomposition orders (`0` for a free summand).
    pub fn invariants(&self) -> Vec<T> {
        self.std().invariant_factors()
    }
}

/// Converts a map given in presentation coordinates to standard coordinates.
pub fn std_map<T: IntScalar>(
    src: &Standardized<T>,
    tgt: &Standardized<T>,
    matrix: &Matrix<T>,
) -> Result<StdMap<T>, ModuleError> {
    if matrix.rows() != src.to_std.rows() || matrix.cols() != tgt.to_std.rows() {
        return Err(ModuleError::Shape {
            rows: matrix.rows(),
            cols: matrix.cols(),
            src: src.to_std.rows(),
            tgt: tgt.to_std.rows(),
        });
    }
    let m = &(&src.from_std * matrix) * &tgt.to_std;
    StdMap::new(src.module.clone(), tgt.module.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = StdModule<i128>;

    fn m(orders: &[i64]) -> M {
        M::from_i64(orders)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(m(&[4, 3]).invariant_factors(), vec![12]);
        assert_eq!(m(&[2, 0]).invariant_factors(), vec![2, 0]);
        assert_eq!(m(&[1, 1]).invariant_factors(), Vec::<i128>::new());
        assert_eq!(m(&[6, 4]).invariant_factors(), vec![2, 12]);
    }

    #[test]
    fn kernel_of_multiplication() {
        let a = m(&[12]);
        let k = StdMap::scalar(&a, &2).kernel();
        assert_eq!(k.module.invariant_factors(), vec![2]);
        let k = StdMap::scalar(&a, &4).kernel();
        assert_eq!(k.module.invariant_factors(), vec![4]);
        let im = StdMap::scalar(&a, &4).image();
        assert_eq!(im.module.invariant_factors(), vec![3]);
        let c = StdMap::scalar(&a, &8).cokernel();
        assert_eq!(c.module.invariant_factors(), vec![4]);
    }

    #[test]
    fn ill_defined_map_rejected() {
        // Z/2 -> Z/4 sending 1 to 1 is not a homomorphism
        let r = StdMap::new(m(&[2]), m(&[4]), Matrix::from_i64_rows(1, &[vec![1]]));
        assert_eq!(r.unwrap_err(), ModuleError::IllDefined(0));
        assert!(StdMap::new(m(&[2]), m(&[4]), Matrix::from_i64_rows(1, &[vec![2]])).is_ok());
    }

    #[test]
    fn ext_over_z() {
        let z = BaseRing::Integers;
        assert_eq!(ext1(&z, &m(&[4]), &m(&[6])).invariant_factors(), vec![2]);
        assert!(ext1(&z, &m(&[0]), &m(&[6])).is_zero());
        assert_eq!(ext1(&z, &m(&[3]), &m(&[0])).invariant_factors(), vec![3]);
        assert!(ext2(&z, &m(&[3]), &m(&[3])).is_zero());
    }

    #[test]
    fn ext_over_z_mod_n() {
        let r4 = BaseRing::ZMod(4i128);
        assert_eq!(ext1(&r4, &m(&[2]), &m(&[2])).invariant_factors(), vec![2]);
        assert!(ext1(&r4, &m(&[4]), &m(&[2])).is_zero());
        let r12 = BaseRing::ZMod(12i128);
        assert!(ext1(&r12, &m(&[4]), &m(&[3])).is_zero());
        assert_eq!(ext2(&r4, &m(&[2]), &m(&[2])).invariant_factors(), vec![2]);
    }

    #[test]
    fn hom_counts() {
        let h = HomModule::new(&m(&[4, 2]), &m(&[6]));
        assert_eq!(h.module.card(), Some(4));
        let h = HomModule::new(&m(&[0]), &m(&[5, 0]));
        assert_eq!(h.module.invariant_factors(), vec![5, 0]);
    }

    #[test]
    fn presentation_standardizes() {
        let f = FpModule::<i128>::new(BaseRing::Integers, Matrix::from_i64_rows(2, &[vec![2, 0], vec![0, 0]]));
        assert_eq!(f.invariants(), vec![2, 0]);
        let g = FpModule::new(BaseRing::ZMod(12i128), Matrix::zeros(0, 2));
        assert_eq!(g.invariants(), vec![12, 12]);
    }

    #[test]
    fn std_map_conversion_round_trip() {
        // Z^2/<(2,4)> -> Z/2 via (x, y) -> x
        let src = FpModule::new(BaseRing::Integers, Matrix::from_i64_rows(2, &[vec![2, 4]])).standardize();
        let tgt = FpModule::<i128>::cyclic_sum(BaseRing::Integers, &[2]).standardize();
        let f = std_map(&src, &tgt, &Matrix::from_i64_rows(1, &[vec![1], vec![0]])).unwrap();
        assert!(f.is_surjective());
        assert_eq!(f.kernel().module.invariant_factors(), vec![0]);
    }
}
