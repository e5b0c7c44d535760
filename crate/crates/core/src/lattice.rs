//! The lattices `L ⊂ L'`, the intersection pairing, the discriminant group
//! `H = L'/L` and the Riemann–Roch function `χ`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{self, ResolutionGraph};
use crate::linalg::{self, Matrix, SnfDecomposition};
use crate::scalar::Scalar;

/// Default bound on `|H|` for class enumeration.
pub const DEFAULT_CLASS_CAP: usize = 10_000;

/// A rational cycle `Σ_v c_v E_v`, coordinates in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Cycle<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Cycle { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Cycle { coeffs: vec![T::zero(); n] }
    }

    /// The exceptional curve `E_v`.
    pub fn basis(n: usize, v: usize) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[v] = T::one();
        c
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Cycle { coeffs: coeffs.iter().map(|&x| T::from_int(x)).collect() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Membership in `L`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_integer)
    }

    /// `self ≥ 0` coordinate-wise.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coordinate-wise partial order `self ≥ other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a >= b)
    }

    pub fn min(&self, other: &Self) -> Self {
        Cycle {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone().min(b.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Cycle { coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    pub fn fract(&self) -> Self {
        Cycle { coeffs: self.coeffs.iter().map(Scalar::fract_part).collect() }
    }

    /// Adds `E_v` in place.
    pub fn add_basis(&mut self, v: usize) {
        self.coeffs[v] = self.coeffs[v].clone() + T::one();
    }
}

impl<T> Index<usize> for Cycle<T> {
    type Output = T;
    fn index(&self, v: usize) -> &T {
        &self.coeffs[v]
    }
}

impl<'a, T: Scalar> Add for &'a Cycle<T> {
    type Output = Cycle<T>;
    fn add(self, rhs: &'a Cycle<T>) -> Cycle<T> {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        Cycle { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

impl<'a, T: Scalar> Sub for &'a Cycle<T> {
    type Output = Cycle<T>;
    fn sub(self, rhs: &'a Cycle<T>) -> Cycle<T> {
        assert_eq!(self.len(), rhs.len(), "cycle length mismatch");
        Cycle { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() }
    }
}

impl<T: Scalar> Add for Cycle<T> {
    type Output = Cycle<T>;
    fn add(self, rhs: Cycle<T>) -> Cycle<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Cycle<T> {
    type Output = Cycle<T>;
    fn sub(self, rhs: Cycle<T>) -> Cycle<T> {
        &self - &rhs
    }
}

impl<'a, T: Scalar> Neg for &'a Cycle<T> {
    type Output = Cycle<T>;
    fn neg(self) -> Cycle<T> {
        Cycle { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Scalar> Neg for Cycle<T> {
    type Output = Cycle<T>;
    fn neg(self) -> Cycle<T> {
        -&self
    }
}

/// Comma-separated coordinates, e.g. `8/3,2/3,2/3`.
impl<T: fmt::Display> fmt::Display for Cycle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An element `h ∈ H`, stored as its canonical representative `r_h` with
/// every coordinate in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassRep<T> {
    rep: Cycle<T>,
}

impl<T: Scalar> ClassRep<T> {
    pub fn zero(n: usize) -> Self {
        ClassRep { rep: Cycle::zero(n) }
    }

    /// `r_h`.
    pub fn rep(&self) -> &Cycle<T> {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl<T: fmt::Display> fmt::Display for ClassRep<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// A validated graph together with its cached lattice data.
#[derive(Clone, Debug)]
pub struct LatticeContext<T> {
    graph: ResolutionGraph,
    matrix: Matrix<i64>,
    adjacency: Vec<Vec<usize>>,
    neg_inverse: Matrix<T>,
    /// `e_v` as scalars
    eulers: Vec<T>,
    /// `(Z_K, E_v) = e_v + 2`
    adjunction: Vec<T>,
    zk: Cycle<T>,
    det: BigInt,
    snf: SnfDecomposition,
}

impl<T: Scalar> LatticeContext<T> {
    /// Validates `g` and computes `M`, `-M⁻¹`, `Z_K`, `det M` and the Smith
    /// form of `M`.
    pub fn build(g: &ResolutionGraph) -> Result<Self> {
        let report = graph::validate(g);
        if !report.ok() {
            return Err(Error::Invalid(report));
        }
        let n = g.len();
        let matrix = graph::intersection_matrix(g);
        let neg_inverse: Matrix<T> = linalg::neg_inverse(&matrix)?;

        // adjunction: (Z_K, E_v) = e_v + 2
        let rhs: Vec<T> = g.vertices().iter().map(|v| T::from_int(v.euler + 2)).collect();
        let zk = Cycle::new(linalg::solve_exact(&matrix, &rhs)?);

        // Z_K = E - Σ (2 - val v) E*_v on trees
        let mut zk_tree = vec![T::one(); n];
        for v in 0..n {
            let w = T::from_int(2 - g.valency(v) as i64);
            for (i, c) in zk_tree.iter_mut().enumerate() {
                *c = c.clone() - w.clone() * neg_inverse[(i, v)].clone();
            }
        }
        if zk.coeffs() != zk_tree.as_slice() {
            return Err(Error::Internal(format!(
                "canonical cycle mismatch: adjunction gives {zk}, valency formula gives {}",
                Cycle::new(zk_tree)
            )));
        }

        let det = linalg::determinant(&matrix);
        let snf = linalg::smith_normal_form(&matrix);
        if snf.torsion_order() != det.abs() {
            return Err(Error::Internal("Smith form order differs from |det M|".into()));
        }

        let eulers = g.vertices().iter().map(|v| T::from_int(v.euler)).collect();
        Ok(LatticeContext {
            graph: g.clone(),
            adjacency: g.adjacency(),
            matrix,
            neg_inverse,
            eulers,
            adjunction: rhs,
            zk,
            det,
            snf,
        })
    }

    pub fn graph(&self) -> &ResolutionGraph {
        &self.graph
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.matrix
    }

    /// `-M⁻¹`.
    pub fn neg_inverse(&self) -> &Matrix<T> {
        &self.neg_inverse
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.matrix[(v, v)]
    }

    /// Signed `det M`.
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// `|H| = |det M|`.
    pub fn order(&self) -> BigInt {
        self.det.abs()
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    /// The canonical cycle `Z_K = -K_π`.
    pub fn zk(&self) -> &Cycle<T> {
        &self.zk
    }

    /// `E*_v`, the column `v` of `-M⁻¹`.
    pub fn dual(&self, v: usize) -> Cycle<T> {
        Cycle::new(self.neg_inverse.col(v))
    }

    pub fn basis(&self, v: usize) -> Cycle<T> {
        Cycle::basis(self.len(), v)
    }

    /// `Σ_v a_v E*_v`.
    pub fn dual_combination(&self, a: &[T]) -> Result<Cycle<T>> {
        self.check_len(a.len())?;
        let n = self.len();
        let coeffs = (0..n)
            .map(|i| (0..n).fold(T::zero(), |acc, v| acc + a[v].clone() * self.neg_inverse[(i, v)].clone()))
            .collect();
        Ok(Cycle::new(coeffs))
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.len(), found })
        }
    }

    /// `(x, E_v)`.
    pub fn pairing_with_basis(&self, x: &Cycle<T>, v: usize) -> T {
        self.adjacency[v]
            .iter()
            .fold(x[v].clone() * self.eulers[v].clone(), |acc, &w| acc + x[w].clone())
    }

    /// `M·x`, i.e. the vector `((x, E_v))_v`.
    pub fn pairing_vector(&self, x: &Cycle<T>) -> Vec<T> {
        (0..self.len()).map(|v| self.pairing_with_basis(x, v)).collect()
    }

    /// The intersection form `(x, y) = xᵀ M y`.
    pub fn pairing(&self, x: &Cycle<T>, y: &Cycle<T>) -> Result<T> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.pair(x, y))
    }

    pub(crate) fn pair(&self, x: &Cycle<T>, y: &Cycle<T>) -> T {
        let mut acc = T::zero();
        for v in 0..self.len() {
            acc = acc + x[v].clone() * y[v].clone() * self.eulers[v].clone();
        }
        for &(a, b) in self.graph.edges() {
            acc = acc + x[a].clone() * y[b].clone() + x[b].clone() * y[a].clone();
        }
        acc
    }

    /// `χ(ℓ') = -(ℓ', ℓ' - Z_K) / 2`, using `(ℓ', Z_K) = Σ_v ℓ'_v (e_v + 2)`.
    pub fn chi(&self, l: &Cycle<T>) -> T {
        let with_zk = l.coeffs().iter().zip(&self.adjunction).fold(T::zero(), |acc, (x, a)| acc + x.clone() * a.clone());
        (with_zk - self.pair(l, l)) / T::from_int(2)
    }

    /// `(x, E_v) ≤ 0` for all `v`.
    pub fn is_antinef(&self, x: &Cycle<T>) -> bool {
        (0..self.len()).all(|v| !self.pairing_with_basis(x, v).is_positive())
    }

    /// `M·x` integral.
    pub fn in_dual_lattice(&self, x: &Cycle<T>) -> bool {
        x.len() == self.len() && (0..self.len()).all(|v| self.pairing_with_basis(x, v).is_integer())
    }

    /// `[ℓ'] ∈ H`, represented by the fractional part of `ℓ'`.
    pub fn class_of(&self, l: &Cycle<T>) -> Result<ClassRep<T>> {
        self.check_len(l.len())?;
        if !self.in_dual_lattice(l) {
            return Err(Error::NotInDualLattice);
        }
        Ok(ClassRep { rep: l.fract() })
    }

    pub fn negate_class(&self, h: &ClassRep<T>) -> ClassRep<T> {
        ClassRep { rep: (-&h.rep).fract() }
    }

    pub fn add_classes(&self, h1: &ClassRep<T>, h2: &ClassRep<T>) -> ClassRep<T> {
        ClassRep { rep: (&h1.rep + &h2.rep).fract() }
    }

    /// All of `H` with the default cap.
    pub fn classes(&self) -> Result<Vec<ClassRep<T>>> {
        self.enumerate_classes(DEFAULT_CLASS_CAP)
    }

    /// Every element of `H`, zero first, in lexicographic order of the
    /// Smith coordinates `c` (`0 ≤ c_i < d_i`). With `U M V = D` the class
    /// of `c` is represented by `V D⁻¹ c`.
    pub fn enumerate_classes(&self, cap: usize) -> Result<Vec<ClassRep<T>>> {
        let order = self.order();
        if order > BigInt::from(cap) {
            return Err(Error::ClassCapExceeded { order: order.to_string(), cap });
        }
        let n = self.len();
        let factors: Vec<u64> = self
            .snf
            .invariant_factors()
            .iter()
            .map(|d| d.to_u64().expect("invariant factor bounded by the cap"))
            .collect();
        let nontrivial: Vec<usize> = (0..n).filter(|&i| factors[i] > 1).collect();
        // columns V[:, i] / d_i
        let steps: Vec<Vec<T>> = nontrivial
            .iter()
            .map(|&i| {
                let d = BigInt::from(factors[i]);
                (0..n).map(|j| T::from_fraction(&self.snf.v[(j, i)], &d)).collect()
            })
            .collect();

        let mut out = Vec::with_capacity(order.to_usize().unwrap_or(0));
        let mut digits = vec![0u64; nontrivial.len()];
        loop {
            let mut coeffs = vec![T::zero(); n];
            for (k, &c) in digits.iter().enumerate() {
                if c > 0 {
                    let c = T::from_int(c as i64);
                    for (j, x) in coeffs.iter_mut().enumerate() {
                        *x = x.clone() + c.clone() * steps[k][j].clone();
                    }
                }
            }
            out.push(ClassRep { rep: Cycle::new(coeffs).fract() });

            // odometer, last digit fastest
            let mut k = digits.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < factors[nontrivial[k]] {
                    break;
                }
                digits[k] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use num_rational::BigRational;
    use num_traits::One;
    use std::collections::HashSet;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn cyc(v: &[(i64, i64)]) -> Cycle<Q> {
        Cycle::new(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn ctx(text: &str) -> LatticeContext<Q> {
        LatticeContext::build(&parse_graph(text).unwrap()).unwrap()
    }

    fn a1() -> LatticeContext<Q> {
        ctx("vertex a e=-2")
    }

    fn a3() -> LatticeContext<Q> {
        LatticeContext::build(&ResolutionGraph::chain(&[-2, -2, -2])).unwrap()
    }

    fn cusp() -> LatticeContext<Q> {
        ctx("vertex a e=-3\nvertex b e=-2\nvertex c e=-1\nedge a c\nedge b c\n")
    }

    fn star() -> LatticeContext<Q> {
        ctx("vertex c e=-1\nvertex l1 e=-4\nvertex l2 e=-4\nvertex l3 e=-4\nvertex l4 e=-10\nedge c l1\nedge c l2\nedge c l3\nedge c l4\n")
    }

    #[test]
    fn canonical_cycles() {
        let c = a1();
        assert!(c.zk().is_zero());
        assert_eq!(c.order(), BigInt::from(2));

        let c = cusp();
        assert_eq!(c.zk(), &Cycle::from_ints(&[-1, -2, -4]));
        assert_eq!(c.order(), BigInt::one());

        let c = star();
        assert_eq!(c.zk(), &cyc(&[(26, 3), (8, 3), (8, 3), (8, 3), (5, 3)]));
    }

    #[test]
    fn build_rejects_invalid_graphs() {
        let g = parse_graph("vertex a e=0").unwrap();
        assert!(matches!(LatticeContext::<Q>::build(&g), Err(Error::Invalid(_))));
    }

    #[test]
    fn pairing_examples() {
        let c = a1();
        assert_eq!(c.pairing(&c.basis(0), &c.basis(0)).unwrap(), q(-2, 1));
        let c = a3();
        assert_eq!(c.pairing(&c.dual(0), &c.dual(2)).unwrap(), q(-1, 4));
        let c = star();
        assert_eq!(c.pairing(c.zk(), &c.basis(0)).unwrap(), q(1, 1));
        assert!(matches!(c.pairing(&Cycle::zero(2), &Cycle::zero(5)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn chi_examples() {
        let c = star();
        assert_eq!(c.chi(&Cycle::zero(5)), q(0, 1));
        let s = cyc(&[(8, 3), (2, 3), (2, 3), (2, 3), (2, 3)]);
        assert_eq!(c.chi(&s), q(-2, 1));

        let c = a3();
        assert_eq!(c.chi(&c.dual(2).scale(&q(-4, 1))), q(6, 1));
        // non-integral input stays non-integral
        assert_eq!(a1().chi(&a1().dual(0)), q(1, 4));
    }

    #[test]
    fn classes_of_cycles() {
        let c = a1();
        assert!(c.class_of(&c.basis(0)).unwrap().is_zero());
        assert_eq!(c.class_of(&c.dual(0)).unwrap().rep(), &cyc(&[(1, 2)]));
        assert!(matches!(c.class_of(&cyc(&[(1, 3)])), Err(Error::NotInDualLattice)));

        let c = star();
        let s = cyc(&[(8, 3), (2, 3), (2, 3), (2, 3), (2, 3)]);
        let diff = c.zk() - &s;
        assert_eq!(diff, Cycle::from_ints(&[6, 2, 2, 2, 1]));
        assert!(c.class_of(&diff).unwrap().is_zero());
    }

    #[test]
    fn class_enumeration() {
        let reps: Vec<Cycle<Q>> = a1().classes().unwrap().into_iter().map(|h| h.rep().clone()).collect();
        assert_eq!(reps, vec![cyc(&[(0, 1)]), cyc(&[(1, 2)])]);

        let c = a3();
        let got: HashSet<Cycle<Q>> = c.classes().unwrap().into_iter().map(|h| h.rep().clone()).collect();
        let want: HashSet<Cycle<Q>> = (0..4).map(|a| c.dual(2).scale(&q(a, 1)).fract()).collect();
        assert_eq!(got, want);
        assert!(got.contains(&cyc(&[(1, 4), (1, 2), (3, 4)])));
        assert!(got.contains(&cyc(&[(1, 2), (0, 1), (1, 2)])));
        assert!(got.contains(&cyc(&[(3, 4), (1, 2), (1, 4)])));
        assert!(c.classes().unwrap()[0].is_zero());

        let c = cusp();
        let all = c.classes().unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_zero());

        assert!(matches!(star().enumerate_classes(2), Err(Error::ClassCapExceeded { .. })));
    }

    #[test]
    fn class_group_operations() {
        let c = a1();
        let zero = ClassRep::zero(1);
        assert_eq!(c.negate_class(&zero), zero);
        let h = c.class_of(&c.dual(0)).unwrap();
        assert_eq!(c.negate_class(&h), h);
        assert_eq!(c.add_classes(&h, &h), zero);

        let c = a3();
        let h = c.class_of(&c.dual(2)).unwrap();
        assert_eq!(c.negate_class(&h).rep(), &cyc(&[(3, 4), (1, 2), (1, 4)]));
        assert_eq!(c.negate_class(&h), c.class_of(&c.dual(2).scale(&q(3, 1))).unwrap());
    }
}
