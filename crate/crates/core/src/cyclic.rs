//! Cyclic quotient singularities `1/d(1,q)`: Hirzebruch–Jung bamboos and
//! the closed form of `χ(s_h)` on them.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::ResolutionGraph;
use crate::laufer::minimal_class_cycle;
use crate::lattice::{ClassRep, LatticeContext};
use crate::scalar::{to_integer, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicType {
    d: u64,
    q: u64,
    q_prime: u64,
    hj_digits: Vec<u64>,
}

impl CyclicType {
    pub fn new(d: u64, q: u64) -> Result<Self> {
        let hj_digits = hj_expansion(d, q)?;
        let q_prime = mod_inverse(q, d).expect("gcd checked by hj_expansion");
        Ok(CyclicType { d, q, q_prime, hj_digits })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `0 < q' < d` with `q q' ≡ 1 (mod d)`.
    pub fn q_prime(&self) -> u64 {
        self.q_prime
    }

    pub fn hj_digits(&self) -> &[u64] {
        &self.hj_digits
    }

    /// Minimal resolution bamboo `-b_1, …, -b_s`.
    pub fn graph(&self) -> ResolutionGraph {
        let eulers: Vec<i64> = self.hj_digits.iter().map(|&b| -(b as i64)).collect();
        ResolutionGraph::chain(&eulers)
    }
}

fn mod_inverse(q: u64, d: u64) -> Option<u64> {
    let e = (q as i128).extended_gcd(&(d as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(d as i128) as u64)
}

/// Digits `b_i ≥ 2` of `d/q = b_1 - 1/(b_2 - 1/(…))`.
pub fn hj_expansion(d: u64, q: u64) -> Result<Vec<u64>> {
    if d < 2 {
        return Err(Error::InvalidCyclicType { d, q, reason: "need d ≥ 2" });
    }
    if q == 0 || q >= d {
        return Err(Error::InvalidCyclicType { d, q, reason: "need 0 < q < d" });
    }
    if d.gcd(&q) != 1 {
        return Err(Error::InvalidCyclicType { d, q, reason: "need gcd(d, q) = 1" });
    }
    let (mut num, mut den) = (d, q);
    let mut digits = Vec::new();
    while den > 0 {
        let b = num.div_ceil(den);
        digits.push(b);
        (num, den) = (den, b * den - num);
    }
    Ok(digits)
}

pub fn build_cyclic_graph(d: u64, q: u64) -> Result<ResolutionGraph> {
    Ok(CyclicType::new(d, q)?.graph())
}

/// `a(1-d)/(2d) + Σ_{i=1}^{a} {i q'/d}`, the value of `χ(s_h)` for
/// `h = [a E*_s]`.
pub fn chi_sh_closed_form<T: Scalar>(ct: &CyclicType, a: u64) -> Result<T> {
    let d = ct.d;
    if a == 0 || a >= d {
        return Err(Error::ClassParameterOutOfRange { a, d });
    }
    // Σ {i q'/d} = (Σ (i q' mod d)) / d
    let residues: u64 = (1..=a).map(|i| (i * ct.q_prime) % d).sum();
    let d = BigInt::from(d);
    let acc = T::from_fraction(&(BigInt::from(a) * (1 - &d)), &(2 * &d)) + T::from_fraction(&residues.into(), &d);
    Ok(acc)
}

/// The class `[a E*_s]` on the bamboo of `ct`.
pub fn class_of_multiple<T: Scalar>(ctx: &LatticeContext<T>, a: u64) -> Result<ClassRep<T>> {
    let s = ctx.len() - 1;
    ctx.class_of(&ctx.dual(s).scale(&T::from_int(a as i64)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reciprocity<T> {
    /// `χ(-s_h) - χ(s_{-h})`.
    pub exp: T,
    /// `r = Σ_v r_v` where `s_h = Σ r_v E*_v`.
    pub r: BigInt,
    pub ok: bool,
}

/// Evaluates `χ(-s_h) - χ(s_{-h})` for `h = [a E*_s]` through the lattice
/// and compares it with `r - 1`. `ctx` must be built from `ct.graph()`.
pub fn reciprocity_check<T: Scalar>(ctx: &LatticeContext<T>, ct: &CyclicType, a: u64) -> Result<Reciprocity<T>> {
    if a == 0 || a >= ct.d {
        return Err(Error::ClassParameterOutOfRange { a, d: ct.d });
    }
    if ctx.len() != ct.hj_digits.len() {
        return Err(Error::DimensionMismatch { expected: ct.hj_digits.len(), found: ctx.len() });
    }
    let h = class_of_multiple(ctx, a)?;
    let sh = minimal_class_cycle(ctx, &h)?;
    let s_neg = minimal_class_cycle(ctx, &ctx.negate_class(&h))?;
    let exp = ctx.chi(&-&sh) - ctx.chi(&s_neg);
    let r: BigInt = ctx
        .pairing_vector(&sh)
        .iter()
        .map(|p| to_integer(&-p.clone()).expect("s_h lies in L'"))
        .sum();
    let ok = exp == T::from_bigint(&(r.clone() - 1));
    Ok(Reciprocity { exp, r, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn reconstruct(digits: &[u64]) -> Q {
        let mut it = digits.iter().rev();
        let mut v = q(*it.next().unwrap() as i64, 1);
        for &b in it {
            v = q(b as i64, 1) - v.recip();
        }
        v
    }

    #[test]
    fn expansions() {
        assert_eq!(hj_expansion(2, 1).unwrap(), vec![2]);
        assert_eq!(hj_expansion(4, 3).unwrap(), vec![2, 2, 2]);
        assert_eq!(hj_expansion(5, 2).unwrap(), vec![3, 2]);
        assert!(matches!(hj_expansion(6, 4), Err(Error::InvalidCyclicType { .. })));
        assert!(matches!(hj_expansion(5, 5), Err(Error::InvalidCyclicType { .. })));
        assert!(matches!(hj_expansion(1, 0), Err(Error::InvalidCyclicType { .. })));
    }

    #[test]
    fn expansion_reconstructs() {
        for d in 2..80u64 {
            for qq in (1..d).filter(|x| x.gcd(&d) == 1) {
                let ct = CyclicType::new(d, qq).unwrap();
                assert!(ct.hj_digits().iter().all(|&b| b >= 2));
                assert_eq!(reconstruct(ct.hj_digits()), q(d as i64, qq as i64));
                assert_eq!((qq * ct.q_prime()) % d, 1);
            }
        }
    }

    #[test]
    fn graphs() {
        let g = build_cyclic_graph(4, 3).unwrap();
        assert_eq!(g, ResolutionGraph::chain(&[-2, -2, -2]));
        assert_eq!(build_cyclic_graph(2, 1).unwrap(), ResolutionGraph::chain(&[-2]));
        let g = build_cyclic_graph(5, 2).unwrap();
        assert_eq!(g, ResolutionGraph::chain(&[-3, -2]));
        let ctx = LatticeContext::<Q>::build(&g).unwrap();
        assert_eq!(ctx.order(), BigInt::from(5));
    }

    #[test]
    fn closed_form_values() {
        let ct = CyclicType::new(4, 3).unwrap();
        assert_eq!(chi_sh_closed_form::<Q>(&ct, 1).unwrap(), q(3, 8));
        assert_eq!(chi_sh_closed_form::<Q>(&ct, 2).unwrap(), q(1, 2));
        let ct = CyclicType::new(2, 1).unwrap();
        assert_eq!(chi_sh_closed_form::<Q>(&ct, 1).unwrap(), q(1, 4));
        assert!(matches!(chi_sh_closed_form::<Q>(&ct, 2), Err(Error::ClassParameterOutOfRange { .. })));

        let ctx = LatticeContext::<Q>::build(&build_cyclic_graph(4, 3).unwrap()).unwrap();
        assert_eq!(ctx.chi(&ctx.dual(2)), q(3, 8));
        assert_eq!(ctx.chi(&ctx.dual(1)), q(1, 2));
    }

    #[test]
    fn reciprocity_examples() {
        for (d, qq, a) in [(4, 3, 1), (4, 3, 2), (2, 1, 1)] {
            let ct = CyclicType::new(d, qq).unwrap();
            let ctx = LatticeContext::<Q>::build(&ct.graph()).unwrap();
            let r = reciprocity_check(&ctx, &ct, a).unwrap();
            assert_eq!(r, Reciprocity { exp: q(0, 1), r: BigInt::one(), ok: true });
        }
    }

    #[test]
    fn first_dual_pairs_with_sh_as_minus_a_over_d() {
        for d in 2..=30u64 {
            for qq in (1..d).filter(|x| x.gcd(&d) == 1) {
                let ct = CyclicType::new(d, qq).unwrap();
                let ctx = LatticeContext::<Q>::build(&ct.graph()).unwrap();
                for a in 1..d {
                    let sh = minimal_class_cycle(&ctx, &class_of_multiple(&ctx, a).unwrap()).unwrap();
                    assert_eq!(ctx.pairing(&ctx.dual(0), &sh).unwrap(), q(-(a as i64), d as i64), "1/{d}({qq}) a={a}");
                }
            }
        }
    }
}
