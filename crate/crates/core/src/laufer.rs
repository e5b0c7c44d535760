//! Computation sequences in the Lipman cone.
//!
//! Starting from `x_0 = ℓ'`, while some `E_u` has `(x_i, E_u) > 0` set
//! `x_{i+1} = x_i + E_u`. The sequence stops at `s(ℓ')`, the unique minimal
//! antinef cycle with `s(ℓ') - ℓ' ∈ L_{≥0}`, whatever the choices of `u`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::ResolutionGraph;
use crate::lattice::{ClassRep, Cycle, LatticeContext};
use crate::scalar::Scalar;

/// Guard against non-terminating sequences; unreachable on valid input.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep<T> {
    pub before: Cycle<T>,
    pub vertex: usize,
    /// `(before, E_vertex)`, always positive.
    pub pairing: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputationTrace<T> {
    pub steps: Vec<TraceStep<T>>,
    pub result: Cycle<T>,
}

impl<T: Scalar> ComputationTrace<T> {
    /// `step k: +E_<label> (pairing was p/q)`, one line per step.
    pub fn lines(&self, g: &ResolutionGraph) -> Vec<String> {
        self.steps
            .iter()
            .enumerate()
            .map(|(k, s)| {
                format!("step {}: +E_{} (pairing was {})", k + 1, g.vertices()[s.vertex].label, s.pairing)
            })
            .collect()
    }
}

type Chooser<'a> = &'a mut dyn FnMut(&[usize]) -> usize;

fn run<T: Scalar>(
    ctx: &LatticeContext<T>,
    start: &Cycle<T>,
    cap: usize,
    mut choose: Option<Chooser<'_>>,
    mut trace: Option<&mut Vec<TraceStep<T>>>,
) -> Result<Cycle<T>> {
    if start.len() != ctx.len() {
        return Err(Error::DimensionMismatch { expected: ctx.len(), found: start.len() });
    }
    let n = ctx.len();
    let mut x = start.clone();
    let mut p = ctx.pairing_vector(&x);
    // vertices of positive pairing, ordered so the lowest index is first
    let mut positive: BTreeSet<usize> = (0..n).filter(|&v| p[v].is_positive()).collect();
    let mut candidates = Vec::with_capacity(n);
    let mut steps = 0usize;
    loop {
        let u = match choose.as_mut() {
            None => match positive.first() {
                Some(&u) => u,
                None => break,
            },
            Some(f) => {
                if positive.is_empty() {
                    break;
                }
                candidates.clear();
                candidates.extend(positive.iter().copied());
                let u = f(&candidates);
                if !positive.contains(&u) {
                    return Err(Error::Internal(format!("chooser picked non-candidate vertex {u}")));
                }
                u
            }
        };
        if steps == cap {
            return Err(Error::StepCapExceeded { cap });
        }
        if let Some(t) = trace.as_mut() {
            t.push(TraceStep { before: x.clone(), vertex: u, pairing: p[u].clone() });
        }
        x.add_basis(u);
        p[u] = p[u].clone() + T::from_int(ctx.euler(u));
        for &w in ctx.neighbors(u) {
            p[w] = p[w].clone() + T::one();
        }
        for w in ctx.neighbors(u).iter().copied().chain([u]) {
            if p[w].is_positive() {
                positive.insert(w);
            } else {
                positive.remove(&w);
            }
        }
        steps += 1;
    }
    Ok(x)
}

/// `s(ℓ')` with its computation sequence, always increasing the
/// lowest-index vertex of positive pairing.
pub fn antinef_closure<T: Scalar>(
    ctx: &LatticeContext<T>,
    l: &Cycle<T>,
) -> Result<(Cycle<T>, ComputationTrace<T>)> {
    let mut steps = Vec::new();
    let result = run(ctx, l, DEFAULT_STEP_CAP, None, Some(&mut steps))?;
    Ok((result.clone(), ComputationTrace { steps, result }))
}

/// `s(ℓ')` without recording the sequence.
pub fn closure<T: Scalar>(ctx: &LatticeContext<T>, l: &Cycle<T>) -> Result<Cycle<T>> {
    run(ctx, l, DEFAULT_STEP_CAP, None, None)
}

/// `s(ℓ')` where `choose` picks the next vertex among the current
/// candidates (vertices of positive pairing, ascending).
pub fn closure_with<T: Scalar>(
    ctx: &LatticeContext<T>,
    l: &Cycle<T>,
    cap: usize,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<Cycle<T>> {
    run(ctx, l, cap, Some(&mut choose), None)
}

/// `s_h = s(r_h)`, the minimal antinef cycle of the class `h`.
pub fn minimal_class_cycle<T: Scalar>(ctx: &LatticeContext<T>, h: &ClassRep<T>) -> Result<Cycle<T>> {
    closure(ctx, h.rep())
}

/// Artin's fundamental cycle `Z_min`, by Laufer's sequence from `E_0`.
pub fn fundamental_cycle<T: Scalar>(ctx: &LatticeContext<T>) -> Result<Cycle<T>> {
    fundamental_cycle_from(ctx, 0)
}

pub fn fundamental_cycle_from<T: Scalar>(ctx: &LatticeContext<T>, start: usize) -> Result<Cycle<T>> {
    closure(ctx, &ctx.basis(start))
}

/// Brute-force `s_h`: enumerates every `r_h + ℓ` with `0 ≤ ℓ ≤ bound·E`
/// integral, keeps the antinef ones and returns their coordinate-wise
/// minimum (checked to be antinef itself).
///
/// Works in integers scaled by `|det M|`; branches are pruned as soon as a
/// vertex and all its neighbours are assigned and the vertex pairs
/// positively.
pub fn oracle_sh<T: Scalar>(ctx: &LatticeContext<T>, h: &ClassRep<T>, bound: u64) -> Result<Cycle<T>> {
    let n = ctx.len();
    let overflow = || Error::Internal("oracle values overflow i128".into());
    let det = ctx.order();
    let scale = det.to_i128().ok_or_else(overflow)?;
    let base: Vec<i128> = h
        .rep()
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.to_big_rational() * num_rational::BigRational::from_integer(det.clone());
            if !r.is_integer() {
                return Err(Error::NotInDualLattice);
            }
            r.to_integer().to_i128().ok_or_else(overflow)
        })
        .collect::<Result<_>>()?;
    let bound = i128::from(bound);
    scale.checked_mul(bound + 1).ok_or_else(overflow)?;

    // check_at[k]: vertices whose closed neighbourhood is fully assigned once
    // vertex k is.
    let mut check_at = vec![Vec::new(); n];
    for v in 0..n {
        let last = ctx.neighbors(v).iter().copied().chain([v]).max().unwrap();
        check_at[last].push(v);
    }

    struct Search<'a, T> {
        ctx: &'a LatticeContext<T>,
        base: Vec<i128>,
        scale: i128,
        bound: i128,
        check_at: Vec<Vec<usize>>,
        current: Vec<i128>,
        minimum: Option<Vec<i128>>,
    }

    impl<T: Scalar> Search<'_, T> {
        fn pairing(&self, v: usize) -> i128 {
            let e = i128::from(self.ctx.euler(v));
            self.ctx.neighbors(v).iter().fold(e * self.current[v], |acc, &w| acc + self.current[w])
        }

        fn descend(&mut self, k: usize) {
            if k == self.current.len() {
                match &mut self.minimum {
                    Some(m) => m.iter_mut().zip(&self.current).for_each(|(a, &b)| *a = (*a).min(b)),
                    None => self.minimum = Some(self.current.clone()),
                }
                return;
            }
            for l in 0..=self.bound {
                self.current[k] = self.base[k] + l * self.scale;
                let ok = self.check_at[k].iter().all(|&v| self.pairing(v) <= 0);
                if ok {
                    self.descend(k + 1);
                }
            }
        }
    }

    let mut search = Search {
        ctx,
        base,
        scale,
        bound,
        check_at,
        current: vec![0; n],
        minimum: None,
    };
    search.descend(0);
    let minimum = search.minimum.ok_or(Error::OracleBoundTooSmall { bound: bound as u64 })?;

    let den = BigInt::from(scale);
    let result = Cycle::new(minimum.iter().map(|&x| T::from_fraction(&BigInt::from(x), &den)).collect());
    if !ctx.is_antinef(&result) {
        return Err(Error::Internal("coordinate-wise minimum of the class is not antinef".into()));
    }
    Ok(result)
}
