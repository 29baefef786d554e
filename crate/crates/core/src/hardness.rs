//! Hard instances from 4-OV.
//!
//! Four sets of `N` bit vectors of dimension `D` are turned into two curves
//! whose discrete Fréchet distance under translation is at most
//! `δ = 2 + ε/4` exactly when some quadruple `v1..v4` has a zero in every
//! coordinate. Coordinates are tiny perturbations of `±1`, so everything here
//! is `f64`.

use crate::error::{Error, Result};
use crate::frechet::frechet_decide;
use crate::geometry::{translate_curve, Curve, Point2};
use crate::scalar::Tolerance;
use crate::solver::decide_translation;

type P = Point2<f64>;

/// Anti-diagonal `π` parts and diagonal `σ` parts of one dimension.
pub type CurveLists = (Vec<Curve<f64>>, Vec<Curve<f64>>);

/// Tolerance the reduction is checked with. Far below the `ε/12` margins.
pub const REDUCTION_TOL: f64 = 1e-12;

/// Offset between consecutive dimension gadgets.
pub const DIMENSION_SPACING: f64 = 100.0;

/// A 4-OV instance. Vector `i` of set `s` is `sets[s][i]`, its index is `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvInstance {
    n: usize,
    d: usize,
    sets: [Vec<Vec<bool>>; 4],
}

impl OvInstance {
    pub fn new(n: usize, d: usize, sets: [Vec<Vec<bool>>; 4]) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Gadget(format!(
                "N and D must be positive, got N={n} D={d}"
            )));
        }
        for (s, set) in sets.iter().enumerate() {
            if set.len() != n {
                return Err(Error::Gadget(format!(
                    "set {} has {} vectors, expected {n}",
                    s + 1,
                    set.len()
                )));
            }
            if let Some(v) = set.iter().find(|v| v.len() != d) {
                return Err(Error::Gadget(format!(
                    "set {} has a vector of length {}, expected {d}",
                    s + 1,
                    v.len()
                )));
            }
        }
        Ok(OvInstance { n, d, sets })
    }

    /// Instance from a bit pattern: bit `((s·N + i)·D + j)` of `bits` is
    /// `v_{s+1,i}[j]`. Used to enumerate all instances of a given shape.
    pub fn from_bits(n: usize, d: usize, bits: u64) -> Result<Self> {
        if 4 * n * d > 64 {
            return Err(Error::Gadget(format!(
                "N={n} D={d} does not fit in 64 bits"
            )));
        }
        let sets = std::array::from_fn(|s| {
            (0..n)
                .map(|i| {
                    (0..d)
                        .map(|j| bits >> ((s * n + i) * d + j) & 1 == 1)
                        .collect()
                })
                .collect()
        });
        OvInstance::new(n, d, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Set `s` in `0..4`.
    pub fn set(&self, s: usize) -> &[Vec<bool>] {
        &self.sets[s]
    }

    pub fn sets(&self) -> &[Vec<Vec<bool>>; 4] {
        &self.sets
    }

    /// Does coordinate `j` have a zero in some vector of some set?
    fn dimension_has_zero(&self, j: usize) -> bool {
        self.sets.iter().any(|set| set.iter().any(|v| !v[j]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionConstants {
    pub n: usize,
    pub eps: f64,
    pub eta: f64,
    pub delta: f64,
}

impl ReductionConstants {
    pub fn new(n: usize) -> Self {
        let nf = n as f64;
        let eps = 0.001 / nf.powi(4);
        ReductionConstants {
            n,
            eps,
            eta: 3.0 * nf * nf * eps,
            delta: 2.0 + eps / 4.0,
        }
    }

    /// `N²ε`, the shift of the primed gadgets.
    pub fn shift(&self) -> f64 {
        (self.n * self.n) as f64 * self.eps
    }

    /// The box `[-ε/4, (N² - 3/4)ε]²` all feasible translations lie in.
    pub fn translation_range(&self) -> (f64, f64) {
        (
            -self.eps / 4.0,
            ((self.n * self.n) as f64 - 0.75) * self.eps,
        )
    }

    /// `ind(a) + ind(b)·N`.
    pub fn h(&self, a: usize, b: usize) -> usize {
        a + b * self.n
    }

    /// Translation encoding the quadruple with indices `ind`.
    pub fn witness_translation(&self, ind: [usize; 4]) -> P {
        P::new(
            self.h(ind[0], ind[1]) as f64 * self.eps,
            self.h(ind[2], ind[3]) as f64 * self.eps,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gadget {
    F,
    FPrime,
    G,
    GPrime,
}

impl Gadget {
    pub const ALL: [Gadget; 4] = [Gadget::F, Gadget::FPrime, Gadget::G, Gadget::GPrime];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Pi,
    Sigma,
}

/// Two-point equality gadget curve for the vector with index `ind`.
pub fn equality_gadget(
    variant: Gadget,
    ind: usize,
    side: Side,
    c: &ReductionConstants,
) -> Result<Curve<f64>> {
    if ind >= c.n {
        return Err(Error::Gadget(format!(
            "vector index {ind} out of range for N={}",
            c.n
        )));
    }
    let (e, eta) = (c.eps, c.eta);
    let a = e * ind as f64;
    let b = e * (ind * c.n) as f64;
    let pts = match (variant, side) {
        (Gadget::F | Gadget::FPrime, Side::Pi) => {
            [P::new(1.0 + a, -1.0 - eta), P::new(-1.0 + a, 1.0 + eta)]
        }
        (Gadget::F | Gadget::FPrime, Side::Sigma) => {
            [P::new(-1.0 - b, -1.0 - eta), P::new(1.0 - b, 1.0 + eta)]
        }
        (Gadget::G | Gadget::GPrime, Side::Pi) => {
            [P::new(-1.0 - eta, 1.0 + a), P::new(1.0 + eta, -1.0 + a)]
        }
        (Gadget::G | Gadget::GPrime, Side::Sigma) => {
            [P::new(-1.0 - eta, -1.0 - b), P::new(1.0 + eta, 1.0 - b)]
        }
    };
    let shift = match variant {
        Gadget::F | Gadget::G => P::origin(),
        Gadget::FPrime => P::new(c.shift(), 0.0),
        Gadget::GPrime => P::new(0.0, c.shift()),
    };
    Curve::new(pts.iter().map(|&p| p + shift).collect())
}

/// The one-point `π` part and four-point `σ` part pinning `τ` to the
/// translation range.
pub fn translation_gadget(c: &ReductionConstants) -> (Curve<f64>, Curve<f64>) {
    let far = 2.0 - ((c.n * c.n) as f64 - 1.0) * c.eps;
    let pi = vec![P::origin()];
    let sigma = vec![
        P::new(far, 0.0),
        P::new(0.0, far),
        P::new(-2.0, 0.0),
        P::new(0.0, -2.0),
    ];
    (Curve::new(pi).unwrap(), Curve::new(sigma).unwrap())
}

fn in_band(v: f64, centre: f64, eta: f64) -> bool {
    (centre - 2.0 * eta..=centre + 2.0 * eta).contains(&v)
}

/// All vertices within `2η` (per coordinate) of `(±1, ±1)` with equal signs.
pub fn is_diagonal(c: &Curve<f64>, eta: f64) -> bool {
    c.points().iter().all(|p| {
        [-1.0, 1.0]
            .iter()
            .any(|&s| in_band(p.x, s, eta) && in_band(p.y, s, eta))
    })
}

/// All vertices within `2η` (per coordinate) of `(±1, ∓1)`.
pub fn is_anti_diagonal(c: &Curve<f64>, eta: f64) -> bool {
    c.points().iter().all(|p| {
        [-1.0, 1.0]
            .iter()
            .any(|&s| in_band(p.x, s, eta) && in_band(p.y, -s, eta))
    })
}

pub mod aux {
    use super::P;

    pub const S1: P = P { x: -0.25, y: -0.25 };
    pub const T1: P = P { x: 0.25, y: 0.25 };
    pub const R1: P = P { x: 0.99, y: -1.25 };
    pub const R1P: P = P { x: -0.99, y: 1.25 };
    pub const S2: P = P { x: 0.0, y: 0.0 };
    pub const S2STAR: P = P { x: -1.5, y: -1.5 };
    pub const T2STAR: P = P { x: 1.5, y: 1.5 };
    pub const T2: P = P { x: 0.0, y: 0.0 };
    pub const R2: P = P { x: -0.99, y: -1.25 };
    pub const R2P: P = P { x: 0.99, y: 1.25 };
}

/// OR gadget: `δ_F(π_OR, σ_OR + τ) <= δ` iff some pair `(π̂ⁱ, σ̂ʲ)` matches.
pub fn or_gadget(
    anti_diagonal: &[Curve<f64>],
    diagonal: &[Curve<f64>],
    eta: f64,
) -> Result<(Curve<f64>, Curve<f64>)> {
    if anti_diagonal.is_empty() || diagonal.is_empty() {
        return Err(Error::Gadget(
            "OR gadget needs at least one curve on each side".into(),
        ));
    }
    if let Some(i) = anti_diagonal.iter().position(|c| !is_anti_diagonal(c, eta)) {
        return Err(Error::Gadget(format!(
            "π subcurve {i} is not anti-diagonal"
        )));
    }
    if let Some(j) = diagonal.iter().position(|c| !is_diagonal(c, eta)) {
        return Err(Error::Gadget(format!("σ subcurve {j} is not diagonal")));
    }
    let mut pi = Vec::new();
    for c in anti_diagonal {
        pi.extend([aux::S1, aux::R1]);
        pi.extend_from_slice(c.points());
        pi.extend([aux::R1P, aux::T1]);
    }
    let mut sigma = vec![aux::S2, aux::S2STAR];
    for c in diagonal {
        sigma.push(aux::R2);
        sigma.extend_from_slice(c.points());
        sigma.push(aux::R2P);
    }
    sigma.extend([aux::T2STAR, aux::T2]);
    Ok((Curve::new(pi)?, Curve::new(sigma)?))
}

/// Subcurve lists of the OR gadget for coordinate `j`, in (type, index)
/// order: `(anti-diagonal π parts, diagonal σ parts)`.
pub fn dimension_lists(ov: &OvInstance, j: usize, c: &ReductionConstants) -> Result<CurveLists> {
    let mut pis = Vec::new();
    let mut sigmas = Vec::new();
    for g in Gadget::ALL {
        // F and G take π from V1 / V3 and σ from V2 / V4. The unprimed
        // gadget filters π on a zero, the primed one filters σ.
        let (ps, ss) = match g {
            Gadget::F | Gadget::FPrime => (0, 1),
            Gadget::G | Gadget::GPrime => (2, 3),
        };
        let primed = matches!(g, Gadget::FPrime | Gadget::GPrime);
        for (i, v) in ov.set(ps).iter().enumerate() {
            if primed || !v[j] {
                pis.push(equality_gadget(g, i, Side::Pi, c)?);
            }
        }
        for (i, v) in ov.set(ss).iter().enumerate() {
            if !primed || !v[j] {
                sigmas.push(equality_gadget(g, i, Side::Sigma, c)?);
            }
        }
    }
    Ok((pis, sigmas))
}

/// Curves far apart under every translation, used when some coordinate has
/// no zero at all.
pub fn trivial_no_pair() -> (Curve<f64>, Curve<f64>) {
    (
        Curve::from_xy(&[(0.0, 0.0), (10.0, 10.0)]).unwrap(),
        Curve::from_xy(&[(0.0, 0.0), (0.0, 0.0)]).unwrap(),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct HardInstance {
    pub pi: Curve<f64>,
    pub sigma: Curve<f64>,
    pub delta: f64,
    pub constants: ReductionConstants,
}

pub fn generate_instance(ov: &OvInstance) -> Result<HardInstance> {
    generate_instance_with(ov, |_| {})
}

/// Like [`generate_instance`], but lets `reorder` permute every subcurve
/// list before it enters its OR gadget.
pub fn generate_instance_with(
    ov: &OvInstance,
    mut reorder: impl FnMut(&mut [Curve<f64>]),
) -> Result<HardInstance> {
    let c = ReductionConstants::new(ov.n());
    if !(0..ov.d()).all(|j| ov.dimension_has_zero(j)) {
        let (pi, sigma) = trivial_no_pair();
        return Ok(HardInstance {
            pi,
            sigma,
            delta: c.delta,
            constants: c,
        });
    }
    let (mut pi, mut sigma) = translation_gadget(&c);
    for j in 0..ov.d() {
        let (mut pis, mut sigmas) = dimension_lists(ov, j, &c)?;
        reorder(&mut pis);
        reorder(&mut sigmas);
        let (pj, sj) = or_gadget(&pis, &sigmas, c.eta)?;
        let off = P::new(DIMENSION_SPACING * (j + 1) as f64, 0.0);
        pi = pi.concat(&translate_curve(&pj, off));
        sigma = sigma.concat(&translate_curve(&sj, off));
    }
    Ok(HardInstance {
        pi,
        sigma,
        delta: c.delta,
        constants: c,
    })
}

/// Exhaustive `O(N⁴·D)` search for an orthogonal quadruple.
pub fn solve_4ov_bruteforce(ov: &OvInstance) -> (bool, Option<[usize; 4]>) {
    let n = ov.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let ind = [a, b, c, d];
                    let orthogonal = (0..ov.d()).all(|j| (0..4).any(|s| !ov.set(s)[ind[s]][j]));
                    if orthogonal {
                        return (true, Some(ind));
                    }
                }
            }
        }
    }
    (false, None)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionReport {
    pub expected: bool,
    pub decided: bool,
    /// `δ_F(π, σ + τ) <= δ` at the translation encoding the 4-OV witness.
    pub witness_holds: Option<bool>,
    pub pi_len: usize,
    pub sigma_len: usize,
}

impl ReductionReport {
    pub fn verified(&self) -> bool {
        self.expected == self.decided && self.witness_holds.unwrap_or(true)
    }
}

pub fn verify_reduction_report(ov: &OvInstance) -> Result<ReductionReport> {
    let inst = generate_instance(ov)?;
    let tol = Tolerance::new(REDUCTION_TOL);
    let (expected, witness) = solve_4ov_bruteforce(ov);
    let witness_holds = witness.map(|ind| {
        let tau = inst.constants.witness_translation(ind);
        frechet_decide(
            &inst.pi,
            &translate_curve(&inst.sigma, tau),
            inst.delta,
            tol,
        )
    });
    let decided = decide_translation(&inst.pi, &inst.sigma, inst.delta, tol)?.feasible;
    Ok(ReductionReport {
        expected,
        decided,
        witness_holds,
        pi_len: inst.pi.len(),
        sigma_len: inst.sigma.len(),
    })
}

/// Does the solver's decision at `δ` agree with brute-force 4-OV?
pub fn verify_reduction(ov: &OvInstance) -> Result<bool> {
    Ok(verify_reduction_report(ov)?.verified())
}
