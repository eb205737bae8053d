//! Normal-bundle obstruction checks for curves.

use serde::{Deserialize, Serialize};

use super::jacobian::{jacobian_matrix, locus_emptiness, minors, Locus};
use super::{fmt_polys, require_nonzero_form, run_check, CheckName, CheckReport, Outcome, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::groebner::{lift, EmptinessWitness, Ideal, TermOrder, Vector};
use crate::polyring::{Polynomial, Ring};
use crate::resolve::{cokernel_of_map, ideal_module, kernel_of_map, normal_module_with_generators, GradedModule};
use crate::sheafcoh::SheafCohomology;

fn require_curve(i_c: &Ideal, budget: &Budget) -> Result<()> {
    let dim = i_c.projective_dimension(budget)?;
    if dim != 1 {
        return Err(Error::WrongDimension { expected: 1, found: dim });
    }
    Ok(())
}

/// Jacobian criterion for a curve: the maximal minors of the Jacobian of a
/// minimal generating set, together with `I_C`, have no common zero.
pub fn curve_is_smooth(i_c: &Ideal, budget: &Budget) -> Result<Locus> {
    let ring = i_c.ring();
    let (_, gens) = ideal_module(i_c, budget)?;
    let codim = ring.projective_dim() - 1;
    let mut all = gens.clone();
    all.extend(minors(&jacobian_matrix(&gens, ring)?, codim));
    locus_emptiness(&all, ring, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalCertificate {
    pub ideal: Vec<String>,
    pub smoothness_witness: EmptinessWitness,
    /// Generator degrees of the normal module.
    pub module_generators: Vec<i32>,
    pub h0: i64,
    pub h1: i64,
}

/// `H^1(C, N_{C/P^n}) = 0` for a smooth curve.
pub fn normal_bundle_h1(i_c: &Ideal, budget: &Budget) -> Result<CheckReport> {
    require_curve(i_c, budget)?;
    let ring = i_c.ring().clone();
    run_check(CheckName::NormalH1, budget, || {
        let smoothness_witness = match curve_is_smooth(i_c, budget)? {
            Locus::Empty(w) => w,
            Locus::Nonempty { dimension, saturated, .. } => {
                return Err(Error::SingularCurve(format!(
                    "singular locus of dimension {dimension}: {}",
                    fmt_polys(&ring, &saturated).join(", ")
                )))
            }
        };
        let nm = normal_module_with_generators(i_c, budget)?;
        let module_generators = nm.module.gens().to_vec();
        let sc = SheafCohomology::new(nm.module, budget)?;
        let cert = NormalCertificate {
            ideal: fmt_polys(&ring, i_c.gens()),
            smoothness_witness,
            module_generators,
            h0: sc.h(0, 0, budget)?,
            h1: sc.h(1, 0, budget)?,
        };
        let summary = format!("h0(N)={}, h1(N)={}", cert.h0, cert.h1);
        Ok(Outcome::new(Verdict::from_bool(cert.h1 == 0), summary, &cert))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeNormalCertificate {
    pub ideal: Vec<String>,
    pub polynomial: String,
    /// `F = Σ c_j g_j` over the minimal generators `g_j` used for the normal module.
    pub cofactors: Vec<String>,
    pub smooth_along_curve: EmptinessWitness,
    pub h0: i64,
    pub h1: i64,
    /// The sheaf map `N_{C/P} -> O_C(deg F)` is onto iff its cokernel module has finite length.
    pub sheaf_surjective: bool,
    pub cokernel_dimension: i64,
    pub kernel_generators: Vec<i32>,
}

/// The kernel module of `N_C -> (R/I_C)(deg F)`, `φ ↦ φ(F)`, together with the
/// Krull dimension of the cokernel.
pub(crate) fn relative_normal_module(
    i_c: &Ideal,
    f: &Polynomial,
    budget: &Budget,
) -> Result<(GradedModule, i64, Vec<Polynomial>)> {
    let ring = i_c.ring();
    let e = f.degree().unwrap() as i32;
    let nm = normal_module_with_generators(i_c, budget)?;
    let order = TermOrder::grevlex();
    let gens: Vec<Vector<Rational>> = nm.ideal_gens.iter().map(|g| Vector::from_poly(g, 0, &order)).collect();
    let cof = lift(&Vector::from_poly(f, 0, &order), &gens, &[0], budget)?
        .ok_or_else(|| Error::Precondition("F is not in I_C".into()))?;
    let images: Vec<Vector<Rational>> = nm
        .sections
        .iter()
        .map(|v| {
            let polys = v.to_polys(cof.len());
            let img = cof.iter().zip(&polys).fold(Polynomial::zero(), |acc, (c, p)| acc.add(&c.mul(p)));
            Vector::from_poly(&img, 0, &order)
        })
        .collect();
    let target = GradedModule::new(ring.clone(), vec![-e], gens);
    let kernel = kernel_of_map(&nm.module, &target, &images, budget)?;
    let coker_dim = cokernel_of_map(&target, &images).krull_dimension(budget)?;
    Ok((kernel, coker_dim, cof))
}

/// `H^1(C, N_{C/X}) = 0` for `C ⊂ X = V(F)`, with `N_{C/X}` the kernel of the evaluation map.
pub fn relative_normal_h1(i_c: &Ideal, f: &Polynomial, budget: &Budget) -> Result<CheckReport> {
    require_nonzero_form(f, "F")?;
    require_curve(i_c, budget)?;
    if !i_c.contains(f, budget)? {
        return Err(Error::Precondition("F is not in I_C".into()));
    }
    let ring: Ring = i_c.ring().clone();
    run_check(CheckName::RelativeNormalH1, budget, || {
        let mut gens = i_c.gens().to_vec();
        gens.extend(jacobian_matrix(std::slice::from_ref(f), &ring)?.remove(0));
        let smooth_along_curve = match locus_emptiness(&gens, &ring, budget)? {
            Locus::Empty(w) => w,
            Locus::Nonempty { dimension, saturated, .. } => {
                return Err(Error::SingularAlongCurve(format!(
                    "dimension {dimension}: {}",
                    fmt_polys(&ring, &saturated).join(", ")
                )))
            }
        };
        let (kernel, coker_dim, cof) = relative_normal_module(i_c, f, budget)?;
        let kernel_generators = kernel.gens().to_vec();
        let sc = SheafCohomology::new(kernel, budget)?;
        let cert = RelativeNormalCertificate {
            ideal: fmt_polys(&ring, i_c.gens()),
            polynomial: ring.format(f),
            cofactors: fmt_polys(&ring, &cof),
            smooth_along_curve,
            h0: sc.h(0, 0, budget)?,
            h1: sc.h(1, 0, budget)?,
            sheaf_surjective: coker_dim <= 0,
            cokernel_dimension: coker_dim,
            kernel_generators,
        };
        let summary = format!("h0(N_C/X)={}, h1(N_C/X)={}", cert.h0, cert.h1);
        Ok(Outcome::new(Verdict::from_bool(cert.h1 == 0), summary, &cert))
    })
}
