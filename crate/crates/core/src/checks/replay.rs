//! Certificate-driven re-verification.

use super::basic::{ContainmentCertificate, SmoothnessCertificate};
use super::jacobian::jacobian_matrix;
use super::lines::{restricted_partials, LineFrame, SplittingCertificate};
use super::parse_polys;
use super::sampler::{classify, Witness};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{parse_rational, Rational};
use crate::groebner::{verify_empty_mod_p, EmptinessWitness, Ideal};
use crate::polyring::{Polynomial, Ring, RingDescriptor};
use crate::sheafcoh::p1_kernel_splitting;

/// Re-verifies a smoothness certificate for `F`.
///
/// Pass certificates are checked by recomputing the recorded emptiness
/// witness. Fail certificates are checked without redoing the saturation:
/// the recorded ideal contains the Jacobian ideal `J`, each generator `g`
/// has `x_i^steps g ∈ J`, and its zero locus has the recorded dimension.
pub fn replay_smoothness(f: &Polynomial, ring: &Ring, cert: &SmoothnessCertificate, budget: &Budget) -> Result<bool> {
    if ring.parse(&cert.polynomial)? != *f {
        return Ok(false);
    }
    let mut j = vec![f.clone()];
    j.extend(jacobian_matrix(std::slice::from_ref(f), ring)?.remove(0));
    if cert.singular_dimension == -1 {
        return match &cert.witness {
            Some(EmptinessWitness::ModularReduction { prime, .. }) => verify_empty_mod_p(&j, ring.num_vars(), *prime, budget),
            Some(EmptinessWitness::Rational { .. }) => Ok(Ideal::new(ring.clone(), j)?.projective_dimension(budget)? == -1),
            None => Ok(false),
        };
    }
    let sat = Ideal::new(ring.clone(), parse_polys(ring, &cert.singular_ideal)?)?;
    let jac = Ideal::new(ring.clone(), j.clone())?;
    for g in &j {
        if !sat.contains(g, budget)? {
            return Ok(false);
        }
    }
    for g in sat.gens() {
        for v in 0..ring.num_vars() {
            if !jac.contains(&Polynomial::var(v).pow(cert.saturation_steps as u32).mul(g), budget)? {
                return Ok(false);
            }
        }
    }
    Ok(sat.projective_dimension(budget)? == cert.singular_dimension)
}

pub fn replay_containment(ring: &Ring, cert: &ContainmentCertificate, budget: &Budget) -> Result<bool> {
    let f = ring.parse(&cert.polynomial)?;
    let i = Ideal::new(ring.clone(), parse_polys(ring, &cert.ideal)?)?;
    Ok(ring.format(&i.normal_form(&f, budget)?) == cert.normal_form)
}

/// Checks that the recorded binary forms are the restricted partials of `F`
/// under the recorded coordinate change, then recomputes the splitting.
pub fn replay_splitting(ring: &Ring, cert: &SplittingCertificate, budget: &Budget) -> Result<bool> {
    let f = ring.parse(&cert.polynomial)?;
    let matrix: Vec<Vec<Rational>> = cert
        .transform
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad rational {s}")))).collect())
        .collect::<Result<_>>()?;
    let line = parse_polys(ring, &cert.line)?;
    let frame = LineFrame::from_matrix(matrix, line)?;
    let p1 = RingDescriptor::projective(1);
    let forms = parse_polys(&p1, &cert.restricted_partials)?;
    if restricted_partials(&f, &frame, ring.num_vars()) != forms {
        return Ok(false);
    }
    let n = ring.num_vars();
    let report = p1_kernel_splitting(&forms, &vec![1; n - 2], f.degree().unwrap() as i32, budget)?;
    Ok(report.splitting == cert.splitting && report.h0_profile == cert.h0_profile)
}

/// A sampler witness reclassifies to its recorded class.
pub fn replay_witness(line: &Ideal, w: &Witness, budget: &Budget) -> Result<bool> {
    let f = line.ring().parse(&w.polynomial)?;
    Ok(classify(&f, line, budget)?.label() == w.class)
}
