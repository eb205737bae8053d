//! Smoothness, containment, ACM and transversality checks.

use serde::{Deserialize, Serialize};

use super::jacobian::{jacobian_matrix, locus_emptiness, minors, Locus};
use super::{fmt_polys, require_nonzero_form, run_check, CheckName, CheckReport, Outcome, Verdict};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{dimension_mod_p, saturate, EmptinessWitness, Ideal};
use crate::polyring::{Polynomial, Ring};
use crate::resolve::GradedModule;
use crate::sheafcoh::{rao_table, CohomologyTable, RaoTable, SheafCohomology};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessCertificate {
    pub polynomial: String,
    /// `-1` when the singular locus is empty.
    pub singular_dimension: i64,
    pub witness: Option<EmptinessWitness>,
    /// Generators of the saturated singular ideal, on failure.
    pub singular_ideal: Vec<String>,
    /// Every generator `g` satisfies `x_i^steps g ∈ J` for all `i`.
    pub saturation_steps: usize,
}

/// `V(F)` is smooth iff `(F, ∂_0 F, ..., ∂_n F)` has empty projective zero locus.
pub fn check_smoothness(f: &Polynomial, ring: &Ring, budget: &Budget) -> Result<CheckReport> {
    require_nonzero_form(f, "F")?;
    run_check(CheckName::SmoothCheck, budget, || {
        let mut gens = vec![f.clone()];
        gens.extend(jacobian_matrix(std::slice::from_ref(f), ring)?.remove(0));
        let cert = match locus_emptiness(&gens, ring, budget)? {
            Locus::Empty(w) => SmoothnessCertificate {
                polynomial: ring.format(f),
                singular_dimension: -1,
                witness: Some(w),
                singular_ideal: Vec::new(),
                saturation_steps: 0,
            },
            Locus::Nonempty { dimension, saturated, saturation_steps } => SmoothnessCertificate {
                polynomial: ring.format(f),
                singular_dimension: dimension,
                witness: None,
                singular_ideal: fmt_polys(ring, &saturated),
                saturation_steps,
            },
        };
        let pass = cert.singular_dimension == -1;
        let summary = if pass {
            "singular locus empty (dimension -1)".to_string()
        } else {
            format!("singular locus of dimension {}", cert.singular_dimension)
        };
        Ok(Outcome::new(Verdict::from_bool(pass), summary, &cert))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentCertificate {
    pub polynomial: String,
    pub ideal: Vec<String>,
    pub normal_form: String,
}

/// `F ∈ I_C` by normal form.
pub fn check_containment(f: &Polynomial, i_c: &Ideal, budget: &Budget) -> Result<CheckReport> {
    require_nonzero_form(f, "F")?;
    let ring = i_c.ring();
    run_check(CheckName::Contains, budget, || {
        let nf = i_c.normal_form(f, budget)?;
        let cert = ContainmentCertificate {
            polynomial: ring.format(f),
            ideal: fmt_polys(ring, i_c.gens()),
            normal_form: ring.format(&nf),
        };
        let pass = nf.is_zero();
        let summary = if pass { "normal form 0".to_string() } else { format!("residue {}", cert.normal_form) };
        Ok(Outcome::new(Verdict::from_bool(pass), summary, &cert))
    })
}

/// ACM iff the Hartshorne-Rao module vanishes; runs on the saturation of `I_C`.
pub fn check_acm(i_c: &Ideal, window: Option<(i64, i64)>, budget: &Budget) -> Result<CheckReport> {
    run_check(CheckName::AcmCheck, budget, || {
        let sat = saturate(i_c, None, budget)?.ideal;
        let rao: RaoTable = rao_table(&sat, window, budget)?;
        let summary = if rao.acm {
            "h1(I_C(k)) = 0 for all k: ACM".to_string()
        } else {
            format!("nonzero h1(I_C(k)) at {:?}", rao.table.nonzero(1))
        };
        Ok(Outcome::new(Verdict::from_bool(rao.acm), summary, &rao))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalityCertificate {
    pub forms: Vec<String>,
    pub codimension: usize,
    /// How the codimension of the common zero locus was established.
    pub codimension_method: String,
    pub minors_count: usize,
    pub witness: Option<EmptinessWitness>,
    /// Saturated degeneracy ideal and its dimension, on failure.
    pub degeneracy_ideal: Vec<String>,
    pub degeneracy_dimension: i64,
}

/// Common zero locus of `c` forms is of codimension `c`; returns the method used.
pub(crate) fn certify_codimension(forms: &[Polynomial], ring: &Ring, budget: &Budget) -> Result<String> {
    let n = ring.projective_dim() as i64;
    let c = forms.len() as i64;
    if let Some((p, d)) = dimension_mod_p(forms, ring.num_vars(), budget)? {
        if d == n - c {
            return Ok(format!("dimension {d} modulo {p} (upper bound, equal to the Krull lower bound)"));
        }
    }
    let d = Ideal::new(ring.clone(), forms.to_vec())?.projective_dimension(budget)?;
    if d != n - c {
        return Err(Error::Precondition(format!("common zero locus has dimension {d}, expected {}", n - c)));
    }
    Ok(format!("dimension {d} over the rationals"))
}

/// Transverse iff the forms together with the maximal minors of their Jacobian have no common zero.
pub fn check_transversality(forms: &[Polynomial], ring: &Ring, budget: &Budget) -> Result<CheckReport> {
    if !(2..=3).contains(&forms.len()) {
        return Err(Error::InvalidInput(format!("transversality takes 2 or 3 forms, got {}", forms.len())));
    }
    for f in forms {
        require_nonzero_form(f, "form")?;
    }
    run_check(CheckName::Transversality, budget, || {
        let c = forms.len();
        let codimension_method = certify_codimension(forms, ring, budget)?;
        let ms = minors(&jacobian_matrix(forms, ring)?, c);
        let mut gens = forms.to_vec();
        gens.extend(ms.iter().cloned());
        let mut cert = TransversalityCertificate {
            forms: fmt_polys(ring, forms),
            codimension: c,
            codimension_method,
            minors_count: ms.len(),
            witness: None,
            degeneracy_ideal: Vec::new(),
            degeneracy_dimension: -1,
        };
        match locus_emptiness(&gens, ring, budget)? {
            Locus::Empty(w) => {
                cert.witness = Some(w);
                Ok(Outcome::new(Verdict::Pass, "Jacobian has full rank along the intersection", &cert))
            }
            Locus::Nonempty { dimension, saturated, .. } => {
                cert.degeneracy_ideal = fmt_polys(ring, &saturated);
                cert.degeneracy_dimension = dimension;
                Ok(Outcome::new(Verdict::Fail, format!("Jacobian drops rank on a locus of dimension {dimension}"), &cert))
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTableCertificate {
    pub module: String,
    pub table: CohomologyTable,
}

/// Tabulates `h^i(M~(k))` for the module produced by `build`. The verdict is
/// pass once every cell is computed.
pub fn cohomology_table_report(
    build: impl FnOnce() -> Result<GradedModule>,
    description: &str,
    rows: &[usize],
    window: (i64, i64),
    provenance: &str,
    budget: &Budget,
) -> Result<CheckReport> {
    if window.0 > window.1 {
        return Err(Error::InvalidInput(format!("empty window [{}, {}]", window.0, window.1)));
    }
    run_check(CheckName::CohomologyTable, budget, || {
        let m = build()?;
        let n = m.ring().projective_dim();
        if let Some(&i) = rows.iter().find(|&&i| i > n) {
            return Err(Error::InvalidInput(format!("cohomology row {i} exceeds dimension {n}")));
        }
        let sc = SheafCohomology::new(m, budget)?;
        let table = sc.table(rows, window, provenance, budget)?;
        let summary = format!("{} rows over [{}, {}] for {description}", rows.len(), window.0, window.1);
        Ok(Outcome::new(Verdict::Pass, summary, &CohomologyTableCertificate { module: description.to_string(), table }))
    })
}
