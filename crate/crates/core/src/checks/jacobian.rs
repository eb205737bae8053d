//! Jacobian matrices, minors, and emptiness of projective loci.

use crate::budget::Budget;
use crate::error::Result;
use crate::groebner::{certify_empty_mod_p, saturate, EmptinessWitness, Ideal};
use crate::polyring::{partial_derivative, Polynomial, Ring};

/// Rows are the forms, columns the partial derivatives.
pub fn jacobian_matrix(forms: &[Polynomial], ring: &Ring) -> Result<Vec<Vec<Polynomial>>> {
    forms.iter().map(|f| (0..ring.num_vars()).map(|i| partial_derivative(f, i, ring)).collect()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn det(m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        n => {
            let mut acc = Polynomial::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect()).collect();
                let term = m[0][c].mul(&det(&minor));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// All nonzero `size × size` minors of `matrix`, in lexicographic row/column order.
pub fn minors(matrix: &[Vec<Polynomial>], size: usize) -> Vec<Polynomial> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in subsets(rows, size) {
        for cs in subsets(cols, size) {
            let sub: Vec<Vec<Polynomial>> = rs.iter().map(|&r| cs.iter().map(|&c| matrix[r][c].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Projective zero locus of an ideal: empty with a witness, or nonempty with its saturated ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    Empty(EmptinessWitness),
    Nonempty { dimension: i64, saturated: Vec<Polynomial>, saturation_steps: usize },
}

/// Decides emptiness of `V(gens)`: the modular certificate first, then the rational basis.
pub fn locus_emptiness(gens: &[Polynomial], ring: &Ring, budget: &Budget) -> Result<Locus> {
    if let Some(w) = certify_empty_mod_p(gens, ring.num_vars(), budget)? {
        return Ok(Locus::Empty(w));
    }
    let ideal = Ideal::new(ring.clone(), gens.to_vec())?;
    let dim = ideal.projective_dimension(budget)?;
    if dim == -1 {
        return Ok(Locus::Empty(EmptinessWitness::Rational { basis_size: ideal.gb(budget)?.len() }));
    }
    let sat = saturate(&ideal, None, budget)?;
    Ok(Locus::Nonempty { dimension: dim, saturated: sat.ideal.gens().to_vec(), saturation_steps: sat.steps })
}
