//! Generalized linking matrix, homology of the surgered manifold, and the
//! replacement of (±1/m)-surgeries by m parallel (±1)-surgeries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactlin::{smith_normal_form, symmetric_signature, IntMatrix};
use crate::model::{ContactCoefficient, LegendrianComponent, SurgeryDiagram};

/// The matrix `Q` with `Q_ii = p_i` and `Q_ij = q_j·lk(L_i, L_j)`.
///
/// Row and column `i` belong to the meridian `μ_i`. `Q` itself is not
/// symmetric unless every `q_i = 1`, but `diag(q)·Q` always is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenLinkingMatrix {
    matrix: IntMatrix,
    q: Vec<BigInt>,
}

impl GenLinkingMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Denominators `q_i = m_i` of the topological slopes.
    pub fn q(&self) -> &[BigInt] {
        &self.q
    }

    pub fn size(&self) -> usize {
        self.q.len()
    }

    /// `diag(q)·Q`, a symmetric matrix.
    pub fn symmetrized(&self) -> IntMatrix {
        let mut s = self.matrix.clone();
        for i in 0..self.size() {
            for j in 0..self.size() {
                s[(i, j)] *= &self.q[i];
            }
        }
        s
    }
}

pub fn build_q(diagram: &SurgeryDiagram) -> GenLinkingMatrix {
    let k = diagram.len();
    let mut matrix = IntMatrix::zeros(k, k);
    let mut q = Vec::with_capacity(k);
    for (i, c) in diagram.components.iter().enumerate() {
        let (p, qi) = c.topological_coefficient();
        matrix[(i, i)] = p;
        q.push(qi);
    }
    for i in 0..k {
        for j in 0..k {
            if i != j {
                matrix[(i, j)] = &q[j] * diagram.linking[i][j];
            }
        }
    }
    GenLinkingMatrix { matrix, q }
}

/// `H_1(M) ≅ ℤ^free_rank ⊕ ⊕ ℤ/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyPresentation {
    /// Torsion coefficients `d_i > 1`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl HomologyPresentation {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    /// `|H_1|`, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for HomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// First homology of the surgered manifold, presented by the meridians with
/// relation matrix `Q`.
pub fn homology(q: &GenLinkingMatrix) -> HomologyPresentation {
    homology_of_matrix(q.matrix())
}

pub fn homology_of_matrix(m: &IntMatrix) -> HomologyPresentation {
    let snf = smith_normal_form(m);
    let invariant_factors = snf.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    HomologyPresentation { invariant_factors, free_rank: m.cols() - snf.rank() }
}

fn pushoff_name(name: &str, copy: u64, copies: u64) -> String {
    if copies == 1 {
        name.to_string()
    } else {
        format!("{name}.{}", copy + 1)
    }
}

/// Replaces each component with contact coefficient `s/m` by `m` Legendrian
/// push-offs with coefficient `s`. Copies of one component are consecutive
/// and keep the original component order.
///
/// Push-offs of `L_i` link each other `tb_i` times and link every push-off
/// of `L_j` as `L_i` links `L_j`. Companion knots link every copy of `L_i`
/// as they linked `L_i`.
pub fn expand_to_pm1(diagram: &SurgeryDiagram) -> SurgeryDiagram {
    let owner: Vec<usize> = diagram
        .components
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat(i).take(c.coeff.magnitude() as usize))
        .collect();

    let components = diagram
        .components
        .iter()
        .flat_map(|c| {
            let m = c.coeff.magnitude();
            let coeff = ContactCoefficient::new(c.coeff.sign(), 1).expect("magnitude 1 is valid");
            (0..m).map(move |j| LegendrianComponent::new(pushoff_name(&c.name, j, m), c.tb, c.rot, coeff))
        })
        .collect();

    let linking = (0..owner.len())
        .map(|a| {
            (0..owner.len())
                .map(|b| {
                    let (i, j) = (owner[a], owner[b]);
                    if a == b {
                        0
                    } else if i == j {
                        diagram.components[i].tb
                    } else {
                        diagram.linking[i][j]
                    }
                })
                .collect()
        })
        .collect();

    let knots = diagram
        .knots
        .iter()
        .map(|k| {
            let mut k = k.clone();
            k.lk = owner.iter().map(|&i| k.lk[i]).collect();
            k
        })
        .collect();

    SurgeryDiagram { components, linking, knots }
}

/// `Σ (m_i − 1)·s_i`: the number of extra `±1` eigenvalues the expansion
/// contributes to the signature.
pub fn expansion_signature_shift(diagram: &SurgeryDiagram) -> i64 {
    diagram
        .components
        .iter()
        .map(|c| (c.coeff.magnitude() as i64 - 1) * c.coeff.sign().as_i64())
        .sum()
}

/// Signature of the (generally non-symmetric) matrix `Q`.
///
/// `Q` embeds in the symmetric linking matrix `Q'` of the expanded
/// (±1)-diagram; the remaining eigenvalues of `Q'` are `s_i` with
/// multiplicity `m_i − 1`, so `σ(Q) = σ(Q') − Σ (m_i − 1)·s_i`.
pub fn signature_of_q(diagram: &SurgeryDiagram) -> i64 {
    let expanded = build_q(&expand_to_pm1(diagram));
    let inertia = symmetric_signature(expanded.matrix())
        .expect("linking matrix of a (±1)-diagram with symmetric linking data is symmetric");
    inertia.signature() - expansion_signature_shift(diagram)
}

/// Number of components with contact coefficient `+1/m`, counted with
/// multiplicity `m` (the count of `+1` surgeries after expansion).
pub fn positive_surgery_count(diagram: &SurgeryDiagram) -> u64 {
    diagram
        .components
        .iter()
        .filter(|c| c.coeff.sign() == crate::model::Sign::Plus)
        .map(|c| c.coeff.magnitude())
        .sum()
}
