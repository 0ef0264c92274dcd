use std::fmt;

use serde::Serialize;

use super::BasedRing;

/// Witness tuples kept per axiom; the failure count is always complete.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `N[i][j][k] >= 0`; witness `(i, j, k)`.
    Nonnegative,
    /// `e b_j = b_j` for `e` the sum of the unit set; witness `(j, k)`.
    UnitLeft,
    /// `b_j e = b_j`; witness `(j, k)`.
    UnitRight,
    /// `dual(dual(i)) = i`; witness `(i)`.
    DualInvolution,
    /// `N[i][j][k] = N[dual j][dual i][dual k]`; witness `(i, j, k)`.
    DualAntiHomomorphism,
    /// `tau(b_i b_j) = [j = dual i]`; witness `(i, j)`.
    TraceCondition,
    /// `(b_i b_j) b_k = b_i (b_j b_k)` coefficientwise; witness `(i, j, k, l)`.
    Associativity,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Nonnegative,
        Axiom::UnitLeft,
        Axiom::UnitRight,
        Axiom::DualInvolution,
        Axiom::DualAntiHomomorphism,
        Axiom::TraceCondition,
        Axiom::Associativity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Nonnegative => "nonnegative",
            Axiom::UnitLeft => "unit_left",
            Axiom::UnitRight => "unit_right",
            Axiom::DualInvolution => "dual_involution",
            Axiom::DualAntiHomomorphism => "dual_anti_homomorphism",
            Axiom::TraceCondition => "trace_condition",
            Axiom::Associativity => "associativity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub failure_count: usize,
    /// Up to [`MAX_WITNESSES`] counterexample tuples in lexicographic order.
    pub witnesses: Vec<Vec<usize>>,
}

impl AxiomCheck {
    fn new(axiom: Axiom) -> Self {
        AxiomCheck {
            axiom,
            passed: true,
            failure_count: 0,
            witnesses: Vec::new(),
        }
    }

    fn fail(&mut self, witness: &[usize]) {
        self.passed = false;
        self.failure_count += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness.to_vec());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per failed axiom with its first witness.
    pub fn summary(&self) -> String {
        if self.passed() {
            return "all axioms hold".to_owned();
        }
        self.failures()
            .map(|c| {
                format!(
                    "{} fails ({} cases, first at {:?})",
                    c.axiom, c.failure_count, c.witnesses[0]
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks every based-ring axiom exhaustively.
pub fn validate(ring: &BasedRing) -> ValidationReport {
    let r = ring.rank();
    let dual = ring.dual();
    let n = |i, j, k| ring.n(i, j, k);

    let mut nonneg = AxiomCheck::new(Axiom::Nonnegative);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if n(i, j, k) < 0 {
                    nonneg.fail(&[i, j, k]);
                }
            }
        }
    }

    let mut left = AxiomCheck::new(Axiom::UnitLeft);
    let mut right = AxiomCheck::new(Axiom::UnitRight);
    for j in 0..r {
        for k in 0..r {
            let expected = i64::from(j == k);
            let l: i64 = ring.unit_set().iter().map(|&u| n(u, j, k)).sum();
            let rt: i64 = ring.unit_set().iter().map(|&u| n(j, u, k)).sum();
            if l != expected {
                left.fail(&[j, k]);
            }
            if rt != expected {
                right.fail(&[j, k]);
            }
        }
    }

    let mut involution = AxiomCheck::new(Axiom::DualInvolution);
    for i in 0..r {
        if dual[dual[i]] != i {
            involution.fail(&[i]);
        }
    }

    let mut anti = AxiomCheck::new(Axiom::DualAntiHomomorphism);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if n(i, j, k) != n(dual[j], dual[i], dual[k]) {
                    anti.fail(&[i, j, k]);
                }
            }
        }
    }

    let mut trace = AxiomCheck::new(Axiom::TraceCondition);
    for (i, &di) in dual.iter().enumerate() {
        for j in 0..r {
            let expected = i64::from(j == di);
            if ring.trace_of_product(i, j) != expected {
                trace.fail(&[i, j]);
            }
        }
    }

    let mut assoc = AxiomCheck::new(Axiom::Associativity);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let lhs: i128 = (0..r)
                        .map(|m| i128::from(n(i, j, m)) * i128::from(n(m, k, l)))
                        .sum();
                    let rhs: i128 = (0..r)
                        .map(|m| i128::from(n(j, k, m)) * i128::from(n(i, m, l)))
                        .sum();
                    if lhs != rhs {
                        assoc.fail(&[i, j, k, l]);
                    }
                }
            }
        }
    }

    ValidationReport {
        checks: vec![nonneg, left, right, involution, anti, trace, assoc],
    }
}
