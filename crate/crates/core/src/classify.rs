//! Decision table over the headline classification statements.
//!
//! A query fixes the second Betti number of M, the parity of |G| and optionally
//! whether the action is pseudofree and the type of the intersection form. The
//! table returns each encoded statement whose hypotheses are met. Statements are
//! recorded in paraphrase, with the group shapes they allow as family tags
//! understood by [`crate::group::matches_family_tag`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{matches_family, max_cyclic_normal_index, Family, FiniteGroup};

/// Largest b₂ allowed by the Euler characteristic bound `χ(M) ≤ 7`.
pub const MAX_B2: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    Odd,
    Even,
    Definite,
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => invalid(format!("order parity must be odd or even, got {other:?}")),
        }
    }
}

impl FromStr for FormType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "odd" => Ok(FormType::Odd),
            "even" => Ok(FormType::Even),
            "definite" => Ok(FormType::Definite),
            other => invalid(format!("intersection form must be odd, even or definite, got {other:?}")),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationQuery {
    pub b2: u8,
    pub order_parity: Parity,
    pub pseudofree: Option<bool>,
    pub intersection_form: Option<FormType>,
}

impl ClassificationQuery {
    pub fn new(b2: u8, order_parity: Parity) -> Self {
        Self {
            b2,
            order_parity,
            pseudofree: None,
            intersection_form: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.b2 > MAX_B2 {
            return invalid(format!("b2 must lie in 0..={MAX_B2}, got {}", self.b2));
        }
        if self.b2 == 0 && self.intersection_form == Some(FormType::Odd) {
            return invalid("the zero form has no odd type");
        }
        Ok(())
    }
}

/// One matching statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementRecord {
    /// Where the statement is made, e.g. `Theorem 1.4`.
    pub anchor: String,
    pub conclusion: String,
    /// How the order threshold is phrased where the statement is made.
    pub constant: Option<String>,
    /// Group shapes allowed by the conclusion; empty when it names none.
    pub families: Vec<String>,
    /// Upper bound on the smallest index of a normal cyclic subgroup.
    pub normal_cyclic_index_bound: Option<usize>,
    /// Upper bound on k for effective `Z₂^k` actions.
    pub elementary_two_rank_bound: Option<u32>,
}

impl StatementRecord {
    fn new(anchor: &str, conclusion: &str) -> Self {
        Self {
            anchor: anchor.into(),
            conclusion: conclusion.into(),
            constant: Some(UNIVERSAL_C.into()),
            families: Vec::new(),
            normal_cyclic_index_bound: None,
            elementary_two_rank_bound: None,
        }
    }

    fn families(mut self, families: &[Family]) -> Self {
        self.families = families.iter().map(|f| f.tag().to_string()).collect();
        self
    }

    fn constant(mut self, text: Option<&str>) -> Self {
        self.constant = text.map(String::from);
        self
    }

    /// Whether a concrete group is compatible with the machine-checkable parts
    /// of the conclusion. Records without family tags or bounds accept anything.
    pub fn admits(&self, g: &FiniteGroup) -> Result<bool> {
        if !self.families.is_empty() {
            let mut any = false;
            for tag in &self.families {
                if matches_family(g, Family::parse(tag)?)? {
                    any = true;
                    break;
                }
            }
            if !any {
                return Ok(false);
            }
        }
        if let Some(bound) = self.normal_cyclic_index_bound {
            if max_cyclic_normal_index(g)? > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

const UNIVERSAL_C: &str = "|G| at least a universal constant C";
const EXPLICIT_C: &str = "C = 61^8 * |GL(Z_3, C(4))| with the Gromov constant C(4) about 10^(10*4^4)";

/// Every encoded statement whose hypotheses hold for the query.
pub fn classify(query: &ClassificationQuery) -> Result<Vec<StatementRecord>> {
    query.validate()?;
    let b2 = query.b2;
    let odd = query.order_parity == Parity::Odd;
    let mut out = Vec::new();

    out.push(
        StatementRecord::new(
            "Corollary 4.3",
            "for groups at or above the explicit threshold the Euler characteristic of M is at most 7, so b2 <= 5",
        )
        .constant(Some(EXPLICIT_C)),
    );

    if odd {
        out.push(
            StatementRecord::new(
                "Theorem 1.1",
                "G is abelian of rank at most 2, or G is non-abelian, embeds in PU(3) and has the metacyclic presentation <A,B | A^m = B^n = 1, BAB^-1 = A^r> with (n(r-1), m) = 1 and r != 1, r^3 = 1 mod m",
            )
            .families(&[Family::Cyclic, Family::OddMetacyclic]),
        );
        match b2 {
            0 => {
                out.push(StatementRecord::new(
                    "Theorem 1.1, case b2 = 0",
                    "G is abelian of rank at most 2",
                ));
                if query.pseudofree == Some(true) {
                    out.push(
                        StatementRecord::new(
                            "Theorem 1.1, case b2 = 0, pseudofree",
                            "a pseudofree odd order action on S^4 has polyhedral or dihedral isotropy, so G is cyclic",
                        )
                        .families(&[Family::Cyclic]),
                    );
                }
                out.push(StatementRecord::new(
                    "Theorem 1.2.1",
                    "if G is abelian of rank 2 then M is homeomorphic to S^4 or CP^2",
                ));
            }
            1 => {
                out.push(StatementRecord::new(
                    "Theorem 1.2.1",
                    "if G is abelian of rank 2 then M is homeomorphic to S^4 or CP^2",
                ));
                out.push(StatementRecord::new(
                    "Theorem 1.2.2",
                    "if G is non-abelian then M is homeomorphic to CP^2",
                ));
            }
            2 => out.push(
                StatementRecord::new(
                    "Theorem 1.1, case b2 = 2",
                    "every normalizer N(g) is cyclic, so Sylow subgroups are cyclic and G is cyclic",
                )
                .families(&[Family::Cyclic]),
            ),
            _ => out.push(StatementRecord::new(
                "Theorem 1.1, case b2 >= 3",
                "G fixes a point and embeds in SO(4), so G is abelian of rank at most 2",
            )),
        }
    } else if b2 >= 2 {
        out.push(StatementRecord::new(
            "Theorem 1.3",
            "M is neither S^4 nor +-CP^2, so G has a subgroup of index 2 isomorphic to a subgroup of SO(5)",
        ));
    }

    if b2 >= 1 {
        let mut rec = StatementRecord::new(
            "Theorem 1.4",
            "M is not S^4, so G has a normal cyclic subgroup of index at most 120",
        );
        rec.normal_cyclic_index_bound = Some(120);
        out.push(rec);
    }

    if query.intersection_form == Some(FormType::Definite) {
        let mut rec = StatementRecord::new(
            "Theorem 1.5",
            "an effective isometric action of Z_2^k on M with definite form has k <= 4",
        )
        .constant(None);
        rec.elementary_two_rank_bound = Some(4);
        out.push(rec);
    }

    if (2..=3).contains(&b2) && query.intersection_form == Some(FormType::Odd) && query.pseudofree == Some(true) {
        let families: &[Family] = if odd {
            &[Family::Cyclic]
        } else {
            &[
                Family::Cyclic,
                Family::OddCyclicByZ2,
                Family::OddCyclicByZ4,
                Family::OddCyclicByKlein,
            ]
        };
        out.push(
            StatementRecord::new(
                "Lemma 8.3",
                "with no two-dimensional fixed sets in G_0, G is Z_n, Z_n:Z_2, Z_n:Z_4 or Z_n:(Z_2+Z_2) with n odd",
            )
            .constant(None)
            .families(families),
        );
    }

    if b2 == 2 && query.intersection_form == Some(FormType::Even) && !odd {
        out.push(
            StatementRecord::new(
                "Lemma 8.4",
                "on a manifold homeomorphic to S^2 x S^2, G extends a polyhedral group by a subgroup of Z_2+Z_2; when that subgroup is all of Z_2+Z_2, G is D*_{2^n m-} x Z_{m+} or ((Z_{m-}:Z_{2^{n+1}}) x Z_{m+}):Z_2 with n>1 in the latter, m+, m-, n odd and (m+, m-) = 1",
            )
            .constant(None)
            .families(&[Family::DicyclicTimesCyclic, Family::DicyclicExtensionByZ2]),
        );
    }

    let trivial_action = if b2 >= 3 {
        StatementRecord::new(
            "Proposition 4.6",
            "if G acts trivially on homology then G is cyclic",
        )
        .families(&[Family::Cyclic])
    } else {
        StatementRecord::new(
            "Proposition 4.6",
            "if G acts trivially on homology then G is polyhedral or a non-cyclic subgroup of PU(3)",
        )
    };
    out.push(trivial_action);

    Ok(out)
}
