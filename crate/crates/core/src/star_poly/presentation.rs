//! Finitely presented commutative algebras and *-algebras: generators,
//! adjoint links and oriented rewrite rules.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::CRational;

use super::monomial::Monomial;

/// A raw coefficient table. Zero coefficients are never stored.
pub type Terms = BTreeMap<Monomial, CRational>;

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Algebra,
    Star,
}

/// How a generator relates to the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Link {
    /// `g* = g`.
    SelfAdjoint,
    /// `g* = generators[i]`.
    Partner(usize),
    /// No involution (algebra mode only).
    Unlinked,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    /// Base identifier. For an adjoint partner this is the name of the
    /// generator it is the adjoint of.
    pub name: String,
    /// True for the auto-introduced `adj(g)` partner of a free generator.
    pub adjoint: bool,
    pub link: Link,
}

impl Generator {
    pub fn selfadjoint(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            adjoint: false,
            link: Link::SelfAdjoint,
        }
    }

    pub fn plain(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            adjoint: false,
            link: Link::Unlinked,
        }
    }

    /// Rendered name: `z` or `adj(z)`.
    pub fn display_name(&self) -> String {
        if self.adjoint {
            format!("adj({})", self.name)
        } else {
            self.name.clone()
        }
    }
}

/// `lead -> tail`, where `tail` is strictly smaller than `lead`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lead: Monomial,
    pub tail: Terms,
}

impl RewriteRule {
    /// The monic relation `lead - tail`.
    pub fn relation(&self) -> Terms {
        let mut t: Terms = self.tail.iter().map(|(m, c)| (m.clone(), -c)).collect();
        t.insert(self.lead.clone(), CRational::one());
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    name: String,
    mode: Mode,
    generators: Vec<Generator>,
    rules: Vec<RewriteRule>,
    step_budget: u64,
}

impl Presentation {
    /// Validates generators and orients `relations` into a confluent,
    /// inter-reduced rewrite system. In star mode the involutes of the
    /// relations are added until the set is closed under the involution.
    pub fn new(
        name: impl Into<String>,
        mode: Mode,
        generators: Vec<Generator>,
        relations: Vec<Terms>,
    ) -> Result<Self> {
        Self::with_budget(name, mode, generators, relations, DEFAULT_STEP_BUDGET)
    }

    pub fn with_budget(
        name: impl Into<String>,
        mode: Mode,
        generators: Vec<Generator>,
        relations: Vec<Terms>,
        step_budget: u64,
    ) -> Result<Self> {
        let mut pres = Presentation {
            name: name.into(),
            mode,
            generators,
            rules: Vec::new(),
            step_budget,
        };
        pres.check_generators()?;
        let n = pres.arity();
        for r in &relations {
            if r.keys().any(|m| m.arity() != n) {
                return Err(Error::InvalidArgument(
                    "relation exponent vector has the wrong length".into(),
                ));
            }
        }

        let mut pending = relations;
        if mode == Mode::Star {
            let inv: Vec<Terms> = pending.iter().map(|r| pres.involute_terms(r)).collect();
            pending.extend(inv);
        }
        pres.rules = pres.complete(pending)?;
        if mode == Mode::Star {
            // The rule set is built from a *-closed generating set, so the
            // involute of every rule must already reduce to zero.
            for rule in &pres.rules {
                let inv = pres.involute_terms(&rule.relation());
                if !pres.reduce(inv)?.is_empty() {
                    return Err(Error::NotConfluent {
                        first: pres.format_terms(&rule.relation()),
                        second: "its involute".into(),
                        residue: "nonzero".into(),
                    });
                }
            }
        }
        Ok(pres)
    }

    /// A relation-free presentation.
    pub fn free(name: impl Into<String>, mode: Mode, generators: Vec<Generator>) -> Result<Self> {
        Self::new(name, mode, generators, Vec::new())
    }

    fn check_generators(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.display_name()) {
                return Err(Error::DuplicateGenerator(g.display_name()));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            match (self.mode, g.link) {
                (Mode::Algebra, Link::Unlinked) => {}
                (Mode::Algebra, Link::SelfAdjoint) => {
                    return Err(Error::SelfAdjointInAlgebraMode(g.name.clone()))
                }
                (Mode::Algebra, Link::Partner(_)) => {
                    return Err(Error::InvalidArgument(format!(
                        "generator `{}` has an adjoint partner in algebra mode",
                        g.display_name()
                    )))
                }
                (Mode::Star, Link::Unlinked) => {
                    return Err(Error::InvalidArgument(format!(
                        "generator `{}` has no adjoint link in star-algebra mode",
                        g.display_name()
                    )))
                }
                (Mode::Star, Link::SelfAdjoint) => {}
                (Mode::Star, Link::Partner(j)) => {
                    let back = self.generators.get(j).map(|p| p.link);
                    if j == i || back != Some(Link::Partner(i)) {
                        return Err(Error::InvalidArgument(format!(
                            "adjoint link of `{}` is not an involution",
                            g.display_name()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn relations(&self) -> Vec<Terms> {
        self.rules.iter().map(RewriteRule::relation).collect()
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    pub fn has_relations(&self) -> bool {
        !self.rules.is_empty()
    }

    /// Index of a generator by its rendered name (`z` or `adj(z)`).
    pub fn index_of(&self, display_name: &str) -> Option<usize> {
        self.generators
            .iter()
            .position(|g| g.display_name() == display_name)
    }

    /// Adjoint partner index; `None` in algebra mode.
    pub fn partner(&self, index: usize) -> Option<usize> {
        match self.generators[index].link {
            Link::SelfAdjoint => Some(index),
            Link::Partner(j) => Some(j),
            Link::Unlinked => None,
        }
    }

    /// Equality up to generator names.
    pub fn structurally_eq(&self, other: &Presentation) -> bool {
        self.mode == other.mode
            && self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.link == b.link && a.adjoint == b.adjoint)
            && self.rules == other.rules
    }

    /// Conjugates coefficients and swaps each generator with its partner.
    /// Panics in algebra mode; callers check the mode first.
    pub fn involute_terms(&self, terms: &Terms) -> Terms {
        let map: Vec<usize> = (0..self.arity())
            .map(|i| self.partner(i).expect("involution requires star mode"))
            .collect();
        terms
            .iter()
            .map(|(m, c)| (m.reindex(&map, self.arity()), c.conj()))
            .collect()
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.arity())
    }

    pub fn is_irreducible(&self, m: &Monomial) -> bool {
        !self.rules.iter().any(|r| r.lead.divides(m))
    }

    /// Rewrites to the unique normal form, always reducing the greatest
    /// reducible monomial first.
    pub fn reduce(&self, mut terms: Terms) -> Result<Terms> {
        terms.retain(|_, c| !c.is_zero());
        if self.rules.is_empty() {
            return Ok(terms);
        }
        let mut steps: u64 = 0;
        loop {
            let hit = terms.iter().rev().find_map(|(m, _)| {
                self.rules
                    .iter()
                    .position(|r| r.lead.divides(m))
                    .map(|ri| (m.clone(), ri))
            });
            let Some((mono, ri)) = hit else {
                return Ok(terms);
            };
            steps += 1;
            if steps > self.step_budget {
                return Err(Error::StepBudgetExceeded {
                    relation: self.format_terms(&self.rules[ri].relation()),
                    budget: self.step_budget,
                });
            }
            let coeff = terms.remove(&mono).expect("monomial present");
            let rule = &self.rules[ri];
            let shift = rule.lead.quotient_of(&mono);
            for (tm, tc) in &rule.tail {
                add_term(&mut terms, tm.mul(&shift), &coeff * tc);
            }
        }
    }

    /// Orients, inter-reduces and checks critical pairs of `relations`.
    fn complete(&self, relations: Vec<Terms>) -> Result<Vec<RewriteRule>> {
        let mut rules: Vec<RewriteRule> = Vec::new();
        let mut max_degree = 0;
        for r in relations {
            let probe = Presentation {
                rules: rules.clone(),
                ..self.clone_shell()
            };
            let reduced = probe.reduce(r)?;
            let Some(rule) = self.orient(&reduced)? else {
                continue;
            };
            max_degree = max_degree.max(rule.lead.degree());
            // Existing rules whose leading monomial the new rule rewrites are
            // re-queued through the same path.
            let (keep, requeue): (Vec<_>, Vec<_>) =
                rules.into_iter().partition(|r| !rule.lead.divides(&r.lead));
            rules = keep;
            rules.push(rule);
            for old in requeue {
                let probe = Presentation {
                    rules: rules.clone(),
                    ..self.clone_shell()
                };
                let reduced = probe.reduce(old.relation())?;
                if let Some(r) = self.orient(&reduced)? {
                    rules.push(r);
                }
            }
        }

        // Fully inter-reduce tails.
        for i in 0..rules.len() {
            let others = Presentation {
                rules: rules
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, r)| r.clone())
                    .collect(),
                ..self.clone_shell()
            };
            rules[i].tail = others.reduce(rules[i].tail.clone())?;
        }
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));

        // Critical pairs up to twice the largest relation degree.
        let bound = 2 * max_degree;
        let sys = Presentation {
            rules: rules.clone(),
            ..self.clone_shell()
        };
        for i in 0..rules.len() {
            for j in (i + 1)..rules.len() {
                let l = rules[i].lead.lcm(&rules[j].lead);
                if l.degree() > bound {
                    continue;
                }
                let mut s = Terms::new();
                let si = rules[i].lead.quotient_of(&l);
                let sj = rules[j].lead.quotient_of(&l);
                for (m, c) in &rules[i].tail {
                    add_term(&mut s, m.mul(&si), c.clone());
                }
                for (m, c) in &rules[j].tail {
                    add_term(&mut s, m.mul(&sj), -c);
                }
                let residue = sys.reduce(s)?;
                if !residue.is_empty() {
                    return Err(Error::NotConfluent {
                        first: self.format_terms(&rules[i].relation()),
                        second: self.format_terms(&rules[j].relation()),
                        residue: self.format_terms(&residue),
                    });
                }
            }
        }
        Ok(rules)
    }

    fn orient(&self, relation: &Terms) -> Result<Option<RewriteRule>> {
        let Some((lead, lc)) = relation.iter().next_back() else {
            return Ok(None);
        };
        if lead.is_one() {
            return Err(Error::InconsistentRelation(self.format_terms(relation)));
        }
        let inv = lc.inv().expect("stored coefficients are nonzero");
        let tail = relation
            .iter()
            .filter(|(m, _)| *m != lead)
            .map(|(m, c)| (m.clone(), -(c * &inv)))
            .collect();
        Ok(Some(RewriteRule {
            lead: lead.clone(),
            tail,
        }))
    }

    fn clone_shell(&self) -> Presentation {
        Presentation {
            name: self.name.clone(),
            mode: self.mode,
            generators: self.generators.clone(),
            rules: Vec::new(),
            step_budget: self.step_budget,
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = self.generators[i].display_name();
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }

    /// Canonical rendering: descending graded-lex order, every non-constant
    /// term spelled `coeff*monomial`, constant last, `0` for the empty table.
    pub fn format_terms(&self, terms: &Terms) -> String {
        let mut out = String::new();
        for (k, (m, c)) in terms.iter().rev().filter(|(_, c)| !c.is_zero()).enumerate() {
            let (sep, coeff) = if k > 0 && c.is_negative_real() {
                (" - ", (-c).to_string())
            } else if k > 0 {
                (" + ", c.to_string())
            } else {
                ("", c.to_string())
            };
            out.push_str(sep);
            out.push_str(&coeff);
            if !m.is_one() {
                out.push('*');
                out.push_str(&self.format_monomial(m));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Presentation {
    /// Renders in the textual presentation language. Adjoint partners are
    /// implicit in star mode and therefore not declared.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mode == Mode::Star {
            write!(f, "star ")?;
        }
        writeln!(f, "algebra {};", self.name)?;
        for g in &self.generators {
            if g.adjoint {
                continue;
            }
            let kind = match g.link {
                Link::SelfAdjoint => "selfadjoint",
                _ => "free",
            };
            writeln!(f, "generator {} : {};", g.name, kind)?;
        }
        for r in self.relations() {
            writeln!(f, "relation {};", self.format_terms(&r))?;
        }
        Ok(())
    }
}

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: CRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}
