//! Validation reports.
//!
//! Every checker in the crate is total: it never panics on a well-shaped but
//! lawless input, it returns a [`Report`] listing each violated law together
//! with the elements that witness the violation. Reports render as one
//! tab-separated finding per line so they can be consumed by scripts.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A named law that a checker can find violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Law {
    // bounded posets and their maps
    Reflexivity,
    Antisymmetry,
    Transitivity,
    BottomLeast,
    TopGreatest,
    DistinctBounds,
    Monotone,
    PreservesBottom,
    PreservesTop,
    // orthomodular posets
    PerpInvolution,
    PerpAntitone,
    MeetWithComplement,
    OrthogonalJoinExists,
    Orthomodularity,
    PreservesOrthogonality,
    PreservesOrthogonalJoin,
    // effect algebras
    SumCommutative,
    SumZero,
    SumAssociative,
    ComplementSums,
    ComplementUnique,
    Positivity,
    OneIsZeroComplement,
    DerivedOrderPartial,
    DerivedOrderBounds,
    PerpAntiIsomorphism,
    OrthogonalIffBelowComplement,
    HomPreservesOne,
    HomPreservesSum,
    HomPreservesZero,
    HomPreservesComplement,
    DifferenceUnique,
    DifferenceReconstructsSum,
    // effect monoids and bimorphisms
    UnitalRight,
    UnitalLeft,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
    BimorphismUnit,
    BimorphismLeftAdditive,
    BimorphismRightAdditive,
    CornerIsomorphism,
    JoinExists,
    MeetExists,
    LatticeDistributive,
    ComplementIsLatticeComplement,
    // Kalmbach monad and its algebras
    ActionDefined,
    ActionUnit,
    ActionMultiplication,
    MonadLeftUnit,
    MonadRightUnit,
    MonadAssociative,
    Functoriality,
    FactorizationUnit,
    FactorizationUnique,
    // sequence and interval functors
    StabilizationIsomorphism,
    SupAfterConst,
    SupNatural,
    ConstNatural,
    OmegaNormal,
    MulAfterEpsilon,
    MulLeftEqualsRight,
    DifferenceDistributive,
    EpsilonMorphism,
    BetaLandsInIntervals,
    BetaMonotoneInInterval,
    BetaPreservesTop,
    DifferenceMonotone,
}

impl Law {
    /// Stable machine identifier.
    pub fn code(self) -> &'static str {
        use Law::*;
        match self {
            Reflexivity => "poset.reflexive",
            Antisymmetry => "poset.antisymmetric",
            Transitivity => "poset.transitive",
            BottomLeast => "poset.bottom",
            TopGreatest => "poset.top",
            DistinctBounds => "poset.distinct-bounds",
            Monotone => "map.monotone",
            PreservesBottom => "map.bottom",
            PreservesTop => "map.top",
            PerpInvolution => "omp.involution",
            PerpAntitone => "omp.antitone",
            MeetWithComplement => "omp.meet-complement",
            OrthogonalJoinExists => "omp.orthogonal-join",
            Orthomodularity => "omp.orthomodular",
            PreservesOrthogonality => "omp-map.orthogonality",
            PreservesOrthogonalJoin => "omp-map.join",
            SumCommutative => "ea.commutative",
            SumZero => "ea.zero",
            SumAssociative => "ea.associative",
            ComplementSums => "ea.complement",
            ComplementUnique => "ea.complement-unique",
            Positivity => "ea.positivity",
            OneIsZeroComplement => "ea.one",
            DerivedOrderPartial => "ea.order",
            DerivedOrderBounds => "ea.order-bounds",
            PerpAntiIsomorphism => "ea.perp-anti-iso",
            OrthogonalIffBelowComplement => "ea.orthogonal-below-complement",
            HomPreservesOne => "ea-hom.one",
            HomPreservesSum => "ea-hom.sum",
            HomPreservesZero => "ea-hom.zero",
            HomPreservesComplement => "ea-hom.complement",
            DifferenceUnique => "ea.difference-unique",
            DifferenceReconstructsSum => "dposet.sum",
            UnitalRight => "em.unital-right",
            UnitalLeft => "em.unital-left",
            MulAssociative => "em.associative",
            LeftDistributive => "em.left-distributive",
            RightDistributive => "em.right-distributive",
            BimorphismUnit => "bimorphism.unit",
            BimorphismLeftAdditive => "bimorphism.left-additive",
            BimorphismRightAdditive => "bimorphism.right-additive",
            CornerIsomorphism => "em.corner-iso",
            JoinExists => "lattice.join",
            MeetExists => "lattice.meet",
            LatticeDistributive => "lattice.distributive",
            ComplementIsLatticeComplement => "lattice.complement",
            ActionDefined => "action.defined",
            ActionUnit => "action.unit",
            ActionMultiplication => "action.multiplication",
            MonadLeftUnit => "monad.left-unit",
            MonadRightUnit => "monad.right-unit",
            MonadAssociative => "monad.associative",
            Functoriality => "kalmbach.functor",
            FactorizationUnit => "free.unit",
            FactorizationUnique => "free.unique",
            StabilizationIsomorphism => "seq.stabilization",
            SupAfterConst => "seq.sup-const",
            SupNatural => "seq.sup-natural",
            ConstNatural => "seq.const-natural",
            OmegaNormal => "seq.omega-normal",
            MulAfterEpsilon => "nat.mu-epsilon",
            MulLeftEqualsRight => "nat.mu-left-right",
            DifferenceDistributive => "nat.ominus-beta",
            EpsilonMorphism => "nat.epsilon-morphism",
            BetaLandsInIntervals => "nat.beta-interval",
            BetaMonotoneInInterval => "nat.beta-monotone",
            BetaPreservesTop => "nat.beta-top",
            DifferenceMonotone => "nat.ominus-monotone",
        }
    }

    /// The law in mathematical notation.
    pub fn statement(self) -> &'static str {
        use Law::*;
        match self {
            Reflexivity => "x ≤ x",
            Antisymmetry => "x ≤ y and y ≤ x imply x = y",
            Transitivity => "x ≤ y and y ≤ z imply x ≤ z",
            BottomLeast => "0 ≤ x",
            TopGreatest => "x ≤ 1",
            DistinctBounds => "0 ≠ 1 unless the poset has one point",
            Monotone => "x ≤ y implies f(x) ≤ f(y)",
            PreservesBottom => "f(0) = 0",
            PreservesTop => "f(1) = 1",
            PerpInvolution => "(a⊥)⊥ = a",
            PerpAntitone => "a ≤ b iff b⊥ ≤ a⊥",
            MeetWithComplement => "a ∧ a⊥ = 0",
            OrthogonalJoinExists => "if a⊥b then a∨b exists",
            Orthomodularity => "if a⊥b then b = a⊥ ∧ (a∨b)",
            PreservesOrthogonality => "a⊥b implies f(a)⊥f(b)",
            PreservesOrthogonalJoin => "a⊥b implies f(a∨b) = f(a)∨f(b)",
            SumCommutative => "if a⊥b then b⊥a and a⊕b = b⊕a",
            SumZero => "a⊥0 and a⊕0 = a",
            SumAssociative => {
                "if a⊥b and (a⊕b)⊥c then b⊥c, a⊥(b⊕c) and (a⊕b)⊕c = a⊕(b⊕c)"
            }
            ComplementSums => "a⊕a⊥ = 1",
            ComplementUnique => "a⊥ is the unique element with a⊕a⊥ = 1",
            Positivity => "if a⊥1 then a=0",
            OneIsZeroComplement => "1 = 0⊥",
            DerivedOrderPartial => "a ≤ b iff a⊕c = b for some c is a partial order",
            DerivedOrderBounds => "0 ≤ a ≤ 1 in the derived order",
            PerpAntiIsomorphism => "a ↦ a⊥ is an order anti-isomorphism",
            OrthogonalIffBelowComplement => "a⊥b iff a ≤ b⊥",
            HomPreservesOne => "f(1) = 1",
            HomPreservesSum => "a⊥b implies f(a)⊥f(b) and f(a⊕b) = f(a)⊕f(b)",
            HomPreservesZero => "f(0) = 0",
            HomPreservesComplement => "f(a⊥) = f(a)⊥",
            DifferenceUnique => "a⊕c = a⊕d implies c = d",
            DifferenceReconstructsSum => "a⊕b = 1⊖((1⊖a)⊖b)",
            UnitalRight => "x·1 = x",
            UnitalLeft => "1·x = x",
            MulAssociative => "x·(y·z) = (x·y)·z",
            LeftDistributive => "if y⊥z then x·y ⊥ x·z and x·(y⊕z) = x·y ⊕ x·z",
            RightDistributive => "if y⊥z then y·x ⊥ z·x and (y⊕z)·x = y·x ⊕ z·x",
            BimorphismUnit => "f(1,1) = 1",
            BimorphismLeftAdditive => "f(a₁⊕a₂, b) = f(a₁,b) ⊕ f(a₂,b)",
            BimorphismRightAdditive => "f(a, b₁⊕b₂) = f(a,b₁) ⊕ f(a,b₂)",
            CornerIsomorphism => "a ↦ (p·a, p⊥·a) is an isomorphism M ≅ pM × p⊥M",
            JoinExists => "a∨b exists",
            MeetExists => "a∧b exists",
            LatticeDistributive => "a∧(b∨c) = (a∧b)∨(a∧c)",
            ComplementIsLatticeComplement => "a∧a⊥ = 0 and a∨a⊥ = 1",
            ActionDefined => "α([a₁<…<a₂ₙ]) = (a₂⊖a₁)⊕…⊕(a₂ₙ⊖a₂ₙ₋₁) is defined",
            ActionUnit => "α∘η = id",
            ActionMultiplication => "α∘K(α) = α∘μ",
            MonadLeftUnit => "μ∘η_K = id",
            MonadRightUnit => "μ∘K(η) = id",
            MonadAssociative => "μ∘K(μ) = μ∘μ_K",
            Functoriality => "K(g∘f) = K(g)∘K(f) and K(id) = id",
            FactorizationUnit => "h∘η = f",
            FactorizationUnique => "h is the unique OMP morphism with h∘η = f",
            StabilizationIsomorphism => "I(P) ≅ P via the eventual value",
            SupAfterConst => "S∘const = id",
            SupNatural => "S∘I(f) = f∘S",
            ConstNatural => "I(f)∘const = const∘f",
            OmegaNormal => "f(⋁s(i)) = ⋁f(s(i))",
            MulAfterEpsilon => "μ∘ε = id",
            MulLeftEqualsRight => "μᴸ = μᴿ",
            DifferenceDistributive => "⊖∘β = μ∘(id×⊖): a·(c⊖b) = (a·c)⊖(a·b)",
            EpsilonMorphism => "ε: A → A×A is a bounded poset morphism",
            BetaLandsInIntervals => "β(a,[b≤c]) = [a·b ≤ a·c] lies in I₂(A)",
            BetaMonotoneInInterval => "[b≤c] ≤ [b'≤c'] implies β(a,[b≤c]) ≤ β(a,[b'≤c'])",
            BetaPreservesTop => "β(1,[0≤1]) = [0≤1]",
            DifferenceMonotone => "⊖: I₂(E) → E is monotone",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// One violated law with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<String>,
    pub note: Option<String>,
}

/// The outcome of checking one structure against a set of laws.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub structure: String,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(structure: impl Into<String>) -> Self {
        Report {
            structure: structure.into(),
            violations: Vec::new(),
        }
    }

    pub fn with_structure(mut self, name: impl Into<String>) -> Self {
        self.structure = name.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn first(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    pub fn push<I, S>(&mut self, law: Law, witness: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            law,
            witness: witness.into_iter().map(Into::into).collect(),
            note: None,
        });
    }

    pub fn push_note<I, S>(&mut self, law: Law, witness: I, note: impl Into<String>)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.violations.push(Violation {
            law,
            witness: witness.into_iter().map(Into::into).collect(),
            note: Some(note.into()),
        });
    }

    /// Appends the findings of another report.
    pub fn absorb(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// `Ok(())` when passed, otherwise the report as an error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(self.into())
        }
    }
}

impl fmt::Display for Report {
    /// `PASS\t<structure>` or one `FAIL\t<structure>\t<law>\t(<witness>)\t<statement>`
    /// line per finding.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "PASS\t{}", self.structure);
        }
        for v in &self.violations {
            write!(
                f,
                "FAIL\t{}\t{}\t({})\t{}",
                self.structure,
                v.law.code(),
                v.witness.join(","),
                v.law.statement()
            )?;
            if let Some(note) = &v.note {
                write!(f, "\t{note}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_one_line_per_finding() {
        let mut r = Report::new("e3");
        r.push(Law::Positivity, ["h"]);
        r.push(Law::ComplementUnique, ["h", "1"]);
        let text = r.to_string();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "FAIL\te3\tea.positivity\t(h)\tif a⊥1 then a=0");
        assert!(lines[1].starts_with("FAIL\te3\tea.complement-unique\t(h,1)"));
        assert_eq!(Report::new("ok").to_string(), "PASS\tok\n");
    }
}
