//! Rewriting systems in graph mode or string-rewriting mode.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::order::{OrderRelation, TerminationOrder};
use crate::zigzag::{
    Direction, GeneratorId, Letter, NodeId, Object, OrientedStep, StepRef, Word, ZigZag,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Graph,
    Srs,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Graph => "graph",
            Mode::Srs => "srs",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStep {
    pub name: String,
    pub source: NodeId,
    pub target: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringRule {
    pub name: String,
    pub lhs: Word,
    pub rhs: Word,
}

/// Rule declaration by letter names, used to build string systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSpec {
    pub name: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl RuleSpec {
    pub fn new<S: Into<String>>(name: S, lhs: &[&str], rhs: &[&str]) -> Self {
        RuleSpec {
            name: name.into(),
            lhs: lhs.iter().map(|s| s.to_string()).collect(),
            rhs: rhs.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Graph {
        nodes: Vec<String>,
        steps: Vec<GraphStep>,
    },
    Srs {
        alphabet: Vec<String>,
        rules: Vec<StringRule>,
    },
}

/// A declared 2-cell generator between two parallel zig-zags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellGenerator {
    pub name: String,
    pub source: ZigZag,
    pub target: ZigZag,
}

#[derive(Debug, Clone)]
pub struct RewritingSystem {
    name: String,
    presentation: Presentation,
    order: TerminationOrder,
    relation: OrderRelation,
    cells: Vec<CellGenerator>,
    generator_index: HashMap<String, GeneratorId>,
    symbol_index: HashMap<String, u32>,
}

impl RewritingSystem {
    /// Build a graph-mode system from node names and `(name, source, target)`
    /// step declarations.
    pub fn graph<S: AsRef<str>>(
        name: &str,
        nodes: &[S],
        steps: &[(S, S, S)],
        order: TerminationOrder,
    ) -> Result<Self> {
        let nodes: Vec<String> = nodes.iter().map(|n| n.as_ref().to_string()).collect();
        let mut symbol_index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if symbol_index.insert(n.clone(), i as u32).is_some() {
                return Err(Error::InvalidSystem(format!("duplicate object `{n}`")));
            }
        }
        let lookup = |n: &str| {
            symbol_index
                .get(n)
                .map(|&i| NodeId(i))
                .ok_or_else(|| Error::UnknownObject(n.to_string()))
        };
        let mut graph_steps = Vec::with_capacity(steps.len());
        for (step, src, tgt) in steps {
            graph_steps.push(GraphStep {
                name: step.as_ref().to_string(),
                source: lookup(src.as_ref())?,
                target: lookup(tgt.as_ref())?,
            });
        }
        let generator_index = index_names(graph_steps.iter().map(|s| s.name.as_str()))?;
        let presentation = Presentation::Graph {
            nodes,
            steps: graph_steps,
        };
        let relation = OrderRelation::compile(&order, &presentation, &symbol_index)?;
        Ok(RewritingSystem {
            name: name.to_string(),
            presentation,
            order,
            relation,
            cells: Vec::new(),
            generator_index,
            symbol_index,
        })
    }

    /// Build a string rewriting system over `alphabet`.
    pub fn srs<S: AsRef<str>>(
        name: &str,
        alphabet: &[S],
        rules: &[RuleSpec],
        order: TerminationOrder,
    ) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.iter().map(|a| a.as_ref().to_string()).collect();
        let mut symbol_index = HashMap::new();
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || a.chars().any(|c| c.is_whitespace() || c == '"') {
                return Err(Error::InvalidSystem(format!("invalid letter `{a}`")));
            }
            if symbol_index.insert(a.clone(), i as u32).is_some() {
                return Err(Error::InvalidSystem(format!("duplicate letter `{a}`")));
            }
        }
        let word = |letters: &[String]| -> Result<Word> {
            letters
                .iter()
                .map(|l| {
                    symbol_index
                        .get(l.as_str())
                        .map(|&i| Letter(i))
                        .ok_or_else(|| Error::UnknownObject(l.clone()))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        };
        let mut string_rules = Vec::with_capacity(rules.len());
        for r in rules {
            let lhs = word(&r.lhs)?;
            if lhs.is_empty() {
                return Err(Error::InvalidSystem(format!(
                    "rule `{}` has an empty left-hand side",
                    r.name
                )));
            }
            string_rules.push(StringRule {
                name: r.name.clone(),
                lhs,
                rhs: word(&r.rhs)?,
            });
        }
        let generator_index = index_names(string_rules.iter().map(|r| r.name.as_str()))?;
        let presentation = Presentation::Srs {
            alphabet,
            rules: string_rules,
        };
        let relation = OrderRelation::compile(&order, &presentation, &symbol_index)?;
        Ok(RewritingSystem {
            name: name.to_string(),
            presentation,
            order,
            relation,
            cells: Vec::new(),
            generator_index,
            symbol_index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        match self.presentation {
            Presentation::Graph { .. } => Mode::Graph,
            Presentation::Srs { .. } => Mode::Srs,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn order(&self) -> &TerminationOrder {
        &self.order
    }

    pub(crate) fn relation(&self) -> &OrderRelation {
        &self.relation
    }

    /// `x > y` in the declared termination order.
    pub fn gt(&self, x: &Object, y: &Object) -> bool {
        self.relation.gt(x, y)
    }

    pub fn generator_count(&self) -> usize {
        match &self.presentation {
            Presentation::Graph { steps, .. } => steps.len(),
            Presentation::Srs { rules, .. } => rules.len(),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.generator_count() as u32).map(GeneratorId)
    }

    pub fn generator_name(&self, id: GeneratorId) -> &str {
        match &self.presentation {
            Presentation::Graph { steps, .. } => &steps[id.0 as usize].name,
            Presentation::Srs { rules, .. } => &rules[id.0 as usize].name,
        }
    }

    pub fn generator_by_name(&self, name: &str) -> Option<GeneratorId> {
        self.generator_index.get(name).copied()
    }

    pub fn rules(&self) -> &[StringRule] {
        match &self.presentation {
            Presentation::Srs { rules, .. } => rules,
            Presentation::Graph { .. } => &[],
        }
    }

    pub fn rule(&self, id: GeneratorId) -> Option<&StringRule> {
        self.rules().get(id.0 as usize)
    }

    pub fn graph_steps(&self) -> &[GraphStep] {
        match &self.presentation {
            Presentation::Graph { steps, .. } => steps,
            Presentation::Srs { .. } => &[],
        }
    }

    pub fn nodes(&self) -> &[String] {
        match &self.presentation {
            Presentation::Graph { nodes, .. } => nodes,
            Presentation::Srs { .. } => &[],
        }
    }

    pub fn alphabet(&self) -> &[String] {
        match &self.presentation {
            Presentation::Srs { alphabet, .. } => alphabet,
            Presentation::Graph { .. } => &[],
        }
    }

    pub fn node(&self, name: &str) -> Result<Object> {
        match self.mode() {
            Mode::Graph => self
                .symbol_index
                .get(name)
                .map(|&i| Object::Node(NodeId(i)))
                .ok_or_else(|| Error::UnknownObject(name.to_string())),
            Mode::Srs => Err(Error::UnknownObject(name.to_string())),
        }
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        match self.mode() {
            Mode::Srs => self.symbol_index.get(name).map(|&i| Letter(i)),
            Mode::Graph => None,
        }
    }

    pub fn letter_name(&self, letter: Letter) -> &str {
        &self.alphabet()[letter.0 as usize]
    }

    /// Parse a word written as letter names. Single-character alphabets may
    /// be written without separators (`"aAb"`); otherwise letters are
    /// separated by whitespace.
    pub fn word(&self, text: &str) -> Result<Word> {
        if self.mode() != Mode::Srs {
            return Err(Error::UnknownObject(text.to_string()));
        }
        let tokens: Vec<String> = if text.chars().any(char::is_whitespace) {
            text.split_whitespace().map(str::to_string).collect()
        } else if self.alphabet().iter().all(|a| a.chars().count() == 1) {
            text.chars().map(|c| c.to_string()).collect()
        } else if text.is_empty() {
            Vec::new()
        } else {
            vec![text.to_string()]
        };
        tokens
            .iter()
            .map(|t| {
                self.letter(t)
                    .ok_or_else(|| Error::UnknownObject(t.clone()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn word_object(&self, text: &str) -> Result<Object> {
        self.word(text).map(Object::Word)
    }

    /// Render a word the way [`RewritingSystem::word`] reads it back.
    pub fn word_text(&self, word: &Word) -> String {
        let single = self.alphabet().iter().all(|a| a.chars().count() == 1);
        let names = word.letters().iter().map(|&l| self.letter_name(l));
        if single {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }

    /// Human-readable label: the node name or the word (`ε` when empty).
    pub fn object_label(&self, object: &Object) -> String {
        match object {
            Object::Node(n) => self.nodes()[n.0 as usize].clone(),
            Object::Word(w) if w.is_empty() => "ε".to_string(),
            Object::Word(w) => self.word_text(w),
        }
    }

    pub fn contains_object(&self, object: &Object) -> bool {
        match (object, &self.presentation) {
            (Object::Node(n), Presentation::Graph { nodes, .. }) => (n.0 as usize) < nodes.len(),
            (Object::Word(w), Presentation::Srs { alphabet, .. }) => {
                w.letters().iter().all(|l| (l.0 as usize) < alphabet.len())
            }
            _ => false,
        }
    }

    pub fn step_label(&self, step: StepRef) -> String {
        match self.mode() {
            Mode::Graph => self.generator_name(step.generator).to_string(),
            Mode::Srs => format!("{}@{}", self.generator_name(step.generator), step.position),
        }
    }

    fn check_generator(&self, step: StepRef) -> Result<()> {
        if (step.generator.0 as usize) < self.generator_count() {
            Ok(())
        } else {
            Err(Error::UnknownGenerator(format!("#{}", step.generator.0)))
        }
    }

    /// Apply `step` forward to `source`.
    pub fn step_target(&self, step: StepRef, source: &Object) -> Result<Object> {
        self.check_generator(step)?;
        match (&self.presentation, source) {
            (Presentation::Graph { steps, .. }, Object::Node(n)) => {
                let g = &steps[step.generator.0 as usize];
                if step.position != 0 || g.source != *n {
                    return Err(self.no_match(step, source));
                }
                Ok(Object::Node(g.target))
            }
            (Presentation::Srs { rules, .. }, Object::Word(w)) => {
                let r = &rules[step.generator.0 as usize];
                if !w.occurs_at(&r.lhs, step.position) {
                    return Err(self.no_match(step, source));
                }
                Ok(Object::Word(w.splice(step.position, r.lhs.len(), &r.rhs)))
            }
            _ => Err(Error::UnknownObject(format!("{source:?}"))),
        }
    }

    /// Recover the source of `step` from its target.
    pub fn step_source(&self, step: StepRef, target: &Object) -> Result<Object> {
        self.check_generator(step)?;
        match (&self.presentation, target) {
            (Presentation::Graph { steps, .. }, Object::Node(n)) => {
                let g = &steps[step.generator.0 as usize];
                if step.position != 0 || g.target != *n {
                    return Err(self.no_match(step, target));
                }
                Ok(Object::Node(g.source))
            }
            (Presentation::Srs { rules, .. }, Object::Word(w)) => {
                let r = &rules[step.generator.0 as usize];
                if !w.occurs_at(&r.rhs, step.position) {
                    return Err(self.no_match(step, target));
                }
                Ok(Object::Word(w.splice(step.position, r.rhs.len(), &r.lhs)))
            }
            _ => Err(Error::UnknownObject(format!("{target:?}"))),
        }
    }

    /// The object reached from `from` by taking `step` in its direction.
    pub fn oriented_target(&self, step: OrientedStep, from: &Object) -> Result<Object> {
        match step.direction {
            Direction::Forward => self.step_target(step.step, from),
            Direction::Backward => self.step_source(step.step, from),
        }
    }

    fn no_match(&self, step: StepRef, object: &Object) -> Error {
        Error::NoMatch {
            rule: self.generator_name(step.generator).to_string(),
            position: step.position,
            word: self.object_label(object),
        }
    }

    /// Build a zig-zag from a start object and oriented steps, checking
    /// that every step is applicable where it is used.
    pub fn zigzag(&self, start: Object, steps: Vec<OrientedStep>) -> Result<ZigZag> {
        if !self.contains_object(&start) {
            return Err(Error::UnknownObject(format!("{start:?}")));
        }
        let mut objects = Vec::with_capacity(steps.len() + 1);
        objects.push(start);
        for (index, &s) in steps.iter().enumerate() {
            let next = self
                .oriented_target(s, &objects[index])
                .map_err(|e| Error::InvalidZigZag {
                    index,
                    reason: e.to_string(),
                })?;
            objects.push(next);
        }
        Ok(ZigZag::from_parts(objects, steps))
    }

    /// A single forward step as a zig-zag.
    pub fn step_zigzag(&self, step: StepRef, source: Object) -> Result<ZigZag> {
        self.zigzag(source, vec![step.forward()])
    }

    /// Re-check a zig-zag's object sequence against the system.
    pub fn validate_zigzag(&self, zz: &ZigZag) -> Result<()> {
        let rebuilt = self.zigzag(zz.start().clone(), zz.steps().to_vec())?;
        if rebuilt.objects() != zz.objects() {
            return Err(Error::InvalidZigZag {
                index: 0,
                reason: "object sequence disagrees with the steps".into(),
            });
        }
        Ok(())
    }

    /// All forward steps out of `x`, ordered by position, then generator.
    pub fn reductions_from(&self, x: &Object) -> Vec<StepRef> {
        let mut out = Vec::new();
        match (&self.presentation, x) {
            (Presentation::Graph { steps, .. }, Object::Node(n)) => {
                for (i, g) in steps.iter().enumerate() {
                    if g.source == *n {
                        out.push(StepRef::new(GeneratorId(i as u32), 0));
                    }
                }
            }
            (Presentation::Srs { rules, .. }, Object::Word(w)) => {
                for pos in 0..w.len() {
                    for (i, r) in rules.iter().enumerate() {
                        if w.occurs_at(&r.lhs, pos) {
                            out.push(StepRef::new(GeneratorId(i as u32), pos));
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// All steps whose target is `y`, ordered by position, then generator.
    pub fn expansions_into(&self, y: &Object) -> Vec<StepRef> {
        let mut out = Vec::new();
        match (&self.presentation, y) {
            (Presentation::Graph { steps, .. }, Object::Node(n)) => {
                for (i, g) in steps.iter().enumerate() {
                    if g.target == *n {
                        out.push(StepRef::new(GeneratorId(i as u32), 0));
                    }
                }
            }
            (Presentation::Srs { rules, .. }, Object::Word(w)) => {
                for pos in 0..=w.len() {
                    for (i, r) in rules.iter().enumerate() {
                        if w.occurs_at(&r.rhs, pos) {
                            out.push(StepRef::new(GeneratorId(i as u32), pos));
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Ordering key for canonical peak lookup: generator name, then
    /// position.
    pub fn step_key(&self, step: StepRef) -> (&str, usize) {
        (self.generator_name(step.generator), step.position)
    }

    pub fn cells(&self) -> &[CellGenerator] {
        &self.cells
    }

    pub fn cell(&self, name: &str) -> Option<&CellGenerator> {
        self.cells.iter().find(|c| c.name == name)
    }

    /// Declare a 2-cell generator between two parallel zig-zags.
    pub fn add_cell(&mut self, name: &str, source: ZigZag, target: ZigZag) -> Result<()> {
        if self.cell(name).is_some() {
            return Err(Error::InvalidSystem(format!("duplicate cell `{name}`")));
        }
        self.validate_zigzag(&source)?;
        self.validate_zigzag(&target)?;
        if !source.is_parallel_to(&target) {
            return Err(Error::NotParallel(format!("cell `{name}`")));
        }
        self.cells.push(CellGenerator {
            name: name.to_string(),
            source,
            target,
        });
        Ok(())
    }
}

fn index_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<HashMap<String, GeneratorId>> {
    let mut index = HashMap::new();
    for (i, name) in names.enumerate() {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || ",;@!\"".contains(c)) {
            return Err(Error::InvalidSystem(format!("invalid generator name `{name}`")));
        }
        if index.insert(name.to_string(), GeneratorId(i as u32)).is_some() {
            return Err(Error::InvalidSystem(format!("duplicate generator `{name}`")));
        }
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> RewritingSystem {
        RewritingSystem::graph(
            "chain",
            &["a", "b", "c"],
            &[("s", "a", "b"), ("t", "b", "c")],
            TerminationOrder::FiniteGraphReachability,
        )
        .unwrap()
    }

    #[test]
    fn graph_steps_apply_in_both_directions() {
        let sys = chain();
        let s = StepRef::new(sys.generator_by_name("s").unwrap(), 0);
        let a = sys.node("a").unwrap();
        let b = sys.node("b").unwrap();
        assert_eq!(sys.step_target(s, &a).unwrap(), b);
        assert_eq!(sys.step_source(s, &b).unwrap(), a);
        assert!(sys.step_target(s, &b).is_err());
    }

    #[test]
    fn zigzag_construction_rejects_bad_step() {
        let sys = chain();
        let t = StepRef::new(sys.generator_by_name("t").unwrap(), 0);
        let err = sys.zigzag(sys.node("a").unwrap(), vec![t.forward()]);
        assert!(matches!(err, Err(Error::InvalidZigZag { index: 0, .. })));
    }

    #[test]
    fn word_parsing_handles_single_and_multi_char_alphabets() {
        let sys = RewritingSystem::srs(
            "s",
            &["a", "A"],
            &[RuleSpec::new("aA", &["a", "A"], &[])],
            TerminationOrder::RuleLengthDecreasing,
        )
        .unwrap();
        assert_eq!(sys.word("aAa").unwrap().len(), 3);
        assert_eq!(sys.word("").unwrap().len(), 0);
        assert!(sys.word("ab").is_err());

        let long = RewritingSystem::srs(
            "l",
            &["x1", "x1'"],
            &[RuleSpec::new("r", &["x1", "x1'"], &[])],
            TerminationOrder::RuleLengthDecreasing,
        )
        .unwrap();
        let w = long.word("x1 x1'").unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(long.word_text(&w), "x1 x1'");
    }

    #[test]
    fn expansions_of_erasing_rule_cover_every_gap() {
        let sys = RewritingSystem::srs(
            "s",
            &["a", "A"],
            &[
                RuleSpec::new("aA", &["a", "A"], &[]),
                RuleSpec::new("Aa", &["A", "a"], &[]),
            ],
            TerminationOrder::RuleLengthDecreasing,
        )
        .unwrap();
        let w = sys.word_object("a").unwrap();
        // two rules times two gaps
        assert_eq!(sys.expansions_into(&w).len(), 4);
        for step in sys.expansions_into(&w) {
            let src = sys.step_source(step, &w).unwrap();
            assert_eq!(sys.step_target(step, &src).unwrap(), w);
        }
    }

    #[test]
    fn duplicate_generator_names_are_rejected() {
        let err = RewritingSystem::graph(
            "dup",
            &["a", "b"],
            &[("s", "a", "b"), ("s", "a", "b")],
            TerminationOrder::FiniteGraphReachability,
        );
        assert!(matches!(err, Err(Error::InvalidSystem(_))));
    }
}
