//! Reports for the four structural properties every accessibility relation
//! must have: seriality, functionality, conditional reflexivity and
//! epistemic image.

use std::fmt;

use crate::syntax::Modality;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Every state has a successor.
    Seriality,
    /// No state has two successors.
    Functionality,
    /// If `a knows M` holds at `s`, then `s` is its own successor.
    ConditionalReflexivity,
    /// `a knows M` holds at every successor.
    EpistemicImage,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Seriality,
        Property::Functionality,
        Property::ConditionalReflexivity,
        Property::EpistemicImage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Seriality => "seriality",
            Property::Functionality => "functionality",
            Property::ConditionalReflexivity => "conditional reflexivity",
            Property::EpistemicImage => "epistemic image",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failing (modality, state) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub property: Property,
    pub modality: Modality,
    pub state: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterfaceReport {
    /// Number of (modality, state) pairs examined.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl InterfaceReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, property: Property) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.property == property)
    }

    pub fn holds(&self, property: Property) -> bool {
        self.violations_of(property).next().is_none()
    }

    pub(crate) fn push(&mut self, property: Property, modality: &Modality, state: impl Into<String>, detail: String) {
        self.violations.push(Violation { property, modality: modality.clone(), state: state.into(), detail });
    }
}

impl fmt::Display for InterfaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in Property::ALL {
            let bad: Vec<&Violation> = self.violations_of(p).collect();
            if bad.is_empty() {
                writeln!(f, "{p}: PASS")?;
            } else {
                writeln!(f, "{p}: FAIL ({} witness{})", bad.len(), if bad.len() == 1 { "" } else { "es" })?;
                for v in bad {
                    writeln!(f, "  {} at {}: {}", v.modality, v.state, v.detail)?;
                }
            }
        }
        write!(f, "checked {} (modality, state) pairs", self.checked)
    }
}
