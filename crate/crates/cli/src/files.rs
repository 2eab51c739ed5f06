//! JSON diagram files.
//!
//! ```json
//! {
//!   "components": [{"name": "L1", "tb": -1, "rot": 0, "coeff": "+1/2"}],
//!   "linking": [[0]],
//!   "knots": [{"name": "K", "kind": "legendrian", "tb": -1, "rot": 0, "lk": [1]}]
//! }
//! ```

use serde::{Deserialize, Serialize};
use surgeon_core::{CompanionKnot, KnotKind, LegendrianComponent, SurgeryDiagram, TransverseSign};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub components: Vec<ComponentEntry>,
    #[serde(default)]
    pub linking: Vec<Vec<i64>>,
    #[serde(default)]
    pub knots: Vec<KnotEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub name: String,
    pub tb: i64,
    pub rot: i64,
    pub coeff: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindTag {
    Legendrian,
    Transverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignTag {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotEntry {
    pub name: String,
    pub kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tb: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rot: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sl: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<SignTag>,
    pub lk: Vec<i64>,
}

/// A problem in a diagram file, with the 1-based position it refers to
/// when one is known.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}{message}", match .position { Some((l, c)) => format!("{l}:{c}: "), None => String::new() })]
pub struct FileError {
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl FileError {
    fn at(position: Option<(usize, usize)>, message: impl Into<String>) -> Self {
        FileError { position, message: message.into() }
    }
}

/// Position of the `nth` (0-based) occurrence of the JSON key `key`.
pub fn locate_key(text: &str, key: &str, nth: usize) -> Option<(usize, usize)> {
    let needle = format!("\"{key}\"");
    let offset = text.match_indices(&needle).nth(nth)?.0;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Some((line, column))
}

impl DiagramFile {
    pub fn parse(text: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|e| FileError::at(Some((e.line(), e.column())), e.to_string()))
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("diagram files always serialize");
        s.push('\n');
        s
    }

    pub fn from_diagram(d: &SurgeryDiagram) -> Self {
        let components = d
            .components
            .iter()
            .map(|c| ComponentEntry { name: c.name.clone(), tb: c.tb, rot: c.rot, coeff: c.coeff.to_string() })
            .collect();
        let knots = d
            .knots
            .iter()
            .map(|k| {
                let mut e = KnotEntry {
                    name: k.name.clone(),
                    kind: KindTag::Legendrian,
                    tb: None,
                    rot: None,
                    sl: None,
                    sign: None,
                    lk: k.lk.clone(),
                };
                match k.kind {
                    KnotKind::Legendrian { tb, rot } => {
                        e.tb = Some(tb);
                        e.rot = Some(rot);
                    }
                    KnotKind::Transverse { sl, sign } => {
                        e.kind = KindTag::Transverse;
                        e.sl = Some(sl);
                        e.sign = Some(match sign {
                            TransverseSign::Positive => SignTag::Positive,
                            TransverseSign::Negative => SignTag::Negative,
                        });
                    }
                }
                e
            })
            .collect();
        DiagramFile { components, linking: d.linking.clone(), knots }
    }

    /// Converts to a diagram. `source` is the original text, used only to
    /// anchor messages.
    pub fn to_diagram(&self, source: Option<&str>) -> Result<SurgeryDiagram, FileError> {
        let locate = |key: &str, nth: usize| source.and_then(|t| locate_key(t, key, nth));
        let mut components = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let coeff = c.coeff.parse().map_err(|e| {
                FileError::at(locate("coeff", i), format!("component {:?}: coefficient {:?}: {e}", c.name, c.coeff))
            })?;
            components.push(LegendrianComponent::new(c.name.clone(), c.tb, c.rot, coeff));
        }
        let mut knots = Vec::with_capacity(self.knots.len());
        for (i, k) in self.knots.iter().enumerate() {
            let at = locate("kind", i);
            let knot = match k.kind {
                KindTag::Legendrian => {
                    if k.sl.is_some() || k.sign.is_some() {
                        return Err(FileError::at(at, format!("knot {:?}: legendrian knots take tb and rot, not sl or sign", k.name)));
                    }
                    let (Some(tb), Some(rot)) = (k.tb, k.rot) else {
                        return Err(FileError::at(at, format!("knot {:?}: legendrian knots need tb and rot", k.name)));
                    };
                    CompanionKnot::legendrian(k.name.clone(), tb, rot, k.lk.clone())
                }
                KindTag::Transverse => {
                    if k.tb.is_some() || k.rot.is_some() {
                        return Err(FileError::at(at, format!("knot {:?}: transverse knots take sl and sign, not tb or rot", k.name)));
                    }
                    let (Some(sl), Some(sign)) = (k.sl, k.sign) else {
                        return Err(FileError::at(at, format!("knot {:?}: transverse knots need sl and sign", k.name)));
                    };
                    let sign = match sign {
                        SignTag::Positive => TransverseSign::Positive,
                        SignTag::Negative => TransverseSign::Negative,
                    };
                    CompanionKnot::transverse(k.name.clone(), sl, sign, k.lk.clone())
                }
            };
            knots.push(knot);
        }
        let linking = if self.linking.is_empty() && self.components.len() == 1 {
            vec![vec![0]]
        } else {
            self.linking.clone()
        };
        Ok(SurgeryDiagram::new(components, linking, knots))
    }
}
