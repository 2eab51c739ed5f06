//! Report documents. Every computed number is written as a string (`"p"`
//! or `"p/q"`) so that values stay exact; field order is fixed by the
//! struct definitions.

use num_bigint::BigInt;
use serde::Serialize;
use surgeon_core::d3::{d3_closed_form, d3_pm1, euler_class};
use surgeon_core::frontlang::{classical_invariants, FrontDocument, Role};
use surgeon_core::invariants::{report, InvariantError, SeifertDependence, SurgeredValue};
use surgeon_core::surgery::{build_q, expand_to_pm1, homology, signature_of_q};
use surgeon_core::{CompanionKnot, KnotKind, Rational, SurgeryDiagram, TransverseSign};

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelShiftOut {
    pub generator: Vec<String>,
    pub shift: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum DependenceOut {
    Unique(&'static str),
    Kernel(Vec<KernelShiftOut>),
}

impl From<&SeifertDependence> for DependenceOut {
    fn from(d: &SeifertDependence) -> Self {
        match d {
            SeifertDependence::Unique => DependenceOut::Unique("unique"),
            SeifertDependence::Kernel(shifts) => DependenceOut::Kernel(
                shifts
                    .iter()
                    .map(|s| KernelShiftOut { generator: ints(&s.generator), shift: s.shift.to_string() })
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub knot: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<&'static str>,
    pub homology: String,
    pub rationally_nullhomologous: bool,
    pub order: Option<String>,
    pub solution: Option<Vec<String>>,
    pub kernel_basis: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tb: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rot: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sl: Option<String>,
    pub seifert_dependence: Option<DependenceOut>,
}

pub fn invariants_report(d: &SurgeryDiagram, knot: &CompanionKnot) -> Result<InvariantsReport, InvariantError> {
    let r = report(d, knot)?;
    let (kind, sign) = match knot.kind {
        KnotKind::Legendrian { .. } => ("legendrian", None),
        KnotKind::Transverse { sign: TransverseSign::Positive, .. } => ("transverse", Some("positive")),
        KnotKind::Transverse { sign: TransverseSign::Negative, .. } => ("transverse", Some("negative")),
    };
    let dependent: Option<&SurgeredValue> = r.rot.as_ref().or(r.sl.as_ref());
    Ok(InvariantsReport {
        knot: r.knot.clone(),
        kind,
        sign,
        homology: homology(&build_q(d)).to_string(),
        rationally_nullhomologous: r.solution.is_some(),
        order: r.order().map(BigInt::to_string),
        solution: r.solution.as_ref().map(|s| ints(&s.particular)),
        kernel_basis: r.solution.as_ref().map_or_else(Vec::new, |s| s.kernel_basis.iter().map(|v| ints(v)).collect()),
        tb: r.tb.as_ref().map(Rational::to_string),
        rot: r.rot.as_ref().map(|v| v.value.to_string()),
        sl: r.sl.as_ref().map(|v| v.value.to_string()),
        seifert_dependence: dependent.map(|v| (&v.dependence).into()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D3Report {
    pub components: usize,
    pub expanded_components: usize,
    pub homology: String,
    pub signature: i64,
    pub euler_class: Vec<String>,
    pub torsion: bool,
    pub b: Option<Vec<String>>,
    pub d3: String,
    pub d3_expansion: String,
}

pub fn d3_report(d: &SurgeryDiagram) -> D3Report {
    let e = euler_class(d);
    let expanded = expand_to_pm1(d);
    let via_expansion = d3_pm1(&expanded).expect("expansions have (±1) coefficients");
    D3Report {
        components: d.len(),
        expanded_components: expanded.len(),
        homology: homology(&build_q(d)).to_string(),
        signature: signature_of_q(d),
        euler_class: ints(&e.coefficients),
        torsion: e.torsion,
        b: e.b.as_deref().map(rats),
        d3: d3_closed_form(d).to_string(),
        d3_expansion: via_expansion.to_string(),
    }
}

impl D3Report {
    pub fn agrees(&self) -> bool {
        self.d3 == self.d3_expansion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontComponentOut {
    pub name: Option<String>,
    pub role: Option<&'static str>,
    pub writhe: i64,
    pub cusps: usize,
    pub tb: i64,
    pub rot: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontReport {
    pub components: Vec<FrontComponentOut>,
    pub linking: Vec<Vec<i64>>,
}

pub fn front_report(doc: &FrontDocument) -> FrontReport {
    let inv = classical_invariants(doc);
    let components = inv
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let h = doc.headers().get(i);
            FrontComponentOut {
                name: h.map(|h| h.name.clone()),
                role: h.map(|h| match h.role {
                    Role::Surgery { .. } => "surgery",
                    Role::Legendrian => "legendrian",
                    Role::Transverse(_) => "transverse",
                }),
                writhe: c.writhe,
                cusps: c.cusps,
                tb: c.tb,
                rot: c.rot,
            }
        })
        .collect();
    FrontReport { components, linking: inv.linking }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}
