//! JSON documents for rings, surfaces and dimension tensors.
//!
//! All writers emit pretty-printed JSON with a trailing newline and a fixed
//! field order, so `serialize(parse(doc)) == doc` for any document this
//! module wrote. Unknown fields are rejected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::decomposition::{Atom, AtomKind, DecompositionGraph, LegRef};
use crate::engine::DimensionTensor;
use crate::error::{Error, Result};
use crate::fusion::{FusionRing, FusionTensor, Label};
use crate::modular_data::ModularData;
use crate::surface::{Orientation, Surface};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDocument {
    pub name: String,
    pub labels: Vec<String>,
    pub dual: Vec<String>,
    pub fusion: Vec<FusionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_matrix: Option<Vec<[f64; 2]>>,
}

/// `N_{ab}^c = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionRecord {
    pub a: String,
    pub b: String,
    pub c: String,
    pub n: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrientationSymbol {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl From<Orientation> for OrientationSymbol {
    fn from(o: Orientation) -> Self {
        match o {
            Orientation::Induced => OrientationSymbol::Plus,
            Orientation::Reversed => OrientationSymbol::Minus,
        }
    }
}

impl From<OrientationSymbol> for Orientation {
    fn from(o: OrientationSymbol) -> Self {
        match o {
            OrientationSymbol::Plus => Orientation::Induced,
            OrientationSymbol::Minus => Orientation::Reversed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub genus: u32,
    pub boundary: Vec<BoundaryDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDocument {
    pub orientation: OrientationSymbol,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub atoms: Vec<AtomDocument>,
    /// Pairs of `"atom.leg"` references.
    pub internal_edges: Vec<[String; 2]>,
    pub external: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDocument {
    pub kind: AtomKindSymbol,
    pub legs: Vec<LegDocument>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKindSymbol {
    Pants,
    Cylinder,
    Disk,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegDocument {
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub genus: u32,
    pub boundary: Vec<OrientationSymbol>,
    pub labels: Vec<String>,
    pub entries: Vec<u64>,
}

/// A ring as read from a document: plain fusion rules, or fusion rules with
/// an S-matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum RingData {
    Fusion(FusionRing),
    Modular(ModularData),
}

impl RingData {
    pub fn ring(&self) -> &FusionRing {
        match self {
            RingData::Fusion(r) => r,
            RingData::Modular(m) => m.ring(),
        }
    }

    pub fn modular(&self) -> Option<&ModularData> {
        match self {
            RingData::Fusion(_) => None,
            RingData::Modular(m) => Some(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingFile {
    pub name: String,
    pub data: RingData,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceFile {
    pub surface: Surface,
    pub decomposition: Option<DecompositionGraph>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        message: e.to_string(),
        position: Some((e.line(), e.column())),
    }
}

fn shape_error(message: impl Into<String>) -> Error {
    Error::Parse {
        message: message.into(),
        position: None,
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents always serialize");
    out.push('\n');
    out
}

pub fn ring_document(name: &str, data: &RingData) -> RingDocument {
    let ring = data.ring();
    let names = ring.names();
    RingDocument {
        name: name.to_string(),
        labels: names.to_vec(),
        dual: ring.dual_map().iter().map(|&d| names[d].clone()).collect(),
        fusion: ring
            .tensor()
            .nonzero()
            .map(|(a, b, c, n)| FusionRecord {
                a: names[a].clone(),
                b: names[b].clone(),
                c: names[c].clone(),
                n,
            })
            .collect(),
        s_matrix: data
            .modular()
            .map(|m| m.s_entries().iter().map(|z| [z.re, z.im]).collect()),
    }
}

pub fn serialize_ring(name: &str, data: &RingData) -> String {
    to_pretty(&ring_document(name, data))
}

pub fn ring_from_document(doc: RingDocument) -> Result<RingFile> {
    let rank = doc.labels.len();
    let lookup = |name: &str| -> Result<usize> {
        doc.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Validation(format!("unknown label {name:?}")))
    };
    if doc.dual.len() != rank {
        return Err(Error::Validation(format!(
            "dual list has {} entries for {rank} labels",
            doc.dual.len()
        )));
    }
    let dual: Vec<usize> = doc.dual.iter().map(|n| lookup(n)).collect::<Result<_>>()?;
    let mut seen = vec![false; rank];
    for &d in &dual {
        if std::mem::replace(&mut seen[d], true) {
            return Err(Error::Validation("dual list is not a permutation of the labels".into()));
        }
    }
    let mut tensor = FusionTensor::zeros(rank);
    let mut given = vec![false; rank * rank * rank];
    for rec in &doc.fusion {
        let (a, b, c) = (lookup(&rec.a)?, lookup(&rec.b)?, lookup(&rec.c)?);
        if std::mem::replace(&mut given[(a * rank + b) * rank + c], true) {
            return Err(Error::Validation(format!(
                "fusion entry ({}, {}, {}) given twice",
                rec.a, rec.b, rec.c
            )));
        }
        tensor.set(a, b, c, rec.n);
    }
    let ring = FusionRing::from_parts(doc.labels, dual, tensor)?.validated()?;
    let data = match doc.s_matrix {
        None => RingData::Fusion(ring),
        Some(s) => {
            if s.len() != rank * rank {
                return Err(shape_error(format!(
                    "s_matrix has {} entries, expected {}",
                    s.len(),
                    rank * rank
                )));
            }
            let s = s.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
            RingData::Modular(ModularData::new(ring, s)?)
        }
    };
    Ok(RingFile { name: doc.name, data })
}

pub fn parse_ring(bytes: &[u8]) -> Result<RingFile> {
    ring_from_document(serde_json::from_slice(bytes).map_err(json_error)?)
}

fn leg_string(leg: LegRef) -> String {
    format!("{}.{}", leg.atom, leg.leg)
}

fn parse_leg(s: &str) -> Result<LegRef> {
    let bad = || shape_error(format!("leg reference {s:?} is not of the form atom.leg"));
    let (a, l) = s.split_once('.').ok_or_else(bad)?;
    Ok(LegRef::new(
        a.parse().map_err(|_| bad())?,
        l.parse().map_err(|_| bad())?,
    ))
}

pub fn decomposition_document(d: &DecompositionGraph) -> DecompositionDocument {
    DecompositionDocument {
        atoms: d
            .atoms
            .iter()
            .map(|a| AtomDocument {
                kind: match a.kind {
                    AtomKind::Pants => AtomKindSymbol::Pants,
                    AtomKind::Cylinder => AtomKindSymbol::Cylinder,
                    AtomKind::Disk => AtomKindSymbol::Disk,
                },
                legs: a.legs.iter().map(|o| LegDocument { sign: o.sign() }).collect(),
            })
            .collect(),
        internal_edges: d
            .internal_edges
            .iter()
            .map(|&(x, y)| [leg_string(x), leg_string(y)])
            .collect(),
        external: d.external.iter().map(|&l| leg_string(l)).collect(),
    }
}

pub fn decomposition_from_document(doc: &DecompositionDocument) -> Result<DecompositionGraph> {
    let atoms = doc
        .atoms
        .iter()
        .map(|a| {
            let kind = match a.kind {
                AtomKindSymbol::Pants => AtomKind::Pants,
                AtomKindSymbol::Cylinder => AtomKind::Cylinder,
                AtomKindSymbol::Disk => AtomKind::Disk,
            };
            let legs = a
                .legs
                .iter()
                .map(|l| {
                    Orientation::from_sign(l.sign).ok_or_else(|| shape_error(format!("leg sign {} is not ±1", l.sign)))
                })
                .collect::<Result<_>>()?;
            Ok(Atom { kind, legs })
        })
        .collect::<Result<_>>()?;
    let internal_edges = doc
        .internal_edges
        .iter()
        .map(|[x, y]| Ok((parse_leg(x)?, parse_leg(y)?)))
        .collect::<Result<_>>()?;
    let external = doc.external.iter().map(|s| parse_leg(s)).collect::<Result<_>>()?;
    Ok(DecompositionGraph::new(atoms, internal_edges, external))
}

/// Document for a connected surface; boundary labels are written by name and
/// need `ring`.
pub fn surface_document(
    surface: &Surface,
    decomposition: Option<&DecompositionGraph>,
    ring: Option<&FusionRing>,
) -> Result<SurfaceDocument> {
    if !surface.is_connected() {
        return Err(Error::Validation("only connected surfaces have a document form".into()));
    }
    let boundary = surface
        .boundary()
        .iter()
        .map(|c| {
            let label = match (c.label, ring) {
                (None, _) => None,
                (Some(l), Some(r)) => Some(r.check(l).map(|l| r.name(l).to_string())?),
                (Some(_), None) => {
                    return Err(Error::Validation("labelled boundary needs a ring to be written".into()))
                }
            };
            Ok(BoundaryDocument {
                orientation: c.orientation.into(),
                label,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SurfaceDocument {
        genus: surface.genus(),
        boundary,
        decomposition: decomposition.map(decomposition_document),
    })
}

pub fn serialize_surface(
    surface: &Surface,
    decomposition: Option<&DecompositionGraph>,
    ring: Option<&FusionRing>,
) -> Result<String> {
    Ok(to_pretty(&surface_document(surface, decomposition, ring)?))
}

pub fn surface_from_document(doc: &SurfaceDocument, ring: Option<&FusionRing>) -> Result<SurfaceFile> {
    let labels = doc
        .boundary
        .iter()
        .map(|b| match (&b.label, ring) {
            (None, _) => Ok(None),
            (Some(name), Some(r)) => r.label(name).map(Some),
            (Some(name), None) => Err(Error::Validation(format!("label {name:?} given without a ring"))),
        })
        .collect::<Result<Vec<Option<Label>>>>()?;
    let surface = Surface::connected(doc.genus, doc.boundary.iter().map(|b| Orientation::from(b.orientation)))
        .with_labels(&labels)?;
    let decomposition = match &doc.decomposition {
        None => None,
        Some(d) => {
            let graph = decomposition_from_document(d)?;
            let report = graph.validate(&surface);
            if !report.is_empty() {
                return Err(Error::InvalidDecomposition(report));
            }
            Some(graph)
        }
    };
    Ok(SurfaceFile { surface, decomposition })
}

pub fn parse_surface(bytes: &[u8], ring: Option<&FusionRing>) -> Result<SurfaceFile> {
    let doc: SurfaceDocument = serde_json::from_slice(bytes).map_err(json_error)?;
    surface_from_document(&doc, ring)
}

pub fn tensor_document(t: &DimensionTensor, ring: &FusionRing) -> TensorDocument {
    TensorDocument {
        genus: t.surface.genus(),
        boundary: t.surface.boundary().iter().map(|c| c.orientation.into()).collect(),
        labels: ring.names().to_vec(),
        entries: t.entries.clone(),
    }
}

pub fn serialize_tensor(t: &DimensionTensor, ring: &FusionRing) -> String {
    to_pretty(&tensor_document(t, ring))
}

/// Pretty JSON with trailing newline, as used by every writer here.
pub fn to_json<T: Serialize>(value: &T) -> String {
    to_pretty(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, standard_names};
    use crate::random::random_decomposition;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ising_file() -> String {
        serialize_ring("ising", &RingData::Modular(catalog("ising").unwrap()))
    }

    #[test]
    fn catalog_rings_round_trip() {
        for name in standard_names() {
            let data = RingData::Modular(catalog(&name).unwrap());
            let text = serialize_ring(&name, &data);
            let parsed = parse_ring(text.as_bytes()).unwrap();
            assert_eq!(parsed.data, data, "{name}");
            assert_eq!(serialize_ring(&parsed.name, &parsed.data), text);
        }
    }

    #[test]
    fn plain_ring_round_trip() {
        let data = RingData::Fusion(catalog("fibonacci").unwrap().ring().clone());
        let text = serialize_ring("fib", &data);
        assert!(!text.contains("s_matrix"));
        assert_eq!(parse_ring(text.as_bytes()).unwrap().data, data);
    }

    #[test]
    fn non_permutation_dual_is_a_validation_error() {
        let text = ising_file().replacen(
            "\"dual\": [\n    \"1\",\n    \"sigma\"",
            "\"dual\": [\n    \"1\",\n    \"1\"",
            1,
        );
        assert_ne!(text, ising_file());
        assert!(matches!(parse_ring(text.as_bytes()), Err(Error::Validation(_))));
    }

    #[test]
    fn wrong_s_shape_is_a_parse_error() {
        let mut doc = ring_document("ising", &RingData::Modular(catalog("ising").unwrap()));
        doc.s_matrix.as_mut().unwrap().pop();
        let text = to_json(&doc);
        assert!(matches!(parse_ring(text.as_bytes()), Err(Error::Parse { .. })));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_ring(b"{\n  \"name\": \"x\",\n  oops").unwrap_err();
        match err {
            Error::Parse {
                position: Some((line, _)),
                ..
            } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = ising_file().replacen("{", "{\n  \"extra\": 1,", 1);
        assert!(matches!(parse_ring(text.as_bytes()), Err(Error::Parse { .. })));
        let s = r#"{"genus": 0, "boundary": [], "colour": "red"}"#;
        assert!(matches!(parse_surface(s.as_bytes(), None), Err(Error::Parse { .. })));
    }

    #[test]
    fn invalid_fusion_rules_are_a_validation_error() {
        let mut doc = ring_document("ising", &RingData::Fusion(catalog("ising").unwrap().ring().clone()));
        doc.fusion
            .retain(|r| !(r.a == "sigma" && r.b == "sigma" && r.c == "psi"));
        assert!(matches!(ring_from_document(doc), Err(Error::InvalidRing(_))));
    }

    #[test]
    fn canonical_surface_round_trips() {
        let s = Surface::standard(0, 3);
        let d = DecompositionGraph::canonical(&s);
        let text = serialize_surface(&s, Some(&d), None).unwrap();
        let parsed = parse_surface(text.as_bytes(), None).unwrap();
        assert_eq!(
            parsed,
            SurfaceFile {
                surface: s.clone(),
                decomposition: Some(d.clone())
            }
        );
        assert_eq!(
            serialize_surface(&parsed.surface, parsed.decomposition.as_ref(), None).unwrap(),
            text
        );
    }

    #[test]
    fn labelled_surface_round_trips() {
        let ring = catalog("ising").unwrap().ring().clone();
        let s = Surface::standard(1, 2).with_labels(&[Some(Label(1)), None]).unwrap();
        let text = serialize_surface(&s, None, Some(&ring)).unwrap();
        assert!(text.contains("\"sigma\""));
        let parsed = parse_surface(text.as_bytes(), Some(&ring)).unwrap();
        assert_eq!(parsed.surface, s);
        assert!(parsed.decomposition.is_none());
        assert!(parse_surface(text.as_bytes(), None).is_err());
        assert!(serialize_surface(&s, None, None).is_err());
    }

    #[test]
    fn edge_between_two_plus_legs_is_rejected() {
        let doc = r#"{
            "genus": 0,
            "boundary": [{"orientation": "+"}, {"orientation": "+"}, {"orientation": "+"}, {"orientation": "+"}],
            "decomposition": {
                "atoms": [
                    {"kind": "pants", "legs": [{"sign": 1}, {"sign": 1}, {"sign": 1}]},
                    {"kind": "pants", "legs": [{"sign": 1}, {"sign": 1}, {"sign": 1}]}
                ],
                "internal_edges": [["0.2", "1.0"]],
                "external": ["0.0", "0.1", "1.1", "1.2"]
            }
        }"#;
        match parse_surface(doc.as_bytes(), None) {
            Err(Error::InvalidDecomposition(report)) => {
                assert!(report.contains(&crate::decomposition::DecompositionViolation::EdgeSignsNotOpposite { edge: 0 }))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_leg_references() {
        let doc = r#"{"genus": 0, "boundary": [{"orientation": "+"}],
            "decomposition": {"atoms": [{"kind": "disk", "legs": [{"sign": 1}]}], "internal_edges": [], "external": ["0-0"]}}"#;
        assert!(matches!(parse_surface(doc.as_bytes(), None), Err(Error::Parse { .. })));
        let doc = doc.replace("0-0", "0.0").replace("\"sign\": 1", "\"sign\": 2");
        assert!(matches!(parse_surface(doc.as_bytes(), None), Err(Error::Parse { .. })));
    }

    #[test]
    fn disconnected_surfaces_have_no_document() {
        let s = Surface::standard(0, 1).disjoint_union(&Surface::standard(0, 1));
        assert!(serialize_surface(&s, None, None).is_err());
    }

    proptest! {
        #[test]
        fn random_connected_decompositions_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_decomposition(&mut rng, 6, 6);
            let s = d.infer_surface().unwrap();
            prop_assume!(s.is_connected());
            let text = serialize_surface(&s, Some(&d), None).unwrap();
            let parsed = parse_surface(text.as_bytes(), None).unwrap();
            prop_assert_eq!(parsed.decomposition.as_ref(), Some(&d));
            prop_assert_eq!(&parsed.surface, &s);
            prop_assert_eq!(serialize_surface(&parsed.surface, parsed.decomposition.as_ref(), None).unwrap(), text);
        }

        #[test]
        fn perturbed_s_matrices_round_trip_exactly(seed in any::<u64>()) {
            // arbitrary doubles survive the text encoding bit for bit
            let data = catalog("fibonacci").unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let jitter: f64 = rand::Rng::gen_range(&mut rng, -1e-12..1e-12);
            let mut s = data.s_entries().to_vec();
            s[0] += Complex64::new(jitter, 0.0);
            let data = RingData::Modular(ModularData::new(data.ring().clone(), s).unwrap());
            let text = serialize_ring("f", &data);
            let back = parse_ring(text.as_bytes()).unwrap();
            prop_assert_eq!(&back.data, &data);
        }
    }
}
