//! DLE signatures, order-types and the classical target signature.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A single order-type entry: monotone (`1`) or antitone (`d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "d")]
    Dual,
}

impl Polarity {
    pub fn opposite(self) -> Polarity {
        match self {
            Polarity::One => Polarity::Dual,
            Polarity::Dual => Polarity::One,
        }
    }

    pub fn is_dual(self) -> bool {
        self == Polarity::Dual
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::One => "1",
            Polarity::Dual => "d",
        }
    }

    pub fn parse(s: &str) -> Option<Polarity> {
        match s {
            "1" => Some(Polarity::One),
            "d" | "∂" | "D" => Some(Polarity::Dual),
            _ => None,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderType(pub Vec<Polarity>);

impl OrderType {
    pub fn uniform(len: usize, p: Polarity) -> OrderType {
        OrderType(vec![p; len])
    }

    pub fn opposite(&self) -> OrderType {
        OrderType(self.0.iter().map(|p| p.opposite()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Polarity {
        self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = Polarity> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dialect {
    Dle,
    Bae,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connective {
    pub name: String,
    pub family: Family,
    pub arity: usize,
    pub coord_types: OrderType,
    /// For target-signature companions, the connective whose frame relation
    /// this symbol is interpreted by.
    pub companion_of: Option<String>,
}

pub const NEG: &str = "neg";
pub const DIA_GEQ: &str = "diage";
pub const BOX_LEQ: &str = "boxle";
pub const IMP: &str = "->";
pub const COIMP: &str = ">-";

impl Connective {
    pub fn new(name: &str, family: Family, coord_types: &[Polarity]) -> Connective {
        Connective {
            name: name.to_string(),
            family,
            arity: coord_types.len(),
            coord_types: OrderType(coord_types.to_vec()),
            companion_of: None,
        }
    }

    /// Relation order-type: `1` followed by the opposite of each coordinate type.
    pub fn relation_type(&self) -> OrderType {
        let mut v = vec![Polarity::One];
        v.extend(self.coord_types.iter().map(Polarity::opposite));
        OrderType(v)
    }

    /// Built-in intuitionistic implication / co-implication, whose frame
    /// relation is derived from the order rather than given separately.
    pub fn is_order_derived(&self) -> bool {
        let dual_one = self.coord_types.0 == [Polarity::Dual, Polarity::One];
        self.companion_of.is_none()
            && dual_one
            && ((self.name == IMP && self.family == Family::G)
                || (self.name == COIMP && self.family == Family::F))
    }

    /// Name of the frame relation interpreting this connective.
    pub fn relation_name(&self) -> &str {
        self.companion_of.as_deref().unwrap_or(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameRelationType {
    pub connective: String,
    pub family: Family,
    pub rel_arity: usize,
    pub rel_order_type: OrderType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub name: String,
    pub connectives: Vec<Connective>,
    pub dialect: Dialect,
}

#[derive(Serialize, Deserialize)]
struct RawConnective {
    name: String,
    arity: usize,
    ot: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    companion_of: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    name: String,
    #[serde(rename = "F", default)]
    f: Vec<RawConnective>,
    #[serde(rename = "G", default)]
    g: Vec<RawConnective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dialect: Option<String>,
}

pub const BUILTINS: [&str; 7] = [
    "intuitionistic",
    "co-intuitionistic",
    "bi-intuitionistic",
    "fischer-servi",
    "wolter-bimodal",
    "positive-modal",
    "dml",
];

impl Signature {
    pub fn new(name: &str, connectives: Vec<Connective>) -> Result<Signature, Error> {
        let sig = Signature {
            name: name.to_string(),
            connectives,
            dialect: Dialect::Dle,
        };
        sig.validate()?;
        Ok(sig)
    }

    pub fn empty(name: &str) -> Signature {
        Signature {
            name: name.to_string(),
            connectives: vec![],
            dialect: Dialect::Dle,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        let mut seen = BTreeSet::new();
        for c in &self.connectives {
            if !seen.insert(c.name.as_str()) {
                return Err(Error::DuplicateName(c.name.clone()));
            }
            if c.coord_types.len() != c.arity {
                return Err(Error::ArityMismatch {
                    name: c.name.clone(),
                    arity: c.arity,
                    found: c.coord_types.len(),
                });
            }
            if is_reserved(&c.name) && self.dialect == Dialect::Dle {
                return Err(Error::Signature(format!(
                    "`{}` is a reserved symbol",
                    c.name
                )));
            }
        }
        if self.dialect == Dialect::Bae {
            for (name, fam) in [(DIA_GEQ, Family::F), (BOX_LEQ, Family::G)] {
                match self.get(name) {
                    Some(c) if c.family == fam && c.coord_types.0 == [Polarity::One] => {}
                    _ => {
                        return Err(Error::Signature(format!(
                            "BAE signature lacks distinguished `{name}`"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Connective> {
        self.connectives.iter().find(|c| c.name == name)
    }

    pub fn family(&self, fam: Family) -> impl Iterator<Item = &Connective> {
        self.connectives.iter().filter(move |c| c.family == fam)
    }

    pub fn is_bae(&self) -> bool {
        self.dialect == Dialect::Bae
    }

    pub fn builtin(name: &str) -> Result<Signature, Error> {
        use Family::{F, G};
        use Polarity::{Dual as D, One};
        let imp = || Connective::new(IMP, G, &[D, One]);
        let coimp = || Connective::new(COIMP, F, &[D, One]);
        let dia = || Connective::new("dia", F, &[One]);
        let bx = || Connective::new("box", G, &[One]);
        let conns = match name {
            "intuitionistic" => vec![imp()],
            "co-intuitionistic" => vec![coimp()],
            "bi-intuitionistic" => vec![coimp(), imp()],
            "fischer-servi" => vec![dia(), imp(), bx()],
            "wolter-bimodal" => vec![coimp(), dia(), imp(), bx()],
            "positive-modal" => vec![dia(), bx()],
            "dml" => vec![
                dia(),
                Connective::new("lhd", F, &[D]),
                bx(),
                Connective::new("rhd", G, &[D]),
            ],
            _ => return Err(Error::UnknownSignature(name.to_string())),
        };
        Signature::new(name, conns)
    }

    pub fn load(text: &str) -> Result<Signature, Error> {
        let raw: RawSignature = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            line: e.line(),
            msg: e.to_string(),
        })?;
        let mut conns = Vec::new();
        for (fam, list) in [(Family::F, raw.f), (Family::G, raw.g)] {
            for rc in list {
                let mut ot = Vec::new();
                for s in &rc.ot {
                    ot.push(Polarity::parse(s).ok_or_else(|| {
                        Error::Signature(format!("bad order-type entry `{s}` in `{}`", rc.name))
                    })?);
                }
                if ot.len() != rc.arity {
                    return Err(Error::ArityMismatch {
                        name: rc.name,
                        arity: rc.arity,
                        found: ot.len(),
                    });
                }
                conns.push(Connective {
                    name: rc.name,
                    family: fam,
                    arity: rc.arity,
                    coord_types: OrderType(ot),
                    companion_of: rc.companion_of,
                });
            }
        }
        let dialect = match raw.dialect.as_deref() {
            None | Some("DLE") => Dialect::Dle,
            Some("BAE") => Dialect::Bae,
            Some(other) => return Err(Error::Signature(format!("unknown dialect `{other}`"))),
        };
        let sig = Signature {
            name: raw.name,
            connectives: conns,
            dialect,
        };
        sig.validate()?;
        Ok(sig)
    }

    /// Resolve a builtin name or a path to a JSON signature file.
    pub fn resolve(spec: &str) -> Result<Signature, Error> {
        if BUILTINS.contains(&spec) {
            return Signature::builtin(spec);
        }
        if let Some(rest) = spec.strip_prefix("target:") {
            return Signature::resolve(rest)?.target();
        }
        match std::fs::read_to_string(spec) {
            Ok(text) => Signature::load(&text),
            Err(_) => Err(Error::UnknownSignature(spec.to_string())),
        }
    }

    pub fn to_json(&self) -> String {
        let raw_of = |fam| {
            self.family(fam)
                .map(|c| RawConnective {
                    name: c.name.clone(),
                    arity: c.arity,
                    ot: c.coord_types.iter().map(|p| p.symbol().to_string()).collect(),
                    companion_of: c.companion_of.clone(),
                })
                .collect()
        };
        let raw = RawSignature {
            name: self.name.clone(),
            f: raw_of(Family::F),
            g: raw_of(Family::G),
            dialect: self.is_bae().then(|| "BAE".to_string()),
        };
        serde_json::to_string(&raw).expect("signature serializes")
    }

    /// The classical poly-modal signature: negation, the S4 pair and an
    /// all-monotone companion for every connective.
    pub fn target(&self) -> Result<Signature, Error> {
        if self.is_bae() {
            return Err(Error::AlreadyBae(self.name.clone()));
        }
        let mut conns = vec![
            Connective::new(DIA_GEQ, Family::F, &[Polarity::One]),
            Connective::new(BOX_LEQ, Family::G, &[Polarity::One]),
        ];
        let companions = self.family(Family::F).chain(self.family(Family::G));
        for c in companions {
            conns.push(Connective {
                name: companion_name(&c.name),
                family: c.family,
                arity: c.arity,
                coord_types: OrderType::uniform(c.arity, Polarity::One),
                companion_of: Some(c.name.clone()),
            });
        }
        // serialization lists F before G
        conns.sort_by_key(|c| c.family);
        let sig = Signature {
            name: format!("{}-target", self.name),
            connectives: conns,
            dialect: Dialect::Bae,
        };
        sig.validate()?;
        Ok(sig)
    }

    pub fn frame_relation_types(&self) -> Vec<FrameRelationType> {
        self.connectives
            .iter()
            .map(|c| FrameRelationType {
                connective: c.name.clone(),
                family: c.family,
                rel_arity: c.arity + 1,
                rel_order_type: c.relation_type(),
            })
            .collect()
    }

    /// The DLE signature whose frames interpret this one. A target signature
    /// maps back to the signature it was built from when that can be found
    /// by name; otherwise companions are read back as monotone connectives.
    pub fn source(&self) -> Result<Signature, Error> {
        if !self.is_bae() {
            return Ok(self.clone());
        }
        if let Some(base) = self.name.strip_suffix("-target") {
            if let Ok(src) = Signature::resolve(base) {
                if src.target().is_ok_and(|t| t.connectives == self.connectives) {
                    return Ok(src);
                }
            }
        }
        let conns = self
            .connectives
            .iter()
            .filter_map(|c| {
                let orig = c.companion_of.as_ref()?;
                Some(match orig.as_str() {
                    IMP => Connective::new(IMP, Family::G, &[Polarity::Dual, Polarity::One]),
                    COIMP => Connective::new(COIMP, Family::F, &[Polarity::Dual, Polarity::One]),
                    _ => Connective::new(orig, c.family, &c.coord_types.0),
                })
            })
            .collect();
        let base = self.name.strip_suffix("-target").unwrap_or(&self.name);
        Signature::new(base, conns)
    }

    /// Sub-signature keeping only the named connectives (plus the S4 pair in
    /// the BAE dialect).
    pub fn restrict(&self, keep: &BTreeSet<String>) -> Signature {
        Signature {
            name: self.name.clone(),
            connectives: self
                .connectives
                .iter()
                .filter(|c| keep.contains(&c.name) || c.name == DIA_GEQ || c.name == BOX_LEQ)
                .cloned()
                .collect(),
            dialect: self.dialect,
        }
    }
}

pub fn companion_name(name: &str) -> String {
    match name {
        IMP => "imp_o".to_string(),
        COIMP => "coimp_o".to_string(),
        _ => format!("{name}_o"),
    }
}

pub fn is_reserved(name: &str) -> bool {
    matches!(name, "bot" | "top" | NEG | DIA_GEQ | BOX_LEQ)
}
