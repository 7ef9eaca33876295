//! Input descriptions and report documents.
//!
//! The JSON input names a field tower, the roots of f (as element literals
//! or as Hensel lifting instructions), and run options.  A run produces a
//! [`ReportDocument`]: the cluster tree, the per-cluster disc analysis, the
//! special-fibre invariants, and enough metadata to reproduce the run.  The
//! document serializes deterministically, every rational printed as "p/q",
//! and parses back to an equal value.
//!
//! Alternative renderings: Graphviz DOT for the dual graph, a nested
//! parentheses cluster picture, and a CSV sweep over a one-parameter family.

use std::fmt;

use num_integer::Integer;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clusters::{ClusterId, ClusterTree};
use crate::discs::{analyze_all, ClusterAnalysis, Uebereven, Viability};
use crate::error::Error;
use crate::fiber::{assemble, ComponentKind, FiberReport, MarkedPoint};
use crate::field::{hensel_lift_root, make_field_with, Ctx, Elem};
use crate::psd::DEFAULT_CAP;
use crate::rat::{fmt_q, q, qi, Ext, Q};
use crate::residue::ResidueField;
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Rational that serializes as the string "p/q" (or "p" for integers).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(pub Q);

impl From<Q> for Rat {
    fn from(v: Q) -> Rat {
        Rat(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(self.0))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s)
            .map(Rat)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Parse "p" or "p/q" into an exact rational, with a schema error on junk.
pub fn parse_q(s: &str) -> Result<Q> {
    crate::rat::parse_q(s)
        .ok_or_else(|| Error::SchemaError(format!("expected a rational like 3 or 4/3, got {s:?}")))
}

// ---------------------------------------------------------------- input ---

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}
fn default_e() -> u32 {
    1
}
fn default_precision() -> u32 {
    24
}
fn default_denominator() -> u32 {
    1
}

/// The local field: residue degree m, ramification e, working precision,
/// and an optional residue presentation (ascending 0/1 coefficients).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub m: u32,
    #[serde(default = "default_e")]
    pub e: u32,
    #[serde(default = "default_precision", alias = "N")]
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_poly: Option<Vec<u8>>,
}

/// Hensel lifting instructions: a polynomial with unramified integral
/// coefficients (each an m-length integer list, ascending degree) and the
/// residue root to lift, as 0/1 coordinates in the residue basis.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HenselSpec {
    pub poly: Vec<Vec<i128>>,
    pub residue_root: Vec<u8>,
}

/// One root of f: either an element literal (`coeffs[i][j]` is the j-th
/// unramified coordinate of the pi^i coefficient) or a Hensel lift.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct RootSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Vec<i128>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hensel: Option<HenselSpec>,
}

/// One-parameter family: the designated root is replaced by 2^(k/denominator)
/// for each k in from..=to.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub root: usize,
    #[serde(default = "default_denominator")]
    pub denominator: u32,
    pub from: i64,
    pub to: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_improve_iterations: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniformizer_valuation: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    pub field: FieldSpec,
    pub roots: Vec<RootSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leading_coefficient: Option<RootSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
}

/// Command-line overrides folded into the input before a run.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision: Option<u32>,
    pub max_iterations: Option<u32>,
    pub uniformizer: Option<Q>,
    pub seed: Option<u64>,
}

fn poly_bits(bits: &[u8]) -> Result<u32> {
    if bits.is_empty() || bits.len() > 32 || bits.iter().any(|&b| b > 1) {
        return Err(Error::SchemaError(
            "residue_poly must be a nonempty 0/1 list of length at most 32".into(),
        ));
    }
    Ok(bits
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i)))
}

fn bits_of(p: u32) -> Vec<u8> {
    (0..=p.ilog2()).map(|i| ((p >> i) & 1) as u8).collect()
}

fn relem_bits(bits: &[u8], m: u32) -> Result<u32> {
    if bits.len() > m as usize || bits.iter().any(|&b| b > 1) {
        return Err(Error::SchemaError(format!(
            "residue_root must be a 0/1 list of length at most m = {m}"
        )));
    }
    Ok(bits
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i)))
}

fn root_elem(ctx: &Ctx, spec: &RootSpec) -> Result<Elem> {
    match (&spec.coeffs, &spec.hensel) {
        (Some(c), None) => Elem::from_ints(ctx, c),
        (None, Some(h)) => {
            let coeffs: Vec<Elem> = h
                .poly
                .iter()
                .map(|row| Elem::from_ints(ctx, std::slice::from_ref(row)))
                .collect::<Result<_>>()?;
            let r0 = relem_bits(&h.residue_root, ctx.m)?;
            hensel_lift_root(ctx, &coeffs, r0)
        }
        _ => Err(Error::SchemaError(
            "each root needs exactly one of `coeffs` or `hensel`".into(),
        )),
    }
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<InputSpec> {
        serde_json::from_str(text).map_err(|e| Error::SchemaError(format!("input parse: {e}")))
    }

    /// Fold overrides in, materialize the residue presentation, and check
    /// the schema version.  The result is what the report echoes back.
    pub fn normalized(mut self, ov: &Overrides) -> Result<InputSpec> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::SchemaError(format!(
                "unsupported schema_version {} (this build speaks {})",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        if self.roots.is_empty() {
            return Err(Error::SchemaError("at least one root is required".into()));
        }
        if let Some(p) = ov.precision {
            self.field.precision = p;
        }
        if ov.max_iterations.is_some() || ov.uniformizer.is_some() {
            let o = self.options.get_or_insert_with(Default::default);
            if let Some(k) = ov.max_iterations {
                o.max_improve_iterations = Some(k);
            }
            if let Some(u) = ov.uniformizer {
                o.uniformizer_valuation = Some(Rat(u));
            }
        }
        if self.field.residue_poly.is_none() {
            self.field.residue_poly = Some(bits_of(ResidueField::default_poly(self.field.m)));
        }
        Ok(self)
    }

    pub fn context(&self) -> Result<Ctx> {
        let poly = match &self.field.residue_poly {
            Some(bits) => poly_bits(bits)?,
            None => ResidueField::default_poly(self.field.m),
        };
        make_field_with(
            self.field.m,
            self.field.e,
            qi(self.field.precision as i128),
            poly,
        )
    }

    pub fn tree(&self) -> Result<ClusterTree> {
        let ctx = self.context()?;
        self.tree_in(&ctx)
    }

    fn tree_in(&self, ctx: &Ctx) -> Result<ClusterTree> {
        let roots: Vec<Elem> = self
            .roots
            .iter()
            .map(|r| root_elem(ctx, r))
            .collect::<Result<_>>()?;
        let lead = match &self.leading_coefficient {
            Some(spec) => root_elem(ctx, spec)?,
            None => Elem::one(ctx),
        };
        ClusterTree::new(roots, lead)
    }

    pub fn cap(&self) -> u32 {
        self.options
            .as_ref()
            .and_then(|o| o.max_improve_iterations)
            .unwrap_or(DEFAULT_CAP)
    }

    pub fn uniformizer(&self) -> Option<Q> {
        self.options
            .as_ref()
            .and_then(|o| o.uniformizer_valuation)
            .map(|r| r.0)
    }
}

// ------------------------------------------------------------- document ---

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MetadataDoc {
    pub tool: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A disc, anchored at one of the input roots.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct DiscDoc {
    pub center_root: usize,
    pub depth: Rat,
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ViabilityDoc {
    Viable,
    SemiViable,
    NotViable,
}

impl From<Viability> for ViabilityDoc {
    fn from(v: Viability) -> ViabilityDoc {
        match v {
            Viability::Viable => ViabilityDoc::Viable,
            Viability::SemiViable => ViabilityDoc::SemiViable,
            Viability::NotViable => ViabilityDoc::NotViable,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum UeberevenDoc {
    Full,
    Semi,
    Not,
}

impl From<Uebereven> for UeberevenDoc {
    fn from(v: Uebereven) -> UeberevenDoc {
        match v {
            Uebereven::Full => UeberevenDoc::Full,
            Uebereven::Semi => UeberevenDoc::Semi,
            Uebereven::Not => UeberevenDoc::Not,
        }
    }
}

/// Disc analysis of one cluster; the side data is present for even proper
/// clusters only.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct AnalysisDoc {
    pub viability: ViabilityDoc,
    pub uebereven: UeberevenDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_minus: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_plus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_minus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_interval: Option<[Rat; 2]>,
    pub valid_discs: Vec<DiscDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ClusterDoc {
    pub id: usize,
    pub members: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Absent for singletons, whose depth is infinite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_depth: Option<Rat>,
    pub even: bool,
    pub analysis: AnalysisDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum KindDoc {
    Irreducible { genus: usize },
    TwoLines,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum PointDoc {
    Clump { cluster: usize },
    Infinity,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BranchDoc {
    pub point: PointDoc,
    pub ell: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ComponentDoc {
    pub disc: DiscDoc,
    pub host: usize,
    pub kind: KindDoc,
    pub genus: usize,
    pub branch_points: usize,
    pub ramification: Vec<BranchDoc>,
}

/// Where the two components over a viable cluster meet: a pair of nodes,
/// with the thickness in raw valuation units and in multiples of v(pi).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct NodeDoc {
    pub cluster: usize,
    pub deep: usize,
    pub shallow: usize,
    pub gap: Rat,
    pub thickness: Rat,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub metadata: MetadataDoc,
    pub input: InputSpec,
    pub genus: usize,
    pub picture: String,
    pub clusters: Vec<ClusterDoc>,
    pub toric_rank: usize,
    pub two_rank: usize,
    pub abelian_rank: usize,
    pub uniformizer_valuation: Rat,
    pub complete: bool,
    pub components: Vec<ComponentDoc>,
    pub nodes: Vec<NodeDoc>,
}

/// Everything a run produces: the exact objects plus the document.
pub struct Analysis {
    pub tree: ClusterTree,
    pub analyses: Vec<ClusterAnalysis>,
    pub fiber: FiberReport,
    pub report: ReportDocument,
}

/// Run the whole pipeline on a normalized input.
pub fn analyze(input: &InputSpec, seed: Option<u64>) -> Result<Analysis> {
    let tree = input.tree()?;
    let analyses = analyze_all(&tree, input.cap())?;
    let fiber = assemble(&tree, &analyses, input.uniformizer())?;
    let report = build_document(input, &tree, &analyses, &fiber, seed);
    Ok(Analysis {
        tree,
        analyses,
        fiber,
        report,
    })
}

fn analysis_doc(a: &ClusterAnalysis) -> AnalysisDoc {
    AnalysisDoc {
        viability: a.viability.into(),
        uebereven: a.uebereven.into(),
        threshold: a.sides.as_ref().map(|s| Rat(s.threshold)),
        b_plus: a.sides.as_ref().map(|s| Rat(s.b0_plus)),
        b_minus: a.sides.as_ref().map(|s| Rat(s.b0_minus)),
        lambda_plus: a.sides.as_ref().and_then(|s| s.lambda_plus),
        lambda_minus: a.sides.as_ref().and_then(|s| s.lambda_minus),
        j_interval: a.j_interval.map(|(lo, hi)| [Rat(lo), Rat(hi)]),
        valid_discs: a
            .valid_discs
            .iter()
            .map(|d| DiscDoc {
                center_root: a.center,
                depth: Rat(d.depth),
            })
            .collect(),
    }
}

fn build_document(
    input: &InputSpec,
    tree: &ClusterTree,
    analyses: &[ClusterAnalysis],
    fiber: &FiberReport,
    seed: Option<u64>,
) -> ReportDocument {
    let clusters = tree
        .ids()
        .map(|id| ClusterDoc {
            id,
            members: tree.members(id).to_vec(),
            parent: tree.parent(id),
            children: tree.children(id).to_vec(),
            depth: tree.depth(id).fin().map(Rat),
            relative_depth: tree.relative_depth(id).ok().map(Rat),
            even: tree.is_even(id),
            analysis: analysis_doc(&analyses[id]),
        })
        .collect();
    let components = fiber
        .components
        .iter()
        .map(|c| ComponentDoc {
            disc: DiscDoc {
                center_root: tree.center_root(c.host),
                depth: Rat(c.disc.depth),
            },
            host: c.host,
            kind: match c.kind {
                ComponentKind::Irreducible { genus } => KindDoc::Irreducible { genus },
                ComponentKind::TwoLines => KindDoc::TwoLines,
            },
            genus: c.genus_contribution(),
            branch_points: c.branch_points,
            ramification: c
                .ramification
                .iter()
                .map(|b| BranchDoc {
                    point: match b.point {
                        MarkedPoint::Clump(id) => PointDoc::Clump { cluster: id },
                        MarkedPoint::Infinity => PointDoc::Infinity,
                    },
                    ell: b.ell,
                })
                .collect(),
        })
        .collect();
    let nodes = fiber
        .nodes
        .iter()
        .map(|n| NodeDoc {
            cluster: n.cluster,
            deep: n.deep,
            shallow: n.shallow,
            gap: Rat(n.gap),
            thickness: Rat(n.thickness),
        })
        .collect();
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        metadata: MetadataDoc {
            tool: "rstfiber".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
        },
        input: input.clone(),
        genus: tree.genus(),
        picture: relative_picture(tree),
        clusters,
        toric_rank: fiber.toric_rank,
        two_rank: fiber.two_rank,
        abelian_rank: fiber.abelian_rank,
        uniformizer_valuation: Rat(fiber.uniformizer_valuation),
        complete: fiber.complete,
        components,
        nodes,
    }
}

pub fn emit_json(report: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

// -------------------------------------------------------------- picture ---

/// Nested parentheses picture of the cluster tree with relative depths
/// (absolute at the top), e.g. "((0 1)_{5} 2 3 4)_{0}".
pub fn relative_picture(tree: &ClusterTree) -> String {
    fn go(tree: &ClusterTree, id: ClusterId) -> String {
        if tree.size(id) == 1 {
            return tree.members(id)[0].to_string();
        }
        let inner: Vec<String> = tree.children(id).iter().map(|&c| go(tree, c)).collect();
        let label = match tree.relative_depth(id) {
            Ok(rel) => rel,
            Err(_) => tree
                .depth(id)
                .fin()
                .expect("proper cluster depth is finite"),
        };
        format!("({})_{{{}}}", inner.join(" "), fmt_q(label))
    }
    go(tree, tree.top())
}

fn members_str(tree: &ClusterTree, id: ClusterId) -> String {
    let m: Vec<String> = tree.members(id).iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", m.join(" "))
}

/// Plain-text rendering: the cluster picture plus one line per even proper
/// cluster and the global invariants.
pub fn emit_picture(a: &Analysis) -> String {
    let tree = &a.tree;
    let f = &a.fiber;
    let mut out = format!("cluster picture  {}\n", relative_picture(tree));
    for an in &a.analyses {
        let Some(sides) = &an.sides else { continue };
        let viability = match an.viability {
            Viability::Viable => "viable",
            Viability::SemiViable => "semi-viable",
            Viability::NotViable => "not viable",
        };
        let discs: Vec<String> = an
            .valid_discs
            .iter()
            .map(|d| format!("D({}, {})", an.center, fmt_q(d.depth)))
            .collect();
        let discs = if discs.is_empty() {
            "none".to_string()
        } else {
            discs.join(", ")
        };
        out += &format!(
            "cluster {}  B = {}  b = ({}, {})  {}  discs: {}\n",
            members_str(tree, an.cluster),
            fmt_q(sides.threshold),
            fmt_q(sides.b0_plus),
            fmt_q(sides.b0_minus),
            viability,
            discs
        );
    }
    for c in &f.components {
        let kind = match c.kind {
            ComponentKind::Irreducible { genus } => format!("genus {genus}"),
            ComponentKind::TwoLines => "two lines".to_string(),
        };
        out += &format!(
            "component over D({}, {})  {}  branch points: {}\n",
            tree.center_root(c.host),
            fmt_q(c.disc.depth),
            kind,
            c.branch_points
        );
    }
    for n in &f.nodes {
        out += &format!(
            "node pair at cluster {}  gap {}  thickness {}\n",
            members_str(tree, n.cluster),
            fmt_q(n.gap),
            fmt_q(n.thickness)
        );
    }
    out += &format!(
        "toric rank {}  2-rank {}  abelian rank {}  v(pi) = {}  {}\n",
        f.toric_rank,
        f.two_rank,
        f.abelian_rank,
        fmt_q(f.uniformizer_valuation),
        if f.complete { "complete" } else { "incomplete" }
    );
    out
}

// ------------------------------------------------------------------ dot ---

/// Exact valuation of the difference of two roots, read off the tree.
fn root_pair_valuation(tree: &ClusterTree, a: usize, b: usize) -> Ext {
    if a == b {
        return Ext::PosInf;
    }
    tree.ids()
        .filter(|&c| {
            let m = tree.members(c);
            m.contains(&a) && m.contains(&b)
        })
        .map(|c| tree.depth(c))
        .max()
        .expect("top cluster contains every root")
}

/// Dual graph sketch in Graphviz DOT.  One vertex per located component,
/// doubled edges labelled with thicknesses for each viable cluster.  When
/// the model is incomplete a dashed vertex stands for whatever is not
/// located, carrying the residual genus, with dashed edges to the outermost
/// located components.
pub fn emit_dot(a: &Analysis) -> String {
    let tree = &a.tree;
    let f = &a.fiber;
    let mut out = String::from("graph special_fiber {\n");
    if f.complete {
        out += "  graph [label=\"special fiber\"];\n";
    } else {
        out += "  graph [label=\"special fiber (incomplete)\", style=dashed];\n";
    }
    for (i, c) in f.components.iter().enumerate() {
        let kind = match c.kind {
            ComponentKind::Irreducible { genus } => format!("genus {genus}, separable"),
            ComponentKind::TwoLines => "two lines".to_string(),
        };
        out += &format!(
            "  c{} [label=\"depth {}, {}\"];\n",
            i,
            fmt_q(c.disc.depth),
            kind
        );
    }
    for n in &f.nodes {
        for _ in 0..2 {
            out += &format!(
                "  c{} -- c{} [label=\"thickness {}\"];\n",
                n.deep,
                n.shallow,
                fmt_q(n.thickness)
            );
        }
    }
    if !f.complete {
        let located: usize = f.components.iter().map(|c| c.genus_contribution()).sum();
        let residual = f.genus.saturating_sub(f.toric_rank + located);
        out += &format!("  rest [label=\"unlocated, residual genus {residual}\", style=dashed];\n");
        // outermost located discs: not strictly inside any other located disc
        for (i, c) in f.components.iter().enumerate() {
            let ci = tree.center_root(c.host);
            let maximal = f.components.iter().enumerate().all(|(j, d)| {
                if i == j {
                    return true;
                }
                let dj = tree.center_root(d.host);
                let inside = d.disc.depth < c.disc.depth
                    && root_pair_valuation(tree, ci, dj) >= Ext::Fin(d.disc.depth);
                !inside
            });
            if maximal {
                out += &format!("  rest -- c{i} [style=dashed];\n");
            }
        }
    }
    out += "}\n";
    out
}

// ---------------------------------------------------------------- sweep ---

/// Threshold shown in a sweep row: B of the smallest even proper cluster
/// containing the designated root.
fn sweep_threshold(tree: &ClusterTree, analyses: &[ClusterAnalysis], root: usize) -> Option<Q> {
    tree.ids()
        .filter(|&c| tree.members(c).contains(&root))
        .filter_map(|c| {
            analyses[c]
                .sides
                .as_ref()
                .map(|s| (tree.size(c), s.threshold))
        })
        .min_by_key(|&(size, _)| size)
        .map(|(_, b)| b)
}

fn sweep_row(input: &InputSpec, sw: &SweepSpec, k: i64) -> Result<String> {
    let ctx = input.context()?;
    let mut roots: Vec<Elem> = input
        .roots
        .iter()
        .map(|r| root_elem(&ctx, r))
        .collect::<Result<_>>()?;
    let v_lambda = q(k as i128, sw.denominator as i128);
    roots[sw.root] = Elem::pi_pow(&ctx, v_lambda)?;
    let lead = match &input.leading_coefficient {
        Some(spec) => root_elem(&ctx, spec)?,
        None => Elem::one(&ctx),
    };
    let tree = ClusterTree::new(roots, lead)?;
    let analyses = analyze_all(&tree, input.cap())?;
    let fiber = assemble(&tree, &analyses, input.uniformizer())?;
    let threshold = sweep_threshold(&tree, &analyses, sw.root)
        .map(fmt_q)
        .unwrap_or_default();
    let mut th: Vec<Q> = fiber.nodes.iter().map(|n| n.thickness).collect();
    th.sort();
    let th: Vec<String> = th.into_iter().map(fmt_q).collect();
    Ok(format!(
        "{},{},{},{},{},{}\n",
        fmt_q(v_lambda),
        threshold,
        fiber.components.len(),
        fiber.toric_rank,
        fiber.two_rank,
        th.join(";")
    ))
}

/// CSV sweep over the declared family.  Rows are computed independently
/// (optionally on `jobs` threads) and merged in k order, so the output does
/// not depend on the thread count.
pub fn run_sweep(input: &InputSpec, jobs: usize) -> Result<String> {
    let sw = input
        .options
        .as_ref()
        .and_then(|o| o.sweep.clone())
        .ok_or_else(|| Error::SchemaError("csv output needs options.sweep".into()))?;
    if sw.root >= input.roots.len() {
        return Err(Error::SchemaError(format!(
            "sweep root {} out of range (have {} roots)",
            sw.root,
            input.roots.len()
        )));
    }
    if sw.denominator == 0 {
        return Err(Error::SchemaError(
            "sweep denominator must be positive".into(),
        ));
    }
    if sw.from > sw.to {
        return Err(Error::SchemaError(format!(
            "empty sweep range {}..={}",
            sw.from, sw.to
        )));
    }
    if sw.from < 0 {
        return Err(Error::SchemaError(
            "sweep exponents must be nonnegative".into(),
        ));
    }
    // the swept value 2^(k/denominator) must live in the field
    let mut spec = input.clone();
    spec.field.e = spec.field.e.lcm(&sw.denominator);

    let ks: Vec<i64> = (sw.from..=sw.to).collect();
    let workers = jobs.max(1).min(ks.len());
    let rows: Vec<Result<String>> = if workers <= 1 {
        ks.iter().map(|&k| sweep_row(&spec, &sw, k)).collect()
    } else {
        std::thread::scope(|scope| {
            let spec = &spec;
            let sw = &sw;
            let ks = &ks;
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || -> Vec<(usize, Result<String>)> {
                        ks.iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, &k)| (i, sweep_row(spec, sw, k)))
                            .collect()
                    })
                })
                .collect();
            let mut slots: Vec<Option<Result<String>>> =
                std::iter::repeat_with(|| None).take(ks.len()).collect();
            for h in handles {
                for (i, r) in h.join().expect("sweep worker panicked") {
                    slots[i] = Some(r);
                }
            }
            slots
                .into_iter()
                .map(|s| s.expect("every row computed"))
                .collect()
        })
    };
    let mut out = String::from("v_lambda,threshold,valid_discs,toric_rank,two_rank,thicknesses\n");
    for row in rows {
        out += &row?;
    }
    Ok(out)
}
