//! Network documents (JSON).
//!
//! Homogeneous:
//!
//! ```json
//! {"cells": 3, "dim": 1, "params": 1,
//!  "maps": {"s1": [1,2,3], "s2": [1,1,2]}, "order": ["s1","s2"],
//!  "functions": {"f": "l1*X1 - X1^3 + X2"}}
//! ```
//!
//! Colored networks replace `cells`/`dim` by `"colors": [{"cells": 2, "dim": 1}, …]`
//! and key maps as `"s1@(d<-c)"`: a map from the cells of color `c` to the
//! cells of color `d`, listing one image per color-`c` cell: cell `i` of
//! color `c` reads cell `σ(i)` of color `d`. A colored
//! function lists one entry per color, each a string (dimension one) or a
//! list of component strings. Cells, colors and map slots are 1-based.
//!
//! Functions are written on the closed network: `X{k}` is the input through
//! the `k`-th map, closure maps included.

use std::collections::HashSet;
use std::fmt;

use ccnet_core::colored::{semigroupoid_closure, ColoredNetworkSpec, ColoredPolyFamily};
use ccnet_core::{FiniteMap, NetworkSpec, Poly, PolyMap};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Map, Value};

use crate::expr::{homogeneous_resolver, parse_poly};

/// A JSON object kept as an ordered list, so duplicate keys can be reported.
#[derive(Debug)]
struct Entries<T>(Vec<(String, T)>);

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Entries<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Entries<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Entries<T>, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some(k) = a.next_key::<String>()? {
                    if out.iter().any(|(n, _)| *n == k) {
                        return Err(serde::de::Error::custom(format!("duplicate name \"{k}\"")));
                    }
                    let v = a.next_value()?;
                    out.push((k, v));
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_map(V(std::marker::PhantomData))
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawColor {
    cells: usize,
    #[serde(default = "one")]
    dim: usize,
}

fn one() -> usize {
    1
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum RawComponents {
    One(String),
    Many(Vec<String>),
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum RawFunction {
    One(String),
    Many(Vec<RawComponents>),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    cells: Option<usize>,
    dim: Option<usize>,
    colors: Option<Vec<RawColor>>,
    #[serde(default)]
    params: usize,
    maps: Entries<Vec<usize>>,
    order: Option<Vec<String>>,
    functions: Option<Entries<RawFunction>>,
}

/// A named typed map; `target`/`source` are 0-based colors, images 0-based cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedEntry {
    pub name: String,
    pub target: usize,
    pub source: usize,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Network {
    Homogeneous {
        dim: usize,
        names: Vec<String>,
        /// The listed maps, in order.
        original: NetworkSpec,
        /// Its closure; closure maps get generated names.
        closed: NetworkSpec,
        closed_names: Vec<String>,
    },
    Colored {
        entries: Vec<TypedEntry>,
        original: ColoredNetworkSpec,
        closed: ColoredNetworkSpec,
        /// `closed_names[d][c][j]` names map `j` of type `(d, c)`.
        closed_names: Vec<Vec<Vec<String>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Function {
    Homogeneous(PolyMap),
    Colored(ColoredPolyFamily),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub network: Network,
    pub params: usize,
    pub functions: Vec<(String, Function)>,
}

/// Parse or validation failure; syntax errors carry line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, DocError> {
    Err(DocError(msg.into()))
}

/// `"s1@(2<-1)"` → `("s1", 1, 0)`.
fn split_typed_key(key: &str) -> Option<(String, usize, usize)> {
    let (name, ty) = key.split_once('@')?;
    let inner = ty.strip_prefix('(')?.strip_suffix(')')?;
    let (d, c) = inner.split_once("<-")?;
    let (d, c): (usize, usize) = (d.trim().parse().ok()?, c.trim().parse().ok()?);
    (!name.is_empty() && d >= 1 && c >= 1).then(|| (name.to_string(), d - 1, c - 1))
}

/// Fresh names `s{k}` for maps added by closure.
fn fresh_names(used: &mut HashSet<String>, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut k = used.len() + 1;
    while out.len() < count {
        let name = format!("s{k}");
        if used.insert(name.clone()) {
            out.push(name);
        }
        k += 1;
    }
    out
}

fn check_images(name: &str, images: &[usize], len: usize, range: usize, what: &str) -> Result<Vec<usize>, DocError> {
    if images.len() != len {
        return fail(format!("map \"{name}\" lists {} images; {what} has {len} cells", images.len()));
    }
    for (e, &v) in images.iter().enumerate() {
        if v == 0 || v > range {
            return fail(format!("map \"{name}\" entry {}: image {v} is out of range 1..={range}", e + 1));
        }
    }
    Ok(images.iter().map(|v| v - 1).collect())
}

fn apply_order<T>(entries: Vec<(String, T)>, order: Option<Vec<String>>) -> Result<Vec<(String, T)>, DocError> {
    let Some(order) = order else { return Ok(entries) };
    let mut pool: Vec<Option<(String, T)>> = entries.into_iter().map(Some).collect();
    let mut out = Vec::with_capacity(pool.len());
    for name in &order {
        let Some(slot) = pool.iter_mut().find(|e| e.as_ref().is_some_and(|(n, _)| n == name)) else {
            return fail(format!("\"order\" names unknown or repeated map \"{name}\""));
        };
        out.push(slot.take().expect("found above"));
    }
    if let Some((missing, _)) = pool.into_iter().flatten().next() {
        return fail(format!("\"order\" does not list map \"{missing}\""));
    }
    Ok(out)
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let raw: RawDoc = serde_json::from_str(text).map_err(|e| {
            let kind = if e.is_syntax() || e.is_eof() { "syntax error" } else { "invalid document" };
            DocError(format!("{kind}: {e}"))
        })?;
        let params = raw.params;
        let network = match (&raw.colors, raw.cells) {
            (Some(_), Some(_)) => return fail("a document declares either \"cells\" or \"colors\", not both"),
            (None, None) => return fail("missing \"cells\" (or \"colors\" for a colored network)"),
            (None, Some(cells)) => Self::homogeneous(cells, raw.dim.unwrap_or(1), raw.maps, raw.order)?,
            (Some(colors), None) => {
                if raw.dim.is_some() {
                    return fail("colored documents give \"dim\" per color");
                }
                Self::colored(colors, raw.maps, raw.order)?
            }
        };
        let mut functions = Vec::new();
        for (name, f) in raw.functions.map(|e| e.0).unwrap_or_default() {
            let parsed = match &network {
                Network::Homogeneous { closed, .. } => Function::Homogeneous(homogeneous_function(closed, params, &name, &f)?),
                Network::Colored { closed, .. } => Function::Colored(colored_function(closed, params, &name, &f)?),
            };
            functions.push((name, parsed));
        }
        Ok(Document { network, params, functions })
    }

    fn homogeneous(cells: usize, dim: usize, maps: Entries<Vec<usize>>, order: Option<Vec<String>>) -> Result<Network, DocError> {
        if cells == 0 || dim == 0 {
            return fail("\"cells\" and \"dim\" must be positive");
        }
        let entries = apply_order(maps.0, order)?;
        if entries.is_empty() {
            return fail("a network needs at least one map");
        }
        let mut names = Vec::new();
        let mut fms = Vec::new();
        for (name, images) in entries {
            if name.contains('@') {
                return fail(format!("map \"{name}\": typed keys need \"colors\""));
            }
            let images = check_images(&name, &images, cells, cells, "the network")?;
            let fm = FiniteMap::new(images).expect("validated");
            if let Some(k) = fms.iter().position(|m| *m == fm) {
                return fail(format!("map \"{name}\" repeats map \"{}\"", names[k]));
            }
            names.push(name);
            fms.push(fm);
        }
        let original = NetworkSpec::new(fms, dim).map_err(|e| DocError(e.to_string()))?;
        let closed = original.close().map_err(|e| DocError(e.to_string()))?;
        let mut used: HashSet<String> = names.iter().cloned().collect();
        let mut closed_names = names.clone();
        closed_names.extend(fresh_names(&mut used, closed.n() - names.len()));
        Ok(Network::Homogeneous { dim, names, original, closed, closed_names })
    }

    fn colored(colors: &[RawColor], maps: Entries<Vec<usize>>, order: Option<Vec<String>>) -> Result<Network, DocError> {
        if colors.is_empty() {
            return fail("\"colors\" is empty");
        }
        if let Some((k, _)) = colors.iter().enumerate().find(|(_, c)| c.cells == 0 || c.dim == 0) {
            return fail(format!("color {}: \"cells\" and \"dim\" must be positive", k + 1));
        }
        let keyed = apply_order(maps.0, order)?;
        let mut entries: Vec<TypedEntry> = Vec::new();
        for (key, images) in keyed {
            let Some((name, d, c)) = split_typed_key(&key) else {
                return fail(format!("map \"{key}\": colored maps are keyed \"name@(d<-c)\""));
            };
            if d >= colors.len() || c >= colors.len() {
                return fail(format!("map \"{key}\": there are {} colors", colors.len()));
            }
            if entries.iter().any(|e| e.name == name) {
                return fail(format!("duplicate name \"{name}\""));
            }
            let what = format!("color {}", c + 1);
            let images = check_images(&key, &images, colors[c].cells, colors[d].cells, &what)?;
            if let Some(e) = entries.iter().find(|e| e.target == d && e.source == c && e.images == images) {
                return fail(format!("map \"{key}\" repeats map \"{}\"", e.name));
            }
            entries.push(TypedEntry { name, target: d, source: c, images });
        }
        let original = ColoredNetworkSpec::new(
            colors.iter().map(|c| c.cells).collect(),
            colors.iter().map(|c| c.dim).collect(),
            entries.iter().map(|e| ((e.target, e.source), e.images.clone())).collect(),
        )
        .map_err(|e| DocError(e.to_string()))?;
        let closed = semigroupoid_closure(&original);
        let k = colors.len();
        let mut used: HashSet<String> = entries.iter().map(|e| e.name.clone()).collect();
        let mut closed_names = vec![vec![Vec::new(); k]; k];
        for (d, row) in closed_names.iter_mut().enumerate() {
            for (c, names) in row.iter_mut().enumerate() {
                names.extend(entries.iter().filter(|e| e.target == d && e.source == c).map(|e| e.name.clone()));
                let extra = closed.count(d, c) - names.len();
                names.extend(fresh_names(&mut used, extra));
            }
        }
        Ok(Network::Colored { entries, original, closed, closed_names })
    }

    pub fn function(&self, name: &str) -> Option<&Function> {
        self.functions.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// A named function, or else an inline expression.
    pub fn resolve_function(&self, arg: &str) -> Result<Function, DocError> {
        if let Some(f) = self.function(arg) {
            return Ok(f.clone());
        }
        let raw = RawFunction::One(arg.to_string());
        match &self.network {
            Network::Homogeneous { closed, .. } => {
                if closed.dim() > 1 {
                    let comps = arg.split(';').map(|s| RawComponents::One(s.to_string())).collect();
                    return homogeneous_function(closed, self.params, "<argument>", &RawFunction::Many(comps))
                        .map(Function::Homogeneous);
                }
                homogeneous_function(closed, self.params, "<argument>", &raw).map(Function::Homogeneous)
            }
            Network::Colored { .. } => fail(format!("no function named \"{arg}\"; colored functions must be defined in the document")),
        }
    }

    /// The document in normal form: every key present, maps in order,
    /// functions re-rendered.
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        let mut maps = Map::new();
        let mut order = Vec::new();
        match &self.network {
            Network::Homogeneous { dim, names, original, .. } => {
                out.insert("cells".into(), json!(original.cells()));
                out.insert("dim".into(), json!(dim));
                out.insert("params".into(), json!(self.params));
                for (name, m) in names.iter().zip(original.maps()) {
                    maps.insert(name.clone(), json!(m.one_based()));
                    order.push(name.clone());
                }
            }
            Network::Colored { entries, original, .. } => {
                let colors: Vec<Value> = original
                    .cell_counts()
                    .iter()
                    .zip(original.dims())
                    .map(|(c, d)| json!({"cells": c, "dim": d}))
                    .collect();
                out.insert("colors".into(), Value::Array(colors));
                out.insert("params".into(), json!(self.params));
                for e in entries {
                    let key = format!("{}@({}<-{})", e.name, e.target + 1, e.source + 1);
                    maps.insert(key.clone(), json!(e.images.iter().map(|i| i + 1).collect::<Vec<_>>()));
                    order.push(key);
                }
            }
        }
        out.insert("maps".into(), Value::Object(maps));
        out.insert("order".into(), json!(order));
        let mut funcs = Map::new();
        for (name, f) in &self.functions {
            funcs.insert(name.clone(), self.render_function(f));
        }
        out.insert("functions".into(), Value::Object(funcs));
        Value::Object(out)
    }

    /// Rendered components: a string for one component, else a list.
    pub fn render_function(&self, f: &Function) -> Value {
        let comps = |v: Vec<String>| if v.len() == 1 { json!(v[0]) } else { json!(v) };
        match (f, &self.network) {
            (Function::Homogeneous(p), _) => comps(p.render()),
            (Function::Colored(fam), Network::Colored { closed, .. }) => {
                Value::Array(render_family(closed, fam).into_iter().map(comps).collect())
            }
            (Function::Colored(_), Network::Homogeneous { .. }) => unreachable!("colored function on a homogeneous network"),
        }
    }
}

/// Rendered components of a colored family, color by color.
pub fn render_family(spec: &ColoredNetworkSpec, fam: &ColoredPolyFamily) -> Vec<Vec<String>> {
    fam.funcs
        .iter()
        .enumerate()
        .map(|(c, comps)| comps.iter().map(|p| p.render_with(&|v| spec.var_name(c, v))).collect())
        .collect()
}

fn components(raw: &RawComponents) -> Vec<&str> {
    match raw {
        RawComponents::One(s) => vec![s.as_str()],
        RawComponents::Many(v) => v.iter().map(String::as_str).collect(),
    }
}

fn parse_component(fname: &str, comp: usize, src: &str, nvars: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Poly, DocError> {
    parse_poly(src, nvars, resolve).map_err(|e| DocError(format!("function \"{fname}\" component {comp}: {e}")))
}

fn homogeneous_function(spec: &NetworkSpec, p: usize, name: &str, raw: &RawFunction) -> Result<PolyMap, DocError> {
    let (n, m) = (spec.n(), spec.dim());
    let srcs: Vec<&str> = match raw {
        RawFunction::One(s) => vec![s.as_str()],
        RawFunction::Many(list) => {
            let mut out = Vec::new();
            for c in list {
                match c {
                    RawComponents::One(s) => out.push(s.as_str()),
                    RawComponents::Many(_) => return fail(format!("function \"{name}\": nested lists are for colored networks")),
                }
            }
            out
        }
    };
    if srcs.len() != m {
        return fail(format!("function \"{name}\" has {} components; the cells have dimension {m}", srcs.len()));
    }
    let resolve = homogeneous_resolver(n, m, p);
    let comps = srcs
        .iter()
        .enumerate()
        .map(|(c, s)| parse_component(name, c + 1, s, n * m + p, &resolve))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap::from_components(n, m, p, comps).expect("shape matches"))
}

fn colored_function(spec: &ColoredNetworkSpec, p: usize, name: &str, raw: &RawFunction) -> Result<ColoredPolyFamily, DocError> {
    let per_color: Vec<Vec<&str>> = match raw {
        RawFunction::One(s) if spec.colors() == 1 => vec![vec![s.as_str()]],
        RawFunction::One(_) => return fail(format!("function \"{name}\" needs one entry per color")),
        RawFunction::Many(list) => list.iter().map(components).collect(),
    };
    if per_color.len() != spec.colors() {
        return fail(format!("function \"{name}\" has {} entries; the network has {} colors", per_color.len(), spec.colors()));
    }
    let mut funcs = Vec::new();
    for (c, srcs) in per_color.iter().enumerate() {
        if srcs.len() != spec.dims()[c] {
            return fail(format!(
                "function \"{name}\" color {}: {} components for dimension {}",
                c + 1,
                srcs.len(),
                spec.dims()[c]
            ));
        }
        let nv = spec.profile_layout(c).total() + p;
        let names: Vec<String> = (0..nv).map(|v| spec.var_name(c, v)).collect();
        let resolve = |s: &str| names.iter().position(|n| n == s);
        let comps = srcs
            .iter()
            .enumerate()
            .map(|(k, s)| {
                parse_component(name, k + 1, s, nv, &resolve).map_err(|e| DocError(format!("{} (color {})", e.0, c + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        funcs.push(comps);
    }
    Ok(ColoredPolyFamily { params: p, funcs })
}
