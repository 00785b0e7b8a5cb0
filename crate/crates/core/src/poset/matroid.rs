//! Ingestion of lattices: explicit posets and matroids given by circuits,
//! bases, graphs, or one of the standard families.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde_json::Value;

use super::{Caps, GeometricLattice, GradedBoundedPoset};
use crate::error::{Error, Result};

/// The accepted descriptions of a geometric lattice.
///
/// For matroid inputs the atoms of the lattice of flats are ordered by the
/// smallest ground-set element they contain, so the ground-set order fixes
/// the atom order (and with it every nbc basis and EL-labeling).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidSpec {
    /// Explicit poset; `covers` are pairs `(i, j)` with `i < j`.
    Poset {
        elements: Vec<String>,
        covers: Vec<(usize, usize)>,
    },
    /// Circuits over a ground set, as lists of ground indices.
    Circuits {
        ground: Vec<String>,
        circuits: Vec<Vec<usize>>,
    },
    /// Bases over a ground set, as lists of ground indices.
    Bases {
        ground: Vec<String>,
        bases: Vec<Vec<usize>>,
    },
    /// Cycle matroid of a multigraph; the edges are the ground set.
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Uniform {
        k: usize,
        n: usize,
    },
    Boolean(usize),
    /// The partition lattice `Π_n` (cycle matroid of the complete graph).
    Partition(usize),
}

impl MatroidSpec {
    /// Parses names such as `boolean:3`, `uniform:2,3`, `partition:4`,
    /// `complete:4` (cycle matroid of `K_n`) and `cycle:4` (of the `n`-cycle).
    pub fn builtin(name: &str) -> Result<Self> {
        let (kind, args) = name
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("builtin `{name}` must look like kind:args")))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad builtin argument `{s}`")))
            })
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("boolean", [n]) => Ok(MatroidSpec::Boolean(*n)),
            ("uniform", [k, n]) => Ok(MatroidSpec::Uniform { k: *k, n: *n }),
            ("partition", [n]) => Ok(MatroidSpec::Partition(*n)),
            ("complete", [n]) => Ok(MatroidSpec::Graph {
                vertices: *n,
                edges: (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))).collect(),
            }),
            ("cycle", [n]) if *n >= 2 => Ok(MatroidSpec::Graph {
                vertices: *n,
                edges: (0..*n).map(|i| (i, (i + 1) % n)).collect(),
            }),
            _ => Err(Error::InvalidInput(format!("unknown builtin `{name}`"))),
        }
    }

    /// Parses one of the JSON input shapes: `{"elements", "covers"}`,
    /// `{"ground", "circuits"}`, `{"ground", "bases"}`, `{"graph": {...}}`,
    /// `{"uniform": [k, n]}`, `{"boolean": n}`, `{"partition": n}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("input must be a JSON object".into()))?;
        if let Some(covers) = obj.get("covers") {
            let elements = obj
                .get("elements")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("`covers` input needs an `elements` array".into()))?;
            let elements: Vec<String> = elements.iter().map(item_label).collect();
            let covers = covers
                .as_array()
                .ok_or_else(|| Error::InvalidInput("`covers` must be an array".into()))?
                .iter()
                .map(|pair| parse_pair(pair, "covers"))
                .collect::<Result<_>>()?;
            return Ok(MatroidSpec::Poset { elements, covers });
        }
        if let Some(circuits) = obj.get("circuits") {
            let (ground, sets) = parse_set_family(obj.get("ground"), circuits, "circuits")?;
            return Ok(MatroidSpec::Circuits {
                ground,
                circuits: sets,
            });
        }
        if let Some(bases) = obj.get("bases") {
            let (ground, sets) = parse_set_family(obj.get("ground"), bases, "bases")?;
            return Ok(MatroidSpec::Bases { ground, bases: sets });
        }
        if let Some(graph) = obj.get("graph") {
            let vertices = graph
                .get("vertices")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::InvalidInput("`graph.vertices` must be a non-negative integer".into()))?
                as usize;
            let edges = graph
                .get("edges")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidInput("`graph.edges` must be an array".into()))?
                .iter()
                .map(|pair| parse_pair(pair, "graph.edges"))
                .collect::<Result<_>>()?;
            return Ok(MatroidSpec::Graph { vertices, edges });
        }
        if let Some(u) = obj.get("uniform") {
            let (k, n) = parse_pair(u, "uniform")?;
            return Ok(MatroidSpec::Uniform { k, n });
        }
        if let Some(b) = obj.get("boolean") {
            let n = b
                .as_u64()
                .ok_or_else(|| Error::InvalidInput("`boolean` must be a non-negative integer".into()))?;
            return Ok(MatroidSpec::Boolean(n as usize));
        }
        if let Some(p) = obj.get("partition") {
            let n = p
                .as_u64()
                .ok_or_else(|| Error::InvalidInput("`partition` must be a non-negative integer".into()))?;
            return Ok(MatroidSpec::Partition(n as usize));
        }
        Err(Error::InvalidInput(
            "unrecognised input: expected covers, circuits, bases, graph, uniform, boolean or partition".into(),
        ))
    }
}

fn item_label(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn parse_pair(v: &Value, what: &str) -> Result<(usize, usize)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::InvalidInput(format!("entries of `{what}` must be pairs, got {v}")))?;
    let get = |x: &Value| {
        x.as_u64()
            .map(|u| u as usize)
            .ok_or_else(|| Error::InvalidInput(format!("entries of `{what}` must be non-negative integers, got {v}")))
    };
    Ok((get(&arr[0])?, get(&arr[1])?))
}

/// Resolves set members against the ground set. Without an explicit ground
/// set, the ground set is the union of all members: numerically sorted when
/// every member is an integer, otherwise in order of first appearance.
fn parse_set_family(ground: Option<&Value>, family: &Value, what: &str) -> Result<(Vec<String>, Vec<Vec<usize>>)> {
    let family = family
        .as_array()
        .ok_or_else(|| Error::InvalidInput(format!("`{what}` must be an array of arrays")))?;
    let mut sets_raw: Vec<Vec<Value>> = Vec::with_capacity(family.len());
    for s in family {
        let arr = s
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("`{what}` must be an array of arrays")))?;
        sets_raw.push(arr.clone());
    }
    let ground_labels: Vec<String> = match ground {
        Some(g) => g
            .as_array()
            .ok_or_else(|| Error::InvalidInput("`ground` must be an array".into()))?
            .iter()
            .map(item_label)
            .collect(),
        None => {
            let all: Vec<&Value> = sets_raw.iter().flatten().collect();
            if all.iter().all(|v| v.is_u64()) {
                let mut nums: Vec<u64> = all.iter().filter_map(|v| v.as_u64()).collect();
                nums.sort_unstable();
                nums.dedup();
                nums.iter().map(|n| n.to_string()).collect()
            } else {
                let mut seen = Vec::new();
                for v in all {
                    let l = item_label(v);
                    if !seen.contains(&l) {
                        seen.push(l);
                    }
                }
                seen
            }
        }
    };
    let index: HashMap<&str, usize> = ground_labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if index.len() != ground_labels.len() {
        return Err(Error::InvalidInput("ground set has repeated elements".into()));
    }
    let sets = sets_raw
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| {
                    let l = item_label(v);
                    index
                        .get(l.as_str())
                        .copied()
                        .ok_or_else(|| Error::InvalidInput(format!("`{what}` mentions `{l}`, which is not in the ground set")))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    Ok((ground_labels, sets))
}

type Mask = u64;

fn mask_of(items: &[usize]) -> Mask {
    items.iter().fold(0, |m, &i| m | (1 << i))
}

/// A matroid presented through its closure operator on bitmasks.
enum ClosureOracle {
    Circuits(Vec<Mask>),
    Bases(Vec<Mask>),
    Graph { vertices: usize, edges: Vec<(usize, usize)> },
    Uniform { k: usize, n: usize },
}

impl ClosureOracle {
    fn ground_size(&self, explicit: usize) -> usize {
        match self {
            ClosureOracle::Graph { edges, .. } => edges.len(),
            ClosureOracle::Uniform { n, .. } => *n,
            _ => explicit,
        }
    }

    fn closure(&self, x: Mask, n: usize) -> Mask {
        match self {
            ClosureOracle::Circuits(circuits) => {
                let mut cl = x;
                for &c in circuits {
                    let missing = c & !x;
                    if missing.count_ones() == 1 {
                        cl |= missing;
                    }
                }
                cl
            }
            ClosureOracle::Bases(bases) => {
                let rank = |s: Mask| bases.iter().map(|b| (b & s).count_ones()).max().unwrap_or(0);
                let r = rank(x);
                (0..n).filter(|&e| rank(x | (1 << e)) == r).fold(x, |m, e| m | (1 << e))
            }
            ClosureOracle::Graph { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(p: &mut [usize], mut v: usize) -> usize {
                    while p[v] != v {
                        p[v] = p[p[v]];
                        v = p[v];
                    }
                    v
                }
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if x & (1 << i) != 0 {
                        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                        parent[a] = b;
                    }
                }
                let mut cl = x;
                for (i, &(u, v)) in edges.iter().enumerate() {
                    if find(&mut parent, u) == find(&mut parent, v) {
                        cl |= 1 << i;
                    }
                }
                cl
            }
            ClosureOracle::Uniform { k, n } => {
                if (x.count_ones() as usize) < *k {
                    x
                } else {
                    full_mask(*n)
                }
            }
        }
    }
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

fn validate_circuits(circuits: &[Mask]) -> Result<()> {
    for (i, &c) in circuits.iter().enumerate() {
        if c == 0 {
            return Err(Error::MatroidAxiom("the empty set is not a circuit".into()));
        }
        for (j, &d) in circuits.iter().enumerate() {
            if i != j && c & d == c {
                return Err(Error::MatroidAxiom(format!("circuit #{i} is contained in circuit #{j}")));
            }
        }
    }
    for (i, &c) in circuits.iter().enumerate() {
        for &d in &circuits[i + 1..] {
            let common = c & d;
            let mut bits = common;
            while bits != 0 {
                let e = bits.trailing_zeros();
                bits &= bits - 1;
                let union = (c | d) & !(1 << e);
                if !circuits.iter().any(|&f| f & !union == 0) {
                    return Err(Error::MatroidAxiom(format!(
                        "circuit elimination fails for circuits {c:#b} and {d:#b} at element {e}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn validate_bases(bases: &[Mask]) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::MatroidAxiom("a matroid needs at least one basis".into()));
    }
    for &b1 in bases {
        for &b2 in bases {
            let mut only1 = b1 & !b2;
            while only1 != 0 {
                let x = only1.trailing_zeros();
                only1 &= only1 - 1;
                let only2 = b2 & !b1;
                let ok = (0..64)
                    .filter(|y| only2 & (1 << y) != 0)
                    .any(|y| bases.contains(&((b1 & !(1 << x)) | (1 << y))));
                if !ok {
                    return Err(Error::MatroidAxiom(format!("basis exchange fails for {b1:#b}, {b2:#b} at {x}")));
                }
            }
        }
    }
    Ok(())
}

/// Builds and validates the geometric lattice described by `spec`.
///
/// Matroid inputs become their lattice of flats; element 0 is the bottom
/// flat and atoms are ordered by their smallest ground element.
pub fn build_lattice(spec: &MatroidSpec, caps: &Caps) -> Result<GeometricLattice> {
    let (oracle, ground, partition_n) = match spec {
        MatroidSpec::Poset { elements, covers } => {
            let poset = GradedBoundedPoset::from_relations(elements.clone(), covers, caps)?;
            return GeometricLattice::from_poset(poset);
        }
        MatroidSpec::Circuits { ground, circuits } => {
            check_ground(ground.len())?;
            let masks: Vec<Mask> = circuits.iter().map(|c| mask_of(c)).collect();
            validate_circuits(&masks)?;
            (ClosureOracle::Circuits(masks), ground.clone(), None)
        }
        MatroidSpec::Bases { ground, bases } => {
            check_ground(ground.len())?;
            let masks: Vec<Mask> = bases.iter().map(|b| mask_of(b)).collect();
            validate_bases(&masks)?;
            (ClosureOracle::Bases(masks), ground.clone(), None)
        }
        MatroidSpec::Graph { vertices, edges } => {
            check_ground(edges.len())?;
            if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= *vertices || v >= *vertices) {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) refers to a missing vertex")));
            }
            let ground = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            (
                ClosureOracle::Graph {
                    vertices: *vertices,
                    edges: edges.clone(),
                },
                ground,
                None,
            )
        }
        MatroidSpec::Uniform { k, n } => {
            check_ground(*n)?;
            if k > n {
                return Err(Error::InvalidInput(format!("uniform matroid needs k <= n, got k={k}, n={n}")));
            }
            (ClosureOracle::Uniform { k: *k, n: *n }, (0..*n).map(|i| i.to_string()).collect(), None)
        }
        MatroidSpec::Boolean(n) => {
            check_ground(*n)?;
            (ClosureOracle::Uniform { k: *n, n: *n }, (0..*n).map(|i| i.to_string()).collect(), None)
        }
        MatroidSpec::Partition(n) => {
            if *n == 0 {
                return Err(Error::InvalidInput("partition lattice needs n >= 1".into()));
            }
            let edges: Vec<(usize, usize)> = (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))).collect();
            check_ground(edges.len())?;
            let ground = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            (
                ClosureOracle::Graph {
                    vertices: *n,
                    edges,
                },
                ground,
                Some(*n),
            )
        }
    };
    let n = oracle.ground_size(ground.len());
    let flats = enumerate_flats(&oracle, n, caps)?;
    let labels: Vec<String> = flats
        .iter()
        .map(|(mask, _)| match partition_n {
            Some(pn) => partition_label(*mask, pn),
            None => set_label(*mask, &ground),
        })
        .collect();
    let index: HashMap<Mask, usize> = flats.iter().enumerate().map(|(i, (m, _))| (*m, i)).collect();
    let mut covers = Vec::new();
    for (i, (f, _)) in flats.iter().enumerate() {
        for e in 0..n {
            if f & (1 << e) == 0 {
                let g = oracle.closure(f | (1 << e), n);
                covers.push((i, index[&g]));
            }
        }
    }
    covers.sort_unstable();
    covers.dedup();
    let poset = GradedBoundedPoset::from_relations(labels, &covers, caps)?;
    GeometricLattice::from_poset(poset)
}

fn check_ground(n: usize) -> Result<()> {
    if n > 63 {
        return Err(Error::InvalidInput(format!("ground sets are limited to 63 elements, got {n}")));
    }
    Ok(())
}

/// All flats, sorted by rank and then by their sorted element lists.
fn enumerate_flats(oracle: &ClosureOracle, n: usize, caps: &Caps) -> Result<Vec<(Mask, usize)>> {
    let bottom = oracle.closure(0, n);
    let mut rank: BTreeMap<Mask, usize> = BTreeMap::new();
    rank.insert(bottom, 0);
    let mut queue = VecDeque::from([bottom]);
    while let Some(f) = queue.pop_front() {
        let r = rank[&f];
        for e in 0..n {
            if f & (1 << e) != 0 {
                continue;
            }
            let g = oracle.closure(f | (1 << e), n);
            if let std::collections::btree_map::Entry::Vacant(slot) = rank.entry(g) {
                slot.insert(r + 1);
                if rank.len() > caps.max_elements {
                    return Err(Error::SizeGuardExceeded {
                        what: "element count",
                        limit: caps.max_elements,
                    });
                }
                queue.push_back(g);
            }
        }
    }
    let elems = |m: Mask| (0..n).filter(|&e| m & (1 << e) != 0).collect::<Vec<_>>();
    let mut flats: Vec<(Mask, usize)> = rank.into_iter().collect();
    flats.sort_by_key(|a| (a.1, elems(a.0)));
    Ok(flats)
}

fn set_label(mask: Mask, ground: &[String]) -> String {
    let items: Vec<&str> = ground
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, s)| s.as_str())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Block notation such as `01|2` for a flat of the complete graph on `n` vertices.
fn partition_label(mask: Mask, n: usize) -> String {
    let mut block: Vec<usize> = (0..n).collect();
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask & (1 << idx) != 0 {
                let (a, b) = (block[i], block[j]);
                for x in block.iter_mut() {
                    if *x == b {
                        *x = a;
                    }
                }
            }
            idx += 1;
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for v in 0..n {
        let root = block[v];
        match seen.iter().position(|&r| r == root) {
            Some(p) => blocks[p].push(v),
            None => {
                seen.push(root);
                blocks.push(vec![v]);
            }
        }
    }
    blocks
        .iter()
        .map(|b| b.iter().map(|v| v.to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join("|")
}
