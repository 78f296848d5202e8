use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::CyclicBlockData;
use crate::chartab::CharacterTable;
use crate::context::TabledGroup;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

const MAX_TREES: usize = 1_000_000;

/// The Brauer tree of a cyclic block. Vertices `0..e` are the
/// non-exceptional characters, vertex `e` is the exceptional vertex.
#[derive(Clone, Debug, Serialize)]
pub struct BrauerTree {
    pub non_exceptional: Vec<usize>,
    pub exceptional: Vec<usize>,
    pub multiplicity: usize,
    /// Vertex pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl BrauerTree {
    pub fn num_vertices(&self) -> usize {
        self.non_exceptional.len() + 1
    }

    pub fn exceptional_vertex(&self) -> usize {
        self.non_exceptional.len()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Connected with `e` edges on `e + 1` vertices.
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.num_vertices() {
            return false;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.num_vertices()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

fn vertex_sum(table: &CharacterTable, chars: &[usize]) -> Vec<CycNum> {
    (0..table.num_classes())
        .map(|k| chars.iter().map(|&c| table.character(c)[k].clone()).sum())
        .collect()
}

fn vertex_characters(data: &CyclicBlockData) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = data.non_exceptional.iter().map(|&c| vec![c]).collect();
    v.push(data.exceptional.clone());
    v
}

/// Multiplicity of each vertex in a class function, or `None` if some
/// multiplicity is not a nonnegative integer or the exceptional
/// multiplicities differ.
fn vertex_multiplicities(table: &CharacterTable, f: &[CycNum], data: &CyclicBlockData) -> Result<Option<Vec<i64>>> {
    let mult = |chi: usize| -> Option<i64> {
        let m = table.inner_product(f, table.character(chi)).to_integer()?;
        (!m.is_negative()).then(|| i64::try_from(m).ok()).flatten()
    };
    let mut out = Vec::with_capacity(data.non_exceptional.len() + 1);
    for &chi in &data.non_exceptional {
        match mult(chi) {
            Some(m) => out.push(m),
            None => return Ok(None),
        }
    }
    let exc: Vec<Option<i64>> = data.exceptional.iter().map(|&c| mult(c)).collect();
    if exc.iter().any(Option::is_none) {
        return Ok(None);
    }
    if exc.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InternalInconsistency(
            "projective character separates exceptional characters".into(),
        ));
    }
    out.push(exc[0].unwrap());
    Ok(Some(out))
}

/// Whether `a` is a nonnegative integer combination of the edge vectors
/// `1_u + 1_v` of a tree (solved by peeling leaves).
fn decomposes_over(edges: &[(usize, usize)], vertices: usize, a: &[i64]) -> bool {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    for (j, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(j);
        incident[v].push(j);
    }
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut used = vec![false; edges.len()];
    let mut residual = a.to_vec();
    let mut leaves: VecDeque<usize> = (0..vertices).filter(|&v| degree[v] == 1).collect();
    let mut removed = 0;
    while let Some(v) = leaves.pop_front() {
        if degree[v] != 1 {
            continue;
        }
        let j = *incident[v].iter().find(|&&j| !used[j]).unwrap();
        used[j] = true;
        let (x, y) = edges[j];
        let u = if x == v { y } else { x };
        let c = residual[v];
        if c < 0 {
            return false;
        }
        residual[v] = 0;
        residual[u] -= c;
        degree[v] = 0;
        degree[u] -= 1;
        removed += 1;
        if degree[u] == 1 {
            leaves.push_back(u);
        }
    }
    removed == edges.len() && residual.iter().all(|&r| r == 0)
}

fn spanning_trees(candidates: &[(usize, usize)], vertices: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        r
    }
    fn rec(
        candidates: &[(usize, usize)],
        start: usize,
        chosen: &mut Vec<(usize, usize)>,
        need: usize,
        parent: &mut Vec<usize>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) -> bool {
        if chosen.len() == need {
            out.push(chosen.clone());
            return out.len() <= MAX_TREES;
        }
        if candidates.len() - start < need - chosen.len() {
            return true;
        }
        for i in start..candidates.len() {
            let (u, v) = candidates[i];
            let (ru, rv) = (find(parent, u), find(parent, v));
            if ru == rv {
                continue;
            }
            let saved = parent.clone();
            parent[ru] = rv;
            chosen.push((u, v));
            let ok = rec(candidates, i + 1, chosen, need, parent, out);
            chosen.pop();
            *parent = saved;
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut parent: Vec<usize> = (0..vertices).collect();
    if !rec(candidates, 0, &mut Vec::new(), vertices - 1, &mut parent, &mut out) {
        return Err(Error::NotSupported(format!("more than {MAX_TREES} candidate Brauer trees")));
    }
    Ok(out)
}

/// Characters `Ind_<x>^G(lambda)` for every p-regular class representative
/// `x` and every linear character `lambda` of `<x>`. All are projective.
fn cyclic_inductions(g: &TabledGroup, p: u64) -> Vec<Vec<CycNum>> {
    let table = &g.table;
    let r = table.num_classes();
    let mut out = Vec::new();
    for class in table.p_regular_classes(p) {
        let o = g.group.classes()[class].element_order;
        let power_classes: Vec<usize> = (0..o).map(|k| g.group.power_class(class, k)).collect();
        for j in 0..o as i64 {
            let mut f = vec![CycNum::zero(); r];
            for (k, &c) in power_classes.iter().enumerate() {
                f[c] = f[c].add_ref(&CycNum::root_of_unity(o as u32, j * k as i64));
            }
            for (c, v) in f.iter_mut().enumerate() {
                let cent = table.order() / table.classes()[c].size;
                *v = v.scale(&BigRational::new(BigInt::from(cent), BigInt::from(o)));
            }
            out.push(f);
        }
    }
    out
}

/// Permutation characters `1_H^G` for the p'-subgroups generated by a
/// p-regular class representative and one further p-regular element.
fn two_generated_permutation_characters(g: &TabledGroup, p: u64) -> Result<Vec<Vec<CycNum>>> {
    let table = &g.table;
    let limits = g.group.limits();
    let regular: Vec<&Permutation> = g.group.elements().iter().filter(|x| x.order() % p != 0).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for class in table.p_regular_classes(p) {
        let x = &g.group.classes()[class].representative;
        for &y in &regular {
            let h = PermGroup::new(g.group.degree(), vec![x.clone(), y.clone()])?;
            if h.order() % p as u128 == 0 {
                continue;
            }
            let mut key: Vec<usize> = h
                .elements(&limits)?
                .iter()
                .map(|e| g.group.element_index(e).unwrap())
                .collect();
            key.sort_unstable();
            if !seen.insert(key.clone()) {
                continue;
            }
            let mut counts = vec![0u64; table.num_classes()];
            for &e in &key {
                counts[g.group.class_of_index(e)] += 1;
            }
            let f = counts
                .iter()
                .enumerate()
                .map(|(c, &n)| {
                    let cent = table.order() / table.classes()[c].size;
                    CycNum::from_rational(&BigRational::new(
                        BigInt::from(cent) * BigInt::from(n),
                        BigInt::from(key.len()),
                    ))
                })
                .collect();
            out.push(f);
        }
    }
    Ok(out)
}

/// Vertex-multiplicity vectors of `f * chi` for every generator `f` and
/// every irreducible `chi`, restricted to the block.
fn projective_vectors(
    table: &CharacterTable,
    generators: &[Vec<CycNum>],
    data: &CyclicBlockData,
) -> Result<BTreeSet<Vec<i64>>> {
    let mut out = BTreeSet::new();
    for f in generators {
        for chi in table.characters() {
            let prod: Vec<CycNum> = f.iter().zip(chi).map(|(a, b)| a * b).collect();
            match vertex_multiplicities(table, &prod, data)? {
                Some(v) if v.iter().any(|&x| x != 0) => {
                    out.insert(v);
                }
                Some(_) => {}
                None => {
                    return Err(Error::InternalInconsistency(
                        "projective character has non-integral multiplicities".into(),
                    ))
                }
            }
        }
    }
    Ok(out)
}

/// Reconstructs the Brauer tree.
///
/// Candidate edges join vertices whose character sum vanishes on every
/// p-singular class. Among the spanning trees of the candidate graph, only
/// those over which every constructed projective character decomposes with
/// nonnegative integer coefficients are kept; the tree must be unique.
pub fn brauer_tree(g: &TabledGroup, data: &CyclicBlockData) -> Result<BrauerTree> {
    let table = &g.table;
    let p = data.prime;
    let vertices = vertex_characters(data);
    let n = vertices.len();
    let sums: Vec<Vec<CycNum>> = vertices.iter().map(|v| vertex_sum(table, v)).collect();
    let singular: Vec<usize> = (0..table.num_classes())
        .filter(|&c| table.classes()[c].order % p == 0)
        .collect();
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if singular.iter().all(|&c| (&sums[u][c] + &sums[v][c]).is_zero()) {
                candidates.push((u, v));
            }
        }
    }
    let mut trees = spanning_trees(&candidates, n)?;
    if trees.len() > 1 {
        let projectives = projective_vectors(table, &cyclic_inductions(g, p), data)?;
        trees.retain(|t| projectives.iter().all(|a| decomposes_over(t, n, a)));
    }
    if trees.len() > 1 {
        let projectives = projective_vectors(table, &two_generated_permutation_characters(g, p)?, data)?;
        trees.retain(|t| projectives.iter().all(|a| decomposes_over(t, n, a)));
    }
    let edges = match trees.len() {
        0 => {
            return Err(Error::NotATree(
                "no spanning tree of the vanishing graph is consistent with the projective characters".into(),
            ))
        }
        1 => trees.pop().unwrap(),
        k => return Err(Error::AmbiguousBrauerTree(k)),
    };
    let mut edges: Vec<(usize, usize)> = edges;
    edges.sort_unstable();
    let tree = BrauerTree {
        non_exceptional: data.non_exceptional.clone(),
        exceptional: data.exceptional.clone(),
        multiplicity: data.multiplicity,
        edges,
    };
    if !tree.is_tree() || tree.edges.len() != data.inertial_index {
        return Err(Error::NotATree(format!("{} edges on {n} vertices", tree.edges.len())));
    }
    Ok(tree)
}

/// Vertex and edge labels: vertex labels `1..=e` in order of decreasing
/// distance from the exceptional vertex (ties by character index), the
/// exceptional vertex is `e + 1`, and edge `i` joins vertex `i` to its
/// neighbour towards the exceptional vertex.
#[derive(Clone, Debug, Serialize)]
pub struct LabeledTree {
    /// Label of each vertex index.
    pub vertex_label: Vec<usize>,
    /// Vertex index carrying label `i + 1`.
    pub by_label: Vec<usize>,
    /// Edge `i + 1` as the label pair `(i + 1, i')` with `i' > i + 1`.
    pub edges: Vec<(usize, usize)>,
}

pub fn unitriangular_labeling(tree: &BrauerTree) -> LabeledTree {
    let n = tree.num_vertices();
    let root = tree.exceptional_vertex();
    let adj = tree.neighbours();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut order: Vec<usize> = (0..root).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), tree.non_exceptional[v]));
    order.push(root);
    let mut vertex_label = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        vertex_label[v] = i + 1;
    }
    let edges = order[..root]
        .iter()
        .map(|&v| (vertex_label[v], vertex_label[parent[v]]))
        .collect();
    LabeledTree {
        vertex_label,
        by_label: order,
        edges,
    }
}

/// Rows are ordinary characters, columns Brauer characters.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionMatrix {
    pub rows: Vec<usize>,
    pub entries: Vec<Vec<u8>>,
}

impl DecompositionMatrix {
    pub fn single_column(characters: &[usize]) -> Self {
        DecompositionMatrix {
            rows: characters.to_vec(),
            entries: vec![vec![1]; characters.len()],
        }
    }

    /// Non-exceptional rows in label order, then the exceptional rows;
    /// columns in edge-label order.
    pub fn from_labeled(tree: &BrauerTree, labeled: &LabeledTree, data: &CyclicBlockData) -> Self {
        let e = tree.non_exceptional.len();
        let incidence = |label: usize| -> Vec<u8> {
            labeled
                .edges
                .iter()
                .map(|&(a, b)| u8::from(a == label || b == label))
                .collect()
        };
        let mut rows = Vec::new();
        let mut entries = Vec::new();
        for label in 1..=e {
            rows.push(tree.non_exceptional[labeled.by_label[label - 1]]);
            entries.push(incidence(label));
        }
        for &chi in &data.exceptional {
            rows.push(chi);
            entries.push(incidence(e + 1));
        }
        DecompositionMatrix { rows, entries }
    }

    pub fn num_columns(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Whether the leading square block is lower unitriangular.
    pub fn is_unitriangular(&self) -> bool {
        let e = self.num_columns();
        self.entries.len() >= e
            && (0..e).all(|i| self.entries[i][i] == 1 && (i + 1..e).all(|j| self.entries[i][j] == 0))
    }

    /// `D^T D`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let e = self.num_columns();
        (0..e)
            .map(|a| {
                (0..e)
                    .map(|b| self.entries.iter().map(|r| r[a] as i64 * r[b] as i64).sum())
                    .collect()
            })
            .collect()
    }
}

/// Determinant of the Cartan matrix, by fraction-free elimination.
pub fn cartan_determinant(matrix: &DecompositionMatrix) -> i128 {
    let mut a: Vec<Vec<i128>> = matrix
        .cartan()
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Irreducible Brauer characters on the p-regular classes, solved from
/// the leading unitriangular rows, then checked against every row.
pub fn derived_brauer_characters(
    table: &CharacterTable,
    p: u64,
    matrix: &DecompositionMatrix,
) -> Result<Vec<Vec<CycNum>>> {
    let restricted: Vec<Vec<CycNum>> = matrix
        .rows
        .iter()
        .map(|&c| table.restrict_to_p_regular(table.character(c), p))
        .collect();
    let cols = matrix.num_columns();
    let width = table.p_regular_classes(p).len();
    let combine = |row: &[u8], phis: &[Vec<CycNum>]| -> Vec<CycNum> {
        (0..width)
            .map(|k| {
                row.iter()
                    .zip(phis)
                    .filter(|(&d, _)| d != 0)
                    .map(|(&d, phi)| phi[k].mul_ref(&CycNum::from_int(d as i64)))
                    .sum()
            })
            .collect()
    };
    let mut phis: Vec<Vec<CycNum>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let below = combine(&matrix.entries[j][..j], &phis);
        let phi: Vec<CycNum> = restricted[j].iter().zip(&below).map(|(a, b)| a - b).collect();
        if !phi[0].to_integer().is_some_and(|d| d.is_positive()) {
            return Err(Error::NegativeDegree);
        }
        phis.push(phi);
    }
    for (row, res) in matrix.entries.iter().zip(&restricted) {
        if combine(row, &phis) != *res {
            return Err(Error::InternalInconsistency(
                "decomposition row does not reproduce the restricted character".into(),
            ));
        }
    }
    Ok(phis)
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum VertexId {
    Character(usize),
    Exceptional(&'static str),
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub label: usize,
    pub character: VertexId,
    pub members: Vec<usize>,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub label: usize,
    pub vertices: (usize, usize),
    pub brauer_degree: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixRow {
    pub character: usize,
    pub entries: Vec<u8>,
}

/// JSON view of a labeled tree and its decomposition matrix.
#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub inertial_index: usize,
    pub multiplicity: usize,
    pub vertices: Vec<VertexReport>,
    pub edges: Vec<EdgeReport>,
    pub matrix: Vec<MatrixRow>,
    pub cartan_determinant: i128,
}

impl TreeReport {
    pub fn matrix_rows(matrix: &DecompositionMatrix) -> Vec<MatrixRow> {
        matrix
            .rows
            .iter()
            .zip(&matrix.entries)
            .map(|(&character, entries)| MatrixRow {
                character,
                entries: entries.clone(),
            })
            .collect()
    }

    pub fn new(
        table: &CharacterTable,
        tree: &BrauerTree,
        labeled: &LabeledTree,
        matrix: &DecompositionMatrix,
        brauer: &[Vec<CycNum>],
    ) -> Self {
        let e = tree.non_exceptional.len();
        let vertices = labeled
            .by_label
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if v == e {
                    VertexReport {
                        label: i + 1,
                        character: VertexId::Exceptional("exceptional"),
                        members: tree.exceptional.clone(),
                        degree: table.degree(tree.exceptional[0]),
                    }
                } else {
                    let chi = tree.non_exceptional[v];
                    VertexReport {
                        label: i + 1,
                        character: VertexId::Character(chi),
                        members: vec![chi],
                        degree: table.degree(chi),
                    }
                }
            })
            .collect();
        let edges = labeled
            .edges
            .iter()
            .enumerate()
            .map(|(j, &pair)| EdgeReport {
                label: j + 1,
                vertices: pair,
                brauer_degree: brauer[j][0].to_i64().unwrap_or(0),
            })
            .collect();
        let rows = Self::matrix_rows(matrix);
        TreeReport {
            inertial_index: tree.non_exceptional.len(),
            multiplicity: tree.multiplicity,
            vertices,
            edges,
            matrix: rows,
            cartan_determinant: cartan_determinant(matrix),
        }
    }
}
