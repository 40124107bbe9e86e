//! Free dendriform algebra on a finite generator set.
//!
//! Basis: planar binary trees whose internal vertices are labeled by
//! generators. Writing a non-leaf tree as `t = t_l ∨_g t_r` (root label
//! `g`, left/right subtrees possibly leaves), the half-products are the
//! standard recursive splittings
//!
//! ```text
//! t ≺ s = t_l ∨_g (t_r ★ s)        t ≻ s = (t ★ s_l) ∨_h s_r
//! ```
//!
//! where the leaf acts as the unit of `★` inside the recursion. Products
//! of basis trees expand shuffle-like with degree, and the same subtree
//! products recur constantly inside series convolutions, so the algebra
//! context hash-conses every tree into a shared arena (`TreeId`) and
//! memoizes the three tree-pair products. A basis-tree product is always
//! a multiplicity-free sum of basis trees, which the memo exploits by
//! storing plain id lists; the `a^{★n}`-enumerates-all-trees test below
//! pins that fact.
//!
//! Elements are term maps `TreeId ↦ coefficient` with no explicit zeros,
//! so equality is structural for elements produced by one algebra (ids
//! are only meaningful relative to their arena — don't mix algebras).
//! Formatting reconstructs the trees and sorts them by the structural
//! preorder encoding, keeping text output independent of arena history.

use crate::dendriform::BodyAlgebra;
use crate::error::{DendError, Result};
use crate::rational::{parse_rational, rat_one, Rational};
use num::Zero;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

/// Index into a [`FreeAlgebra`]'s generator table.
pub type GenId = u32;

/// Arena handle of an interned tree; `LEAF` is the empty tree.
pub type TreeId = u32;

const LEAF: TreeId = 0;

/// Planar binary tree with labeled internal vertices: the explicit
/// structural form used by codecs, samplers, and tests. `Leaf` is the
/// unit of the internal `★` recursion and never appears as a basis
/// element on its own.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum PBTree {
    Leaf,
    Node(GenId, Box<PBTree>, Box<PBTree>),
}

impl PBTree {
    /// Single-vertex tree labeled by `g`.
    pub fn gen(g: GenId) -> PBTree {
        PBTree::Node(g, Box::new(PBTree::Leaf), Box::new(PBTree::Leaf))
    }

    pub fn node(g: GenId, l: PBTree, r: PBTree) -> PBTree {
        PBTree::Node(g, Box::new(l), Box::new(r))
    }

    /// Number of internal vertices.
    pub fn degree(&self) -> usize {
        match self {
            PBTree::Leaf => 0,
            PBTree::Node(_, l, r) => 1 + l.degree() + r.degree(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PBTree::Leaf)
    }
}

/// Arena + product memos shared by all clones of one algebra.
#[derive(Debug, Default)]
struct Tables {
    /// `nodes[id − 1] = (gen, left, right)`; id 0 is the leaf.
    nodes: Vec<(GenId, TreeId, TreeId)>,
    degrees: Vec<u32>,
    intern: HashMap<(GenId, TreeId, TreeId), TreeId>,
    memo_prec: HashMap<(TreeId, TreeId), Arc<[TreeId]>>,
    memo_succ: HashMap<(TreeId, TreeId), Arc<[TreeId]>>,
    memo_star: HashMap<(TreeId, TreeId), Arc<[TreeId]>>,
}

impl Tables {
    fn graft(&mut self, g: GenId, l: TreeId, r: TreeId) -> TreeId {
        if let Some(&id) = self.intern.get(&(g, l, r)) {
            return id;
        }
        let deg = 1 + self.degree(l) + self.degree(r);
        self.nodes.push((g, l, r));
        self.degrees.push(deg);
        let id = self.nodes.len() as TreeId;
        self.intern.insert((g, l, r), id);
        id
    }

    fn node(&self, id: TreeId) -> (GenId, TreeId, TreeId) {
        self.nodes[id as usize - 1]
    }

    fn degree(&self, id: TreeId) -> u32 {
        if id == LEAF {
            0
        } else {
            self.degrees[id as usize - 1]
        }
    }

    // t ★ s with the leaf as unit; both half-products when both sides
    // are proper trees.
    fn star(&mut self, t: TreeId, s: TreeId) -> Arc<[TreeId]> {
        if t == LEAF {
            return Arc::from([s]);
        }
        if s == LEAF {
            return Arc::from([t]);
        }
        if let Some(v) = self.memo_star.get(&(t, s)) {
            return v.clone();
        }
        let mut out: Vec<TreeId> = self.prec(t, s).to_vec();
        out.extend_from_slice(&self.succ(t, s));
        let arc: Arc<[TreeId]> = out.into();
        self.memo_star.insert((t, s), arc.clone());
        arc
    }

    // t ≺ s = t_l ∨_g (t_r ★ s); both arguments proper trees.
    fn prec(&mut self, t: TreeId, s: TreeId) -> Arc<[TreeId]> {
        if let Some(v) = self.memo_prec.get(&(t, s)) {
            return v.clone();
        }
        let (g, tl, tr) = self.node(t);
        let mids = self.star(tr, s);
        let out: Vec<TreeId> = mids.iter().map(|&m| self.graft(g, tl, m)).collect();
        let arc: Arc<[TreeId]> = out.into();
        self.memo_prec.insert((t, s), arc.clone());
        arc
    }

    // t ≻ s = (t ★ s_l) ∨_h s_r; both arguments proper trees.
    fn succ(&mut self, t: TreeId, s: TreeId) -> Arc<[TreeId]> {
        if let Some(v) = self.memo_succ.get(&(t, s)) {
            return v.clone();
        }
        let (h, sl, sr) = self.node(s);
        let mids = self.star(t, sl);
        let out: Vec<TreeId> = mids.iter().map(|&m| self.graft(h, m, sr)).collect();
        let arc: Arc<[TreeId]> = out.into();
        self.memo_succ.insert((t, s), arc.clone());
        arc
    }
}

/// Element of the free algebra: finite linear combination of basis trees,
/// keyed by arena id.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<TreeId, Rational>,
}

impl FreeElement {
    pub fn zero() -> FreeElement {
        FreeElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Raw `(arena id, coefficient)` view; pair with the owning algebra
    /// to recover tree shapes.
    pub fn term_ids(&self) -> impl Iterator<Item = (TreeId, &Rational)> {
        self.terms.iter().map(|(&t, c)| (t, c))
    }

    fn accumulate(&mut self, t: TreeId, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

/// The free dendriform algebra context: generator names plus the shared
/// tree arena. Clones share the arena, so elements stay comparable.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    gen_names: Vec<String>,
    tables: Arc<Mutex<Tables>>,
}

impl FreeAlgebra {
    pub fn new(gens: &[&str]) -> FreeAlgebra {
        FreeAlgebra {
            gen_names: gens.iter().map(|s| s.to_string()).collect(),
            tables: Arc::new(Mutex::new(Tables::default())),
        }
    }

    /// Free algebra on `k` generators named `a, b, c, ...`.
    pub fn with_k_generators(k: usize) -> FreeAlgebra {
        assert!(k >= 1 && k <= 26, "generator count out of range");
        let names: Vec<String> = (0..k)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        FreeAlgebra::new(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>())
    }

    pub fn num_generators(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.gen_names[g as usize]
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.gen_names.iter().position(|n| n == name).map(|i| i as GenId)
    }

    /// The degree-1 basis element for generator `g`.
    pub fn generator(&self, g: GenId) -> FreeElement {
        assert!((g as usize) < self.gen_names.len(), "unknown generator");
        self.element_from_terms([(PBTree::gen(g), rat_one())])
    }

    /// Intern a structural tree into the arena.
    pub fn intern_tree(&self, t: &PBTree) -> TreeId {
        fn go(tables: &mut Tables, t: &PBTree) -> TreeId {
            match t {
                PBTree::Leaf => LEAF,
                PBTree::Node(g, l, r) => {
                    let li = go(tables, l);
                    let ri = go(tables, r);
                    tables.graft(*g, li, ri)
                }
            }
        }
        go(&mut self.tables.lock().unwrap(), t)
    }

    /// Reconstruct the structural tree behind an arena id.
    pub fn extern_tree(&self, id: TreeId) -> PBTree {
        fn go(tables: &Tables, id: TreeId) -> PBTree {
            if id == LEAF {
                return PBTree::Leaf;
            }
            let (g, l, r) = tables.node(id);
            PBTree::node(g, go(tables, l), go(tables, r))
        }
        go(&self.tables.lock().unwrap(), id)
    }

    pub fn element_from_terms(
        &self,
        terms: impl IntoIterator<Item = (PBTree, Rational)>,
    ) -> FreeElement {
        let mut tables = self.tables.lock().unwrap();
        let mut e = FreeElement::zero();
        for (t, c) in terms {
            fn go(tables: &mut Tables, t: &PBTree) -> TreeId {
                match t {
                    PBTree::Leaf => LEAF,
                    PBTree::Node(g, l, r) => {
                        let li = go(tables, l);
                        let ri = go(tables, r);
                        tables.graft(*g, li, ri)
                    }
                }
            }
            let id = go(&mut tables, &t);
            e.accumulate(id, c);
        }
        e
    }

    /// Structural view of an element, sorted by the canonical preorder
    /// tree encoding (independent of arena history).
    pub fn terms_of(&self, e: &FreeElement) -> Vec<(PBTree, Rational)> {
        let mut out: Vec<(PBTree, Rational)> = e
            .term_ids()
            .map(|(t, c)| (self.extern_tree(t), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn tree_degree(&self, id: TreeId) -> usize {
        self.tables.lock().unwrap().degree(id) as usize
    }

    /// Largest degree among the basis trees present (0 for zero).
    pub fn max_degree(&self, e: &FreeElement) -> usize {
        let tables = self.tables.lock().unwrap();
        e.term_ids().map(|(t, _)| tables.degree(t) as usize).max().unwrap_or(0)
    }

    /// True when every term has the same degree `d`.
    pub fn is_homogeneous(&self, e: &FreeElement, d: usize) -> bool {
        let tables = self.tables.lock().unwrap();
        e.term_ids().all(|(t, _)| tables.degree(t) as usize == d)
    }

    fn bilinear(
        &self,
        x: &FreeElement,
        y: &FreeElement,
        op: fn(&mut Tables, TreeId, TreeId) -> Arc<[TreeId]>,
    ) -> FreeElement {
        let mut tables = self.tables.lock().unwrap();
        let mut out = FreeElement::zero();
        for (t, ct) in x.term_ids() {
            for (s, cs) in y.term_ids() {
                let ids = op(&mut tables, t, s);
                let c = ct * cs;
                let mut it = ids.iter().peekable();
                while let Some(&id) = it.next() {
                    // last use moves the coefficient
                    if it.peek().is_some() {
                        out.accumulate(id, c.clone());
                    } else {
                        out.accumulate(id, c);
                        break;
                    }
                }
            }
        }
        out
    }
}

impl BodyAlgebra for FreeAlgebra {
    type Body = FreeElement;

    fn bzero(&self) -> FreeElement {
        FreeElement::zero()
    }

    fn bis_zero(&self, x: &FreeElement) -> bool {
        x.is_zero()
    }

    fn badd(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        let mut out = x.clone();
        for (t, c) in y.term_ids() {
            out.accumulate(t, c.clone());
        }
        out
    }

    fn bneg(&self, x: &FreeElement) -> FreeElement {
        FreeElement {
            terms: x.terms.iter().map(|(&t, c)| (t, -c.clone())).collect(),
        }
    }

    fn bscale(&self, c: &Rational, x: &FreeElement) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: x.terms.iter().map(|(&t, k)| (t, c * k)).collect(),
        }
    }

    fn bprec(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        self.bilinear(x, y, Tables::prec)
    }

    fn bsucc(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        self.bilinear(x, y, Tables::succ)
    }
}

// ---------------------------------------------------------------------------
// Text codec: trees as `(L g R)` with `.` for leaves; elements as
// `±p/q·(tree)` terms joined by ` + ` in canonical term order.
// ---------------------------------------------------------------------------

impl FreeAlgebra {
    pub fn format_tree(&self, t: &PBTree) -> String {
        let mut s = String::new();
        self.write_tree(t, &mut s);
        s
    }

    fn write_tree(&self, t: &PBTree, out: &mut String) {
        match t {
            PBTree::Leaf => out.push('.'),
            PBTree::Node(g, l, r) => {
                out.push('(');
                self.write_tree(l, out);
                let _ = write!(out, " {} ", self.gen_name(*g));
                self.write_tree(r, out);
                out.push(')');
            }
        }
    }

    pub fn format_element(&self, e: &FreeElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(e.num_terms());
        for (t, c) in self.terms_of(e) {
            parts.push(format!(
                "{}·{}",
                crate::rational::format_signed(&c),
                self.format_tree(&t)
            ));
        }
        parts.join(" + ")
    }

    pub fn parse_tree(&self, s: &str) -> Result<PBTree> {
        let mut toks = tokenize(s);
        let t = self.parse_tree_tokens(&mut toks)?;
        if toks.next().is_some() {
            return Err(DendError::ParseError(format!("trailing input in tree `{s}`")));
        }
        Ok(t)
    }

    fn parse_tree_tokens<'a>(&self, toks: &mut impl Iterator<Item = Tok<'a>>) -> Result<PBTree> {
        match toks.next() {
            Some(Tok::Dot) => Ok(PBTree::Leaf),
            Some(Tok::Open) => {
                let l = self.parse_tree_tokens(toks)?;
                let g = match toks.next() {
                    Some(Tok::Word(w)) => self
                        .gen_id(w)
                        .ok_or_else(|| DendError::ParseError(format!("unknown generator `{w}`")))?,
                    other => {
                        return Err(DendError::ParseError(format!(
                            "expected generator label, got {other:?}"
                        )))
                    }
                };
                let r = self.parse_tree_tokens(toks)?;
                match toks.next() {
                    Some(Tok::Close) => Ok(PBTree::node(g, l, r)),
                    other => Err(DendError::ParseError(format!("expected `)`, got {other:?}"))),
                }
            }
            Some(Tok::Word(w)) => {
                // bare generator name as degree-1 shorthand
                let g = self
                    .gen_id(w)
                    .ok_or_else(|| DendError::ParseError(format!("unknown generator `{w}`")))?;
                Ok(PBTree::gen(g))
            }
            other => Err(DendError::ParseError(format!("expected tree, got {other:?}"))),
        }
    }

    /// Parse an element: `0`, or terms `[±p/q·]tree` joined by `+`/`-`.
    /// Bare generator names stand for their degree-1 trees.
    pub fn parse_element(&self, s: &str) -> Result<FreeElement> {
        let s = s.trim();
        if s == "0" {
            return Ok(FreeElement::zero());
        }
        let mut terms = Vec::new();
        for (sign, term) in split_signed_terms(s)? {
            let term = term.trim();
            if term.is_empty() {
                return Err(DendError::ParseError("empty term".into()));
            }
            let (coeff, tree_src) = match term.split_once('·') {
                Some((c, t)) => {
                    let c = parse_rational(c.trim()).ok_or_else(|| {
                        DendError::ParseError(format!("bad coefficient `{c}`"))
                    })?;
                    (c, t.trim())
                }
                None => (rat_one(), term),
            };
            let tree = self.parse_tree(tree_src)?;
            terms.push((tree, if sign { -coeff } else { coeff }));
        }
        Ok(self.element_from_terms(terms))
    }
}

#[derive(Debug)]
enum Tok<'a> {
    Open,
    Close,
    Dot,
    Word(&'a str),
}

fn tokenize(s: &str) -> impl Iterator<Item = Tok<'_>> {
    let mut toks = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
        } else if c == '(' {
            toks.push(Tok::Open);
            rest = &rest[1..];
        } else if c == ')' {
            toks.push(Tok::Close);
            rest = &rest[1..];
        } else if c == '.' {
            toks.push(Tok::Dot);
            rest = &rest[1..];
        } else {
            let end = rest
                .find(|ch: char| ch.is_whitespace() || ch == '(' || ch == ')' || ch == '.')
                .unwrap_or(rest.len());
            toks.push(Tok::Word(&rest[..end]));
            rest = &rest[end..];
        }
    }
    toks.into_iter()
}

/// Split `t1 + t2 - t3` into `(negated?, term)` pairs. `·`-attached signs
/// inside coefficients are handled by the rational parser.
fn split_signed_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut parts = Vec::new();
    let mut start = 0usize;
    let mut neg = false;
    let bytes = s.as_bytes();
    let mut i = 0usize;
    let mut depth = 0i32;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start => {
                // a sign splits terms only when surrounded by whitespace
                let prev_ws = bytes[i - 1].is_ascii_whitespace();
                let next_ws = i + 1 < bytes.len() && bytes[i + 1].is_ascii_whitespace();
                if prev_ws && next_ws {
                    parts.push((neg, &s[start..i]));
                    neg = bytes[i] == b'-';
                    start = i + 1;
                }
            }
            _ => {}
        }
        i += 1;
    }
    if depth != 0 {
        return Err(DendError::ParseError("unbalanced parentheses".into()));
    }
    parts.push((neg, &s[start..]));
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendriform::{prelie_left, Augmented, Dendriform};
    use crate::rational::rat;

    fn alg3() -> Augmented<FreeAlgebra> {
        Augmented(FreeAlgebra::new(&["a", "b", "c"]))
    }

    #[test]
    fn single_generator_products() {
        let f = FreeAlgebra::new(&["a"]);
        let a = f.generator(0);
        // a ≺ a = (. a (. a .)),  a ≻ a = ((. a .) a .)
        let prec = f.bprec(&a, &a);
        let succ = f.bsucc(&a, &a);
        assert_eq!(f.format_element(&prec), "+1·(. a (. a .))");
        assert_eq!(f.format_element(&succ), "+1·((. a .) a .)");
    }

    #[test]
    fn star_powers_enumerate_planar_binary_trees() {
        // a^{★n} is the sum of all C_n planar binary trees, coefficient 1
        let f = FreeAlgebra::new(&["a"]);
        let a = f.generator(0);
        let star = |x: &FreeElement, y: &FreeElement| f.badd(&f.bprec(x, y), &f.bsucc(x, y));
        let mut pow = a.clone();
        for (n, catalan) in [(2usize, 2usize), (3, 5), (4, 14), (5, 42)] {
            pow = star(&pow, &a);
            assert_eq!(pow.num_terms(), catalan);
            assert!(f.is_homogeneous(&pow, n));
            assert!(pow.term_ids().all(|(_, c)| *c == rat(1, 1)));
        }
        // right combs multiply sparsely: R_p ★ R_q has p + 1 terms
        let a2 = f.bprec(&a, &a);
        let a3 = f.bprec(&a, &a2);
        assert_eq!(star(&a2, &a3).num_terms(), 3);
        assert_eq!(star(&a3, &a3).num_terms(), 4);
    }

    #[test]
    fn dendriform_axioms_on_random_elements() {
        let alg = alg3();
        let f = alg.body_alg().clone();
        let mut rng = crate::rng::SplitMix64::new(7);
        for _ in 0..60 {
            let x = alg.lift(rng.free_element(&f, 3, 2));
            let y = alg.lift(rng.free_element(&f, 3, 2));
            let z = alg.lift(rng.free_element(&f, 3, 2));
            // (x≺y)≺z = x≺(y★z)
            let l1 = alg.prec(&alg.prec(&x, &y).unwrap(), &z).unwrap();
            let r1 = alg.prec(&x, &alg.star(&y, &z).unwrap()).unwrap();
            assert_eq!(l1, r1);
            // (x≻y)≺z = x≻(y≺z)
            let l2 = alg.prec(&alg.succ(&x, &y).unwrap(), &z).unwrap();
            let r2 = alg.succ(&x, &alg.prec(&y, &z).unwrap()).unwrap();
            assert_eq!(l2, r2);
            // x≻(y≻z) = (x★y)≻z
            let l3 = alg.succ(&x, &alg.succ(&y, &z).unwrap()).unwrap();
            let r3 = alg.succ(&alg.star(&x, &y).unwrap(), &z).unwrap();
            assert_eq!(l3, r3);
        }
    }

    #[test]
    fn grading_is_additive() {
        let f = FreeAlgebra::new(&["a", "b"]);
        let mut rng = crate::rng::SplitMix64::new(40);
        for _ in 0..20 {
            let x = rng.free_element(&f, 2, 3);
            let y = rng.free_element(&f, 2, 3);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let dx = f.max_degree(&x);
            let dy = f.max_degree(&y);
            // homogeneous inputs only
            if !f.is_homogeneous(&x, dx) || !f.is_homogeneous(&y, dy) {
                continue;
            }
            let p = f.bprec(&x, &y);
            assert!(f.is_homogeneous(&p, dx + dy));
        }
    }

    #[test]
    fn left_prelie_identity() {
        let alg = alg3();
        let f = alg.body_alg().clone();
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..40 {
            let x = alg.lift(rng.free_element(&f, 2, 2));
            let y = alg.lift(rng.free_element(&f, 2, 2));
            let z = alg.lift(rng.free_element(&f, 2, 2));
            let assoc = |u: &_, v: &_, w: &_| -> crate::error::Result<_> {
                Ok(alg.sub(
                    &prelie_left(&alg, &prelie_left(&alg, u, v)?, w)?,
                    &prelie_left(&alg, u, &prelie_left(&alg, v, w)?)?,
                ))
            };
            let lhs = assoc(&x, &y, &z).unwrap();
            let rhs = assoc(&y, &x, &z).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn interning_is_stable_under_round_trips() {
        let f = FreeAlgebra::new(&["a", "b"]);
        let a = f.generator(0);
        let b = f.generator(1);
        let p = f.bprec(&f.bsucc(&a, &b), &a);
        for (tree, _) in f.terms_of(&p) {
            let id = f.intern_tree(&tree);
            assert_eq!(f.extern_tree(id), tree);
            assert_eq!(f.tree_degree(id), tree.degree());
        }
    }

    #[test]
    fn tree_text_round_trip() {
        let f = FreeAlgebra::new(&["a", "b"]);
        for src in [".", "(. a .)", "((. a .) b .)", "(. b ((. a .) a .))"] {
            let t = f.parse_tree(src).unwrap();
            assert_eq!(f.format_tree(&t), src);
        }
        assert!(f.parse_tree("(. z .)").is_err());
        assert!(f.parse_tree("(. a").is_err());
    }

    #[test]
    fn element_text_round_trip() {
        let f = FreeAlgebra::new(&["a", "b"]);
        let a = f.generator(0);
        let b = f.generator(1);
        let e = f.badd(
            &f.bscale(&rat(-1, 3), &f.bprec(&a, &b)),
            &f.bscale(&rat(2, 1), &b),
        );
        let s = f.format_element(&e);
        let back = f.parse_element(&s).unwrap();
        assert_eq!(back, e);
        // shorthand: bare generator names
        assert_eq!(f.parse_element("a").unwrap(), a);
        assert_eq!(
            f.parse_element("2·a + -1/2·b").unwrap(),
            f.badd(&f.bscale(&rat(2, 1), &a), &f.bscale(&rat(-1, 2), &b))
        );
        assert_eq!(f.parse_element("a - b").unwrap(), f.badd(&a, &f.bneg(&b)));
        assert_eq!(f.parse_element("0").unwrap(), FreeElement::zero());
    }
}
