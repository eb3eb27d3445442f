//! Satisfiability by type elimination.
//!
//! A type fixes the propositions, the combined knowledge profile and one
//! truth bit per boxed subformula; every other subformula's value follows.
//! A type survives if, for each modality `[M]a`, either `a knows M` in the
//! type and its box bits agree with their bodies in the type itself (the
//! forced self-loop), or some surviving type where `a knows M` has body
//! values matching the box bits. Surviving types, with those witnesses as
//! successors, form an interface-valid model, and the types realized by any
//! model survive. So the formula is satisfiable iff some surviving type
//! makes it true.

use std::collections::{HashMap, VecDeque};

use crate::model::program::{Node, Program};
use crate::model::{FiniteModel, SearchSpace};

/// Largest type space searched.
pub const MAX_TYPES: usize = 1 << 22;

pub(crate) struct Eliminated {
    pub model: FiniteModel,
    pub state: usize,
}

struct Types<'a> {
    space: &'a SearchSpace,
    prop_bits: usize,
    box_bits: usize,
    /// Node id of each box.
    boxes: Vec<usize>,
    /// Boxes of each modality, as a mask over `boxes`.
    mod_mask: Vec<u64>,
}

impl Types<'_> {
    fn count(&self) -> usize {
        self.space.profile_count() << (self.prop_bits + self.box_bits)
    }

    fn split(&self, t: usize) -> (usize, u64, u64) {
        let bb = (t & ((1 << self.box_bits) - 1)) as u64;
        let rest = t >> self.box_bits;
        let pm = (rest & ((1 << self.prop_bits) - 1)) as u64;
        (rest >> self.prop_bits, pm, bb)
    }

    fn knows(&self, c: usize, mu: usize) -> bool {
        self.space.combined[c] >> self.space.mod_katom[mu] & 1 == 1
    }
}

/// Returns the node values of type `t`, reusing `vals`.
fn values(prog: &Program, types: &Types, box_index: &[usize], t: usize, vals: &mut Vec<bool>) {
    let (c, pm, bb) = types.split(t);
    let know = types.space.combined[c];
    vals.clear();
    for (i, node) in prog.nodes.iter().enumerate() {
        let v = match *node {
            Node::Prop(p) => pm >> p & 1 == 1,
            Node::Know(k) => know >> k & 1 == 1,
            Node::Not(x) => !vals[x],
            Node::And(l, r) => vals[l] && vals[r],
            Node::Box(..) => bb >> box_index[i] & 1 == 1,
        };
        vals.push(v);
    }
}

/// `Ok(None)` if `root` is unsatisfiable; `Err` with a reason if the type
/// space is too large.
pub(crate) fn eliminate(space: &SearchSpace, prog: &Program, root: usize) -> Result<Option<Eliminated>, String> {
    let boxes: Vec<usize> = (0..prog.nodes.len()).filter(|&i| matches!(prog.nodes[i], Node::Box(..))).collect();
    if boxes.len() > 60 || space.props.len() > 60 {
        return Err(format!("{} boxed subformulas and {} propositions", boxes.len(), space.props.len()));
    }
    let mut box_index = vec![usize::MAX; prog.nodes.len()];
    let mut mod_mask = vec![0u64; space.modalities.len()];
    for (j, &n) in boxes.iter().enumerate() {
        box_index[n] = j;
        if let Node::Box(mu, _) = prog.nodes[n] {
            mod_mask[mu] |= 1 << j;
        }
    }
    let types = Types { space, prop_bits: space.props.len(), box_bits: boxes.len(), boxes, mod_mask };
    let total = space
        .profile_count()
        .checked_shl((types.prop_bits + types.box_bits) as u32)
        .filter(|&n| n >> (types.prop_bits + types.box_bits) == space.profile_count() && n <= MAX_TYPES)
        .ok_or_else(|| format!("more than {MAX_TYPES} types"))?;
    debug_assert_eq!(total, types.count());

    // Per type: body bits (bit j = value of box j's body) and root truth.
    let mut body = vec![0u64; total];
    let mut holds = vec![false; total];
    let mut alive = vec![true; total];
    let mut vals = Vec::new();
    for t in 0..total {
        values(prog, &types, &box_index, t, &mut vals);
        let mut bits = 0u64;
        for (j, &n) in types.boxes.iter().enumerate() {
            if let Node::Box(_, b) = prog.nodes[n] {
                if vals[b] {
                    bits |= 1 << j;
                }
            }
        }
        body[t] = bits;
        holds[t] = vals[root];
        let (c, _, bb) = types.split(t);
        for (mu, &mask) in types.mod_mask.iter().enumerate() {
            if types.knows(c, mu) && bb & mask != bits & mask {
                alive[t] = false;
            }
        }
    }

    // Witness tables: for each modality, body signature -> first surviving knower.
    let witnesses = |alive: &[bool]| -> Vec<HashMap<u64, usize>> {
        (0..space.modalities.len())
            .map(|mu| {
                let mut table = HashMap::new();
                for t in (0..total).filter(|&t| alive[t] && types.knows(types.split(t).0, mu)) {
                    table.entry(body[t] & types.mod_mask[mu]).or_insert(t);
                }
                table
            })
            .collect()
    };
    let mut table = witnesses(&alive);
    loop {
        let mut changed = false;
        for (t, live) in alive.iter_mut().enumerate().filter(|(_, l)| **l) {
            let (c, _, bb) = types.split(t);
            let ok = (0..space.modalities.len())
                .all(|mu| types.knows(c, mu) || table[mu].contains_key(&(bb & types.mod_mask[mu])));
            if !ok {
                *live = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        table = witnesses(&alive);
    }

    let Some(start) = (0..total).find(|&t| alive[t] && holds[t]) else { return Ok(None) };

    // Generated submodel from `start`.
    let mut order = vec![start];
    let mut index: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let (c, _, bb) = types.split(t);
        let mut out = Vec::new();
        for mu in 0..space.modalities.len() {
            let target = if types.knows(c, mu) { t } else { table[mu][&(bb & types.mod_mask[mu])] };
            let next = order.len();
            let s = *index.entry(target).or_insert_with(|| {
                order.push(target);
                queue.push_back(target);
                next
            });
            out.push(s);
        }
        edges.push(out);
    }

    let mut model = FiniteModel::with_states(order.len()).with_closure(space.closure);
    for p in &space.props {
        model.declare_prop(p.clone());
    }
    for (s, &t) in order.iter().enumerate() {
        let (c, pm, _) = types.split(t);
        for (agent, base) in space.bases_of(c) {
            model.set_base(agent, s, base).expect("state in range");
        }
        for (i, p) in space.props.iter().enumerate() {
            if pm >> i & 1 == 1 {
                model.set_prop(p.clone(), s, true).expect("state in range");
            }
        }
        for (mu, modality) in space.modalities.iter().enumerate() {
            model.add_edge(modality, s, edges[s][mu]).expect("state in range");
        }
    }
    Ok(Some(Eliminated { model, state: 0 }))
}
