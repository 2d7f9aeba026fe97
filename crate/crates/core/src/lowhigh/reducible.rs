use super::{check_size, ChildListBuilder, LowHighError, LowHighOrder, RelTest};
use crate::derived::compute_derived;
use crate::graph::{traverse, FlowGraph, RootedTree};

/// Low-high order of a reducible flow graph.
///
/// Vertices are placed in topological order of the graph with arcs into
/// dominators removed. A vertex without an arc from its parent goes next to
/// one sibling `u'`, on the side away from another sibling `w'`, both taken
/// from its derived entering arcs.
pub fn lowhigh_reducible(g: &FlowGraph, d: &RootedTree) -> Result<LowHighOrder, LowHighError> {
    check_size(g, d)?;
    let derived = compute_derived(g, d)?;
    let residual = traverse(g, |a| derived.inverse(a).is_some());
    if residual.saw_back_arc {
        return Err(LowHighError::NotReducible);
    }
    let mut lists = ChildListBuilder::new(d);
    for &v in residual.postorder.iter().rev() {
        let Some(p) = d.parent(v) else { continue };
        if g.has_arc(p, v) {
            lists.insert_first(v);
            continue;
        }
        let mut tails = g.in_arcs(v).iter().filter_map(|&a| derived.tail_of(a));
        let u = tails.next().ok_or(LowHighError::MissingWitnessArcs(v))?;
        let w = tails
            .find(|&w| w != u)
            .ok_or(LowHighError::MissingWitnessArcs(v))?;
        lists.insert_rel(v, u, RelTest::After(w, u))?;
    }
    Ok(lists.finish()?)
}
