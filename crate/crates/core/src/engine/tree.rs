use super::trace::PlayTrace;
use super::EngineError;
use crate::model::Instance;

/// Links of one element; element ids are one-based, `None` means the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeNode {
    /// The same boy's previous element.
    pub prior: Option<usize>,
    /// The element holding the prior girl when the boy lost her.
    pub direct_parent: Option<usize>,
    /// Every element proposing to the prior girl with a boy she prefers.
    pub parent_set: Vec<usize>,
    pub children: Vec<usize>,
}

/// Prior, parent and child links for every element of a naive trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProposalTree {
    nodes: Vec<TreeNode>,
    root_children: Vec<usize>,
}

impl ProposalTree {
    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id - 1]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root_children(&self) -> &[usize] {
        &self.root_children
    }

    /// Elements without children. Diagnostic only: this does not identify
    /// hopeless pairs in general.
    pub fn childless(&self) -> Vec<usize> {
        (1..=self.nodes.len()).filter(|&id| self.node(id).children.is_empty()).collect()
    }
}

/// Builds the proposal tree. Needs a naive trace with refusals recorded.
pub fn proposal_tree(inst: &Instance, trace: &PlayTrace) -> Result<ProposalTree, EngineError> {
    if !trace.naive || !trace.refusals_recorded {
        return Err(EngineError::NotNaive);
    }
    let els = &trace.elements;
    let n = inst.n();
    // Element holding each girl over time; which element ended each hold or
    // caused each refusal.
    let mut holding: Vec<Option<usize>> = vec![None; n];
    let mut lost_to: Vec<Option<usize>> = vec![None; els.len()];
    let mut to_girl: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in els.iter().enumerate() {
        to_girl[e.girl.0].push(i);
        if e.accepted {
            if let Some(prev) = holding[e.girl.0] {
                lost_to[prev] = Some(i);
            }
            holding[e.girl.0] = Some(i);
        } else {
            lost_to[i] = holding[e.girl.0];
        }
    }
    let mut nodes = vec![TreeNode::default(); els.len()];
    let mut root_children = Vec::new();
    let mut last_of_boy: Vec<Option<usize>> = vec![None; n];
    for (i, e) in els.iter().enumerate() {
        let prior = last_of_boy[e.boy.0].replace(i);
        if let Some(p) = prior {
            let g = els[p].girl;
            nodes[i].prior = Some(p + 1);
            nodes[i].direct_parent = lost_to[p].map(|x| x + 1);
            nodes[i].parent_set =
                to_girl[g.0].iter().filter(|&&x| inst.girl_prefers(g, els[x].boy, e.boy)).map(|&x| x + 1).collect();
        }
        match nodes[i].direct_parent {
            Some(d) => nodes[d - 1].children.push(i + 1),
            None => root_children.push(i + 1),
        }
    }
    Ok(ProposalTree { nodes, root_children })
}
