//! Certified dominator trees.
//!
//! Computes dominator trees of flow graphs together with a *low-high order*,
//! a vertex order that lets a short, linear-time checker confirm the tree is
//! correct. Also builds pairs of (strongly) independent spanning trees, loop
//! nesting forests, and a two-disjoint-paths query index.
//!
//! ```
//! use domcert::{certifier, lowhigh, semidom, FlowGraph};
//!
//! let g = FlowGraph::new(4, 0, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
//! let (d, _) = semidom::compute_dominator_tree(&g);
//! let lh = lowhigh::compute_lowhigh(&g, &d).unwrap();
//! let cert = certifier::DomCertificate::new(&d, &lh);
//! assert!(certifier::verify(&g, &cert).accepted());
//! ```

pub mod certifier;
pub mod cli;
pub mod derived;
pub mod format;
pub mod generators;
pub mod graph;
pub mod loop_forest;
pub mod lowhigh;
pub mod offline_list;
pub mod oracle;
pub mod paths;
pub mod semidom;
pub mod trees;

pub use certifier::{verify, DomCertificate, Verdict, Violation};
pub use graph::{dfs, DfsInfo, FlowGraph, GraphError, RootedTree, TreeError, VertexMap};
pub use lowhigh::LowHighOrder;
pub use semidom::{compute_dominator_tree, SemiDomInfo};
pub use trees::TreePair;
