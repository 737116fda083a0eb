//! Graphic and cographic matrices, R10, and decomposition trees of good
//! matroids.

mod graph;
mod parse;
mod r10;
mod tree;

pub use graph::{cographic_standard_repr, graphic_standard_repr, incidence_matrix, is_node_incidence, Digraph, Edge, RegularRepr};
pub use parse::{frame_to_text, parse_frame, parse_good_tree, parse_good_tree_file, parse_graph};
pub use r10::{r10, r10_col_labels, r10_row_labels, R10Cert};
pub use tree::{eval_good_tree, validate_good_tree, GoodTree, Leaf};
