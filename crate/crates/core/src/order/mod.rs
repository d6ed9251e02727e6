//! Highest weight orders on labels `(x, kappa)`, the shift action, the
//! pre-order attached to a compatible pair and translation of labels.

mod hw;
mod poset;
mod preorder;
mod translate;

pub use hw::{block_of, hw_order, phw_axiom_check, residues, PhwReport};
pub use poset::{shift, Label, LabeledPoset};
pub use preorder::{
    direct_classes, equivalence_classes, kappa0, order_compat_check, ss_preorder, ss_preorder_at,
    OrderCompatReport, PreOrder,
};
pub use translate::{
    integral_weights, interval_image, label_translate, preorder_independent, translated_preorder,
    weights,
};
