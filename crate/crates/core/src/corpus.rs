//! Reference fragments shipped with the library, stored as golden JSON
//! under `corpus/`.

use crate::frieze::Fragment;

const ENTRIES: &[(&str, &str)] = &[
    ("width1", include_str!("../corpus/width1.json")),
    ("width2_a", include_str!("../corpus/width2_a.json")),
    ("width2_b", include_str!("../corpus/width2_b.json")),
    ("width2_c", include_str!("../corpus/width2_c.json")),
    ("width2_d", include_str!("../corpus/width2_d.json")),
    ("width2_e", include_str!("../corpus/width2_e.json")),
    ("width3_glued", include_str!("../corpus/width3_glued.json")),
    ("width4_glued", include_str!("../corpus/width4_glued.json")),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

/// The stored JSON text of a corpus entry.
pub fn raw(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn get(name: &str) -> Option<Fragment> {
    raw(name).map(|t| Fragment::from_json(t).expect("corpus entries are well formed"))
}

/// Every entry, in a fixed order.
pub fn all() -> Vec<(&'static str, Fragment)> {
    ENTRIES
        .iter()
        .map(|(n, t)| (*n, Fragment::from_json(t).expect("corpus entries are well formed")))
        .collect()
}
