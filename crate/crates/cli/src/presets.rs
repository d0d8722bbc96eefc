//! Bundled experiment configurations, embedded at compile time so that
//! `specdim run <name>` works without a checkout of the configs directory.

pub const PRESETS: &[(&str, &str)] = &[
    (
        "sierpinski-dimension",
        include_str!("../../../configs/sierpinski-dimension.json"),
    ),
    (
        "bergman-commutator-n1",
        include_str!("../../../configs/bergman-commutator-n1.json"),
    ),
    (
        "bergman-commutator-full",
        include_str!("../../../configs/bergman-commutator-full.json"),
    ),
    (
        "hardy-commutator-triangle",
        include_str!("../../../configs/hardy-commutator-triangle.json"),
    ),
    (
        "hardy-commutator-square",
        include_str!("../../../configs/hardy-commutator-square.json"),
    ),
    (
        "bergman-dimension",
        include_str!("../../../configs/bergman-dimension.json"),
    ),
    (
        "disk-fractal-dimension",
        include_str!("../../../configs/disk-fractal-dimension.json"),
    ),
    (
        "conditions-all",
        include_str!("../../../configs/conditions-all.json"),
    ),
    (
        "zeta-sierpinski",
        include_str!("../../../configs/zeta-sierpinski.json"),
    ),
    (
        "attractor-sierpinski",
        include_str!("../../../configs/attractor-sierpinski.json"),
    ),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    PRESETS
        .iter()
        .find(|(preset, _)| *preset == name)
        .map(|(_, text)| *text)
}

pub fn names() -> Vec<&'static str> {
    PRESETS.iter().map(|(name, _)| *name).collect()
}
