//! Shipped group specifications.

use crate::error::{Error, Result};
use crate::specfile::{AnyGroup, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub source: &'static str,
    /// Expected outcome of the isometric check (HNN presets only).
    pub isometric: Option<bool>,
    /// Preset naming the base group, used for fellow-traveller constants.
    pub base: &'static str,
}

pub const PRESETS: [Preset; 5] = [
    Preset { name: "wise", source: include_str!("../presets/wise.hnn"), isometric: Some(true), base: "z2_abcd" },
    Preset { name: "g2", source: include_str!("../presets/g2.hnn"), isometric: Some(true), base: "f2" },
    Preset { name: "z2_abcd", source: include_str!("../presets/z2_abcd.hnn"), isometric: None, base: "z2_abcd" },
    Preset { name: "z2_ab", source: include_str!("../presets/z2_ab.hnn"), isometric: None, base: "z2_ab" },
    Preset { name: "f2", source: include_str!("../presets/f2.hnn"), isometric: None, base: "f2" },
];

pub fn preset_info(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| Error::UnknownPreset {
        name: name.to_string(),
        valid: PRESETS.iter().map(|p| p.name).collect::<Vec<_>>().join(", "),
    })
}

pub fn preset_spec(name: &str) -> Result<GroupSpec> {
    GroupSpec::parse(preset_info(name)?.source)
}

pub fn preset(name: &str, element_cap: usize) -> Result<AnyGroup> {
    preset_spec(name)?.build(element_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::DEFAULT_ELEMENT_CAP;

    #[test]
    fn presets_load_and_round_trip() {
        for p in &PRESETS {
            let spec = preset_spec(p.name).unwrap();
            assert_eq!(GroupSpec::parse(&spec.to_text()).unwrap(), spec, "{}", p.name);
            let g = preset(p.name, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(g.is_hnn(), p.isometric.is_some());
            assert!(preset_info(p.base).unwrap().isometric.is_none());
        }
    }

    #[test]
    fn unknown_preset_lists_names() {
        match preset("wize", 10) {
            Err(Error::UnknownPreset { name, valid }) => {
                assert_eq!(name, "wize");
                assert_eq!(valid, "wise, g2, z2_abcd, z2_ab, f2");
            }
            _ => panic!("expected an error"),
        }
    }

    #[test]
    fn isometric_status_matches_documentation() {
        for p in PRESETS.iter().filter(|p| p.isometric.is_some()) {
            let ok = match preset(p.name, DEFAULT_ELEMENT_CAP).unwrap() {
                AnyGroup::HnnAbelian(g) => g.verify_isometric(6).pass(),
                AnyGroup::HnnFree(g) => g.verify_isometric(6).pass(),
                _ => unreachable!(),
            };
            assert_eq!(Some(ok), p.isometric, "{}", p.name);
        }
    }
}
