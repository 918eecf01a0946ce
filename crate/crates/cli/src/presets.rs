//! Bundled presentations, written in the link-file grammar.

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset { name: "s3", summary: "empty link: the 3-sphere", text: "" },
    Preset { name: "s3-u+1", summary: "+1-framed unknot: the 3-sphere again", text: "cup 0\ncap 0\nframing 0=1\n" },
    Preset { name: "s1xs2", summary: "0-framed unknot: S1 x S2", text: "cup 0\ncap 0\nframing 0=0\n" },
    Preset {
        name: "lens-p",
        summary: "p-framed unknot: the lens space L(p,1); use lens-<p>, e.g. lens-5 or lens--2",
        text: "",
    },
    Preset {
        name: "poincare",
        summary: "(-1)-framed left-handed trefoil: the Poincaré homology sphere",
        text: "braid 2 : S1 S1 S1\nframing 0=-1\n",
    },
    Preset { name: "s4", summary: "empty special link: the 4-sphere", text: "" },
    Preset {
        name: "s4-hopf",
        summary: "special Hopf link: the 4-sphere",
        text: "braid 2 : s1 s1\nframing 0=0\nframing 1=0\nspecial 1\n",
    },
    Preset { name: "cp2", summary: "+1-framed ordinary unknot: CP2", text: "cup 0\ncap 0\nframing 0=1\n" },
    Preset { name: "cp2bar", summary: "(-1)-framed ordinary unknot: CP2 with reversed orientation", text: "cup 0\ncap 0\nframing 0=-1\n" },
    Preset {
        name: "s2xs2",
        summary: "0-framed Hopf link, both ordinary: S2 x S2",
        text: "braid 2 : s1 s1\nframing 0=0\nframing 1=0\n",
    },
    Preset {
        name: "cp2#cp2bar",
        summary: "split +1- and (-1)-framed unknots: CP2 # CP2bar",
        text: "cup 0\ncap 0\ncup 0\ncap 0\nframing 0=1\nframing 1=-1\n",
    },
    Preset { name: "s1xs3", summary: "one special unknot: S1 x S3", text: "cup 0\ncap 0\nframing 0=0\nspecial 0\n" },
];

/// Link-file text of a preset, or `None` if the name is unknown.
pub fn preset_text(name: &str) -> Option<String> {
    if let Some(p) = name.strip_prefix("lens-") {
        let p: i64 = p.parse().ok()?;
        return Some(format!("link lens-{p}\ncup 0\ncap 0\nframing 0={p}\n"));
    }
    PRESETS
        .iter()
        .find(|p| p.name == name && p.name != "lens-p")
        .map(|p| format!("link {}\n{}", p.name, p.text))
}
