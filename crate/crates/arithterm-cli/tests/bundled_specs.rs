//! The bundled spec files are the data-file image of the gallery pipeline:
//! each must parse back to exactly what `spec_of` builds, so the compiler
//! path stays the single source of truth. Set REGEN_BUNDLED_SPECS=1 to
//! rewrite them after an intentional pipeline change.

use std::path::PathBuf;

use arithterm::compiler::{read_spec, write_spec};
use arithterm::gallery::{spec_of, GalleryFn};

fn bundled() -> Vec<(&'static str, GalleryFn)> {
    vec![
        ("tau", GalleryFn::Tau),
        ("sigma", GalleryFn::Sigma),
        ("phi", GalleryFn::Phi),
        ("inv", GalleryFn::Inv),
        ("sqrt", GalleryFn::Sqrt),
        ("log", GalleryFn::Log),
        ("ord", GalleryFn::Ord),
        ("dlog", GalleryFn::Dlog),
        ("root2", GalleryFn::Root(2)),
        ("root3", GalleryFn::Root(3)),
    ]
}

fn spec_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs")
}

#[test]
fn bundled_specs_match_the_pipeline() {
    let dir = spec_dir();
    if std::env::var("REGEN_BUNDLED_SPECS").as_deref() == Ok("1") {
        std::fs::create_dir_all(&dir).unwrap();
        for (name, f) in bundled() {
            let text = write_spec(&spec_of(f));
            std::fs::write(dir.join(format!("{name}.toml")), text).unwrap();
        }
    }
    for (name, f) in bundled() {
        let path = dir.join(format!("{name}.toml"));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing bundled spec {}: {e}", path.display()));
        let parsed = read_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let built = spec_of(f);
        assert_eq!(parsed.k, built.k, "{name}");
        assert_eq!(parsed.vars, built.vars, "{name}");
        assert_eq!(parsed.t, built.t, "{name}");
        assert_eq!(parsed.w, built.w, "{name}");
        assert_eq!(parsed.poly, built.poly, "{name}");
        // And the writer is deterministic against the checked-in bytes.
        assert_eq!(write_spec(&built), text, "{name}");
    }
}
