//! The shipped files are exactly what the builders produce. Run with
//! `CONLEY_BLESS=1` to rewrite them after changing a builder.

use std::path::Path;

use conley::bundled::{build_all, FILES};
use conley::io;

#[test]
fn bundled_files_are_canonical() {
    let bless = std::env::var_os("CONLEY_BLESS").is_some();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let built = build_all();
    assert_eq!(built.len(), FILES.len());
    for ((name, inst), (file, text)) in built.iter().zip(FILES) {
        assert_eq!(name, file);
        let canonical = inst.to_json();
        if bless {
            std::fs::write(dir.join(name), &canonical).unwrap();
            continue;
        }
        assert_eq!(*text, canonical, "{name} is stale; rerun with CONLEY_BLESS=1");
        let loaded = io::parse(text).unwrap();
        assert_eq!(&loaded, inst, "{name} does not load back to its source");
        assert_eq!(loaded.to_json(), *text);
    }
}
