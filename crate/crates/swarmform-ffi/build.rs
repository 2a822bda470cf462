use std::env;
use std::path::PathBuf;

// Regenerates include/swarmform.h from the public extern "C" surface. The
// header is committed so C consumers can build without running cbindgen;
// write_to_file leaves the file untouched when nothing changed.
fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml"))
        .expect("cbindgen.toml must parse");
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation must succeed")
        .write_to_file(crate_dir.join("include").join("swarmform.h"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
}
