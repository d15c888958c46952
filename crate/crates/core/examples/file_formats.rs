//! Reading and writing `.cat`, `.gtop` and `.wit` files.

use std::path::Path;
use std::sync::Arc;

use gsite::cli::{
    parse_category_file, parse_topology_file, parse_witness_file, serialize_category, serialize_topology,
    serialize_witness_file,
};
use gsite::Config;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let read = |name: &str| std::fs::read_to_string(dir.join(name));

    let text = read("d12.cat")?;
    let c = Arc::new(parse_category_file(&text, "d12.cat", Config::default())?);
    println!("d12.cat round-trips: {}", serialize_category(&c) == text);

    let text = read("dense-d12.gtop")?;
    let j = parse_topology_file(&text, "dense-d12.gtop", &c)?;
    println!("dense-d12.gtop round-trips: {}", serialize_topology(&j)? == text);

    let text = read("d12.wit")?;
    let w = parse_witness_file(&text, "d12.wit", &c)?;
    println!("d12.wit round-trips: {}", serialize_witness_file(&c, &w) == text);

    let bad = "category bad\nobject A\nobject B\nobject C\narrow f : A -> B\narrow g : C -> C\narrow h : A -> C\ncompose g . f = h\n";
    if let Err(diags) = parse_category_file(bad, "bad.cat", Config::default()) {
        println!("{diags}");
    }
    Ok(())
}
