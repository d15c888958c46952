//! Named topologies and the axiom checker.

use std::sync::Arc;

use gsite::fincat::{build_divisor_poset, CategoryBuilder};
use gsite::gtopology::{build_topology, TopologyKind};
use gsite::Config;

fn main() -> gsite::Result<()> {
    let d12 = Arc::new(build_divisor_poset(12, Config::default())?);
    for kind in TopologyKind::ALL {
        let built = build_topology(&d12, kind);
        let covers = built.topology.covers(d12.object_id("12")?)?.len();
        println!(
            "{kind} on D12: {} covers of 12, axioms {}",
            covers,
            if built.passed() { "hold" } else { "fail" }
        );
    }

    let mut b = CategoryBuilder::table("cospan");
    b.object("X")?.object("Y")?.object("Z")?;
    b.arrow("f", "X", "Z")?.arrow("g", "Y", "Z")?;
    let cospan = Arc::new(b.build()?);
    let atomic = build_topology(&cospan, TopologyKind::Atomic);
    println!("atomic on the cospan:");
    print!("{}", atomic.verdict?.display(&cospan));
    Ok(())
}
