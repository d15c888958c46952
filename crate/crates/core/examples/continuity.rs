//! Continuous morphisms and initial topologies.

use std::collections::BTreeSet;
use std::sync::Arc;

use gsite::continuity::{initial_local_topology, is_continuous, localize};
use gsite::fincat::{build_divisor_poset, CategoryBuilder};
use gsite::gtopology::{GrothendieckTopology, TopologyKind};
use gsite::sieves::{empty_sieve, maximal_sieve};
use gsite::Config;

fn main() -> gsite::Result<()> {
    let mut b = CategoryBuilder::table("arrow");
    b.object("1")?.object("2")?.arrow("f", "1", "2")?;
    let c = Arc::new(b.build()?);
    let (one, two) = (c.object_id("1")?, c.object_id("2")?);
    let covers = vec![
        BTreeSet::from([maximal_sieve(&c, one)?, empty_sieve(&c, one)?]),
        BTreeSet::from([maximal_sieve(&c, two)?]),
    ];
    let j = GrothendieckTopology::explicit(c.clone(), "J", covers)?;
    let v = is_continuous(&c, &c.arrow("f")?, &j)?;
    match &v.witness {
        Some(s) => println!(
            "f is not continuous: {} covers 1 but not after pulling back",
            s.display(&c)
        ),
        None => println!("f is continuous"),
    }

    let d12 = Arc::new(build_divisor_poset(12, Config::default())?);
    let dense = GrothendieckTopology::from_rule(d12.clone(), TopologyKind::Dense);
    let family: Vec<_> = ["2->4", "2->6"]
        .iter()
        .map(|n| {
            let f = d12.arrow(n)?;
            let l = localize(&dense, d12.cod(&f))?;
            Ok((f, l))
        })
        .collect::<gsite::Result<_>>()?;
    let init = initial_local_topology(&d12, d12.object_id("2")?, &family)?;
    println!("initial topology at 2: {}", init.display(&d12));
    Ok(())
}
