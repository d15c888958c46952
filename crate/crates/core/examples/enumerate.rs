//! Every topology on a small category, and the lattice they form.

use std::sync::Arc;

use gsite::cli::serialize_topology;
use gsite::fincat::CategoryBuilder;
use gsite::gtopology::{enumerate_topologies, is_coarser, join, meet};

fn main() -> gsite::Result<()> {
    let mut b = CategoryBuilder::table("arrow");
    b.object("1")?.object("2")?.arrow("f", "1", "2")?;
    let c = Arc::new(b.build()?);

    let all = enumerate_topologies(&c)?;
    println!("{} topologies on the arrow category", all.len());
    for j in &all {
        print!("{}", serialize_topology(j)?);
    }

    let (a, b) = (&all[1], &all[2]);
    let m = meet(a, b)?;
    let jn = join(a, b)?;
    println!(
        "meet below both: {}, join above both: {}",
        is_coarser(&m, a)? && is_coarser(&m, b)?,
        is_coarser(a, &jn)? && is_coarser(b, &jn)?
    );
    Ok(())
}
