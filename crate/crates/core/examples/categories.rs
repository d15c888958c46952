//! Building finite categories and querying limits.

use std::sync::Arc;

use gsite::fincat::{
    binary_coproduct, binary_product, build_divisor_poset, build_finset_category, build_product_category,
    terminal_objects, validate_category, CategoryBuilder,
};
use gsite::Config;

fn main() -> gsite::Result<()> {
    let d12 = Arc::new(build_divisor_poset(12, Config::default())?);
    println!(
        "{}: {} objects, {} arrows",
        d12.name(),
        d12.object_count(),
        d12.arrow_count()?
    );
    print!("{}", validate_category(&d12));

    let (four, six) = (d12.object_id("4")?, d12.object_id("6")?);
    let meet = &binary_product(&d12, four, six)?[0];
    let join = &binary_coproduct(&d12, four, six)?[0];
    println!(
        "4 x 6 = {}, 4 + 6 = {}",
        d12.object_name(meet.apex),
        d12.object_name(join.apex)
    );

    let mut b = CategoryBuilder::table("cospan");
    b.object("X")?.object("Y")?.object("Z")?;
    b.arrow("f", "X", "Z")?.arrow("g", "Y", "Z")?;
    let cospan = b.build()?;
    let names: Vec<_> = terminal_objects(&cospan)
        .iter()
        .map(|&o| cospan.object_name(o).to_string())
        .collect();
    println!("cospan terminal objects: {names:?}");

    let sets = build_finset_category(&[("1", 1), ("2", 2), ("4", 4)], Config::default())?;
    let two = sets.object_id("2")?;
    let square = &binary_product(&sets, two, two)?[0];
    println!(
        "2 x 2 in FinSet has apex {} with projections {} and {}",
        sets.object_name(square.apex),
        sets.arrow_name(&square.left),
        sets.arrow_name(&square.right)
    );

    let arrow = {
        let mut b = CategoryBuilder::table("arrow");
        b.object("1")?.object("2")?.arrow("f", "1", "2")?;
        Arc::new(b.build()?)
    };
    let sq = build_product_category(&arrow, &arrow)?;
    println!(
        "arrow x arrow: {} objects, {} arrows",
        sq.category.object_count(),
        sq.category.arrow_count()?
    );
    Ok(())
}
