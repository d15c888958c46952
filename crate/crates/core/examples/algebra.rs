//! Monoid and group objects, and homomorphisms between them.

use gsite::algebra::{
    check_abelian_group_object, check_homomorphism, find_algebraic_objects, AlgebraKind, GroupObject, MonoidObject,
};
use gsite::fincat::{build_divisor_poset, build_finset_category};
use gsite::Config;

fn main() -> gsite::Result<()> {
    let d12 = build_divisor_poset(12, Config::default())?;
    for w in find_algebraic_objects(&d12, AlgebraKind::Monoid)? {
        println!("D12: {}", w.display(&d12));
    }

    let c = build_finset_category(&[("1", 1), ("2", 2), ("4", 4), ("8", 8)], Config::default())?;
    let (one, two, four) = (c.object_id("1")?, c.object_id("2")?, c.object_id("4")?);
    let xor = c.map_arrow(four, two, vec![0, 1, 1, 0])?;
    let zero = c.map_arrow(one, two, vec![0])?;
    let m = MonoidObject::new(&c, two, xor, zero)?;
    let g = GroupObject::new(&c, m.clone(), c.identity(two))?;
    print!("Z/2 abelian group: {}", check_abelian_group_object(&c, &g)?.display(&c));

    for values in [vec![0, 1], vec![0, 0], vec![1, 0]] {
        let f = c.map_arrow(two, two, values)?;
        let r = check_homomorphism(&c, &m, &m, &f)?;
        println!("{} is a homomorphism: {}", c.arrow_name(&f), r.passed());
    }
    Ok(())
}
