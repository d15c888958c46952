//! Topological group objects and a cover-preserving monoidal functor.

use std::sync::Arc;

use gsite::algebra::{find_algebraic_objects, AlgebraKind};
use gsite::fincat::build_divisor_poset;
use gsite::gtopgroup::{inclusion_functor, is_gtop_algebraic_object, is_gtop_functor_monoid, lcm_monoid, Submonoid};
use gsite::gtopology::{GrothendieckTopology, TopologyKind};
use gsite::Config;

fn main() -> gsite::Result<()> {
    let d12 = Arc::new(build_divisor_poset(12, Config::default())?);
    let dense = GrothendieckTopology::from_rule(d12.clone(), TopologyKind::Dense);
    for w in find_algebraic_objects(&d12, AlgebraKind::Group)? {
        println!("{}", w.display(&d12));
        print!("{}", is_gtop_algebraic_object(&d12, &w, &dense)?.display(&d12));
    }

    let d6 = Arc::new(build_divisor_poset(6, Config::default())?);
    let lcm = lcm_monoid(&d12)?;
    let lcm6 = lcm_monoid(&d6)?;
    let inclusion = inclusion_functor(&d6, &d12)?;
    let jprod = GrothendieckTopology::from_rule(lcm.product.category.clone(), TopologyKind::Dense);
    let sub = Submonoid {
        monoid: &lcm6,
        inclusion: &inclusion,
    };
    let r = is_gtop_functor_monoid(&lcm, &jprod, &dense, Some(sub))?;
    print!("{}", r.display(&lcm));
    Ok(())
}
