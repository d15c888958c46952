//! Sieves on a divisor poset: closure, pullback and the sieve universe.

use gsite::fincat::build_divisor_poset;
use gsite::sieves::{maximal_sieve, pullback_sieve, sieve_closure, sieve_universe};
use gsite::Config;

fn main() -> gsite::Result<()> {
    let c = build_divisor_poset(12, Config::default())?;
    let twelve = c.object_id("12")?;

    let s = sieve_closure(&c, twelve, &[c.arrow("4->12")?, c.arrow("6->12")?])?;
    println!("closure of {{4->12, 6->12}} = {}", s.display(&c));

    let h = c.arrow("2->12")?;
    println!("pulled back along 2->12: {}", pullback_sieve(&c, &h, &s)?.display(&c));

    let top = maximal_sieve(&c, twelve)?;
    println!("maximal sieve on 12 has {} arrows", top.member_count());

    for x in c.objects() {
        println!("sieves on {}: {}", c.object_name(x), sieve_universe(&c, x)?.len());
    }
    Ok(())
}
