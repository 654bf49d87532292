//! Build a few groups from the standard families and inspect them.

use lehmerlab::group_engine::{
    aut_order_bruteforce, direct_product, make_alternating, make_dicyclic, make_dihedral, make_heisenberg,
    make_symmetric, order_cap, CayleyGroup,
};

fn describe(g: &CayleyGroup) -> Result<(), Box<dyn std::error::Error>> {
    let aut = aut_order_bruteforce(g, order_cap())?;
    println!(
        "{:<14} |G|={:<4} |Z|={:<3} |Inn|={:<4} |Aut|={:<6} exp={:<3} phi={:<3} {}",
        g.name(),
        g.order(),
        g.center().len(),
        g.inn_order(),
        aut,
        g.exponent(),
        g.phi_g(),
        g.check_condition2()?.label(),
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s3 = make_symmetric(3)?;
    let groups = [
        s3.clone(),
        make_dihedral(5)?,
        make_dicyclic(2)?,
        make_alternating(4)?,
        make_symmetric(4)?,
        make_heisenberg(3)?,
        direct_product(&s3, &make_dicyclic(2)?)?,
    ];
    for g in &groups {
        describe(g)?;
    }
    Ok(())
}
