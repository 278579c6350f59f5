//! Hodge stars for several signatures: the star table on a basis, the sign of
//! the double star, and the Euclidean star agreeing with the complement.

use hodgekit::algebra::{int, Blade, Grade, Multivector};
use hodgekit::metric::{double_star_sign, hodge_star, pairing, Metric};

fn main() -> hodgekit::Result<()> {
    for sig in ["+++", "+---", "-+++", "++--"] {
        let g = Metric::from_signature(sig)?;
        let n = g.dim();
        println!("signature {sig} (det sign {}):", g.det_sign());
        for b in Blade::all(n) {
            let e = Multivector::from_blade(b, int(1));
            println!("  *{:<14} = {}", g.blade_label(b, "dx"), hodge_star(&e, &g)?.to_labeled("dx", g.label_base()));
        }
        let signs: Vec<i32> = (0..=n).map(|k| double_star_sign(Grade::new(k, n).unwrap(), &g)).collect();
        println!("  ** on grades 0..={n}: {signs:?}");
    }

    let g = Metric::euclidean(3);
    let agree = Blade::all(3).into_iter().all(|b| {
        let e = Multivector::from_blade(b, int(1));
        hodge_star(&e, &g).unwrap() == e.complement()
    });
    println!("\neuclidean star equals the complement in 3 dimensions: {agree}");

    let minkowski = Metric::minkowski();
    let f = Multivector::parse("e1^e2 + 3*e3^e4", 4)?;
    let p = pairing(&f, &hodge_star(&f, &minkowski)?, &minkowski)?;
    println!("F ^ *F for F = {f} in signature +---: {p}");
    Ok(())
}
