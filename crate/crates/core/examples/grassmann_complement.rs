//! Grassmann's complement in four dimensions: the table of complements, the
//! involution sign, and the complement of a product as a regressive product.

use hodgekit::algebra::{cross_product, int, ratio, Blade, Multivector};

fn main() -> hodgekit::Result<()> {
    let n = 4;
    println!("complements in {n} dimensions:");
    for b in Blade::all(n) {
        let e = Multivector::from_blade(b, int(1));
        let twice = e.complement().complement();
        let sign = if twice == e { "+" } else { "-" };
        println!("  |{:<12} = {:<12}  ||e = {sign}e", b.to_string(), e.complement().to_string());
    }

    let a = Multivector::parse("e1 + 2*e2", n)?;
    let b = Multivector::parse("e3 - 1/2*e1^e4", n)?;
    let product = a.wedge(&b)?;
    println!("\nA = {a}\nB = {b}\n[AB] = {product}");
    println!("|[AB]       = {}", product.complement());
    println!("[|A |B]     = {}", a.complement().regressive(&b.complement())?.reduce_unit());

    let u = Multivector::vector(&[int(1), int(0), ratio(1, 2)]);
    let v = Multivector::vector(&[int(0), int(2), int(-1)]);
    println!("\nin three dimensions |[u v] is the cross product:");
    println!("  u x v = {}", cross_product(&u, &v)?);
    println!("  [u |v] = {}", u.interior(&v)?.reduce_unit());
    Ok(())
}
