use flatsig::rational::{q, qi, QMat2, rational_conjugator};
use num::Zero;

fn main() {
    let y = QMat2::new(q(5,2), qi(-9), q(3,2), qi(-5));
    let x = y.inv_unimodular();
    println!("x = {x:?}, y = {y:?}");
    // Solve PX = YP by hand: brute force rational P over a grid to see if det>0 exists
    let mut found = 0;
    for pa in -6..=6i64 { for pb in -6..=6i64 { for pc in -6..=6i64 { for pd in -6..=6i64 {
        if pa==0&&pb==0&&pc==0&&pd==0 { continue; }
        let p = QMat2::from_i64(pa,pb,pc,pd);
        if p.mul(&x) == y.mul(&p) {
            let d = p.det();
            if !d.is_zero() && found < 8 {
                println!("P = {p:?} det {:?}", d);
                found += 1;
            }
        }
    }}}}
    println!("rational_conjugator: {:?}", rational_conjugator(&x, &y).map(|p| p.det()));
}
