use mmlab_core::minors_catalog::*;
use std::time::Instant;
fn main() {
    for (n, z) in [("s2", s2()), ("s1", s1()), ("s4", s4()), ("s5", s5())] {
        let t = Instant::now();
        let r = tight_extension_search(&z).map(|o| o.is_some());
        println!("{n} {:?} {:?}", r, t.elapsed());
    }
}
