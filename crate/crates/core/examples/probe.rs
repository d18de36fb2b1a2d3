use unionstab_core::diagram::plat::{default_tunnel_spec, two_bridge_plat, ContinuedFraction};
use unionstab_core::diagram::surgery::{attach_tunnels, perturb};
use unionstab_core::diagram::TunnelSide;
use unionstab_core::group::*;
use unionstab_core::wirtinger::wirtinger;

fn main() {
    let opts = CountOptions::default().with_symmetry_reduction(true).with_jobs(4);
    let topts = TietzeOptions::default();
    for terms in [&[1i64][..], &[3], &[2, 2], &[5], &[3, 2], &[2, 1, 1, 2], &[-2, -1, -1, -2], &[3, 1, 2]] {
        let cf = ContinuedFraction::new(terms.to_vec()).unwrap();
        let knot = two_bridge_plat(&cf).unwrap();
        let both = attach_tunnels(&knot, &[
            default_tunnel_spec(&cf, TunnelSide::Upper),
            default_tunnel_spec(&cf, TunnelSide::Lower),
        ]).unwrap();
        print!("{terms:?}:");
        for case in 1..=4 {
            let d = perturb(&both, case).unwrap();
            let p = tietze_simplify(&wirtinger(&d).unwrap(), &topts);
            let ab = abelianization(&p);
            let ab_ok = ab.is_free_of_rank(3);
            if p.relators().is_empty() && p.generator_count() == 3 {
                print!(" c{case}:FREE(proved)");
                continue;
            }
            let mut verdict = "free-pattern".to_string();
            for name in ["S3", "A4", "S4", "A5"] {
                let g = builtin_group(name).unwrap();
                let n = count_homs(&p, &g, &opts).unwrap();
                if n != (g.order() as u128).pow(3) {
                    verdict = format!("NOTFREE@{name}");
                    break;
                }
            }
            print!(" c{case}:{verdict}{}", if ab_ok { "" } else { "/ab!" });
        }
        println!();
    }
}
