//! Zero-location audit of every generator family over many seeds.

use smirnov_lab::circle::{max_ratio, roots};
use smirnov_lab::generators::*;
use smirnov_lab::poly::Polynomial;

const INSTANCES: u64 = 10_000;

fn degree_for(seed: u64) -> usize {
    1 + (seed as usize % MAX_DEGREE)
}

fn audit<F: Fn(&Polynomial) -> Result<(), String>>(family: Family, check: F) {
    for seed in 0..INSTANCES {
        let n = degree_for(seed);
        let cfg = GeneratorConfig::new(seed, n, family).unwrap();
        let p = match family {
            Family::ZerosInClosedDisk => gen_zeros_in_disk(&cfg),
            Family::NoZerosInOpenDisk => gen_no_zeros_in_disk(&cfg),
            Family::Unrestricted => gen_unrestricted(&cfg),
            other => gen_extremal(&cfg, other),
        }
        .unwrap();
        assert_eq!(p.degree(), n, "{} seed {seed}", family.name());
        if let Err(why) = check(&p) {
            panic!("{} seed {seed} (n = {n}): {why}", family.name());
        }
    }
}

#[test]
fn zeros_in_disk_family() {
    audit(Family::ZerosInClosedDisk, |p| {
        let zs = roots(p).map_err(|e| e.to_string())?;
        if zs.converged && zs.max_modulus() <= 1.0 - ROOT_MARGIN * 0.5 {
            Ok(())
        } else {
            Err(format!("largest zero {}", zs.max_modulus()))
        }
    });
}

#[test]
fn no_zeros_in_disk_family() {
    audit(Family::NoZerosInOpenDisk, |p| {
        let zs = roots(p).map_err(|e| e.to_string())?;
        if zs.converged && zs.min_modulus() >= 1.0 + ROOT_MARGIN * 0.5 {
            Ok(())
        } else {
            Err(format!("smallest zero {}", zs.min_modulus()))
        }
    });
}

#[test]
fn unrestricted_family_is_finite() {
    audit(Family::Unrestricted, |p| {
        if p.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            Ok(())
        } else {
            Err("non-finite coefficient".into())
        }
    });
}

#[test]
fn extremal_families_sit_on_the_circle() {
    audit(Family::ExtremalMonomial, |p| {
        let n = p.degree();
        if p.coeffs()[..n].iter().all(|c| c.norm() == 0.0) {
            Ok(())
        } else {
            Err("lower coefficients must vanish".into())
        }
    });
    audit(Family::ExtremalBinomial, |p| {
        let zs = roots(p).map_err(|e| e.to_string())?;
        if zs.min_distance_to_circle <= 1e-9 * (1.0 + zs.max_modulus()) && zs.converged {
            Ok(())
        } else {
            Err(format!("distance to circle {}", zs.min_distance_to_circle))
        }
    });
}

#[test]
fn majorized_pairs() {
    for seed in 0..INSTANCES / 4 {
        let n = degree_for(seed);
        let cfg = GeneratorConfig::new(seed, n, Family::MajorizedPair).unwrap();
        let (p, big) = gen_majorized_pair(&cfg).unwrap();
        assert_eq!(big.degree(), n);
        assert!(p.is_zero() || p.degree() <= n);
        let zs = roots(&big).unwrap();
        assert!(zs.max_modulus() < 1.0, "seed {seed}");
        let ratio = max_ratio(&p, &big, 1.0).unwrap();
        assert!(ratio <= 1.0 - PAIR_SLACK * 0.5, "seed {seed}: max |p/P| = {ratio}");
    }
}

#[test]
fn seeds_reproduce() {
    for family in [Family::ZerosInClosedDisk, Family::NoZerosInOpenDisk, Family::Unrestricted] {
        let cfg = GeneratorConfig::new(77, 9, family).unwrap();
        let once = match family {
            Family::ZerosInClosedDisk => gen_zeros_in_disk(&cfg),
            Family::NoZerosInOpenDisk => gen_no_zeros_in_disk(&cfg),
            _ => gen_unrestricted(&cfg),
        }
        .unwrap();
        let twice = match family {
            Family::ZerosInClosedDisk => gen_zeros_in_disk(&cfg),
            Family::NoZerosInOpenDisk => gen_no_zeros_in_disk(&cfg),
            _ => gen_unrestricted(&cfg),
        }
        .unwrap();
        assert_eq!(once, twice);
    }
}
