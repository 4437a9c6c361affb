use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::vector::UnitVector3;

/// Random stream used by every sampler.
pub type SimRng = ChaCha8Rng;

/// Substream `index` of the generator seeded by `seed`.
///
/// Streams with different indices never overlap, so a workload split into
/// shards stays reproducible for a fixed shard count.
pub fn stream(seed: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform direction on the sphere: uniform z in [−1, 1], uniform azimuth.
pub fn sample_unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> UnitVector3 {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let azimuth: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = azimuth.sin_cos();
    UnitVector3::new(r * c, r * s, z).expect("point on sphere")
}

/// Uniform direction in the spherical cap of half-angle `half_angle` about `axis`.
pub fn sample_cap_uniform<R: Rng + ?Sized>(rng: &mut R, axis: &UnitVector3, half_angle: f64) -> UnitVector3 {
    let cos_min = half_angle.cos();
    let z: f64 = if cos_min >= 1.0 { 1.0 } else { rng.random_range(cos_min..=1.0) };
    let azimuth: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    let e1 = axis.any_orthogonal();
    let e2 = axis.cross(&e1);
    let (s, c) = azimuth.sin_cos();
    UnitVector3::normalize(axis.as_vec() * z + e1.as_vec() * (r * c) + e2 * (r * s)).expect("point in cap")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_sphere_moments() {
        let n = 1_000_000;
        let mut rng = stream(7, 0);
        let (mut sx, mut sy, mut sz, mut sz2, mut sz4) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let u = sample_unit_uniform(&mut rng);
            sx += u.x();
            sy += u.y();
            sz += u.z();
            sz2 += u.z() * u.z();
            sz4 += u.z().powi(4);
        }
        let nf = n as f64;
        let band = 4.0 / nf.sqrt();
        assert!((sx / nf).abs() < band);
        assert!((sy / nf).abs() < band);
        assert!((sz / nf).abs() < band);
        let m2 = sz2 / nf;
        // stderr of z² from its analytic variance E[z⁴] − E[z²]² = 1/5 − 1/9
        let stderr = ((sz4 / nf - m2 * m2) / nf).sqrt();
        assert!((m2 - 1.0 / 3.0).abs() < 4.0 * stderr, "m2 = {m2}");
    }

    #[test]
    fn equal_seed_equal_sequence() {
        let mut r1 = stream(42, 3);
        let mut r2 = stream(42, 3);
        for _ in 0..100 {
            assert_eq!(sample_unit_uniform(&mut r1), sample_unit_uniform(&mut r2));
        }
        let mut r3 = stream(42, 4);
        assert_ne!(sample_unit_uniform(&mut stream(42, 3)), sample_unit_uniform(&mut r3));
    }

    #[test]
    fn cap_samples_stay_in_cap() {
        let axis = UnitVector3::new(1.0, 2.0, -0.5).unwrap();
        let mut rng = stream(1, 0);
        let alpha = 0.4_f64;
        let mut mean = 0.0;
        let n = 200_000;
        for _ in 0..n {
            let w = sample_cap_uniform(&mut rng, &axis, alpha);
            let c = w.dot(&axis);
            assert!(c >= alpha.cos() - 1e-12);
            mean += c;
        }
        mean /= n as f64;
        // cos is uniform on [cos α, 1]: mean (1 + cos α)/2, sd (1 − cos α)/√12
        let sd = (1.0 - alpha.cos()) / 12f64.sqrt();
        assert!((mean - (1.0 + alpha.cos()) / 2.0).abs() < 4.0 * sd / (n as f64).sqrt());
    }
}
