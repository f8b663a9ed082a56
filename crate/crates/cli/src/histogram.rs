//! Standardized histograms over `[-1, 1]`.

pub const DEFAULT_BINS: usize = 201;

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub counts: Vec<u64>,
    pub mean: f64,
    pub sd: f64,
    /// Samples whose standardized value fell outside `[-1, 1]`.
    pub dropped: u64,
}

impl Histogram {
    /// Standardizes `values` to mean 0 and standard deviation 1 and bins the
    /// ones inside `[-1, 1]`. A constant sample maps to 0.
    pub fn standardized(values: &[f64], bins: usize) -> Self {
        assert!(bins > 0, "at least one bin");
        let n = values.len().max(1) as f64;
        let mean = values.iter().sum::<f64>() / n;
        let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        let mut counts = vec![0; bins];
        let mut dropped = 0;
        for &v in values {
            let z = if sd > 0.0 { (v - mean) / sd } else { 0.0 };
            if !(-1.0..=1.0).contains(&z) {
                dropped += 1;
                continue;
            }
            let k = (((z + 1.0) / 2.0) * bins as f64).floor() as usize;
            counts[k.min(bins - 1)] += 1;
        }
        Histogram { counts, mean, sd, dropped }
    }

    pub fn center(&self, k: usize) -> f64 {
        let width = 2.0 / self.counts.len() as f64;
        -1.0 + (k as f64 + 0.5) * width
    }

    pub fn occupied(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (self.center(k), c))
    }

    pub fn occupied_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_center,count\n");
        for (c, n) in self.occupied() {
            out.push_str(&format!("{c:.6},{n}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sample_is_one_bin() {
        let h = Histogram::standardized(&[5.0; 10], DEFAULT_BINS);
        assert_eq!(h.occupied().collect::<Vec<_>>(), vec![(0.0, 10)]);
        assert_eq!(h.dropped, 0);
        let one = Histogram::standardized(&[-3.0], DEFAULT_BINS);
        assert_eq!(one.occupied_bins(), 1);
    }

    #[test]
    fn standardizes_before_binning() {
        // Two points at +-1 sd land in the outermost bins.
        let h = Histogram::standardized(&[0.0, 10.0], 4);
        assert_eq!(h.counts, vec![1, 0, 0, 1]);
        assert_eq!((h.mean, h.sd), (5.0, 5.0));
        let wide = Histogram::standardized(&[0.0, 0.0, 0.0, 100.0], 5);
        assert_eq!(wide.dropped, 1);
        assert_eq!(wide.counts.iter().sum::<u64>(), 3);
        assert_eq!(wide.to_csv(), "bin_center,count\n-0.400000,3\n");
    }
}
