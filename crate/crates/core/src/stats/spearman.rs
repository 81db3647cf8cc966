use super::StatsError;
use crate::scalar::Scalar;

/// 1-based ranks; tied values share the average of their positions.
pub fn fractional_ranks<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("NaN in sample"));
    let mut ranks = vec![T::zero(); values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let avg = T::from_len(start + 1 + end) / T::lit(2.0);
        for &idx in &order[start..end] {
            ranks[idx] = avg;
        }
        start = end;
    }
    ranks
}

pub fn pearson<T: Scalar>(x: &[T], y: &[T]) -> Result<T, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewObservations {
            required: 2,
            found: x.len(),
        });
    }
    let n = T::from_len(x.len());
    let mx = x.iter().fold(T::zero(), |a, &v| a + v) / n;
    let my = y.iter().fold(T::zero(), |a, &v| a + v) / n;
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == T::zero() || syy == T::zero() {
        return Err(StatsError::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).max(-T::one()).min(T::one()))
}

/// Spearman rank correlation: Pearson correlation of fractional ranks.
pub fn spearman<T: Scalar>(x: &[T], y: &[T]) -> Result<T, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    pearson(&fractional_ranks(x), &fractional_ranks(y))
}

/// Pairwise correlations between columns; `None` where a column is constant.
pub fn spearman_matrix<T: Scalar>(columns: &[Vec<T>]) -> Result<Vec<Vec<Option<T>>>, StatsError> {
    let ranks: Vec<Vec<T>> = columns.iter().map(|c| fractional_ranks(c)).collect();
    let k = columns.len();
    let mut out = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let rho = match pearson(&ranks[i], &ranks[j]) {
                Ok(v) => Some(v),
                Err(StatsError::ZeroVariance) => None,
                Err(e) => return Err(e),
            };
            out[i][j] = rho;
            out[j][i] = rho;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_average_ties() {
        assert_eq!(fractional_ranks(&[10.0f64, 20.0, 10.0, 30.0]), vec![1.5, 3.0, 1.5, 4.0]);
    }

    #[test]
    fn hand_example() {
        let rho = spearman(&[1.0f64, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert_eq!(rho, 0.8);
    }

    #[test]
    fn monotone_relations() {
        let x: Vec<f64> = (1..=20).map(|v| v as f64).collect();
        let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(spearman(&x, &sq).unwrap(), 1.0);
        assert_eq!(spearman(&x, &neg).unwrap(), -1.0);
    }

    #[test]
    fn errors() {
        assert_eq!(spearman(&[1.0f64, 2.0], &[1.0]), Err(StatsError::LengthMismatch(2, 1)));
        assert!(matches!(
            spearman(&[1.0f64], &[1.0]),
            Err(StatsError::TooFewObservations { .. })
        ));
        assert_eq!(
            spearman(&[1.0f64, 2.0, 3.0], &[5.0, 5.0, 5.0]),
            Err(StatsError::ZeroVariance)
        );
        let m = spearman_matrix(&[vec![1.0f64, 2.0, 3.0], vec![4.0, 4.0, 4.0]]).unwrap();
        assert_eq!(m[0][0], Some(1.0));
        assert_eq!(m[0][1], None);
    }
}
