//! Geometric user clustering.
//!
//! Users whose LOS directions interfere strongly (`beta >= beta0`) are paired
//! greedily into two-user NOMA clusters, strongest interference first; all
//! other users keep a dedicated DBS beam. Only angles are consumed, so the
//! same clustering serves the full- and partial-CSI schemes.

use crate::array::{beta_metric, ArrayConfig, Direction};

/// One beam: a single DBS user or a strong/weak NOMA pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// User indices. For pairs, index 0 is the strong user once
    /// [`order_cluster_users`] has run.
    pub members: Vec<usize>,
    pub beam_dir: Direction,
}

impl Cluster {
    pub fn singleton(user: usize, dir: Direction) -> Self {
        Self {
            members: vec![user],
            beam_dir: dir,
        }
    }

    pub fn is_noma(&self) -> bool {
        self.members.len() == 2
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of the users into clusters, NOMA clusters first.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    pub clusters: Vec<Cluster>,
    pub noma_count: usize,
}

impl ClusterSet {
    /// Classical DBS: one beam per user along its LOS direction.
    pub fn all_singletons(los_dirs: &[Direction]) -> Self {
        Self {
            clusters: los_dirs
                .iter()
                .enumerate()
                .map(|(k, &d)| Cluster::singleton(k, d))
                .collect(),
            noma_count: 0,
        }
    }

    pub fn total(&self) -> usize {
        self.clusters.len()
    }

    pub fn user_count(&self) -> usize {
        self.clusters.iter().map(Cluster::size).sum()
    }

    pub fn noma_clusters(&self) -> &[Cluster] {
        &self.clusters[..self.noma_count]
    }

    pub fn dbs_clusters(&self) -> &[Cluster] {
        &self.clusters[self.noma_count..]
    }

    /// Cluster index serving each user.
    pub fn cluster_of_users(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.user_count()];
        for (c, cl) in self.clusters.iter().enumerate() {
            for &m in &cl.members {
                out[m] = c;
            }
        }
        out
    }
}

/// Upper-triangular pairwise interference metric, `beta[k][u]` for `k < u`.
pub fn beta_matrix(dirs: &[Direction], cfg: &ArrayConfig) -> Vec<Vec<f64>> {
    let k = dirs.len();
    let mut b = vec![vec![0.0; k]; k];
    for i in 0..k {
        b[i][i] = 1.0;
        for j in i + 1..k {
            let v = beta_metric(cfg, dirs[i], dirs[j]);
            b[i][j] = v;
            b[j][i] = v;
        }
    }
    b
}

/// Greedy pairing on a precomputed metric matrix. Returns the selected pairs
/// in selection order and the users left unpaired (ascending).
///
/// Ties on the maximal metric go to the lexicographically smallest `(k, u)`.
pub fn greedy_pairs(beta: &[Vec<f64>], beta0: f64) -> (Vec<(usize, usize)>, Vec<usize>) {
    let k = beta.len();
    let mut candidates: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| beta[i][j] >= beta0)
        .collect();
    // Sorting once and skipping consumed users is the same as repeatedly
    // taking the argmax of the shrinking candidate set.
    candidates.sort_by(|a, b| beta[b.0][b.1].total_cmp(&beta[a.0][a.1]).then(a.cmp(b)));

    let mut used = vec![false; k];
    let mut pairs = Vec::new();
    for (i, j) in candidates {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    let rest = (0..k).filter(|&u| !used[u]).collect();
    (pairs, rest)
}

/// Beam direction for a cluster: the LOS direction of a singleton, the
/// component-wise mean for a pair.
pub fn cluster_beam_dir(member_los_dirs: &[Direction]) -> Direction {
    match member_los_dirs {
        [d] => *d,
        [a, b] => Direction::new(0.5 * (a.theta + b.theta), 0.5 * (a.phi + b.phi)),
        _ => panic!(
            "clusters hold one or two users, got {}",
            member_los_dirs.len()
        ),
    }
}

/// Beta-based user clustering over the users' LOS directions.
pub fn beta_uc(dirs: &[Direction], cfg: &ArrayConfig, beta0: f64) -> ClusterSet {
    let beta = beta_matrix(dirs, cfg);
    let (pairs, rest) = greedy_pairs(&beta, beta0);
    let noma_count = pairs.len();
    let clusters = pairs
        .into_iter()
        .map(|(i, j)| Cluster {
            members: vec![i, j],
            beam_dir: cluster_beam_dir(&[dirs[i], dirs[j]]),
        })
        .chain(rest.into_iter().map(|u| Cluster::singleton(u, dirs[u])))
        .collect();
    ClusterSet {
        clusters,
        noma_count,
    }
}

/// Puts the member with the larger received power `|h w_c|^2` first. Equal
/// powers keep the input order.
pub fn order_cluster_users(cluster: &Cluster, gains: &[f64]) -> Cluster {
    assert_eq!(cluster.members.len(), gains.len());
    let mut out = cluster.clone();
    if gains.len() == 2 && gains[1] > gains[0] {
        out.members.swap(0, 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(k: usize, entries: &[((usize, usize), f64)]) -> Vec<Vec<f64>> {
        let mut b = vec![vec![0.0; k]; k];
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for &((i, j), v) in entries {
            b[i][j] = v;
            b[j][i] = v;
        }
        b
    }

    #[test]
    fn hand_traced_three_users() {
        let b = matrix(3, &[((0, 1), 0.9), ((0, 2), 0.6), ((1, 2), 0.55)]);
        let (pairs, rest) = greedy_pairs(&b, 0.5);
        assert_eq!(pairs, vec![(0, 1)]);
        assert_eq!(rest, vec![2]);
    }

    #[test]
    fn nothing_above_threshold_is_pure_dbs() {
        let b = matrix(4, &[((0, 1), 0.2), ((2, 3), 0.49)]);
        let (pairs, rest) = greedy_pairs(&b, 0.5);
        assert!(pairs.is_empty());
        assert_eq!(rest, vec![0, 1, 2, 3]);
    }

    #[test]
    fn threshold_is_inclusive() {
        let b = matrix(2, &[((0, 1), 0.5)]);
        let (pairs, _) = greedy_pairs(&b, 0.5);
        assert_eq!(pairs, vec![(0, 1)]);
    }

    #[test]
    fn ties_pick_smallest_pair() {
        let b = matrix(4, &[((2, 3), 0.8), ((0, 3), 0.8), ((1, 2), 0.8)]);
        let (pairs, rest) = greedy_pairs(&b, 0.5);
        assert_eq!(pairs, vec![(0, 3), (1, 2)]);
        assert!(rest.is_empty());
    }

    #[test]
    fn consumed_partner_reoffers_remaining_pairs() {
        // 0's best partner 1 is taken by the (1, 2) pair; 0 then pairs with 3.
        let b = matrix(
            4,
            &[((1, 2), 0.95), ((0, 1), 0.9), ((0, 3), 0.6), ((2, 3), 0.7)],
        );
        let (pairs, rest) = greedy_pairs(&b, 0.5);
        assert_eq!(pairs, vec![(1, 2), (0, 3)]);
        assert!(rest.is_empty());
    }

    #[test]
    fn beam_directions() {
        let d = Direction::from_degrees(10.0, 80.0);
        assert_eq!(cluster_beam_dir(&[d]), d);
        let m = cluster_beam_dir(&[d, Direction::from_degrees(20.0, 90.0)]);
        assert!((m.theta - 15f64.to_radians()).abs() < 1e-12);
        assert!((m.phi - 85f64.to_radians()).abs() < 1e-12);
        assert_eq!(cluster_beam_dir(&[d, d]), d);
    }

    #[test]
    fn ordering_by_received_power() {
        let c = Cluster {
            members: vec![3, 7],
            beam_dir: Direction::broadside(),
        };
        assert_eq!(order_cluster_users(&c, &[4.0, 9.0]).members, vec![7, 3]);
        assert_eq!(order_cluster_users(&c, &[9.0, 4.0]).members, vec![3, 7]);
        assert_eq!(order_cluster_users(&c, &[5.0, 5.0]).members, vec![3, 7]);
        let s = Cluster::singleton(2, Direction::broadside());
        assert_eq!(order_cluster_users(&s, &[1.0]), s);
    }

    #[test]
    fn identical_channels_keep_input_order() {
        use crate::array::steering_vector;
        use crate::channel::{channel_vector, effective_gain, UserChannel};
        use num_complex::Complex64;

        let cfg = ArrayConfig::half_wavelength(8, 2).unwrap();
        let d = Direction::from_degrees(75.0, -15.0);
        let uc = UserChannel::line_of_sight(Complex64::new(1e-5, 2e-5), d).unwrap();
        let h = channel_vector(&uc, &cfg);
        let w = steering_vector(&cfg, d).into_entries();
        let g = effective_gain(&h, &w).unwrap();
        let c = Cluster {
            members: vec![4, 1],
            beam_dir: d,
        };
        assert_eq!(order_cluster_users(&c, &[g, g]).members, vec![4, 1]);
    }

    proptest! {
        #[test]
        fn clustering_contract(
            dirs in proptest::collection::vec((0.0..std::f64::consts::PI, -1.2f64..-0.02), 1..40),
            beta0 in 0.05f64..0.95,
        ) {
            let cfg = ArrayConfig::half_wavelength(16, 2).unwrap();
            let dirs: Vec<Direction> = dirs.into_iter().map(|(t, p)| Direction::new(t, p)).collect();
            let cs = beta_uc(&dirs, &cfg, beta0);

            let owner = cs.cluster_of_users();
            prop_assert_eq!(owner.len(), dirs.len());
            prop_assert!(owner.iter().all(|&c| c < cs.total()));
            prop_assert_eq!(cs.user_count(), dirs.len());

            let mut prev = f64::INFINITY;
            for (idx, c) in cs.clusters.iter().enumerate() {
                prop_assert_eq!(c.is_noma(), idx < cs.noma_count);
                if c.is_noma() {
                    let b = beta_metric(&cfg, dirs[c.members[0]], dirs[c.members[1]]);
                    prop_assert!(b >= beta0);
                    prop_assert!(b <= prev);
                    prev = b;
                }
            }
        }

        #[test]
        fn ordering_is_idempotent(g0 in 0.0f64..10.0, g1 in 0.0f64..10.0) {
            let c = Cluster { members: vec![0, 1], beam_dir: Direction::broadside() };
            let once = order_cluster_users(&c, &[g0, g1]);
            let sorted_gains = if once.members[0] == 0 { [g0, g1] } else { [g1, g0] };
            prop_assert!(sorted_gains[0] >= sorted_gains[1]);
            let twice = order_cluster_users(&once, &sorted_gains);
            prop_assert_eq!(once, twice);
        }
    }
}
