//! Reference implementations used only as test oracles. They favour
//! directness over speed and share no code with the library.

#![allow(dead_code)]

use graphsel::Graph;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random connected simple graph: a random spanning tree plus extra edges
/// with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Erdős–Rényi graph, possibly disconnected.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

/// All-pairs hop distances by Floyd–Warshall; `usize::MAX` when unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let inf = usize::MAX;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every shortest path from `s` to `t`, listed explicitly.
pub fn shortest_paths(g: &Graph, d: &[Vec<usize>], s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, d: &[Vec<usize>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(u) {
            if d[w][t] != usize::MAX && d[w][t] + 1 == d[u][t] {
                path.push(w);
                walk(g, d, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d[s][t] != usize::MAX {
        walk(g, d, t, &mut vec![s], &mut out);
    }
    out
}

/// Betweenness by enumerating shortest paths for each unordered pair.
pub fn betweenness_oracle(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let d = floyd_warshall(g);
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(g, &d, s, t);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    b[v] += 1.0 / total;
                }
            }
        }
    }
    b
}

/// Closeness from Floyd–Warshall distances with component scaling.
pub fn closeness_oracle(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let d = floyd_warshall(g);
    (0..n)
        .map(|u| {
            let reach: Vec<usize> = d[u].iter().copied().filter(|&x| x != usize::MAX && x > 0).collect();
            if reach.is_empty() {
                return 0.0;
            }
            let k = reach.len() as f64;
            let far: usize = reach.iter().sum();
            (k / far as f64) * (k / (n as f64 - 1.0))
        })
        .collect()
}

/// Dense PageRank matrix `(1−α) A D⁻¹ + α/n 11ᵀ` with dangling columns
/// replaced by `1/n`.
pub fn pagerank_matrix(g: &Graph, alpha: f64) -> DMatrix<f64> {
    let n = g.node_count();
    let a = adjacency(g);
    let nf = n as f64;
    DMatrix::from_fn(n, n, |i, j| {
        let deg = a.column(j).sum();
        let walk = if deg == 0.0 { 1.0 / nf } else { a[(i, j)] / deg };
        (1.0 - alpha) * walk + alpha / nf
    })
}

/// Stationary vector of `M` from its eigenvalue-1 eigenvector, obtained by
/// solving `(M − I) x = 0` with `Σx = 1` in least squares.
pub fn stationary(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut sys = DMatrix::zeros(n + 1, n);
    sys.view_mut((0, 0), (n, n)).copy_from(&(m - DMatrix::identity(n, n)));
    sys.row_mut(n).fill(1.0);
    let mut rhs = nalgebra::DVector::zeros(n + 1);
    rhs[n] = 1.0;
    let sol = sys.clone().svd(true, true).solve(&rhs, 1e-14).unwrap();
    sol.iter().copied().collect()
}

/// Dense `I − D^{-1/2} A D^{-1/2}`; a zero-degree node gets an all-zero
/// row and column, diagonal included.
pub fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let a = adjacency(g);
    let dinv: Vec<f64> = (0..n)
        .map(|i| {
            let d = a.row(i).sum();
            if d > 0.0 { 1.0 / d.sqrt() } else { 0.0 }
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| {
        let id = if i == j && dinv[i] > 0.0 { 1.0 } else { 0.0 };
        id - dinv[i] * a[(i, j)] * dinv[j]
    })
}

/// Dense `D̃^{-1/2} (A + I) D̃^{-1/2}`.
pub fn dense_renormalized(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let a = adjacency(g) + DMatrix::identity(n, n);
    let d: Vec<f64> = (0..n).map(|i| a.row(i).sum()).collect();
    DMatrix::from_fn(n, n, |i, j| a[(i, j)] / (d[i] * d[j]).sqrt())
}

/// Chebyshev polynomial `T_k(s)`: `cos(k arccos s)` on `[-1, 1]`, `cosh` form outside.
pub fn chebyshev_t(k: usize, s: f64) -> f64 {
    let k = k as f64;
    if s.abs() <= 1.0 {
        (k * s.acos()).cos()
    } else if s > 1.0 {
        (k * s.acosh()).cosh()
    } else {
        (-1f64).powf(k) * (k * (-s).acosh()).cosh()
    }
}

/// Spectral filter `U g(Λ) Uᵀ x` with `g(λ) = Σ θ_k T_k(2λ/λmax − 1)`.
pub fn spectral_filter(g: &Graph, x: &[f64], thetas: &[f64], lambda_max: f64) -> Vec<f64> {
    let eig = dense_laplacian(g).symmetric_eigen();
    let u = &eig.eigenvectors;
    let gains: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&lam| {
            let s = 2.0 * lam / lambda_max - 1.0;
            thetas.iter().enumerate().map(|(k, th)| th * chebyshev_t(k, s)).sum()
        })
        .collect();
    let xv = nalgebra::DVector::from_column_slice(x);
    let coeff = u.transpose() * xv;
    let scaled = nalgebra::DVector::from_iterator(coeff.len(), coeff.iter().zip(&gains).map(|(c, g)| c * g));
    (u * scaled).iter().copied().collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
