use graphsel::active_learning::{al_loop, al_loop_observed, AlConfig, AlObserver, Oracle};
use graphsel::knn::knn_graph;
use graphsel::sbm::SbmSpec;
use graphsel::{DenseMatrix, Graph, Hyper, Measure};

#[derive(Default)]
struct Recorder {
    calls: Vec<(usize, Graph, Graph)>,
    k: usize,
}

impl AlObserver<f64> for Recorder {
    fn on_centrality(&mut self, iteration: usize, graph: &Graph, embeddings: &DenseMatrix<f64>) {
        let rebuilt = knn_graph(embeddings, self.k).unwrap().graph;
        self.calls.push((iteration, graph.clone(), rebuilt));
    }
}

fn quick_cfg() -> AlConfig {
    AlConfig {
        seed_count: 4,
        batch_size: 3,
        budget: 13,
        knn_k: 5,
        measure: Measure::Betweenness,
        hyper: Hyper {
            epochs: 30,
            ..Hyper::default()
        },
        ..AlConfig::default()
    }
}

#[test]
fn centrality_runs_on_embedding_knn_graph() {
    let ds = SbmSpec::new(vec![15, 15], 0.3, 0.02, 6, 4).generate::<f64>().unwrap();
    let cfg = quick_cfg();
    let mut rec = Recorder {
        k: cfg.knn_k,
        ..Recorder::default()
    };
    let mut oracle = Oracle::new(&ds.labels);
    let out = al_loop_observed(&ds.graph, &ds.features, &mut oracle, &cfg, None, &mut rec).unwrap();

    // 4 seeds, then batches of 3, 3, 3 → 3 acquisitions
    assert_eq!(out.acquisitions, 3);
    assert_eq!(rec.calls.len(), 3);
    for (i, (iteration, used, rebuilt)) in rec.calls.iter().enumerate() {
        assert_eq!(*iteration, i);
        assert_eq!(used, rebuilt);
        assert_ne!(used, &ds.graph);
        assert!((0..30).all(|v| used.degree(v) >= cfg.knn_k));
    }
    assert_eq!(oracle.query_log(), out.plan.selected.as_slice());
}

#[test]
fn test_nodes_are_never_queried() {
    let ds = SbmSpec::new(vec![15, 15], 0.3, 0.02, 6, 4).generate::<f64>().unwrap();
    let test_mask: Vec<bool> = (0..30).map(|v| v % 3 == 0).collect();
    let mut oracle = Oracle::new(&ds.labels);
    let out = al_loop(&ds.graph, &ds.features, &mut oracle, &quick_cfg(), Some(&test_mask)).unwrap();
    assert!(out.plan.selected.iter().all(|&v| !test_mask[v]));
    assert!(out.trace.iter().all(|it| it.accuracy.is_some()));
}

#[test]
fn uneven_final_batch() {
    let ds = SbmSpec::new(vec![12, 12], 0.3, 0.02, 4, 1).generate::<f64>().unwrap();
    let cfg = AlConfig {
        budget: 12,
        ..quick_cfg()
    };
    let mut oracle = Oracle::new(&ds.labels);
    let out = al_loop(&ds.graph, &ds.features, &mut oracle, &cfg, None).unwrap();
    let sizes: Vec<usize> = out.trace.iter().map(|it| it.queried.len()).collect();
    assert_eq!(sizes, [3, 3, 2, 0]);
    assert_eq!(oracle.query_count(), 12);
}

#[test]
fn same_seed_same_plan() {
    let ds = SbmSpec::new(vec![10, 10], 0.4, 0.05, 4, 2).generate::<f64>().unwrap();
    let run = || {
        let mut oracle = Oracle::new(&ds.labels);
        al_loop(&ds.graph, &ds.features, &mut oracle, &quick_cfg(), None).unwrap().plan
    };
    assert_eq!(run(), run());
}
