use graphsel::bench::{benchmark, DatasetSource, MethodSpec, Protocol, Suite};
use graphsel::operators::normalized_adjacency;
use graphsel::sbm::{sbm_generate, SbmSpec};
use graphsel::{GcnModel, Hyper};

/// Dropout makes the per-epoch training loss noisy, so the objective is
/// re-evaluated without dropout after each epoch. Training itself uses the
/// default hyperparameters, dropout included.
#[test]
fn loss_does_not_increase_early_on_two_cliques() {
    let ds = sbm_generate::<f64>(&[5, 5], 1.0, 0.0, 8, 0).unwrap();
    let a = normalized_adjacency::<f64>(&ds.graph);
    let train = [0, 5];
    for seed in 0..10 {
        let losses: Vec<f64> = (0..=10)
            .map(|epochs| {
                let hyper = Hyper {
                    epochs,
                    seed,
                    ..Hyper::default()
                };
                let (m, _) = GcnModel::<f64>::init(8, 2, hyper)
                    .unwrap()
                    .train(&a, &ds.features, &ds.labels, &train)
                    .unwrap();
                m.loss_and_gradients(&a, &ds.features, &ds.labels, &train, None).unwrap().0
            })
            .collect();
        for w in losses.windows(2) {
            assert!(w[1] <= w[0], "seed {seed}: {losses:?}");
        }
    }
}

#[test]
fn full_grid_on_two_blocks() {
    let suite = Suite {
        name: Some("two-block".into()),
        dataset: DatasetSource::Sbm(SbmSpec::new(vec![30, 30], 0.3, 0.02, 8, 1)),
        methods: MethodSpec::full_grid(),
        n_runs: 10,
        base_seed: 0,
        protocol: Protocol {
            budget: 10,
            per_round: 5,
            hyper: Hyper {
                epochs: 40,
                ..Hyper::default()
            },
            al_seed_count: 4,
            al_batch_size: 3,
            al_knn_k: 5,
            ..Protocol::default()
        },
        significance: 0.05,
    };
    let dir = tempfile::tempdir().unwrap();
    let out = benchmark(&suite, dir.path()).unwrap();
    assert_eq!(out.results.len(), 12);
    assert_eq!(out.ranks.rows.len(), 12);
    assert_eq!(out.ranks.rows[0].rank, 1);
    for r in &out.results {
        assert_eq!(r.accuracies.len(), 10);
        assert_eq!(r.metadata.dataset, "two-block");
        assert_eq!(r.metadata.config_hash.len(), 64);
        assert!(dir.path().join("results").join(format!("{}.json", r.method.replace(':', "-"))).exists());
    }
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 13);
}
