//! FastMap on plain point sets.
//!
//! ```bash
//! cargo run --example fastmap_embedding
//! ```

use ltp_saliency::fastmap::{choose_pivots, embed, Dissimilarity, EmbeddingProblem, EuclideanRows};

fn main() {
    let scalars = [0.0, 10.0, 3.0];
    let rows = EuclideanRows::new(&scalars, 1);
    let (a, b) = choose_pivots(&rows).expect("distinct objects");
    let e = embed(&EmbeddingProblem::new(&rows, 1));
    println!(
        "scalars {scalars:?}: pivots ({a}, {b}), coordinates {:?}",
        e.axis(0)
    );

    // A noisy 3-D helix, embedded in one and two dimensions.
    let points: Vec<f64> = (0..40)
        .flat_map(|i| {
            let t = i as f64 * 0.3;
            [t.cos(), t.sin(), 0.2 * t]
        })
        .collect();
    let rows = EuclideanRows::new(&points, 3);
    for k in [1, 2, 3] {
        let e = embed(&EmbeddingProblem::new(&rows, k));
        let mut stress = (0.0, 0.0);
        for i in 0..rows.len() {
            for j in 0..i {
                let d = rows.distance(i, j);
                let de: f64 = e
                    .point(i)
                    .iter()
                    .zip(e.point(j))
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt();
                stress.0 += (d - de).powi(2);
                stress.1 += d * d;
            }
        }
        println!(
            "helix, k={k}: pivots {:?}, normalized stress {:.4}",
            e.pivots(),
            (stress.0 / stress.1).sqrt()
        );
    }
}
