use chromacount::graph::Graph;
use chromacount::marginal::{disagreement_probability, joint_table};
use chromacount::sequence::{counting_sequence, truncated_component};

fn main() {
    for (path, term) in [("/tmp/g_2.txt", 4998usize), ("/tmp/g_5.txt", 4801)] {
        let text = std::fs::read_to_string(path).unwrap();
        let g = Graph::parse_edge_list(&text).unwrap();
        let seq = counting_sequence(&g, 0, 1 << 20).unwrap();
        let tc = truncated_component(&g, &seq, term, 2).unwrap();
        let core = tc.pruned_core();
        let started = std::time::Instant::now();
        match joint_table(&core, 12, 10_000_000_000) {
            Ok(jt) => println!(
                "{path} term {term}: p = {:.9} in {:?}",
                disagreement_probability(&jt).unwrap(),
                started.elapsed()
            ),
            Err(e) => println!("{path} term {term}: {e} after {:?}", started.elapsed()),
        }
    }
}
