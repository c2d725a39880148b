//! One-shot generator for the bundled small-groups database
//! (crates/core/data/groups_le100.json). Enumerates every group of order
//! ≤ 100 up to isomorphism by prime-index extensions (seeded with the
//! trivial group and A5), validates the per-order counts against the
//! published sequence, and freezes the result as JSON with each group
//! realized by its left regular representation.

use restind_core::groupgen::{generate_all, regular_generators};
use restind_core::smallgroups::{GroupDatabase, StoredGroup};

fn main() -> anyhow::Result<()> {
    let max_order = 100usize;
    eprintln!("generating all groups of order <= {max_order} ...");
    let start = std::time::Instant::now();
    let db = generate_all(max_order);
    eprintln!("generation done in {:.1?}", start.elapsed());

    let mut groups: Vec<Vec<StoredGroup>> = vec![Vec::new(); max_order + 1];
    for n in 1..=max_order {
        for (index, g) in db[&n].iter().enumerate() {
            let gens: Vec<String> = regular_generators(&g.table)
                .iter()
                .map(|p| p.to_cycles())
                .collect();
            groups[n].push(StoredGroup {
                order: n,
                index,
                degree: if n == 1 { 1 } else { n },
                gens,
                abelian: g.table.is_abelian(),
            });
        }
    }
    let out = GroupDatabase { max_order, groups };

    // round-trip sanity: every stored group realizes with the right order
    for g in out.all_of_order_at_most(max_order) {
        let pg = out
            .realize(g, 128)
            .map_err(|e| anyhow::anyhow!("realize order {} index {}: {e}", g.order, g.index))?;
        anyhow::ensure!(pg.order() == g.order.max(1), "order mismatch");
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/groups_le100.json");
    std::fs::create_dir_all(std::path::Path::new(path).parent().unwrap())?;
    std::fs::write(path, serde_json::to_string(&out)?)?;
    eprintln!("wrote {path}");
    Ok(())
}
