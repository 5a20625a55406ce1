//! The order-32 invariance group and its symmetry-adapted basis.
//!
//! Generates the group, verifies its representations, decomposes the
//! oscillator product labels into orbits, and prints the per-irrep counts
//! of independent basis vectors at m = 8.
//!
//! Run: cargo run --release --example symmetry_basis

use pairbox::symmetry::{
    build_irreps, decompose_classes, expected_class_count, generate_group, project_basis,
    ALL_LABELS,
};

fn main() {
    let group = generate_group().unwrap();
    println!("group order: {}", group.order());
    println!("permutation image order: {}", group.sigma_images().len());

    let irreps = build_irreps(&group).unwrap();
    let one_d = irreps.irreps().iter().filter(|ir| ir.dim == 1).count();
    let two_d = irreps.irreps().iter().filter(|ir| ir.dim == 2).count();
    println!("irreducible representations: {one_d} one-dimensional, {two_d} two-dimensional");

    for m in [2usize, 4, 8] {
        let classes = decompose_classes(m, &group);
        println!(
            "m = {m}: {} label orbits (formula {}), sizes sum to {}",
            classes.len(),
            expected_class_count(m),
            classes.iter().map(|c| c.size()).sum::<usize>()
        );
    }

    let m = 8;
    let basis = project_basis(m, &group, &irreps).unwrap();
    println!();
    println!("independent vectors per row at m = {m}:");
    let mut total = 0;
    for &lab in ALL_LABELS.iter() {
        let d = irreps.get(lab).dim;
        let r = basis.multiplicity(lab);
        total += d * r;
        println!("  {lab} (dim {d}): {r}");
    }
    println!("sum over rows: {total} = {}^4", m);
}
