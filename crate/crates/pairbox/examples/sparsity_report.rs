//! Exact sparsity accounting of the scheme matrices.
//!
//! Counts nonzeros of the assembled matrices against the closed formulas
//! and prints the storage estimate for holding the whole equation.
//!
//! Run: cargo run --release --example sparsity_report

use pairbox::kron::{build_m, build_mi, build_n_matrix, nnz_report, DEFAULT_GAMMA_P};

fn main() {
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "n", "M1", "M2", "M3", "M4", "M", "N"
    );
    for n in [3usize, 5, 10] {
        let rep = nnz_report(n as u64);
        let budget = 4u64 << 30;
        let assembled = [
            build_mi(1, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            build_mi(2, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            build_mi(3, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            build_mi(4, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            build_m(n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            build_n_matrix(n, DEFAULT_GAMMA_P)
                .unwrap()
                .assemble_csr(budget)
                .unwrap()
                .nnz() as u64,
        ];
        let formulas = [rep.m1, rep.m2, rep.m3, rep.m4, rep.m, rep.n_matrix];
        assert_eq!(assembled, formulas, "formulas must count exactly");
        println!(
            "{n:>4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            rep.m1, rep.m2, rep.m3, rep.m4, rep.m, rep.n_matrix
        );
    }
    println!();
    for n in [20u64, 30] {
        let rep = nnz_report(n);
        println!(
            "n = {n}: N holds {} nonzeros (~89 n^4 = {}), equation storage {:.3} GiB",
            rep.n_matrix,
            rep.n_leading,
            rep.equation_bytes as f64 / (1u64 << 30) as f64
        );
    }

    // coordinate-format dump of the smallest first-neighbor matrix
    let csr = build_mi(1, 2).unwrap().assemble_csr(1 << 20).unwrap();
    let mut buf = Vec::new();
    csr.write_coo(&mut buf).unwrap();
    println!();
    println!("M1 at n = 2 in coordinate format (first lines):");
    for line in String::from_utf8(buf).unwrap().lines().take(6) {
        println!("  {line}");
    }
}
