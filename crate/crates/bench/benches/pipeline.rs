use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use k3fs::config::enumerate_case;
use k3fs::lattice::hyperbolic_u;
use k3fs::mordell_weil::torsion_search;
use k3fs::realizability::{d_lattice_quotient, exclude_trivial_mw, reduced_binary_forms};
use k3fs::report::table1;
use k3fs::{AbelianGroup, Case, Configuration, DynkinLabel, GramLattice};

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate case C", |b| b.iter(|| enumerate_case(black_box(Case::C))));
}

fn torsion(c: &mut Criterion) {
    let t11 = Configuration::case_a_type(11).unwrap();
    let t12 = Configuration::case_a_type(12).unwrap();
    c.bench_function("torsion search type 11", |b| b.iter(|| torsion_search(black_box(&t11)).unwrap()));
    c.bench_function("torsion search type 12", |b| b.iter(|| torsion_search(black_box(&t12)).unwrap()));
}

fn lattices(c: &mut Criterion) {
    let parts = [hyperbolic_u(), DynkinLabel::e(7).gram(), DynkinLabel::d(6).gram(), DynkinLabel::d(5).gram()];
    let l = GramLattice::direct_sum(&parts);
    c.bench_function("discriminant form U+E7+D6+D5", |b| b.iter(|| black_box(&l).discriminant_form().unwrap()));
    c.bench_function("reduced forms det 10000", |b| b.iter(|| reduced_binary_forms(black_box(10_000))));
    c.bench_function("D quotient (8,8,8,8)", |b| b.iter(|| d_lattice_quotient(black_box(&[8, 8, 8, 8])).unwrap()));
}

fn gluing(c: &mut Criterion) {
    let mut g = c.benchmark_group("gluing");
    g.sample_size(10);
    g.bench_function("exclude type 4 trivial", |b| {
        b.iter(|| exclude_trivial_mw(black_box(4), &AbelianGroup::trivial()).unwrap())
    });
    g.bench_function("table1", |b| b.iter(|| table1().unwrap()));
    g.finish();
}

criterion_group!(benches, enumeration, torsion, lattices, gluing);
criterion_main!(benches);
